#pragma once

#include "morsecert/dynamics.hpp"
#include "morsecert/schottky.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace morsecert {

struct RepresentationInput {
    int n = 0;
    int rank = 0;
    std::vector<GroupElement> generators;
    FaceType face;
    std::optional<Point> basepoint;
    std::int64_t seed = 0;
    // One line per generator whose determinant was rescaled on load.
    std::vector<std::string> notes;

    Point base() const { return basepoint ? *basepoint : Point::identity(n); }
};

// Parses a representation document. Generators with |det - 1| <= 1e-6 are
// divided by the real n-th root of det and noted; anything else malformed
// raises SchemaError naming the field.
RepresentationInput load_representation(const std::string& bytes);
RepresentationInput load_representation_file(const std::string& path);

// Canonical form: sorted keys, two-space indent, trailing newline.
std::string save_representation(const RepresentationInput& rep);

// Basepoint moved by the prefix products of the word, multiplied left to
// right from the identity. NumericalBlowup when a prefix product has
// condition number above tol.blowup.
OrbitPath orbit_path(const RepresentationInput& rep, const Word& word, const Tolerances& tol = {});

// Report documents.
nlohmann::json to_json(const StraightnessParams& p);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const EntryReport& e);
nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const FitReport& r);
nlohmann::json to_json(const GenericityReport& g);
nlohmann::json to_json(const PowerSearchResult& r);
nlohmann::json input_summary(const RepresentationInput& rep);
std::string save_report(const nlohmann::json& report);

// One row per flag: word, then (k, n*k basis entries column-major) for each
// dimension of the face, then margin.
std::string limit_set_csv(const LimitSetSample& sample, const FaceType& face);
std::string expansion_csv(const ExpansionReport& report);

std::string format_double(double x);
void write_file(const std::string& path, const std::string& content);

}  // namespace morsecert

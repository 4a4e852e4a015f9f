#pragma once

#include "morsecert/morse.hpp"

#include <optional>
#include <string>

namespace morsecert {

// Attracting and repelling flags of two elements, labelled +a, -a, +b, -b.
struct GenericityReport {
    bool pass = false;
    std::vector<Flag> flags;
    std::vector<std::string> labels;
    // Opposition margins of the six pairs in the order
    // (+a,-a) (+a,+b) (+a,-b) (-a,+b) (-a,-b) (+b,-b).
    std::vector<double> margins;
    std::vector<std::pair<int, int>> pairs;
    double min_margin = 0.0;
    int power = 0;  // power at which the margins stabilized
};

GenericityReport genericity_check(const GroupElement& alpha, const GroupElement& beta, const FaceType& face,
                                  const Point& basepoint, const Tolerances& tol = {});

struct QuadrupleGeometry {
    double min_separation = 0.0;
    double min_margin = 0.0;
    double max_angle_defect = 0.0;  // largest zeta-angle to another point vs toward the basepoint
};

// Midpoints of x <-> alpha^{+-m} x and x <-> beta^{+-n} x.
QuadrupleGeometry quadruple_geometry(const GroupElement& alpha, const GroupElement& beta, int m, int n,
                                     const Point& basepoint, const ThetaSet& theta, const ZetaType& zeta);

struct PowerAttempt {
    int m = 0;
    int n = 0;
    EntryReport entry;
};

struct PowerSearchResult {
    bool found = false;
    int m = 0;
    int n = 0;
    std::optional<Certificate> certificate;
    std::vector<PowerAttempt> attempts;
    std::string reason;  // why nothing was found
    GenericityReport genericity;
};

// Sweeps (m, n) ordered by max(m, n), then m, up to max_power, and certifies
// <alpha^m, beta^n> at the given parameters.
PowerSearchResult power_search(const GroupElement& alpha, const GroupElement& beta, const Point& basepoint,
                               const StraightnessParams& params, const ZetaType& zeta, int max_power, int jobs = 1);

struct LimitPoint {
    Word word;
    Flag flag;
    double margin = 0.0;  // min simple-root value of the word's Cartan vector
};

struct LimitSetSample {
    std::vector<LimitPoint> points;  // deduplicated, lexicographic by word
    int sampled = 0;                 // words whose shadow was defined
    std::vector<Word> skipped;       // words below the shadow margin floor
};

// Shadows of all reduced words of exactly the given length.
LimitSetSample limit_set_sample(const Alphabet& alphabet, const FaceType& face, int length, int jobs = 1,
                                const Tolerances& tol = {});
LimitSetSample limit_set_sample(const std::vector<GroupElement>& generators, const FaceType& face,
                                const Point& basepoint, int length, int jobs = 1, const Tolerances& tol = {});

struct AntipodalityReport {
    double min_margin = 0.0;
    std::optional<std::pair<int, int>> offender;  // pair attaining a margin at or below the flag tolerance
};

AntipodalityReport antipodality_audit(const std::vector<Flag>& flags, const Tolerances& tol = {});
// Same audit for sampled limit flags, with each pair translated by the inverse
// of the longest common prefix of its words first. Transversality is
// unchanged, but nearby limit flags become well separated, so the margin
// stays resolvable in double precision at long word lengths.
AntipodalityReport antipodality_audit(const Alphabet& alphabet, const std::vector<LimitPoint>& points,
                                      const FaceType& face, const Tolerances& tol = {});

}  // namespace morsecert

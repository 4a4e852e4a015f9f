#pragma once

#include "morsecert/engine.hpp"

#include <cstdint>
#include <string>

namespace morsecert {

// Tangent coordinates of Flag(face) at a flag with orthonormal frame F: the
// strictly block-lower entries N of F (I + N), listed row-major.
std::vector<std::pair<int, int>> tangent_entries(const FaceType& face);

// Matrix of the differential of g on Flag(face) at tau, from tangent
// coordinates at tau.frame() to tangent coordinates at target_frame, which
// must span the flag g tau. An empty target uses the QR frame of g F.
Mat flag_differential(const Mat& g, const Mat& frame, const FaceType& face, const Mat& target_frame = Mat());

// Smallest singular value of the differential, in the K-invariant metric.
double expansion_factor(const GroupElement& g, const Flag& tau);

// Eigenvalues of the differential of exp(diag a) at the standard flag,
// ascending.
std::vector<double> transvection_spectrum(const CartanVector& a, const FaceType& face);

struct ExpansionReport {
    std::vector<int> steps;
    std::vector<double> log_expansion;
    double slope = 0.0;
    double intercept = 0.0;
    bool monotone = true;          // log_expansion never decreases along the ray
    std::vector<int> decreasing_at;
};

// log expansion_factor(rho(q(k))^{-1}, tau) for prefixes q(k) of the ray,
// measured in the metric invariant under the basepoint stabilizer.
ExpansionReport expansion_report(const std::vector<GroupElement>& generators, const Word& ray, const Flag& tau,
                                 const Point& basepoint);

// Same series for tau = shadow of the whole ray, evaluated by the chain rule
// over the factors of the alphabet so that long rays stay accurate.
ExpansionReport expansion_along_ray(const Alphabet& alphabet, const Word& ray, const FaceType& face);

struct ContractionEntry {
    int index = 0;
    bool rejected = false;
    std::string error;
    double image_diameter = 0.0;
    double shadow_agreement = 0.0;
};

std::vector<ContractionEntry> contraction_diagnostic(const std::vector<GroupElement>& elements, const FaceType& face,
                                                     const Point& basepoint, int probes, std::uint64_t seed,
                                                     const Tolerances& tol = {});

// Least-squares line through (x, y).
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace morsecert

#pragma once

#include "morsecert/flags.hpp"
#include "morsecert/words.hpp"

namespace morsecert {

// Generators of a free-group representation, each stored as a product of
// moderate factors and conjugated into basepoint-normalized coordinates
// (h^{-1} g h with h = basepoint^{1/2}), so the orbit of the basepoint
// becomes the orbit of the identity.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(const std::vector<std::vector<Mat>>& generator_factors, const Point& basepoint);
    static Alphabet of(const std::vector<GroupElement>& generators, const Point& basepoint);
    // Generator i raised to exponents[i], stored as that many factors.
    static Alphabet powers(const std::vector<GroupElement>& generators, const std::vector<int>& exponents,
                           const Point& basepoint);

    int rank() const { return static_cast<int>(factors_.size()) / 2; }
    int n() const { return n_; }
    int letters() const { return static_cast<int>(factors_.size()); }
    const std::vector<Mat>& factors(int letter) const { return factors_[letter]; }
    const Compounds& compounds(int letter) const { return compounds_[letter]; }
    const Compounds& compounds_transposed(int letter) const { return transposed_[letter]; }
    // Exterior powers of each individual factor, [factor][k-1].
    const std::vector<std::vector<Mat>>& factor_compounds(int letter) const { return factor_compounds_[letter]; }
    const Mat& half() const { return half_; }
    const Mat& inverse_half() const { return inverse_half_; }
    const Point& basepoint() const { return basepoint_; }

    // Dense product of a word in normalized coordinates.
    Mat dense(const Word& w) const;

private:
    int n_ = 0;
    std::vector<std::vector<Mat>> factors_;
    std::vector<Compounds> compounds_;
    std::vector<Compounds> transposed_;
    std::vector<std::vector<std::vector<Mat>>> factor_compounds_;
    Mat half_;
    Mat inverse_half_;
    Point basepoint_;
};

CompoundWord word_compounds(const Alphabet& alphabet, const Word& w);

// Singular data of rho(w) in normalized coordinates. The orbit point
// rho(w) basepoint is h U diag(e^{2 log_sv}) U^T h^T.
struct WordSvd {
    GradedSvd svd;
    double cancellation = 0.0;
};
WordSvd word_svd(const Alphabet& alphabet, const Word& w);

// Cartan vector of the segment basepoint -> rho(w) basepoint.
CartanVector word_cartan(const Alphabet& alphabet, const Word& w);

// group_shadow(rho(w), basepoint, face), computed without forming rho(w).
Flag word_shadow(const Alphabet& alphabet, const Word& w, const FaceType& face, const Tolerances& tol = {});

// Orthonormal frame whose prefixes at the face dims span the given top-k
// subspaces (entry k-1).
Mat frame_for_face(const std::vector<Mat>& spaces, const FaceType& face);

// Plucker vectors of q(j)^{-1} tau for every prefix q(j) of the factor
// sequence of w, where tau is the shadow flag of w; entry [j][k-1] for
// k in 1..n-1. Forward products along the dominant directions only.
std::vector<std::vector<Vec>> prefix_pullbacks(const Alphabet& alphabet, const Word& w);

// Flattened factor list of a word and the factor index at which each
// letter ends.
struct FactorSequence {
    std::vector<const Mat*> factors;
    std::vector<const std::vector<Mat>*> compounds;
    std::vector<int> letter_end;
};
FactorSequence factor_sequence(const Alphabet& alphabet, const Word& w);

}  // namespace morsecert

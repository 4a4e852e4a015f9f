#pragma once

#include <Eigen/Dense>

#include <vector>

namespace morsecert {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Symmetric eigendecomposition with eigenvalues sorted descending
// (stable order on ties).
struct SymEig {
    Vec values;
    Mat vectors;
};

SymEig sym_eig_desc(const Mat& a);
Mat symmetrize(const Mat& a);
Mat sym_apply(const SymEig& e, double (*f)(double));
Mat sym_sqrt(const Mat& a);
Mat sym_invsqrt(const Mat& a);
Mat sym_log(const Mat& a);
Mat sym_exp(const Mat& a);

// Orthonormal Q of a QR factorization, columns aligned with the input's
// prefix spans.
Mat qr_frame(const Mat& a);

// Orthonormal basis of the null space of a (columns), of the given dimension.
Mat null_basis(const Mat& a, int dim);

// k-subsets of {0..n-1} in lexicographic order, with reverse lookup by bitmask.
struct SubsetTable {
    std::vector<std::vector<int>> sets;
    std::vector<int> index_of_mask;
};
const SubsetTable& subsets(int n, int k);

// k-th exterior power in the lexicographic subset basis.
Mat compound(const Mat& m, int k);

// Plucker coordinates (k x k row minors) of an n x k basis.
Vec plucker(const Mat& basis);

// Orthonormal n x k basis of the decomposable k-vector closest to w.
Mat subspace_from_plucker(const Vec& w, int n, int k);

// Completes nested orthonormal bases of increasing dimension to an n x n
// orthonormal frame whose column prefixes span them.
Mat nested_frame(const std::vector<Mat>& bases, int n);

// A matrix stored as m * exp(log_scale) with max|m| = 1.
struct ScaledMat {
    Mat m;
    double log_scale = 0.0;

    void normalize();
    ScaledMat operator*(const ScaledMat& o) const;
};

struct ScaledVec {
    Vec v;
    double log_scale = 0.0;

    void normalize();
};

ScaledVec apply(const ScaledMat& a, const ScaledVec& x);

// Singular data of a (possibly enormous) matrix: log singular values
// descending, nested left/right frames.
struct GradedSvd {
    Vec log_sv;
    Mat left;
    Mat right;
    std::vector<Mat> left_spaces;  // top-k singular subspaces, entry k-1
    std::vector<Mat> right_spaces;
};

// SVD of diag(e^a) * o * diag(e^b) computed through exterior powers so that
// every singular value keeps relative accuracy.
GradedSvd graded_svd(const Vec& a, const Mat& o, const Vec& b);

// Exterior powers 1..n-1 of a group element given as a product of moderate
// factors; Lambda^n is trivial for determinant one.
struct Compounds {
    int n = 0;
    std::vector<ScaledMat> power;  // power[k-1] = Lambda^k
    std::vector<double> log_norm;  // log spectral norm of each power

    static Compounds of(const Mat& g);
    static Compounds of_product(const std::vector<Mat>& factors);
    Compounds transposed() const;
};

// Running product of compounds of letters, left to right.
class CompoundWord {
public:
    explicit CompoundWord(int n);

    void append(const Compounds& letter);
    int dim() const { return n_; }
    const std::vector<ScaledMat>& powers() const { return acc_; }

    // log of prod ||letter|| / ||word|| maximized over k; zero for straight words.
    double cancellation() const;
    GradedSvd svd() const;

private:
    int n_;
    std::vector<ScaledMat> acc_;
    std::vector<double> norm_sum_;
};

// Top singular triple of a scaled matrix: log sigma_max, left and right vectors.
struct TopTriple {
    double log_sigma;
    Vec left;
    Vec right;
};
TopTriple top_triple(const ScaledMat& a);

}  // namespace morsecert

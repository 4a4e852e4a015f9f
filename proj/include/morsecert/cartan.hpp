#pragma once

#include "morsecert/config.hpp"
#include "morsecert/errors.hpp"
#include "morsecert/linalg.hpp"

#include <vector>

namespace morsecert {

// Subset of {1..n-1}; block j of a frame is columns [bounds[j], bounds[j+1]).
class FaceType {
public:
    FaceType() = default;
    FaceType(int n, std::vector<int> dims);
    static FaceType full(int n);

    int n() const { return n_; }
    const std::vector<int>& dims() const { return dims_; }
    bool contains(int k) const;
    bool iota_invariant() const;
    bool subface_of(const FaceType& other) const;
    std::vector<int> bounds() const;
    int blocks() const { return static_cast<int>(dims_.size()) + 1; }
    std::vector<int> block_of_index() const;

    bool operator==(const FaceType& o) const { return n_ == o.n_ && dims_ == o.dims_; }
    bool operator!=(const FaceType& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<int> dims_;
};

class CartanVector {
public:
    CartanVector() = default;
    explicit CartanVector(Vec entries, const Tolerances& tol = {});
    // Sorts descending and removes the mean.
    static CartanVector from_unsorted(Vec entries);

    const Vec& entries() const { return v_; }
    int n() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_(i); }
    double norm() const { return v_.norm(); }

private:
    Vec v_;
};

struct ThetaSet {
    FaceType face;
    double margin = 0.0;

    ThetaSet() = default;
    ThetaSet(FaceType f, double m);
};

class Point {
public:
    Point() = default;
    explicit Point(const Mat& m, const Tolerances& tol = {});
    static Point identity(int n);
    // Symmetrizes and rescales to determinant one without validation.
    static Point trusted(const Mat& m);

    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    Mat m_;
};

class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(const Mat& m, const Tolerances& tol = {});
    static GroupElement identity(int n);
    static GroupElement trusted(const Mat& m);

    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    GroupElement inverse() const;
    GroupElement operator*(const GroupElement& o) const;

private:
    Mat m_;
};

Point act(const GroupElement& g, const Point& p);

CartanVector cartan_vector(const Point& p, const Point& q);
CartanVector iota(const CartanVector& a);
double regularity_margin(const CartanVector& a, const FaceType& face);
// Smallest simple-root value (a_k - a_{k+1}) / |a| over k in the face.
double min_root_value(const CartanVector& a, const FaceType& face);
bool theta_contains(const ThetaSet& theta, const CartanVector& a);
double riemannian_distance(const Point& p, const Point& q);

// Geodesic through p and q at parameter t (t = 0 -> p, t = 1 -> q).
Point geodesic_point(const Point& p, const Point& q, double t);
Point midpoint(const Point& p, const Point& q);
// exp_p of the tangent direction given in p-normalized coordinates.
Point exp_at(const Point& p, const Mat& direction, double t);
// Unit tangent at p toward q in p-normalized coordinates.
Mat log_direction(const Point& p, const Point& q);

double matrix_condition(const Mat& m);

}  // namespace morsecert

#include "morsecert/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace morsecert {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::NearSingularMargin: return "NearSingularMargin";
    case ErrorKind::NotIotaInvariant: return "NotIotaInvariant";
    case ErrorKind::FaceMismatch: return "FaceMismatch";
    case ErrorKind::NotASubface: return "NotASubface";
    case ErrorKind::NotOpposite: return "NotOpposite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotThetaRegular: return "NotThetaRegular";
    case ErrorKind::PathTooShort: return "PathTooShort";
    case ErrorKind::InputError: return "InputError";
    case ErrorKind::PowerStabilizationFailed: return "PowerStabilizationFailed";
    case ErrorKind::NumericalBlowup: return "NumericalBlowup";
    case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

FaceType::FaceType(int n, std::vector<int> dims) : n_(n), dims_(std::move(dims))
{
    if (n < 2) throw Error(ErrorKind::InputError, "face needs n >= 2");
    for (size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 1 || dims_[i] > n - 1 || (i > 0 && dims_[i] <= dims_[i - 1]))
            throw Error(ErrorKind::InputError, "face dims must be strictly increasing within 1..n-1");
    }
    if (dims_.empty()) throw Error(ErrorKind::InputError, "face dims must be non-empty");
}

FaceType FaceType::full(int n)
{
    std::vector<int> d;
    for (int k = 1; k < n; ++k) d.push_back(k);
    return FaceType(n, d);
}

bool FaceType::contains(int k) const { return std::find(dims_.begin(), dims_.end(), k) != dims_.end(); }

bool FaceType::iota_invariant() const
{
    for (int k : dims_)
        if (!contains(n_ - k)) return false;
    return true;
}

bool FaceType::subface_of(const FaceType& other) const
{
    if (n_ != other.n_) return false;
    for (int k : dims_)
        if (!other.contains(k)) return false;
    return true;
}

std::vector<int> FaceType::bounds() const
{
    std::vector<int> b{0};
    b.insert(b.end(), dims_.begin(), dims_.end());
    b.push_back(n_);
    return b;
}

std::vector<int> FaceType::block_of_index() const
{
    std::vector<int> out(n_);
    const auto b = bounds();
    for (size_t j = 0; j + 1 < b.size(); ++j)
        for (int i = b[j]; i < b[j + 1]; ++i) out[i] = static_cast<int>(j);
    return out;
}

CartanVector::CartanVector(Vec entries, const Tolerances& tol) : v_(std::move(entries))
{
    const double scale = std::max(1.0, v_.cwiseAbs().maxCoeff());
    for (int i = 0; i + 1 < v_.size(); ++i)
        if (v_(i) < v_(i + 1) - tol.linalg * scale)
            throw Error(ErrorKind::InputError, "Cartan vector entries must be weakly descending");
    if (std::abs(v_.sum()) > tol.linalg * v_.size() * scale)
        throw Error(ErrorKind::InputError, "Cartan vector entries must sum to zero");
}

CartanVector CartanVector::from_unsorted(Vec entries)
{
    std::vector<double> e(entries.data(), entries.data() + entries.size());
    std::stable_sort(e.begin(), e.end(), std::greater<double>());
    CartanVector c;
    c.v_ = Eigen::Map<Vec>(e.data(), static_cast<int>(e.size()));
    c.v_.array() -= c.v_.mean();
    return c;
}

ThetaSet::ThetaSet(FaceType f, double m) : face(std::move(f)), margin(m)
{
    if (!(margin > 0)) throw Error(ErrorKind::InputError, "Theta margin must be positive");
}

Point::Point(const Mat& m, const Tolerances& tol) : m_(m)
{
    if (m.rows() != m.cols() || m.rows() < 1) throw Error(ErrorKind::NotPositiveDefinite, "matrix must be square");
    const double scale = std::max(1.0, m.norm());
    if ((m - m.transpose()).norm() > tol.linalg * scale)
        throw Error(ErrorKind::NotPositiveDefinite, "matrix is not symmetric");
    SymEig e = sym_eig_desc(m);
    if (!(e.values(e.values.size() - 1) > 0))
        throw Error(ErrorKind::NotPositiveDefinite, "matrix is not positive definite");
    const double logdet = e.values.array().log().sum();
    if (std::abs(std::expm1(logdet)) > tol.linalg * std::max(1, dim()))
        throw Error(ErrorKind::NotPositiveDefinite, "determinant is not one");
    m_ = symmetrize(m);
}

Point Point::identity(int n) { return trusted(Mat::Identity(n, n)); }

Point Point::trusted(const Mat& m)
{
    Point p;
    p.m_ = symmetrize(m);
    SymEig e = sym_eig_desc(p.m_);
    const double logdet = e.values.array().max(1e-300).log().sum();
    p.m_ *= std::exp(-logdet / p.dim());
    return p;
}

GroupElement::GroupElement(const Mat& m, const Tolerances& tol) : m_(m)
{
    if (m.rows() != m.cols() || m.rows() < 1) throw Error(ErrorKind::InputError, "group element must be square");
    double hadamard = 1.0;
    for (int j = 0; j < m.cols(); ++j) hadamard *= std::max(1.0, m.col(j).norm());
    if (std::abs(m.determinant() - 1.0) > tol.linalg * hadamard)
        throw Error(ErrorKind::InputError, "group element determinant is not one");
}

GroupElement GroupElement::identity(int n) { return trusted(Mat::Identity(n, n)); }

GroupElement GroupElement::trusted(const Mat& m)
{
    GroupElement g;
    g.m_ = m;
    return g;
}

GroupElement GroupElement::inverse() const { return trusted(m_.inverse()); }

GroupElement GroupElement::operator*(const GroupElement& o) const { return trusted(m_ * o.m_); }

Point act(const GroupElement& g, const Point& p) { return Point::trusted(g.mat() * p.mat() * g.mat().transpose()); }

namespace {

void check_same_dim(const Point& p, const Point& q)
{
    if (p.dim() != q.dim() || p.dim() == 0) throw Error(ErrorKind::InputError, "points of different dimension");
}

Mat relative(const Point& p, const Point& q)
{
    Mat h = sym_invsqrt(p.mat());
    return symmetrize(h * q.mat() * h);
}

}  // namespace

CartanVector cartan_vector(const Point& p, const Point& q)
{
    check_same_dim(p, q);
    SymEig e = sym_eig_desc(relative(p, q));
    if (!(e.values(e.values.size() - 1) > 0))
        throw Error(ErrorKind::NotPositiveDefinite, "relative position is not positive definite");
    return CartanVector::from_unsorted(e.values.array().log().matrix());
}

CartanVector iota(const CartanVector& a)
{
    const int n = a.n();
    Vec r(n);
    for (int i = 0; i < n; ++i) r(i) = -a[n - 1 - i];
    return CartanVector::from_unsorted(r);
}

double regularity_margin(const CartanVector& a, const FaceType& face)
{
    double m = std::numeric_limits<double>::infinity();
    for (int k : face.dims()) m = std::min(m, (a[k - 1] - a[k]) / std::sqrt(2.0));
    return std::max(0.0, m);
}

double min_root_value(const CartanVector& a, const FaceType& face)
{
    const double nrm = a.norm();
    if (!(nrm > 0)) throw Error(ErrorKind::DegenerateVector, "zero Cartan vector has no type");
    double m = std::numeric_limits<double>::infinity();
    for (int k : face.dims()) m = std::min(m, (a[k - 1] - a[k]) / nrm);
    return m;
}

bool theta_contains(const ThetaSet& theta, const CartanVector& a)
{
    return min_root_value(a, theta.face) >= theta.margin;
}

double riemannian_distance(const Point& p, const Point& q) { return cartan_vector(p, q).norm(); }

Point geodesic_point(const Point& p, const Point& q, double t)
{
    check_same_dim(p, q);
    SymEig pe = sym_eig_desc(p.mat());
    Mat half = pe.vectors * pe.values.cwiseSqrt().asDiagonal() * pe.vectors.transpose();
    Mat ihalf = pe.vectors * pe.values.cwiseSqrt().cwiseInverse().asDiagonal() * pe.vectors.transpose();
    SymEig c = sym_eig_desc(symmetrize(ihalf * q.mat() * ihalf));
    Vec pw = (t * c.values.array().log()).exp().matrix();
    Mat ct = c.vectors * pw.asDiagonal() * c.vectors.transpose();
    return Point::trusted(half * ct * half);
}

Point midpoint(const Point& p, const Point& q) { return geodesic_point(p, q, 0.5); }

Point exp_at(const Point& p, const Mat& direction, double t)
{
    Mat half = sym_sqrt(p.mat());
    return Point::trusted(half * sym_exp(symmetrize(t * direction)) * half);
}

Mat log_direction(const Point& p, const Point& q)
{
    Mat l = sym_log(relative(p, q));
    const double nrm = l.norm();
    if (!(nrm > 1e-12)) throw Error(ErrorKind::DegenerateSegment, "segment endpoints coincide");
    return l / nrm;
}

double matrix_condition(const Mat& m)
{
    Eigen::JacobiSVD<Mat> svd(m);
    const Vec& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

}  // namespace morsecert

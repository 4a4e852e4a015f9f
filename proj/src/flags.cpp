#include "morsecert/flags.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace morsecert {

Flag::Flag(const Mat& frame, FaceType face, const Tolerances& tol) : frame_(frame), face_(std::move(face))
{
    const int n = face_.n();
    if (frame.rows() != n || frame.cols() != n) throw Error(ErrorKind::InputError, "flag frame has wrong shape");
    if ((frame.transpose() * frame - Mat::Identity(n, n)).norm() > tol.orthonormal)
        throw Error(ErrorKind::InputError, "flag frame is not orthonormal");
}

Flag Flag::from_basis(const Mat& basis, FaceType face) { return Flag(qr_frame(basis), std::move(face)); }

Flag Flag::standard(const FaceType& face) { return Flag(Mat::Identity(face.n(), face.n()), face); }

Flag Flag::reversed(const FaceType& face)
{
    const int n = face.n();
    return Flag(Mat::Identity(n, n).rowwise().reverse(), face);
}

ZetaType ZetaType::from_weights(const Vec& weights, const FaceType& face)
{
    if (!face.iota_invariant()) throw Error(ErrorKind::NotIotaInvariant, "zeta needs an iota-invariant face");
    if (weights.size() != face.n()) throw Error(ErrorKind::FaceMismatch, "zeta weights have wrong length");
    const double nrm = weights.norm();
    if (!(nrm > 0)) throw Error(ErrorKind::DegenerateVector, "zeta weights vanish");
    ZetaType z;
    z.weights_ = CartanVector::from_unsorted(weights / nrm);
    z.weights_ = CartanVector::from_unsorted(z.weights_.entries() / z.weights_.norm());
    z.face_ = face;
    const Vec& w = z.weights_.entries();
    const auto b = face.bounds();
    for (size_t j = 0; j + 1 < b.size(); ++j) {
        for (int i = b[j]; i < b[j + 1]; ++i)
            if (std::abs(w(i) - w(b[j])) > 1e-9) throw Error(ErrorKind::InputError, "zeta weights vary inside a block");
        if (j > 0 && !(w(b[j - 1]) > w(b[j]) + 1e-12))
            throw Error(ErrorKind::InputError, "zeta weights must decrease across blocks");
    }
    const int n = face.n();
    for (int i = 0; i < n; ++i)
        if (std::abs(w(i) + w(n - 1 - i)) > 1e-9) throw Error(ErrorKind::NotIotaInvariant, "zeta weights are not iota-invariant");
    return z;
}

std::vector<double> ZetaType::block_values() const
{
    std::vector<double> out;
    const auto b = face_.bounds();
    for (size_t j = 0; j + 1 < b.size(); ++j) out.push_back(weights_[b[j]]);
    return out;
}

ZetaType canonical_zeta(const FaceType& face)
{
    if (!face.iota_invariant()) throw Error(ErrorKind::NotIotaInvariant, "face is not iota-invariant");
    const int n = face.n();
    Vec w = Vec::Zero(n);
    for (int k : face.dims())
        for (int i = 0; i < n; ++i) w(i) += (i < k ? 1.0 : 0.0) - static_cast<double>(k) / n;
    return ZetaType::from_weights(w, face);
}

namespace {

void check_same_face(const FaceType& a, const FaceType& b)
{
    if (a != b) throw Error(ErrorKind::FaceMismatch, "flags have different face types");
}

double sigma_min(const Mat& m)
{
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_max(const Mat& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Flag flag_shadow(const Point& p, const Point& q, const FaceType& face, const Tolerances& tol)
{
    if (p.dim() != face.n() || q.dim() != face.n()) throw Error(ErrorKind::FaceMismatch, "face dimension differs from points");
    SymEig pe = sym_eig_desc(p.mat());
    Mat half = pe.vectors * pe.values.cwiseSqrt().asDiagonal() * pe.vectors.transpose();
    Mat ihalf = pe.vectors * pe.values.cwiseSqrt().cwiseInverse().asDiagonal() * pe.vectors.transpose();
    SymEig c = sym_eig_desc(symmetrize(ihalf * q.mat() * ihalf));
    CartanVector a = CartanVector::from_unsorted(c.values.array().log().matrix());
    if (a.norm() < tol.linalg) throw Error(ErrorKind::DegenerateSegment, "shadow of a degenerate segment");
    if (regularity_margin(a, face) <= tol.margin_floor)
        throw Error(ErrorKind::NearSingularMargin, "segment too close to a wall for a shadow");
    return Flag(qr_frame(half * c.vectors), face);
}

Flag group_shadow(const GroupElement& g, const Point& basepoint, const FaceType& face, const Tolerances& tol)
{
    // same flag as flag_shadow(b, g b), read from the SVD of b^{-1/2} g b^{1/2}
    // instead of the eigenvectors of its square
    if (g.dim() != face.n() || basepoint.dim() != face.n())
        throw Error(ErrorKind::FaceMismatch, "face dimension differs from element");
    SymEig be = sym_eig_desc(basepoint.mat());
    Mat half = be.vectors * be.values.cwiseSqrt().asDiagonal() * be.vectors.transpose();
    Mat ihalf = be.vectors * be.values.cwiseSqrt().cwiseInverse().asDiagonal() * be.vectors.transpose();
    Eigen::JacobiSVD<Mat> svd(ihalf * g.mat() * half, Eigen::ComputeFullU);
    CartanVector a = CartanVector::from_unsorted(2.0 * svd.singularValues().array().log().matrix());
    if (a.norm() < tol.linalg) throw Error(ErrorKind::DegenerateSegment, "element fixes the basepoint");
    if (regularity_margin(a, face) <= tol.margin_floor)
        throw Error(ErrorKind::NearSingularMargin, "element too close to a wall for a shadow");
    return Flag(qr_frame(half * svd.matrixU()), face);
}

Opposition is_opposite(const Flag& a, const Flag& b, const Tolerances& tol)
{
    check_same_face(a.face(), b.face());
    double margin = std::numeric_limits<double>::infinity();
    for (int k : a.face().dims()) {
        Mat block = a.frame().leftCols(k).transpose() * b.frame().rightCols(k);
        margin = std::min(margin, sigma_min(block));
    }
    return {margin > tol.flag, margin};
}

Flag face_of(const Flag& tau, const FaceType& sub)
{
    if (!sub.subface_of(tau.face())) throw Error(ErrorKind::NotASubface, "requested face is not a subface");
    return Flag(tau.frame(), sub);
}

Mat zeta_direction_of_frame(const Mat& frame, const ZetaType& zeta)
{
    const auto b = zeta.face().bounds();
    const auto c = zeta.block_values();
    const int n = static_cast<int>(frame.rows());
    Mat a = Mat::Zero(n, n);
    for (size_t j = 0; j + 1 < b.size(); ++j) {
        Mat f = frame.middleCols(b[j], b[j + 1] - b[j]);
        a += c[j] * f * f.transpose();
    }
    return a;
}

Mat zeta_direction(const Point& x, const Flag& tau, const ZetaType& zeta)
{
    check_same_face(tau.face(), zeta.face());
    Mat transported = qr_frame(sym_invsqrt(x.mat()) * tau.frame());
    return zeta_direction_of_frame(transported, zeta);
}

double direction_angle(const Mat& a, const Mat& b) { return 2.0 * std::atan2((a - b).norm(), (a + b).norm()); }

double angle_zeta(const Point& x, const Flag& a, const Flag& b, const ZetaType& zeta)
{
    check_same_face(a.face(), b.face());
    return direction_angle(zeta_direction(x, a, zeta), zeta_direction(x, b, zeta));
}

double angle_zeta_point(const Point& x, const Flag& tau, const Point& y, const ZetaType& zeta)
{
    return direction_angle(zeta_direction(x, tau, zeta), log_direction(x, y));
}

double flag_distance(const Flag& a, const Flag& b)
{
    check_same_face(a.face(), b.face());
    double d = 0.0;
    for (int k : a.face().dims()) {
        Mat cross = b.frame().rightCols(a.n() - k).transpose() * a.frame().leftCols(k);
        d = std::max(d, std::asin(std::min(1.0, sigma_max(cross))));
    }
    return d;
}

Flag apply(const GroupElement& g, const Flag& tau) { return Flag(qr_frame(g.mat() * tau.frame()), tau.face()); }

Mat segment_zeta_direction(const Point& x, const Point& y, const ZetaType& zeta, const Tolerances& tol)
{
    Mat ihalf = sym_invsqrt(x.mat());
    SymEig c = sym_eig_desc(symmetrize(ihalf * y.mat() * ihalf));
    CartanVector a = CartanVector::from_unsorted(c.values.array().log().matrix());
    if (a.norm() < tol.linalg) throw Error(ErrorKind::DegenerateSegment, "segment endpoints coincide");
    if (regularity_margin(a, zeta.face()) <= tol.margin_floor)
        throw Error(ErrorKind::NearSingularMargin, "segment too close to a wall for a zeta-direction");
    return zeta_direction_of_frame(c.vectors, zeta);
}

double segment_angle(const Point& x, const Point& y, const Point& z, const ZetaType& zeta, const Tolerances& tol)
{
    return direction_angle(segment_zeta_direction(x, y, zeta, tol), segment_zeta_direction(x, z, zeta, tol));
}

}  // namespace morsecert

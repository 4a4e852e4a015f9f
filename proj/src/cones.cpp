#include "morsecert/cones.hpp"

#include <cmath>
#include <limits>

namespace morsecert {

Mat ParallelSetSpec::basis() const
{
    const int n = tau_plus.n();
    Mat b(n, n);
    int c = 0;
    for (const Mat& w : blocks) {
        b.middleCols(c, w.cols()) = w;
        c += static_cast<int>(w.cols());
    }
    return b;
}

ParallelSetSpec parallel_set(const Flag& tau_minus, const Flag& tau_plus, const Tolerances& tol)
{
    Opposition o = is_opposite(tau_minus, tau_plus, tol);
    if (!o.opposite) throw Error(ErrorKind::NotOpposite, "parallel set needs opposite flags");
    const auto b = tau_plus.face().bounds();
    ParallelSetSpec spec{tau_minus, tau_plus, {}};
    for (size_t j = 1; j < b.size(); ++j) {
        const int dim = b[j] - b[j - 1];
        Mat plus = tau_plus.frame().leftCols(b[j]);
        Mat minus_perp = tau_minus.frame().rightCols(b[j - 1]);
        Mat coeff = null_basis(minus_perp.transpose() * plus, dim);
        spec.blocks.push_back(qr_frame(plus * coeff).leftCols(dim));
    }
    return spec;
}

double parallel_set_residual(const Point& p, const ParallelSetSpec& spec)
{
    Mat pinv = p.mat().inverse();
    double worst = 0.0;
    for (size_t i = 0; i < spec.blocks.size(); ++i) {
        const double ni = (spec.blocks[i].transpose() * pinv * spec.blocks[i]).norm();
        for (size_t j = i + 1; j < spec.blocks.size(); ++j) {
            const double nj = (spec.blocks[j].transpose() * pinv * spec.blocks[j]).norm();
            const double cross = (spec.blocks[i].transpose() * pinv * spec.blocks[j]).norm();
            worst = std::max(worst, cross / std::sqrt(ni * nj));
        }
    }
    return worst;
}

bool in_parallel_set(const Point& p, const ParallelSetSpec& spec, double tol)
{
    return parallel_set_residual(p, spec) < tol;
}

namespace {

struct Descent {
    Mat s;
    double value;
    double gradient_norm;
    int iterations;
    bool converged;
};

Mat block_part(const Mat& a, const std::vector<int>& bounds)
{
    Mat out = Mat::Zero(a.rows(), a.cols());
    for (size_t j = 0; j + 1 < bounds.size(); ++j) {
        const int w = bounds[j + 1] - bounds[j];
        out.block(bounds[j], bounds[j], w, w) = a.block(bounds[j], bounds[j], w, w);
    }
    return out;
}

double squared_distance(const Mat& s, const Mat& target)
{
    Mat ih = sym_invsqrt(s);
    SymEig e = sym_eig_desc(symmetrize(ih * target * ih));
    return e.values.array().log().square().sum();
}

// Descent direction at s (block part of log_s target in s-normalized
// coordinates) and the square root of s.
struct Step {
    Mat half;
    Mat direction;
};

Step descent_step(const Mat& s, const Mat& target, const std::vector<int>& bounds)
{
    SymEig se = sym_eig_desc(s);
    Mat h = se.vectors * se.values.cwiseSqrt().asDiagonal() * se.vectors.transpose();
    Mat ih = se.vectors * se.values.cwiseSqrt().cwiseInverse().asDiagonal() * se.vectors.transpose();
    return {h, block_part(sym_log(symmetrize(ih * target * ih)), bounds)};
}

// Gradient descent for 1/2 d^2(target, .) over block-diagonal points, with
// Armijo backtracking; steps are exponentials in the current point's frame.
// Once the gradient is small the Armijo test drowns in rounding of f, so
// steps are then backtracked on the gradient norm instead.
Descent descend(const Mat& target, Mat s, const std::vector<int>& bounds, int max_iter)
{
    double f = squared_distance(s, target);
    Step st = descent_step(s, target, bounds);
    for (int it = 0; it < max_iter; ++it) {
        const double gn = st.direction.norm();
        if (gn < 1e-8) return {s, f, gn, it, true};
        bool moved = false;
        for (int mode = gn < 1e-5 ? 1 : 0; mode < 2 && !moved; ++mode) {
            for (double t = 1.0; t >= 1e-10 && !moved; t *= 0.5) {
                Mat next = block_part(symmetrize(st.half * sym_exp(t * st.direction) * st.half), bounds);
                if (mode == 1) {
                    Step ns = descent_step(next, target, bounds);
                    if (ns.direction.norm() < gn) {
                        s = next;
                        f = squared_distance(s, target);
                        st = ns;
                        moved = true;
                    }
                } else {
                    const double fn = squared_distance(next, target);
                    if (fn < f && fn <= f - 2e-4 * t * gn * gn) {
                        s = next;
                        f = fn;
                        st = descent_step(s, target, bounds);
                        moved = true;
                    }
                }
            }
        }
        if (!moved) return {s, f, gn, it, false};
    }
    return {s, f, st.direction.norm(), max_iter, false};
}

}  // namespace

Projection project_to_parallel_set(const Point& x, const ParallelSetSpec& spec, const Tolerances&)
{
    const int n = x.dim();
    Mat b = spec.basis();
    b /= std::pow(std::abs(b.determinant()), 1.0 / n);
    Mat binv = b.inverse();
    Mat target = symmetrize(binv * x.mat() * binv.transpose());
    const auto bounds = spec.tau_plus.face().bounds();

    Mat start = block_part(target, bounds);
    start /= std::pow(start.determinant(), 1.0 / n);
    constexpr int kMaxIter = 10000;
    Descent first = descend(target, start, bounds, kMaxIter);
    Descent second = descend(target, Mat::Identity(n, n), bounds, kMaxIter);
    if (!first.converged || !second.converged)
        throw Error(ErrorKind::NoConvergence, "projection did not converge; gradient norms "
                                                  + std::to_string(first.gradient_norm) + ", "
                                                  + std::to_string(second.gradient_norm));
    Projection out;
    out.point = Point::trusted(b * first.s * b.transpose());
    out.distance = std::sqrt(first.value);
    out.iterations = first.iterations;
    out.gradient_norm = first.gradient_norm;
    out.restart_gap = std::abs(std::sqrt(first.value) - std::sqrt(second.value));
    if (out.restart_gap > 1e-6) throw Error(ErrorKind::NoConvergence, "projection restarts disagree");
    return out;
}

ConeReport in_theta_cone(const Point& x, const Flag& tau, const Point& y, const ThetaSet& theta, const Tolerances& tol)
{
    if (theta.face != tau.face()) throw Error(ErrorKind::FaceMismatch, "Theta and flag have different faces");
    ConeReport r;
    r.cartan = cartan_vector(x, y);
    if (r.cartan.norm() < 1e-12) throw Error(ErrorKind::DegenerateSegment, "cone test on a degenerate segment");
    r.root_margin = min_root_value(r.cartan, tau.face());
    r.flag_distance = M_PI / 2;
    if (regularity_margin(r.cartan, tau.face()) > tol.margin_floor)
        r.flag_distance = flag_distance(flag_shadow(x, y, tau.face(), tol), tau);
    r.inside = r.root_margin >= theta.margin && r.flag_distance < tol.flag;
    return r;
}

namespace {

// Log-diagonal coordinates of a point of a maximal flat parallel set.
Vec flat_coordinates(const Point& p, const ParallelSetSpec& spec)
{
    Mat b = spec.basis();
    b /= std::pow(std::abs(b.determinant()), 1.0 / b.rows());
    Mat binv = b.inverse();
    Vec d = (binv * p.mat() * binv.transpose()).diagonal();
    return d.array().log().matrix();
}

// Projection onto {v : <a, v> >= c |v|} for a unit axis a.
Vec project_circular_cone(const Vec& v, const Vec& a, double c)
{
    const double s = a.dot(v);
    const Vec w = v - s * a;
    const double r = w.norm();
    const double sn = std::sqrt(1.0 - c * c);
    if (s >= c * v.norm()) return v;
    if (r * sn <= -s * c) return Vec::Zero(v.size());
    const double t = s * c + r * sn;
    Vec out = t * c * a;
    if (r > 0) out += t * sn * w / r;
    return out;
}

// Nearest point to v in {u : u and len - u in the Theta-cone}, by Dykstra's
// alternating projections.
Vec nearest_in_diamond(const Vec& v, const Vec& len, double margin)
{
    const int n = static_cast<int>(v.size());
    std::vector<Vec> axes;
    for (int k = 0; k + 1 < n; ++k) {
        Vec a = Vec::Zero(n);
        a(k) = 1.0 / std::sqrt(2.0);
        a(k + 1) = -1.0 / std::sqrt(2.0);
        axes.push_back(a);
    }
    const double c = margin / std::sqrt(2.0);
    const int sets = 2 * static_cast<int>(axes.size());
    std::vector<Vec> corr(sets, Vec::Zero(n));
    Vec x = v;
    for (int it = 0; it < 20000; ++it) {
        Vec before = x;
        for (int i = 0; i < sets; ++i) {
            const Vec& a = axes[i % axes.size()];
            Vec y = x + corr[i];
            Vec px = i < static_cast<int>(axes.size()) ? project_circular_cone(y, a, c)
                                                       : Vec(len - project_circular_cone(len - y, a, c));
            corr[i] = y - px;
            x = px;
        }
        if ((x - before).norm() < 1e-13) break;
    }
    return x;
}

}  // namespace

DiamondReport in_diamond(const Point& x_minus, const Point& x_plus, const Point& y, const ThetaSet& theta, double d,
                         const Tolerances& tol)
{
    CartanVector a = cartan_vector(x_minus, x_plus);
    if (a.norm() < 1e-12 || !theta_contains(theta, a))
        throw Error(ErrorKind::NotThetaRegular, "diamond needs a Theta-regular segment");
    Flag tau_plus = flag_shadow(x_minus, x_plus, theta.face, tol);
    Flag tau_minus = flag_shadow(x_plus, x_minus, theta.face, tol);
    Projection proj = project_to_parallel_set(y, parallel_set(tau_minus, tau_plus, tol), tol);

    DiamondReport r;
    r.distance = proj.distance;
    auto cone = [&](const Point& tip, const Flag& tau) {
        if (riemannian_distance(tip, proj.point) < tol.geom) {
            ConeReport c;
            c.inside = true;
            c.cartan = CartanVector::from_unsorted(Vec::Zero(tip.dim()));
            c.root_margin = std::numeric_limits<double>::infinity();
            return c;
        }
        return in_theta_cone(tip, tau, proj.point, theta, tol);
    };
    r.from_minus = cone(x_minus, tau_plus);
    r.from_plus = cone(x_plus, tau_minus);
    r.inside = r.distance <= d && r.from_minus.inside && r.from_plus.inside;
    const bool in_cones = r.from_minus.inside && r.from_plus.inside;
    if (theta.face == FaceType::full(y.dim())) {
        const ParallelSetSpec spec = parallel_set(tau_minus, tau_plus, tol);
        const Vec lo = flat_coordinates(x_minus, spec);
        const Vec v = flat_coordinates(proj.point, spec) - lo;
        const Vec len = flat_coordinates(x_plus, spec) - lo;
        r.diamond_distance = r.distance + (in_cones ? 0.0 : (v - nearest_in_diamond(v, len, theta.margin)).norm());
    } else {
        r.diamond_distance = in_cones ? r.distance : std::numeric_limits<double>::infinity();
    }
    return r;
}

double angle_distance_surrogate(const Point& x, const Flag& tau_minus, const Flag& tau_plus, const ZetaType& zeta,
                                const Tolerances& tol)
{
    if (!is_opposite(tau_minus, tau_plus, tol).opposite)
        throw Error(ErrorKind::NotOpposite, "surrogate needs opposite flags");
    return M_PI - angle_zeta(x, tau_minus, tau_plus, zeta);
}

BoundaryDistance cone_boundary_distance(const Point& x, const Flag& tau, const Point& y, const Tolerances& tol)
{
    CartanVector a = cartan_vector(x, y);
    BoundaryDistance out;
    const double wall = regularity_margin(a, tau.face());
    if (wall <= tol.margin_floor) return out;
    if (flag_distance(flag_shadow(x, y, tau.face(), tol), tau) >= tol.flag) return out;
    out.inside = true;
    out.distance = wall;
    return out;
}

}  // namespace morsecert

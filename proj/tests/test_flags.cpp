#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

using namespace testing;

namespace {

double line_angle(const Mat& a, const Mat& b)
{
    Mat pa = a * a.transpose(), pb = b * b.transpose();
    return (pa - pb).norm();
}

}  // namespace

TEST_CASE("canonical zeta")
{
    ZetaType z2 = canonical_zeta(FaceType(2, {1}));
    CHECK(z2.weights()[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(z2.weights()[1] == doctest::Approx(-1 / std::sqrt(2.0)));
    ZetaType z3 = canonical_zeta(FaceType::full(3));
    CHECK(z3.weights()[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(z3.weights()[1] == doctest::Approx(0).epsilon(1e-12));
    for (int n = 2; n <= 6; ++n)
        for (int mask = 1; mask < (1 << (n - 1)); ++mask) {
            std::vector<int> d;
            for (int k = 1; k < n; ++k)
                if (mask & (1 << (k - 1))) d.push_back(k);
            FaceType f(n, d);
            if (!f.iota_invariant()) {
                CHECK_THROWS_AS(canonical_zeta(f), Error);
                continue;
            }
            ZetaType z = canonical_zeta(f);
            CHECK((iota(z.weights()).entries() - z.weights().entries()).norm() < 1e-12);
            CHECK(regularity_margin(z.weights(), f) > 0);
        }
}

TEST_CASE("flag shadow")
{
    FaceType f1(3, {1});
    Flag s = flag_shadow(Point::identity(3), Point(diag({std::exp(3.0), std::exp(1.0), std::exp(-4.0)})), f1);
    CHECK(std::abs(std::abs(s.frame()(0, 0)) - 1) < 1e-12);
    CHECK_THROWS_AS(flag_shadow(Point::identity(3), Point::identity(3), f1), Error);
    std::mt19937_64 rng(5);
    FaceType full = FaceType::full(3);
    for (int t = 0; t < 100; ++t) {
        Point p = random_point(rng, 3), q = random_point(rng, 3);
        Flag sh = flag_shadow(p, q, full);
        // oracle: left singular vectors of p^{1/2} * (p^{-1/2} q^{1/2})
        Mat ph = sym_sqrt(p.mat());
        Mat m = sym_invsqrt(p.mat()) * sym_sqrt(q.mat());
        Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
        Flag oracle = Flag::from_basis(ph * svd.matrixU(), full);
        CHECK(flag_distance(sh, oracle) < 1e-6);
        // equivariance
        GroupElement g = GroupElement::trusted(random_sl(rng, 3));
        CHECK(flag_distance(flag_shadow(act(g, p), act(g, q), full), apply(g, sh)) < 1e-6);
    }
}

TEST_CASE("group shadow")
{
    Flag s = group_shadow(GroupElement(diag({std::exp(2.0), std::exp(-2.0)})), Point::identity(2), FaceType(2, {1}));
    CHECK(std::abs(s.frame()(0, 0)) == doctest::Approx(1));
    std::mt19937_64 rng(6);
    CHECK_THROWS_AS(group_shadow(GroupElement::trusted(random_rotation(rng, 3)), Point::identity(3), FaceType::full(3)), Error);
    for (int t = 0; t < 50; ++t) {
        Mat g = random_sl(rng, 3);
        Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU);
        Flag sh = group_shadow(GroupElement::trusted(g), Point::identity(3), FaceType::full(3));
        for (int k = 1; k <= 2; ++k) CHECK(line_angle(sh.subspace(k), svd.matrixU().leftCols(k)) < 1e-7);
    }
}

TEST_CASE("opposition")
{
    FaceType full = FaceType::full(4);
    Opposition o = is_opposite(Flag::standard(full), Flag::reversed(full));
    CHECK(o.opposite);
    CHECK(o.margin == doctest::Approx(1));
    Opposition same = is_opposite(Flag::standard(full), Flag::standard(full));
    CHECK_FALSE(same.opposite);
    CHECK(same.margin == doctest::Approx(0).epsilon(1e-14));
    CHECK_THROWS_AS(is_opposite(Flag::standard(full), Flag::standard(FaceType(4, {2}))), Error);
    std::mt19937_64 rng(10);
    for (int t = 0; t < 200; ++t) {
        Flag a = random_flag(rng, full), b = random_flag(rng, full);
        if (t % 4 == 0) {
            // force V_2(a) to meet V_2(b)
            Mat fb = b.frame();
            fb.col(0) = a.frame().col(0);
            b = Flag::from_basis(fb, full);
        }
        Opposition ab = is_opposite(a, b), ba = is_opposite(b, a);
        CHECK(std::abs(ab.margin - ba.margin) < 1e-8);
        bool dets = true;
        for (int k : full.dims()) {
            Mat m(4, 4);
            m << a.frame().leftCols(k), b.frame().leftCols(4 - k);
            dets = dets && std::abs(m.determinant()) > 1e-6;
        }
        CHECK(ab.opposite == dets);
    }
}

TEST_CASE("face_of")
{
    std::mt19937_64 rng(12);
    FaceType full = FaceType::full(4), mid(4, {1, 3}), one(4, {1});
    Flag t = random_flag(rng, full);
    CHECK(flag_distance(face_of(t, full), t) < 1e-12);
    CHECK((face_of(t, one).subspace(1) - t.subspace(1)).norm() == 0);
    CHECK(flag_distance(face_of(face_of(t, mid), one), face_of(t, one)) < 1e-12);
    CHECK_THROWS_AS(face_of(face_of(t, one), mid), Error);
}

TEST_CASE("zeta directions")
{
    FaceType full = FaceType::full(3);
    ZetaType z = canonical_zeta(full);
    Mat dz = z.weights().entries().asDiagonal();
    CHECK((zeta_direction(Point::identity(3), Flag::standard(full), z) - dz).norm() < 1e-12);
    CHECK((zeta_direction(Point::identity(3), Flag::reversed(full), z) + dz).norm() < 1e-12);
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; ++t) {
        Point x = random_point(rng, 3);
        Flag tau = random_flag(rng, full);
        Mat a = zeta_direction(x, tau, z);
        CHECK(a.norm() == doctest::Approx(1));
        Point y = exp_at(x, a, 2.0);
        CHECK(flag_distance(flag_shadow(x, y, full), tau) < 1e-7);
    }
}

TEST_CASE("zeta angles")
{
    FaceType full = FaceType::full(3);
    ZetaType z = canonical_zeta(full);
    Point i3 = Point::identity(3);
    CHECK(angle_zeta(i3, Flag::standard(full), Flag::standard(full), z) == doctest::Approx(0).epsilon(1e-12));
    CHECK(angle_zeta(i3, Flag::standard(full), Flag::reversed(full), z) == doctest::Approx(M_PI));
    std::mt19937_64 rng(15);
    for (int t = 0; t < 50; ++t) {
        Point x = random_point(rng, 3);
        Flag a = random_flag(rng, full), b = random_flag(rng, full);
        // finite-difference oracle: Riemannian angle between the two rays from
        // short geodesic steps
        const double h = 1e-5;
        Point ya = exp_at(x, zeta_direction(x, a, z), h), yb = exp_at(x, zeta_direction(x, b, z), h);
        double da = riemannian_distance(x, ya), db = riemannian_distance(x, yb), dab = riemannian_distance(ya, yb);
        double fd = std::acos(std::clamp((da * da + db * db - dab * dab) / (2 * da * db), -1.0, 1.0));
        CHECK(angle_zeta(x, a, b, z) == doctest::Approx(fd).epsilon(1e-4));
        // invariance
        GroupElement g = GroupElement::trusted(random_sl(rng, 3));
        CHECK(angle_zeta(act(g, x), apply(g, a), apply(g, b), z) == doctest::Approx(angle_zeta(x, a, b, z)).epsilon(1e-6));
        // point version
        Point on = exp_at(x, zeta_direction(x, a, z), 1.5);
        CHECK(angle_zeta_point(x, a, on, z) < 1e-6);
        Point opp = exp_at(x, zeta_direction(x, a, z), -1.5);
        CHECK(angle_zeta_point(x, a, opp, z) == doctest::Approx(M_PI).epsilon(1e-6));
        // ray toward zeta(b) from a point shifted along the horocycle of b;
        // it is strongly asymptotic to the ray from x
        Mat xh = sym_sqrt(x.mat());
        Mat fb = qr_frame(sym_invsqrt(x.mat()) * b.frame());
        Mat up = Mat::Identity(3, 3);
        up(0, 1) = 0.7;
        up(0, 2) = -0.4;
        up(1, 2) = 0.5;
        Mat u = fb * up * fb.transpose();
        Mat ray = sym_exp(15.0 * zeta_direction_of_frame(fb, z));
        Point far = Point::trusted(xh * u * ray * u.transpose() * xh);
        CHECK(std::abs(angle_zeta_point(x, a, far, z) - angle_zeta(x, a, b, z)) < 1e-3);
    }
}

TEST_CASE("flag distance")
{
    FaceType f(2, {1});
    Flag e1 = Flag::standard(f), e2 = Flag::reversed(f);
    CHECK(flag_distance(e1, e1) == 0);
    CHECK(flag_distance(e1, e2) == doctest::Approx(M_PI / 2));
    std::mt19937_64 rng(16);
    FaceType full = FaceType::full(3);
    for (int t = 0; t < 1000; ++t) {
        Flag a = random_flag(rng, full), b = random_flag(rng, full), c = random_flag(rng, full);
        CHECK(flag_distance(a, c) <= flag_distance(a, b) + flag_distance(b, c) + 1e-12);
        CHECK(std::abs(flag_distance(a, b) - flag_distance(b, a)) < 1e-9);
    }
}

TEST_CASE("shadows from different basepoints converge")
{
    std::mt19937_64 rng(17);
    FaceType full = FaceType::full(3);
    for (int t = 0; t < 10; ++t) {
        Mat c = random_sl(rng, 3, 0.3) + Mat::Identity(3, 3);
        c /= std::cbrt(c.determinant());
        Mat gamma = c * diag({std::exp(0.8), 1.0, std::exp(-0.8)}) * c.inverse();
        Point p = random_point(rng, 3, 0.5);
        double prev = 1e9;
        Mat gk = gamma;
        for (int k = 2; k <= 10; ++k) {
            gk = gk * gamma;
            GroupElement g = GroupElement::trusted(gk);
            double d = flag_distance(group_shadow(g, Point::identity(3), full), group_shadow(g, p, full));
            if (k >= 4) CHECK(d <= prev + 1e-12);
            if (k == 10) CHECK(d < 1e-2);
            prev = d;
        }
    }
}

#include "doctest.h"
#include "helpers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

using namespace testing;

namespace {

Vec generalized_log_eigs(const Point& p, const Point& q)
{
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(q.mat(), p.mat());
    Vec v = ges.eigenvalues().array().log().matrix();
    std::sort(v.data(), v.data() + v.size(), std::greater<double>());
    return v;
}

}  // namespace

TEST_CASE("cartan vector basics")
{
    Point i3 = Point::identity(3);
    CHECK(cartan_vector(i3, i3).norm() < 1e-14);
    Point q(diag({std::exp(2.0), std::exp(-1.0), std::exp(-1.0)}));
    CartanVector a = cartan_vector(i3, q);
    CHECK(a[0] == doctest::Approx(2.0));
    CHECK(a[1] == doctest::Approx(-1.0));
    CHECK(a[2] == doctest::Approx(-1.0));
}

TEST_CASE("cartan vector matches generalized eigenvalue oracle")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        Point p = random_point(rng, 3), q = random_point(rng, 3);
        CHECK((cartan_vector(p, q).entries() - generalized_log_eigs(p, q)).norm() < 1e-8);
    }
}

TEST_CASE("iota")
{
    CartanVector a(Vec::Zero(3));
    CHECK(iota(a).norm() == 0);
    Vec v(3);
    v << 2, -1, -1;
    CartanVector b = iota(CartanVector(v));
    CHECK(b[0] == doctest::Approx(1));
    CHECK(b[1] == doctest::Approx(1));
    CHECK(b[2] == doctest::Approx(-2));
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        CartanVector c = CartanVector::from_unsorted(Vec::Random(5));
        CHECK((iota(iota(c)).entries() - c.entries()).norm() < 1e-14);
    }
}

TEST_CASE("symmetry, triangle and invariance properties")
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        Point p = random_point(rng, 3), q = random_point(rng, 3), r = random_point(rng, 3);
        CHECK((cartan_vector(p, q).entries() - iota(cartan_vector(q, p)).entries()).norm() < 1e-8);
        CHECK((cartan_vector(p, q).entries() - cartan_vector(r, q).entries()).norm() <= riemannian_distance(p, r) + 1e-7);
        GroupElement g = GroupElement::trusted(random_sl(rng, 3));
        CHECK((cartan_vector(act(g, p), act(g, q)).entries() - cartan_vector(p, q).entries()).norm() < 1e-7);
        CHECK(riemannian_distance(p, r) <= riemannian_distance(p, q) + riemannian_distance(q, r) + 1e-9);
    }
    Point e2(diag({std::exp(1.0), std::exp(-1.0)}));
    CHECK(riemannian_distance(Point::identity(2), e2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("regularity margin")
{
    Vec v(3);
    v << 2, -1, -1;
    CHECK(regularity_margin(CartanVector(v), FaceType(3, {1})) == doctest::Approx(3 / std::sqrt(2.0)));
    v << 1, 1, -2;
    CHECK(regularity_margin(CartanVector(v), FaceType(3, {1})) == 0.0);
}

TEST_CASE("regularity margin matches sampled wall minimization")
{
    std::mt19937_64 rng(8);
    FaceType face = FaceType::full(3);
    for (int t = 0; t < 20; ++t) {
        CartanVector a = CartanVector::from_unsorted(Vec::Random(3) * 3);
        double best = 1e300;
        for (int k : face.dims()) {
            // wall {w_k = w_{k+1}, sum w = 0} is the line p0 + s*d
            Vec d = Vec::Zero(3), p0 = Vec::Zero(3);
            d(k - 1) = 1;
            d(k) = 1;
            d(3 - k == 1 ? 0 : 2) = 0;
            const int other = 3 - (k - 1) - k;
            d(other) = -2;
            d.normalize();
            auto dist = [&](double s) { return (a.entries() - (p0 + s * d)).norm(); };
            double lo = -20, hi = 20, step = 1e-3, arg = lo, val = dist(lo);
            for (double s = lo; s <= hi; s += step)
                if (dist(s) < val) {
                    val = dist(s);
                    arg = s;
                }
            double l = arg - step, h = arg + step;
            for (int it = 0; it < 200; ++it) {
                double m1 = l + (h - l) / 3, m2 = h - (h - l) / 3;
                if (dist(m1) < dist(m2)) h = m2; else l = m1;
            }
            best = std::min(best, dist(0.5 * (l + h)));
        }
        CHECK(regularity_margin(a, face) == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("theta containment")
{
    FaceType full = FaceType::full(3);
    Vec v(3);
    v << 1, 0, -1;
    CHECK(theta_contains(ThetaSet(full, 0.5), CartanVector(v)));
    CHECK_FALSE(theta_contains(ThetaSet(full, 0.75), CartanVector(v)));
    v << 1, 1, -2;
    CHECK_FALSE(theta_contains(ThetaSet(full, 1e-9), CartanVector(v)));
    CHECK_THROWS_AS(theta_contains(ThetaSet(full, 0.1), CartanVector(Vec::Zero(3))), Error);
    // convexity of unit-type membership
    std::mt19937_64 rng(13);
    ThetaSet th(full, 0.3);
    for (int t = 0; t < 200; ++t) {
        CartanVector a = CartanVector::from_unsorted(Vec::Random(3)), b = CartanVector::from_unsorted(Vec::Random(3));
        if (!theta_contains(th, a) || !theta_contains(th, b)) continue;
        double s = std::uniform_real_distribution<double>(0, 1)(rng);
        Vec c = s * a.entries() / a.norm() + (1 - s) * b.entries() / b.norm();
        CHECK(theta_contains(th, CartanVector::from_unsorted(c)));
        CHECK(theta_contains(ThetaSet(full, 0.2), a));
    }
}

TEST_CASE("point validation")
{
    CHECK_THROWS_AS(Point(diag({2.0, 1.0})), Error);
    CHECK_THROWS_AS(Point(diag({-1.0, -1.0})), Error);
    Mat ns(2, 2);
    ns << 1, 0.5, 0, 1;
    CHECK_THROWS_AS(Point{ns}, Error);
    CHECK_NOTHROW(Point(diag({2.0, 0.5})));
}

TEST_CASE("midpoint")
{
    Point m = midpoint(Point::identity(2), Point(diag({std::exp(2.0), std::exp(-2.0)})));
    CHECK((m.mat() - diag({std::exp(1.0), std::exp(-1.0)})).norm() < 1e-12);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Point p = random_point(rng, 3), q = random_point(rng, 3);
        CHECK((midpoint(p, q).mat() - midpoint(q, p).mat()).norm() < 1e-9);
        Point mid = midpoint(p, q);
        double own = std::max(riemannian_distance(mid, p), riemannian_distance(mid, q));
        for (double s = 0; s <= 1.0; s += 0.05) {
            Point g = geodesic_point(p, q, s);
            CHECK(std::max(riemannian_distance(g, p), riemannian_distance(g, q)) >= own - 1e-9);
        }
    }
}

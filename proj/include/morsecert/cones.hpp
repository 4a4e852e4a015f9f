#pragma once

#include "morsecert/flags.hpp"

namespace morsecert {

// Parallel set of a transverse flag pair, stored as the splitting of R^n into
// the intersections W_j = V_{b_j}(tau_plus) ∩ V_{n-b_{j-1}}(tau_minus).
struct ParallelSetSpec {
    Flag tau_minus;
    Flag tau_plus;
    std::vector<Mat> blocks;  // orthonormal bases, one per block of the face

    Mat basis() const;
};

ParallelSetSpec parallel_set(const Flag& tau_minus, const Flag& tau_plus, const Tolerances& tol = {});

// Largest normalized p^{-1}-inner product between different blocks.
double parallel_set_residual(const Point& p, const ParallelSetSpec& spec);
bool in_parallel_set(const Point& p, const ParallelSetSpec& spec, double tol = 1e-8);

struct Projection {
    Point point;
    double distance = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
    double restart_gap = 0.0;  // |distance from start 1 - distance from start 2|
};

Projection project_to_parallel_set(const Point& x, const ParallelSetSpec& spec, const Tolerances& tol = {});

struct ConeReport {
    bool inside = false;
    CartanVector cartan;
    double root_margin = 0.0;    // min simple-root value of the unit type
    double flag_distance = 0.0;  // shadow of xy vs tau; pi/2 when the shadow is undefined
};

ConeReport in_theta_cone(const Point& x, const Flag& tau, const Point& y, const ThetaSet& theta,
                         const Tolerances& tol = {});

struct DiamondReport {
    bool inside = false;
    double distance = 0.0;  // distance from y to the parallel set of the tips
    ConeReport from_minus;  // projection seen from x_minus toward tau_plus
    ConeReport from_plus;
    // Upper bound for the distance from y to the diamond: distance plus the
    // flat distance from the projection to the diamond. Full faces only;
    // partial faces report distance, or infinity when a cone test fails.
    double diamond_distance = 0.0;
};

DiamondReport in_diamond(const Point& x_minus, const Point& x_plus, const Point& y, const ThetaSet& theta, double d,
                         const Tolerances& tol = {});

double angle_distance_surrogate(const Point& x, const Flag& tau_minus, const Flag& tau_plus, const ZetaType& zeta,
                                const Tolerances& tol = {});

struct BoundaryDistance {
    bool inside = false;
    double distance = 0.0;
};

// Distance from y to the boundary of the Weyl cone V(x, st(tau)). Inside the
// cone the nearest boundary point lies in a common flat, so this is the wall
// distance of the Cartan vector; points outside report inside = false and 0.
BoundaryDistance cone_boundary_distance(const Point& x, const Flag& tau, const Point& y, const Tolerances& tol = {});

}  // namespace morsecert

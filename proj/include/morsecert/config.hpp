#pragma once

namespace morsecert {

// Numeric tolerances. Every operation takes an optional instance; defaults
// are the documented ones.
struct Tolerances {
    double linalg = 1e-9;        // residuals of matrix invariants
    double geom = 1e-6;          // geometric comparisons
    double flag = 1e-6;          // flag equality / opposition
    double margin_floor = 1e-6;  // minimum regularity before reading a shadow
    double eigen_group = 1e-10;  // near-degenerate eigenvalue grouping
    double orthonormal = 1e-8;   // frame orthonormality
    double blowup = 1e14;        // condition / cancellation breaker
    double merge = 1e-4;         // limit-set deduplication radius
};

}  // namespace morsecert

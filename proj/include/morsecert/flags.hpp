#pragma once

#include "morsecert/cartan.hpp"

namespace morsecert {

class Flag {
public:
    Flag() = default;
    Flag(const Mat& frame, FaceType face, const Tolerances& tol = {});
    // Orthonormalizes the column prefixes of an arbitrary invertible basis.
    static Flag from_basis(const Mat& basis, FaceType face);
    static Flag standard(const FaceType& face);
    static Flag reversed(const FaceType& face);

    const Mat& frame() const { return frame_; }
    const FaceType& face() const { return face_; }
    int n() const { return face_.n(); }
    Mat subspace(int k) const { return frame_.leftCols(k); }

private:
    Mat frame_;
    FaceType face_;
};

class ZetaType {
public:
    ZetaType() = default;
    static ZetaType from_weights(const Vec& weights, const FaceType& face);

    const CartanVector& weights() const { return weights_; }
    const FaceType& face() const { return face_; }
    std::vector<double> block_values() const;

private:
    CartanVector weights_;
    FaceType face_;
};

struct Opposition {
    bool opposite = false;
    double margin = 0.0;
};

ZetaType canonical_zeta(const FaceType& face);

Flag flag_shadow(const Point& p, const Point& q, const FaceType& face, const Tolerances& tol = {});
Flag group_shadow(const GroupElement& g, const Point& basepoint, const FaceType& face, const Tolerances& tol = {});
Opposition is_opposite(const Flag& a, const Flag& b, const Tolerances& tol = {});
Flag face_of(const Flag& tau, const FaceType& sub);
Mat zeta_direction(const Point& x, const Flag& tau, const ZetaType& zeta);
double angle_zeta(const Point& x, const Flag& a, const Flag& b, const ZetaType& zeta);
double angle_zeta_point(const Point& x, const Flag& tau, const Point& y, const ZetaType& zeta);
double flag_distance(const Flag& a, const Flag& b);

Flag apply(const GroupElement& g, const Flag& tau);

// A = sum_j c_j F_j F_j^T for the blocks of an orthonormal frame.
Mat zeta_direction_of_frame(const Mat& frame, const ZetaType& zeta);
// Angle between unit directions under the trace form.
double direction_angle(const Mat& a, const Mat& b);
// zeta-direction at x of the shadow of the segment xy, in x-normalized coordinates.
Mat segment_zeta_direction(const Point& x, const Point& y, const ZetaType& zeta, const Tolerances& tol = {});
// zeta-angle at x between the segments toward y and z.
double segment_angle(const Point& x, const Point& y, const Point& z, const ZetaType& zeta,
                     const Tolerances& tol = {});

}  // namespace morsecert

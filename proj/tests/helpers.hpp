#pragma once

#include "morsecert/flags.hpp"

#include <random>

namespace testing {

using namespace morsecert;

inline Mat random_matrix(std::mt19937_64& rng, int n, double scale = 1.0)
{
    std::normal_distribution<double> nd(0.0, scale);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    return m;
}

inline Mat random_rotation(std::mt19937_64& rng, int n)
{
    Mat q = qr_frame(random_matrix(rng, n));
    if (q.determinant() < 0) q.col(0) *= -1;
    return q;
}

inline Mat random_sl(std::mt19937_64& rng, int n, double scale = 1.0)
{
    Mat m = random_matrix(rng, n, scale);
    double d = m.determinant();
    if (d < 0) {
        m.col(0) *= -1;
        d = -d;
    }
    return m / std::pow(d, 1.0 / n);
}

inline Point random_point(std::mt19937_64& rng, int n, double scale = 1.0)
{
    Mat a = symmetrize(random_matrix(rng, n, scale));
    a -= (a.trace() / n) * Mat::Identity(n, n);
    return Point::trusted(sym_exp(a));
}

inline Flag random_flag(std::mt19937_64& rng, const FaceType& face)
{
    return Flag(random_rotation(rng, face.n()), face);
}

inline Mat diag(std::initializer_list<double> v)
{
    Vec d(v.size());
    int i = 0;
    for (double x : v) d(i++) = x;
    return d.asDiagonal();
}

}  // namespace testing

#include "morsecert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace morsecert {

SymEig sym_eig_desc(const Mat& a)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(a));
    const int n = static_cast<int>(a.rows());
    SymEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values(i) = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

Mat symmetrize(const Mat& a) { return 0.5 * (a + a.transpose()); }

Mat sym_apply(const SymEig& e, double (*f)(double))
{
    Vec fv = e.values.unaryExpr(f);
    return e.vectors * fv.asDiagonal() * e.vectors.transpose();
}

Mat sym_sqrt(const Mat& a)
{
    return sym_apply(sym_eig_desc(a), [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Mat sym_invsqrt(const Mat& a)
{
    return sym_apply(sym_eig_desc(a), [](double x) { return 1.0 / std::sqrt(x); });
}

Mat sym_log(const Mat& a)
{
    return sym_apply(sym_eig_desc(a), [](double x) { return std::log(x); });
}

Mat sym_exp(const Mat& a)
{
    return sym_apply(sym_eig_desc(a), [](double x) { return std::exp(x); });
}

Mat qr_frame(const Mat& a)
{
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.rows());
    return q;
}

Mat null_basis(const Mat& a, int dim)
{
    const int cols = static_cast<int>(a.cols());
    if (a.rows() == 0) return Mat::Identity(cols, cols).leftCols(dim);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

namespace {

constexpr int kMaxTableDim = 10;

std::vector<std::vector<SubsetTable>> build_tables()
{
    std::vector<std::vector<SubsetTable>> all(kMaxTableDim + 1);
    for (int n = 0; n <= kMaxTableDim; ++n) {
        all[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            SubsetTable& t = all[n][k];
            t.index_of_mask.assign(1 << n, -1);
            std::vector<int> cur(k);
            std::iota(cur.begin(), cur.end(), 0);
            while (true) {
                int mask = 0;
                for (int i : cur) mask |= 1 << i;
                t.index_of_mask[mask] = static_cast<int>(t.sets.size());
                t.sets.push_back(cur);
                int i = k - 1;
                while (i >= 0 && cur[i] == n - k + i) --i;
                if (i < 0) break;
                ++cur[i];
                for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
            }
        }
    }
    return all;
}

double det_small(const Mat& m)
{
    switch (m.rows()) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
             - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
             + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.partialPivLu().determinant();
    }
}

Mat submatrix(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    Mat s(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
    return s;
}

}  // namespace

const SubsetTable& subsets(int n, int k)
{
    static const std::vector<std::vector<SubsetTable>> tables = build_tables();
    return tables.at(n).at(k);
}

Mat compound(const Mat& m, int k)
{
    const int n = static_cast<int>(m.rows());
    const auto& s = subsets(n, k).sets;
    const int c = static_cast<int>(s.size());
    Mat out(c, c);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) out(i, j) = det_small(submatrix(m, s[i], s[j]));
    return out;
}

Vec plucker(const Mat& basis)
{
    const int n = static_cast<int>(basis.rows());
    const int k = static_cast<int>(basis.cols());
    const auto& s = subsets(n, k).sets;
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    Vec out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out(i) = det_small(submatrix(basis, s[i], all));
    return out;
}

Mat subspace_from_plucker(const Vec& w, int n, int k)
{
    if (k == 1) return w.normalized();
    if (k == n) return Mat::Identity(n, n);
    const SubsetTable& top = subsets(n, k);
    const auto& lower = subsets(n, k - 1).sets;
    Mat c = Mat::Zero(n, lower.size());
    for (size_t t = 0; t < lower.size(); ++t) {
        int mask = 0;
        for (int j : lower[t]) mask |= 1 << j;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) continue;
            int pos = 0;
            for (int j : lower[t]) pos += j < i;
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            c(i, t) = sign * w(top.index_of_mask[mask | (1 << i)]);
        }
    }
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(k);
}

Mat nested_frame(const std::vector<Mat>& bases, int n)
{
    Mat q(n, 0);
    for (const Mat& b : bases) {
        const int add = static_cast<int>(b.cols() - q.cols());
        if (add <= 0) continue;
        Mat r = b - q * (q.transpose() * b);
        Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeThinU);
        Mat next(n, q.cols() + add);
        next << q, svd.matrixU().leftCols(add);
        q = next;
    }
    const int rest = n - static_cast<int>(q.cols());
    if (rest > 0) {
        Mat p = Mat::Identity(n, n) - q * q.transpose();
        Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullU);
        Mat next(n, n);
        next << q, svd.matrixU().leftCols(rest);
        q = next;
    }
    return q;
}

void ScaledMat::normalize()
{
    const double mx = m.cwiseAbs().maxCoeff();
    if (mx > 0 && std::isfinite(mx)) {
        m /= mx;
        log_scale += std::log(mx);
    }
}

ScaledMat ScaledMat::operator*(const ScaledMat& o) const
{
    ScaledMat r{m * o.m, log_scale + o.log_scale};
    r.normalize();
    return r;
}

void ScaledVec::normalize()
{
    const double nv = v.norm();
    if (nv > 0 && std::isfinite(nv)) {
        v /= nv;
        log_scale += std::log(nv);
    }
}

ScaledVec apply(const ScaledMat& a, const ScaledVec& x)
{
    ScaledVec r{a.m * x.v, a.log_scale + x.log_scale};
    r.normalize();
    return r;
}

TopTriple top_triple(const ScaledMat& a)
{
    Eigen::JacobiSVD<Mat> svd(a.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {std::log(svd.singularValues()(0)) + a.log_scale, svd.matrixU().col(0), svd.matrixV().col(0)};
}

namespace {

GradedSvd assemble(int n, const std::vector<double>& logsum, const std::vector<Vec>& lefts,
                   const std::vector<Vec>& rights)
{
    GradedSvd out;
    out.log_sv.resize(n);
    for (int k = 1; k <= n; ++k) out.log_sv(k - 1) = logsum[k] - logsum[k - 1];
    std::vector<Mat> lb, rb;
    for (int k = 1; k < n; ++k) {
        lb.push_back(subspace_from_plucker(lefts[k - 1], n, k));
        rb.push_back(subspace_from_plucker(rights[k - 1], n, k));
    }
    out.left = nested_frame(lb, n);
    out.right = nested_frame(rb, n);
    out.left_spaces = std::move(lb);
    out.right_spaces = std::move(rb);
    return out;
}

}  // namespace

GradedSvd graded_svd(const Vec& a, const Mat& o, const Vec& b)
{
    const int n = static_cast<int>(o.rows());
    std::vector<double> logsum(n + 1, 0.0);
    std::vector<Vec> lefts, rights;
    for (int k = 1; k < n; ++k) {
        const auto& s = subsets(n, k).sets;
        const int c = static_cast<int>(s.size());
        Vec as(c), bs(c);
        for (int i = 0; i < c; ++i) {
            as(i) = 0;
            bs(i) = 0;
            for (int j : s[i]) {
                as(i) += a(j);
                bs(i) += b(j);
            }
        }
        Mat minors = compound(o, k);
        double top = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j)
                if (minors(i, j) != 0.0)
                    top = std::max(top, as(i) + bs(j) + std::log(std::abs(minors(i, j))));
        Mat scaled(c, c);
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j) scaled(i, j) = minors(i, j) * std::exp(as(i) + bs(j) - top);
        TopTriple t = top_triple(ScaledMat{scaled, top});
        logsum[k] = t.log_sigma;
        lefts.push_back(t.left);
        rights.push_back(t.right);
    }
    logsum[n] = a.sum() + b.sum() + std::log(std::abs(o.determinant()));
    return assemble(n, logsum, lefts, rights);
}

Compounds Compounds::of(const Mat& g) { return of_product({g}); }

Compounds Compounds::of_product(const std::vector<Mat>& factors)
{
    Compounds c;
    c.n = static_cast<int>(factors.front().rows());
    for (int k = 1; k < c.n; ++k) {
        ScaledMat acc{compound(factors.front(), k), 0.0};
        acc.normalize();
        for (size_t f = 1; f < factors.size(); ++f) {
            ScaledMat next{compound(factors[f], k), 0.0};
            next.normalize();
            acc = acc * next;
        }
        c.log_norm.push_back(top_triple(acc).log_sigma);
        c.power.push_back(std::move(acc));
    }
    return c;
}

Compounds Compounds::transposed() const
{
    Compounds c = *this;
    for (auto& p : c.power) p.m.transposeInPlace();
    return c;
}

CompoundWord::CompoundWord(int n) : n_(n)
{
    for (int k = 1; k < n; ++k) {
        const int c = static_cast<int>(subsets(n, k).sets.size());
        acc_.push_back(ScaledMat{Mat::Identity(c, c), 0.0});
        norm_sum_.push_back(0.0);
    }
}

void CompoundWord::append(const Compounds& letter)
{
    for (int k = 0; k + 1 < n_; ++k) {
        acc_[k] = acc_[k] * letter.power[k];
        norm_sum_[k] += letter.log_norm[k];
    }
}

double CompoundWord::cancellation() const
{
    double worst = 0.0;
    for (int k = 0; k + 1 < n_; ++k) worst = std::max(worst, norm_sum_[k] - top_triple(acc_[k]).log_sigma);
    return worst;
}

GradedSvd CompoundWord::svd() const
{
    std::vector<double> logsum(n_ + 1, 0.0);
    std::vector<Vec> lefts, rights;
    for (int k = 1; k < n_; ++k) {
        TopTriple t = top_triple(acc_[k - 1]);
        logsum[k] = t.log_sigma;
        lefts.push_back(t.left);
        rights.push_back(t.right);
    }
    return assemble(n_, logsum, lefts, rights);
}

}  // namespace morsecert

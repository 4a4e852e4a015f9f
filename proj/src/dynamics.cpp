#include "morsecert/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace morsecert {

std::vector<std::pair<int, int>> tangent_entries(const FaceType& face)
{
    const auto block = face.block_of_index();
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < face.n(); ++r)
        for (int c = 0; c < r; ++c)
            if (block[r] > block[c]) e.emplace_back(r, c);
    return e;
}

namespace {

Mat block_lower_mask(const Mat& m, const std::vector<int>& block)
{
    Mat out = Mat::Zero(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < r; ++c)
            if (block[r] > block[c]) out(r, c) = m(r, c);
    return out;
}

Mat block_upper(const Mat& m, const std::vector<int>& block)
{
    Mat out = m;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < r; ++c)
            if (block[r] > block[c]) out(r, c) = 0.0;
    return out;
}

}  // namespace

Mat flag_differential(const Mat& g, const Mat& frame, const FaceType& face, const Mat& target_frame)
{
    const auto entries = tangent_entries(face);
    const auto block = face.block_of_index();
    const int n = face.n();
    const int d = static_cast<int>(entries.size());
    Mat image = g * frame;
    Mat qf = qr_frame(image);
    Mat r = block_upper(qf.transpose() * image, block);
    Mat rinv = r.inverse();
    Mat k = target_frame.size() ? Mat(target_frame.transpose() * qf) : Mat(Mat::Identity(n, n));
    Mat out(d, d);
    for (int j = 0; j < d; ++j) {
        Mat nm = Mat::Zero(n, n);
        nm(entries[j].first, entries[j].second) = 1.0;
        Mat img = block_lower_mask(r * nm * rinv, block);
        img = block_lower_mask(k * img * k.transpose(), block);
        for (int i = 0; i < d; ++i) out(i, j) = img(entries[i].first, entries[i].second);
    }
    return out;
}

double expansion_factor(const GroupElement& g, const Flag& tau)
{
    Mat dm = flag_differential(g.mat(), tau.frame(), tau.face());
    Eigen::JacobiSVD<Mat> svd(dm);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

std::vector<double> transvection_spectrum(const CartanVector& a, const FaceType& face)
{
    std::vector<double> out;
    for (auto [r, c] : tangent_entries(face)) out.push_back(std::exp(a[r] - a[c]));
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) return {0.0, y.empty() ? 0.0 : y[0]};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    const double slope = den != 0 ? (n * sxy - sx * sy) / den : 0.0;
    return {slope, (sy - slope * sx) / n};
}

namespace {

void finish(ExpansionReport& r)
{
    std::vector<double> x(r.steps.begin(), r.steps.end());
    std::tie(r.slope, r.intercept) = fit_line(x, r.log_expansion);
    for (size_t i = 1; i < r.log_expansion.size(); ++i)
        if (r.log_expansion[i] < r.log_expansion[i - 1] - 1e-9) {
            r.monotone = false;
            r.decreasing_at.push_back(r.steps[i]);
        }
}

}  // namespace

ExpansionReport expansion_report(const std::vector<GroupElement>& generators, const Word& ray, const Flag& tau,
                                 const Point& basepoint)
{
    Alphabet alphabet = Alphabet::of(generators, basepoint);
    Flag local(qr_frame(alphabet.inverse_half() * tau.frame()), tau.face());
    ExpansionReport r;
    Mat q = Mat::Identity(alphabet.n(), alphabet.n());
    for (size_t k = 0; k < ray.size(); ++k) {
        for (const Mat& f : alphabet.factors(ray[k])) q = q * f;
        r.steps.push_back(static_cast<int>(k) + 1);
        r.log_expansion.push_back(std::log(expansion_factor(GroupElement::trusted(q.inverse()), local)));
    }
    finish(r);
    return r;
}

ExpansionReport expansion_along_ray(const Alphabet& alphabet, const Word& ray, const FaceType& face)
{
    const int n = alphabet.n();
    FactorSequence fs = factor_sequence(alphabet, ray);
    auto pull = prefix_pullbacks(alphabet, ray);
    std::vector<Mat> frames;
    for (const auto& pl : pull) {
        std::vector<Mat> spaces;
        for (int k = 1; k < n; ++k) spaces.push_back(subspace_from_plucker(pl[k - 1], n, k));
        frames.push_back(frame_for_face(spaces, face));
    }
    const int d = static_cast<int>(tangent_entries(face).size());
    ScaledMat acc{Mat::Identity(d, d), 0.0};
    ExpansionReport r;
    size_t letter = 0;
    for (size_t i = 0; i < fs.factors.size(); ++i) {
        ScaledMat step{flag_differential(*fs.factors[i], frames[i + 1], face, frames[i]), 0.0};
        step.normalize();
        acc = acc * step;
        if (static_cast<int>(i) + 1 == fs.letter_end[letter]) {
            r.steps.push_back(static_cast<int>(letter) + 1);
            r.log_expansion.push_back(-top_triple(acc).log_sigma);
            ++letter;
        }
    }
    finish(r);
    return r;
}

std::vector<ContractionEntry> contraction_diagnostic(const std::vector<GroupElement>& elements, const FaceType& face,
                                                     const Point& basepoint, int probes, std::uint64_t seed,
                                                     const Tolerances& tol)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const int n = face.n();
    std::vector<ContractionEntry> out;
    for (size_t idx = 0; idx < elements.size(); ++idx) {
        ContractionEntry e;
        e.index = static_cast<int>(idx);
        try {
            Flag repel = group_shadow(elements[idx].inverse(), basepoint, face, tol);
            Flag attract = group_shadow(elements[idx], basepoint, face, tol);
            std::vector<Flag> images;
            int attempts = 0;
            while (static_cast<int>(images.size()) < probes && attempts < 1000 * probes) {
                ++attempts;
                Mat m(n, n);
                for (int i = 0; i < n * n; ++i) m(i) = nd(rng);
                Flag probe(qr_frame(m), face);
                if (is_opposite(probe, repel, tol).margin < 0.1) continue;
                images.push_back(apply(elements[idx], probe));
            }
            for (size_t i = 0; i < images.size(); ++i) {
                e.shadow_agreement = std::max(e.shadow_agreement, flag_distance(images[i], attract));
                for (size_t j = i + 1; j < images.size(); ++j)
                    e.image_diameter = std::max(e.image_diameter, flag_distance(images[i], images[j]));
            }
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::NearSingularMargin && err.kind() != ErrorKind::DegenerateSegment) throw;
            e.rejected = true;
            e.error = err.what();
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace morsecert

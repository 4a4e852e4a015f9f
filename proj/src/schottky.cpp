#include "morsecert/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace morsecert {

namespace {

// Letters a, A, b, B of a two-generator alphabet.
constexpr int kLetters[4] = {0, 1, 2, 3};

double sigma_min_small(const Mat& m)
{
    if (m.rows() == 1) return std::abs(m(0, 0));
    if (m.rows() == 2) {
        const double s = m.squaredNorm();
        const double d = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
        return std::sqrt(std::max(0.0, 0.5 * (s - std::sqrt(std::max(0.0, s * s - 4.0 * d * d)))));
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double opposition_margin(const Flag& a, const Flag& b)
{
    double margin = std::numeric_limits<double>::infinity();
    for (int k : a.face().dims())
        margin = std::min(margin, sigma_min_small(a.frame().leftCols(k).transpose() * b.frame().rightCols(k)));
    return margin;
}

int resolve_jobs(int jobs)
{
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

template <class F>
void parallel_for(int count, int jobs, F&& body)
{
    const int nj = std::max(1, std::min(resolve_jobs(jobs), count));
    if (nj == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nj; ++t)
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += nj) body(i);
        });
    for (auto& th : pool) th.join();
}

// Point U diag(e^{log_sv}) U^T in basepoint-normalized coordinates.
struct SpectralPoint {
    Mat frame;
    Vec log_sv;
};

// Relative position of q seen from p: graded SVD whose left frame is the
// direction frame at p (up to the rotation p.frame).
GradedSvd relative(const SpectralPoint& p, const SpectralPoint& q)
{
    return graded_svd(-0.5 * p.log_sv, p.frame.transpose() * q.frame, 0.5 * q.log_sv);
}

}  // namespace

GenericityReport genericity_check(const GroupElement& alpha, const GroupElement& beta, const FaceType& face,
                                  const Point& basepoint, const Tolerances& tol)
{
    if (alpha.dim() != face.n() || beta.dim() != face.n())
        throw Error(ErrorKind::FaceMismatch, "face dimension differs from generators");
    Alphabet alph = Alphabet::of({alpha, beta}, basepoint);
    GenericityReport r;
    r.labels = {"+a", "-a", "+b", "-b"};
    r.pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    auto flags_at = [&](int power) {
        std::vector<Flag> out;
        for (int l : kLetters) out.push_back(word_shadow(alph, Word(power, l), face, tol));
        return out;
    };
    std::vector<Flag> prev = flags_at(4);
    for (int power = 8; power <= 4096; power *= 2) {
        std::vector<Flag> cur = flags_at(power);
        double change = 0.0;
        for (int i = 0; i < 4; ++i) change = std::max(change, flag_distance(prev[i], cur[i]));
        std::vector<double> margins;
        for (auto [i, j] : r.pairs) margins.push_back(is_opposite(cur[i], cur[j], tol).margin);
        if (!r.margins.empty())
            for (size_t p = 0; p < margins.size(); ++p) change = std::max(change, std::abs(margins[p] - r.margins[p]));
        r.margins = margins;
        prev = cur;
        if (change < 1e-6) {
            r.flags = cur;
            r.power = power;
            r.min_margin = *std::min_element(margins.begin(), margins.end());
            r.pass = r.min_margin > tol.flag;
            return r;
        }
    }
    throw Error(ErrorKind::PowerStabilizationFailed, "axis flags did not stabilize by power 4096");
}

QuadrupleGeometry quadruple_geometry(const GroupElement& alpha, const GroupElement& beta, int m, int n,
                                     const Point& basepoint, const ThetaSet& theta, const ZetaType& zeta)
{
    if (m < 1 || n < 1) throw Error(ErrorKind::DegenerateSegment, "powers must be positive");
    if (zeta.face() != theta.face) throw Error(ErrorKind::FaceMismatch, "zeta and Theta have different faces");
    Alphabet alph = Alphabet::powers({alpha, beta}, {m, n}, basepoint);
    const int dim = alph.n();
    std::vector<SpectralPoint> pts;
    for (int l : kLetters) {
        GradedSvd s = word_svd(alph, {l}).svd;
        pts.push_back({s.left, s.log_sv});
    }
    const SpectralPoint base{Mat::Identity(dim, dim), Vec::Zero(dim)};
    auto direction = [&](const GradedSvd& g) {
        return zeta_direction_of_frame(frame_for_face(g.left_spaces, theta.face), zeta);
    };
    QuadrupleGeometry r;
    r.min_separation = std::numeric_limits<double>::infinity();
    r.min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const Mat home = direction(relative(pts[i], base));
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            GradedSvd g = relative(pts[i], pts[j]);
            CartanVector a = CartanVector::from_unsorted(2.0 * g.log_sv);
            if (a.norm() < 1e-12) throw Error(ErrorKind::DegenerateSegment, "two quadruple points coincide");
            r.min_separation = std::min(r.min_separation, a.norm());
            r.min_margin = std::min(r.min_margin, min_root_value(a, theta.face));
            r.max_angle_defect = std::max(r.max_angle_defect, direction_angle(direction(g), home));
        }
    }
    return r;
}

PowerSearchResult power_search(const GroupElement& alpha, const GroupElement& beta, const Point& basepoint,
                               const StraightnessParams& params, const ZetaType& zeta, int max_power, int jobs)
{
    if (max_power < 1) throw Error(ErrorKind::InputError, "max power must be positive");
    const FaceType& face = params.theta.face;
    PowerSearchResult res;
    res.genericity = genericity_check(alpha, beta, face, basepoint);
    if (!res.genericity.pass) {
        res.reason = "axis flags are not pairwise opposite (min margin " +
                     std::to_string(res.genericity.min_margin) + ")";
        return res;
    }
    for (int top = 1; top <= max_power; ++top) {
        std::vector<std::pair<int, int>> order;
        for (int m = 1; m < top; ++m) order.emplace_back(m, top);
        for (int n = 1; n <= top; ++n) order.emplace_back(top, n);
        for (auto [m, n] : order) {
            Alphabet alph = Alphabet::powers({alpha, beta}, {m, n}, basepoint);
            EntryReport e = certify_entry(alph, face, params, zeta, jobs);
            res.attempts.push_back({m, n, e});
            if (e.status == EntryStatus::Certified) {
                res.found = true;
                res.m = m;
                res.n = n;
                res.certificate = Certificate{params, 1, e.words_checked, e.worst_angle_defect, e.worst_margin,
                                              e.worst_spacing};
                return res;
            }
        }
    }
    res.reason = "no power pair up to " + std::to_string(max_power) + " certified";
    return res;
}

LimitSetSample limit_set_sample(const Alphabet& alphabet, const FaceType& face, int length, int jobs,
                                const Tolerances& tol)
{
    if (length < 1) throw Error(ErrorKind::InputError, "limit set sampling needs word length >= 1");
    const std::vector<Word> words = reduced_words(alphabet.rank(), length);
    const int count = static_cast<int>(words.size());
    std::vector<std::optional<LimitPoint>> shadows(count);
    parallel_for(count, jobs, [&](int i) {
        try {
            Flag f = word_shadow(alphabet, words[i], face, tol);
            shadows[i] = LimitPoint{words[i], f, min_root_value(word_cartan(alphabet, words[i]), face)};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NearSingularMargin && e.kind() != ErrorKind::DegenerateSegment) throw;
        }
    });

    LimitSetSample out;
    std::vector<std::vector<Mat>> projectors;
    const double screen = 2.0 * tol.merge * std::sqrt(2.0 * face.n());
    for (int i = 0; i < count; ++i) {
        if (!shadows[i]) {
            out.skipped.push_back(words[i]);
            continue;
        }
        ++out.sampled;
        const Flag& f = shadows[i]->flag;
        std::vector<Mat> proj;
        for (int k : face.dims()) proj.push_back(f.frame().leftCols(k) * f.frame().leftCols(k).transpose());
        bool merged = false;
        for (size_t r = 0; r < out.points.size() && !merged; ++r) {
            bool near = true;
            for (size_t k = 0; k < proj.size() && near; ++k) near = (proj[k] - projectors[r][k]).norm() < screen;
            if (near && flag_distance(out.points[r].flag, f) < tol.merge) merged = true;
        }
        if (merged) continue;
        out.points.push_back(*shadows[i]);
        projectors.push_back(std::move(proj));
    }
    return out;
}

LimitSetSample limit_set_sample(const std::vector<GroupElement>& generators, const FaceType& face,
                                const Point& basepoint, int length, int jobs, const Tolerances& tol)
{
    return limit_set_sample(Alphabet::of(generators, basepoint), face, length, jobs, tol);
}

AntipodalityReport antipodality_audit(const std::vector<Flag>& flags, const Tolerances& tol)
{
    if (flags.size() < 2) throw Error(ErrorKind::InputError, "antipodality audit needs at least two flags");
    for (const Flag& f : flags)
        if (f.face() != flags.front().face()) throw Error(ErrorKind::FaceMismatch, "flags have different face types");
    AntipodalityReport r;
    r.min_margin = std::numeric_limits<double>::infinity();
    std::pair<int, int> worst{0, 1};
    for (size_t i = 0; i < flags.size(); ++i)
        for (size_t j = i + 1; j < flags.size(); ++j) {
            const double m = opposition_margin(flags[i], flags[j]);
            if (m < r.min_margin) {
                r.min_margin = m;
                worst = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    if (r.min_margin <= tol.flag) r.offender = worst;
    return r;
}

AntipodalityReport antipodality_audit(const Alphabet& alphabet, const std::vector<LimitPoint>& points,
                                      const FaceType& face, const Tolerances& tol)
{
    if (points.size() < 2) throw Error(ErrorKind::InputError, "antipodality audit needs at least two flags");
    const int n = alphabet.n();
    // local[i][j]: flag of point i translated by the inverse of its first j letters
    std::vector<std::vector<Flag>> local;
    for (const LimitPoint& p : points) {
        auto pull = prefix_pullbacks(alphabet, p.word);
        FactorSequence fs = factor_sequence(alphabet, p.word);
        std::vector<Flag> row;
        for (size_t j = 0; j <= p.word.size(); ++j) {
            const auto& pl = pull[j == 0 ? 0 : fs.letter_end[j - 1]];
            std::vector<Mat> spaces;
            for (int k = 1; k < n; ++k) spaces.push_back(subspace_from_plucker(pl[k - 1], n, k));
            row.emplace_back(frame_for_face(spaces, face), face);
        }
        local.push_back(std::move(row));
    }
    AntipodalityReport r;
    r.min_margin = std::numeric_limits<double>::infinity();
    std::pair<int, int> worst{0, 1};
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t k = i + 1; k < points.size(); ++k) {
            const Word& a = points[i].word;
            const Word& b = points[k].word;
            size_t j = 0;
            while (j < a.size() && j < b.size() && a[j] == b[j]) ++j;
            if (j == a.size() || j == b.size()) j = std::min(a.size(), b.size()) - 1;
            const double m = opposition_margin(local[i][j], local[k][j]);
            if (m < r.min_margin) {
                r.min_margin = m;
                worst = {static_cast<int>(i), static_cast<int>(k)};
            }
        }
    if (r.min_margin <= tol.flag) r.offender = worst;
    return r;
}

}  // namespace morsecert

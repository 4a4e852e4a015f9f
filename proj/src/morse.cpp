#include "morsecert/morse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace morsecert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

OrbitPath::OrbitPath(std::vector<Point> pts, Word lbl) : points(std::move(pts)), labels(std::move(lbl))
{
    if (points.empty()) throw Error(ErrorKind::PathTooShort, "orbit path needs at least one point");
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i].dim() != points[0].dim()) throw Error(ErrorKind::InputError, "path points differ in dimension");
        if (riemannian_distance(points[i], points[i + 1]) < 1e-12)
            throw Error(ErrorKind::DegenerateSegment, "consecutive path points coincide at " + std::to_string(i));
    }
}

StraightnessParams::StraightnessParams(ThetaSet t, double e, double l, int s)
    : theta(std::move(t)), eps(e), spacing(l), scale(s)
{
    if (!(eps > 0) || !(spacing > 0) || scale < 1)
        throw Error(ErrorKind::InputError, "straightness parameters must be positive");
}

std::vector<StraightnessParams> default_schedule(const FaceType& face, int count)
{
    std::vector<StraightnessParams> out;
    for (int i = 1; i <= count; ++i)
        out.emplace_back(ThetaSet(face, 1.0 / (4.0 * i)), 0.2 / i, 2.0 * i, 2 * i);
    return out;
}

const char* to_string(EntryStatus s)
{
    switch (s) {
    case EntryStatus::Certified: return "certified";
    case EntryStatus::Failed: return "failed";
    case EntryStatus::Truncated: return "truncated";
    case EntryStatus::SkippedScaleCap: return "skipped-scale-cap";
    }
    return "unknown";
}

// ---------------------------------------------------------------- dense checks

CheckReport is_straight(const OrbitPath& path, const ThetaSet& theta, double eps, double spacing, const ZetaType& zeta,
                        const Tolerances& tol)
{
    if (zeta.face() != theta.face) throw Error(ErrorKind::FaceMismatch, "zeta and Theta have different faces");
    const int n = path.size();
    if (n < 2) throw Error(ErrorKind::PathTooShort, "straightness needs at least two points");
    CheckReport r;
    r.worst_margin = kInf;
    r.worst_spacing = kInf;
    auto fail = [&](int idx, const std::string& why) {
        if (r.pass) r.failure = why;
        r.pass = false;
        r.failing.push_back(idx);
    };
    for (int i = 0; i + 1 < n; ++i) {
        CartanVector a = cartan_vector(path.points[i], path.points[i + 1]);
        const double len = a.norm();
        const double margin = len > 1e-12 ? min_root_value(a, theta.face) : 0.0;
        r.spacings.push_back(len);
        r.margins.push_back(margin);
        r.worst_margin = std::min(r.worst_margin, margin);
        r.worst_spacing = std::min(r.worst_spacing, len);
        if (margin < theta.margin)
            fail(i, "segment " + std::to_string(i) + " not Theta-regular (" + fmt(margin) + " < " + fmt(theta.margin) + ")");
        else if (len < spacing)
            fail(i, "segment " + std::to_string(i) + " shorter than spacing (" + fmt(len) + " < " + fmt(spacing) + ")");
    }
    for (int i = 1; i + 1 < n; ++i) {
        double defect = kPi;
        try {
            defect = kPi - segment_angle(path.points[i], path.points[i - 1], path.points[i + 1], zeta, tol);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateSegment && e.kind() != ErrorKind::NearSingularMargin) throw;
        }
        r.angle_defects.push_back(defect);
        r.worst_angle_defect = std::max(r.worst_angle_defect, defect);
        if (defect > eps)
            fail(i, "angle defect at " + std::to_string(i) + " is " + fmt(defect) + " > " + fmt(eps));
    }
    return r;
}

OrbitPath midpoint_triples(const OrbitPath& path, int s, int offset)
{
    if (s < 1 || offset < 0) throw Error(ErrorKind::InputError, "midpoint spacing must be positive");
    OrbitPath out;
    for (int i = offset; i + s < path.size(); i += s) out.points.push_back(midpoint(path.points[i], path.points[i + s]));
    if (out.size() < 2) throw Error(ErrorKind::PathTooShort, "path too short for midpoints at this scale");
    return out;
}

namespace {

void absorb(CheckReport& agg, const CheckReport& r, int window)
{
    agg.worst_margin = std::min(agg.worst_margin, r.worst_margin);
    agg.worst_spacing = std::min(agg.worst_spacing, r.worst_spacing);
    agg.worst_angle_defect = std::max(agg.worst_angle_defect, r.worst_angle_defect);
    agg.angle_defects.push_back(r.worst_angle_defect);
    agg.margins.push_back(r.worst_margin);
    agg.spacings.push_back(r.worst_spacing);
    if (!r.pass) {
        if (agg.pass) agg.failure = "window " + std::to_string(window) + ": " + r.failure;
        agg.pass = false;
        agg.failing.push_back(window);
    }
}

CheckReport triple_report(const OrbitPath& path, int t1, int t2, int t3, int t4, const StraightnessParams& params,
                          const ZetaType& zeta, const Tolerances& tol)
{
    OrbitPath tri;
    const auto& p = path.points;
    tri.points = {midpoint(p[t1], p[t2]), midpoint(p[t2], p[t3]), midpoint(p[t3], p[t4])};
    return is_straight(tri, params.theta, params.eps, params.spacing, zeta, tol);
}

}  // namespace

CheckReport quadruple_check(const OrbitPath& path, const StraightnessParams& params, const ZetaType& zeta,
                            bool all_gaps, const Tolerances& tol)
{
    const int n = path.size();
    const int s = params.scale;
    if (n < 3 * s + 1) throw Error(ErrorKind::PathTooShort, "path shorter than three blocks of the scale");
    CheckReport agg;
    agg.worst_margin = kInf;
    agg.worst_spacing = kInf;
    int window = 0;
    if (!all_gaps) {
        for (int t = 0; t + 3 * s < n; ++t)
            absorb(agg, triple_report(path, t, t + s, t + 2 * s, t + 3 * s, params, zeta, tol), window++);
        return agg;
    }
    for (int t1 = 0; t1 < n; ++t1)
        for (int t2 = t1 + s; t2 < n; ++t2)
            for (int t3 = t2 + s; t3 < n; ++t3)
                for (int t4 = t3 + s; t4 < n; ++t4)
                    absorb(agg, triple_report(path, t1, t2, t3, t4, params, zeta, tol), window++);
    return agg;
}

// ---------------------------------------------------------------- Morse fit

namespace {

void record_pair(FitReport& r, int i, int j, bool ok)
{
    if (ok) return;
    ++r.membership_failures;
    r.memberships[i] = false;
    r.memberships[j] = false;
}

bool cone_holds(const Point& x, const Flag& tau, const Point& y, const ThetaSet& theta, const Tolerances& tol)
{
    try {
        return in_theta_cone(x, tau, y, theta, tol).inside;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateSegment || e.kind() == ErrorKind::DegenerateVector) return false;
        throw;
    }
}

}  // namespace

FitReport morse_lemma_fit(const OrbitPath& path, const ThetaSet& theta, double delta, const Tolerances& tol)
{
    const int n = path.size();
    if (n < 2) throw Error(ErrorKind::PathTooShort, "fit needs at least two points");
    const Point& first = path.points.front();
    const Point& last = path.points.back();
    FitReport r;
    r.tau_plus = flag_shadow(first, last, theta.face, tol);
    r.tau_minus = flag_shadow(last, first, theta.face, tol);
    ParallelSetSpec spec = parallel_set(r.tau_minus, r.tau_plus, tol);
    std::vector<Point> proj;
    for (const Point& x : path.points) {
        Projection pr = project_to_parallel_set(x, spec, tol);
        proj.push_back(pr.point);
        r.distances.push_back(pr.distance);
        r.max_distance = std::max(r.max_distance, pr.distance);
    }
    r.memberships.assign(n, true);
    for (int i = 0; i + 1 < n; ++i) {
        const bool ok = cone_holds(proj[i], r.tau_plus, proj[i + 1], theta, tol)
                     && cone_holds(proj[i + 1], r.tau_minus, proj[i], theta, tol);
        record_pair(r, i, i + 1, ok);
    }
    r.pass = r.membership_failures == 0 && r.max_distance <= delta;
    return r;
}

FitReport morse_lemma_fit(const Alphabet& alphabet, const Word& word, const ThetaSet& theta, double delta,
                          int stride, const Tolerances& tol)
{
    if (stride < 1) throw Error(ErrorKind::InputError, "stride must be positive");
    const int n = alphabet.n();
    if (theta.face.n() != n) throw Error(ErrorKind::FaceMismatch, "face dimension differs from alphabet");
    if (word.empty()) throw Error(ErrorKind::PathTooShort, "fit needs a non-empty word");
    if (theta.face != FaceType::full(n)) {
        // coarse points only
        std::vector<Point> pts{alphabet.basepoint()};
        Word prefix;
        for (size_t k = 0; k < word.size(); ++k) {
            prefix.push_back(word[k]);
            if ((k + 1) % stride != 0 && k + 1 != word.size()) continue;
            Mat g = alphabet.half() * alphabet.dense(prefix);
            pts.push_back(Point::trusted(g * g.transpose()));
        }
        return morse_lemma_fit(OrbitPath(std::move(pts)), theta, delta, tol);
    }

    const int len = static_cast<int>(word.size());
    CompoundWord cw = word_compounds(alphabet, word);
    GradedSvd sv = cw.svd();
    CartanVector a = CartanVector::from_unsorted(2.0 * sv.log_sv);
    if (a.norm() < tol.linalg) throw Error(ErrorKind::DegenerateSegment, "word fixes the basepoint");
    if (regularity_margin(a, theta.face) <= tol.margin_floor)
        throw Error(ErrorKind::NearSingularMargin, "word too close to a wall for a shadow");

    FitReport r;
    r.tau_plus = Flag(qr_frame(alphabet.half() * sv.left), theta.face);
    r.tau_minus = Flag(qr_frame(alphabet.half() * sv.left.rowwise().reverse()), theta.face);

    // ahead[k][j-1]: Lambda^j of the suffix after k letters applied to the
    // top right singular vector of the word, with its log size.
    std::vector<std::vector<ScaledVec>> ahead(len + 1, std::vector<ScaledVec>(n - 1));
    for (int j = 1; j < n; ++j) ahead[len][j - 1] = ScaledVec{top_triple(cw.powers()[j - 1]).right, 0.0};
    for (int k = len - 1; k >= 0; --k)
        for (int j = 1; j < n; ++j)
            ahead[k][j - 1] = apply(alphabet.compounds(word[k]).power[j - 1], ahead[k + 1][j - 1]);

    std::vector<Vec> behind(n - 1);
    for (int j = 1; j < n; ++j) behind[j - 1] = plucker(sv.left.rightCols(j));

    std::vector<Vec> coords;
    r.memberships.assign(len + 1, true);
    for (int k = 0; k <= len; ++k) {
        if (k > 0)
            for (int j = 1; j < n; ++j) {
                ScaledVec y = apply(alphabet.compounds(inverse_letter(word[k - 1])).power[j - 1],
                                    ScaledVec{behind[j - 1], 0.0});
                behind[j - 1] = y.v;
            }
        std::vector<Mat> plus, minus;
        for (int j = 1; j < n; ++j) {
            plus.push_back(subspace_from_plucker(ahead[k][j - 1].v, n, j));
            minus.push_back(subspace_from_plucker(behind[j - 1], n, j));
        }
        Flag lp(frame_for_face(plus, theta.face), theta.face);
        Flag lm(frame_for_face(minus, theta.face), theta.face);
        ParallelSetSpec spec = parallel_set(lm, lp, tol);
        Projection pr = project_to_parallel_set(Point::identity(n), spec, tol);
        r.distances.push_back(pr.distance);
        r.max_distance = std::max(r.max_distance, pr.distance);
        Mat ih = sym_invsqrt(pr.point.mat());
        Vec s = Vec::Zero(n + 1);
        for (int j = 1; j < n; ++j) {
            const ScaledVec& y = ahead[k][j - 1];
            s(j) = 2.0 * (y.log_scale + std::log((compound(ih, j) * y.v).norm()));
        }
        Vec v(n);
        for (int j = 1; j <= n; ++j) v(j - 1) = s(j - 1) - s(j);
        v.array() -= v.mean();
        coords.push_back(v);
    }
    std::vector<int> coarse;
    for (int k = 0; k < len; k += stride) coarse.push_back(k);
    coarse.push_back(len);
    for (size_t c = 0; c + 1 < coarse.size(); ++c) {
        const int i = coarse[c], j = coarse[c + 1];
        Vec d = coords[j] - coords[i];
        const double nd = d.norm();
        bool ok = nd > 1e-12;
        for (int k : theta.face.dims())
            if (ok && d(k - 1) - d(k) < theta.margin * nd) ok = false;
        record_pair(r, i, j, ok);
    }
    r.pass = r.membership_failures == 0 && r.max_distance <= delta;
    return r;
}

CheckReport check_path_morse(const OrbitPath& path, double l_const, double a_const, const ThetaSet& theta, double d,
                             const Tolerances& tol)
{
    if (!(l_const >= 1) || !(a_const >= 0) || !(d >= 0))
        throw Error(ErrorKind::InputError, "quasi-geodesic constants need L >= 1, A >= 0, D >= 0");
    const int n = path.size();
    CheckReport r;
    r.worst_margin = kInf;
    r.worst_spacing = kInf;
    auto fail = [&](int idx, const std::string& why) {
        if (r.pass) r.failure = why;
        r.pass = false;
        r.failing.push_back(idx);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            CartanVector a = cartan_vector(path.points[i], path.points[j]);
            const double dist = a.norm();
            const double gap = j - i;
            if (dist < gap / l_const - a_const - 1e-9 || dist > l_const * gap + a_const + 1e-9) {
                ++r.quasigeodesic_violations;
                fail(i, "pair " + std::to_string(i) + "," + std::to_string(j) + " breaks the quasi-geodesic bounds");
            }
            if (j - i < 2) continue;
            const double margin = dist > 1e-12 ? min_root_value(a, theta.face) : 0.0;
            r.worst_margin = std::min(r.worst_margin, margin);
            if (margin < theta.margin) {
                if (dist > 2 * d) {
                    ++r.diamond_violations;
                    fail(i, "pair " + std::to_string(i) + "," + std::to_string(j) + " is not Theta-regular");
                }
                continue;
            }
            for (int k = i + 1; k < j; ++k) {
                DiamondReport dr = in_diamond(path.points[i], path.points[j], path.points[k], theta, d, tol);
                r.worst_diamond_distance = std::max(r.worst_diamond_distance, dr.diamond_distance);
                if (dr.diamond_distance > d) {
                    ++r.diamond_violations;
                    fail(k, "point " + std::to_string(k) + " leaves the diamond of " + std::to_string(i) + "," +
                                std::to_string(j));
                }
            }
        }
    if (r.worst_margin == kInf) r.worst_margin = 0.0;
    r.worst_spacing = 0.0;
    return r;
}

// ---------------------------------------------------------------- certification

namespace {

struct Block {
    Word word;
    Mat left;   // sign-consistent singular frames of the block product
    Mat right;
    Vec log_sv;
    double cancellation = 0.0;
};

// Flips columns so that the prefix Plucker vectors agree in sign with the
// given top singular vectors of the exterior powers.
void fix_signs(Mat& frame, const std::vector<Vec>& tops)
{
    const int n = static_cast<int>(frame.rows());
    for (int k = 1; k < n; ++k)
        if (plucker(frame.leftCols(k)).dot(tops[k - 1]) < 0) frame.col(k - 1) *= -1.0;
    if (frame.determinant() < 0) frame.col(n - 1) *= -1.0;
}

Block make_block(const Alphabet& alphabet, const Word& w)
{
    CompoundWord cw = word_compounds(alphabet, w);
    GradedSvd sv = cw.svd();
    std::vector<Vec> lt, rt;
    for (const auto& p : cw.powers()) {
        TopTriple t = top_triple(p);
        lt.push_back(t.left);
        rt.push_back(t.right);
    }
    Block b{w, sv.left, sv.right, sv.log_sv, cw.cancellation()};
    fix_signs(b.left, lt);
    fix_signs(b.right, rt);
    return b;
}

struct Side {
    Vec direction;  // unit zeta-direction, flattened
    double margin = 0.0;
    double length = 0.0;
};

Side make_side(const GradedSvd& g, const FaceType& face, const ZetaType& zeta)
{
    Side s;
    CartanVector a = CartanVector::from_unsorted(2.0 * g.log_sv);
    s.length = a.norm();
    s.margin = s.length > 1e-12 ? min_root_value(a, face) : 0.0;
    Mat d = zeta_direction_of_frame(frame_for_face(g.left_spaces, face), zeta);
    s.direction = Eigen::Map<Vec>(d.data(), d.size());
    s.direction.normalize();
    return s;
}

struct MiddleResult {
    long long checked = 0;
    double worst_cos = -1.0;
    double worst_margin = kInf;
    double worst_spacing = kInf;
    bool failed = false;
    int fail_left = -1;
    int fail_right = -1;
    std::string reason;
};

double defect_of_cos(double c)
{
    c = std::clamp(c, -1.0, 1.0);
    return kPi - 2.0 * std::atan2(std::sqrt(1.0 - c), std::sqrt(1.0 + c));
}

MiddleResult check_middle(const std::vector<Block>& blocks, int mid, const FaceType& face,
                          const StraightnessParams& params, const ZetaType& zeta)
{
    const Block& b2 = blocks[mid];
    const int first = b2.word.front();
    const int last = b2.word.back();
    std::vector<int> lefts, rights;
    std::vector<Side> ls, rs;
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
        const Block& b = blocks[i];
        if (b.word.back() != inverse_letter(first)) {
            lefts.push_back(i);
            ls.push_back(make_side(graded_svd(-0.5 * b2.log_sv, b2.left.transpose() * b.right, -0.5 * b.log_sv),
                                   face, zeta));
        }
        if (b.word.front() != inverse_letter(last)) {
            rights.push_back(i);
            rs.push_back(make_side(graded_svd(0.5 * b2.log_sv, b2.right.transpose() * b.left, 0.5 * b.log_sv),
                                   face, zeta));
        }
    }
    // cos bound equivalent to defect <= eps
    const double cos_limit = std::cos(kPi - params.eps);
    MiddleResult r;
    auto side_reason = [&](const Side& s, const char* which) -> std::string {
        if (s.margin < params.theta.margin)
            return std::string(which) + " segment not Theta-regular (" + fmt(s.margin) + " < " +
                   fmt(params.theta.margin) + ")";
        if (s.length < params.spacing)
            return std::string(which) + " segment shorter than spacing (" + fmt(s.length) + " < " +
                   fmt(params.spacing) + ")";
        return {};
    };
    for (size_t i = 0; i < lefts.size(); ++i) {
        const Side& a = ls[i];
        const std::string left_bad = side_reason(a, "left");
        for (size_t j = 0; j < rights.size(); ++j) {
            const Side& c = rs[j];
            ++r.checked;
            const double cs = a.direction.dot(c.direction);
            r.worst_cos = std::max(r.worst_cos, cs);
            r.worst_margin = std::min({r.worst_margin, a.margin, c.margin});
            r.worst_spacing = std::min({r.worst_spacing, a.length, c.length});
            std::string why = left_bad;
            if (why.empty()) why = side_reason(c, "right");
            if (why.empty() && cs > cos_limit)
                why = "angle defect " + fmt(defect_of_cos(cs)) + " > " + fmt(params.eps);
            if (!why.empty()) {
                r.failed = true;
                r.fail_left = lefts[i];
                r.fail_right = rights[j];
                r.reason = why;
                return r;
            }
        }
    }
    return r;
}

int resolve_jobs(int jobs)
{
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

EntryReport certify_entry(const Alphabet& alphabet, const FaceType& face, const StraightnessParams& params,
                          const ZetaType& zeta, int jobs, double cancellation_limit)
{
    if (face.n() != alphabet.n()) throw Error(ErrorKind::FaceMismatch, "face dimension differs from alphabet");
    if (params.theta.face != face || zeta.face() != face)
        throw Error(ErrorKind::FaceMismatch, "parameters use a different face");
    EntryReport rep;
    std::vector<Block> blocks;
    for (const Word& w : reduced_words(alphabet.rank(), params.scale)) {
        blocks.push_back(make_block(alphabet, w));
        if (blocks.back().cancellation > std::log(cancellation_limit)) {
            rep.status = EntryStatus::Truncated;
            rep.witness = format_word(w);
            rep.reason = "block cancellation exceeds the numerical limit";
            return rep;
        }
    }
    const int count = static_cast<int>(blocks.size());
    std::vector<MiddleResult> results(count);
    std::vector<char> done(count, 0);
    std::atomic<int> next{0};
    std::atomic<int> first_fail{count};
    auto worker = [&]() {
        while (true) {
            const int m = next.fetch_add(1);
            if (m >= count) return;
            if (m > first_fail.load()) continue;
            results[m] = check_middle(blocks, m, face, params, zeta);
            done[m] = 1;
            if (results[m].failed) {
                int cur = first_fail.load();
                while (m < cur && !first_fail.compare_exchange_weak(cur, m)) {
                }
            }
        }
    };
    const int nj = std::min(resolve_jobs(jobs), count);
    if (nj <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nj; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    double worst_cos = -1.0;
    rep.worst_margin = kInf;
    rep.worst_spacing = kInf;
    rep.status = EntryStatus::Certified;
    for (int m = 0; m < count; ++m) {
        const MiddleResult& r = results[m];
        rep.words_checked += r.checked;
        worst_cos = std::max(worst_cos, r.worst_cos);
        rep.worst_margin = std::min(rep.worst_margin, r.worst_margin);
        rep.worst_spacing = std::min(rep.worst_spacing, r.worst_spacing);
        if (r.failed) {
            rep.status = EntryStatus::Failed;
            Word w = blocks[r.fail_left].word;
            w.insert(w.end(), blocks[m].word.begin(), blocks[m].word.end());
            w.insert(w.end(), blocks[r.fail_right].word.begin(), blocks[r.fail_right].word.end());
            rep.witness = format_word(w);
            rep.reason = r.reason;
            break;
        }
    }
    rep.worst_angle_defect = defect_of_cos(worst_cos);
    return rep;
}

CertifyResult certify_action(const Alphabet& alphabet, const FaceType& face,
                             const std::vector<StraightnessParams>& schedule, const CertifyOptions& opts)
{
    if (!face.iota_invariant()) throw Error(ErrorKind::NotIotaInvariant, "certification needs an iota-invariant face");
    if (schedule.empty()) throw Error(ErrorKind::InputError, "empty parameter schedule");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i].scale < schedule[i - 1].scale)
            throw Error(ErrorKind::InputError, "schedule scales must be non-decreasing");
    const ZetaType zeta = opts.zeta ? *opts.zeta : canonical_zeta(face);
    CertifyResult res;
    for (size_t i = 0; i < schedule.size(); ++i) {
        const StraightnessParams& p = schedule[i];
        if (opts.scale_cap > 0 && p.scale > opts.scale_cap) {
            EntryReport e;
            e.index = static_cast<int>(i) + 1;
            e.status = EntryStatus::SkippedScaleCap;
            e.reason = "scale " + std::to_string(p.scale) + " above cap " + std::to_string(opts.scale_cap);
            res.entries.push_back(e);
            continue;
        }
        EntryReport e = certify_entry(alphabet, face, p, zeta, opts.jobs, opts.cancellation_limit);
        e.index = static_cast<int>(i) + 1;
        res.entries.push_back(e);
        if (e.status == EntryStatus::Certified) {
            res.certified = true;
            res.certificate = Certificate{p, e.index, e.words_checked, e.worst_angle_defect, e.worst_margin,
                                          e.worst_spacing};
            return res;
        }
        res.witness = e.witness;
        res.witness_reason = e.reason;
        if (e.status == EntryStatus::Truncated) break;
    }
    return res;
}

CertifyResult certify_action(const std::vector<GroupElement>& generators, int rank, const FaceType& face,
                             const std::vector<StraightnessParams>& schedule, const Point& basepoint,
                             const CertifyOptions& opts)
{
    if (static_cast<int>(generators.size()) != rank || rank < 1)
        throw Error(ErrorKind::InputError, "expected " + std::to_string(rank) + " generators");
    for (const auto& g : generators)
        if (g.dim() != face.n()) throw Error(ErrorKind::FaceMismatch, "generator dimension differs from face");
    return certify_action(Alphabet::of(generators, basepoint), face, schedule, opts);
}

}  // namespace morsecert

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "morsecert/commands.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

using namespace morsecert;
using namespace testing;

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string data(const std::string& name) { return std::string(MORSECERT_DATA_DIR) + "/" + name + ".json"; }

std::string fmt(double x, int digits = 4)
{
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

// ---------------------------------------------------------------------------

Outcome symmetry()
{
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Point p = random_point(rng, 3, 1.0);
        Point q = random_point(rng, 3, 1.0);
        const Vec d = cartan_vector(p, q).entries() - iota(cartan_vector(q, p)).entries();
        worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-8, "max deviation " + fmt(worst) + " over 1000 pairs"};
}

Outcome expansion_correctness()
{
    std::mt19937_64 rng(102);
    double worst = 0;
    int samples = 0;
    for (int n : {2, 3}) {
        const FaceType face = FaceType::full(n);
        for (int i = 0; i < 100; ++i, ++samples) {
            const Mat g = random_sl(rng, n, 0.7);
            const Flag tau = random_flag(rng, face);
            const double exact = expansion_factor(GroupElement::trusted(g), tau);
            const double fd = smin(fd_differential(g, tau.frame(), face));
            worst = std::max(worst, std::abs(fd - exact) / exact);
        }
    }
    double closed = 0;
    for (int i = 1; i <= 20; ++i) {
        const double t = 0.1 * i;
        GroupElement g = GroupElement::trusted(diag({std::exp(t), std::exp(-t)}));
        const double e = expansion_factor(g.inverse(), Flag::standard(FaceType::full(2)));
        closed = std::max(closed, std::abs(e / std::exp(2 * t) - 1.0));
    }
    return {worst <= 1e-3 && closed <= 1e-6, "finite-difference relative error " + fmt(worst) + " over " +
                                                  std::to_string(samples) + " samples, closed form error " +
                                                  fmt(closed)};
}

std::vector<double> ranks(const std::vector<double>& v)
{
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < idx.size();) {
        size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        for (size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j);
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b)
{
    const std::vector<double> ra = ranks(a), rb = ranks(b);
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
    double sab = 0, saa = 0, sbb = 0;
    for (size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

Outcome transvection_shape()
{
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    const FaceType face = FaceType::full(3);
    std::vector<double> contraction, boundary;
    int together = 0, zeros = 0;
    auto quantize = [](double v) { return std::round(v * 1e9) / 1e9; };
    for (int i = 0; i < 100; ++i) {
        Vec a(3);
        a << u(rng), 0.0, -u(rng);
        if (i % 10 == 0) a(1) = a(0);  // singular: one gap closes
        const Point x = random_point(rng, 3, 0.5);
        const Mat k = random_rotation(rng, 3);
        const Mat h = sym_sqrt(x.mat()) * k;
        const Mat theta = h * Vec(a.array().exp()).asDiagonal() * h.inverse();
        const Flag repelling = Flag::from_basis(h.rowwise().reverse(), face);
        // differential at the attracting flag, in the metric at x
        const Mat local = k * Vec(a.array().exp()).asDiagonal() * k.transpose();
        const double norm = smax(flag_differential(local, k, face));
        const Point back = act(GroupElement::trusted(theta).inverse(), x);
        const BoundaryDistance bd = cone_boundary_distance(x, repelling, back);
        const double c = quantize(-std::log(norm)), b = quantize(bd.distance);
        contraction.push_back(c);
        boundary.push_back(b);
        if ((c == 0) == (b == 0)) ++together;
        if (c == 0) ++zeros;
    }
    const double rho = spearman(contraction, boundary);
    return {rho >= 1 - 1e-12 && together == 100 && zeros > 0,
            "Spearman " + fmt(rho, 15) + ", vanish together in " + std::to_string(together) + "/100 (" +
                std::to_string(zeros) + " singular)"};
}

// Attracting and repelling fixed points on the real line.
std::pair<double, double> endpoints(const Mat& g)
{
    Eigen::EigenSolver<Mat> es(g);
    int big = std::abs(es.eigenvalues()(0)) > std::abs(es.eigenvalues()(1)) ? 0 : 1;
    auto point = [&](int i) {
        const Eigen::Vector2cd v = es.eigenvectors().col(i);
        return (v(0) / v(1)).real();
    };
    return {point(big), point(1 - big)};
}

double cross_ratio_separation(const Mat& g, const Mat& h)
{
    const auto [ap, am] = endpoints(g);
    const auto [bp, bm] = endpoints(h);
    const double base = (ap - am) * (bp - bm);
    const double c1 = (ap - bp) * (am - bm) / base;
    const double c2 = (ap - bm) * (am - bp) / base;
    return std::min(std::abs(c1), std::abs(c2));
}

Mat hyperbolic(double attracting, double repelling, double t)
{
    Mat g(2, 2);
    g << attracting, repelling, 1.0, 1.0;
    const double d = g.determinant();
    if (d < 0) g.col(0) *= -1;
    g /= std::sqrt(std::abs(d));
    return g * diag({std::exp(t), std::exp(-t)}) * g.inverse();
}

Mat power(const Mat& m, int k)
{
    Mat r = Mat::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

Outcome rank_one()
{
    const FaceType face = FaceType::full(2);
    const auto params = default_schedule(face, 1).front();
    std::vector<std::pair<Mat, Mat>> pairs;
    RepresentationInput doc = load_representation_file(data("sl2_schottky"));
    pairs.push_back({doc.generators[0].mat(), doc.generators[1].mat()});
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> where(-4.0, 4.0), len(0.6, 1.5);
    while (pairs.size() < 6) {
        Mat g = hyperbolic(where(rng), where(rng), len(rng));
        Mat h = hyperbolic(where(rng), where(rng), len(rng));
        if (cross_ratio_separation(g, h) >= 2) pairs.push_back({g, h});
    }
    std::string detail;
    bool ok = true;
    for (const auto& [g, h] : pairs) {
        const double sep = cross_ratio_separation(g, h);
        PowerSearchResult r = power_search(GroupElement::trusted(g), GroupElement::trusted(h), Point::identity(2),
                                           params, canonical_zeta(face), 16);
        const bool disks = r.found && ping_pong_disks(power(g, r.m), power(h, r.n));
        ok = ok && sep >= 2 && r.found && disks;
        detail += "sep " + fmt(sep, 3) + (r.found ? " (" + std::to_string(r.m) + "," + std::to_string(r.n) + ")" : " none") +
                  (disks ? " ping-pong ok; " : " ping-pong FAILED; ");
    }
    RepresentationInput para = load_representation_file(data("parabolic_sl2"));
    CertifyResult pr = certify_action(para.generators, 1, face, default_schedule(face, 6), para.base());
    const bool para_ok = !pr.certified && pr.entries.size() == 6;
    ok = ok && para_ok;
    detail += std::string("parabolic ") + (para_ok ? "not certified through index 6" : "CERTIFIED");
    return {ok, detail};
}

struct Sl3Context {
    GroupElement alpha, beta;
    FaceType face = FaceType::full(3);
    StraightnessParams params;
    PowerSearchResult search;
    Alphabet alphabet;
};

const Sl3Context& sl3()
{
    static const Sl3Context ctx = [] {
        Sl3Context c;
        RepresentationInput doc = load_representation_file(data("sl3_schottky"));
        c.alpha = doc.generators[0];
        c.beta = doc.generators[1];
        c.params = default_schedule(c.face, 1).front();
        c.search = power_search(c.alpha, c.beta, Point::identity(3), c.params, canonical_zeta(c.face), 32);
        if (c.search.found)
            c.alphabet = Alphabet::powers({c.alpha, c.beta}, {c.search.m, c.search.n}, Point::identity(3));
        return c;
    }();
    return ctx;
}

Word seeded_word(std::mt19937_64& rng, int rank, int length)
{
    std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
    Word w;
    while (static_cast<int>(w.size()) < length) {
        const int l = pick(rng);
        if (!w.empty() && l == inverse_letter(w.back())) continue;
        w.push_back(l);
    }
    return w;
}

Outcome schottky_sl3()
{
    const Sl3Context& c = sl3();
    if (!c.search.found || !c.search.certificate) return {false, "power search found nothing: " + c.search.reason};
    const int m = c.search.m, n = c.search.n;
    const LimitSetSample s = limit_set_sample(c.alphabet, c.face, 8);
    const AntipodalityReport audit = antipodality_audit(c.alphabet, s.points, c.face);
    std::mt19937_64 rng(105);
    double worst_slope = 1e9;
    for (int r = 0; r < 3; ++r) {
        const ExpansionReport e = expansion_along_ray(c.alphabet, seeded_word(rng, 2, 20), c.face);
        worst_slope = std::min(worst_slope, e.slope);
    }
    const bool ok = std::max(m, n) <= 32 && audit.min_margin > 0 && !audit.offender && worst_slope >= 0.1;
    return {ok, "powers (" + std::to_string(m) + "," + std::to_string(n) + "), " + std::to_string(s.points.size()) +
                    " limit flags at length 8, audit margin " + fmt(audit.min_margin) + ", min slope " +
                    fmt(worst_slope)};
}

Outcome morse_fit()
{
    struct Group {
        Alphabet alphabet;
        ThetaSet theta;
        int scale;
    };
    std::vector<Group> groups;
    const Sl3Context& c = sl3();
    if (!c.search.found) return {false, "no certified SL(3) group"};
    groups.push_back({c.alphabet, c.params.theta, c.params.scale});
    {
        RepresentationInput doc = load_representation_file(data("sl2_schottky"));
        const FaceType face = FaceType::full(2);
        CertifyResult r = certify_action(doc.generators, 2, face, default_schedule(face, 2), doc.base());
        if (!r.certified) return {false, "SL(2) example not certified"};
        groups.push_back({Alphabet::of(doc.generators, doc.base()), r.certificate->params.theta, r.certificate->params.scale});
    }
    std::mt19937_64 rng(106);
    int paths = 0, failures = 0, membership = 0;
    std::string detail;
    for (const Group& g : groups) {
        std::vector<Word> words = reduced_words(2, 4);
        for (int i = 0; i < 40; ++i) words.push_back(seeded_word(rng, 2, 12));
        double observed = 0;
        for (const Word& w : words)
            observed = std::max(observed, morse_lemma_fit(g.alphabet, w, g.theta, kInfinity, g.scale).max_distance);
        const double delta = 2 * observed;
        for (const Word& w : words) {
            FitReport f = morse_lemma_fit(g.alphabet, w, g.theta, delta, g.scale);
            ++paths;
            if (!f.pass) ++failures;
            membership += f.membership_failures;
        }
        detail += "delta " + fmt(delta) + "; ";
    }
    return {failures == 0 && membership == 0, detail + std::to_string(paths) + " paths, " + std::to_string(failures) +
                                                   " fit failures, " + std::to_string(membership) +
                                                   " membership failures"};
}

Outcome cone_invariants()
{
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> len(0.3, 3.0);
    const std::vector<FaceType> faces{FaceType::full(3), FaceType(4, {2}), FaceType::full(4)};
    int nested_fail = 0, convex_fail = 0;
    for (int i = 0; i < 500; ++i) {
        const FaceType& face = faces[i % faces.size()];
        const int n = face.n();
        const ThetaSet nested(face, 0.2 - 1e-9), looser(face, 0.2 - 1e-3);
        const Point x = random_point(rng, n, 0.5);
        const Flag tau = random_flag(rng, face);
        const Point x1 = exp_at(x, star_direction(x, tau, random_type(rng, n, 0.25)), len(rng));
        const Point y = exp_at(x1, star_direction(x1, tau, random_type(rng, n, 0.25)), len(rng));
        if (!in_theta_cone(x, tau, y, nested).inside) ++nested_fail;

        const Point y1 = exp_at(x, star_direction(x, tau, random_type(rng, n, 0.25)), len(rng));
        const Point y2 = exp_at(x, star_direction(x, tau, random_type(rng, n, 0.25)), len(rng));
        for (double t : {0.25, 0.5, 0.75})
            if (!in_theta_cone(x, tau, geodesic_point(y1, y2, t), looser).inside) {
                ++convex_fail;
                break;
            }
    }
    return {nested_fail == 0 && convex_fail == 0, std::to_string(nested_fail) + " nested and " +
                                                      std::to_string(convex_fail) +
                                                      " convexity violations over 500 instances each"};
}

Outcome shadow_uniqueness()
{
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> gap(0.6, 1.2);
    const FaceType face = FaceType::full(3);
    int bad = 0;
    double worst_final = 0;
    for (int i = 0; i < 20; ++i) {
        Mat c = random_sl(rng, 3, 0.3) + Mat::Identity(3, 3);
        c /= std::cbrt(c.determinant());
        const double g1 = gap(rng), g2 = gap(rng);
        const double top = (2 * g1 + g2) / 3;
        const Mat gamma = c * diag({std::exp(top), std::exp(top - g1), std::exp(top - g1 - g2)}) * c.inverse();
        const Point p = random_point(rng, 3, 0.5);
        Mat gk = gamma * gamma;
        double prev = kInfinity, d = 0;
        for (int k = 3; k <= 10; ++k) {
            gk = gk * gamma;
            const GroupElement g = GroupElement::trusted(gk);
            d = flag_distance(group_shadow(g, Point::identity(3), face), group_shadow(g, p, face));
            if (d > prev + 1e-12) ++bad;
            prev = d;
        }
        worst_final = std::max(worst_final, d);
    }
    return {bad == 0 && worst_final <= 1e-3,
            std::to_string(bad) + " increases, worst final distance " + fmt(worst_final)};
}

Outcome perturbation()
{
    const Sl3Context& c = sl3();
    if (!c.search.found) return {false, "no certified SL(3) group"};
    std::mt19937_64 rng(109);
    auto perturb = [&](const GroupElement& g) {
        Mat x = random_matrix(rng, 3);
        x -= (x.trace() / 3) * Mat::Identity(3, 3);
        x /= x.norm();
        return GroupElement::trusted(g.mat() * Mat(1e-4 * x).exp());
    };
    const GroupElement a = perturb(c.alpha), b = perturb(c.beta);
    const Alphabet moved = Alphabet::powers({a, b}, {c.search.m, c.search.n}, Point::identity(3));
    const EntryReport e = certify_entry(moved, c.face, c.params, canonical_zeta(c.face), 1);
    const LimitSetSample s0 = limit_set_sample(c.alphabet, c.face, 6);
    const LimitSetSample s1 = limit_set_sample(moved, c.face, 6);
    auto directed = [](const LimitSetSample& from, const LimitSetSample& to) {
        double worst = 0;
        for (const LimitPoint& p : from.points) {
            double best = kInfinity;
            for (const LimitPoint& q : to.points) best = std::min(best, flag_distance(p.flag, q.flag));
            worst = std::max(worst, best);
        }
        return worst;
    };
    const double hausdorff = std::max(directed(s0, s1), directed(s1, s0));
    return {e.status == EntryStatus::Certified && hausdorff <= 1e-2,
            std::string("perturbed entry ") + to_string(e.status) + ", limit-set Hausdorff flag distance " +
                fmt(hausdorff)};
}

Outcome determinism()
{
    int identical = 0, total = 0;
    for (const char* name : {"transvection", "unipotent", "sl3_schottky", "sl2_schottky", "parabolic_sl2"}) {
        CertifyArgs one, four;
        four.jobs = 4;
        const CommandResult r1 = cmd_certify(data(name), one), r4 = cmd_certify(data(name), four);
        ++total;
        if (r1.exit_code == r4.exit_code && !r1.output.empty() && r1.output == r4.output) ++identical;
    }
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) + " reports byte-identical"};
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "distance symmetry", 5, symmetry},
        {2, "expansion factor", 30, expansion_correctness},
        {3, "transvection contraction vs cone boundary", 30, transvection_shape},
        {4, "rank-one ping-pong equivalence", 120, rank_one},
        {5, "SL(3) Schottky end to end", 600, schottky_sl3},
        {6, "Morse lemma fit", 120, morse_fit},
        {7, "nested cones and convexity", 60, cone_invariants},
        {8, "shadow uniqueness", 30, shadow_uniqueness},
        {9, "perturbation", 600, perturbation},
        {10, "determinism across jobs", 600, determinism},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs < c.limit_s;
        if (!pass) ++failed;
        std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.limit_s);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

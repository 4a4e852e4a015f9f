#include "morsecert/repio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace morsecert {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& msg)
{
    throw Error(ErrorKind::SchemaError, "field '" + field + "': " + msg);
}

int read_int(const json& doc, const std::string& field)
{
    if (!doc.contains(field)) schema(field, "missing");
    const json& v = doc.at(field);
    if (!v.is_number_integer()) schema(field, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) schema(field, "out of range");
    return static_cast<int>(x);
}

double read_number(const json& v, const std::string& field)
{
    if (!v.is_number()) schema(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) schema(field, "not finite");
    return x;
}

json matrix_rows(const Mat& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

RepresentationInput load_representation(const std::string& bytes)
{
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "document must be a JSON object");
    static const std::set<std::string> known{"n", "rank", "generators", "face", "basepoint", "seed"};
    for (const auto& item : doc.items())
        if (!known.count(item.key())) schema(item.key(), "unknown field");

    RepresentationInput rep;
    rep.n = read_int(doc, "n");
    if (rep.n < 2) schema("n", "must be at least 2");
    rep.rank = read_int(doc, "rank");
    if (rep.rank < 1) schema("rank", "must be at least 1");
    if (rep.rank > 26) schema("rank", "at most 26 generators are supported");

    if (!doc.contains("generators")) schema("generators", "missing");
    const json& gens = doc.at("generators");
    if (!gens.is_array()) schema("generators", "expected a list of matrices");
    if (static_cast<int>(gens.size()) != rep.rank)
        schema("generators", "expected " + std::to_string(rep.rank) + " matrices, got " + std::to_string(gens.size()));
    const int n = rep.n;
    for (int g = 0; g < rep.rank; ++g) {
        const std::string field = "generators[" + std::to_string(g) + "]";
        const json& flat = gens[g];
        if (!flat.is_array() || static_cast<int>(flat.size()) != n * n)
            schema(field, "expected " + std::to_string(n * n) + " numbers in row-major order");
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = read_number(flat[i * n + j], field);
        const double det = m.determinant();
        if (!(std::abs(det - 1.0) <= 1e-6 + 1e-12))
            schema(field, "determinant " + format_double(det) + " is not within 1e-6 of 1");
        if (std::abs(det - 1.0) > 1e-12) {
            m /= std::pow(det, 1.0 / n);
            rep.notes.push_back(field + ": determinant " + format_double(det) + " renormalized by its real " +
                                std::to_string(n) + "-th root");
        }
        rep.generators.push_back(GroupElement::trusted(m));
    }

    if (!doc.contains("face")) schema("face", "missing");
    const json& face = doc.at("face");
    if (!face.is_array()) schema("face", "expected a sorted list of integers");
    std::vector<int> dims;
    for (const json& d : face) {
        if (!d.is_number_integer()) schema("face", "expected a sorted list of integers");
        dims.push_back(d.get<int>());
    }
    try {
        rep.face = FaceType(n, dims);
    } catch (const Error& e) {
        schema("face", e.what());
    }

    if (doc.contains("basepoint")) {
        const json& rows = doc.at("basepoint");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n) schema("basepoint", "expected n rows");
        Mat p(n, n);
        for (int i = 0; i < n; ++i) {
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) schema("basepoint", "expected n columns");
            for (int j = 0; j < n; ++j) p(i, j) = read_number(rows[i][j], "basepoint");
        }
        try {
            rep.basepoint = Point(p, Tolerances{.linalg = 1e-6});
        } catch (const Error& e) {
            schema("basepoint", e.what());
        }
    }

    if (!doc.contains("seed")) schema("seed", "missing");
    if (!doc.at("seed").is_number_integer()) schema("seed", "expected an integer");
    rep.seed = doc.at("seed").get<std::int64_t>();
    return rep;
}

RepresentationInput load_representation_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_representation(ss.str());
}

std::string save_representation(const RepresentationInput& rep)
{
    json doc;
    doc["n"] = rep.n;
    doc["rank"] = rep.rank;
    json gens = json::array();
    for (const GroupElement& g : rep.generators) {
        json flat = json::array();
        for (int i = 0; i < rep.n; ++i)
            for (int j = 0; j < rep.n; ++j) flat.push_back(g.mat()(i, j));
        gens.push_back(flat);
    }
    doc["generators"] = gens;
    doc["face"] = rep.face.dims();
    if (rep.basepoint) doc["basepoint"] = matrix_rows(rep.basepoint->mat());
    doc["seed"] = rep.seed;
    return save_report(doc);
}

OrbitPath orbit_path(const RepresentationInput& rep, const Word& word, const Tolerances& tol)
{
    if (!is_reduced(word)) throw Error(ErrorKind::InputError, "orbit path needs a reduced word");
    const Point base = rep.base();
    std::vector<GroupElement> letters;
    for (const GroupElement& g : rep.generators) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    std::vector<Point> pts{base};
    Mat prefix = Mat::Identity(rep.n, rep.n);
    for (size_t j = 0; j < word.size(); ++j) {
        if (word[j] < 0 || word[j] >= static_cast<int>(letters.size()))
            throw Error(ErrorKind::InputError, "letter outside the alphabet");
        prefix = prefix * letters[word[j]].mat();
        if (!(matrix_condition(prefix) <= tol.blowup))
            throw Error(ErrorKind::NumericalBlowup,
                        "prefix of length " + std::to_string(j + 1) + " exceeds the condition-number limit");
        pts.push_back(Point::trusted(prefix * base.mat() * prefix.transpose()));
    }
    return OrbitPath(std::move(pts), word);
}

json to_json(const StraightnessParams& p)
{
    return {{"theta_margin", p.theta.margin}, {"eps", p.eps}, {"spacing", p.spacing}, {"scale", p.scale}};
}

json to_json(const Certificate& c)
{
    return {{"schedule_index", c.schedule_index},
            {"params", to_json(c.params)},
            {"words_checked", c.words_checked},
            {"worst_angle_defect", c.worst_angle_defect},
            {"worst_margin", finite_or_null(c.worst_margin)},
            {"worst_spacing", finite_or_null(c.worst_spacing)}};
}

json to_json(const EntryReport& e)
{
    json j{{"index", e.index},
           {"status", to_string(e.status)},
           {"words_checked", e.words_checked},
           {"worst_angle_defect", finite_or_null(e.worst_angle_defect)},
           {"worst_margin", finite_or_null(e.worst_margin)},
           {"worst_spacing", finite_or_null(e.worst_spacing)}};
    if (!e.witness.empty()) j["witness"] = e.witness;
    if (!e.reason.empty()) j["reason"] = e.reason;
    return j;
}

json to_json(const CheckReport& r)
{
    json j{{"pass", r.pass},
           {"worst_angle_defect", finite_or_null(r.worst_angle_defect)},
           {"worst_margin", finite_or_null(r.worst_margin)},
           {"worst_spacing", finite_or_null(r.worst_spacing)},
           {"worst_diamond_distance", finite_or_null(r.worst_diamond_distance)},
           {"diamond_violations", r.diamond_violations},
           {"quasigeodesic_violations", r.quasigeodesic_violations},
           {"failing", r.failing}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

json to_json(const FitReport& r)
{
    json d = json::array();
    for (double x : r.distances) d.push_back(finite_or_null(x));
    return {{"pass", r.pass},
            {"max_distance", finite_or_null(r.max_distance)},
            {"distances", d},
            {"membership_failures", r.membership_failures}};
}

json to_json(const GenericityReport& g)
{
    json pairs = json::array();
    for (size_t p = 0; p < g.pairs.size(); ++p)
        pairs.push_back({{"first", g.labels[g.pairs[p].first]},
                         {"second", g.labels[g.pairs[p].second]},
                         {"margin", g.margins[p]}});
    return {{"pass", g.pass}, {"min_margin", g.min_margin}, {"power", g.power}, {"pairs", pairs}};
}

json to_json(const PowerSearchResult& r)
{
    json attempts = json::array();
    for (const PowerAttempt& a : r.attempts) attempts.push_back({{"m", a.m}, {"n", a.n}, {"entry", to_json(a.entry)}});
    json j{{"found", r.found}, {"genericity", to_json(r.genericity)}, {"attempts", attempts}};
    if (r.found) {
        j["m"] = r.m;
        j["n"] = r.n;
    }
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

json input_summary(const RepresentationInput& rep)
{
    json j{{"n", rep.n}, {"rank", rep.rank}, {"face", rep.face.dims()}, {"seed", rep.seed}, {"notes", rep.notes}};
    j["basepoint"] = rep.basepoint ? matrix_rows(rep.basepoint->mat()) : json(nullptr);
    return j;
}

std::string save_report(const json& report) { return report.dump(2) + "\n"; }

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string limit_set_csv(const LimitSetSample& sample, const FaceType& face)
{
    const int n = face.n();
    std::ostringstream out;
    out << "word";
    for (size_t s = 0; s < face.dims().size(); ++s) {
        out << ",k_" << s + 1;
        for (int e = 0; e < n * face.dims()[s]; ++e) out << ",basis_" << s + 1 << "_" << e;
    }
    out << ",margin\n";
    for (const LimitPoint& p : sample.points) {
        out << format_word(p.word);
        for (int k : face.dims()) {
            out << "," << k;
            const Mat b = p.flag.subspace(k);
            for (int c = 0; c < k; ++c)
                for (int r = 0; r < n; ++r) out << "," << format_double(b(r, c));
        }
        out << "," << format_double(p.margin) << "\n";
    }
    return out.str();
}

std::string expansion_csv(const ExpansionReport& report)
{
    std::ostringstream out;
    out << "step,log_expansion\n";
    for (size_t i = 0; i < report.steps.size(); ++i)
        out << report.steps[i] << "," << format_double(report.log_expansion[i]) << "\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InputError, "cannot write " + path);
    out << content;
}

}  // namespace morsecert

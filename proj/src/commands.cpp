#include "morsecert/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace morsecert {

using nlohmann::json;

namespace {

json header(const char* command, const RepresentationInput& rep)
{
    return {{"tool", {{"name", "morsecert"}, {"version", kToolVersion}}}, {"command", command}, {"input", input_summary(rep)}};
}

bool is_input_error(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InputError:
    case ErrorKind::SchemaError:
    case ErrorKind::NotIotaInvariant:
    case ErrorKind::NotASubface:
    case ErrorKind::FaceMismatch:
        return true;
    default:
        return false;
    }
}

template <class F>
CommandResult guarded(const char* command, const std::string& rep_file, F&& run)
{
    RepresentationInput rep;
    try {
        rep = load_for_command(rep_file);
    } catch (const Error& e) {
        return {1, std::string("input error: ") + e.what() + "\n", ""};
    }
    try {
        return run(rep);
    } catch (const Error& e) {
        if (is_input_error(e.kind())) return {1, std::string("input error: ") + e.what() + "\n", ""};
        json doc = header(command, rep);
        doc["outcome"] = "error";
        doc["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        return {2, std::string("numerical failure: ") + e.what() + "\n", save_report(doc)};
    }
}

}  // namespace

RepresentationInput load_for_command(const std::string& path)
{
    RepresentationInput rep = load_representation_file(path);
    if (const char* s = std::getenv("MORSECERT_SEED")) {
        char* end = nullptr;
        const long long v = std::strtoll(s, &end, 10);
        if (end == s || *end != '\0') throw Error(ErrorKind::InputError, "MORSECERT_SEED is not an integer");
        rep.seed = v;
    }
    return rep;
}

CommandResult run_certify(const RepresentationInput& rep, const CertifyArgs& args)
{
    if (args.schedule_max < 1) throw Error(ErrorKind::InputError, "--schedule-max must be at least 1");
    if (args.scale_cap < 0) throw Error(ErrorKind::InputError, "--scale-cap must be non-negative");
    if (args.jobs < 1) throw Error(ErrorKind::InputError, "--jobs must be at least 1");
    const FaceType face = args.face ? FaceType(rep.n, *args.face) : rep.face;
    const auto schedule = default_schedule(face, args.schedule_max);
    CertifyOptions opts;
    opts.jobs = args.jobs;
    opts.scale_cap = args.scale_cap;
    const CertifyResult res = certify_action(rep.generators, rep.rank, face, schedule, rep.base(), opts);

    json doc = header("certify", rep);
    doc["face"] = face.dims();
    doc["budget"] = {{"schedule_max", args.schedule_max}, {"scale_cap", args.scale_cap}};
    json sched = json::array();
    for (const auto& p : schedule) sched.push_back(to_json(p));
    doc["schedule"] = sched;
    json entries = json::array();
    for (const auto& e : res.entries) entries.push_back(to_json(e));
    doc["entries"] = entries;

    std::ostringstream text;
    std::string outcome;
    if (res.certified) {
        outcome = "certified";
        doc["certificate"] = to_json(*res.certificate);
        text << "certified at schedule index " << res.certificate->schedule_index << " ("
             << res.certificate->words_checked << " words, worst angle defect "
             << format_double(res.certificate->worst_angle_defect) << ")\n";
    } else {
        const bool truncated = !res.entries.empty() && res.entries.back().status == EntryStatus::Truncated;
        outcome = truncated ? "truncated" : "budget-exhausted";
        doc["certificate"] = nullptr;
        if (truncated)
            text << "not certified: numerical limit reached at schedule index " << res.entries.back().index << "\n";
        else
            text << "not certified: budget exhausted after schedule index " << args.schedule_max << "\n";
        if (!res.witness.empty()) text << "witness word " << res.witness << ": " << res.witness_reason << "\n";
    }
    doc["outcome"] = outcome;
    doc["witness"] =
        res.witness.empty() ? json(nullptr) : json{{"word", res.witness}, {"reason", res.witness_reason}};
    for (const auto& note : rep.notes) text << "note: " << note << "\n";
    return {res.certified ? 0 : 2, text.str(), save_report(doc)};
}

CommandResult run_schottky_search(const RepresentationInput& rep, const SchottkyArgs& args)
{
    if (rep.rank != 2) throw Error(ErrorKind::InputError, "schottky-search needs exactly 2 generators");
    if (args.max_power < 1) throw Error(ErrorKind::InputError, "--max-power must be at least 1");
    if (args.schedule_index < 1) throw Error(ErrorKind::InputError, "--schedule-index must be at least 1");
    if (!rep.face.iota_invariant()) throw Error(ErrorKind::NotIotaInvariant, "face must be iota-invariant");
    const auto params = default_schedule(rep.face, args.schedule_index).back();
    PowerSearchResult res;
    std::string failure;
    try {
        res = power_search(rep.generators[0], rep.generators[1], rep.base(), params, canonical_zeta(rep.face),
                           args.max_power, args.jobs);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PowerStabilizationFailed) throw;
        failure = e.what();
    }
    json doc = header("schottky-search", rep);
    doc["budget"] = {{"max_power", args.max_power}, {"schedule_index", args.schedule_index}};
    doc["params"] = to_json(params);
    std::ostringstream text;
    if (!failure.empty()) {
        doc["result"] = {{"found", false}, {"reason", failure}};
        text << "not found: " << failure << "\n";
        return {2, text.str(), save_report(doc)};
    }
    doc["result"] = to_json(res);
    if (res.found)
        text << "found powers (" << res.m << ", " << res.n << ") after " << res.attempts.size()
             << " attempts, worst angle defect " << format_double(res.certificate->worst_angle_defect) << "\n";
    else
        text << "not found within max power " << args.max_power << ": " << res.reason << "\n";
    return {res.found ? 0 : 2, text.str(), save_report(doc)};
}

CommandResult run_limitset(const RepresentationInput& rep, const LimitSetArgs& args)
{
    if (args.length < 1) throw Error(ErrorKind::InputError, "--length must be at least 1");
    const Alphabet alphabet = Alphabet::of(rep.generators, rep.base());
    const LimitSetSample s = limit_set_sample(alphabet, rep.face, args.length, args.jobs);
    const AntipodalityReport audit = antipodality_audit(alphabet, s.points, rep.face);
    std::ostringstream text;
    text << s.points.size() << " limit flags from " << s.sampled << " words of length " << args.length;
    if (!s.skipped.empty()) text << " (" << s.skipped.size() << " skipped below the margin floor)";
    text << "\nantipodality audit: min margin " << format_double(audit.min_margin);
    if (audit.offender)
        text << ", offending pair " << format_word(s.points[audit.offender->first].word) << " / "
             << format_word(s.points[audit.offender->second].word);
    text << "\n";
    return {audit.offender ? 2 : 0, text.str(), limit_set_csv(s, rep.face)};
}

CommandResult run_expansion_report(const RepresentationInput& rep, const ExpansionArgs& args)
{
    if (args.steps < 1) throw Error(ErrorKind::InputError, "--steps must be at least 1");
    const Word period = parse_word(args.ray, rep.rank);
    if (period.empty()) throw Error(ErrorKind::InputError, "--ray must be non-empty");
    Word ray;
    for (int i = 0; i < args.steps; ++i) ray.push_back(period[i % period.size()]);
    if (!is_reduced(ray)) throw Error(ErrorKind::InputError, "ray " + format_word(ray) + " is not reduced");
    const Alphabet alphabet = Alphabet::of(rep.generators, rep.base());
    const ExpansionReport r = expansion_along_ray(alphabet, ray, rep.face);
    std::ostringstream text;
    text << "ray " << format_word(ray) << ": fitted slope " << format_double(r.slope) << ", intercept "
         << format_double(r.intercept) << (r.monotone ? "" : ", not monotone") << "\n";
    return {0, text.str(), expansion_csv(r)};
}

CommandResult run_check_path(const RepresentationInput& rep, const CheckPathArgs& args)
{
    const Word w = parse_word(args.word, rep.rank);
    const OrbitPath path = orbit_path(rep, w);
    double l_const = 1.0;
    if (args.l_const) {
        l_const = *args.l_const;
    } else {
        for (int i = 0; i + 1 < path.size(); ++i) {
            const double d = riemannian_distance(path.points[i], path.points[i + 1]);
            l_const = std::max({l_const, d, 1.0 / d});
        }
    }
    const ThetaSet theta(rep.face, args.theta_margin);
    const CheckReport r = check_path_morse(path, l_const, args.a_const, theta, args.d);
    json doc = header("check-path", rep);
    doc["word"] = format_word(w);
    doc["constants"] = {{"L", l_const}, {"A", args.a_const}, {"D", args.d}, {"theta_margin", args.theta_margin}};
    doc["report"] = to_json(r);
    std::ostringstream text;
    text << "path " << (w.empty() ? "(empty)" : format_word(w)) << " with L = " << format_double(l_const)
         << ": " << (r.pass ? "pass" : "fail: " + r.failure) << "\n";
    return {r.pass ? 0 : 2, text.str(), save_report(doc)};
}

CommandResult cmd_certify(const std::string& rep_file, const CertifyArgs& args)
{
    return guarded("certify", rep_file, [&](const RepresentationInput& r) { return run_certify(r, args); });
}

CommandResult cmd_schottky_search(const std::string& rep_file, const SchottkyArgs& args)
{
    return guarded("schottky-search", rep_file,
                   [&](const RepresentationInput& r) { return run_schottky_search(r, args); });
}

CommandResult cmd_limitset(const std::string& rep_file, const LimitSetArgs& args)
{
    return guarded("limitset", rep_file, [&](const RepresentationInput& r) { return run_limitset(r, args); });
}

CommandResult cmd_expansion_report(const std::string& rep_file, const ExpansionArgs& args)
{
    return guarded("expansion-report", rep_file,
                   [&](const RepresentationInput& r) { return run_expansion_report(r, args); });
}

CommandResult cmd_check_path(const std::string& rep_file, const CheckPathArgs& args)
{
    return guarded("check-path", rep_file, [&](const RepresentationInput& r) { return run_check_path(r, args); });
}

}  // namespace morsecert

#include "morsecert/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace morsecert;

namespace {

std::vector<int> parse_face(const std::string& s)
{
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            dims.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InputError, "bad --face entry '" + item + "'");
        }
    }
    return dims;
}

int finish(const CommandResult& r, const std::string& out)
{
    (r.exit_code == 1 ? std::cerr : std::cout) << r.summary;
    if (!out.empty() && !r.output.empty()) {
        try {
            write_file(out, r.output);
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return 1;
        }
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certify Morse (Anosov) actions of free groups on SL(n,R) symmetric spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string rep_file, out, face;

    CertifyArgs ca;
    auto* certify = app.add_subcommand("certify", "Run the local-to-global certification schedule");
    certify->add_option("rep-file", rep_file, "Representation document")->required();
    certify->add_option("--face", face, "Face as comma-separated dimensions, overriding the document");
    certify->add_option("--schedule-max", ca.schedule_max, "Number of schedule entries to try")->capture_default_str();
    certify->add_option("--scale-cap", ca.scale_cap, "Skip entries with a larger scale (0 = no cap)")
        ->capture_default_str();
    certify->add_option("--jobs", ca.jobs, "Worker threads")->capture_default_str();
    certify->add_option("--out", out, "Report JSON path");

    SchottkyArgs sa;
    auto* schottky = app.add_subcommand("schottky-search", "Search powers (m, n) making <a^m, b^n> certifiable");
    schottky->add_option("rep-file", rep_file, "Representation document with 2 generators")->required();
    schottky->add_option("--max-power", sa.max_power, "Largest power tried")->capture_default_str();
    schottky->add_option("--schedule-index", sa.schedule_index, "Schedule entry used for each attempt")
        ->capture_default_str();
    schottky->add_option("--jobs", sa.jobs, "Worker threads")->capture_default_str();
    schottky->add_option("--out", out, "Report JSON path");

    LimitSetArgs la;
    auto* limitset = app.add_subcommand("limitset", "Sample the flag limit set and audit antipodality");
    limitset->add_option("rep-file", rep_file, "Representation document")->required();
    limitset->add_option("--length", la.length, "Word length")->capture_default_str();
    limitset->add_option("--jobs", la.jobs, "Worker threads")->capture_default_str();
    limitset->add_option("--out", out, "Samples CSV path");

    ExpansionArgs ea;
    auto* expansion = app.add_subcommand("expansion-report", "Expansion factors along a periodic ray");
    expansion->add_option("rep-file", rep_file, "Representation document")->required();
    expansion->add_option("--ray", ea.ray, "Period of the ray, e.g. aB")->required();
    expansion->add_option("--steps", ea.steps, "Ray length")->capture_default_str();
    expansion->add_option("--out", out, "Series CSV path");

    CheckPathArgs pa;
    double l_const = 0;
    auto* check = app.add_subcommand("check-path", "Check that an orbit path is a Morse quasi-geodesic");
    check->add_option("rep-file", rep_file, "Representation document")->required();
    check->add_option("--word", pa.word, "Reduced word")->required();
    check->add_option("--theta-margin", pa.theta_margin, "Regularity margin")->capture_default_str();
    check->add_option("--D", pa.d, "Diamond closeness")->capture_default_str();
    auto* l_opt = check->add_option("--L", l_const, "Quasi-geodesic multiplicative constant");
    check->add_option("--A", pa.a_const, "Quasi-geodesic additive constant")->capture_default_str();
    check->add_option("--out", out, "Report JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed()) {
            if (!face.empty()) ca.face = parse_face(face);
            return finish(cmd_certify(rep_file, ca), out);
        }
        if (schottky->parsed()) return finish(cmd_schottky_search(rep_file, sa), out);
        if (limitset->parsed()) return finish(cmd_limitset(rep_file, la), out);
        if (expansion->parsed()) return finish(cmd_expansion_report(rep_file, ea), out);
        if (check->parsed()) {
            if (l_opt->count() > 0) pa.l_const = l_const;
            return finish(cmd_check_path(rep_file, pa), out);
        }
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

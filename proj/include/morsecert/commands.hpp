#pragma once

#include "morsecert/repio.hpp"

#include <optional>
#include <string>

namespace morsecert {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 input error, 2 not certified / not found / failed check.
struct CommandResult {
    int exit_code = 0;
    std::string summary;  // human-readable, for standard output
    std::string output;   // JSON or CSV document, empty on input error
};

struct CertifyArgs {
    std::optional<std::vector<int>> face;
    int schedule_max = 3;
    int scale_cap = 4;
    int jobs = 1;
};

struct SchottkyArgs {
    int max_power = 32;
    int schedule_index = 1;
    int jobs = 1;
};

struct LimitSetArgs {
    int length = 4;
    int jobs = 1;
};

struct ExpansionArgs {
    std::string ray;  // repeated periodically
    int steps = 20;
};

struct CheckPathArgs {
    std::string word;
    double theta_margin = 0.1;
    double d = 1.0;
    std::optional<double> l_const;  // default: worst ratio of step length to 1
    double a_const = 0.0;
};

// Loads a representation file, applying MORSECERT_SEED when set.
RepresentationInput load_for_command(const std::string& path);

CommandResult run_certify(const RepresentationInput& rep, const CertifyArgs& args);
CommandResult run_schottky_search(const RepresentationInput& rep, const SchottkyArgs& args);
CommandResult run_limitset(const RepresentationInput& rep, const LimitSetArgs& args);
CommandResult run_expansion_report(const RepresentationInput& rep, const ExpansionArgs& args);
CommandResult run_check_path(const RepresentationInput& rep, const CheckPathArgs& args);

// File-based entry points; input errors become exit code 1.
CommandResult cmd_certify(const std::string& rep_file, const CertifyArgs& args);
CommandResult cmd_schottky_search(const std::string& rep_file, const SchottkyArgs& args);
CommandResult cmd_limitset(const std::string& rep_file, const LimitSetArgs& args);
CommandResult cmd_expansion_report(const std::string& rep_file, const ExpansionArgs& args);
CommandResult cmd_check_path(const std::string& rep_file, const CheckPathArgs& args);

}  // namespace morsecert

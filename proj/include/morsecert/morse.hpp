#pragma once

#include "morsecert/cones.hpp"
#include "morsecert/engine.hpp"

#include <optional>
#include <string>

namespace morsecert {

struct OrbitPath {
    std::vector<Point> points;
    Word labels;  // optional: letters that generated consecutive points

    OrbitPath() = default;
    // Validates a non-empty point list with distinct consecutive points.
    explicit OrbitPath(std::vector<Point> pts, Word lbl = {});
    int size() const { return static_cast<int>(points.size()); }
};

struct StraightnessParams {
    ThetaSet theta;
    double eps = 0.0;
    double spacing = 0.0;
    int scale = 1;

    StraightnessParams() = default;
    StraightnessParams(ThetaSet t, double e, double l, int s);
};

// Default schedule entry i (1-based): margin 1/(4i), eps 0.2/i, spacing 2i, scale 2i.
std::vector<StraightnessParams> default_schedule(const FaceType& face, int count);

struct CheckReport {
    bool pass = true;
    double worst_angle_defect = 0.0;
    double worst_margin = 0.0;
    double worst_spacing = 0.0;
    std::vector<double> angle_defects;  // per interior index (or per window)
    std::vector<double> margins;        // per segment
    std::vector<double> spacings;       // per segment
    std::vector<int> failing;
    std::string failure;

    // check_path_morse only
    double worst_diamond_distance = 0.0;
    int diamond_violations = 0;
    int quasigeodesic_violations = 0;
};

CheckReport is_straight(const OrbitPath& path, const ThetaSet& theta, double eps, double spacing, const ZetaType& zeta,
                        const Tolerances& tol = {});

// Midpoints of consecutive coarse points x_{o}, x_{o+s}, x_{o+2s}, ...
OrbitPath midpoint_triples(const OrbitPath& path, int s, int offset = 0);

// Every index quadruple with gaps exactly s (or all gaps >= s).
CheckReport quadruple_check(const OrbitPath& path, const StraightnessParams& params, const ZetaType& zeta,
                            bool all_gaps = false, const Tolerances& tol = {});

struct FitReport {
    bool pass = true;
    double max_distance = 0.0;
    std::vector<double> distances;
    std::vector<bool> memberships;  // per index: all nested-cone relations hold
    int membership_failures = 0;
    Flag tau_minus;
    Flag tau_plus;
};

FitReport morse_lemma_fit(const OrbitPath& path, const ThetaSet& theta, double delta, const Tolerances& tol = {});
// Same fit for the orbit path of a word, evaluated without forming the
// (possibly enormous) orbit points. Full flags only. Cone memberships are
// checked along the subsequence of every stride-th point (plus the last).
FitReport morse_lemma_fit(const Alphabet& alphabet, const Word& word, const ThetaSet& theta, double delta,
                          int stride = 1, const Tolerances& tol = {});

CheckReport check_path_morse(const OrbitPath& path, double l_const, double a_const, const ThetaSet& theta, double d,
                             const Tolerances& tol = {});

struct Certificate {
    StraightnessParams params;
    int schedule_index = 0;  // 1-based
    long long words_checked = 0;
    double worst_angle_defect = 0.0;
    double worst_margin = 0.0;
    double worst_spacing = 0.0;
};

enum class EntryStatus { Certified, Failed, Truncated, SkippedScaleCap };
const char* to_string(EntryStatus s);

struct EntryReport {
    int index = 0;
    EntryStatus status = EntryStatus::Failed;
    long long words_checked = 0;
    double worst_angle_defect = 0.0;
    double worst_margin = 0.0;
    double worst_spacing = 0.0;
    std::string witness;  // failing word
    std::string reason;
};

struct CertifyResult {
    bool certified = false;
    std::optional<Certificate> certificate;
    std::vector<EntryReport> entries;
    // Witness of the last failed entry.
    std::string witness;
    std::string witness_reason;
};

struct CertifyOptions {
    int jobs = 1;
    int scale_cap = 0;  // 0 = no cap
    std::optional<ZetaType> zeta;
    double cancellation_limit = 1e14;
};

// Checks one schedule entry over all reduced words of length 3 * scale.
EntryReport certify_entry(const Alphabet& alphabet, const FaceType& face, const StraightnessParams& params,
                          const ZetaType& zeta, int jobs, double cancellation_limit = 1e14);

CertifyResult certify_action(const Alphabet& alphabet, const FaceType& face,
                             const std::vector<StraightnessParams>& schedule, const CertifyOptions& opts = {});
CertifyResult certify_action(const std::vector<GroupElement>& generators, int rank, const FaceType& face,
                             const std::vector<StraightnessParams>& schedule, const Point& basepoint,
                             const CertifyOptions& opts = {});

}  // namespace morsecert

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniarg/bounds.hpp"
#include "uniarg/numrange.hpp"
#include "uniarg/sampling.hpp"
#include "uniarg/types.hpp"

namespace uniarg {

// Checks a campaign can fuzz per sampled trial.
enum class Check { T1, T2, L1, L2, reduction };

Check check_from_string(const std::string& s);
std::string to_string(Check check);

enum class TrialOutcome { pass, fail, vacuous, boundary, skipped };

std::string to_string(TrialOutcome outcome);

struct TrialCampaign {
    SampleSpec spec;  // template; its seed field is superseded by `seed`
    int trials = 0;
    std::vector<Check> checks;
    ToleranceProfile profile = ToleranceProfile::for_dim(2);
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = runtime default, 1 = serial reference path
    void validate() const;
};

struct CheckStats {
    long pass = 0;
    long fail = 0;
    long vacuous = 0;
    long boundary = 0;
    long skipped = 0;
    double worst_slack = 0.0;  // minimum over trials; +inf when never evaluated
    std::uint64_t worst_trial = 0;
    long total() const { return pass + fail + vacuous + boundary + skipped; }
};

struct CampaignSummary {
    TrialCampaign config;
    std::vector<CheckStats> stats;  // aligned with config.checks
    long consistent_reports = 0;
    long total_reports = 0;
    double equality_consistency = 1.0;
    double wall_time_seconds = 0.0;  // informational; kept out of canonical output
};

// Verbose single-trial record, as produced during a campaign and by replay.
struct ReplayRecord {
    Check check = Check::T1;
    std::uint64_t trial = 0;
    TrialOutcome outcome = TrialOutcome::pass;
    double slack = 0.0;  // worst slack of this trial, +inf when skipped
    std::vector<BoundReport> reports;     // T1 (desc, asc), T2 (single)
    std::vector<ProductPhase> phases;     // L1
    std::vector<MinMaxReport> minmax;     // L2, one per index j
    bool has_audit = false;
    ReductionAudit audit;                 // reduction
};

// Deterministic fuzzing loop: trials are sampled on independent streams and
// evaluated concurrently; aggregation is a sequential fold over trial index,
// so summaries are identical for any thread count.
CampaignSummary run_campaign(const TrialCampaign& c);

// Re-runs one check of one trial verbosely; bit-identical to the campaign.
ReplayRecord replay(const TrialCampaign& c, std::uint64_t trial, Check check);

}  // namespace uniarg

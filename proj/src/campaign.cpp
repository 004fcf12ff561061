#include "uniarg/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

namespace uniarg {

Check check_from_string(const std::string& s) {
    if (s == "T1") return Check::T1;
    if (s == "T2") return Check::T2;
    if (s == "L1") return Check::L1;
    if (s == "L2") return Check::L2;
    if (s == "reduction") return Check::reduction;
    throw ConfigInvalidError("unknown check: " + s);
}

std::string to_string(Check check) {
    switch (check) {
        case Check::T1: return "T1";
        case Check::T2: return "T2";
        case Check::L1: return "L1";
        case Check::L2: return "L2";
        case Check::reduction: return "reduction";
    }
    return "?";
}

std::string to_string(TrialOutcome outcome) {
    switch (outcome) {
        case TrialOutcome::pass: return "pass";
        case TrialOutcome::fail: return "fail";
        case TrialOutcome::vacuous: return "vacuous";
        case TrialOutcome::boundary: return "boundary";
        case TrialOutcome::skipped: return "skipped";
    }
    return "?";
}

void TrialCampaign::validate() const {
    spec.validate();
    profile.validate();
    if (trials < 1) throw ConfigInvalidError("campaign: trials must be >= 1");
    if (checks.empty()) throw ConfigInvalidError("campaign: checks must be nonempty");
    if (threads < 0) throw ConfigInvalidError("campaign: threads must be >= 0");
}

// ------------------------------ trial evaluation -----------------------------

namespace {

constexpr int kSubspaceTrialsPerIndex = 8;

bool product_phase_ready(const EigenSystem& sys_u, const EigenSystem& sys_v) {
    return sys_u.spread() < pi && sys_v.spread() < pi &&
           sys_u.desc_angle(0) + sys_v.desc_angle(0) < pi &&
           -sys_u.asc_angle(0) - sys_v.asc_angle(0) < pi;
}

ReplayRecord evaluate_check(const TrialCampaign& c, std::uint64_t trial, Check check,
                            const PairSystems& pair) {
    const ToleranceProfile& profile = c.profile;
    ReplayRecord rec;
    rec.check = check;
    rec.trial = trial;
    rec.outcome = TrialOutcome::skipped;
    rec.slack = std::numeric_limits<double>::infinity();

    switch (check) {
        case Check::T1: {
            auto [desc, asc] = theorem1_check(pair, profile);
            rec.reports = {desc, asc};
            if (!desc.preconditions_ok) break;
            rec.slack = std::min(desc.slack, asc.slack);
            if (rec.slack < -profile.tol_eq) rec.outcome = TrialOutcome::fail;
            else if (desc.boundary || asc.boundary) rec.outcome = TrialOutcome::boundary;
            else rec.outcome = TrialOutcome::pass;
            break;
        }
        case Check::T2: {
            BoundReport r = theorem2_check(pair, profile);
            rec.reports = {r};
            rec.slack = r.slack;
            if (r.slack < -profile.tol_eq) rec.outcome = TrialOutcome::fail;
            else if (r.boundary) rec.outcome = TrialOutcome::boundary;
            else if (r.vacuous) rec.outcome = TrialOutcome::vacuous;
            else rec.outcome = TrialOutcome::pass;
            break;
        }
        case Check::L1: {
            if (!product_phase_ready(pair.sys_u, pair.sys_v)) break;
            double worst = 0.0;
            try {
                for (int j = 1; j <= pair.sys_w.dim(); ++j) {
                    const int col = pair.sys_w.perm_desc[j - 1];
                    const Vector w = pair.sys_w.vectors.col(col);
                    ProductPhase p;
                    p.arg_u = quadratic_form_arg(pair.u, w, profile);
                    p.arg_v = quadratic_form_arg(pair.v, w, profile);
                    p.theta = pair.sys_w.angles[col];
                    p.degenerate = pair.sys_w.clusters[pair.sys_w.cluster_of[col]].size() > 1;
                    rec.phases.push_back(p);
                    worst = std::max(worst, std::abs(p.arg_u + p.arg_v - p.theta));
                }
            } catch (const OriginContactError&) {
                break;  // spread at the very edge of the precondition; skip
            }
            rec.slack = -worst;
            rec.outcome = worst > profile.tol_eq ? TrialOutcome::fail : TrialOutcome::pass;
            break;
        }
        case Check::L2: {
            if (!(pair.sys_u.spread() < pi)) break;
            const std::uint64_t trial_key = RngStream::derive(c.seed, trial);
            bool ok = true;
            double worst = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= pair.sys_u.dim(); ++j) {
                MinMaxReport r = minmax_verify(pair.u, j, kSubspaceTrialsPerIndex,
                                               RngStream::derive(trial_key, 7000 + j), profile);
                rec.minmax.push_back(r);
                ok = ok && r.all_ok();
                worst = std::min(worst, r.worst_margin);
            }
            rec.slack = worst;
            rec.outcome = ok ? TrialOutcome::pass : TrialOutcome::fail;
            break;
        }
        case Check::reduction: {
            const CaseLabel label = classify_case(pair.sys_u, pair.sys_v);
            if (label != CaseLabel::case_ii && label != CaseLabel::case_iii) break;
            rec.audit = reduction_audit(pair.u, pair.v, profile);
            rec.has_audit = true;
            rec.slack = std::min({rec.audit.link1_slack, rec.audit.link2_slack,
                                  rec.audit.direct_slack});
            rec.outcome = rec.audit.chain_ok ? TrialOutcome::pass : TrialOutcome::fail;
            break;
        }
    }
    return rec;
}

}  // namespace

CampaignSummary run_campaign(const TrialCampaign& c) {
    c.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SampleSpec spec = c.spec;
    spec.seed = c.seed;
    const int trials = c.trials;
    const int ncheck = static_cast<int>(c.checks.size());

    // Per-trial slots filled in any order; the fold below is sequential, so
    // the summary is independent of scheduling.
    std::vector<ReplayRecord> slots(static_cast<std::size_t>(trials) * ncheck);
    std::exception_ptr failure;
    auto body = [&](int t) {
        try {
            auto uv = sample_pair(spec, static_cast<std::uint64_t>(t));
            PairSystems pair = analyze_pair(uv.first, uv.second, c.profile);
            for (int k = 0; k < ncheck; ++k) {
                slots[static_cast<std::size_t>(t) * ncheck + k] =
                    evaluate_check(c, static_cast<std::uint64_t>(t), c.checks[k], pair);
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    };

    if (c.threads == 1) {
        for (int t = 0; t < trials; ++t) body(t);
    } else if (c.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(c.threads)
        for (int t = 0; t < trials; ++t) body(t);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) body(t);
    }
    if (failure) std::rethrow_exception(failure);

    CampaignSummary summary;
    summary.config = c;
    summary.stats.assign(ncheck, CheckStats{});
    for (auto& s : summary.stats) s.worst_slack = std::numeric_limits<double>::infinity();

    for (int t = 0; t < trials; ++t) {
        for (int k = 0; k < ncheck; ++k) {
            const ReplayRecord& rec = slots[static_cast<std::size_t>(t) * ncheck + k];
            CheckStats& s = summary.stats[k];
            switch (rec.outcome) {
                case TrialOutcome::pass: ++s.pass; break;
                case TrialOutcome::fail: ++s.fail; break;
                case TrialOutcome::vacuous: ++s.vacuous; break;
                case TrialOutcome::boundary: ++s.boundary; break;
                case TrialOutcome::skipped: ++s.skipped; break;
            }
            if (rec.slack < s.worst_slack) {
                s.worst_slack = rec.slack;
                s.worst_trial = rec.trial;
            }
            if (rec.outcome != TrialOutcome::skipped) {
                for (const BoundReport& r : rec.reports) {
                    ++summary.total_reports;
                    if (r.consistent) ++summary.consistent_reports;
                }
            }
        }
    }
    summary.equality_consistency =
        summary.total_reports > 0
            ? static_cast<double>(summary.consistent_reports) / summary.total_reports
            : 1.0;
    summary.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

ReplayRecord replay(const TrialCampaign& c, std::uint64_t trial, Check check) {
    c.validate();
    if (trial >= static_cast<std::uint64_t>(c.trials)) {
        throw ConfigInvalidError("replay: trial index outside the campaign");
    }
    SampleSpec spec = c.spec;
    spec.seed = c.seed;
    auto uv = sample_pair(spec, trial);
    PairSystems pair = analyze_pair(uv.first, uv.second, c.profile);
    return evaluate_check(c, trial, check, pair);
}

}  // namespace uniarg

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uniarg/bounds.hpp"
#include "uniarg/calculus.hpp"
#include "uniarg/campaign.hpp"
#include "uniarg/eig.hpp"
#include "uniarg/io.hpp"
#include "uniarg/numrange.hpp"
#include "uniarg/sampling.hpp"
#include "uniarg/types.hpp"

namespace {

using namespace uniarg;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitConfig = 4;

std::string csv_bool(bool b) { return b ? "true" : "false"; }

std::string csv_real(double x) { return std::isfinite(x) ? format_double(x) : std::string(); }

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigInvalidError("cannot write output file: " + out_path);
    out << text;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ------------------------------- CSV renderers -------------------------------

std::string csv_decompose(const EigenSystem& sys) {
    std::ostringstream os;
    os << "j,angle_desc,angle_asc,angle_absdesc\n";
    for (int j = 0; j < sys.dim(); ++j) {
        os << (j + 1) << ',' << format_double(sys.desc_angle(j)) << ','
           << format_double(sys.asc_angle(j)) << ',' << format_double(sys.absdesc_angle(j))
           << '\n';
    }
    return os.str();
}

std::string csv_reports(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << "theorem,lhs,rhs,slack,preconditions_ok,case,equality_detected,intersection_dim,"
          "equality_condition_predicted,boundary,consistent,vacuous\n";
    for (const BoundReport& r : reports) {
        os << to_string(r.theorem) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
           << ',' << format_double(r.slack) << ',' << csv_bool(r.preconditions_ok) << ','
           << to_string(r.case_label) << ',' << csv_bool(r.equality_detected) << ','
           << r.intersection_dim << ',' << csv_bool(r.equality_condition_predicted) << ','
           << csv_bool(r.boundary) << ',' << csv_bool(r.consistent) << ',' << csv_bool(r.vacuous)
           << '\n';
    }
    return os.str();
}

std::string csv_minmax(const std::vector<MinMaxReport>& reports) {
    std::ostringstream os;
    os << "j,trials,theta,extremizer_max_arg,extremizer_ok,sampled_ok,worst_margin,worst_trial,"
          "all_ok\n";
    for (const MinMaxReport& r : reports) {
        os << r.j << ',' << r.trials << ',' << format_double(r.theta) << ','
           << format_double(r.extremizer_max_arg) << ',' << csv_bool(r.extremizer_ok) << ','
           << r.sampled_ok << ',' << csv_real(r.worst_margin) << ',' << r.worst_trial << ','
           << csv_bool(r.all_ok()) << '\n';
    }
    return os.str();
}

std::string csv_phases(const std::vector<ProductPhase>& phases) {
    std::ostringstream os;
    os << "j,arg_u,arg_v,theta,residual,degenerate\n";
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const ProductPhase& p = phases[j];
        os << (j + 1) << ',' << format_double(p.arg_u) << ',' << format_double(p.arg_v) << ','
           << format_double(p.theta) << ',' << format_double(p.arg_u + p.arg_v - p.theta) << ','
           << csv_bool(p.degenerate) << '\n';
    }
    return os.str();
}

std::string csv_audit(const ReductionAudit& a) {
    std::ostringstream os;
    os << "case,a,lo,hi,link1_case,link2_case,link1_slack,link2_slack,direct_slack,chain_ok\n";
    os << to_string(a.input_case) << ',' << format_double(a.a) << ',' << format_double(a.lo) << ','
       << format_double(a.hi) << ',' << to_string(a.link1_case) << ',' << to_string(a.link2_case)
       << ',' << format_double(a.link1_slack) << ',' << format_double(a.link2_slack) << ','
       << format_double(a.direct_slack) << ',' << csv_bool(a.chain_ok) << '\n';
    return os.str();
}

std::string csv_campaign(const CampaignSummary& summary) {
    std::ostringstream os;
    os << "check,pass,fail,vacuous,boundary,skipped,worst_slack,worst_trial\n";
    for (std::size_t k = 0; k < summary.stats.size(); ++k) {
        const CheckStats& s = summary.stats[k];
        os << to_string(summary.config.checks[k]) << ',' << s.pass << ',' << s.fail << ','
           << s.vacuous << ',' << s.boundary << ',' << s.skipped << ',' << csv_real(s.worst_slack)
           << ',' << s.worst_trial << '\n';
    }
    return os.str();
}

std::string csv_matrix(const Matrix& m) {
    std::ostringstream os;
    os << "i,j,re,im\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << i << ',' << j << ',' << format_double(m(i, j).real()) << ','
               << format_double(m(i, j).imag()) << '\n';
        }
    }
    return os.str();
}

std::string csv_replay(const ReplayRecord& rec) {
    if (!rec.reports.empty()) return csv_reports(rec.reports);
    if (!rec.phases.empty()) return csv_phases(rec.phases);
    if (!rec.minmax.empty()) return csv_minmax(rec.minmax);
    if (rec.has_audit) return csv_audit(rec.audit);
    std::ostringstream os;
    os << "check,trial,outcome,slack\n"
       << to_string(rec.check) << ',' << rec.trial << ',' << to_string(rec.outcome) << ','
       << csv_real(rec.slack) << '\n';
    return os.str();
}

// --------------------------------- plumbing ----------------------------------

ToleranceProfile resolve_profile(int n, const std::string& profile_path) {
    ToleranceProfile profile = ToleranceProfile::for_dim(n);
    if (!profile_path.empty()) profile = load_profile_file(profile_path, profile);
    return profile;
}

UnitaryMatrix load_unitary(const std::string& path, const ToleranceProfile& profile) {
    return make_unitary(load_matrix_file(path), profile);
}

std::string output_stem(const std::string& out_path) {
    std::string stem = out_path.empty() ? "sample" : out_path;
    const std::string suffix = ".json";
    if (stem.size() > suffix.size() && stem.substr(stem.size() - suffix.size()) == suffix) {
        stem.resize(stem.size() - suffix.size());
    }
    return stem;
}

struct CampaignFlags {
    int n = 2;
    std::string kind = "haar";
    std::vector<double> spectrum;
    std::string case_target = "case_ii";
    double planted_gap = 0.3;
    bool case_two = false;
    int trials = 100;
    std::vector<std::string> checks{"T1", "T2"};
    int threads = 0;

    void add_sampling_options(CLI::App* cmd) {
        cmd->add_option("--n", n, "matrix dimension");
        cmd->add_option("--kind", kind,
                        "haar | fixed_spectrum | case_targeted | equality_planted | gap_planted");
        cmd->add_option("--spectrum", spectrum, "angles for fixed_spectrum")->delimiter(',');
        cmd->add_option("--case-target", case_target, "case_ii | case_iii")
            ->check(CLI::IsMember({"case_ii", "case_iii"}));
        cmd->add_option("--gap", planted_gap, "principal angle for gap_planted");
        cmd->add_flag("--case-two", case_two, "equality pairs with one wide-spread factor");
    }

    SampleSpec to_spec(std::uint64_t seed) const {
        SampleSpec spec;
        spec.n = n;
        spec.kind = sample_kind_from_string(kind);
        spec.spectrum = spectrum;
        spec.case_target = case_target == "case_iii" ? CaseTarget::case_iii : CaseTarget::case_ii;
        spec.planted_gap = planted_gap;
        spec.equality_case_two = case_two;
        spec.seed = seed;
        spec.validate();
        return spec;
    }

    TrialCampaign to_campaign(std::uint64_t seed, const std::string& profile_path) const {
        TrialCampaign c;
        c.spec = to_spec(seed);
        c.trials = trials;
        for (const std::string& s : checks) c.checks.push_back(check_from_string(s));
        c.profile = resolve_profile(n, profile_path);
        c.seed = seed;
        c.threads = threads;
        c.validate();
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenangle bounds for products of unitary matrices"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string profile_path;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--profile", profile_path, "tolerance profile JSON file");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

    // decompose
    auto* cmd_decompose = app.add_subcommand("decompose", "eigenangles and orderings of U");
    std::string decompose_matrix;
    cmd_decompose->add_option("matrix", decompose_matrix, "matrix JSON file")->required();
    cmd_decompose->fallthrough();

    // power
    auto* cmd_power = app.add_subcommand("power", "fractional power U^a on principal arguments");
    std::string power_matrix;
    double power_a = 0.5;
    cmd_power->add_option("matrix", power_matrix, "matrix JSON file")->required();
    cmd_power->add_option("--a", power_a, "exponent in [0, 1]")->required();
    cmd_power->fallthrough();

    // check
    auto* cmd_check = app.add_subcommand("check", "product bounds for a pair (U, V)");
    std::string check_u, check_v;
    int check_theorem = 0;  // 0 = both
    bool check_strict = false;
    cmd_check->add_option("U", check_u, "left factor JSON file")->required();
    cmd_check->add_option("V", check_v, "right factor JSON file")->required();
    cmd_check->add_option("--theorem", check_theorem, "restrict to theorem 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    cmd_check->add_flag("--strict", check_strict, "exit 3 when preconditions fail");
    cmd_check->fallthrough();

    // minmax
    auto* cmd_minmax = app.add_subcommand("minmax", "min-max certificate for eigenangle j");
    std::string minmax_matrix;
    int minmax_j = 1;
    int minmax_trials = 100;
    bool minmax_all = false;
    cmd_minmax->add_option("matrix", minmax_matrix, "matrix JSON file")->required();
    cmd_minmax->add_option("--j", minmax_j, "1-based descending index");
    cmd_minmax->add_flag("--all", minmax_all, "verify every index");
    cmd_minmax->add_option("--trials", minmax_trials, "random subspaces per index");
    cmd_minmax->fallthrough();

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "write sampled matrix JSON files");
    CampaignFlags sample_flags;
    sample_flags.add_sampling_options(cmd_sample);
    std::uint64_t sample_trial = 0;
    bool sample_pair_out = false;
    cmd_sample->add_option("--trial", sample_trial, "trial index within the seed's stream");
    cmd_sample->add_flag("--pair", sample_pair_out, "always write a (U, V) pair");
    cmd_sample->fallthrough();

    // campaign
    auto* cmd_campaign = app.add_subcommand("campaign", "seeded fuzzing campaign");
    CampaignFlags campaign_flags;
    campaign_flags.add_sampling_options(cmd_campaign);
    cmd_campaign->add_option("--trials", campaign_flags.trials, "number of sampled trials");
    cmd_campaign->add_option("--checks", campaign_flags.checks, "subset of T1,T2,L1,L2,reduction")
        ->delimiter(',');
    cmd_campaign->add_option("--threads", campaign_flags.threads,
                             "worker threads (1 = serial reference)");
    cmd_campaign->fallthrough();

    // replay
    auto* cmd_replay = app.add_subcommand("replay", "re-run one trial of a campaign verbosely");
    CampaignFlags replay_flags;
    replay_flags.add_sampling_options(cmd_replay);
    std::uint64_t replay_trial = 0;
    std::string replay_check = "T1";
    cmd_replay->add_option("--trials", replay_flags.trials, "campaign trial count");
    cmd_replay->add_option("--trial", replay_trial, "trial index to replay")->required();
    cmd_replay->add_option("--check", replay_check, "one of T1,T2,L1,L2,reduction")->required();
    cmd_replay->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (app.got_subcommand(cmd_decompose)) {
            Matrix m = load_matrix_file(decompose_matrix);
            ToleranceProfile profile = resolve_profile(static_cast<int>(m.rows()), profile_path);
            EigenSystem sys = eig_unitary(make_unitary(m, profile), profile);
            emit(format == "csv" ? csv_decompose(sys) : dump_json(to_json(sys)), out_path);
            return kExitPass;
        }

        if (app.got_subcommand(cmd_power)) {
            Matrix m = load_matrix_file(power_matrix);
            ToleranceProfile profile = resolve_profile(static_cast<int>(m.rows()), profile_path);
            UnitaryMatrix u = make_unitary(m, profile);
            UnitaryMatrix p = fractional_power(u, PowerExponent(power_a), profile);
            emit(format == "csv" ? csv_matrix(p.entries()) : dump_json(matrix_to_json(p.entries())),
                 out_path);
            return kExitPass;
        }

        if (app.got_subcommand(cmd_check)) {
            Matrix mu = load_matrix_file(check_u);
            ToleranceProfile profile = resolve_profile(static_cast<int>(mu.rows()), profile_path);
            UnitaryMatrix u = make_unitary(mu, profile);
            UnitaryMatrix v = load_unitary(check_v, profile);
            PairSystems pair = analyze_pair(u, v, profile);

            std::vector<BoundReport> reports;
            if (check_theorem == 0 || check_theorem == 1) {
                auto [desc, asc] = theorem1_check(pair, profile);
                reports.push_back(desc);
                reports.push_back(asc);
            }
            if (check_theorem == 0 || check_theorem == 2) {
                reports.push_back(theorem2_check(pair, profile));
            }

            if (format == "csv") {
                emit(csv_reports(reports), out_path);
            } else {
                Json out = Json::array();
                for (const BoundReport& r : reports) out.push_back(to_json(r));
                emit(dump_json(out), out_path);
            }

            bool violated = false;
            bool precondition_failed = false;
            for (const BoundReport& r : reports) {
                const bool applicable = r.theorem == Theorem::T2 || r.preconditions_ok;
                if (applicable && r.slack < -profile.tol_eq) violated = true;
                if (r.theorem != Theorem::T2 && !r.preconditions_ok) precondition_failed = true;
            }
            if (violated) return kExitViolation;
            if (check_strict && precondition_failed) return kExitPrecondition;
            return kExitPass;
        }

        if (app.got_subcommand(cmd_minmax)) {
            Matrix m = load_matrix_file(minmax_matrix);
            ToleranceProfile profile = resolve_profile(static_cast<int>(m.rows()), profile_path);
            UnitaryMatrix u = make_unitary(m, profile);
            std::vector<MinMaxReport> reports;
            if (minmax_all) {
                for (int j = 1; j <= u.dim(); ++j) {
                    reports.push_back(
                        minmax_verify(u, j, minmax_trials, RngStream::derive(seed, j), profile));
                }
            } else {
                reports.push_back(minmax_verify(u, minmax_j, minmax_trials, seed, profile));
            }
            if (format == "csv") {
                emit(csv_minmax(reports), out_path);
            } else {
                Json out = Json::array();
                for (const MinMaxReport& r : reports) out.push_back(to_json(r));
                emit(dump_json(out), out_path);
            }
            for (const MinMaxReport& r : reports) {
                if (!r.all_ok()) return kExitViolation;
            }
            return kExitPass;
        }

        if (app.got_subcommand(cmd_sample)) {
            SampleSpec spec = sample_flags.to_spec(seed);
            const std::string stem = output_stem(out_path);
            const bool pair_kind = spec.kind == SampleKind::case_targeted ||
                                   spec.kind == SampleKind::equality_planted ||
                                   spec.kind == SampleKind::gap_planted;
            if (pair_kind || sample_pair_out) {
                auto [u, v] = sample_pair(spec, sample_trial);
                save_matrix_file(u.entries(), stem + ".U.json");
                save_matrix_file(v.entries(), stem + ".V.json");
                std::cout << stem << ".U.json\n" << stem << ".V.json\n";
            } else {
                UnitaryMatrix u = sample_unitary(spec, sample_trial);
                save_matrix_file(u.entries(), stem + ".json");
                std::cout << stem << ".json\n";
            }
            return kExitPass;
        }

        if (app.got_subcommand(cmd_campaign)) {
            TrialCampaign c = campaign_flags.to_campaign(seed, profile_path);
            CampaignSummary summary = run_campaign(c);
            emit(format == "csv" ? csv_campaign(summary) : dump_json(to_json(summary)), out_path);
            std::cerr << "campaign: " << c.trials << " trials in " << summary.wall_time_seconds
                      << " s\n";
            for (const CheckStats& s : summary.stats) {
                if (s.fail > 0) return kExitViolation;
            }
            return kExitPass;
        }

        if (app.got_subcommand(cmd_replay)) {
            TrialCampaign c = replay_flags.to_campaign(seed, profile_path);
            ReplayRecord rec = replay(c, replay_trial, check_from_string(replay_check));
            emit(format == "csv" ? csv_replay(rec) : dump_json(to_json(rec)), out_path);
            return rec.outcome == TrialOutcome::fail ? kExitViolation : kExitPass;
        }
    } catch (const ConfigInvalidError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SpreadPreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

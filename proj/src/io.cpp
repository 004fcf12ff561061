#include "uniarg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace uniarg {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

// Non-finite values have no JSON representation; emit null explicitly.
Json json_real(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json angle_list(const EigenSystem& system, const std::vector<int>& perm) {
    Json list = Json::array();
    for (int col : perm) list.push_back(system.angles[col]);
    return list;
}

}  // namespace

// --------------------------------- matrices ----------------------------------

Json matrix_to_json(const Matrix& m) {
    if (!m.allFinite()) throw NonFiniteError("matrix_to_json: non-finite entries");
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row_re = Json::array();
        Json row_im = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return Json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im")) {
        throw ConfigInvalidError("matrix json: expected object with n, re, im");
    }
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) {
        throw ConfigInvalidError("matrix json: n must be a positive integer");
    }
    const int n = j["n"].get<int>();
    const Json& re = j["re"];
    const Json& im = j["im"];
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n ||
        static_cast<int>(im.size()) != n) {
        throw ConfigInvalidError("matrix json: re and im must be n rows");
    }
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const Json& row_re = re[i];
        const Json& row_im = im[i];
        if (!row_re.is_array() || !row_im.is_array() || static_cast<int>(row_re.size()) != n ||
            static_cast<int>(row_im.size()) != n) {
            throw ConfigInvalidError("matrix json: each row must have n entries");
        }
        for (int k = 0; k < n; ++k) {
            if (!row_re[k].is_number() || !row_im[k].is_number()) {
                throw ConfigInvalidError("matrix json: entries must be numbers");
            }
            m(i, k) = Complex(row_re[k].get<double>(), row_im[k].get<double>());
        }
    }
    if (!m.allFinite()) throw NonFiniteError("matrix json: non-finite entries");
    return m;
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalidError("cannot open matrix file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigInvalidError("matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void save_matrix_file(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigInvalidError("cannot write matrix file: " + path);
    out << matrix_to_json(m).dump(2) << '\n';
}

// --------------------------------- profiles ----------------------------------

Json to_json(const ToleranceProfile& profile) {
    return Json{{"tol_unitary", profile.tol_unitary}, {"tol_recon", profile.tol_recon},
                {"tol_ortho", profile.tol_ortho},     {"tol_cluster", profile.tol_cluster},
                {"tol_eq", profile.tol_eq},           {"tol_principal_angle", profile.tol_principal_angle}};
}

ToleranceProfile profile_from_json(const Json& j, ToleranceProfile base) {
    if (!j.is_object()) throw ConfigInvalidError("profile json: expected an object");
    auto take = [&](const char* key, double& field) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) throw ConfigInvalidError(std::string("profile json: ") + key);
        field = j[key].get<double>();
    };
    take("tol_unitary", base.tol_unitary);
    take("tol_recon", base.tol_recon);
    take("tol_ortho", base.tol_ortho);
    take("tol_cluster", base.tol_cluster);
    take("tol_eq", base.tol_eq);
    take("tol_principal_angle", base.tol_principal_angle);
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* known[] = {"tol_unitary", "tol_recon",  "tol_ortho",
                                      "tol_cluster", "tol_eq",     "tol_principal_angle"};
        bool found = false;
        for (const char* k : known) found = found || it.key() == k;
        if (!found) throw ConfigInvalidError("profile json: unknown key " + it.key());
    }
    base.validate();
    return base;
}

ToleranceProfile load_profile_file(const std::string& path, ToleranceProfile base) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalidError("cannot open profile file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigInvalidError("profile file " + path + ": " + e.what());
    }
    return profile_from_json(j, base);
}

// ---------------------------------- reports ----------------------------------

Json to_json(const EigenSystem& system) {
    Json clusters = Json::array();
    for (const auto& cluster : system.clusters) clusters.push_back(cluster);
    return Json{{"schema", 1},
                {"n", system.dim()},
                {"angles_desc", angle_list(system, system.perm_desc)},
                {"angles_asc", angle_list(system, system.perm_asc)},
                {"angles_absdesc", angle_list(system, system.perm_absdesc)},
                {"spread", system.spread()},
                {"clusters", std::move(clusters)},
                {"vectors", matrix_to_json(system.vectors)}};
}

Json to_json(const BoundReport& report) {
    return Json{{"schema", 1},
                {"theorem", to_string(report.theorem)},
                {"lhs", report.lhs},
                {"rhs", report.rhs},
                {"slack", report.slack},
                {"preconditions_ok", report.preconditions_ok},
                {"case", to_string(report.case_label)},
                {"equality_detected", report.equality_detected},
                {"intersection_dim", report.intersection_dim},
                {"equality_condition_predicted", report.equality_condition_predicted},
                {"boundary", report.boundary},
                {"consistent", report.consistent},
                {"vacuous", report.vacuous}};
}

Json to_json(const ReductionAudit& audit) {
    return Json{{"schema", 1},
                {"case", to_string(audit.input_case)},
                {"a", audit.a},
                {"lo", audit.lo},
                {"hi", audit.hi},
                {"link1_case", to_string(audit.link1_case)},
                {"link2_case", to_string(audit.link2_case)},
                {"link1_slack", audit.link1_slack},
                {"link2_slack", audit.link2_slack},
                {"direct_slack", audit.direct_slack},
                {"chain_ok", audit.chain_ok}};
}

Json to_json(const MinMaxReport& report) {
    return Json{{"schema", 1},
                {"j", report.j},
                {"trials", report.trials},
                {"theta", report.theta},
                {"extremizer_max_arg", report.extremizer_max_arg},
                {"extremizer_ok", report.extremizer_ok},
                {"sampled_ok", report.sampled_ok},
                {"worst_margin", json_real(report.worst_margin)},
                {"worst_trial", report.worst_trial},
                {"all_ok", report.all_ok()}};
}

Json to_json(const ProductPhase& phase) {
    return Json{{"arg_u", phase.arg_u},
                {"arg_v", phase.arg_v},
                {"theta", phase.theta},
                {"residual", phase.arg_u + phase.arg_v - phase.theta},
                {"degenerate", phase.degenerate}};
}

Json to_json(const ArgRange& range) {
    return Json{{"schema", 1}, {"min_arg", range.min_arg}, {"max_arg", range.max_arg}};
}

// --------------------------------- campaigns ---------------------------------

namespace {

Json campaign_config_json(const TrialCampaign& c) {
    Json checks = Json::array();
    for (Check check : c.checks) checks.push_back(to_string(check));
    Json spec{{"n", c.spec.n}, {"kind", to_string(c.spec.kind)}};
    switch (c.spec.kind) {
        case SampleKind::fixed_spectrum: spec["spectrum"] = c.spec.spectrum; break;
        case SampleKind::case_targeted:
            spec["case_target"] =
                c.spec.case_target == CaseTarget::case_ii ? "case_ii" : "case_iii";
            break;
        case SampleKind::equality_planted:
            spec["equality_case_two"] = c.spec.equality_case_two;
            break;
        case SampleKind::gap_planted: spec["planted_gap"] = c.spec.planted_gap; break;
        case SampleKind::haar: break;
    }
    return Json{{"spec", std::move(spec)},
                {"trials", c.trials},
                {"checks", std::move(checks)},
                {"seed", c.seed},
                {"profile", to_json(c.profile)}};
}

}  // namespace

Json to_json(const CampaignSummary& summary) {
    Json stats = Json::array();
    for (std::size_t k = 0; k < summary.stats.size(); ++k) {
        const CheckStats& s = summary.stats[k];
        stats.push_back(Json{{"check", to_string(summary.config.checks[k])},
                             {"pass", s.pass},
                             {"fail", s.fail},
                             {"vacuous", s.vacuous},
                             {"boundary", s.boundary},
                             {"skipped", s.skipped},
                             {"worst_slack", json_real(s.worst_slack)},
                             {"worst_trial", s.worst_trial}});
    }
    return Json{{"schema", 1},
                {"campaign", campaign_config_json(summary.config)},
                {"stats", std::move(stats)},
                {"consistent_reports", summary.consistent_reports},
                {"total_reports", summary.total_reports},
                {"equality_consistency", summary.equality_consistency}};
}

Json to_json(const ReplayRecord& record) {
    Json j{{"schema", 1},
           {"check", to_string(record.check)},
           {"trial", record.trial},
           {"outcome", to_string(record.outcome)},
           {"slack", json_real(record.slack)}};
    if (!record.reports.empty()) {
        Json reports = Json::array();
        for (const BoundReport& r : record.reports) reports.push_back(to_json(r));
        j["reports"] = std::move(reports);
    }
    if (!record.phases.empty()) {
        Json phases = Json::array();
        for (const ProductPhase& p : record.phases) phases.push_back(to_json(p));
        j["phases"] = std::move(phases);
    }
    if (!record.minmax.empty()) {
        Json minmax = Json::array();
        for (const MinMaxReport& r : record.minmax) minmax.push_back(to_json(r));
        j["minmax"] = std::move(minmax);
    }
    if (record.has_audit) j["audit"] = to_json(record.audit);
    return j;
}

}  // namespace uniarg

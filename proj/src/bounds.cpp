#include "uniarg/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace uniarg {

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::case_i: return "case_i";
        case CaseLabel::case_ii: return "case_ii";
        case CaseLabel::case_iii: return "case_iii";
        case CaseLabel::preconditions_violated: return "preconditions_violated";
    }
    return "?";
}

std::string to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::T1_desc: return "T1_desc";
        case Theorem::T1_asc: return "T1_asc";
        case Theorem::T2: return "T2";
    }
    return "?";
}

PairSystems analyze_pair(const UnitaryMatrix& u, const UnitaryMatrix& v,
                         const ToleranceProfile& profile) {
    if (u.dim() != v.dim()) throw AmbientMismatchError("analyze_pair: dimension mismatch");
    UnitaryMatrix w = make_unitary(u.entries() * v.entries(), profile);
    EigenSystem sys_u = eig_unitary(u, profile);
    EigenSystem sys_v = eig_unitary(v, profile);
    EigenSystem sys_w = eig_unitary(w, profile);
    return {u, v, std::move(w), std::move(sys_u), std::move(sys_v), std::move(sys_w)};
}

CaseLabel classify_case(const EigenSystem& sys_u, const EigenSystem& sys_v) {
    const double desc_sum = sys_u.desc_angle(0) + sys_v.desc_angle(0);
    const double asc_sum = sys_u.asc_angle(0) + sys_v.asc_angle(0);
    if (desc_sum > pi || asc_sum <= -pi) return CaseLabel::preconditions_violated;
    const bool wide_u = sys_u.spread() >= pi;
    const bool wide_v = sys_v.spread() >= pi;
    if (!wide_u && !wide_v) return CaseLabel::case_i;
    if (wide_u && !wide_v) return CaseLabel::case_ii;
    if (!wide_u && wide_v) return CaseLabel::case_iii;
    // Both spreads >= pi forces desc_sum - asc_sum >= 2*pi, impossible here.
    return CaseLabel::preconditions_violated;
}

int subspace_intersection_dim(const Subspace& s1, const Subspace& s2,
                              const ToleranceProfile& profile) {
    if (s1.ambient_dim != s2.ambient_dim) {
        throw AmbientMismatchError("subspace_intersection_dim: ambient mismatch");
    }
    if (s1.dim() == 0 || s2.dim() == 0) return 0;
    const Matrix overlap = s1.basis.adjoint() * s2.basis;
    Eigen::JacobiSVD<Matrix> svd(overlap);
    int count = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) >= 1.0 - profile.tol_principal_angle) ++count;
    }
    return count;
}

// ------------------------------ report assembly ------------------------------

namespace {

// Equality detection is a threshold decision; disagreements hugging the
// threshold are flagged boundary instead of inconsistent.
void finish_report(BoundReport& r, const ToleranceProfile& profile) {
    r.equality_detected = std::abs(r.slack) <= profile.tol_eq;
    const bool agree = r.equality_detected == r.equality_condition_predicted;
    r.boundary = !agree && std::abs(std::abs(r.slack) - profile.tol_eq) <= 10.0 * profile.tol_eq;
    r.consistent = agree || r.boundary;
}

int top_intersection_dim(const EigenSystem& sys_u, const EigenSystem& sys_v,
                         const ToleranceProfile& profile) {
    return subspace_intersection_dim(top_eigenspace(sys_u, profile), top_eigenspace(sys_v, profile),
                                     profile);
}

}  // namespace

std::pair<BoundReport, BoundReport> theorem1_check(const PairSystems& pair,
                                                   const ToleranceProfile& profile) {
    const CaseLabel label = classify_case(pair.sys_u, pair.sys_v);
    const bool ok = label != CaseLabel::preconditions_violated;

    BoundReport desc;
    desc.theorem = Theorem::T1_desc;
    desc.case_label = label;
    desc.preconditions_ok = ok;
    desc.lhs = pair.sys_w.desc_angle(0);
    desc.rhs = pair.sys_u.desc_angle(0) + pair.sys_v.desc_angle(0);
    desc.slack = desc.rhs - desc.lhs;
    desc.intersection_dim = top_intersection_dim(pair.sys_u, pair.sys_v, profile);
    desc.equality_condition_predicted = desc.intersection_dim >= 1;
    finish_report(desc, profile);

    BoundReport asc;
    asc.theorem = Theorem::T1_asc;
    asc.case_label = label;
    asc.preconditions_ok = ok;
    asc.lhs = pair.sys_u.asc_angle(0) + pair.sys_v.asc_angle(0);
    asc.rhs = pair.sys_w.asc_angle(0);
    asc.slack = asc.rhs - asc.lhs;
    asc.intersection_dim = top_intersection_dim(inverse_angle_map(pair.sys_u, profile).system,
                                                inverse_angle_map(pair.sys_v, profile).system,
                                                profile);
    asc.equality_condition_predicted = asc.intersection_dim >= 1;
    finish_report(asc, profile);

    return {desc, asc};
}

std::pair<BoundReport, BoundReport> theorem1_check(const UnitaryMatrix& u, const UnitaryMatrix& v,
                                                   const ToleranceProfile& profile) {
    return theorem1_check(analyze_pair(u, v, profile), profile);
}

BoundReport theorem2_check(const PairSystems& pair, const ToleranceProfile& profile) {
    BoundReport r;
    r.theorem = Theorem::T2;
    r.case_label = classify_case(pair.sys_u, pair.sys_v);
    r.preconditions_ok = true;  // the bound is unconditional

    const double abs_u = std::abs(pair.sys_u.absdesc_angle(0));
    const double abs_v = std::abs(pair.sys_v.absdesc_angle(0));
    r.lhs = std::abs(pair.sys_w.absdesc_angle(0));
    r.rhs = abs_u + abs_v;
    r.vacuous = r.rhs >= pi;
    r.slack = r.vacuous ? pi - r.lhs : r.rhs - r.lhs;

    // Equality needs the sum below pi and aligned top angles sharing an
    // eigenvector, on either the descending or the inverse side.
    const int dim_desc = top_intersection_dim(pair.sys_u, pair.sys_v, profile);
    const bool aligned_desc = std::abs(pair.sys_u.desc_angle(0) - abs_u) <= profile.tol_eq &&
                              std::abs(pair.sys_v.desc_angle(0) - abs_v) <= profile.tol_eq;
    const int dim_inv = top_intersection_dim(inverse_angle_map(pair.sys_u, profile).system,
                                             inverse_angle_map(pair.sys_v, profile).system, profile);
    const bool aligned_inv = std::abs(pair.sys_u.asc_angle(0) + abs_u) <= profile.tol_eq &&
                             std::abs(pair.sys_v.asc_angle(0) + abs_v) <= profile.tol_eq;
    const bool branch_desc = dim_desc >= 1 && aligned_desc;
    const bool branch_inv = dim_inv >= 1 && aligned_inv;
    r.equality_condition_predicted =
        r.rhs <= pi + profile.tol_eq && (branch_desc || branch_inv);
    r.intersection_dim = branch_desc ? dim_desc : (branch_inv ? dim_inv : std::max(dim_desc, dim_inv));
    finish_report(r, profile);
    return r;
}

BoundReport theorem2_check(const UnitaryMatrix& u, const UnitaryMatrix& v,
                           const ToleranceProfile& profile) {
    return theorem2_check(analyze_pair(u, v, profile), profile);
}

// ------------------------------ reduction audit ------------------------------

ReductionAudit reduction_audit(const UnitaryMatrix& u, const UnitaryMatrix& v,
                               const ToleranceProfile& profile) {
    PairSystems pair = analyze_pair(u, v, profile);
    const CaseLabel label = classify_case(pair.sys_u, pair.sys_v);
    if (label != CaseLabel::case_ii && label != CaseLabel::case_iii) {
        throw NotReducibleCaseError("reduction_audit: pair is not case (ii) or (iii)");
    }

    ReductionAudit audit;
    audit.input_case = label;
    audit.direct_slack = theorem1_check(pair, profile).first.slack;

    const bool wide_u = label == CaseLabel::case_ii;
    const EigenSystem& wide = wide_u ? pair.sys_u : pair.sys_v;
    PickAResult pick = wide_u ? pick_a(pair.sys_u, pair.sys_v) : pick_a(pair.sys_v, pair.sys_u);
    audit.a = pick.exponent.value();
    audit.lo = pick.lo;
    audit.hi = pick.hi;

    UnitaryMatrix part = fractional_power(wide, pick.exponent, profile);
    UnitaryMatrix rest = fractional_power(wide, pick.exponent.complement(), profile);

    // Wide U: (U^a, V) then (U^(1-a), U^a V).  Wide V: (U, V^a) then (U V^a, V^(1-a)).
    PairSystems link1 = wide_u ? analyze_pair(part, pair.v, profile)
                               : analyze_pair(pair.u, part, profile);
    PairSystems link2 = wide_u ? analyze_pair(rest, link1.w, profile)
                               : analyze_pair(link1.w, rest, profile);

    audit.link1_case = classify_case(link1.sys_u, link1.sys_v);
    audit.link2_case = classify_case(link2.sys_u, link2.sys_v);
    audit.link1_slack = theorem1_check(link1, profile).first.slack;
    audit.link2_slack = theorem1_check(link2, profile).first.slack;
    audit.chain_ok = audit.link1_case == CaseLabel::case_i &&
                     audit.link2_case == CaseLabel::case_i &&
                     audit.link1_slack >= -profile.tol_eq &&
                     audit.link2_slack >= -profile.tol_eq &&
                     audit.direct_slack >= -profile.tol_eq;
    return audit;
}

}  // namespace uniarg

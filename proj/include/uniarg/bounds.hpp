#pragma once

#include <string>
#include <utility>

#include "uniarg/calculus.hpp"
#include "uniarg/eig.hpp"
#include "uniarg/types.hpp"

namespace uniarg {

// Spread trichotomy for a pair, gated by the shared angle-sum preconditions.
enum class CaseLabel { case_i, case_ii, case_iii, preconditions_violated };

enum class Theorem { T1_desc, T1_asc, T2 };

std::string to_string(CaseLabel label);
std::string to_string(Theorem theorem);

struct BoundReport {
    Theorem theorem = Theorem::T1_desc;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // oriented so slack >= 0 means the bound holds
    bool preconditions_ok = false;
    CaseLabel case_label = CaseLabel::case_i;
    bool equality_detected = false;  // |slack| <= tol_eq
    int intersection_dim = 0;
    bool equality_condition_predicted = false;
    bool boundary = false;    // detected/predicted disagree within threshold slop
    bool consistent = false;  // detected == predicted, or flagged boundary
    bool vacuous = false;     // T2 only: rhs >= pi, slack measured against pi
};

// Decompositions shared by the per-pair checks; w is the certified product UV.
struct PairSystems {
    UnitaryMatrix u;
    UnitaryMatrix v;
    UnitaryMatrix w;
    EigenSystem sys_u;
    EigenSystem sys_v;
    EigenSystem sys_w;
};

PairSystems analyze_pair(const UnitaryMatrix& u, const UnitaryMatrix& v,
                         const ToleranceProfile& profile);

CaseLabel classify_case(const EigenSystem& sys_u, const EigenSystem& sys_v);

// Dimension of S1 meet S2: singular values of B1'B2 at 1 within
// tol_principal_angle count as zero principal angles.
int subspace_intersection_dim(const Subspace& s1, const Subspace& s2,
                              const ToleranceProfile& profile);

// Top-angle additivity bounds for the product, descending and ascending.
// Descending: theta_desc_1(UV) <= theta_desc_1(U) + theta_desc_1(V).
// Ascending:  theta_asc_1(UV) >= theta_asc_1(U) + theta_asc_1(V).
std::pair<BoundReport, BoundReport> theorem1_check(const UnitaryMatrix& u, const UnitaryMatrix& v,
                                                   const ToleranceProfile& profile);
std::pair<BoundReport, BoundReport> theorem1_check(const PairSystems& pair,
                                                   const ToleranceProfile& profile);

// Unconditional absolute-angle bound:
// abs_theta_desc_1(UV) <= abs_theta_desc_1(U) + abs_theta_desc_1(V),
// vacuous once the right side reaches pi.
BoundReport theorem2_check(const UnitaryMatrix& u, const UnitaryMatrix& v,
                           const ToleranceProfile& profile);
BoundReport theorem2_check(const PairSystems& pair, const ToleranceProfile& profile);

struct ReductionAudit {
    CaseLabel input_case = CaseLabel::case_ii;
    double a = 0.0;
    double lo = 0.0;  // admissible open interval for the exponent
    double hi = 0.0;
    CaseLabel link1_case = CaseLabel::case_i;
    CaseLabel link2_case = CaseLabel::case_i;
    double link1_slack = 0.0;  // descending slack of the first relinked pair
    double link2_slack = 0.0;  // descending slack of the second relinked pair
    double direct_slack = 0.0;  // descending slack of (U, V) checked directly
    bool chain_ok = false;
};

// Splits the wide-spread factor with the admissible exponent and verifies
// that both relinked pairs are case (i) and their chained bounds recover the
// direct bound.  Wide U relinks as (U^a, V) then (U^(1-a), U^a V);
// wide V relinks as (U, V^a) then (U V^a, V^(1-a)).
ReductionAudit reduction_audit(const UnitaryMatrix& u, const UnitaryMatrix& v,
                               const ToleranceProfile& profile);

}  // namespace uniarg

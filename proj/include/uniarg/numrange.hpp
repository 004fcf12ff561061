#pragma once

#include <cstdint>
#include <vector>

#include "uniarg/eig.hpp"
#include "uniarg/types.hpp"

namespace uniarg {

// Extremal principal arguments over a set of quadratic-form values,
// together with the unit vectors attaining them.
struct ArgRange {
    double min_arg = 0.0;
    double max_arg = 0.0;
    Vector attained_min_vector;
    Vector attained_max_vector;
};

// arg<psi|U|psi> in (-pi, pi].  psi must be a unit vector within tol_ortho.
// Throws OriginContactError when the form is within tol_eq of the origin.
double quadratic_form_arg(const UnitaryMatrix& u, const Vector& psi,
                          const ToleranceProfile& profile);

struct ProductPhase {
    double arg_u = 0.0;   // arg<w_j|U|w_j>
    double arg_v = 0.0;   // arg<w_j|V|w_j>
    double theta = 0.0;   // j-th descending eigenangle of UV
    bool degenerate = false;  // eigenket choice basis-dependent (informational)
};

// Phase split of the j-th descending eigenangle of UV (1-based j) across
// the two factors.  Requires the strict spread conditions
//   spread(U) < pi, spread(V) < pi,
//   theta_desc_1(U) + theta_desc_1(V) < pi,
//   -theta_asc_1(U) - theta_asc_1(V) < pi,
// under which arg_u + arg_v equals theta with no modular reduction.
ProductPhase product_phase_decomposition(const UnitaryMatrix& u, const UnitaryMatrix& v, int j,
                                         const ToleranceProfile& profile);

// All indices at once; decompositions of U, V and UV are done once.
std::vector<ProductPhase> product_phase_all(const UnitaryMatrix& u, const UnitaryMatrix& v,
                                            const ToleranceProfile& profile);

// Extremal arguments of <psi|U|psi> over unit psi in H, via the compression
// A = B'UB and a support-function sweep of its numerical-range boundary
// (360 probe directions, then golden-section refinement to 1e-10 rad).
// Requires spread(U) < pi so the range stays away from the origin.
ArgRange max_arg_on_subspace(const UnitaryMatrix& u, const Subspace& h,
                             const ToleranceProfile& profile);

struct MinMaxReport {
    int j = 1;
    int trials = 0;
    double theta = 0.0;               // j-th descending eigenangle of U
    double extremizer_max_arg = 0.0;  // over the span of eigenkets ranked j..n
    bool extremizer_ok = false;       // extremizer attains theta within tol_eq
    int sampled_ok = 0;               // random subspaces with max_arg >= theta - tol_eq
    double worst_margin = 0.0;        // min over trials of (max_arg - theta)
    std::uint64_t worst_trial = 0;
    bool all_ok() const { return extremizer_ok && sampled_ok == trials; }
};

// Min-max certificate for the j-th descending eigenangle: the canonical
// extremizer subspace attains it, and Haar-random subspaces of codimension
// j-1 never fall below it.  Trials run in parallel on independent streams.
MinMaxReport minmax_verify(const UnitaryMatrix& u, int j, int trials, std::uint64_t rng_seed,
                           const ToleranceProfile& profile);

}  // namespace uniarg

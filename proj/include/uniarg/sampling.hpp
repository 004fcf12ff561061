// sampling.hpp — Reproducible random unitaries, spectra-constrained unitaries,
// subspaces, and theorem-exercising pairs.

#pragma once

#include "uniarg/types.hpp"

#include <cstdint>
#include <optional>

namespace uniarg {

// --------------------------------- RngStream ---------------------------------
//
// Counter-based splittable stream: the state is a SplitMix64 walk whose start
// is a mix of (seed, stream), so (seed, trial_index) pairs yield independent
// reproducible streams with no cross-thread coordination. All derived draws
// (uniform, Gaussian) are computed explicitly so output is a pure function of
// the key on any conforming platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double next_double();                       // uniform in [0, 1)
    double next_uniform(double lo, double hi);  // uniform in [lo, hi)
    double next_gaussian();                     // standard normal (Box-Muller)
    Complex next_complex_gaussian();            // re/im iid N(0,1)

    // Child stream for nested sampling inside a trial.
    RngStream split(std::uint64_t substream) const;

    // Well-mixed sub-seed for handing to components that take a seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

private:
    std::uint64_t state_;
    std::uint64_t key_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// --------------------------------- SampleSpec --------------------------------

enum class SampleKind { haar, fixed_spectrum, case_targeted, equality_planted, gap_planted };

enum class CaseTarget { case_ii, case_iii };

struct SampleSpec {
    int n = 2;
    SampleKind kind = SampleKind::haar;
    std::vector<double> spectrum;               // fixed_spectrum
    CaseTarget case_target = CaseTarget::case_ii;  // case_targeted
    double planted_gap = 0.3;                   // gap_planted, radians
    bool equality_case_two = false;             // equality_planted via a case-(ii) U
    std::uint64_t seed = 0;

    void validate() const;
};

SampleKind sample_kind_from_string(const std::string& s);
std::string to_string(SampleKind k);

// --------------------------------- Generators --------------------------------

// Haar-distributed unitary: complex Ginibre, Householder QR, phases fixed by
// the positive-real-diagonal convention.
UnitaryMatrix haar_unitary(int n, RngStream& rng);

// Q diag(e^{i theta}) Q^H for Haar Q. Angles must lie in (-pi, pi].
UnitaryMatrix unitary_with_spectrum(const std::vector<double>& angles, RngStream& rng);

// Haar-random subspace of the given dimension (column span of a Haar block).
Subspace haar_subspace(int n, int dim, RngStream& rng, const ToleranceProfile& profile);

// Pair sharing a common top eigenvector, so the descending product bound is
// tight. theta_u + theta_v <= pi required. case_two plants spread(U) >= pi to
// exercise the reduction branch.
std::pair<UnitaryMatrix, UnitaryMatrix> equality_pair(int n, double theta_u, double theta_v,
                                                      RngStream& rng, bool case_two = false);

// Pair with one-dimensional top eigenspaces separated by a principal angle of
// at least principal_gap, with the descending-bound preconditions intact.
std::pair<UnitaryMatrix, UnitaryMatrix> gap_pair(int n, double principal_gap, RngStream& rng);

// One matrix (or pair) per (spec, trial); the campaign runner's entry points.
UnitaryMatrix sample_unitary(const SampleSpec& spec, std::uint64_t trial);
std::pair<UnitaryMatrix, UnitaryMatrix> sample_pair(const SampleSpec& spec, std::uint64_t trial);

}  // namespace uniarg

#pragma once

#include "uniarg/eig.hpp"
#include "uniarg/types.hpp"

namespace uniarg {

// Exponent restricted to [0, 1]; construction validates the range.
class PowerExponent {
public:
    explicit PowerExponent(double value);
    double value() const { return value_; }
    PowerExponent complement() const { return PowerExponent(1.0 - value_); }

private:
    double value_;
};

// U^a for a in [0, 1], defined spectrally on principal arguments:
// each eigenvalue e^{i t} maps to e^{i a t}.  The result is certified
// unitary and reconstructs U at a = 1, identity at a = 0.
UnitaryMatrix fractional_power(const EigenSystem& system, const PowerExponent& a,
                               const ToleranceProfile& profile);

// Convenience overload: decomposes first.
UnitaryMatrix fractional_power(const UnitaryMatrix& u, const PowerExponent& a,
                               const ToleranceProfile& profile);

struct PickAResult {
    PowerExponent exponent;   // midpoint of the admissible interval
    double lo = 0.0;          // open interval endpoints
    double hi = 0.0;
};

// Splitting exponent for a pair with spread(U) in [pi, 2*pi) and
// spread(V) < pi, chosen so that U^a, U^(1-a) and the relinked products
// all satisfy the strict small-spread preconditions.  Throws
// NotCaseTwoError when the spreads do not match that shape and
// EmptyIntervalError when no admissible exponent exists.
PickAResult pick_a(const EigenSystem& system_u, const EigenSystem& system_v);

}  // namespace uniarg

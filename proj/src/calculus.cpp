#include "uniarg/calculus.hpp"

#include <cmath>

namespace uniarg {

PowerExponent::PowerExponent(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        throw ExponentOutOfRangeError("PowerExponent: value must lie in [0, 1]");
    }
}

UnitaryMatrix fractional_power(const EigenSystem& system, const PowerExponent& a,
                               const ToleranceProfile& profile) {
    const int n = system.dim();
    Matrix m = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const Complex lambda = std::polar(1.0, a.value() * system.angles[j]);
        m.noalias() += lambda * (system.vectors.col(j) * system.vectors.col(j).adjoint());
    }
    return make_unitary(m, profile);
}

UnitaryMatrix fractional_power(const UnitaryMatrix& u, const PowerExponent& a,
                               const ToleranceProfile& profile) {
    return fractional_power(eig_unitary(u, profile), a, profile);
}

PickAResult pick_a(const EigenSystem& system_u, const EigenSystem& system_v) {
    const double spread_u = system_u.spread();
    const double spread_v = system_v.spread();
    if (!(spread_u >= pi && spread_u < 2.0 * pi)) {
        throw NotCaseTwoError("pick_a: spread of first factor must lie in [pi, 2*pi)");
    }
    if (!(spread_v < pi)) {
        throw NotCaseTwoError("pick_a: spread of second factor must be below pi");
    }
    // a*spread_u must stay below pi yet leave (1-a)*spread_u below pi too,
    // and the relinked pair needs a*spread_u + spread_v < pi as well.
    const double lo = (spread_u - pi) / spread_u;
    const double hi = (pi - spread_v) / spread_u;
    if (!(lo < hi)) {
        throw EmptyIntervalError("pick_a: no admissible exponent for these spreads");
    }
    PickAResult result{PowerExponent(0.5 * (lo + hi)), lo, hi};
    return result;
}

}  // namespace uniarg

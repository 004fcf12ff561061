#include "uniarg/sampling.hpp"

#include <cmath>

namespace uniarg {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t key_of(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t h = mix64(seed + kGamma);
    h ^= mix64(stream + 0x3C6EF372FE94F82AULL);
    return mix64(h + kGamma);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    key_ = key_of(seed, stream);
    state_ = key_;
}

std::uint64_t RngStream::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double RngStream::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Marsaglia polar method; rejection keeps every branch explicit.
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

Complex RngStream::next_complex_gaussian() {
    double re = next_gaussian();
    double im = next_gaussian();
    return {re, im};
}

RngStream RngStream::split(std::uint64_t substream) const {
    return RngStream(key_, substream);
}

std::uint64_t RngStream::derive(std::uint64_t seed, std::uint64_t stream) {
    return key_of(seed, stream);
}

// --------------------------------- SampleSpec --------------------------------

void SampleSpec::validate() const {
    if (n < 1) throw ConfigInvalidError("SampleSpec: n must be >= 1");
    if (kind == SampleKind::fixed_spectrum) {
        if (static_cast<int>(spectrum.size()) != n) {
            throw ConfigInvalidError("SampleSpec: spectrum length must equal n");
        }
        for (double a : spectrum) {
            if (!(a > -pi && a <= pi)) {
                throw AngleOutOfRangeError("SampleSpec: spectrum angle outside (-pi, pi]");
            }
        }
    }
    if (kind == SampleKind::gap_planted) {
        if (!(planted_gap > 0.0 && planted_gap <= pi / 2.0)) {
            throw ConfigInvalidError("SampleSpec: planted_gap must lie in (0, pi/2]");
        }
    }
}

SampleKind sample_kind_from_string(const std::string& s) {
    if (s == "haar") return SampleKind::haar;
    if (s == "fixed_spectrum") return SampleKind::fixed_spectrum;
    if (s == "case_targeted") return SampleKind::case_targeted;
    if (s == "equality_planted") return SampleKind::equality_planted;
    if (s == "gap_planted") return SampleKind::gap_planted;
    throw ConfigInvalidError("unknown sample kind: " + s);
}

std::string to_string(SampleKind k) {
    switch (k) {
        case SampleKind::haar: return "haar";
        case SampleKind::fixed_spectrum: return "fixed_spectrum";
        case SampleKind::case_targeted: return "case_targeted";
        case SampleKind::equality_planted: return "equality_planted";
        case SampleKind::gap_planted: return "gap_planted";
    }
    return "?";
}

// --------------------------------- Generators --------------------------------

namespace {

Matrix ginibre(int n, RngStream& rng) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
}

// Orthonormal matrix with prescribed first column (phase-corrected).
Matrix basis_with_first_column(const Vector& v1) {
    const int n = static_cast<int>(v1.size());
    Eigen::HouseholderQR<Matrix> qr(v1);
    Matrix q = qr.householderQ();
    q.col(0) = v1;
    return q;
}

UnitaryMatrix from_eigenpairs(const Matrix& basis, const std::vector<double>& angles) {
    const int n = static_cast<int>(basis.rows());
    Matrix m = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        m.noalias() += std::polar(1.0, angles[j]) * (basis.col(j) * basis.col(j).adjoint());
    }
    return make_unitary(m, ToleranceProfile::for_dim(n));
}

}  // namespace

UnitaryMatrix haar_unitary(int n, RngStream& rng) {
    if (n < 1) throw ConfigInvalidError("haar_unitary: n must be >= 1");
    Matrix g = ginibre(n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return make_unitary(q, ToleranceProfile::for_dim(n));
}

UnitaryMatrix unitary_with_spectrum(const std::vector<double>& angles, RngStream& rng) {
    const int n = static_cast<int>(angles.size());
    if (n < 1) throw ConfigInvalidError("unitary_with_spectrum: empty spectrum");
    for (double a : angles) {
        if (!(a > -pi && a <= pi)) {
            throw AngleOutOfRangeError("unitary_with_spectrum: angle outside (-pi, pi]");
        }
    }
    UnitaryMatrix q = haar_unitary(n, rng);
    return from_eigenpairs(q.entries(), angles);
}

Subspace haar_subspace(int n, int dim, RngStream& rng, const ToleranceProfile& profile) {
    if (dim < 0 || dim > n) throw ConfigInvalidError("haar_subspace: bad dimension");
    UnitaryMatrix q = haar_unitary(n, rng);
    return Subspace::from_basis(q.entries().rightCols(dim), profile);
}

std::pair<UnitaryMatrix, UnitaryMatrix> equality_pair(int n, double theta_u, double theta_v,
                                                      RngStream& rng, bool case_two) {
    if (n < 1) throw InfeasibleAnglesError("equality_pair: n must be >= 1");
    if (!(theta_u > -pi && theta_u <= pi) || !(theta_v > -pi && theta_v <= pi)) {
        throw InfeasibleAnglesError("equality_pair: top angles outside (-pi, pi]");
    }
    if (theta_u + theta_v > pi) {
        throw InfeasibleAnglesError("equality_pair: theta_u + theta_v exceeds pi");
    }
    if (theta_u + theta_v <= -pi) {
        throw InfeasibleAnglesError("equality_pair: theta_u + theta_v at or below -pi");
    }
    if (case_two && theta_u < 0.1) {
        throw InfeasibleAnglesError("equality_pair: case-(ii) planting needs theta_u >= 0.1");
    }
    if (case_two && n < 2) {
        throw InfeasibleAnglesError("equality_pair: case-(ii) planting needs n >= 2");
    }

    // Joint spread budget keeps the ascending-sum precondition intact.
    const double budget = 0.9 * (pi + theta_u + theta_v);
    const double cap_u = std::min({0.5 * budget, 0.9 * pi, 0.95 * (theta_u + pi)});
    const double cap_v = std::min({0.5 * budget, 0.9 * pi, 0.95 * (theta_v + pi)});

    std::vector<double> ang_u(n), ang_v(n);
    ang_u[0] = theta_u;
    ang_v[0] = theta_v;
    if (case_two) {
        // One planted bottom angle pushes spread(U) into [pi, 2*pi) while the
        // ascending sum stays above -pi thanks to the small V cap.
        const double cap_v2 = std::min(0.3, 0.95 * (theta_v + pi));
        const double s_max = std::min(theta_u + pi, pi + theta_u + theta_v - cap_v2);
        if (!(s_max > pi)) throw InfeasibleAnglesError("equality_pair: no room for case-(ii) spread");
        const double s = pi + rng.next_uniform(0.02, 0.9) * (s_max - pi);
        ang_u[1] = theta_u - s;
        for (int j = 2; j < n; ++j) ang_u[j] = theta_u - rng.next_uniform(0.01, 0.4);
        for (int j = 1; j < n; ++j) ang_v[j] = theta_v - rng.next_uniform(0.01 * cap_v2, cap_v2);
    } else {
        for (int j = 1; j < n; ++j) ang_u[j] = theta_u - rng.next_uniform(0.01 * cap_u, cap_u);
        for (int j = 1; j < n; ++j) ang_v[j] = theta_v - rng.next_uniform(0.01 * cap_v, cap_v);
    }

    UnitaryMatrix q = haar_unitary(n, rng);
    const Matrix& basis_u = q.entries();
    Matrix basis_v(n, n);
    basis_v.col(0) = basis_u.col(0);  // the shared top eigenvector
    if (n > 1) {
        UnitaryMatrix rot = haar_unitary(n - 1, rng);
        basis_v.rightCols(n - 1) = basis_u.rightCols(n - 1) * rot.entries();
    }
    return {from_eigenpairs(basis_u, ang_u), from_eigenpairs(basis_v, ang_v)};
}

std::pair<UnitaryMatrix, UnitaryMatrix> gap_pair(int n, double principal_gap, RngStream& rng) {
    if (n < 2) throw InfeasibleGapError("gap_pair: needs n >= 2");
    if (!(principal_gap > 0.0 && principal_gap <= pi / 2.0)) {
        throw InfeasibleGapError("gap_pair: principal_gap must lie in (0, pi/2]");
    }

    const double theta_u = rng.next_uniform(0.3, 1.2);
    const double theta_v = rng.next_uniform(0.3, std::min(1.2, pi - theta_u - 0.2));
    std::vector<double> ang_u(n), ang_v(n);
    ang_u[0] = theta_u;
    ang_v[0] = theta_v;
    for (int j = 1; j < n; ++j) ang_u[j] = theta_u - rng.next_uniform(0.3, 1.2);
    for (int j = 1; j < n; ++j) ang_v[j] = theta_v - rng.next_uniform(0.3, 1.2);

    UnitaryMatrix q = haar_unitary(n, rng);
    const Vector q1 = q.entries().col(0);

    // Tilt the shared direction by an exact principal angle gamma.
    Vector p(n);
    for (int i = 0; i < n; ++i) p(i) = rng.next_complex_gaussian();
    p -= q1 * q1.dot(p);
    double pn = p.norm();
    if (pn < 1e-12) { p = q.entries().col(1); pn = 1.0; }
    p /= pn;
    const double gamma = rng.next_uniform(principal_gap, pi / 2.0);
    Vector v1 = std::cos(gamma) * q1 + std::sin(gamma) * p;
    v1.normalize();

    Matrix basis_v = basis_with_first_column(v1);
    if (n > 1) {
        UnitaryMatrix rot = haar_unitary(n - 1, rng);
        basis_v.rightCols(n - 1) = basis_v.rightCols(n - 1) * rot.entries();
    }
    return {from_eigenpairs(q.entries(), ang_u), from_eigenpairs(basis_v, ang_v)};
}

namespace {

// Case-(ii) pair by explicit spectrum windows; case (iii) swaps the roles.
std::pair<UnitaryMatrix, UnitaryMatrix> case_targeted_pair(const SampleSpec& spec, RngStream& rng) {
    const int n = std::max(2, spec.n);
    const double top_u = rng.next_uniform(0.3, 0.8);
    const double s = rng.next_uniform(pi + 0.02, pi + 0.25);
    const double bot_u = top_u - s;
    const double top_v = rng.next_uniform(0.05, std::min(0.6, pi - top_u - 0.05));
    const double bot_v = rng.next_uniform(std::max(-0.5, -pi - bot_u + 0.05), 0.0);

    std::vector<double> ang_u(n), ang_v(n);
    ang_u[0] = top_u;
    ang_u[1] = bot_u;
    for (int j = 2; j < n; ++j) ang_u[j] = rng.next_uniform(bot_u + 0.02, top_u - 0.02);
    ang_v[0] = top_v;
    ang_v[1] = bot_v;
    for (int j = 2; j < n; ++j) ang_v[j] = rng.next_uniform(bot_v + 0.01, top_v - 0.01);

    UnitaryMatrix u = unitary_with_spectrum(ang_u, rng);
    UnitaryMatrix v = unitary_with_spectrum(ang_v, rng);
    if (spec.case_target == CaseTarget::case_iii) return {std::move(v), std::move(u)};
    return {std::move(u), std::move(v)};
}

}  // namespace

UnitaryMatrix sample_unitary(const SampleSpec& spec, std::uint64_t trial) {
    spec.validate();
    RngStream rng(spec.seed, trial);
    switch (spec.kind) {
        case SampleKind::haar: return haar_unitary(spec.n, rng);
        case SampleKind::fixed_spectrum: return unitary_with_spectrum(spec.spectrum, rng);
        default:
            throw ConfigInvalidError("sample_unitary: kind " + to_string(spec.kind) +
                                     " produces pairs; use sample_pair");
    }
}

std::pair<UnitaryMatrix, UnitaryMatrix> sample_pair(const SampleSpec& spec, std::uint64_t trial) {
    spec.validate();
    RngStream rng(spec.seed, trial);
    switch (spec.kind) {
        case SampleKind::haar: {
            UnitaryMatrix u = haar_unitary(spec.n, rng);
            UnitaryMatrix v = haar_unitary(spec.n, rng);
            return {std::move(u), std::move(v)};
        }
        case SampleKind::fixed_spectrum: {
            UnitaryMatrix u = unitary_with_spectrum(spec.spectrum, rng);
            UnitaryMatrix v = unitary_with_spectrum(spec.spectrum, rng);
            return {std::move(u), std::move(v)};
        }
        case SampleKind::case_targeted: return case_targeted_pair(spec, rng);
        case SampleKind::equality_planted: {
            const double theta_u = rng.next_uniform(spec.equality_case_two ? 0.3 : 0.2, 1.2);
            const double theta_v = rng.next_uniform(0.2, std::min(1.2, pi - theta_u));
            return equality_pair(spec.n, theta_u, theta_v, rng, spec.equality_case_two);
        }
        case SampleKind::gap_planted: return gap_pair(spec.n, spec.planted_gap, rng);
    }
    throw ConfigInvalidError("sample_pair: unknown kind");
}

}  // namespace uniarg

#include "uniarg/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "uniarg/sampling.hpp"

namespace uniarg {

double quadratic_form_arg(const UnitaryMatrix& u, const Vector& psi,
                          const ToleranceProfile& profile) {
    if (psi.size() != u.dim()) throw AmbientMismatchError("quadratic_form_arg: size mismatch");
    if (std::abs(psi.norm() - 1.0) > profile.tol_ortho) {
        throw ConfigInvalidError("quadratic_form_arg: psi is not a unit vector");
    }
    const Complex z = psi.dot(u.entries() * psi);
    if (std::abs(z) < profile.tol_eq) {
        throw OriginContactError("quadratic_form_arg: form value at the origin");
    }
    return std::atan2(z.imag(), z.real());
}

// ------------------------- product-phase decomposition -----------------------

namespace {

void require_product_phase_preconditions(const EigenSystem& sys_u, const EigenSystem& sys_v) {
    const double top = sys_u.desc_angle(0) + sys_v.desc_angle(0);
    const double bot = -sys_u.asc_angle(0) - sys_v.asc_angle(0);
    if (!(sys_u.spread() < pi) || !(sys_v.spread() < pi) || !(top < pi) || !(bot < pi)) {
        throw SpreadPreconditionError(
            "product_phase_decomposition: strict spread conditions violated");
    }
}

ProductPhase phase_at(const UnitaryMatrix& u, const UnitaryMatrix& v, const EigenSystem& sys_w,
                      int j, const ToleranceProfile& profile) {
    const int n = sys_w.dim();
    if (j < 1 || j > n) throw IndexOutOfRangeError("product_phase_decomposition: bad index");
    const int col = sys_w.perm_desc[j - 1];
    const Vector w = sys_w.vectors.col(col);
    ProductPhase p;
    p.arg_u = quadratic_form_arg(u, w, profile);
    p.arg_v = quadratic_form_arg(v, w, profile);
    p.theta = sys_w.angles[col];
    p.degenerate = sys_w.clusters[sys_w.cluster_of[col]].size() > 1;
    return p;
}

}  // namespace

ProductPhase product_phase_decomposition(const UnitaryMatrix& u, const UnitaryMatrix& v, int j,
                                         const ToleranceProfile& profile) {
    require_product_phase_preconditions(eig_unitary(u, profile), eig_unitary(v, profile));
    UnitaryMatrix w = make_unitary(u.entries() * v.entries(), profile);
    EigenSystem sys_w = eig_unitary(w, profile);
    return phase_at(u, v, sys_w, j, profile);
}

std::vector<ProductPhase> product_phase_all(const UnitaryMatrix& u, const UnitaryMatrix& v,
                                            const ToleranceProfile& profile) {
    require_product_phase_preconditions(eig_unitary(u, profile), eig_unitary(v, profile));
    UnitaryMatrix w = make_unitary(u.entries() * v.entries(), profile);
    EigenSystem sys_w = eig_unitary(w, profile);
    std::vector<ProductPhase> phases;
    phases.reserve(sys_w.dim());
    for (int j = 1; j <= sys_w.dim(); ++j) phases.push_back(phase_at(u, v, sys_w, j, profile));
    return phases;
}

// --------------------------- support-function sweep --------------------------

namespace {

struct BoundaryPoint {
    Complex z;
    Vector x;
    double arg = 0.0;
};

// Boundary point of the numerical range of `a` in support direction phi:
// the top eigenvector of the Hermitian part of e^{-i phi} a.
BoundaryPoint boundary_point(const Matrix& a, double phi, double tol_eq) {
    const Complex rot = std::polar(1.0, -phi);
    const Matrix h = 0.5 * (rot * a + std::conj(rot) * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("max_arg_on_subspace: support eigenproblem failed");
    }
    BoundaryPoint p;
    p.x = solver.eigenvectors().col(a.rows() - 1);
    p.z = p.x.dot(a * p.x);
    if (std::abs(p.z) < tol_eq) {
        throw OriginContactError("max_arg_on_subspace: numerical range touches the origin");
    }
    p.arg = std::atan2(p.z.imag(), p.z.real());
    return p;
}

// Extremal argument over the boundary, coarse probe grid plus golden-section
// refinement.  sign = +1 maximizes, -1 minimizes.
BoundaryPoint extremal_arg(const Matrix& a, double sign, double tol_eq) {
    constexpr int kProbes = 360;
    constexpr double kPhiTol = 1e-10;
    const double step = 2.0 * pi / kProbes;

    BoundaryPoint best;
    double best_phi = 0.0;
    bool have_best = false;
    auto probe = [&](double phi) {
        BoundaryPoint p = boundary_point(a, phi, tol_eq);
        if (!have_best || sign * p.arg > sign * best.arg) {
            best = p;
            best_phi = phi;
            have_best = true;
        }
        return p.arg;
    };

    for (int k = 0; k < kProbes; ++k) probe(k * step);
    double lo = best_phi - step;
    double hi = best_phi + step;

    // Golden-section on the bracketing arc; plateaus at polygon vertices are
    // handled because every interior point of the plateau attains the value.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = sign * probe(c);
    double fd = sign * probe(d);
    while (hi - lo > kPhiTol) {
        if (fc < fd) {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = sign * probe(d);
        } else {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = sign * probe(c);
        }
    }
    return best;
}

ArgRange sweep_compression(const Matrix& a, double tol_eq) {
    BoundaryPoint top = extremal_arg(a, +1.0, tol_eq);
    BoundaryPoint bottom = extremal_arg(a, -1.0, tol_eq);
    ArgRange range;
    range.max_arg = top.arg;
    range.attained_max_vector = top.x;
    range.min_arg = bottom.arg;
    range.attained_min_vector = bottom.x;
    return range;
}

}  // namespace

ArgRange max_arg_on_subspace(const UnitaryMatrix& u, const Subspace& h,
                             const ToleranceProfile& profile) {
    if (h.ambient_dim != u.dim()) throw AmbientMismatchError("max_arg_on_subspace: ambient mismatch");
    if (h.dim() < 1) throw ConfigInvalidError("max_arg_on_subspace: empty subspace");
    EigenSystem sys = eig_unitary(u, profile);
    if (!(sys.spread() < pi)) {
        throw SpreadPreconditionError("max_arg_on_subspace: spread must be below pi");
    }
    const Matrix a = h.basis.adjoint() * u.entries() * h.basis;
    ArgRange range = sweep_compression(a, profile.tol_eq);
    range.attained_max_vector = h.basis * range.attained_max_vector;
    range.attained_min_vector = h.basis * range.attained_min_vector;
    return range;
}

MinMaxReport minmax_verify(const UnitaryMatrix& u, int j, int trials, std::uint64_t rng_seed,
                           const ToleranceProfile& profile) {
    const int n = u.dim();
    if (j < 1 || j > n) throw IndexOutOfRangeError("minmax_verify: index out of range");
    if (trials < 0) throw ConfigInvalidError("minmax_verify: negative trial count");
    EigenSystem sys = eig_unitary(u, profile);
    if (!(sys.spread() < pi)) {
        throw SpreadPreconditionError("minmax_verify: spread must be below pi");
    }

    MinMaxReport report;
    report.j = j;
    report.trials = trials;
    report.theta = sys.desc_angle(j - 1);

    const int dim = n - j + 1;
    Matrix extremizer(n, dim);
    for (int k = 0; k < dim; ++k) extremizer.col(k) = sys.vectors.col(sys.perm_desc[j - 1 + k]);
    ArgRange ext = sweep_compression(extremizer.adjoint() * u.entries() * extremizer, profile.tol_eq);
    report.extremizer_max_arg = ext.max_arg;
    report.extremizer_ok = std::abs(ext.max_arg - report.theta) <= profile.tol_eq;

    std::vector<double> margins(static_cast<std::size_t>(std::max(trials, 0)));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        try {
            RngStream rng(rng_seed, static_cast<std::uint64_t>(t));
            Subspace h = haar_subspace(n, dim, rng, profile);
            const Matrix a = h.basis.adjoint() * u.entries() * h.basis;
            margins[t] = sweep_compression(a, profile.tol_eq).max_arg - report.theta;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
            margins[t] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (failure) std::rethrow_exception(failure);

    report.worst_margin = trials > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    for (int t = 0; t < trials; ++t) {
        if (margins[t] >= -profile.tol_eq) ++report.sampled_ok;
        if (margins[t] < report.worst_margin) {
            report.worst_margin = margins[t];
            report.worst_trial = static_cast<std::uint64_t>(t);
        }
    }
    return report;
}

}  // namespace uniarg

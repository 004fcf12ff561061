#include "uniarg/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uniarg {

ToleranceProfile ToleranceProfile::for_dim(int n) {
    ToleranceProfile p;
    p.tol_unitary = 1e-10 * n;
    p.tol_recon = 1e-9 * n;
    p.tol_ortho = 1e-10;
    p.tol_cluster = 1e-7;
    p.tol_eq = 1e-8;
    p.tol_principal_angle = 1e-8;
    return p;
}

void ToleranceProfile::validate() const {
    const double vals[] = {tol_unitary, tol_recon,         tol_ortho,
                           tol_cluster, tol_eq,            tol_principal_angle};
    for (double v : vals) {
        if (!(v > 0.0)) throw ConfigInvalidError("ToleranceProfile: tolerances must be strictly positive");
    }
    if (!(tol_cluster > tol_recon)) {
        throw ConfigInvalidError("ToleranceProfile: tol_cluster must exceed tol_recon");
    }
}

double principal_value(double x) {
    if (!std::isfinite(x)) throw NonFiniteError("principal_value: non-finite input");
    if (x > -pi && x <= pi) return x;  // identity on the principal branch
    double t = std::fmod(x + pi, 2.0 * pi);
    if (t <= 0.0) t += 2.0 * pi;  // t in (0, 2*pi]
    return t - pi;
}

double circle_distance(double a, double b) {
    double d = std::abs(a - b);
    d = std::fmod(d, 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

UnitaryMatrix make_unitary(const Matrix& entries, const ToleranceProfile& profile) {
    if (entries.rows() != entries.cols()) {
        throw NotSquareError("make_unitary: entries must be square");
    }
    if (entries.rows() < 1) {
        throw NotSquareError("make_unitary: dimension must be >= 1");
    }
    if (!entries.allFinite()) {
        throw NonFiniteError("make_unitary: entries contain non-finite values");
    }
    const int n = static_cast<int>(entries.rows());
    Matrix gram = entries.adjoint() * entries - Matrix::Identity(n, n);
    // Gram defect is Hermitian; the operator norm is its extremal eigenvalue.
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    double defect = 0.0;
    if (es.info() == Eigen::Success) {
        defect = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)));
    } else {
        defect = operator_norm(gram);
    }
    if (defect > profile.tol_unitary) {
        throw NotUnitaryError("make_unitary: unitarity defect " + std::to_string(defect) +
                                  " exceeds tolerance " + std::to_string(profile.tol_unitary),
                              defect);
    }
    return UnitaryMatrix(entries, defect);
}

namespace {

std::vector<int> stable_perm(const RealVector& angles, bool descending, bool absolute) {
    std::vector<int> perm(angles.size());
    std::iota(perm.begin(), perm.end(), 0);
    auto key = [&](int i) { return absolute ? std::abs(angles[i]) : angles[i]; };
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) {
        return descending ? key(i) > key(j) : key(i) < key(j);
    });
    return perm;
}

}  // namespace

void EigenSystem::refresh_orderings(double tol_cluster) {
    perm_desc = stable_perm(angles, /*descending=*/true, /*absolute=*/false);
    perm_asc = stable_perm(angles, /*descending=*/false, /*absolute=*/false);
    perm_absdesc = stable_perm(angles, /*descending=*/true, /*absolute=*/true);

    // Degeneracy clustering runs on the circle: a gap <= tol_cluster between
    // circularly adjacent angles merges, including across the -pi/pi cut, so
    // a numerically split eigenvalue at the branch boundary stays one cluster.
    const int n = dim();
    clusters.clear();
    cluster_of.assign(n, -1);
    if (n == 0) return;

    std::vector<std::vector<int>> groups;
    groups.push_back({perm_asc[0]});
    for (int k = 1; k < n; ++k) {
        int i = perm_asc[k];
        int prev = perm_asc[k - 1];
        if (angles[i] - angles[prev] <= tol_cluster) {
            groups.back().push_back(i);
        } else {
            groups.push_back({i});
        }
    }
    // Wrap gap between the largest and smallest angle.
    if (groups.size() > 1) {
        double wrap = (angles[perm_asc[0]] + 2.0 * pi) - angles[perm_asc[n - 1]];
        if (wrap <= tol_cluster) {
            std::vector<int> merged = groups.back();
            merged.insert(merged.end(), groups.front().begin(), groups.front().end());
            groups.back() = std::move(merged);
            groups.erase(groups.begin());
        }
    }
    clusters = std::move(groups);
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
        for (int i : clusters[c]) cluster_of[i] = c;
    }
}

Subspace Subspace::from_basis(Matrix basis, const ToleranceProfile& profile) {
    Subspace s;
    s.ambient_dim = static_cast<int>(basis.rows());
    if (s.ambient_dim < 1) throw AmbientMismatchError("Subspace: ambient dimension must be >= 1");
    const int k = static_cast<int>(basis.cols());
    if (k > s.ambient_dim) throw AmbientMismatchError("Subspace: dimension exceeds ambient dimension");
    if (k > 0) {
        Matrix gram = basis.adjoint() * basis - Matrix::Identity(k, k);
        if (gram.cwiseAbs().maxCoeff() > profile.tol_ortho) {
            throw ConfigInvalidError("Subspace: basis columns are not orthonormal within tolerance");
        }
    }
    s.basis = std::move(basis);
    return s;
}

Subspace Subspace::full(int n) {
    Subspace s;
    s.ambient_dim = n;
    s.basis = Matrix::Identity(n, n);
    return s;
}

}  // namespace uniarg

#include "uniarg/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uniarg {

namespace {

// Groups indices of a sorted real vector into runs separated by gaps > tol.
std::vector<std::vector<int>> gap_groups(const RealVector& vals, double tol) {
    std::vector<int> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });
    std::vector<std::vector<int>> groups;
    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
        if (k == 0 || vals[order[k]] - vals[order[k - 1]] > tol) groups.push_back({});
        groups.back().push_back(order[k]);
    }
    return groups;
}

// Solver mixing between eigenvectors separated by gap g in the solved
// coordinate is ~eps/g, and its reconstruction cost is that times the full
// eigenvalue distance. The ladder keeps the product bounded: a split at
// tolerance t only happens inside a group whose diameter a coarser rung
// already capped, and groups that stay flat in both coordinates down to
// kEmitTol are degenerate to working precision, where any basis serves.
constexpr double kCoarseTol = 1e-5;
constexpr double kLadderFactor = 1e-3;
constexpr double kEmitTol = 1e-12;

// Splits the span of `block` on the compression of one Hermitian coordinate
// of U (real or imaginary part), alternating coordinates; the tolerance
// tightens only when both are flat, and every successful split resets the
// ladder for its subgroups.
void refine_block(const Matrix& herm_re, const Matrix& herm_im, const Matrix& block,
                  bool use_re, double tol, bool other_flat, Matrix& vectors, int& filled) {
    const int k = static_cast<int>(block.cols());
    if (k == 1 || tol < kEmitTol) {
        vectors.middleCols(filled, k) = block;
        filled += k;
        return;
    }
    const Matrix& coord = use_re ? herm_re : herm_im;
    Matrix compressed = block.adjoint() * coord * block;
    compressed = (compressed + compressed.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(compressed);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("eig_unitary: compressed coordinate solve did not converge");
    }
    const auto groups = gap_groups(es.eigenvalues(), tol);
    if (groups.size() == 1) {
        if (other_flat) {
            refine_block(herm_re, herm_im, block, !use_re, tol * kLadderFactor, false, vectors,
                         filled);
        } else {
            refine_block(herm_re, herm_im, block, !use_re, tol, true, vectors, filled);
        }
        return;
    }
    const Matrix rotated = block * es.eigenvectors();
    for (const auto& group : groups) {
        Matrix sub(block.rows(), group.size());
        for (int c = 0; c < static_cast<int>(group.size()); ++c) {
            sub.col(c) = rotated.col(group[c]);
        }
        refine_block(herm_re, herm_im, sub, !use_re, kCoarseTol, false, vectors, filled);
    }
}

}  // namespace

EigenSystem eig_unitary(const UnitaryMatrix& u, const ToleranceProfile& profile) {
    const int n = u.dim();
    const Matrix& m = u.entries();

    Matrix herm_re = (m + m.adjoint()) / 2.0;
    Matrix herm_im = (m - m.adjoint()) / Complex(0.0, 2.0);

    Matrix vectors(n, n);
    int filled = 0;
    refine_block(herm_re, herm_im, Matrix::Identity(n, n), true, kCoarseTol, false, vectors,
                 filled);

    // Rayleigh quotients give the per-vector eigenvalue; project radially onto
    // the unit circle before taking the argument.
    EigenSystem sys;
    sys.vectors = std::move(vectors);
    sys.angles.resize(n);
    for (int j = 0; j < n; ++j) {
        Complex lambda = sys.vectors.col(j).dot(m * sys.vectors.col(j));
        double r = std::abs(lambda);
        if (r < 0.5) {
            throw ConvergenceError("eig_unitary: Rayleigh quotient off the unit circle");
        }
        lambda /= r;
        sys.angles[j] = principal_value(std::atan2(lambda.imag(), lambda.real()));
    }
    sys.refresh_orderings(profile.tol_cluster);

    // Certify the decomposition before handing it out.
    Matrix recon = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        Complex phase = std::polar(1.0, sys.angles[j]);
        recon.noalias() += phase * (sys.vectors.col(j) * sys.vectors.col(j).adjoint());
    }
    if (operator_norm(recon - m) > profile.tol_recon) {
        throw ConvergenceError("eig_unitary: reconstruction defect exceeds tol_recon");
    }
    Matrix gram = sys.vectors.adjoint() * sys.vectors - Matrix::Identity(n, n);
    if (gram.cwiseAbs().maxCoeff() > profile.tol_ortho) {
        throw ConvergenceError("eig_unitary: eigenbasis lost orthonormality");
    }
    return sys;
}

Subspace eigenspace(const EigenSystem& sys, const EigenspaceQuery& q,
                    const ToleranceProfile& profile) {
    const int n = sys.dim();
    if (q.index < 1 || q.index > n) {
        throw IndexOutOfRangeError("eigenspace: index " + std::to_string(q.index) +
                                   " outside 1.." + std::to_string(n));
    }
    const std::vector<int>* perm = nullptr;
    switch (q.order) {
        case AngleOrder::descending: perm = &sys.perm_desc; break;
        case AngleOrder::ascending: perm = &sys.perm_asc; break;
        case AngleOrder::absolute_descending: perm = &sys.perm_absdesc; break;
    }
    int original = (*perm)[q.index - 1];
    std::vector<int> members;
    if (q.cluster) {
        members = sys.clusters[sys.cluster_of[original]];
    } else {
        members = {original};
    }
    Matrix basis(n, members.size());
    for (int c = 0; c < static_cast<int>(members.size()); ++c) {
        basis.col(c) = sys.vectors.col(members[c]);
    }
    return Subspace::from_basis(std::move(basis), profile);
}

Subspace top_eigenspace(const EigenSystem& sys, const ToleranceProfile& profile) {
    return eigenspace(sys, EigenspaceQuery{AngleOrder::descending, 1, true}, profile);
}

InverseAngleResult inverse_angle_map(const EigenSystem& sys, const ToleranceProfile& profile) {
    InverseAngleResult out;
    out.system.vectors = sys.vectors;
    out.system.angles.resize(sys.dim());
    for (int j = 0; j < sys.dim(); ++j) {
        if (sys.angles[j] == pi) out.branch_cut_hit = true;
        out.system.angles[j] = principal_value(-sys.angles[j]);
    }
    out.system.refresh_orderings(profile.tol_cluster);
    return out;
}

}  // namespace uniarg

// eig.hpp — Eigendecomposition of unitary matrices into EigenSystem form,
// degeneracy clustering, and eigenspace extraction.

#pragma once

#include "uniarg/types.hpp"

namespace uniarg {

enum class AngleOrder { descending, ascending, absolute_descending };

// index is 1-based, matching the theta_j notation; cluster = true widens the
// query from the single ordered eigenvector to its full degenerate eigenspace.
struct EigenspaceQuery {
    AngleOrder order = AngleOrder::descending;
    int index = 1;
    bool cluster = false;
};

// Decomposes a certified unitary into angles + orthonormal eigenvectors.
//
// Route: split U = C + iS with C = (U + U^H)/2 and S = (U - U^H)/(2i), both
// Hermitian and commuting because U is normal. Diagonalize C, then split each
// near-degenerate C eigenspace by diagonalizing the compression of S onto it.
// The final vectors are columns of products of unitaries, so mutual
// orthonormality holds to machine precision regardless of eigenvalue gaps.
// Per-vector eigenvalues are Rayleigh quotients, radially normalized to the
// unit circle before arguments are taken.
//
// Throws ConvergenceError when a Hermitian solve fails or the reconstruction
// defect exceeds profile.tol_recon.
EigenSystem eig_unitary(const UnitaryMatrix& u, const ToleranceProfile& profile);

// Extracts the eigenspace named by the query: a single ordered eigenvector,
// or the whole cluster containing it when q.cluster is set.
Subspace eigenspace(const EigenSystem& sys, const EigenspaceQuery& q,
                    const ToleranceProfile& profile);

// Top descending eigenspace with degeneracy (the Omega-down space).
Subspace top_eigenspace(const EigenSystem& sys, const ToleranceProfile& profile);

struct InverseAngleResult {
    EigenSystem system;
    // Set when some angle equals +pi exactly: -pi wraps back to +pi, so the
    // identity asc_j(U^-1) = -desc_j(U) fails at that index by branch choice.
    bool branch_cut_hit = false;
};

// EigenSystem of U^-1 from the EigenSystem of U: angles negated and
// principal-valued, vectors unchanged, orderings and clusters recomputed.
InverseAngleResult inverse_angle_map(const EigenSystem& sys, const ToleranceProfile& profile);

}  // namespace uniarg

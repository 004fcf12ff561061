// types.hpp — Shared numerical objects: tolerance profiles, certified unitary
// matrices, eigenangle systems, subspaces, and the principal-value convention.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace uniarg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;

// ------------------------------- Errors -------------------------------------
//
// One exception type per contract violation so callers can catch precisely.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquareError : Error { using Error::Error; };

struct NotUnitaryError : Error {
    double defect;
    NotUnitaryError(const std::string& what, double d) : Error(what), defect(d) {}
};

struct NonFiniteError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct ExponentOutOfRangeError : Error { using Error::Error; };
struct NotCaseTwoError : Error { using Error::Error; };
struct EmptyIntervalError : Error { using Error::Error; };
struct SpreadPreconditionError : Error { using Error::Error; };
struct OriginContactError : Error { using Error::Error; };
struct AmbientMismatchError : Error { using Error::Error; };
struct NotReducibleCaseError : Error { using Error::Error; };
struct AngleOutOfRangeError : Error { using Error::Error; };
struct InfeasibleAnglesError : Error { using Error::Error; };
struct InfeasibleGapError : Error { using Error::Error; };
struct ConfigInvalidError : Error { using Error::Error; };

// --------------------------- Tolerance profile -------------------------------

struct ToleranceProfile {
    double tol_unitary;          // unitarity defect bound for certification
    double tol_recon;            // spectral reconstruction defect bound
    double tol_ortho;            // pairwise orthonormality bound
    double tol_cluster;          // angle gap below which eigenvalues are degenerate
    double tol_eq;               // generic angle/scalar equality tolerance
    double tol_principal_angle;  // zero-principal-angle threshold for intersections

    // Defaults scale the backward-error-sensitive bounds with the dimension.
    static ToleranceProfile for_dim(int n);

    // All entries strictly positive and tol_cluster > tol_recon.
    void validate() const;
};

// ------------------------------ Angle helpers -------------------------------

// Maps x to the unique representative in (-pi, pi]; the branch boundary -pi
// maps to +pi exactly. Throws NonFiniteError on NaN/inf.
double principal_value(double x);

// Distance between two angles on the circle, in [0, pi].
double circle_distance(double a, double b);

// ------------------------------ UnitaryMatrix -------------------------------

class UnitaryMatrix {
public:
    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double unitarity_defect() const { return defect_; }

    // Adjoint; reuses the certified defect since ||U^H U - I|| = ||U U^H - I||
    // up to unitary invariance of the operator norm.
    UnitaryMatrix inverse() const { return UnitaryMatrix(entries_.adjoint(), defect_); }

private:
    UnitaryMatrix(Matrix entries, double defect)
        : entries_(std::move(entries)), defect_(defect) {}

    Matrix entries_;
    double defect_;

    friend UnitaryMatrix make_unitary(const Matrix&, const ToleranceProfile&);
};

// Certifies entries as unitary within profile.tol_unitary.
// Throws NotSquareError / NotUnitaryError.
UnitaryMatrix make_unitary(const Matrix& entries, const ToleranceProfile& profile);

// Operator (spectral) norm, computed exactly at these dimensions.
double operator_norm(const Matrix& m);

// -------------------------------- EigenSystem --------------------------------
//
// Eigenangles in (-pi, pi] with an orthonormal eigenbasis, plus the three
// orderings (descending, ascending, |angle|-descending) and the degeneracy
// clusters. Index arrays are 0-based; orderings are stable in original index.

struct EigenSystem {
    RealVector angles;                      // original (solver) order
    Matrix vectors;                         // columns, orthonormal
    std::vector<int> perm_desc;             // angles[perm_desc[0]] is the top angle
    std::vector<int> perm_asc;
    std::vector<int> perm_absdesc;
    std::vector<std::vector<int>> clusters; // partition of 0..n-1 (circular gaps)
    std::vector<int> cluster_of;            // original index -> cluster id

    int dim() const { return static_cast<int>(angles.size()); }

    double desc_angle(int k) const { return angles[perm_desc.at(k)]; }     // k = 0 is top
    double asc_angle(int k) const { return angles[perm_asc.at(k)]; }
    double absdesc_angle(int k) const { return angles[perm_absdesc.at(k)]; }

    // Angular width of the spectrum in principal values.
    double spread() const { return desc_angle(0) - asc_angle(0); }

    // Rebuilds orderings and clusters from `angles`; called by producers.
    void refresh_orderings(double tol_cluster);
};

// ---------------------------------- Subspace ---------------------------------

struct Subspace {
    int ambient_dim = 0;
    Matrix basis;  // ambient_dim x k, orthonormal columns; k = 0 is the trivial subspace

    int dim() const { return static_cast<int>(basis.cols()); }

    // Validates basis^H basis = I within profile.tol_ortho.
    static Subspace from_basis(Matrix basis, const ToleranceProfile& profile);

    // The full space C^n.
    static Subspace full(int n);
};

}  // namespace uniarg

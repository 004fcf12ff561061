// test_eig.cpp — eigendecomposition, clustering, eigenspaces, inverse map.

#include "doctest.h"

#include "uniarg/eig.hpp"
#include "uniarg/sampling.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace uniarg;
using uniarg::testing::charpoly_eigenangles;
using uniarg::testing::circle_multiset_distance;

namespace {

Matrix diag_phases(const std::vector<double>& angles) {
    const int n = static_cast<int>(angles.size());
    Matrix m = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = std::polar(1.0, angles[j]);
    return m;
}

std::vector<double> sorted_angles(const EigenSystem& sys) {
    std::vector<double> a(sys.angles.data(), sys.angles.data() + sys.angles.size());
    std::sort(a.begin(), a.end());
    return a;
}

}  // namespace

TEST_CASE("identity decomposes to all-zero angles in one cluster") {
    const auto profile = ToleranceProfile::for_dim(4);
    const auto u = make_unitary(Matrix::Identity(4, 4), profile);
    const auto sys = eig_unitary(u, profile);

    REQUIRE(sys.angles.size() == 4);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(sys.angles(j)) <= 1e-14);
    CHECK(sys.clusters.size() == 1);
    CHECK(sys.clusters[0].size() == 4);
    CHECK(sys.spread() <= 1e-14);
}

TEST_CASE("diagonal unitary yields the three orderings") {
    const auto profile = ToleranceProfile::for_dim(3);
    const auto u = make_unitary(diag_phases({2.0, -1.0, 0.0}), profile);
    const auto sys = eig_unitary(u, profile);

    CHECK(sys.desc_angle(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sys.desc_angle(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sys.desc_angle(2) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK(sys.asc_angle(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sys.asc_angle(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sys.asc_angle(2) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(sys.absdesc_angle(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sys.absdesc_angle(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sys.absdesc_angle(2) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(sys.spread() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("haar 5x5 reconstructs and matches the characteristic-polynomial roots") {
    const auto profile = ToleranceProfile::for_dim(5);
    RngStream rng(20240517u, 1u);
    const auto u = haar_unitary(5, rng);
    const auto sys = eig_unitary(u, profile);

    Matrix recon = Matrix::Zero(5, 5);
    for (int j = 0; j < 5; ++j) {
        recon += std::polar(1.0, sys.angles(j)) * sys.vectors.col(j) * sys.vectors.col(j).adjoint();
    }
    CHECK(operator_norm(recon - u.entries()) <= profile.tol_recon);

    const auto oracle = charpoly_eigenangles(u.entries());
    auto mine = sorted_angles(sys);
    CHECK(circle_multiset_distance(mine, oracle) <= 1e-8);
}

TEST_CASE("decomposition invariants hold across dimensions") {
    for (int n = 2; n <= 8; ++n) {
        const auto profile = ToleranceProfile::for_dim(n);
        for (int trial = 0; trial < 150; ++trial) {
            RngStream rng(777u, static_cast<std::uint64_t>(n * 1000 + trial));
            const auto u = haar_unitary(n, rng);
            const auto sys = eig_unitary(u, profile);

            // Reconstruction.
            Matrix recon = Matrix::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                recon += std::polar(1.0, sys.angles(j)) * sys.vectors.col(j) *
                         sys.vectors.col(j).adjoint();
            }
            REQUIRE(operator_norm(recon - u.entries()) <= profile.tol_recon);

            // Orthonormality of the eigenvector frame.
            Matrix gram = sys.vectors.adjoint() * sys.vectors - Matrix::Identity(n, n);
            REQUIRE(gram.cwiseAbs().maxCoeff() <= profile.tol_ortho);

            // Descending ordering is non-increasing.
            for (int k = 0; k + 1 < n; ++k) REQUIRE(sys.desc_angle(k) >= sys.desc_angle(k + 1));

            // Clusters partition the indices.
            std::vector<int> seen(n, 0);
            for (const auto& c : sys.clusters)
                for (int idx : c) seen[idx] += 1;
            for (int j = 0; j < n; ++j) REQUIRE(seen[j] == 1);

            // Intra-cluster circular gaps within tol_cluster, inter-cluster above it.
            for (const auto& c : sys.clusters) {
                for (int a : c)
                    for (int b : c)
                        REQUIRE(circle_distance(sys.angles(a), sys.angles(b)) <=
                                profile.tol_cluster * static_cast<double>(c.size()));
            }
            for (std::size_t ci = 0; ci < sys.clusters.size(); ++ci) {
                for (std::size_t cj = ci + 1; cj < sys.clusters.size(); ++cj) {
                    double closest = 10.0;
                    for (int a : sys.clusters[ci])
                        for (int b : sys.clusters[cj])
                            closest = std::min(closest,
                                               circle_distance(sys.angles(a), sys.angles(b)));
                    REQUIRE(closest > profile.tol_cluster);
                }
            }
        }
    }
}

TEST_CASE("conjugation leaves the angle multiset unchanged") {
    const int n = 5;
    const auto profile = ToleranceProfile::for_dim(n);
    RngStream rng(991u, 3u);
    const auto u = haar_unitary(n, rng);
    const auto q = haar_unitary(n, rng);
    const auto conj = make_unitary(q.entries() * u.entries() * q.entries().adjoint(), profile);

    auto a = sorted_angles(eig_unitary(u, profile));
    auto b = sorted_angles(eig_unitary(conj, profile));
    CHECK(circle_multiset_distance(a, b) <= profile.tol_eq);
}

TEST_CASE("eigenspace extraction respects degeneracy") {
    const auto profile = ToleranceProfile::for_dim(3);

    SUBCASE("identity: the top cluster is the whole space") {
        const auto u = make_unitary(Matrix::Identity(3, 3), profile);
        const auto sys = eig_unitary(u, profile);
        const auto s = eigenspace(sys, {AngleOrder::descending, 1, true}, profile);
        CHECK(s.dim() == 3);
    }

    SUBCASE("two-fold top angle gives a two-dimensional cluster space") {
        const auto u = make_unitary(diag_phases({1.0, 1.0, 0.0}), profile);
        const auto sys = eig_unitary(u, profile);
        const auto s = eigenspace(sys, {AngleOrder::descending, 1, true}, profile);
        CHECK(s.dim() == 2);
        const auto top = top_eigenspace(sys, profile);
        CHECK(top.dim() == 2);
    }

    SUBCASE("simple spectrum: the second descending vector spans e2") {
        const auto u = make_unitary(diag_phases({1.0, 0.5, 0.0}), profile);
        const auto sys = eig_unitary(u, profile);
        const auto s = eigenspace(sys, {AngleOrder::descending, 2, false}, profile);
        REQUIRE(s.dim() == 1);
        // |<e2, b>| = 1 up to phase.
        CHECK(std::abs(s.basis(1, 0)) == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("index out of range throws") {
        const auto u = make_unitary(Matrix::Identity(3, 3), profile);
        const auto sys = eig_unitary(u, profile);
        CHECK_THROWS_AS(eigenspace(sys, {AngleOrder::descending, 4, false}, profile),
                        IndexOutOfRangeError);
        CHECK_THROWS_AS(eigenspace(sys, {AngleOrder::ascending, 0, false}, profile),
                        IndexOutOfRangeError);
    }
}

TEST_CASE("inverse angle map negates angles and keeps vectors") {
    const auto profile = ToleranceProfile::for_dim(2);

    SUBCASE("two-phase example") {
        const auto u = make_unitary(diag_phases({0.4, -0.9}), profile);
        const auto sys = eig_unitary(u, profile);
        const auto inv = inverse_angle_map(sys, profile);
        CHECK_FALSE(inv.branch_cut_hit);
        CHECK(inv.system.desc_angle(0) == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(inv.system.asc_angle(0) == doctest::Approx(-0.4).epsilon(1e-12));
    }

    SUBCASE("identity is its own inverse") {
        const auto u = make_unitary(Matrix::Identity(2, 2), profile);
        const auto inv = inverse_angle_map(eig_unitary(u, profile), profile);
        CHECK(std::abs(inv.system.angles(0)) <= 1e-14);
        CHECK(std::abs(inv.system.angles(1)) <= 1e-14);
    }

    SUBCASE("matches a direct decomposition of the inverse") {
        const int n = 5;
        const auto prof = ToleranceProfile::for_dim(n);
        RngStream rng(1234u, 9u);
        const auto u = haar_unitary(n, rng);
        const auto sys = eig_unitary(u, prof);
        const auto inv = inverse_angle_map(sys, prof);
        const auto direct = eig_unitary(u.inverse(), prof);

        auto a = sorted_angles(inv.system);
        auto b = sorted_angles(direct);
        CHECK(circle_multiset_distance(a, b) <= prof.tol_eq);
    }

    SUBCASE("ascending angles of the inverse mirror descending angles") {
        const int n = 6;
        const auto prof = ToleranceProfile::for_dim(n);
        for (int trial = 0; trial < 50; ++trial) {
            RngStream rng(555u, static_cast<std::uint64_t>(trial));
            const auto u = haar_unitary(n, rng);
            const auto sys = eig_unitary(u, prof);
            const auto inv = inverse_angle_map(sys, prof);
            REQUIRE_FALSE(inv.branch_cut_hit);  // Haar angles avoid +pi a.s.
            for (int k = 0; k < n; ++k)
                REQUIRE(inv.system.asc_angle(k) ==
                        doctest::Approx(-sys.desc_angle(k)).epsilon(1e-12));
        }
    }

    SUBCASE("angle at +pi flags the branch cut") {
        const auto u = make_unitary(diag_phases({std::numbers::pi, 0.0}), profile);
        const auto inv = inverse_angle_map(eig_unitary(u, profile), profile);
        CHECK(inv.branch_cut_hit);
        // -pi wraps back to +pi under the principal convention.
        CHECK(inv.system.desc_angle(0) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    }
}

TEST_CASE("near-degenerate spectra keep machine-precision orthonormality") {
    const int n = 3;
    const auto profile = ToleranceProfile::for_dim(n);
    RngStream rng(31337u, 0u);
    const auto u = unitary_with_spectrum({0.5, 0.5 + 1e-9, -0.5}, rng);
    const auto sys = eig_unitary(u, profile);

    Matrix gram = sys.vectors.adjoint() * sys.vectors - Matrix::Identity(n, n);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-10);

    // The 1e-9 split sits below tol_cluster, so the two top angles merge.
    CHECK(sys.clusters.size() == 2);
    const auto top = top_eigenspace(sys, profile);
    CHECK(top.dim() == 2);
}

TEST_CASE("clusters wrap across the branch cut") {
    const auto profile = ToleranceProfile::for_dim(2);
    RngStream rng(424242u, 0u);
    const auto u = unitary_with_spectrum({std::numbers::pi, -std::numbers::pi + 1e-9}, rng);
    const auto sys = eig_unitary(u, profile);
    // Circular distance between the two angles is 1e-9, one cluster.
    CHECK(sys.clusters.size() == 1);
    CHECK(sys.clusters[0].size() == 2);
}

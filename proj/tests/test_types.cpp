#include <cmath>
#include <limits>

#include "doctest.h"
#include "uniarg/types.hpp"

using namespace uniarg;

TEST_CASE("principal_value maps into (-pi, pi]") {
    CHECK(principal_value(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0).epsilon(1e-15));
    CHECK(principal_value(0.3) == 0.3);
    CHECK(principal_value(-pi) == pi);  // boundary maps to +pi exactly
    CHECK(principal_value(pi) == pi);
    CHECK(principal_value(0.0) == 0.0);
    CHECK(principal_value(-3.0 * pi) == pi);
}

TEST_CASE("principal_value is 2*pi periodic to a few ulp") {
    for (double x = -20.0; x <= 20.0; x += 0.0937) {
        const double a = principal_value(x);
        const double b = principal_value(x + 2.0 * pi);
        CHECK(std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * 20.0);
        CHECK(a > -pi);
        CHECK(a <= pi);
    }
}

TEST_CASE("principal_value rejects non-finite input") {
    CHECK_THROWS_AS(principal_value(std::numeric_limits<double>::infinity()), NonFiniteError);
    CHECK_THROWS_AS(principal_value(std::numeric_limits<double>::quiet_NaN()), NonFiniteError);
}

TEST_CASE("circle_distance wraps across the branch cut") {
    CHECK(circle_distance(pi, -pi + 0.1) == doctest::Approx(0.1));
    CHECK(circle_distance(3.0, -3.0) == doctest::Approx(2.0 * pi - 6.0));
    CHECK(circle_distance(0.2, 0.5) == doctest::Approx(0.3));
    CHECK(circle_distance(1.0, 1.0) == 0.0);
}

TEST_CASE("tolerance profile defaults scale with dimension") {
    const ToleranceProfile p = ToleranceProfile::for_dim(4);
    CHECK(p.tol_unitary == doctest::Approx(4e-10));
    CHECK(p.tol_recon == doctest::Approx(4e-9));
    CHECK(p.tol_ortho == doctest::Approx(1e-10));
    CHECK(p.tol_cluster == doctest::Approx(1e-7));
    CHECK(p.tol_eq == doctest::Approx(1e-8));
    CHECK(p.tol_principal_angle == doctest::Approx(1e-8));
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("tolerance profile validation") {
    ToleranceProfile p = ToleranceProfile::for_dim(2);
    p.tol_eq = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigInvalidError);

    p = ToleranceProfile::for_dim(2);
    p.tol_cluster = p.tol_recon;  // clustering must absorb reconstruction noise
    CHECK_THROWS_AS(p.validate(), ConfigInvalidError);
}

TEST_CASE("make_unitary accepts the identity with zero defect") {
    const ToleranceProfile profile = ToleranceProfile::for_dim(3);
    const UnitaryMatrix u = make_unitary(Matrix::Identity(3, 3), profile);
    CHECK(u.dim() == 3);
    CHECK(u.unitarity_defect() <= 1e-15);
}

TEST_CASE("make_unitary accepts diagonal phases") {
    const ToleranceProfile profile = ToleranceProfile::for_dim(2);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, pi / 2.0);
    m(1, 1) = std::polar(1.0, -pi / 3.0);
    const UnitaryMatrix u = make_unitary(m, profile);
    CHECK(u.unitarity_defect() <= 1e-14);
}

TEST_CASE("make_unitary rejects non-unitary and malformed input") {
    const ToleranceProfile profile = ToleranceProfile::for_dim(2);

    Matrix stretched = Matrix::Zero(2, 2);
    stretched(0, 0) = 2.0;
    stretched(1, 1) = 1.0;
    try {
        make_unitary(stretched, profile);
        FAIL("expected NotUnitaryError");
    } catch (const NotUnitaryError& e) {
        CHECK(e.defect == doctest::Approx(3.0));  // ||U'U - I|| = ||diag(3, 0)||
    }

    CHECK_THROWS_AS(make_unitary(Matrix::Zero(2, 3), profile), NotSquareError);

    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_unitary(bad, profile), NonFiniteError);
}

TEST_CASE("inverse is the adjoint and certifies the same defect") {
    const ToleranceProfile profile = ToleranceProfile::for_dim(2);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = Complex(0.0, 1.0);
    m(1, 0) = Complex(0.0, 1.0);
    const UnitaryMatrix u = make_unitary(m, profile);
    const UnitaryMatrix inv = u.inverse();
    CHECK(operator_norm(u.entries() * inv.entries() - Matrix::Identity(2, 2)) <= 1e-14);
    CHECK(inv.unitarity_defect() == u.unitarity_defect());
}

TEST_CASE("operator_norm is the largest singular value") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    CHECK(operator_norm(m) == doctest::Approx(3.0));
    CHECK(operator_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
}

TEST_CASE("subspace construction validates orthonormality") {
    const ToleranceProfile profile = ToleranceProfile::for_dim(3);

    Matrix good = Matrix::Zero(3, 2);
    good(0, 0) = 1.0;
    good(1, 1) = 1.0;
    const Subspace s = Subspace::from_basis(good, profile);
    CHECK(s.dim() == 2);
    CHECK(s.ambient_dim == 3);

    Matrix skewed = good;
    skewed(0, 1) = 0.5;  // columns no longer orthogonal
    CHECK_THROWS_AS(Subspace::from_basis(skewed, profile), ConfigInvalidError);

    const Subspace trivial = Subspace::from_basis(Matrix::Zero(3, 0), profile);
    CHECK(trivial.dim() == 0);

    const Subspace everything = Subspace::full(3);
    CHECK(everything.dim() == 3);
}

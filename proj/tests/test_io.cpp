// test_io.cpp — matrix and profile (de)serialization.

#include "doctest.h"

#include "uniarg/io.hpp"
#include "uniarg/sampling.hpp"

#include <cstdio>
#include <fstream>

using namespace uniarg;

TEST_CASE("matrices roundtrip through json") {
    RngStream rng(55u, 0u);
    const auto u = haar_unitary(4, rng);
    const auto j = matrix_to_json(u.entries());
    CHECK(j["n"] == 4);
    const Matrix back = matrix_from_json(j);
    CHECK((back - u.entries()).cwiseAbs().maxCoeff() == 0.0);  // %.17g is exact
}

TEST_CASE("malformed matrix json is rejected") {
    Json j{{"n", 2}, {"re", {1.0, 0.0, 0.0}}, {"im", {0.0, 0.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(matrix_from_json(j), ConfigInvalidError);
    Json missing{{"n", 2}, {"re", {1.0, 0.0, 0.0, 1.0}}};
    CHECK_THROWS_AS(matrix_from_json(missing), ConfigInvalidError);
    Json bad_n{{"n", 0}, {"re", Json::array()}, {"im", Json::array()}};
    CHECK_THROWS_AS(matrix_from_json(bad_n), ConfigInvalidError);
}

TEST_CASE("matrix files roundtrip") {
    RngStream rng(56u, 0u);
    const auto u = haar_unitary(3, rng);
    const std::string path = "io_test_matrix.json";
    save_matrix_file(u.entries(), path);
    const Matrix back = load_matrix_file(path);
    CHECK((back - u.entries()).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_matrix_file("does_not_exist.json"), ConfigInvalidError);
}

TEST_CASE("profiles override on top of dimension defaults") {
    const auto base = ToleranceProfile::for_dim(4);
    Json j{{"tol_eq", 1e-7}};
    const auto p = profile_from_json(j, base);
    CHECK(p.tol_eq == 1e-7);
    CHECK(p.tol_unitary == base.tol_unitary);

    Json unknown{{"tol_nope", 1.0}};
    CHECK_THROWS_AS(profile_from_json(unknown, base), ConfigInvalidError);
    Json bad{{"tol_cluster", 1e-12}};  // must stay above tol_recon
    CHECK_THROWS_AS(profile_from_json(bad, base), ConfigInvalidError);
}

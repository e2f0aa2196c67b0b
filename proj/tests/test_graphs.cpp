#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "peisert/graphs.hpp"

using namespace peisert;

TEST_CASE("adjacency matrices") {
  const FieldTable F = build_field(3, 2);
  const IntMatrix A = adjacency(F, GraphKind::Peisert);
  CHECK(A.rows() == 9);
  CHECK(A.is_symmetric());
  CHECK(A.trace() == 0);
  for (std::size_t i = 0; i < 9; ++i) {
    mpz_class deg = 0;
    for (std::size_t j = 0; j < 9; ++j) deg += A(i, j);
    CHECK(deg == 4);
  }
  // (u, v) adjacent iff v - u in {1, 2, x+1, 2x+2}
  CHECK(A(0, 4) == 1);
  CHECK(A(0, 3) == 0);
  CHECK(adjacency(F, GraphKind::Paley)(0, 3) == 1);
  CHECK_THROWS_AS(adjacency(build_field(3, 1), GraphKind::Peisert), std::invalid_argument);
}

TEST_CASE("laplacian and generalized matrices") {
  const FieldTable F = build_field(3, 2);
  const IntMatrix A = adjacency(F, GraphKind::Peisert);
  const IntMatrix L = laplacian(A);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(L(i, i) == 4);
    mpz_class s = 0;
    for (std::size_t j = 0; j < 9; ++j) s += L(i, j);
    CHECK(s == 0);
  }
  CHECK(generalized(A, -1, 4, 0) == L);
  CHECK(generalized(A, 1, 0, 0) == A);
  const IntMatrix S = generalized(A, -2, -1, 1);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) CHECK(S(i, j) == (i == j ? 0 : (A(i, j) == 1 ? -1 : 1)));

  IntMatrix bad(2, 2);
  bad(0, 1) = 2;
  bad(1, 0) = 2;
  CHECK_THROWS_AS(laplacian(bad), std::invalid_argument);
  IntMatrix asym(2, 2);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(laplacian(asym), std::invalid_argument);
}

TEST_CASE("strongly regular parameters") {
  for (auto [p, kind, expect] : {std::tuple{7u, GraphKind::Paley, SrgParams{24, 11, 12}},
                                 {7u, GraphKind::Peisert, SrgParams{24, 11, 12}},
                                 {3u, GraphKind::Peisert, SrgParams{4, 1, 2}}}) {
    const auto res = srg_check(adjacency(build_field(p, 2), kind));
    REQUIRE(res.params.has_value());
    CHECK(*res.params == expect);
  }
  const auto r81 = srg_check(adjacency(build_field(3, 4), GraphKind::Peisert));
  REQUIRE(r81.params.has_value());
  CHECK(*r81.params == SrgParams{40, 19, 20});

  IntMatrix K4(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) K4(i, j) = i != j;
  const auto rk = srg_check(K4);
  CHECK_FALSE(rk.params.has_value());
  CHECK_FALSE(rk.failure.empty());

  // A 6-cycle is regular but not strongly regular.
  IntMatrix C6(6, 6);
  for (std::size_t i = 0; i < 6; ++i) C6(i, (i + 1) % 6) = C6((i + 1) % 6, i) = 1;
  CHECK_FALSE(srg_check(C6).params.has_value());
}

TEST_CASE("connectivity") {
  CHECK(is_connected(adjacency(build_field(7, 2), GraphKind::Peisert)));
  IntMatrix two(4, 4);
  two(0, 1) = two(1, 0) = two(2, 3) = two(3, 2) = 1;
  CHECK_FALSE(is_connected(two));
}

TEST_CASE("closed form spectrum") {
  CHECK(spectrum_closed_form(9) == std::map<long, long>{{4, 1}, {1, 4}, {-2, 4}});
  CHECK(spectrum_closed_form(49) == std::map<long, long>{{24, 1}, {3, 24}, {-4, 24}});
  CHECK(spectrum_closed_form(81) == std::map<long, long>{{40, 1}, {4, 40}, {-5, 40}});
  CHECK_THROWS_AS(spectrum_closed_form(13), std::invalid_argument);
  CHECK(exact_sqrt(121) == 11);
  CHECK_THROWS_AS(exact_sqrt(120), std::invalid_argument);
}

TEST_CASE("spectrum is consistent with the matrix: trace of A^2 and A^3") {
  const IntMatrix A = adjacency(build_field(7, 2), GraphKind::Peisert);
  const IntMatrix A2 = multiply(A, A);
  const IntMatrix A3 = multiply(A2, A);
  mpz_class t2 = 0, t3 = 0;
  for (auto [ev, mult] : spectrum_closed_form(49)) {
    t2 += mpz_class(ev) * ev * mult;
    t3 += mpz_class(ev) * ev * ev * mult;
  }
  CHECK(A2.trace() == t2);
  CHECK(A3.trace() == t3);
}

TEST_CASE("matrix market round trip") {
  const IntMatrix L = laplacian(adjacency(build_field(3, 2), GraphKind::Paley));
  std::stringstream ss;
  write_matrix_market(ss, L);
  const std::string text = ss.str();
  CHECK(text.rfind("%%MatrixMarket matrix coordinate integer symmetric", 0) == 0);
  CHECK(read_matrix_market(ss) == L);

  IntMatrix nonsym(2, 3);
  nonsym(0, 2) = -5;
  nonsym(1, 0) = 7;
  std::stringstream s2;
  write_matrix_market(s2, nonsym);
  CHECK(s2.str().find("general") != std::string::npos);
  CHECK(read_matrix_market(s2) == nonsym);

  std::stringstream junk("not a matrix\n");
  CHECK_THROWS(read_matrix_market(junk));
}

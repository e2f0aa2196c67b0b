#include <doctest.h>

#include "oracles.hpp"
#include "peisert/ffield.hpp"

using namespace peisert;

TEST_CASE("build_field matches the exhaustive search") {
  for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {7, 2}, {11, 2}, {3, 3}, {5, 2}, {2, 3}, {19, 2}}) {
    CAPTURE(p);
    CAPTURE(n);
    const auto ref = oracle::search_field(p, n);
    const FieldTable F = build_field(p, n);
    CHECK(F.q() == static_cast<std::uint64_t>(ref.q));
    CHECK(F.beta() == static_cast<std::uint32_t>(ref.beta));
    std::vector<long> mod(F.modulus().begin(), F.modulus().end());
    CHECK(mod == ref.modulus);
    for (long e = 0; e < ref.q - 1; ++e) REQUIRE(F.antilog(e) == static_cast<std::uint32_t>(ref.antilog[e]));
  }
}

TEST_CASE("small fields") {
  const FieldTable F9 = build_field(3, 2);
  CHECK(F9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(F9.beta() == 4);
  CHECK(F9.q() == 9);

  const FieldTable F3 = build_field(3, 1);
  CHECK(F3.modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(F3.beta() == 2);

  const FieldTable F49 = build_field(7, 2);
  CHECK(F49.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(F49.beta() == 9);
}

TEST_CASE("arithmetic agrees with polynomial arithmetic") {
  const FieldTable F = build_field(3, 3);
  const auto ref = oracle::search_field(3, 3);
  for (std::uint32_t a = 0; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b) {
      const auto prod = oracle::mulmod(oracle::decode(a, 3, 3), oracle::decode(b, 3, 3), ref.modulus, 3);
      REQUIRE(F.mul(a, b) == static_cast<std::uint32_t>(oracle::encode(prod, 3)));
      REQUIRE(F.add(a, b) == static_cast<std::uint32_t>(ref.add(a, b)));
      REQUIRE(F.sub(F.add(a, b), b) == a);
    }
  for (std::uint32_t a = 1; a < F.q(); ++a) CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK(F.neg(0) == 0);
  CHECK(F.encode(F.coeffs(17)) == 17);
}

TEST_CASE("log tables") {
  const FieldTable F = build_field(7, 2);
  for (std::uint32_t x = 1; x < F.q(); ++x) CHECK(F.antilog(F.log(x)) == x);
  for (std::uint64_t m = 1; m + 1 < F.q(); ++m) CHECK(F.antilog(F.log_one_minus(m)) == F.sub(1, F.antilog(m)));
  CHECK_THROWS_AS(F.log(0), std::invalid_argument);
}

TEST_CASE("quartic classes") {
  const FieldTable F = build_field(3, 2);
  CHECK(quartic_class(F, 1) == 0);
  CHECK(quartic_class(F, 2) == 0);
  CHECK(quartic_class(F, 4) == 1);
  CHECK_THROWS_AS(quartic_class(F, 0), std::invalid_argument);
  CHECK_THROWS_AS(quartic_class(build_field(3, 1), 1), std::invalid_argument);
}

TEST_CASE("connection sets") {
  const FieldTable F = build_field(3, 2);
  CHECK(connection_set(F, GraphKind::Peisert) == std::vector<std::uint32_t>{1, 2, 4, 8});
  CHECK(connection_set(F, GraphKind::Paley) == std::vector<std::uint32_t>{1, 2, 3, 6});
  CHECK_THROWS_AS(connection_set(build_field(3, 1), GraphKind::Peisert), std::invalid_argument);
  CHECK_THROWS_AS(connection_set(build_field(5, 2), GraphKind::Peisert), std::invalid_argument);
  CHECK(connection_set(build_field(5, 1), GraphKind::Paley) == std::vector<std::uint32_t>{1, 4});
  CHECK_THROWS_AS(connection_set(build_field(7, 1), GraphKind::Paley), std::invalid_argument);

  // -1 lies in the set, so both graphs are undirected.
  for (auto kind : {GraphKind::Peisert, GraphKind::Paley}) {
    const FieldTable G = build_field(7, 2);
    const auto S = connection_set(G, kind);
    CHECK(S.size() == 24);
    for (auto x : S) CHECK(std::binary_search(S.begin(), S.end(), G.neg(x)));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_field(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_field(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_field(3, 20), std::invalid_argument);
  CHECK_THROWS_AS(build_field(3, 4, 50), std::invalid_argument);
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime(7919));
  const auto pp = split_prime_power(6561);
  CHECK(pp.p == 3);
  CHECK(pp.n == 8);
  CHECK_THROWS_AS(split_prime_power(12), std::invalid_argument);
  CHECK_THROWS_AS(split_prime_power(1), std::invalid_argument);
  CHECK(parse_graph_kind("paley") == GraphKind::Paley);
  CHECK(std::string(to_string(GraphKind::Peisert)) == "peisert");
  CHECK_THROWS_AS(parse_graph_kind("petersen"), std::invalid_argument);
}

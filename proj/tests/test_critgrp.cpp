#include <doctest.h>

#include "oracles.hpp"
#include "peisert/critgrp.hpp"

using namespace peisert;

namespace {

std::map<std::uint32_t, std::uint64_t> torsion(const DivisorProfile& d) {
  std::map<std::uint32_t, std::uint64_t> out;
  for (auto [e, m] : d.mult)
    if (e > 0 && m > 0) out[e] = m;
  return out;
}

std::vector<mpz_class> ints(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("block formula at q = 9") {
  const CarryContext ctx(3, 1);
  const BlockReport b = block_divisors_formula(ctx, 1);
  CHECK(b.members == std::array<std::int64_t, 4>{1, 3, 5, 7});
  CHECK(b.list1 == std::array<std::uint32_t, 4>{1, 1, 1, 1});
  CHECK(b.list2 == std::array<std::uint32_t, 4>{0, 0, 2, 2});
  CHECK(b.chosen == 2);
  CHECK_FALSE(b.tie);
  CHECK(b.method == BlockMethod::Formula);
  CHECK(b.exponents == std::array<std::uint32_t, 4>{0, 0, 2, 2});
}

TEST_CASE("block elimination agrees with the formula") {
  for (auto [p, t] : {std::pair{3u, 1u}, {7u, 1u}, {3u, 2u}}) {
    const CarryContext ctx(p, t);
    const FieldTable F = build_field(p, 2 * t);
    const GaloisRing R = build_ring(F, 2 * t + 2);
    for (const auto& c : ctx.class_reps()) {
      const BlockReport local = block_divisors_local(ctx, c.rep, R);
      CHECK(local.method == BlockMethod::BlockLocal);
      CHECK(local.exponents == block_divisors_formula(ctx, c.rep).exponents);
    }
    CHECK_THROWS_AS(block_divisors_local(ctx, 1, build_ring(F, 2 * t + 1)), std::invalid_argument);
  }
}

TEST_CASE("M_0 divisors") {
  const M0Report m9 = m0_divisors(CarryContext(3, 1));
  CHECK(m9.free_rank == 1);
  CHECK(m9.exponents == std::array<std::uint32_t, 4>{0, 0, 1, 1});
  CHECK(m0_divisors(CarryContext(3, 2)).exponents == std::array<std::uint32_t, 4>{0, 0, 2, 2});
  const FieldTable F = build_field(3, 4);
  const M0Report local = m0_divisors_local(build_ring(F, 6));
  CHECK(local.free_rank == 1);
  CHECK(local.exponents == std::array<std::uint32_t, 4>{0, 0, 2, 2});
}

TEST_CASE("critical group at q = 9") {
  for (Method m : {Method::Formula, Method::Snf, Method::Both}) {
    CriticalGroupOptions opt;
    opt.method = m;
    const auto res = critical_group(3, 2, GraphKind::Peisert, opt);
    CHECK(res.group.invariant_factors == ints({6, 6, 18, 18}));
    CHECK(res.group.free_rank == 1);
    CHECK(torsion(res.profiles.at(2)) == std::map<std::uint32_t, std::uint64_t>{{1, 4}});
    CHECK(torsion(res.profiles.at(3)) == std::map<std::uint32_t, std::uint64_t>{{1, 2}, {2, 2}});
    CHECK(res.profiles.at(3).multiplicity(0) == 4);
    CHECK(res.p_rank == 4);
    CHECK(res.spanning_trees == 11664);
  }
}

TEST_CASE("critical group at q = 81 from the formula") {
  const auto res = critical_group(3, 4, GraphKind::Peisert);
  CHECK(torsion(res.profiles.at(3)) == std::map<std::uint32_t, std::uint64_t>{{1, 20}, {2, 10}, {3, 20}, {4, 14}});
  CHECK(torsion(res.profiles.at(2)) == std::map<std::uint32_t, std::uint64_t>{{2, 40}});
  CHECK(torsion(res.profiles.at(5)) == std::map<std::uint32_t, std::uint64_t>{{1, 40}});
  CHECK(res.profiles.size() == 3);
  CHECK(res.blocks.size() == 19);
  CHECK(res.p_rank == 16);
  const IntMatrix L = laplacian(adjacency(build_field(3, 4), GraphKind::Peisert));
  CHECK(res.spanning_trees == oracle::kirchhoff(L));
  CHECK(res.p_rank == oracle::rank_mod(L, 3));
}

TEST_CASE("the formula path covers Peisert graphs only") {
  CHECK_THROWS_AS(critical_group(3, 4, GraphKind::Paley), std::invalid_argument);
  CriticalGroupOptions snf;
  snf.method = Method::Snf;
  const auto paley = critical_group(3, 2, GraphKind::Paley, snf);
  CHECK(paley.group.free_rank == 1);
  CHECK(critical_group(5, 2, GraphKind::Paley, snf).q == 25);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(critical_group(5, 2, GraphKind::Peisert), std::invalid_argument);
  CHECK_THROWS_AS(critical_group(3, 3, GraphKind::Peisert), std::invalid_argument);
  CHECK_THROWS_AS(critical_group(9, 2, GraphKind::Peisert), std::invalid_argument);
  CHECK_THROWS_AS(critical_group(7, 1, GraphKind::Paley, {Method::Snf}), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("exact"), std::invalid_argument);
  CHECK(parse_method("both") == Method::Both);
  CHECK(std::string(to_string(BlockMethod::BlockLocal)) == "block_local");
}

TEST_CASE("Smith group formula") {
  const AbelianGroup g9 = smith_group_formula(CarryContext(3, 1));
  CHECK(g9.invariant_factors == ints({2, 2, 2, 2, 4}));
  const AbelianGroup g49 = smith_group_formula(CarryContext(7, 1));
  std::vector<mpz_class> expect(24, 12);
  expect.push_back(24);
  CHECK(g49.invariant_factors == expect);
  CHECK(g49.free_rank == 0);
}

TEST_CASE("p-rank formula") {
  CHECK(p_rank_formula(CarryContext(3, 1)) == 4);
  CHECK(p_rank_formula(CarryContext(3, 2)) == 16);
  CHECK(p_rank_formula(CarryContext(3, 6)) == 1456);
  CHECK(p_rank_formula(CarryContext(7, 1)) == 16);
  CHECK(p_rank_formula(CarryContext(11, 1)) == 2 * 2 * 3 * 3);
}

TEST_CASE("spanning trees") {
  CHECK(spanning_trees(9) == 11664);
  mpz_class e;
  mpz_class a, b;
  mpz_pow_ui(a.get_mpz_t(), mpz_class(21).get_mpz_t(), 24);
  mpz_pow_ui(b.get_mpz_t(), mpz_class(28).get_mpz_t(), 24);
  e = a * b / 49;
  CHECK(spanning_trees(49) == e);
  // q not a square: Paley graph on 13 vertices.
  CHECK(spanning_trees(13) == oracle::kirchhoff(laplacian(adjacency(build_field(13, 1), GraphKind::Paley))));
  CHECK_THROWS_AS(spanning_trees(11), std::invalid_argument);
}

TEST_CASE("assembling the p-part") {
  const CarryContext ctx(3, 1);
  const DivisorProfile d = assemble_p_profile(ctx, {block_divisors_formula(ctx, 1)});
  CHECK(d.multiplicity(0) == 4);
  CHECK(d.multiplicity(1) == 2);
  CHECK(d.multiplicity(2) == 2);
  CHECK(d.free_rank == 1);
}

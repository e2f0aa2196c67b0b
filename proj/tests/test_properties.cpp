#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "peisert/compare.hpp"
#include "peisert/critgrp.hpp"
#include "peisert/util.hpp"

using namespace peisert;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace

TEST_CASE("field invariants") {
  for (auto [p, n] : {std::pair{3u, 2u}, {7u, 2u}, {3u, 4u}, {11u, 2u}, {5u, 2u}, {13u, 1u}}) {
    const FieldTable F = build_field(p, n);
    CHECK(F == build_field(p, n));
    for (auto kind : {GraphKind::Peisert, GraphKind::Paley}) {
      std::vector<std::uint32_t> S;
      try {
        S = connection_set(F, kind);
      } catch (const std::invalid_argument&) {
        continue;
      }
      CHECK(S.size() == (F.q() - 1) / 2);
      for (auto x : S) CHECK(std::binary_search(S.begin(), S.end(), F.neg(x)));
    }
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = static_cast<std::uint32_t>(pick(1, F.q() - 1));
      const auto y = static_cast<std::uint32_t>(pick(1, F.q() - 1));
      CHECK(quartic_class(F, F.mul(x, y)) == (quartic_class(F, x) + quartic_class(F, y)) % 4);
    }
  }
}

TEST_CASE("ring invariants") {
  const FieldTable F = build_field(7, 2);
  const GaloisRing R = build_ring(F, 4);
  const GaloisRing R2 = build_ring(F, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const long a = pick(-100, 100), b = pick(-100, 100);
    CHECK(R.mul(R.teich(a), R.teich(b)) == R.teich(a + b));
  }
  // Summing with omega^{-1} in place of omega gives J(-i, -j).
  const auto q1 = static_cast<std::int64_t>(F.q() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t i = pick(0, q1 - 1), j = pick(0, q1 - 1);
    GrElem s;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
      const std::uint32_t y = F.sub(1, x);
      const GrElem u = x == 0 ? (i == 0 ? R.from_int(1) : R.zero()) : R.teich(i * static_cast<std::int64_t>(F.log(x)));
      const GrElem v = y == 0 ? (j == 0 ? R.from_int(1) : R.zero()) : R.teich(j * static_cast<std::int64_t>(F.log(y)));
      s = R.add(s, R.mul(u, v));
    }
    CHECK(s == jacobi_gr(R, -i, -j));
    CHECK(R.reduce(jacobi_gr(R, i, j), 2) == jacobi_gr(R2, i, j));
  }
  // Stickelberger over all pairs at q = 49.
  const CarryContext ctx(7, 1);
  for (std::int64_t i = 1; i < q1; ++i)
    for (std::int64_t j = 1; j < q1; ++j) {
      if ((i + j) % q1 == 0) continue;
      REQUIRE(valuation(R, jacobi_gr(R, i, j)) == ctx.carry_count(i, j));
    }
}

TEST_CASE("carry identities on random indices") {
  for (auto [p, t] : {std::pair{3u, 3u}, {7u, 2u}, {11u, 1u}, {19u, 1u}, {3u, 4u}}) {
    const CarryContext ctx(p, t);
    const std::int64_t q1 = ctx.order();
    for (int trial = 0; trial < 300; ++trial) {
      const std::int64_t i = pick(1, q1 - 1), j = pick(1, q1 - 1), k = pick(1, q1 - 1);
      if ((i + j) % q1) CHECK(ctx.carry_count(i, j) == ctx.carry_count(j, i));
      CHECK(ctx.digit_sum(i) + ctx.digit_sum(q1 - i) == ctx.m() * (p - 1));
      if ((i + j) % q1 && (j + k) % q1 && (i + j + k) % q1)
        CHECK(ctx.carry_count(i, j) + ctx.carry_count(i + j, k) == ctx.carry_count(j, k) + ctx.carry_count(i, j + k));
      if ((i + j) % q1) CHECK(static_cast<int>(ctx.carry_count(i, j)) == oracle::carries(p, ctx.m(), i, j));
    }
  }
}

TEST_CASE("graph invariants") {
  for (auto [p, n] : {std::pair{3u, 2u}, {7u, 2u}, {3u, 4u}, {5u, 2u}, {13u, 1u}, {17u, 1u}}) {
    const FieldTable F = build_field(p, n);
    const long q = static_cast<long>(F.q());
    for (auto kind : {GraphKind::Peisert, GraphKind::Paley}) {
      IntMatrix A;
      try {
        A = adjacency(F, kind);
      } catch (const std::invalid_argument&) {
        continue;
      }
      CHECK(A.is_symmetric());
      CHECK(A.trace() == 0);
      CHECK(is_connected(A));
      const auto s = srg_check(A);
      REQUIRE(s.params.has_value());
      CHECK(*s.params == SrgParams{(q - 1) / 2, (q - 5) / 4, (q - 1) / 4});
    }
  }
}

TEST_CASE("Smith form invariants on random matrices") {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(pick(1, 7));
    IntMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = pick(-6, 6);
    const SmithForm s = smith_normal_form(M);
    for (std::size_t i = 1; i < s.rank; ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = M(i, j);
    const mpz_class det = abs(oracle::determinant(rows));
    if (det != 0) {
      mpz_class prod = 1;
      for (const auto& d : s.diagonal) prod *= d;
      CHECK(prod == det);
      CHECK(group_order(s.cokernel) == det);
    } else {
      CHECK(s.rank < n);
    }
    std::vector<mpz_class> diag(s.diagonal.begin(), s.diagonal.begin() + s.rank);
    CHECK(diag == oracle::smith_diagonal(M));

    // Unimodular row and column operations leave the form unchanged.
    IntMatrix N = M;
    for (int op = 0; op < 10 && n > 1; ++op) {
      const std::size_t a = static_cast<std::size_t>(pick(0, n - 1));
      std::size_t b = static_cast<std::size_t>(pick(0, n - 2));
      if (b >= a) ++b;
      const long f = pick(-3, 3);
      for (std::size_t j = 0; j < n; ++j) N(a, j) += f * N(b, j);
      for (std::size_t i = 0; i < n; ++i) N(i, b) -= f * N(i, a);
    }
    CHECK(smith_normal_form(N).diagonal == s.diagonal);
  }
}

TEST_CASE("local divisors merge to the Smith form") {
  for (auto [p, n, kind] : {std::tuple{3u, 2u, GraphKind::Peisert}, {7u, 2u, GraphKind::Peisert}, {7u, 2u, GraphKind::Paley},
                            {3u, 4u, GraphKind::Paley}, {13u, 1u, GraphKind::Paley}}) {
    const IntMatrix A = adjacency(build_field(p, n), kind);
    for (const IntMatrix& M : {laplacian(A), A, generalized(A, 3, 2, -1)}) {
      const SmithForm s = smith_normal_form(M);
      std::map<std::uint64_t, DivisorProfile> merged;
      for (std::uint64_t ell : s.cokernel.primes()) {
        std::uint32_t top = 1;
        for (const auto& d : s.diagonal)
          if (d != 0) {
            mpz_class x = d;
            std::uint32_t e = 0;
            while (x % ell == 0) {
              x /= ell;
              ++e;
            }
            top = std::max(top, e + 1);
          }
        DivisorProfile d = local_divisors(M, ell, top);
        d.normalize();
        merged[ell] = d;
        CHECK(d.free_rank == s.cokernel.free_rank);
      }
      for (auto& [ell, d] : merged) {
        auto want = s.cokernel.profile(ell, M.rows());
        want.normalize();
        CHECK(d == want);
      }
    }
  }
}

TEST_CASE("critical group profiles: palindromy and the order identity") {
  for (auto [p, t] : {std::pair{3u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}, {3u, 3u}, {7u, 2u}, {19u, 1u}, {23u, 1u}, {3u, 4u}}) {
    const auto res = critical_group(p, 2 * t, GraphKind::Peisert);
    const DivisorProfile& d = res.profiles.at(p);
    const std::uint64_t q = res.q;
    for (std::uint32_t j = 1; j < 2 * t; ++j) CHECK(d.multiplicity(j) == d.multiplicity(2 * t - j));
    CHECK(d.multiplicity(0) == d.multiplicity(2 * t) + 2);
    CHECK(d.total_exponent() == t * (q - 3));
    CHECK(res.p_rank == d.multiplicity(0));
    CHECK(group_order(res.group) == res.spanning_trees);
    // every prime of the Smith group other than p also divides the critical group order
    const CarryContext ctx(p, t);
    const AbelianGroup smith = smith_group_formula(ctx);
    for (std::uint64_t ell : smith.primes()) {
      if (ell == p) continue;
      CHECK(res.profiles.count(ell) == 1);
    }
    for (const auto& b : res.blocks) CHECK_FALSE(b.tie);
  }
}

TEST_CASE("all three paths agree") {
  for (auto [p, t] : {std::pair{3u, 1u}, {7u, 1u}, {3u, 2u}}) {
    CriticalGroupOptions both;
    both.method = Method::Both;
    const auto res = critical_group(p, 2 * t, GraphKind::Peisert, both);
    const CarryContext ctx(p, t);
    const FieldTable F = build_field(p, 2 * t);
    const GaloisRing R = build_ring(F, 2 * t + 2);
    std::vector<BlockReport> local;
    for (const auto& c : ctx.class_reps()) local.push_back(block_divisors_local(ctx, c.rep, R));
    CHECK(assemble_p_profile(ctx, local) == res.profiles.at(p));
  }
}

TEST_CASE("parallel map keeps order and rethrows") {
  const auto v = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(v[i] == i * i);
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) -> int {
                                 if (i == 7) throw std::runtime_error("boom");
                                 return 0;
                               }),
                  std::runtime_error);
}

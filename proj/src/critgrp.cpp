#include "peisert/critgrp.hpp"

#include <algorithm>
#include <string>

#include "peisert/graphs.hpp"
#include "peisert/util.hpp"

namespace peisert {

const char* to_string(BlockMethod m) { return m == BlockMethod::Formula ? "formula" : "block_local"; }

const char* to_string(Method m) {
  switch (m) {
    case Method::Formula: return "formula";
    case Method::Snf: return "snf";
    case Method::Both: return "both";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "formula") return Method::Formula;
  if (name == "snf") return Method::Snf;
  if (name == "both") return Method::Both;
  throw std::invalid_argument("unknown method '" + name + "' (expected formula, snf or both)");
}

namespace {

void check_rep(const CarryContext& ctx, std::int64_t i) {
  if (i < 1 || i >= ctx.r())
    throw std::invalid_argument("class representative must lie in 1.." + std::to_string(ctx.r() - 1));
}

BlockReport block_lists(const CarryContext& ctx, std::int64_t i) {
  check_rep(ctx, i);
  const std::int64_t r = ctx.r();
  BlockReport b;
  b.rep = i;
  b.members = {i, i + r, i + 2 * r, i + 3 * r};
  b.list1 = {ctx.carry_count(i, r), ctx.carry_count(i + r, 3 * r), ctx.carry_count(i + 2 * r, r),
             ctx.carry_count(i + 3 * r, 3 * r)};
  b.list2 = {ctx.carry_count(i, 3 * r), ctx.carry_count(i + r, r), ctx.carry_count(i + 2 * r, 3 * r),
             ctx.carry_count(i + 3 * r, r)};
  const auto min1 = *std::min_element(b.list1.begin(), b.list1.end());
  const auto min2 = *std::min_element(b.list2.begin(), b.list2.end());
  b.chosen = min2 < min1 ? 2 : 1;
  if (min1 == min2) {
    auto s1 = b.list1, s2 = b.list2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    b.tie = s1 != s2;
  }
  return b;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace

BlockReport block_divisors_formula(const CarryContext& ctx, std::int64_t i, const GaloisRing* fallback) {
  BlockReport b = block_lists(ctx, i);
  if (b.tie) {
    if (!fallback)
      throw VerificationFailure("ambiguous minimum in block " + std::to_string(i) + " and no ring for the local fallback");
    BlockReport local = block_divisors_local(ctx, i, *fallback);
    local.tie = true;
    return local;
  }
  b.method = BlockMethod::Formula;
  b.exponents = b.chosen == 1 ? b.list1 : b.list2;
  std::sort(b.exponents.begin(), b.exponents.end());
  return b;
}

GrMatrix laplacian_block(const GaloisRing& ring, std::int64_t i) {
  const std::int64_t r = static_cast<std::int64_t>((ring.q() - 1) / 4);
  const GrElem a = ring.alpha();
  const GrElem ab = ring.alpha_bar();
  auto term = [&](const GrElem& unit, std::int64_t x, std::int64_t y) {
    return ring.neg(ring.mul(unit, jacobi_gr(ring, x, y)));
  };
  GrMatrix m(4, 4);
  const GrElem q = ring.from_int(static_cast<std::int64_t>(ring.q()));
  for (std::size_t d = 0; d < 4; ++d) m.at(d, d) = q;
  // Column c is 2 mu_L(e_{i+cr}) = q e_{i+cr} - abar J(i+cr, r) e_{i+(c+1)r} - alpha J(i+cr, 3r) e_{i+(c+3)r}.
  for (std::size_t c = 0; c < 4; ++c) {
    const std::int64_t idx = i + static_cast<std::int64_t>(c) * r;
    m.at((c + 1) % 4, c) = term(ab, idx, r);
    m.at((c + 3) % 4, c) = term(a, idx, 3 * r);
  }
  return m;
}

GrMatrix laplacian_block_m0(const GaloisRing& ring) {
  const std::int64_t r = static_cast<std::int64_t>((ring.q() - 1) / 4);
  const GrElem a = ring.alpha();
  const GrElem ab = ring.alpha_bar();
  const GrElem q = ring.from_int(static_cast<std::int64_t>(ring.q()));
  auto neg_mul = [&](const GrElem& x, const GrElem& y) { return ring.neg(ring.mul(x, y)); };
  GrMatrix m(5, 5);
  // Column 1: 2 mu_L([0]) = -1 + q[0] - abar e_r - alpha e_3r.
  m.at(0, 1) = ring.from_int(-1);
  m.at(1, 1) = q;
  m.at(2, 1) = ring.neg(ab);
  m.at(4, 1) = ring.neg(a);
  // Column 2: 2 mu_L(e_r) = alpha 1 - q alpha [0] + q e_r - abar J(r,r) e_2r.
  m.at(0, 2) = a;
  m.at(1, 2) = neg_mul(q, a);
  m.at(2, 2) = q;
  m.at(3, 2) = neg_mul(ab, jacobi_gr(ring, r, r));
  // Column 3: 2 mu_L(e_2r) = -alpha J(2r,3r) e_r + q e_2r - abar J(2r,r) e_3r.
  m.at(2, 3) = neg_mul(a, jacobi_gr(ring, 2 * r, 3 * r));
  m.at(3, 3) = q;
  m.at(4, 3) = neg_mul(ab, jacobi_gr(ring, 2 * r, r));
  // Column 4: 2 mu_L(e_3r) = abar 1 - q abar [0] - alpha J(3r,3r) e_2r + q e_3r.
  m.at(0, 4) = ab;
  m.at(1, 4) = neg_mul(q, ab);
  m.at(3, 4) = neg_mul(a, jacobi_gr(ring, 3 * r, 3 * r));
  m.at(4, 4) = q;
  return m;
}

BlockReport block_divisors_local(const CarryContext& ctx, std::int64_t i, const GaloisRing& ring) {
  if (ring.p() != ctx.p() || ring.q() != static_cast<std::uint64_t>(ctx.q()))
    throw std::invalid_argument("ring does not match the carry context");
  if (ring.k() < 2 * ctx.t() + 2) throw std::invalid_argument("block elimination needs precision >= 2t + 2");
  BlockReport b = block_lists(ctx, i);
  b.method = BlockMethod::BlockLocal;
  const auto divisors = gr_elementary_divisors(ring, laplacian_block(ring, i));
  for (std::size_t d = 0; d < 4; ++d) {
    if (!divisors[d])
      throw PrecisionAmbiguity("block " + std::to_string(i) + " has a divisor beyond precision " +
                               std::to_string(ring.k()));
    b.exponents[d] = *divisors[d];
  }
  return b;
}

M0Report m0_divisors(const CarryContext& ctx) { return {1, {0, 0, ctx.t(), ctx.t()}}; }

M0Report m0_divisors_local(const GaloisRing& ring) {
  const auto divisors = gr_elementary_divisors(ring, laplacian_block_m0(ring));
  M0Report out;
  out.free_rank = 0;
  std::size_t filled = 0;
  for (const auto& d : divisors) {
    if (!d) {
      ++out.free_rank;
    } else {
      if (filled == 4) throw VerificationFailure("M_0 block has more than four nonvanishing divisors");
      out.exponents[filled++] = *d;
    }
  }
  if (filled != 4)
    throw PrecisionAmbiguity("M_0 block has " + std::to_string(5 - filled) + " divisors beyond precision " +
                             std::to_string(ring.k()));
  return out;
}

DivisorProfile assemble_p_profile(const CarryContext& ctx, const std::vector<BlockReport>& blocks) {
  DivisorProfile prof;
  prof.prime = ctx.p();
  const M0Report m0 = m0_divisors(ctx);
  prof.free_rank = m0.free_rank;
  for (auto e : m0.exponents) ++prof.mult[e];
  for (const auto& b : blocks)
    for (auto e : b.exponents) ++prof.mult[e];
  prof.normalize();
  return prof;
}

AbelianGroup smith_group_formula(const CarryContext& ctx) {
  AbelianGroup g;
  const mpz_class r = static_cast<unsigned long>(ctx.r());
  g.invariant_factors.assign(static_cast<std::size_t>(2 * ctx.r()), r);
  g.invariant_factors.push_back(2 * r);
  return g;
}

std::uint64_t p_rank_formula(const CarryContext& ctx) {
  return 2 * (ipow(3, ctx.t()) - 1) * ipow((ctx.p() + 1) / 4, 2 * ctx.t());
}

mpz_class spanning_trees(std::uint64_t q) {
  if (q % 4 != 1) throw std::invalid_argument("spanning tree formula needs q == 1 (mod 4)");
  // ((q - sqrt q)/2)((q + sqrt q)/2) = q(q - 1)/4, so no square root is needed.
  const mpz_class base = mpz_class(static_cast<unsigned long>(q)) * static_cast<unsigned long>(q - 1) / 4;
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((q - 1) / 2));
  const mpz_class qz = static_cast<unsigned long>(q);
  if (out % qz != 0) throw std::logic_error("spanning tree count is not an integer");
  return out / qz;
}

namespace {

CriticalGroupResult formula_path(std::uint32_t p, std::uint32_t n, const CriticalGroupOptions& options) {
  const CarryContext ctx(p, n / 2, options.cap);
  const auto reps = ctx.class_reps();
  auto lists = parallel_map(reps.size(), options.jobs, [&](std::size_t idx) { return block_lists(ctx, reps[idx].rep); });

  CriticalGroupResult res;
  const bool any_tie = std::any_of(lists.begin(), lists.end(), [](const BlockReport& b) { return b.tie; });
  std::optional<FieldTable> field;
  std::optional<GaloisRing> ring;
  if (any_tie) {
    field = build_field(p, n, options.cap);
    ring = build_ring(*field, options.precision.value_or(2 * ctx.t() + 2));
  }
  res.blocks = parallel_map(reps.size(), options.jobs, [&](std::size_t idx) {
    return block_divisors_formula(ctx, reps[idx].rep, ring ? &*ring : nullptr);
  });

  DivisorProfile pprof = assemble_p_profile(ctx, res.blocks);
  if (pprof.total_exponent() != static_cast<std::uint64_t>(ctx.t()) * static_cast<std::uint64_t>(ctx.q() - 3))
    throw VerificationFailure("p-part order is p^" + std::to_string(pprof.total_exponent()) + ", expected q^((q-3)/2)");

  std::map<std::uint64_t, DivisorProfile> profiles;
  profiles[p] = pprof;
  // p'-part: (Z/rZ)^{2r}.
  const std::uint64_t q = static_cast<std::uint64_t>(ctx.q());
  const std::uint64_t r = static_cast<std::uint64_t>(ctx.r());
  for (const auto& [ell, e] : factor(mpz_class(static_cast<unsigned long>(r)))) {
    DivisorProfile prof;
    prof.prime = ell;
    prof.free_rank = 1;
    prof.mult[e] = 2 * r;
    prof.mult[0] = q - 1 - 2 * r;
    prof.normalize();
    profiles[ell] = prof;
  }
  res.group = AbelianGroup::from_profiles(profiles);
  res.profiles = std::move(profiles);
  res.p_rank = p_rank_formula(ctx);
  if (res.p_rank != res.profiles[p].multiplicity(0))
    throw VerificationFailure("p-rank formula " + std::to_string(res.p_rank) + " differs from m(0) = " +
                              std::to_string(res.profiles[p].multiplicity(0)));
  return res;
}

CriticalGroupResult snf_path(std::uint32_t p, std::uint32_t n, GraphKind kind, const CriticalGroupOptions& options) {
  const FieldTable field = build_field(p, n, options.cap);
  const IntMatrix lap = laplacian(adjacency(field, kind));
  const SmithForm snf = smith_normal_form(lap);
  CriticalGroupResult res;
  res.group = snf.cokernel;
  res.profiles = snf.cokernel.profiles(field.q());
  if (!res.profiles.count(p)) {
    DivisorProfile prof = snf.cokernel.profile(p, field.q());
    res.profiles[p] = prof;
  }
  res.p_rank = res.profiles[p].multiplicity(0);
  return res;
}

}  // namespace

CriticalGroupResult critical_group(std::uint32_t p, std::uint32_t n, GraphKind kind, const CriticalGroupOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > options.cap) throw std::invalid_argument("q exceeds cap " + std::to_string(options.cap));
  }
  if (kind == GraphKind::Peisert && (p % 4 != 3 || n % 2 != 0 || n == 0))
    throw std::invalid_argument("Peisert graphs need q = p^(2t) with p == 3 (mod 4)");
  if (kind == GraphKind::Paley && q % 4 != 1) throw std::invalid_argument("Paley graphs need q == 1 (mod 4)");
  if (options.method != Method::Snf && kind != GraphKind::Peisert)
    throw std::invalid_argument("the formula path applies to Peisert graphs only");

  CriticalGroupResult res;
  if (options.method == Method::Snf) {
    res = snf_path(p, n, kind, options);
  } else {
    res = formula_path(p, n, options);
    if (options.method == Method::Both) {
      const CriticalGroupResult brute = snf_path(p, n, kind, options);
      if (!(brute.group == res.group))
        throw VerificationFailure("formula and SNF critical groups differ at q = " + std::to_string(q));
      if (brute.profiles != res.profiles)
        throw VerificationFailure("formula and SNF elementary divisors differ at q = " + std::to_string(q));
    }
  }
  res.q = q;
  res.p = p;
  res.n = n;
  res.kind = kind;
  res.method = options.method;
  res.spanning_trees = spanning_trees(q);
  return res;
}

}  // namespace peisert

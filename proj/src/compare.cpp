#include "peisert/compare.hpp"

#include <algorithm>
#include <sstream>

#include "peisert/util.hpp"
#include "peisert/zlinalg.hpp"

namespace peisert {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Info: return "info";
  }
  return "?";
}

bool Report::passed() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return &c;
  return nullptr;
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)});
}

void Report::info(std::string name, std::string detail) {
  checks.push_back({std::move(name), Status::Info, std::move(detail)});
}

void Report::append(const Report& other) {
  for (const auto& c : other.checks) checks.push_back(c);
}

namespace {

std::string fmt(const GaloisRing& ring, const GrElem& e) {
  std::ostringstream out;
  out << "(";
  for (std::uint32_t i = 0; i < ring.n(); ++i) out << (i ? "," : "") << e.c[i];
  out << ")";
  return out.str();
}

std::int64_t quarter(const GaloisRing& ring) { return static_cast<std::int64_t>((ring.q() - 1) / 4); }

// First coordinate where two vectors differ, as a message, or empty.
std::string vector_mismatch(const GaloisRing& ring, const GrVector& got, const GrVector& want) {
  for (std::size_t x = 0; x < got.coords.size(); ++x)
    if (got.coords[x] != want.coords[x])
      return "coordinate " + std::to_string(x) + ": direct " + fmt(ring, got.coords[x]) + ", formula " +
             fmt(ring, want.coords[x]);
  return {};
}

GrVector combo(const GaloisRing& ring, const std::vector<std::pair<GrElem, GrVector>>& terms) {
  GrVector out;
  out.coords.assign(ring.q(), GrElem{});
  for (const auto& [s, v] : terms) out = vec_add(ring, out, vec_scale(ring, v, s));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::size_t limit = 5) {
  std::string out;
  for (std::size_t i = 0; i < parts.size() && i < limit; ++i) out += (i ? "; " : "") + parts[i];
  if (parts.size() > limit) out += "; ... (" + std::to_string(parts.size()) + " total)";
  return out;
}

bool is_p_squared(const CarryContext& ctx) { return ctx.t() == 1; }

void require_p_squared(const CarryContext& ctx, const char* what) {
  if (!is_p_squared(ctx)) throw std::invalid_argument(std::string(what) + " needs q = p^2");
}

}  // namespace

GrVector apply_generalized(const GaloisRing& ring, GraphKind kind, std::int64_t a, std::int64_t b, std::int64_t c,
                           const GrVector& v) {
  const FieldTable& F = ring.field();
  const auto conn = connection_set(F, kind);
  GrElem total;
  for (const auto& e : v.coords) total = ring.add(total, e);
  const GrElem jterm = ring.scale(total, c);
  GrVector out;
  out.coords.resize(F.q());
  for (std::uint32_t u = 0; u < F.q(); ++u) {
    GrElem nb;
    for (auto s : conn) nb = ring.add(nb, v.coords[F.add(u, s)]);
    out.coords[u] = ring.add(ring.add(ring.scale(nb, a), ring.scale(v.coords[u], b)), jterm);
  }
  return out;
}

Report verify_action_formula(const GaloisRing& ring, unsigned jobs) {
  Report rep;
  rep.suite = "action";
  rep.q = ring.q();
  const std::int64_t q = static_cast<std::int64_t>(ring.q());
  const std::int64_t r = quarter(ring);
  const std::int64_t k = (q - 1) / 2;
  const GrElem a = ring.alpha(), ab = ring.alpha_bar(), qe = ring.from_int(q);
  const GrElem m1 = ring.from_int(-1);
  // 2 mu_L = 2k I - 2A.
  auto twice_l = [&](const GrVector& v) { return apply_generalized(ring, GraphKind::Peisert, -2, 2 * k, 0, v); };
  auto e = [&](std::int64_t i) { return basis_vector_e(ring, i); };
  auto nj = [&](const GrElem& unit, std::int64_t x, std::int64_t y) { return ring.neg(ring.mul(unit, jacobi_gr(ring, x, y))); };

  std::vector<std::int64_t> indices;
  for (std::int64_t i = 1; i < q - 1; ++i)
    if (i != r && i != 3 * r) indices.push_back(i);
  auto mismatches = parallel_map(indices.size(), jobs, [&](std::size_t idx) {
    const std::int64_t i = indices[idx];
    const GrVector want = combo(ring, {{qe, e(i)}, {nj(ab, i, r), e(i + r)}, {nj(a, i, 3 * r), e(i + 3 * r)}});
    const std::string bad = vector_mismatch(ring, twice_l(e(i)), want);
    return bad.empty() ? std::string{} : "i=" + std::to_string(i) + " " + bad;
  });
  std::vector<std::string> bad;
  for (auto& m : mismatches)
    if (!m.empty()) bad.push_back(m);
  rep.add("e_i formula, i outside {0, r, 3r}", bad.empty(),
          bad.empty() ? std::to_string(indices.size()) + " indices agree in all coordinates" : join(bad));

  const GrVector allone = allone_vector(ring), zero_pt = point_vector(ring, 0);
  const std::vector<std::pair<std::string, std::pair<GrVector, GrVector>>> m0_cases = {
      {"mu_L(1) = 0", {allone, combo(ring, {})}},
      {"mu_L([0])", {zero_pt, combo(ring, {{m1, allone}, {qe, zero_pt}, {ring.neg(ab), e(r)}, {ring.neg(a), e(3 * r)}})}},
      {"mu_L(e_r)",
       {e(r), combo(ring, {{a, allone}, {ring.neg(ring.mul(qe, a)), zero_pt}, {qe, e(r)}, {nj(ab, r, r), e(2 * r)}})}},
      {"mu_L(e_2r)", {e(2 * r), combo(ring, {{nj(a, 2 * r, 3 * r), e(r)}, {qe, e(2 * r)}, {nj(ab, 2 * r, r), e(3 * r)}})}},
      {"mu_L(e_3r)",
       {e(3 * r), combo(ring, {{ab, allone}, {ring.neg(ring.mul(qe, ab)), zero_pt}, {nj(a, 3 * r, 3 * r), e(2 * r)},
                               {qe, e(3 * r)}})}},
  };
  for (const auto& [name, pair] : m0_cases) {
    const std::string mis = vector_mismatch(ring, twice_l(pair.first), pair.second);
    rep.add(name, mis.empty(), mis);
  }
  return rep;
}

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::KPeisert: return "K_i*";
    case BlockKind::KPaley: return "K_i";
    case BlockKind::LBlock: return "2 mu_L on M_i";
    case BlockKind::M0Peisert: return "K_0*";
    case BlockKind::M0Paley: return "K_0";
    case BlockKind::M0Laplacian: return "2 mu_L on M_0";
  }
  return "?";
}

GrMatrix block_matrix(const GaloisRing& ring, std::int64_t i, BlockKind which) {
  const std::int64_t r = quarter(ring);
  const GrElem a = ring.alpha(), ab = ring.alpha_bar();
  const GrElem q = ring.from_int(static_cast<std::int64_t>(ring.q()));
  auto J = [&](std::int64_t x, std::int64_t y) { return jacobi_gr(ring, x, y); };
  auto u = [&](const GrElem& unit, std::int64_t x, std::int64_t y) { return ring.mul(unit, J(x, y)); };
  switch (which) {
    case BlockKind::LBlock: return laplacian_block(ring, i);
    case BlockKind::M0Laplacian: return laplacian_block_m0(ring);
    case BlockKind::KPaley: {
      GrMatrix m(4, 4);
      m.at(0, 1) = J(i + 2 * r, 2 * r);
      m.at(1, 0) = J(i, 2 * r);
      m.at(2, 3) = J(i + 3 * r, 2 * r);
      m.at(3, 2) = J(i + r, 2 * r);
      return m;
    }
    case BlockKind::KPeisert: {
      GrMatrix m(4, 4);
      m.at(0, 2) = u(a, i + r, 3 * r);
      m.at(0, 3) = u(ab, i + 3 * r, r);
      m.at(1, 2) = u(ab, i + r, r);
      m.at(1, 3) = u(a, i + 3 * r, 3 * r);
      m.at(2, 0) = u(ab, i, r);
      m.at(2, 1) = u(a, i + 2 * r, 3 * r);
      m.at(3, 0) = u(a, i, 3 * r);
      m.at(3, 1) = u(ab, i + 2 * r, r);
      return m;
    }
    case BlockKind::M0Paley: {
      GrMatrix m(5, 5);
      m.at(0, 0) = q;
      m.at(0, 1) = ring.from_int(1);
      m.at(0, 2) = ring.from_int(-1);
      m.at(1, 2) = q;
      m.at(2, 1) = ring.from_int(1);
      m.at(3, 4) = J(3 * r, 2 * r);
      m.at(4, 3) = J(r, 2 * r);
      return m;
    }
    case BlockKind::M0Peisert: {
      GrMatrix m(5, 5);
      m.at(0, 0) = q;
      m.at(0, 1) = ring.from_int(1);
      m.at(0, 2) = ring.neg(a);
      m.at(0, 4) = ring.neg(ab);
      m.at(1, 2) = ring.mul(q, a);
      m.at(1, 4) = ring.mul(q, ab);
      m.at(2, 1) = ab;
      m.at(2, 3) = u(a, 2 * r, 3 * r);
      m.at(3, 2) = u(ab, r, r);
      m.at(3, 4) = u(a, 3 * r, 3 * r);
      m.at(4, 1) = a;
      m.at(4, 3) = u(ab, 2 * r, r);
      return m;
    }
  }
  throw std::invalid_argument("unknown block kind");
}

std::vector<GrVector> block_basis(const GaloisRing& ring, std::int64_t i, BlockKind which) {
  const std::int64_t r = quarter(ring);
  auto e = [&](std::int64_t j) { return basis_vector_e(ring, j); };
  switch (which) {
    case BlockKind::KPaley:
    case BlockKind::KPeisert: return {e(i), e(i + 2 * r), e(i + r), e(i + 3 * r)};
    case BlockKind::LBlock: return {e(i), e(i + r), e(i + 2 * r), e(i + 3 * r)};
    case BlockKind::M0Paley: return {allone_vector(ring), point_vector(ring, 0), e(2 * r), e(r), e(3 * r)};
    case BlockKind::M0Peisert:
    case BlockKind::M0Laplacian: return {allone_vector(ring), point_vector(ring, 0), e(r), e(2 * r), e(3 * r)};
  }
  throw std::invalid_argument("unknown block kind");
}

namespace {

GrVector apply_block_operator(const GaloisRing& ring, BlockKind which, const GrVector& v) {
  const std::int64_t k = static_cast<std::int64_t>((ring.q() - 1) / 2);
  switch (which) {
    case BlockKind::KPaley:
    case BlockKind::M0Paley: return apply_generalized(ring, GraphKind::Paley, 2, 1, 0, v);
    case BlockKind::KPeisert:
    case BlockKind::M0Peisert: return apply_generalized(ring, GraphKind::Peisert, 2, 1, 0, v);
    case BlockKind::LBlock:
    case BlockKind::M0Laplacian: return apply_generalized(ring, GraphKind::Peisert, -2, 2 * k, 0, v);
  }
  throw std::invalid_argument("unknown block kind");
}

// Empty when every column of m is the image of the matching basis vector.
std::string display_mismatch(const GaloisRing& ring, const GrMatrix& m, const std::vector<GrVector>& basis,
                             BlockKind which) {
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::vector<std::pair<GrElem, GrVector>> terms;
    for (std::size_t row = 0; row < m.rows; ++row) terms.push_back({m.at(row, col), basis[row]});
    const std::string bad = vector_mismatch(ring, apply_block_operator(ring, which, basis[col]), combo(ring, terms));
    if (!bad.empty()) return "column " + std::to_string(col + 1) + ", " + bad;
  }
  return {};
}

}  // namespace

Report verify_block_displays(const GaloisRing& ring, unsigned jobs) {
  Report rep;
  rep.suite = "blocks";
  rep.q = ring.q();
  const std::int64_t r = quarter(ring);
  for (auto which : {BlockKind::LBlock, BlockKind::KPaley, BlockKind::KPeisert}) {
    auto bad = parallel_map(static_cast<std::size_t>(r - 1), jobs, [&](std::size_t idx) {
      const std::int64_t i = static_cast<std::int64_t>(idx) + 1;
      const std::string mis = display_mismatch(ring, block_matrix(ring, i, which), block_basis(ring, i, which), which);
      return mis.empty() ? mis : "i=" + std::to_string(i) + " " + mis;
    });
    std::vector<std::string> fails;
    for (auto& b : bad)
      if (!b.empty()) fails.push_back(b);
    rep.add(std::string(to_string(which)) + " display equals direct action", fails.empty(),
            fails.empty() ? std::to_string(r - 1) + " classes" : join(fails));
  }
  for (auto which : {BlockKind::M0Laplacian, BlockKind::M0Paley, BlockKind::M0Peisert}) {
    const std::string mis = display_mismatch(ring, block_matrix(ring, 0, which), block_basis(ring, 0, which), which);
    rep.add(std::string(to_string(which)) + " display equals direct action", mis.empty(), mis);
  }
  return rep;
}

namespace {

std::vector<std::uint32_t> finite_exponents(const GaloisRing& ring, const GrMatrix& m, std::int64_t i) {
  std::vector<std::uint32_t> out;
  for (const auto& e : gr_elementary_divisors(ring, m)) {
    if (!e) throw PrecisionAmbiguity("block " + std::to_string(i) + " has a divisor beyond the ring precision");
    out.push_back(*e);
  }
  return out;
}

int canon_form(const std::vector<std::uint32_t>& exps) {
  static const std::vector<std::vector<std::uint32_t>> forms = {{1, 1, 1, 1}, {0, 1, 1, 2}, {0, 0, 2, 2}};
  for (std::size_t f = 0; f < forms.size(); ++f)
    if (exps == forms[f]) return static_cast<int>(f) + 1;
  return 0;
}

bool is_scalar(const GaloisRing& ring, const GrMatrix& m, const GrElem& s) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != (i == j ? s : GrElem{})) return false;
  (void)ring;
  return true;
}

}  // namespace

CanonResult canonical_profile(const CarryContext& ctx, std::int64_t i, const GaloisRing& ring) {
  require_p_squared(ctx, "canonical forms");
  CanonResult res;
  res.rep = i;
  const GrMatrix kp = block_matrix(ring, i, BlockKind::KPaley);
  const GrMatrix ks = block_matrix(ring, i, BlockKind::KPeisert);
  res.exponents_paley = finite_exponents(ring, kp, i);
  res.exponents_peisert = finite_exponents(ring, ks, i);
  res.rank_paley = static_cast<std::size_t>(std::count(res.exponents_paley.begin(), res.exponents_paley.end(), 0u));
  res.rank_peisert = static_cast<std::size_t>(std::count(res.exponents_peisert.begin(), res.exponents_peisert.end(), 0u));
  res.form_paley = canon_form(res.exponents_paley);
  res.form_peisert = canon_form(res.exponents_peisert);
  return res;
}

Report verify_canonical_forms(const CarryContext& ctx, const GaloisRing& ring, unsigned jobs) {
  require_p_squared(ctx, "canonical forms");
  Report rep;
  rep.suite = "canon";
  rep.q = ring.q();
  const std::int64_t r = ctx.r();
  const std::int64_t p = ctx.p();
  const GrElem p2 = ring.from_int(p * p);

  struct Row {
    std::vector<std::string> canon, square, abcd, carries, printed_d;
    std::size_t rank = 0;
  };
  auto rows = parallel_map(static_cast<std::size_t>(r - 1), jobs, [&](std::size_t idx) {
    const std::int64_t i = static_cast<std::int64_t>(idx) + 1;
    const std::string tag = "i=" + std::to_string(i);
    Row row;
    const CanonResult c = canonical_profile(ctx, i, ring);
    row.rank = c.rank_paley;
    if (c.rank_paley > 2 || c.rank_paley != c.rank_peisert || c.form_paley == 0 || c.form_paley != c.form_peisert ||
        static_cast<std::size_t>(c.form_paley) != c.rank_paley + 1)
      row.canon.push_back(tag + " ranks " + std::to_string(c.rank_paley) + "/" + std::to_string(c.rank_peisert) +
                          " forms " + std::to_string(c.form_paley) + "/" + std::to_string(c.form_peisert));

    const GrMatrix kp = block_matrix(ring, i, BlockKind::KPaley);
    const GrMatrix ks = block_matrix(ring, i, BlockKind::KPeisert);
    if (!is_scalar(ring, gr_multiply(ring, kp, kp), p2)) row.square.push_back(tag + " K_i^2 != p^2 I");
    if (!is_scalar(ring, gr_multiply(ring, ks, ks), p2)) row.square.push_back(tag + " K_i*^2 != p^2 I");

    // Valuations of K_i*: lower block [[a, b], [c, d]], upper block [[d+D, b+D], [c+D, a+D]].
    auto v = [&](std::size_t x, std::size_t y) -> std::int64_t {
      const auto val = valuation(ring, ks.at(x, y));
      return val ? static_cast<std::int64_t>(*val) : -1;
    };
    const std::int64_t a = v(2, 0), b = v(2, 1), c2 = v(3, 0), d = v(3, 1);
    const std::int64_t D = v(0, 2) - d;
    const bool pattern = v(0, 3) == b + D && v(1, 2) == c2 + D && v(1, 3) == a + D;
    bool in_range = true;
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y)
        if ((x < 2) != (y < 2) && (v(x, y) < 0 || v(x, y) > 2)) in_range = false;
    if (!pattern || !in_range || a + d != b + c2 || a + d + D != 2 || D < -1 || D > 1)
      row.abcd.push_back(tag + " a,b,c,d,D = " + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c2) + "," + std::to_string(d) + "," + std::to_string(D));
    // The valuations must be the carry counts.
    const std::int64_t expect[4][2] = {{ctx.carry_count(i + r, 3 * r), ctx.carry_count(i + 3 * r, r)},
                                       {ctx.carry_count(i + r, r), ctx.carry_count(i + 3 * r, 3 * r)}};
    const std::int64_t expect_low[2][2] = {{ctx.carry_count(i, r), ctx.carry_count(i + 2 * r, 3 * r)},
                                           {ctx.carry_count(i, 3 * r), ctx.carry_count(i + 2 * r, r)}};
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        if (v(x, 2 + y) != expect[x][y] || v(2 + x, y) != expect_low[x][y])
          row.carries.push_back(tag + " entry valuation differs from carry count");
    const std::int64_t printed =
        (static_cast<std::int64_t>(ctx.digit_sum(i)) - ctx.digit_sum(i + r) + ctx.digit_sum(i + 2 * r) -
         ctx.digit_sum(i + 3 * r)) /
        (static_cast<std::int64_t>(p) - 1);
    if (printed != -D) row.printed_d.push_back(tag + " offset " + std::to_string(D) + ", digit expression " + std::to_string(printed));
    return row;
  });

  std::vector<std::string> canon, square, abcd, carries, printed_d;
  std::map<std::size_t, std::size_t> rank_counts;
  for (auto& row : rows) {
    canon.insert(canon.end(), row.canon.begin(), row.canon.end());
    square.insert(square.end(), row.square.begin(), row.square.end());
    abcd.insert(abcd.end(), row.abcd.begin(), row.abcd.end());
    carries.insert(carries.end(), row.carries.begin(), row.carries.end());
    printed_d.insert(printed_d.end(), row.printed_d.begin(), row.printed_d.end());
    ++rank_counts[row.rank];
  }
  std::string ranks;
  for (auto [rk, n] : rank_counts) ranks += (ranks.empty() ? "" : ", ") + std::string("rank ") + std::to_string(rk) + ": " + std::to_string(n);
  rep.add("rank_p(K_i) = rank_p(K_i*) in {0,1,2}, same canonical form", canon.empty(), canon.empty() ? ranks : join(canon));
  rep.add("K_i^2 = K_i*^2 = p^2 I", square.empty(), join(square));
  rep.add("valuation pattern: a+d = b+c, a+d+D = 2, D in {-1,0,1}", abcd.empty(), join(abcd));
  rep.add("K_i* entry valuations equal carry counts", carries.empty(), join(carries));
  rep.add("offset D equals -(s(i) - s(i+r) + s(i+2r) - s(i+3r))/(p-1)", printed_d.empty(), join(printed_d));
  return rep;
}

bool verify_m0_basis_change(const CarryContext& ctx, const GaloisRing& ring) {
  require_p_squared(ctx, "the M_0 basis change");
  const std::int64_t r = ctx.r();
  const GrElem a = ring.alpha(), ab = ring.alpha_bar();
  if (valuation(ring, ring.eta()) != 0u) return false;  // change of basis has determinant eta
  const GrVector er = basis_vector_e(ring, r), e3r = basis_vector_e(ring, 3 * r);
  const std::vector<GrVector> v = {allone_vector(ring), point_vector(ring, 0), combo(ring, {{ab, er}, {a, e3r}}),
                                   basis_vector_e(ring, 2 * r), combo(ring, {{a, er}, {ab, e3r}})};
  const GrMatrix k0 = block_matrix(ring, 0, BlockKind::M0Paley);
  return display_mismatch(ring, k0, v, BlockKind::M0Peisert).empty();
}

Report verify_m0(const CarryContext& ctx, const GaloisRing& ring) {
  Report rep;
  rep.suite = "m0";
  rep.q = ring.q();
  const GrElem a = ring.alpha(), ab = ring.alpha_bar(), eta = ring.eta();
  const GrElem half = ring.inverse(ring.from_int(2));
  rep.add("alpha^2 = -eta/2", ring.mul(a, a) == ring.neg(ring.mul(eta, half)));
  rep.add("alpha_bar^2 = eta/2", ring.mul(ab, ab) == ring.mul(eta, half));
  rep.add("alpha alpha_bar = 1/2", ring.mul(a, ab) == half);
  rep.add("alpha^2 + alpha_bar^2 = 0", ring.is_zero(ring.add(ring.mul(a, a), ring.mul(ab, ab))));
  if (is_p_squared(ctx)) rep.add("K* in the v-basis equals K_0", verify_m0_basis_change(ctx, ring));
  const M0Report local = m0_divisors_local(ring);
  const M0Report formula = m0_divisors(ctx);
  std::string got = "free " + std::to_string(local.free_rank) + ", exponents";
  for (auto e : local.exponents) got += " " + std::to_string(e);
  rep.add("M_0 block divisors: free rank 1, exponents (0, 0, t, t)",
          local.free_rank == formula.free_rank && local.exponents == formula.exponents, got);
  return rep;
}

Report verify_berndt(const CarryContext& ctx, const GaloisRing& ring, unsigned jobs) {
  require_p_squared(ctx, "the quartic Jacobi identities");
  Report rep;
  rep.suite = "berndt";
  rep.q = ring.q();
  const std::int64_t r = ctx.r(), p = ctx.p(), q = ctx.q();
  const FieldTable& F = ring.field();
  const std::pair<std::int64_t, std::int64_t> quartic[] = {{r, r}, {3 * r, 3 * r}, {r, 2 * r}, {3 * r, 2 * r}};
  for (auto [x, y] : quartic) {
    const std::string name = "J(" + std::to_string(x) + "," + std::to_string(y) + ") = p";
    const Gaussian g = jacobi_quartic_exact(F, x, y);
    rep.add(name + " (Gaussian integers)", g == Gaussian{p, 0},
            std::to_string(g.re) + (g.im < 0 ? "" : "+") + std::to_string(g.im) + "i");
    const GrElem z = jacobi_gr(ring, x, y);
    rep.add(name + " (Galois ring)", z == ring.from_int(p), fmt(ring, z));
    rep.add(name + " Gaussian image matches ring value", gaussian_image(ring, g) == z);
  }
  std::vector<std::string> norm_bad;
  for (std::int64_t x = r; x < q - 1; x += r)
    for (std::int64_t y = r; y < q - 1; y += r) {
      if ((x + y) % (q - 1) == 0) continue;
      const Gaussian g = jacobi_quartic_exact(F, x, y);
      if (g.norm() != q) norm_bad.push_back("J(" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  rep.add("|J|^2 = q for nonprincipal quartic pairs", norm_bad.empty(), join(norm_bad));

  std::vector<std::int64_t> idx;
  for (std::int64_t i = 1; i < q - 1; ++i)
    if (i % r != 0) idx.push_back(i);
  auto rows = parallel_map(idx.size(), jobs, [&](std::size_t n) {
    const std::int64_t i = idx[n];
    std::pair<std::string, std::string> out;
    const GrElem lhs = ring.mul(jacobi_gr(ring, i, r), jacobi_gr(ring, i + r, r));
    const GrElem rhs = ring.mul(jacobi_gr(ring, i, 3 * r), jacobi_gr(ring, i + 3 * r, 3 * r));
    if (lhs != rhs) out.first = "i=" + std::to_string(i) + ": " + fmt(ring, lhs) + " vs " + fmt(ring, rhs);
    const GrElem sq = ring.mul(jacobi_gr(ring, i, 2 * r), jacobi_gr(ring, i + 2 * r, 2 * r));
    if (sq != ring.from_int(p * p)) out.second = "i=" + std::to_string(i) + ": " + fmt(ring, sq);
    return out;
  });
  std::vector<std::string> bad1, bad2;
  for (auto& [x, y] : rows) {
    if (!x.empty()) bad1.push_back(x);
    if (!y.empty()) bad2.push_back(y);
  }
  rep.add("J(i,r)J(i+r,r) = J(i,3r)J(i+3r,3r)", bad1.empty(), bad1.empty() ? std::to_string(idx.size()) + " indices" : join(bad1));
  rep.add("J(i,2r)J(i+2r,2r) = p^2", bad2.empty(), bad2.empty() ? std::to_string(idx.size()) + " indices" : join(bad2));
  return rep;
}

Report verify_stickelberger(const CarryContext& ctx, const GaloisRing& ring, bool full, unsigned jobs) {
  if (ring.k() <= 2 * ctx.t()) throw std::invalid_argument("Stickelberger checks need precision above 2t");
  Report rep;
  rep.suite = "stickelberger";
  rep.q = ring.q();
  const std::int64_t q = ctx.q(), r = ctx.r();
  std::vector<std::int64_t> js;
  if (full)
    for (std::int64_t j = 1; j < q - 1; ++j) js.push_back(j);
  else
    js = {r, 2 * r, 3 * r};
  auto rows = parallel_map(js.size(), jobs, [&](std::size_t n) {
    const std::int64_t j = js[n];
    std::vector<std::string> bad;
    std::size_t count = 0;
    for (std::int64_t i = 1; i < q - 1; ++i) {
      if ((i + j) % (q - 1) == 0) continue;
      ++count;
      const auto v = valuation(ring, jacobi_gr(ring, i, j));
      const std::uint32_t c = ctx.carry_count(i, j);
      if (!v || *v != c)
        bad.push_back("(" + std::to_string(i) + "," + std::to_string(j) + "): valuation " +
                      (v ? std::to_string(*v) : ">=" + std::to_string(ring.k())) + ", carries " + std::to_string(c));
    }
    return std::make_pair(count, bad);
  });
  std::size_t total = 0;
  std::vector<std::string> bad;
  for (auto& [n, b] : rows) {
    total += n;
    bad.insert(bad.end(), b.begin(), b.end());
  }
  rep.add(full ? "v_p(J(i,j)) = c(i,j), all pairs" : "v_p(J(i,j)) = c(i,j), j in {r,2r,3r}", bad.empty(),
          bad.empty() ? std::to_string(total) + " pairs" : join(bad));
  return rep;
}

Report verify_carries(const CarryContext& ctx) {
  Report rep;
  rep.suite = "carries";
  rep.q = static_cast<std::uint64_t>(ctx.q());
  const std::int64_t q = ctx.q(), r = ctx.r(), t = ctx.t(), p = ctx.p();
  std::vector<std::string> sum4t, diag, conj, comp, symm, printed;
  for (const auto& cls : ctx.class_reps()) {
    const std::int64_t i = cls.rep;
    const auto s = ctx.carry_count(i, r) + ctx.carry_count(i + r, 3 * r) + ctx.carry_count(i + 2 * r, r) +
                   ctx.carry_count(i + 3 * r, 3 * r);
    if (s != 4 * t) sum4t.push_back("i=" + std::to_string(i) + " sum " + std::to_string(s));
  }
  for (std::int64_t i = 1; i < q - 1; ++i) {
    const std::string tag = "i=" + std::to_string(i);
    if (i % r != 0) {
      const auto lhs = ctx.carry_count(i, r) + ctx.carry_count(i + 2 * r, r);
      const auto rhs = ctx.carry_count(i, 3 * r) + ctx.carry_count(i + 2 * r, 3 * r);
      if (lhs != rhs) diag.push_back(tag);
    }
    if (i != 3 * r && ctx.carry_count(i, r) + ctx.carry_count(q - 1 - i, 3 * r) != 2 * t) conj.push_back(tag);
    if (ctx.digit_sum(i) + ctx.digit_sum(q - 1 - i) != 2 * t * (p - 1)) comp.push_back(tag);
    for (std::int64_t j : {r, 2 * r, 3 * r})
      if ((i + j) % (q - 1) != 0 && ctx.carry_count(i, j) != ctx.carry_count(j, i))
        symm.push_back(tag + " j=" + std::to_string(j));
    if (i != r && i != 3 * r) {
      const auto x = ctx.carry_count(i, r), y = ctx.carry_count(q - 1 - i, r);
      if (x + y != 2 * t)
        printed.push_back("c(" + std::to_string(i) + "," + std::to_string(r) + ")+c(" + std::to_string(q - 1 - i) + "," +
                          std::to_string(r) + ") = " + std::to_string(x) + "+" + std::to_string(y) + " = " +
                          std::to_string(x + y) + " != " + std::to_string(2 * t));
    }
  }
  rep.add("sum of list1 = 4t for every class", sum4t.empty(), join(sum4t));
  rep.add("c(i,r)+c(i+2r,r) = c(i,3r)+c(i+2r,3r)", diag.empty(), join(diag));
  rep.add("c(i,r)+c(q-1-i,3r) = 2t", conj.empty(), join(conj));
  rep.add("s(i)+s(q-1-i) = 2t(p-1)", comp.empty(), join(comp));
  rep.add("c(i,j) = c(j,i)", symm.empty(), join(symm));
  rep.info("c(i,r)+c(q-1-i,r) = 2t (uncorrected form)",
           printed.empty() ? "holds for all i" : "fails for " + std::to_string(printed.size()) + " indices: " + join(printed, 3));
  return rep;
}

std::vector<Triple> default_grid() {
  std::vector<Triple> out;
  for (std::int64_t a = 1; a <= 3; ++a)
    for (std::int64_t b = -2; b <= 2; ++b)
      for (std::int64_t c = -2; c <= 2; ++c) out.push_back({a, b, c});
  return out;
}

std::map<long, long> generalized_spectrum(std::uint64_t q, std::int64_t a, std::int64_t b, std::int64_t c) {
  std::map<long, long> out;
  for (auto [ev, mult] : spectrum_closed_form(q)) {
    long value = a * ev + b;
    if (ev == static_cast<long>((q - 1) / 2)) value += c * static_cast<long>(q);
    out[value] += mult;
  }
  return out;
}

namespace {

std::string describe(const SmithForm& s) {
  std::string out = "rank " + std::to_string(s.rank) + ", free " + std::to_string(s.cokernel.free_rank) + ", " +
                    std::to_string(s.cokernel.invariant_factors.size()) + " nontrivial factors";
  if (!s.cokernel.invariant_factors.empty()) out += ", largest " + s.cokernel.invariant_factors.back().get_str();
  return out;
}

std::string triple_name(const Triple& t) {
  return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
}

}  // namespace

Report compare_generalized(const FieldTable& field, const std::vector<Triple>& samples, unsigned jobs) {
  check_graph_params(field, GraphKind::Peisert);
  check_graph_params(field, GraphKind::Paley);
  Report rep;
  rep.suite = "generalized";
  rep.q = field.q();
  const IntMatrix paley = adjacency(field, GraphKind::Paley);
  const IntMatrix peisert = adjacency(field, GraphKind::Peisert);

  const SrgResult s1 = srg_check(paley), s2 = srg_check(peisert);
  const long q = static_cast<long>(field.q());
  const SrgParams expect{(q - 1) / 2, (q - 5) / 4, (q - 1) / 4};
  rep.add("both graphs satisfy A^2 + (mu-lambda)A + (mu-k)I = mu J with the same (k, lambda, mu)",
          s1.params && s2.params && *s1.params == *s2.params && *s1.params == expect,
          s1.params && s2.params ? "(" + std::to_string(s1.params->k) + "," + std::to_string(s1.params->lambda) + "," +
                                       std::to_string(s1.params->mu) + ")"
                                 : s1.failure + s2.failure);
  rep.add("both graphs connected", is_connected(paley) && is_connected(peisert));

  std::vector<Triple> all = samples;
  all.push_back({-1, (q - 1) / 2, 0});  // the Laplacian
  auto snfs = parallel_map(2 * all.size(), jobs, [&](std::size_t n) {
    const Triple& t = all[n / 2];
    return smith_normal_form(generalized(n % 2 ? peisert : paley, t.a, t.b, t.c));
  });
  std::vector<std::string> bad;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const SmithForm& x = snfs[2 * n];
    const SmithForm& y = snfs[2 * n + 1];
    if (x.diagonal != y.diagonal) bad.push_back(triple_name(all[n]) + ": " + describe(x) + " vs " + describe(y));
  }
  rep.add("SNF(aA+bI+cJ) = SNF(aA*+bI+cJ) on " + std::to_string(samples.size()) + " samples", bad.empty(), join(bad));
  const SmithForm& lp = snfs[2 * samples.size()];
  const SmithForm& ls = snfs[2 * samples.size() + 1];
  rep.add("Laplacian SNFs equal (isomorphic critical groups)", lp.diagonal == ls.diagonal,
          describe(lp) + " vs " + describe(ls));
  return rep;
}

Report compare_suite(std::uint32_t p, const std::vector<Triple>& samples, unsigned jobs) {
  const CarryContext ctx(p, 1);
  const FieldTable field = build_field(p, 2);
  const GaloisRing ring = build_ring(field, 4);
  Report rep;
  rep.suite = "compare";
  rep.q = field.q();
  rep.append(verify_berndt(ctx, ring, jobs));
  rep.append(verify_canonical_forms(ctx, ring, jobs));
  rep.append(verify_m0(ctx, ring));
  rep.append(verify_block_displays(ring, jobs));
  rep.append(compare_generalized(field, samples, jobs));
  return rep;
}

}  // namespace peisert

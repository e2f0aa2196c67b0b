#include "peisert/gring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace peisert {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  const std::int64_t r = v % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

}  // namespace

const GrElem& GaloisRing::teich(std::int64_t j) const {
  return teich_[static_cast<std::size_t>(mod_floor(j, static_cast<std::int64_t>(q() - 1)))];
}

GrElem GaloisRing::from_int(std::int64_t v) const {
  GrElem out;
  out.c[0] = reduce_signed(v, pk_);
  return out;
}

GrElem GaloisRing::add(const GrElem& a, const GrElem& b) const {
  GrElem out;
  for (std::uint32_t i = 0; i < n(); ++i) {
    const std::uint64_t s = a.c[i] + b.c[i];
    out.c[i] = s >= pk_ ? s - pk_ : s;
  }
  return out;
}

GrElem GaloisRing::sub(const GrElem& a, const GrElem& b) const {
  GrElem out;
  for (std::uint32_t i = 0; i < n(); ++i) out.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + pk_ - b.c[i];
  return out;
}

GrElem GaloisRing::neg(const GrElem& a) const { return sub(GrElem{}, a); }

GrElem GaloisRing::mul(const GrElem& a, const GrElem& b) const {
  const std::uint32_t deg = n();
  std::array<u128, 2 * kMaxRingDegree> acc{};
  for (std::uint32_t i = 0; i < deg; ++i) {
    if (a.c[i] == 0) continue;
    for (std::uint32_t j = 0; j < deg; ++j) acc[i + j] += static_cast<u128>(a.c[i]) * b.c[j];
  }
  std::array<std::uint64_t, 2 * kMaxRingDegree> prod{};
  for (std::uint32_t i = 0; i + 1 < 2 * deg; ++i) prod[i] = static_cast<std::uint64_t>(acc[i] % pk_);
  for (std::uint32_t d = 2 * deg - 2; d >= deg && d < 2 * deg; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < deg; ++i) {
      const std::uint64_t t = mulmod(c, lift_[i], pk_);
      const std::uint64_t cur = prod[d - deg + i];
      prod[d - deg + i] = cur >= t ? cur - t : cur + pk_ - t;
    }
  }
  GrElem out;
  for (std::uint32_t i = 0; i < deg; ++i) out.c[i] = prod[i];
  return out;
}

GrElem GaloisRing::scale(const GrElem& a, std::int64_t s) const {
  const std::uint64_t f = reduce_signed(s, pk_);
  GrElem out;
  for (std::uint32_t i = 0; i < n(); ++i) out.c[i] = mulmod(a.c[i], f, pk_);
  return out;
}

GrElem GaloisRing::pow(GrElem a, std::uint64_t e) const {
  GrElem result = from_int(1);
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t GaloisRing::residue(const GrElem& a) const {
  std::vector<std::uint32_t> c(n());
  for (std::uint32_t i = 0; i < n(); ++i) c[i] = static_cast<std::uint32_t>(a.c[i] % p());
  return field_->encode(c);
}

GrElem GaloisRing::lift(std::uint32_t x) const {
  GrElem out;
  const auto c = field_->coeffs(x);
  for (std::uint32_t i = 0; i < n(); ++i) out.c[i] = c[i];
  return out;
}

GrElem GaloisRing::inverse(const GrElem& a) const {
  const std::uint32_t r = residue(a);
  if (r == 0) throw std::domain_error("inverse of a non-unit in the Galois ring");
  GrElem y = lift(field_->inv(r));
  const GrElem two = from_int(2);
  for (std::uint32_t prec = 1; prec < k_; prec *= 2) y = mul(y, sub(two, mul(a, y)));
  if (mul(a, y) != from_int(1)) throw std::logic_error("Newton inversion failed to converge");
  return y;
}

GrElem GaloisRing::div_p_power(const GrElem& a, std::uint32_t v) const {
  std::uint64_t pv = 1;
  for (std::uint32_t i = 0; i < v; ++i) pv *= p();
  GrElem out;
  for (std::uint32_t i = 0; i < n(); ++i) {
    if (a.c[i] % pv != 0) throw std::domain_error("element is not divisible by the requested power of p");
    out.c[i] = a.c[i] / pv;
  }
  return out;
}

GrElem GaloisRing::reduce(const GrElem& a, std::uint32_t k_low) const {
  if (k_low > k_) throw std::invalid_argument("cannot reduce to a higher precision");
  std::uint64_t m = 1;
  for (std::uint32_t i = 0; i < k_low; ++i) m *= p();
  GrElem out;
  for (std::uint32_t i = 0; i < n(); ++i) out.c[i] = a.c[i] % m;
  return out;
}

GrElem GaloisRing::eta() const {
  if ((q() - 1) % 4 != 0) throw std::domain_error("eta needs q == 1 (mod 4)");
  return teich(static_cast<std::int64_t>((q() - 1) / 4));
}

GrElem GaloisRing::alpha() const {
  const GrElem half = from_int(static_cast<std::int64_t>((pk_ + 1) / 2));
  return mul(sub(from_int(1), eta()), half);
}

GrElem GaloisRing::alpha_bar() const {
  const GrElem half = from_int(static_cast<std::int64_t>((pk_ + 1) / 2));
  return mul(add(from_int(1), eta()), half);
}

namespace {

// Iterates z <- z^q until it stops moving; each step gains one p-adic digit.
GrElem teichmuller_fixed_point(const GaloisRing& ring, GrElem z) {
  for (std::uint32_t step = 0; step <= ring.k() + 1; ++step) {
    GrElem next = ring.pow(z, ring.q());
    if (next == z) return z;
    z = next;
  }
  throw std::logic_error("Teichmuller iteration did not converge");
}

}  // namespace

GaloisRing build_ring(const FieldTable& field, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("ring precision must be at least 1");
  if (field.p() == 2) throw std::invalid_argument("Galois ring construction requires odd p");
  if (field.n() > kMaxRingDegree)
    throw std::invalid_argument("extension degree exceeds the supported ring degree " +
                                std::to_string(kMaxRingDegree));
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (pk > (std::uint64_t{1} << 60) / field.p())
      throw std::invalid_argument("p^k exceeds the 60-bit arithmetic limit");
    pk *= field.p();
  }

  GaloisRing ring;
  ring.field_ = &field;
  ring.k_ = k;
  ring.pk_ = pk;
  const std::uint32_t n = field.n();
  ring.lift_.assign(field.modulus().begin(), field.modulus().end());

  // In (Z/p^k)[y]/(f_0) for the naive lift f_0, the Teichmuller lift of the root y
  // and its Frobenius conjugates give the lift of f dividing y^q - y.
  GrElem root;
  if (n == 1)
    root.c[0] = (pk - ring.lift_[0]) % pk;
  else
    root.c[1] = 1;
  root = teichmuller_fixed_point(ring, root);

  std::vector<GrElem> poly{ring.from_int(1)};  // coefficients in y, low first
  GrElem conj = root;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<GrElem> next(poly.size() + 1);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] = ring.add(next[d + 1], poly[d]);
      next[d] = ring.sub(next[d], ring.mul(poly[d], conj));
    }
    poly = std::move(next);
    conj = ring.pow(conj, field.p());
  }
  std::vector<std::uint64_t> lift(n + 1);
  for (std::uint32_t d = 0; d <= n; ++d) {
    for (std::uint32_t i = 1; i < n; ++i)
      if (poly[d].c[i] != 0) throw std::logic_error("minimal polynomial of the Teichmuller root is not integral");
    lift[d] = poly[d].c[0];
  }
  ring.lift_ = std::move(lift);

  const GrElem omega = teichmuller_fixed_point(ring, ring.lift(field.beta()));
  ring.teich_.resize(field.q() - 1);
  ring.teich_[0] = ring.from_int(1);
  for (std::uint64_t j = 1; j + 1 < field.q(); ++j) ring.teich_[j] = ring.mul(ring.teich_[j - 1], omega);
  return ring;
}

std::optional<std::uint32_t> valuation(const GaloisRing& ring, const GrElem& z) {
  std::optional<std::uint32_t> best;
  for (std::uint32_t i = 0; i < ring.n(); ++i) {
    std::uint64_t c = z.c[i];
    if (c == 0) continue;
    std::uint32_t v = 0;
    while (c % ring.p() == 0) {
      c /= ring.p();
      ++v;
    }
    if (!best || v < *best) best = v;
  }
  return best;
}

GrElem jacobi_gr(const GaloisRing& ring, std::int64_t i, std::int64_t j) {
  const FieldTable& F = ring.field();
  const std::int64_t order = static_cast<std::int64_t>(F.q() - 1);
  i = mod_floor(i, order);
  j = mod_floor(j, order);
  GrElem sum;
  // x = 0 and x = 1 contribute only through principal characters.
  if (i == 0) sum = ring.add(sum, ring.from_int(1));
  if (j == 0) sum = ring.add(sum, ring.from_int(1));
  for (std::int64_t m = 1; m < order; ++m) {
    const std::int64_t l = static_cast<std::int64_t>(F.log_one_minus(static_cast<std::uint64_t>(m)));
    sum = ring.add(sum, ring.teich(-(i * m) - j * l));
  }
  return sum;
}

Gaussian jacobi_quartic_exact(const FieldTable& field, std::int64_t i, std::int64_t j) {
  if ((field.q() - 1) % 4 != 0) throw std::invalid_argument("quartic Jacobi sums need q == 1 (mod 4)");
  const std::int64_t order = static_cast<std::int64_t>(field.q() - 1);
  const std::int64_t r = order / 4;
  i = mod_floor(i, order);
  j = mod_floor(j, order);
  if (i % r != 0 || j % r != 0) throw std::invalid_argument("quartic Jacobi sum indices must be multiples of r");
  if (i == 0 && j == 0) throw std::invalid_argument("quartic Jacobi sum with both characters principal");
  const std::int64_t a = i / r, b = j / r;
  static constexpr Gaussian kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Gaussian sum;
  auto accumulate = [&](const Gaussian& z) {
    sum.re += z.re;
    sum.im += z.im;
  };
  auto chi = [&](std::int64_t power, std::uint32_t x) -> Gaussian {
    // T^{-power r}(x) = eta^{-power * log x}
    if (x == 0) return power == 0 ? Gaussian{1, 0} : Gaussian{0, 0};
    return kUnit[mod_floor(-power * quartic_class(field, x), 4)];
  };
  for (std::uint32_t x = 0; x < field.q(); ++x) {
    const Gaussian u = chi(a, x), v = chi(b, field.sub(1, x));
    accumulate({u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re});
  }
  return sum;
}

GrElem gaussian_image(const GaloisRing& ring, const Gaussian& z) {
  return ring.add(ring.from_int(z.re), ring.scale(ring.eta(), z.im));
}

GrVector basis_vector_e(const GaloisRing& ring, std::int64_t i) {
  const FieldTable& F = ring.field();
  GrVector v;
  v.coords.resize(F.q());
  for (std::uint64_t m = 0; m + 1 < F.q(); ++m)
    v.coords[F.antilog(m)] = ring.teich(-i * static_cast<std::int64_t>(m));
  return v;
}

GrVector point_vector(const GaloisRing& ring, std::uint32_t x) {
  GrVector v;
  v.coords.resize(ring.q());
  v.coords.at(x) = ring.from_int(1);
  return v;
}

GrVector allone_vector(const GaloisRing& ring) {
  GrVector v;
  v.coords.assign(ring.q(), ring.from_int(1));
  return v;
}

GrVector vec_add(const GaloisRing& ring, const GrVector& a, const GrVector& b) {
  GrVector out;
  out.coords.resize(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = ring.add(a.coords[i], b.coords[i]);
  return out;
}

GrVector vec_scale(const GaloisRing& ring, const GrVector& a, const GrElem& s) {
  GrVector out;
  out.coords.resize(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = ring.mul(a.coords[i], s);
  return out;
}

GrElem e_coefficient(const GaloisRing& ring, const GrVector& v, std::int64_t j) {
  const FieldTable& F = ring.field();
  GrElem sum;
  for (std::uint64_t m = 0; m + 1 < F.q(); ++m) {
    const GrElem& x = v.coords[F.antilog(m)];
    if (!ring.is_zero(x)) sum = ring.add(sum, ring.mul(ring.teich(j * static_cast<std::int64_t>(m)), x));
  }
  return ring.mul(sum, ring.inverse(ring.from_int(static_cast<std::int64_t>(F.q() - 1))));
}

std::pair<GrElem, std::vector<GrElem>> decompose_e_basis(const GaloisRing& ring, const GrVector& v) {
  std::vector<GrElem> coeffs(ring.q() - 1);
  for (std::uint64_t j = 0; j + 1 < ring.q(); ++j) coeffs[j] = e_coefficient(ring, v, static_cast<std::int64_t>(j));
  // [0] is not in the span of the e_j, so its coefficient is the raw coordinate.
  return {v.coords[0], std::move(coeffs)};
}

}  // namespace peisert

namespace peisert {

GrMatrix gr_multiply(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("ring matrix product dimension mismatch");
  GrMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t l = 0; l < a.cols; ++l) {
      if (ring.is_zero(a.at(i, l))) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        out.at(i, j) = ring.add(out.at(i, j), ring.mul(a.at(i, l), b.at(l, j)));
    }
  return out;
}

std::vector<std::optional<std::uint32_t>> gr_elementary_divisors(const GaloisRing& ring, GrMatrix m) {
  // GR is local with maximal ideal (p): every nonzero entry is p^v times a unit, so pivoting
  // on an entry of least valuation clears its row and column.
  const std::size_t diag = std::min(m.rows, m.cols);
  std::vector<std::optional<std::uint32_t>> out;
  for (std::size_t step = 0; step < diag; ++step) {
    std::optional<std::uint32_t> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = step; i < m.rows; ++i)
      for (std::size_t j = step; j < m.cols; ++j) {
        const auto v = valuation(ring, m.at(i, j));
        if (v && (!best || *v < *best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!best) {
      for (std::size_t rest = step; rest < diag; ++rest) out.push_back(std::nullopt);
      break;
    }
    out.push_back(best);
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(step, j), m.at(bi, j));
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, step), m.at(i, bj));
    const std::uint32_t v = *best;
    const GrElem unit_inv = ring.inverse(ring.div_p_power(m.at(step, step), v));
    for (std::size_t i = step + 1; i < m.rows; ++i) {
      if (ring.is_zero(m.at(i, step))) continue;
      const GrElem f = ring.mul(ring.div_p_power(m.at(i, step), v), unit_inv);
      for (std::size_t j = step; j < m.cols; ++j) m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(step, j)));
    }
    // Column clearing only touches row `step`, which no longer matters.
  }
  return out;
}

std::size_t gr_rank_mod_p(const GaloisRing& ring, const GrMatrix& m) {
  std::size_t rank = 0;
  for (const auto& e : gr_elementary_divisors(ring, m))
    if (e && *e == 0) ++rank;
  return rank;
}

}  // namespace peisert

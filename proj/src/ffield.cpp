#include "peisert/ffield.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace peisert {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t n = f.size() - 1;  // f monic
  while (a.size() > n) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  Poly out(acc.begin(), acc.end());
  return poly_mod(std::move(out), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * lead_inv % p);
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's irreducibility test.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 1) return true;
  const Poly x{0, 1};
  auto frobenius_power = [&](std::uint32_t k) {
    Poly z = x;
    for (std::uint32_t i = 0; i < k; ++i) z = poly_powmod(z, p, f, p);
    return z;
  };
  auto minus_x = [&](Poly z) {
    z.resize(std::max<std::size_t>(z.size(), 2), 0);
    z[1] = (z[1] + p - 1) % p;
    trim(z);
    return z;
  };
  if (!minus_x(frobenius_power(n)).empty()) return false;
  for (std::uint64_t d : prime_divisors(n)) {
    Poly g = poly_gcd(f, minus_x(frobenius_power(n / static_cast<std::uint32_t>(d))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly decode(std::uint64_t x, std::uint32_t p, std::uint32_t n) {
  Poly c(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    c[i] = static_cast<std::uint32_t>(x % p);
    x /= p;
  }
  return c;
}

std::uint32_t encode_poly(const Poly& c, std::uint32_t p) {
  std::uint64_t x = 0;
  for (std::size_t i = c.size(); i-- > 0;) x = x * p + c[i];
  return static_cast<std::uint32_t>(x);
}

}  // namespace

const char* to_string(GraphKind kind) { return kind == GraphKind::Peisert ? "peisert" : "paley"; }

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "peisert") return GraphKind::Peisert;
  if (name == "paley") return GraphKind::Paley;
  throw std::invalid_argument("unknown graph kind '" + name + "' (expected peisert or paley)");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimePower split_prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint32_t n = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), n};
}

std::uint64_t FieldTable::log(std::uint32_t x) const {
  if (x == 0 || x >= q_) throw std::invalid_argument("log of zero or out-of-range element");
  return log_[x];
}

std::uint32_t FieldTable::add(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t FieldTable::neg(std::uint32_t a) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t FieldTable::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldTable::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return antilog_[(std::uint64_t{log_[a]} + log_[b]) % (q_ - 1)];
}

std::uint32_t FieldTable::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t FieldTable::encode(const std::vector<std::uint32_t>& coeffs) const {
  Poly c(n_, 0);
  for (std::size_t i = 0; i < coeffs.size() && i < n_; ++i) c[i] = coeffs[i] % p_;
  return encode_poly(c, p_);
}

std::vector<std::uint32_t> FieldTable::coeffs(std::uint32_t x) const { return decode(x, p_, n_); }

FieldTable build_field(std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > cap) throw std::invalid_argument("field size exceeds cap " + std::to_string(cap));
  }

  FieldTable F;
  F.p_ = p;
  F.n_ = n;
  F.q_ = q;

  for (std::uint64_t tail = 0; tail < q; ++tail) {
    Poly f = decode(tail, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) {
      F.modulus_ = f;
      break;
    }
  }

  const auto divisors = prime_divisors(q - 1);
  for (std::uint64_t g = 1; g < q; ++g) {
    const Poly gp = decode(g, p, n);
    bool primitive = true;
    for (std::uint64_t ell : divisors) {
      Poly z = poly_powmod(gp, (q - 1) / ell, F.modulus_, p);
      if (z.size() == 1 && z[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      F.beta_ = static_cast<std::uint32_t>(g);
      break;
    }
  }

  F.antilog_.resize(q - 1);
  F.log_.assign(q, 0);
  const Poly beta = decode(F.beta_, p, n);
  Poly cur{1};
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    Poly padded = cur;
    padded.resize(n, 0);
    const std::uint32_t enc = encode_poly(padded, p);
    F.antilog_[e] = enc;
    F.log_[enc] = static_cast<std::uint32_t>(e);
    cur = poly_mulmod(cur, beta, F.modulus_, p);
  }

  F.one_minus_.assign(q - 1, 0);
  for (std::uint64_t m = 1; m + 1 < q; ++m) F.one_minus_[m] = F.log_[F.sub(1, F.antilog_[m])];
  return F;
}

int quartic_class(const FieldTable& field, std::uint32_t x) {
  if (field.q() % 4 != 1) throw std::invalid_argument("quartic classes need q == 1 (mod 4)");
  if (x == 0) throw std::invalid_argument("quartic class of zero");
  return static_cast<int>(field.log(x) % 4);
}

void check_graph_params(const FieldTable& field, GraphKind kind) {
  if (kind == GraphKind::Peisert) {
    if (field.p() % 4 != 3 || field.n() % 2 != 0)
      throw std::invalid_argument("Peisert graphs need p == 3 (mod 4) and even extension degree (got p=" +
                                  std::to_string(field.p()) + ", n=" + std::to_string(field.n()) + ")");
  } else if (field.q() % 4 != 1) {
    throw std::invalid_argument("Paley graphs need q == 1 (mod 4) (got q=" + std::to_string(field.q()) + ")");
  }
}

std::vector<std::uint32_t> connection_set(const FieldTable& field, GraphKind kind) {
  check_graph_params(field, kind);
  std::vector<std::uint32_t> out;
  out.reserve((field.q() - 1) / 2);
  for (std::uint32_t x = 1; x < field.q(); ++x) {
    const int c = quartic_class(field, x);
    const bool member = kind == GraphKind::Peisert ? (c == 0 || c == 1) : (c % 2 == 0);
    if (member) out.push_back(x);
  }
  return out;
}

}  // namespace peisert

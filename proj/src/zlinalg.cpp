#include "peisert/zlinalg.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "peisert/ffield.hpp"

namespace peisert {

namespace {

using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Word-size modular helpers

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<u128>(r) * b % m);
    b = static_cast<std::uint64_t>(static_cast<u128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

// Inverse of a unit modulo m (m need not be prime).
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (r != 1) throw std::domain_error("modular inverse of a non-unit");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::vector<std::uint64_t> reduce_matrix(const IntMatrix& m, std::uint64_t modulus) {
  std::vector<std::uint64_t> out(m.rows() * m.cols());
  mpz_class mod_z;
  mpz_set_ui(mod_z.get_mpz_t(), modulus);
  mpz_class tmp;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_fdiv_r(tmp.get_mpz_t(), m(i, j).get_mpz_t(), mod_z.get_mpz_t());
      out[i * m.cols() + j] = mpz_get_ui(tmp.get_mpz_t());
    }
  return out;
}

struct ModElimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

// Gaussian elimination over GF(p) with complete pivoting; records the original
// indices of the pivot rows and columns. p < 2^32.
ModElimination eliminate_mod_prime(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols, std::uint64_t p) {
  std::vector<std::size_t> row_id(rows), col_id(cols);
  for (std::size_t i = 0; i < rows; ++i) row_id[i] = i;
  for (std::size_t j = 0; j < cols; ++j) col_id[j] = j;
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * cols + j]; };

  ModElimination out;
  const std::size_t limit = std::min(rows, cols);
  for (std::size_t k = 0; k < limit; ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t j = k; j < cols && pr == rows; ++j)
      for (std::size_t i = k; i < rows; ++i)
        if (at(i, j) != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows) break;
    if (pr != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(k, j), at(pr, j));
      std::swap(row_id[k], row_id[pr]);
    }
    if (pc != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pc));
      std::swap(col_id[k], col_id[pc]);
    }
    const std::uint64_t inv = powmod(at(k, k), p - 2, p);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const std::uint64_t f = at(i, k) * inv % p;
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      std::uint64_t* ri = &at(i, 0);
      const std::uint64_t* rk = &at(k, 0);
      for (std::size_t j = k; j < cols; ++j) ri[j] = (ri[j] + nf * rk[j]) % p;
    }
    out.pivot_rows.push_back(row_id[k]);
    out.pivot_cols.push_back(col_id[k]);
    ++out.rank;
  }
  return out;
}

std::uint64_t det_mod_prime(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t p) {
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * n + j]; };
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n;
    for (std::size_t i = k; i < n; ++i)
      if (at(i, k) != 0) {
        pr = i;
        break;
      }
    if (pr == n) return 0;
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pr, j));
      det = (p - det) % p;
    }
    det = det * at(k, k) % p;
    const std::uint64_t inv = powmod(at(k, k), p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = at(i, k) * inv % p;
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = k; j < n; ++j) at(i, j) = (at(i, j) + nf * at(k, j)) % p;
    }
  }
  return det;
}

// Upper bound for the absolute value of every minor: product of row norms.
mpz_class hadamard_bound(const IntMatrix& m) {
  mpz_class bound = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class sq = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) sq += m(i, j) * m(i, j);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    if (root * root < sq) root += 1;
    if (root > 1) bound *= root;
  }
  return bound;
}

const std::vector<std::uint64_t>& crt_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = (std::uint64_t{1} << 31) - 1; out.size() < 256; c -= 2)
      if (is_prime(c)) out.push_back(c);
    return out;
  }();
  return primes;
}

struct MaximalMinor {
  std::size_t rank = 0;
  mpz_class value;  // a nonzero rank x rank minor (unset when rank == 0)
};

// Rank over Q and a nonzero maximal minor, from eliminations modulo enough primes that
// their product exceeds twice the Hadamard bound (which certifies both).
MaximalMinor maximal_minor(const IntMatrix& m) {
  const mpz_class target = 2 * hadamard_bound(m);
  const auto& primes = crt_primes();
  std::vector<ModElimination> elims;
  std::vector<std::vector<std::uint64_t>> reduced;
  mpz_class product = 1;
  std::size_t best = 0;
  for (std::size_t idx = 0; product <= target; ++idx) {
    if (idx >= primes.size()) throw std::runtime_error("CRT prime supply exhausted");
    reduced.push_back(reduce_matrix(m, primes[idx]));
    elims.push_back(eliminate_mod_prime(reduced.back(), m.rows(), m.cols(), primes[idx]));
    if (elims.back().rank > elims[best].rank) best = elims.size() - 1;
    mpz_class pz;
    mpz_set_ui(pz.get_mpz_t(), primes[idx]);
    product *= pz;
  }
  MaximalMinor out;
  out.rank = elims[best].rank;
  if (out.rank == 0) return out;

  const auto& rows = elims[best].pivot_rows;
  const auto& cols = elims[best].pivot_cols;
  const std::size_t r = out.rank;
  mpz_class value = 0, modulus = 1;
  for (std::size_t idx = 0; idx < reduced.size(); ++idx) {
    const std::uint64_t p = primes[idx];
    std::vector<std::uint64_t> minor(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) minor[i * r + j] = reduced[idx][rows[i] * m.cols() + cols[j]];
    const std::uint64_t residue = det_mod_prime(std::move(minor), r, p);
    // value += modulus * ((residue - value) * modulus^{-1} mod p)
    const std::uint64_t cur = mpz_fdiv_ui(value.get_mpz_t(), p);
    const std::uint64_t minv = invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
    const std::uint64_t delta = static_cast<std::uint64_t>(static_cast<u128>((residue + p - cur) % p) * minv % p);
    mpz_class dz;
    mpz_set_ui(dz.get_mpz_t(), delta);
    value += modulus * dz;
    mpz_class pz;
    mpz_set_ui(pz.get_mpz_t(), p);
    modulus *= pz;
  }
  if (2 * value > modulus) value -= modulus;
  if (value == 0) throw std::logic_error("selected maximal minor vanished over Z");
  out.value = value;
  return out;
}

// Rewrites a list of torsion orders as a divisibility chain with the same direct sum.
void normalize_chain(std::vector<mpz_class>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      if (g == d[i]) continue;
      const mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<mpz_class> kept;
  for (auto& x : d)
    if (x > 1) kept.push_back(x);
  d = std::move(kept);
}

// Diagonalises m modulo N by unimodular row and column operations and returns
// the diagonal entries gcd(d_i, N) (zero pivots read as N).
std::vector<mpz_class> diagonal_mod(const IntMatrix& m, const mpz_class& modulus) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) mpz_fdiv_r(a[i * cols + j].get_mpz_t(), m(i, j).get_mpz_t(), modulus.get_mpz_t());
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * cols + j]; };

  mpz_class g, s, t, x, tmp, unit_inv;
  auto reduce = [&](mpz_class& v) { mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t()); };

  const std::size_t limit = std::min(rows, cols);
  std::vector<mpz_class> diag;
  for (std::size_t k = 0; k < limit; ++k) {
    // Prefer a unit pivot; otherwise the entry sharing the smallest factor with N.
    std::size_t pr = rows, pc = cols;
    mpz_class best_gcd;
    for (std::size_t j = k; j < cols; ++j) {
      for (std::size_t i = k; i < rows; ++i) {
        if (at(i, j) == 0) continue;
        mpz_gcd(g.get_mpz_t(), at(i, j).get_mpz_t(), modulus.get_mpz_t());
        if (pr == rows || g < best_gcd) {
          pr = i;
          pc = j;
          best_gcd = g;
          if (g == 1) break;
        }
      }
      if (pr != rows && best_gcd == 1) break;
    }
    if (pr == rows) break;
    if (pr != k)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(k, j), at(pr, j));
    if (pc != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pc));

    bool clean = false;
    while (!clean) {
      clean = true;
      // Rows below the pivot.
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (at(i, k) == 0) continue;
        mpz_gcd(g.get_mpz_t(), at(k, k).get_mpz_t(), modulus.get_mpz_t());
        if (mpz_divisible_p(at(i, k).get_mpz_t(), g.get_mpz_t())) {
          // Solve pivot * x == a (mod N).
          const mpz_class reduced_mod = modulus / g;
          mpz_class pivot_red = at(k, k) / g;
          mpz_invert(unit_inv.get_mpz_t(), pivot_red.get_mpz_t(), reduced_mod.get_mpz_t());
          x = at(i, k) / g * unit_inv;
          mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), reduced_mod.get_mpz_t());
          for (std::size_t j = k; j < cols; ++j) {
            if (at(k, j) == 0) continue;
            mpz_submul(at(i, j).get_mpz_t(), x.get_mpz_t(), at(k, j).get_mpz_t());
            reduce(at(i, j));
          }
        } else {
          // Bezout step: the pivot becomes gcd(pivot, a) over Z.
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), at(k, k).get_mpz_t(), at(i, k).get_mpz_t());
          const mpz_class u = at(k, k) / g, v = at(i, k) / g;
          for (std::size_t j = k; j < cols; ++j) {
            const mpz_class top = s * at(k, j) + t * at(i, j);
            const mpz_class bottom = u * at(i, j) - v * at(k, j);
            at(k, j) = top;
            at(i, j) = bottom;
            reduce(at(k, j));
            reduce(at(i, j));
          }
        }
      }
      // Columns right of the pivot. Column k is zero below the pivot until a Bezout step refills it.
      bool column_clear = true;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (at(k, j) == 0) continue;
        mpz_gcd(g.get_mpz_t(), at(k, k).get_mpz_t(), modulus.get_mpz_t());
        if (mpz_divisible_p(at(k, j).get_mpz_t(), g.get_mpz_t())) {
          if (!column_clear) {
            const mpz_class reduced_mod = modulus / g;
            mpz_class pivot_red = at(k, k) / g;
            mpz_invert(unit_inv.get_mpz_t(), pivot_red.get_mpz_t(), reduced_mod.get_mpz_t());
            x = at(k, j) / g * unit_inv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), reduced_mod.get_mpz_t());
            for (std::size_t i = k + 1; i < rows; ++i) {
              if (at(i, k) == 0) continue;
              mpz_submul(at(i, j).get_mpz_t(), x.get_mpz_t(), at(i, k).get_mpz_t());
              reduce(at(i, j));
            }
          }
          at(k, j) = 0;
        } else {
          column_clear = false;
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), at(k, k).get_mpz_t(), at(k, j).get_mpz_t());
          const mpz_class u = at(k, k) / g, v = at(k, j) / g;
          for (std::size_t i = k; i < rows; ++i) {
            const mpz_class left = s * at(i, k) + t * at(i, j);
            const mpz_class right = u * at(i, j) - v * at(i, k);
            at(i, k) = left;
            at(i, j) = right;
            reduce(at(i, k));
            reduce(at(i, j));
          }
          clean = false;
        }
      }
      for (std::size_t i = k + 1; i < rows && clean; ++i)
        if (at(i, k) != 0) clean = false;
    }
    mpz_gcd(tmp.get_mpz_t(), at(k, k).get_mpz_t(), modulus.get_mpz_t());
    diag.push_back(tmp);
  }
  while (diag.size() < limit) diag.push_back(modulus);
  return diag;
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t DivisorProfile::total_exponent() const {
  std::uint64_t total = 0;
  for (const auto& [j, count] : mult) total += static_cast<std::uint64_t>(j) * count;
  return total;
}

void DivisorProfile::normalize() {
  for (auto it = mult.begin(); it != mult.end();) it = it->second == 0 ? mult.erase(it) : std::next(it);
}

AbelianGroup AbelianGroup::from_profiles(const std::map<std::uint64_t, DivisorProfile>& profiles) {
  AbelianGroup g;
  bool first = true;
  std::vector<mpz_class> factors;
  for (const auto& [p, prof] : profiles) {
    if (first) g.free_rank = prof.free_rank;
    else if (g.free_rank != prof.free_rank)
      throw std::invalid_argument("per-prime profiles disagree on the free rank");
    first = false;
    // Exponents >= 1 in decreasing order.
    std::vector<std::uint32_t> exps;
    for (auto it = prof.mult.rbegin(); it != prof.mult.rend(); ++it)
      if (it->first > 0) exps.insert(exps.end(), it->second, it->first);
    if (exps.size() > factors.size()) factors.resize(exps.size(), mpz_class(1));
    mpz_class pz;
    mpz_set_ui(pz.get_mpz_t(), p);
    for (std::size_t idx = 0; idx < exps.size(); ++idx) {
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), pz.get_mpz_t(), exps[idx]);
      factors[idx] *= power;
    }
  }
  std::reverse(factors.begin(), factors.end());
  g.invariant_factors = std::move(factors);
  return g;
}

std::vector<std::uint64_t> AbelianGroup::primes() const {
  std::map<std::uint64_t, std::uint32_t> all;
  for (const auto& d : invariant_factors)
    for (const auto& [p, e] : factor(d)) all[p] += e;
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : all) out.push_back(p);
  return out;
}

DivisorProfile AbelianGroup::profile(std::uint64_t p, std::optional<std::uint64_t> dimension) const {
  DivisorProfile prof;
  prof.prime = p;
  prof.free_rank = free_rank;
  std::uint64_t nontrivial = 0;
  for (const auto& d : invariant_factors) {
    const std::uint32_t v = static_cast<std::uint32_t>(mpz_remove(mpz_class().get_mpz_t(), d.get_mpz_t(),
                                                                  mpz_class(static_cast<unsigned long>(p)).get_mpz_t()));
    if (v > 0) {
      ++prof.mult[v];
      ++nontrivial;
    }
  }
  if (dimension) {
    if (*dimension < nontrivial + free_rank) throw std::invalid_argument("dimension too small for group");
    prof.mult[0] = *dimension - nontrivial - free_rank;
    prof.normalize();
  }
  return prof;
}

std::map<std::uint64_t, DivisorProfile> AbelianGroup::profiles(std::optional<std::uint64_t> dimension) const {
  std::map<std::uint64_t, DivisorProfile> out;
  for (auto p : primes()) out[p] = profile(p, dimension);
  return out;
}

std::map<std::uint64_t, std::uint32_t> factor(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::map<std::uint64_t, std::uint32_t> out;
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  for (std::uint64_t d = 2; d < 1'000'000 && n > 1; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      std::uint32_t e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        ++e;
      }
      out[d] = e;
    }
    if (mpz_cmp_ui(n.get_mpz_t(), d * d) < 0 && n > 1) {
      // n has no factor <= d, hence is prime.
      if (!mpz_fits_ulong_p(n.get_mpz_t())) break;
      out[mpz_get_ui(n.get_mpz_t())] += 1;
      n = 1;
    }
  }
  if (n > 1) {
    if (!mpz_fits_ulong_p(n.get_mpz_t()) || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw std::runtime_error("factorisation beyond trial-division range: " + n.get_str());
    out[mpz_get_ui(n.get_mpz_t())] += 1;
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  const MaximalMinor minor = maximal_minor(m);
  out.rank = minor.rank;
  if (minor.rank == 0) {
    out.diagonal.assign(limit, mpz_class(0));
    out.cokernel.free_rank = m.rows();
    return out;
  }
  // Torsion invariants divide the minor, so 2|minor| separates them from free summands.
  const mpz_class modulus = 2 * abs(minor.value);
  std::vector<mpz_class> diag = diagonal_mod(m, modulus);
  std::size_t free_in_diag = 0, ones = 0;
  std::vector<mpz_class> torsion;
  for (auto& d : diag) {
    if (d == modulus) ++free_in_diag;
    else if (d == 1) ++ones;
    else torsion.push_back(d);
  }
  if (limit - free_in_diag != minor.rank)
    throw std::logic_error("modular Smith reduction disagrees with the certified rank");
  normalize_chain(torsion);
  ones = minor.rank - torsion.size();
  out.diagonal.assign(ones, mpz_class(1));
  out.diagonal.insert(out.diagonal.end(), torsion.begin(), torsion.end());
  out.diagonal.resize(limit, mpz_class(0));
  out.cokernel.invariant_factors = std::move(torsion);
  out.cokernel.free_rank = m.rows() - minor.rank;
  return out;
}

DivisorProfile local_divisors(const IntMatrix& m, std::uint64_t p, std::uint32_t precision,
                              const std::optional<LocalExpectation>& expect) {
  if (precision == 0) throw std::invalid_argument("precision must be at least 1");
  if (!is_prime(p)) throw std::invalid_argument("local divisors need a prime");
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < precision; ++i) {
    if (pk > (std::uint64_t{1} << 62) / p) throw std::invalid_argument("p^K exceeds the 62-bit arithmetic limit");
    pk *= p;
  }
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a = reduce_matrix(m, pk);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * cols + j]; };
  auto val = [&](std::uint64_t x) {
    std::uint32_t v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };

  DivisorProfile prof;
  prof.prime = p;
  const std::size_t limit = std::min(rows, cols);
  std::size_t steps = 0;
  for (std::size_t k = 0; k < limit; ++k) {
    std::size_t pr = rows, pc = cols;
    std::uint32_t best = precision;
    for (std::size_t i = k; i < rows && best > 0; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (at(i, j) == 0) continue;
        const std::uint32_t v = val(at(i, j));
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    if (pr == rows) break;
    if (pr != k)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(k, j), at(pr, j));
    if (pc != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pc));
    std::uint64_t pv = 1;
    for (std::uint32_t e = 0; e < best; ++e) pv *= p;
    const std::uint64_t unit_inv = invmod(at(k, k) / pv, pk);
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (at(i, k) == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>(static_cast<u128>(at(i, k) / pv) * unit_inv % pk);
      const std::uint64_t nf = (pk - f) % pk;
      for (std::size_t j = k; j < cols; ++j)
        at(i, j) = static_cast<std::uint64_t>((at(i, j) + static_cast<u128>(nf) * at(k, j)) % pk);
    }
    // The pivot divides its whole row, so column operations only clear that row.
    ++prof.mult[best];
    ++steps;
  }

  const std::uint64_t residual = limit - steps;
  const std::uint64_t base_free = rows - limit;
  if (!expect) {
    prof.free_rank = base_free + residual;
    return prof;
  }
  if (expect->free_rank < base_free || residual < expect->free_rank - base_free)
    throw PrecisionAmbiguity("fewer vanishing divisors than the expected free rank at p=" + std::to_string(p));
  const std::uint64_t extra = residual - (expect->free_rank - base_free);
  const std::uint64_t seen = prof.total_exponent();
  prof.free_rank = expect->free_rank;
  if (extra == 0) {
    if (seen != expect->total_exponent)
      throw PrecisionAmbiguity("exponent total " + std::to_string(seen) + " differs from expected " +
                               std::to_string(expect->total_exponent));
  } else if (extra == 1 && expect->total_exponent >= seen + precision) {
    ++prof.mult[static_cast<std::uint32_t>(expect->total_exponent - seen)];
  } else if (expect->total_exponent == seen + extra * precision) {
    // each vanishing divisor has exponent >= K, so the total forces all of them to K
    prof.mult[precision] += extra;
  } else {
    throw PrecisionAmbiguity(std::to_string(extra) + " divisors vanish at precision " + std::to_string(precision) +
                             "; raise the precision");
  }
  return prof;
}

DivisorProfile local_divisors_auto(const IntMatrix& m, std::uint64_t p, std::uint32_t precision,
                                   const LocalExpectation& expect) {
  for (std::uint32_t k = std::max<std::uint32_t>(precision, 1);; ++k) {
    try {
      return local_divisors(m, p, k, expect);
    } catch (const PrecisionAmbiguity&) {
      // retry with one more digit; local_divisors rejects K once p^K overflows
    }
  }
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p) || p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("rank_mod_p needs a prime below 2^32");
  return eliminate_mod_prime(reduce_matrix(m, p), m.rows(), m.cols(), p).rank;
}

mpz_class group_order(const AbelianGroup& g) {
  // Balanced product tree; a running product is quadratic in the bit length.
  std::vector<mpz_class> level = g.invariant_factors;
  if (level.empty()) return 1;
  while (level.size() > 1) {
    std::vector<mpz_class> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] * level[i + 1];
    if (level.size() % 2) next.back() = level.back();
    level = std::move(next);
  }
  return level.front();
}

}  // namespace peisert

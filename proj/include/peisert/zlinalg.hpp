#pragma once

// Exact integer linear algebra: Smith normal form over Z, p-local elementary
// divisors over Z/p^K, and ranks over GF(p).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "peisert/graphs.hpp"

namespace peisert {

/// Multiplicities m(j) of p^j as a p-elementary divisor, plus the free rank.
struct DivisorProfile {
  std::uint64_t prime = 0;
  std::map<std::uint32_t, std::uint64_t> mult;
  std::uint64_t free_rank = 0;

  std::uint64_t multiplicity(std::uint32_t j) const {
    const auto it = mult.find(j);
    return it == mult.end() ? 0 : it->second;
  }
  /// sum_j j m(j), the exponent of p in the order of the torsion part.
  std::uint64_t total_exponent() const;
  /// Drops zero multiplicities so equal profiles compare equal.
  void normalize();

  friend bool operator==(const DivisorProfile&, const DivisorProfile&) = default;
};

/// Finite abelian group plus free part: Z^free_rank + sum Z/d_i with d_1 | d_2 | ... and d_i > 1.
struct AbelianGroup {
  std::vector<mpz_class> invariant_factors;
  std::uint64_t free_rank = 0;

  /// Assembles invariant factors from per-prime elementary divisors (exponent 0 entries ignored).
  static AbelianGroup from_profiles(const std::map<std::uint64_t, DivisorProfile>& profiles);
  /// Primes dividing the torsion order.
  std::vector<std::uint64_t> primes() const;
  /// Elementary divisors at p. m(0) is filled in when `dimension` (the number of generators) is given.
  DivisorProfile profile(std::uint64_t p, std::optional<std::uint64_t> dimension = std::nullopt) const;
  std::map<std::uint64_t, DivisorProfile> profiles(std::optional<std::uint64_t> dimension = std::nullopt) const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

struct SmithForm {
  /// s_1 | s_2 | ... | s_rank followed by zeros; length min(rows, cols).
  std::vector<mpz_class> diagonal;
  std::size_t rank = 0;
  AbelianGroup cokernel;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Thrown when a residual bucket at precision K cannot be resolved.
class PrecisionAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Known facts used to resolve divisors that vanish at precision K.
struct LocalExpectation {
  std::uint64_t free_rank = 0;
  std::uint64_t total_exponent = 0;
};

/// Elementary divisor multiplicities m(0..K-1) by unit-pivot elimination over Z/p^K.
/// Divisors p^j with j >= K vanish at this precision: with an expectation they are resolved
/// (throwing PrecisionAmbiguity when not uniquely determined); without one they are counted
/// as free summands.
DivisorProfile local_divisors(const IntMatrix& m, std::uint64_t p, std::uint32_t precision,
                              const std::optional<LocalExpectation>& expect = std::nullopt);

/// local_divisors with K raised from `precision` until the expectation resolves.
DivisorProfile local_divisors_auto(const IntMatrix& m, std::uint64_t p, std::uint32_t precision,
                                   const LocalExpectation& expect);

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// Order of the torsion subgroup.
mpz_class group_order(const AbelianGroup& g);

/// Prime factorisation by trial division (with a probable-prime check on the cofactor).
std::map<std::uint64_t, std::uint32_t> factor(const mpz_class& n);

}  // namespace peisert

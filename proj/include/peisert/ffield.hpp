#pragma once

// Concrete prime-power fields GF(p^n) backed by discrete-log tables.
//
// Elements are encoded as integers: the residue a_0 + a_1 x + ... + a_{n-1} x^{n-1}
// is stored as sum a_i p^i. The same encoding fixes the vertex order of every
// graph built on the field.

#include <cstdint>
#include <string>
#include <vector>

namespace peisert {

enum class GraphKind { Peisert, Paley };

const char* to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& name);

inline constexpr std::uint64_t kDefaultFieldCap = 10'000'000;

bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
};

/// Splits q = p^n; throws std::invalid_argument if q is not a prime power.
PrimePower split_prime_power(std::uint64_t q);

class FieldTable {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  /// Monic modulus, coefficients a_0..a_n (a_n == 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::uint32_t beta() const { return beta_; }

  /// Discrete log base beta; x must be nonzero.
  std::uint64_t log(std::uint32_t x) const;
  std::uint32_t antilog(std::uint64_t e) const { return antilog_[e % (q_ - 1)]; }
  /// log(1 - beta^m) for m in 1..q-2; m == 0 has no value (1 - 1 = 0).
  std::uint64_t log_one_minus(std::uint64_t m) const { return one_minus_[m % (q_ - 1)]; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t encode(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coeffs(std::uint32_t x) const;

  friend bool operator==(const FieldTable&, const FieldTable&) = default;

 private:
  friend FieldTable build_field(std::uint32_t, std::uint32_t, std::uint64_t);

  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t beta_ = 0;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> antilog_;
  std::vector<std::uint32_t> one_minus_;  // one_minus_[0] unused
};

/// Builds GF(p^n) with the lexicographically smallest monic irreducible modulus
/// and the primitive element of smallest encoding. Throws std::invalid_argument
/// if p is not prime, n == 0, or p^n exceeds cap.
FieldTable build_field(std::uint32_t p, std::uint32_t n,
                       std::uint64_t cap = kDefaultFieldCap);

/// log(x) mod 4. Requires q == 1 (mod 4) and x != 0.
int quartic_class(const FieldTable& field, std::uint32_t x);

/// Peisert: C_0 u beta C_0 (p == 3 mod 4, n even). Paley: nonzero squares
/// (q == 1 mod 4). Sorted by encoding.
std::vector<std::uint32_t> connection_set(const FieldTable& field, GraphKind kind);

/// Throws std::invalid_argument when the field cannot carry the given graph.
void check_graph_params(const FieldTable& field, GraphKind kind);

}  // namespace peisert

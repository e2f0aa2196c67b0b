#pragma once

// Galois rings GR(p^k, n) = (Z/p^k)[x]/(g) where g is the Hensel lift of the
// field modulus that divides x^q - x. This is the finite-precision stand-in
// for the unramified local ring over Z_p in which the Teichmuller character
// takes its values; every p-adic statement is evaluated here modulo p^k.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "peisert/ffield.hpp"
#include "peisert/util.hpp"

namespace peisert {

inline constexpr std::uint32_t kMaxRingDegree = 16;

/// Coefficient vector of a ring element; entries beyond the ring degree are zero.
struct GrElem {
  std::array<std::uint64_t, kMaxRingDegree> c{};
  friend bool operator==(const GrElem&, const GrElem&) = default;
};

/// An element of the free module R^{F_q}: one ring element per field element,
/// indexed by field encoding.
struct GrVector {
  std::vector<GrElem> coords;
};

/// Gaussian integer a + b i, used for exact quartic Jacobi sums.
struct Gaussian {
  std::int64_t re = 0;
  std::int64_t im = 0;
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
  Gaussian conj() const { return {re, -im}; }
  std::int64_t norm() const { return re * re + im * im; }
};

class GaloisRing {
 public:
  const FieldTable& field() const { return *field_; }
  std::uint32_t p() const { return field_->p(); }
  std::uint32_t n() const { return field_->n(); }
  std::uint64_t q() const { return field_->q(); }
  std::uint32_t k() const { return k_; }
  /// p^k
  std::uint64_t modulus_int() const { return pk_; }
  /// Monic lift, coefficients g_0..g_n.
  const std::vector<std::uint64_t>& modulus_lift() const { return lift_; }
  /// omega^j, omega the Teichmuller lift of beta.
  const GrElem& teich(std::int64_t j) const;

  GrElem zero() const { return {}; }
  GrElem from_int(std::int64_t v) const;
  GrElem add(const GrElem& a, const GrElem& b) const;
  GrElem sub(const GrElem& a, const GrElem& b) const;
  GrElem neg(const GrElem& a) const;
  GrElem mul(const GrElem& a, const GrElem& b) const;
  GrElem scale(const GrElem& a, std::int64_t s) const;
  GrElem pow(GrElem a, std::uint64_t e) const;
  bool is_zero(const GrElem& a) const { return a == GrElem{}; }
  /// Inverse of a unit; throws std::domain_error for non-units.
  GrElem inverse(const GrElem& a) const;
  /// Exact division by p^v; a must lie in p^v GR. The quotient is meaningful modulo p^(k-v).
  GrElem div_p_power(const GrElem& a, std::uint32_t v) const;
  /// Reduction to the residue field (an encoding).
  std::uint32_t residue(const GrElem& a) const;
  /// Lifts a field element coefficientwise (not the Teichmuller lift).
  GrElem lift(std::uint32_t x) const;
  /// Reduction to a lower precision k' <= k, as coefficients modulo p^k'.
  GrElem reduce(const GrElem& a, std::uint32_t k_low) const;

  /// eta = omega^r, alpha = (1 - eta)/2, alpha_bar = (1 + eta)/2 (requires 4 | q-1).
  GrElem eta() const;
  GrElem alpha() const;
  GrElem alpha_bar() const;

 private:
  friend GaloisRing build_ring(const FieldTable&, std::uint32_t);

  const FieldTable* field_ = nullptr;
  std::uint32_t k_ = 0;
  std::uint64_t pk_ = 0;
  std::vector<std::uint64_t> lift_;
  std::vector<GrElem> teich_;
};

/// The ring keeps a reference to `field`, which must outlive it.
GaloisRing build_ring(const FieldTable& field, std::uint32_t k);

/// p-adic valuation; std::nullopt means the element is zero at this precision (valuation >= k).
std::optional<std::uint32_t> valuation(const GaloisRing& ring, const GrElem& z);

/// J(T^{-i}, T^{-j}) = sum_x T^{-i}(x) T^{-j}(1-x), principal characters taking 1 at 0.
GrElem jacobi_gr(const GaloisRing& ring, std::int64_t i, std::int64_t j);

/// Exact J(T^{-i}, T^{-j}) for i, j multiples of r = (q-1)/4, with T^r(beta) identified with
/// the Gaussian unit i. Throws std::invalid_argument otherwise or when both are principal.
Gaussian jacobi_quartic_exact(const FieldTable& field, std::int64_t i, std::int64_t j);

/// Image of a Gaussian integer in the ring under i -> eta.
GrElem gaussian_image(const GaloisRing& ring, const Gaussian& z);

/// e_i = sum_{x != 0} T^{-i}(x) [x].
GrVector basis_vector_e(const GaloisRing& ring, std::int64_t i);
/// [x] for a single field element x.
GrVector point_vector(const GaloisRing& ring, std::uint32_t x);
/// The all-one vector.
GrVector allone_vector(const GaloisRing& ring);

GrVector vec_add(const GaloisRing& ring, const GrVector& a, const GrVector& b);
GrVector vec_scale(const GaloisRing& ring, const GrVector& a, const GrElem& s);

/// Coefficient of e_j when v is written in the basis [0], e_0, ..., e_{q-2}.
GrElem e_coefficient(const GaloisRing& ring, const GrVector& v, std::int64_t j);
/// Coefficients of a vector in the basis [0], e_0, ..., e_{q-2}:
/// returns {coefficient of [0], coefficients c_j of e_j}.
std::pair<GrElem, std::vector<GrElem>> decompose_e_basis(const GaloisRing& ring, const GrVector& v);

/// Dense row-major matrix over the ring (the 4x4 and 5x5 blocks).
struct GrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<GrElem> data;

  GrMatrix() = default;
  GrMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  GrElem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const GrElem& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const GrMatrix&, const GrMatrix&) = default;
};

GrMatrix gr_multiply(const GaloisRing& ring, const GrMatrix& a, const GrMatrix& b);

/// Exponents of the elementary divisors over GR(p^k, n), ascending, one per diagonal
/// position. std::nullopt marks divisors that vanish at this precision (exponent >= k).
std::vector<std::optional<std::uint32_t>> gr_elementary_divisors(const GaloisRing& ring, GrMatrix m);

/// Rank of the reduction modulo p.
std::size_t gr_rank_mod_p(const GaloisRing& ring, const GrMatrix& m);

}  // namespace peisert

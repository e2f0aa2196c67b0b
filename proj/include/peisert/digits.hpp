#pragma once

// Base-p digit combinatorics modulo q - 1 for q = p^(2t), p == 3 (mod 4).
//
// s(j) is the digit sum of the representative of j in 1..q-2, and
// c(i, j) = (s(i) + s(j) - s(i + j)) / (p - 1) counts the carries when i and j
// are added in base p with end-around carry (addition modulo q - 1).

#include <array>
#include <cstdint>
#include <vector>

#include "peisert/ffield.hpp"

namespace peisert {

struct ClassRep {
  std::int64_t rep = 0;
  std::array<std::int64_t, 4> members{};  // rep, rep + r, rep + 2r, rep + 3r
};

class CarryContext {
 public:
  /// Requires p prime, p == 3 (mod 4), t >= 1 and q = p^(2t) <= cap.
  CarryContext(std::uint32_t p, std::uint32_t t, std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t t() const { return t_; }
  /// Digit count m = 2t.
  std::uint32_t m() const { return 2 * t_; }
  std::int64_t q() const { return q_; }
  std::int64_t r() const { return r_; }
  std::int64_t order() const { return q_ - 1; }

  std::vector<std::uint32_t> p_digits(std::int64_t j) const;
  std::uint32_t digit_sum(std::int64_t j) const;
  std::uint32_t carry_count(std::int64_t i, std::int64_t j) const;
  /// The (q-5)/4 classes {i, i+r, i+2r, i+3r} with representatives 1..r-1.
  std::vector<ClassRep> class_reps() const;

 private:
  std::int64_t reduce_nonzero(std::int64_t j) const;

  std::uint32_t p_;
  std::uint32_t t_;
  std::int64_t q_;
  std::int64_t r_;
  std::vector<std::uint16_t> sums_;  // s(j) for j in 0..q-2; sums_[0] unused
};

}  // namespace peisert

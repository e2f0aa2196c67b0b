#include "peisert/digits.hpp"

#include <stdexcept>
#include <string>

#include "peisert/util.hpp"

namespace peisert {

CarryContext::CarryContext(std::uint32_t p, std::uint32_t t, std::uint64_t cap) : p_(p), t_(t) {
  if (!is_prime(p) || p % 4 != 3)
    throw std::invalid_argument("carry context needs a prime p == 3 (mod 4), got " + std::to_string(p));
  if (t == 0) throw std::invalid_argument("t must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < 2 * t; ++i) {
    q *= p;
    if (q > cap) throw std::invalid_argument("q = p^(2t) exceeds cap " + std::to_string(cap));
  }
  q_ = static_cast<std::int64_t>(q);
  r_ = (q_ - 1) / 4;
  sums_.assign(static_cast<std::size_t>(q_ - 1), 0);
  // s(j) = s(j / p) + (j mod p)
  for (std::int64_t j = 1; j < q_ - 1; ++j)
    sums_[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(sums_[static_cast<std::size_t>(j / p_)] + j % p_);
}

std::int64_t CarryContext::reduce_nonzero(std::int64_t j) const {
  const std::int64_t red = mod_floor(j, q_ - 1);
  if (red == 0) throw std::invalid_argument("index " + std::to_string(j) + " is divisible by q-1");
  return red;
}

std::vector<std::uint32_t> CarryContext::p_digits(std::int64_t j) const {
  std::int64_t x = reduce_nonzero(j);
  std::vector<std::uint32_t> out(m());
  for (auto& d : out) {
    d = static_cast<std::uint32_t>(x % p_);
    x /= p_;
  }
  return out;
}

std::uint32_t CarryContext::digit_sum(std::int64_t j) const { return sums_[static_cast<std::size_t>(reduce_nonzero(j))]; }

std::uint32_t CarryContext::carry_count(std::int64_t i, std::int64_t j) const {
  const std::uint32_t total = digit_sum(i) + digit_sum(j);
  const std::uint32_t s = digit_sum(i + j);
  return (total - s) / (p_ - 1);
}

std::vector<ClassRep> CarryContext::class_reps() const {
  std::vector<ClassRep> out;
  out.reserve(static_cast<std::size_t>(r_ - 1));
  for (std::int64_t i = 1; i < r_; ++i) out.push_back({i, {i, i + r_, i + 2 * r_, i + 3 * r_}});
  return out;
}

}  // namespace peisert

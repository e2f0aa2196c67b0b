#pragma once

// Smith and critical groups of Peisert graphs from carry counts, with a per-block
// local oracle and a brute-force Smith normal form path.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "peisert/digits.hpp"
#include "peisert/ffield.hpp"
#include "peisert/gring.hpp"
#include "peisert/zlinalg.hpp"

namespace peisert {

enum class BlockMethod { Formula, BlockLocal };
const char* to_string(BlockMethod m);

/// Divisors of the Laplacian action on M_i = span(e_i, e_{i+r}, e_{i+2r}, e_{i+3r}).
struct BlockReport {
  std::int64_t rep = 0;
  std::array<std::int64_t, 4> members{};
  /// [c(i,r), c(i+r,3r), c(i+2r,r), c(i+3r,3r)]
  std::array<std::uint32_t, 4> list1{};
  /// [c(i,3r), c(i+r,r), c(i+2r,3r), c(i+3r,r)]
  std::array<std::uint32_t, 4> list2{};
  /// 1 or 2: the list holding the smallest entry (1 on a tie).
  int chosen = 1;
  /// Both lists attain the minimum and differ as multisets.
  bool tie = false;
  BlockMethod method = BlockMethod::Formula;
  /// Sorted ascending.
  std::array<std::uint32_t, 4> exponents{};
};

/// Raised when the formula path, the block-local path and the SNF path disagree.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block exponents from the carry-count lists. On an ambiguous tie the block is
/// handed to block_divisors_local with `fallback`; without a ring a tie throws
/// VerificationFailure rather than guessing.
BlockReport block_divisors_formula(const CarryContext& ctx, std::int64_t i, const GaloisRing* fallback = nullptr);

/// 4x4 matrix of 2 mu_L on M_i over GR, basis (e_i, e_{i+r}, e_{i+2r}, e_{i+3r}); columns are images.
GrMatrix laplacian_block(const GaloisRing& ring, std::int64_t i);
/// 5x5 matrix of 2 mu_L on M_0, basis (1, [0], e_r, e_{2r}, e_{3r}).
GrMatrix laplacian_block_m0(const GaloisRing& ring);

/// Block exponents by elimination over GR. Needs precision >= 2t + 2.
BlockReport block_divisors_local(const CarryContext& ctx, std::int64_t i, const GaloisRing& ring);

struct M0Report {
  std::uint64_t free_rank = 1;
  std::array<std::uint32_t, 4> exponents{};
};

/// Free rank 1 and exponents (0, 0, t, t).
M0Report m0_divisors(const CarryContext& ctx);
/// The same read off by elimination of the 5x5 block over GR.
M0Report m0_divisors_local(const GaloisRing& ring);

enum class Method { Formula, Snf, Both };
const char* to_string(Method m);
Method parse_method(const std::string& name);

struct CriticalGroupResult {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  GraphKind kind = GraphKind::Peisert;
  Method method = Method::Formula;
  AbelianGroup group;
  /// Elementary divisors per prime with m(0) filled in for dimension q.
  std::map<std::uint64_t, DivisorProfile> profiles;
  std::uint64_t p_rank = 0;
  mpz_class spanning_trees;
  std::vector<BlockReport> blocks;  // formula path only
};

struct CriticalGroupOptions {
  Method method = Method::Formula;
  unsigned jobs = 0;
  /// Ring precision for tie fallbacks; default 2t + 2.
  std::optional<std::uint32_t> precision;
  std::uint64_t cap = kDefaultFieldCap;
};

/// Critical group of the Peisert or Paley graph on GF(p^n). The formula path is
/// Peisert-only; Both throws VerificationFailure when the paths differ.
CriticalGroupResult critical_group(std::uint32_t p, std::uint32_t n, GraphKind kind,
                                   const CriticalGroupOptions& options = {});

/// p-part profile (dimension q) assembled from the blocks and M_0.
DivisorProfile assemble_p_profile(const CarryContext& ctx, const std::vector<BlockReport>& blocks);

/// Z/2rZ + (Z/rZ)^{2r}.
AbelianGroup smith_group_formula(const CarryContext& ctx);

/// 2(3^t - 1)((p + 1)/4)^{2t}.
std::uint64_t p_rank_formula(const CarryContext& ctx);

/// (1/q)((q - sqrt q)/2)^{(q-1)/2}((q + sqrt q)/2)^{(q-1)/2}, for any q == 1 (mod 4).
mpz_class spanning_trees(std::uint64_t q);

}  // namespace peisert

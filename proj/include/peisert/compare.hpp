#pragma once

// Independent checks of the Laplacian action formulas, the q = p^2 block
// matrices, Jacobi sum identities, and Paley versus Peisert comparisons.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peisert/critgrp.hpp"
#include "peisert/digits.hpp"
#include "peisert/ffield.hpp"
#include "peisert/gring.hpp"
#include "peisert/graphs.hpp"

namespace peisert {

enum class Status { Pass, Fail, Info };
const char* to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

struct Report {
  std::string suite;
  std::uint64_t q = 0;
  std::vector<Check> checks;

  bool passed() const;
  /// First failing check, or nullptr.
  const Check* first_failure() const;
  void add(std::string name, bool ok, std::string detail = {});
  void info(std::string name, std::string detail);
  void append(const Report& other);
};

/// mu_X(v) for X = a A + b I + c J, A the adjacency matrix of the graph.
GrVector apply_generalized(const GaloisRing& ring, GraphKind kind, std::int64_t a, std::int64_t b, std::int64_t c,
                           const GrVector& v);

/// Checks the e_i formula for every i outside {0, r, 3r} and the five M_0 formulas against
/// the Laplacian of the Peisert graph applied coordinatewise.
Report verify_action_formula(const GaloisRing& ring, unsigned jobs = 0);

enum class BlockKind { KPeisert, KPaley, LBlock, M0Peisert, M0Paley, M0Laplacian };
const char* to_string(BlockKind k);

/// The displayed block matrices, J(a, b) meaning J(T^-a, T^-b); columns are images.
/// KPaley / KPeisert use the basis (e_i, e_{i+2r}, e_{i+r}, e_{i+3r}); LBlock uses
/// (e_i, e_{i+r}, e_{i+2r}, e_{i+3r}); M0Paley uses (1, [0], e_2r, e_r, e_3r); M0Peisert and
/// M0Laplacian use (1, [0], e_r, e_2r, e_3r). The index i is ignored for the M_0 kinds.
GrMatrix block_matrix(const GaloisRing& ring, std::int64_t i, BlockKind which);

/// Basis vectors matching block_matrix.
std::vector<GrVector> block_basis(const GaloisRing& ring, std::int64_t i, BlockKind which);

/// Compares every displayed block, for every class, against the direct action on its basis.
Report verify_block_displays(const GaloisRing& ring, unsigned jobs = 0);

struct CanonResult {
  std::int64_t rep = 0;
  std::size_t rank_paley = 0;
  std::size_t rank_peisert = 0;
  std::vector<std::uint32_t> exponents_paley;
  std::vector<std::uint32_t> exponents_peisert;
  /// 1-based position in the list of canonical forms, 0 when no form matches.
  int form_paley = 0;
  int form_peisert = 0;
};

/// p-ranks and elementary divisors of K_i and K_i* on M_i. Requires q = p^2.
CanonResult canonical_profile(const CarryContext& ctx, std::int64_t i, const GaloisRing& ring);

/// Canonical forms, abcd valuation pattern and the square identity K_i^2 = p^2 I for every class.
Report verify_canonical_forms(const CarryContext& ctx, const GaloisRing& ring, unsigned jobs = 0);

/// K* on the basis v_1 = 1, v_2 = [0], v_3 = abar e_r + alpha e_3r, v_4 = e_2r, v_5 = alpha e_r + abar e_3r
/// has matrix K_0. Requires q = p^2.
bool verify_m0_basis_change(const CarryContext& ctx, const GaloisRing& ring);
Report verify_m0(const CarryContext& ctx, const GaloisRing& ring);

/// The four quartic sums equal p exactly (Gaussian integers and in GR) and the product identities
/// J(i,r)J(i+r,r) = J(i,3r)J(i+3r,3r) and J(i,2r)J(i+2r,2r) = p^2. Requires q = p^2.
Report verify_berndt(const CarryContext& ctx, const GaloisRing& ring, unsigned jobs = 0);

/// v_p(J(T^-i, T^-j)) = c(i, j). With `full` every admissible pair is checked, otherwise j in {r, 2r, 3r}.
Report verify_stickelberger(const CarryContext& ctx, const GaloisRing& ring, bool full, unsigned jobs = 0);

/// Carry identities for every class and the conjugation identity c(i,r) + c(q-1-i,3r) = 2t.
/// The variant with r in both places does not hold; it is kept as an informational entry
/// listing where it fails.
Report verify_carries(const CarryContext& ctx);

struct Triple {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
};

/// a in {1,2,3}, b and c in {-2..2}.
std::vector<Triple> default_grid();

/// Equal SNF of aA + bI + cJ and aA* + bI + cJ per sample, equal Laplacian SNF, and the shared
/// strongly regular relation that fixes both spectra.
Report compare_generalized(const FieldTable& field, const std::vector<Triple>& samples, unsigned jobs = 0);

/// Spectrum of aA + bI + cJ for a conference graph on q vertices (q a square): value -> multiplicity.
std::map<long, long> generalized_spectrum(std::uint64_t q, std::int64_t a, std::int64_t b, std::int64_t c);

/// All q = p^2 suites for one prime.
Report compare_suite(std::uint32_t p, const std::vector<Triple>& samples, unsigned jobs = 0);

}  // namespace peisert

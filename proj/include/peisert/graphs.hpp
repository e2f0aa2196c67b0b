#pragma once

// Integer matrices for Cayley graphs on (F_q, +). Vertex i is the field element
// with encoding i.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peisert/ffield.hpp"

namespace peisert {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  mpz_class trace() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Entry (u, v) is 1 iff v - u lies in the connection set.
IntMatrix adjacency(const FieldTable& field, GraphKind kind);

/// L = D - A. Throws std::invalid_argument unless A is a symmetric 0/1 matrix with zero diagonal.
IntMatrix laplacian(const IntMatrix& adj);

/// a A + b I + c J.
IntMatrix generalized(const IntMatrix& adj, long a, long b, long c);

struct SrgParams {
  long k = 0;
  long lambda = 0;
  long mu = 0;
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

struct SrgResult {
  std::optional<SrgParams> params;
  std::string failure;  // set when params is empty
};

/// Finds (k, lambda, mu) with A^2 + (mu - lambda) A + (mu - k) I = mu J, or reports why none exists.
SrgResult srg_check(const IntMatrix& adj);

bool is_connected(const IntMatrix& adj);

/// Eigenvalue -> multiplicity for a conference graph on q = square vertices.
std::map<long, long> spectrum_closed_form(std::uint64_t q);

/// Integer square root of q; throws std::invalid_argument when q is not a perfect square.
std::uint64_t exact_sqrt(std::uint64_t q);

/// Matrix Market coordinate integer format, 1-based. Symmetric matrices store the lower triangle.
void write_matrix_market(std::ostream& out, const IntMatrix& m);
IntMatrix read_matrix_market(std::istream& in);

}  // namespace peisert

#include "peisert/graphs.hpp"

#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace peisert {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

mpz_class IntMatrix::trace() const {
  mpz_class t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a(i, l) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  return out;
}

IntMatrix adjacency(const FieldTable& field, GraphKind kind) {
  const auto conn = connection_set(field, kind);
  std::vector<bool> member(field.q(), false);
  for (auto s : conn) member[s] = true;
  const std::size_t q = field.q();
  IntMatrix a(q, q);
  for (std::uint32_t u = 0; u < q; ++u)
    for (std::uint32_t v = 0; v < q; ++v)
      if (member[field.sub(v, u)]) a(u, v) = 1;
  return a;
}

namespace {

void require_simple_graph(const IntMatrix& adj) {
  if (!adj.is_symmetric()) throw std::invalid_argument("adjacency matrix must be square and symmetric");
  for (std::size_t i = 0; i < adj.rows(); ++i) {
    if (adj(i, i) != 0) throw std::invalid_argument("adjacency matrix must have zero diagonal");
    for (std::size_t j = 0; j < adj.cols(); ++j)
      if (adj(i, j) != 0 && adj(i, j) != 1) throw std::invalid_argument("adjacency matrix must be 0/1");
  }
}

}  // namespace

IntMatrix laplacian(const IntMatrix& adj) {
  require_simple_graph(adj);
  const std::size_t n = adj.rows();
  IntMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class degree = 0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += adj(i, j);
      l(i, j) = -adj(i, j);
    }
    l(i, i) = degree;
  }
  return l;
}

IntMatrix generalized(const IntMatrix& adj, long a, long b, long c) {
  if (!adj.is_square()) throw std::invalid_argument("generalized adjacency needs a square matrix");
  const std::size_t n = adj.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a * adj(i, j) + c + (i == j ? b : 0);
  return out;
}

SrgResult srg_check(const IntMatrix& adj) {
  require_simple_graph(adj);
  const std::size_t n = adj.rows();
  std::vector<std::vector<std::uint8_t>> a(n, std::vector<std::uint8_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = adj(i, j) == 1;

  long k = 0;
  for (std::size_t j = 0; j < n; ++j) k += a[0][j];
  for (std::size_t i = 1; i < n; ++i) {
    long d = 0;
    for (std::size_t j = 0; j < n; ++j) d += a[i][j];
    if (d != k) return {std::nullopt, "graph is not regular"};
  }

  // Neighbourhood counts: (A^2)_{ij}.
  std::optional<long> lambda, mu;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      long common = 0;
      for (std::size_t l = 0; l < n; ++l) common += a[i][l] & a[l][j];
      auto& slot = a[i][j] ? lambda : mu;
      if (!slot) slot = common;
      else if (*slot != common)
        return {std::nullopt, a[i][j] ? "adjacent pairs have differing common-neighbour counts"
                                      : "non-adjacent pairs have differing common-neighbour counts"};
    }
  }
  if (!mu) return {std::nullopt, "no non-adjacent vertex pairs: mu is undefined"};
  if (!lambda) lambda = 0;

  SrgParams params{k, *lambda, *mu};
  // A^2 + (mu - lambda) A + (mu - k) I = mu J, entry by entry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long a2 = 0;
      for (std::size_t l = 0; l < n; ++l) a2 += a[i][l] & a[l][j];
      const long lhs = a2 + (params.mu - params.lambda) * a[i][j] + (i == j ? params.mu - params.k : 0);
      if (lhs != params.mu) return {std::nullopt, "quadratic relation fails"};
    }
  return {params, {}};
}

bool is_connected(const IntMatrix& adj) {
  const std::size_t n = adj.rows();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v = 0; v < n; ++v)
      if (adj(u, v) != 0 && !seen[v]) {
        seen[v] = true;
        ++count;
        frontier.push(v);
      }
  }
  return count == n;
}

std::uint64_t exact_sqrt(std::uint64_t q) {
  std::uint64_t s = 0;
  while ((s + 1) * (s + 1) <= q) ++s;
  if (s * s != q) throw std::invalid_argument(std::to_string(q) + " is not a perfect square");
  return s;
}

std::map<long, long> spectrum_closed_form(std::uint64_t q) {
  const long root = static_cast<long>(exact_sqrt(q));
  const long n = static_cast<long>(q);
  std::map<long, long> spectrum;
  spectrum[(n - 1) / 2] += 1;
  spectrum[(-1 + root) / 2] += (n - 1) / 2;
  spectrum[(-1 - root) / 2] += (n - 1) / 2;
  return spectrum;
}

void write_matrix_market(std::ostream& out, const IntMatrix& m) {
  const bool sym = m.is_symmetric();
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < (sym ? i + 1 : m.cols()); ++j)
      if (m(i, j) != 0) ++nnz;
  out << "%%MatrixMarket matrix coordinate integer " << (sym ? "symmetric" : "general") << "\n";
  out << m.rows() << " " << m.cols() << " " << nnz << "\n";
  // Column-major order within the stored triangle.
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = sym ? j : 0; i < m.rows(); ++i)
      if (m(i, j) != 0) out << (i + 1) << " " << (j + 1) << " " << m(i, j).get_str() << "\n";
}

IntMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty Matrix Market stream");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || field != "integer")
    throw std::invalid_argument("unsupported Matrix Market header: " + line);
  const bool sym = symmetry == "symmetric";
  if (!sym && symmetry != "general") throw std::invalid_argument("unsupported symmetry: " + symmetry);
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream sizes(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(sizes >> rows >> cols >> nnz)) throw std::invalid_argument("malformed Matrix Market size line");
  IntMatrix m(rows, cols);
  for (std::size_t e = 0; e < nnz; ++e) {
    std::size_t i = 0, j = 0;
    std::string value;
    if (!(in >> i >> j >> value) || i == 0 || j == 0 || i > rows || j > cols)
      throw std::invalid_argument("malformed Matrix Market entry");
    m(i - 1, j - 1) = mpz_class(value);
    if (sym) m(j - 1, i - 1) = m(i - 1, j - 1);
  }
  return m;
}

}  // namespace peisert

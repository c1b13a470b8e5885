#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace framemult {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Default relative tolerance for scalar comparisons.
inline constexpr double kDefaultTolerance = 1e-12;

/// Increasing truncation lengths N_1 < ... < N_T (T >= 3) standing in for
/// an infinite index set; claims about the infinite object are read off as
/// trends across the ladder.
class TruncationLadder {
 public:
  /// {64, 256, 1024, 4096}
  TruncationLadder();
  explicit TruncationLadder(std::vector<std::int64_t> lengths);

  const std::vector<std::int64_t>& lengths() const noexcept { return lengths_; }
  std::size_t size() const noexcept { return lengths_.size(); }
  std::int64_t max() const noexcept { return lengths_.back(); }
  std::int64_t operator[](std::size_t i) const { return lengths_[i]; }

  friend bool operator==(const TruncationLadder&, const TruncationLadder&) = default;

 private:
  std::vector<std::int64_t> lengths_;
};

/// Seed for every randomized probe. Equal seeds give bit-identical results.
struct RngSeed {
  std::uint64_t value = 42;

  /// Independent deterministic engine for the stream labelled `stream`.
  std::mt19937_64 engine(std::uint64_t stream) const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Unit vector e_k (1-based k) of dimension dim.
Vector basis_vector(Index dim, Index k);

/// Complex standard Gaussian vector (E|x_i|^2 = 1).
Vector gaussian_vector(Index dim, std::mt19937_64& engine);

/// Connected block of a sparse matrix: the submatrix on `rows` x `cols`
/// outside of which the matrix has no entries coupling to these indices.
struct MatrixComponent {
  std::vector<Index> rows;
  std::vector<Index> cols;
  DenseMatrix block;
};

/// Splits a sparse matrix into independent dense blocks (connected
/// components of its row/column incidence graph). Exact zeros are ignored.
/// Empty rows and columns are not part of any component.
std::vector<MatrixComponent> decompose(const SparseMatrix& m);

/// Squared singular values of `m`, i.e. the eigenvalues of m m^*, for every
/// one of the m.rows() dimensions (zeros included), sorted descending.
/// Components with a single row or column are summed exactly instead of
/// passing through an SVD.
std::vector<double> row_spectrum(const SparseMatrix& m);

/// Eigenvalues of m^* m on the m.cols() coordinates, sorted descending.
std::vector<double> column_spectrum(const SparseMatrix& m);

/// Singular values of a square or rectangular sparse matrix (min(rows, cols)
/// values, descending).
std::vector<double> singular_values(const SparseMatrix& m);

/// Largest singular value.
double operator_norm(const SparseMatrix& m);

/// Inverse of a square sparse matrix computed block by block.
/// Returns an empty optional if some block is not square or its smallest
/// singular value is below `tolerance` times its largest.
std::optional<SparseMatrix> block_inverse(const SparseMatrix& m, double tolerance = 1e-14);

double frobenius_norm(const SparseMatrix& m);

SparseMatrix sparse_identity(Index dim);

}  // namespace framemult

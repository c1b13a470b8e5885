#include "framemult/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "framemult/error.hpp"

namespace framemult {

TruncationLadder::TruncationLadder() : lengths_{64, 256, 1024, 4096} {}

TruncationLadder::TruncationLadder(std::vector<std::int64_t> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.size() < 3) throw PreconditionError("truncation ladder needs at least 3 lengths");
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (lengths_[i] < 1) throw PreconditionError("truncation lengths must be positive");
    if (i > 0 && lengths_[i] <= lengths_[i - 1]) {
      throw PreconditionError("truncation ladder must be strictly increasing");
    }
  }
}

std::mt19937_64 RngSeed::engine(std::uint64_t stream) const {
  std::seed_seq seq{static_cast<std::uint32_t>(value), static_cast<std::uint32_t>(value >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Vector basis_vector(Index dim, Index k) {
  if (k < 1 || k > dim) throw ShapeError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(k - 1) = 1.0;
  return v;
}

Vector gaussian_vector(Index dim, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    double re = normal(engine);
    double im = normal(engine);
    v(i) = Complex(re, im);
  }
  return v;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// Squared singular values of a dense block, padded with zeros to `count`.
std::vector<double> squared_singular_values(const DenseMatrix& block) {
  Eigen::VectorXd s;
  if (std::max(block.rows(), block.cols()) <= 64) {
    Eigen::JacobiSVD<DenseMatrix> svd(block);
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<DenseMatrix> svd(block);
    s = svd.singularValues();
  }
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s(i))) throw NumericalError("singular value decomposition failed");
    out[static_cast<std::size_t>(i)] = s(i) * s(i);
  }
  return out;
}

double squared_norm_sum(const DenseMatrix& block) {
  double acc = 0.0;
  for (Index j = 0; j < block.cols(); ++j) {
    for (Index i = 0; i < block.rows(); ++i) acc += std::norm(block(i, j));
  }
  return acc;
}

// Nonzero part of the spectrum of block * block^* (or block^* * block).
std::vector<double> component_spectrum(const MatrixComponent& c) {
  if (c.rows.size() == 1 || c.cols.size() == 1) return {squared_norm_sum(c.block)};
  return squared_singular_values(c.block);
}

std::vector<double> padded_sorted(std::vector<double> values, std::size_t total) {
  values.resize(std::max(values.size(), total), 0.0);
  values.resize(total);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace

std::vector<MatrixComponent> decompose(const SparseMatrix& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  DisjointSets sets(rows + cols);
  std::vector<char> row_used(rows, 0), col_used(cols, 0);
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      auto r = static_cast<std::size_t>(it.row());
      auto c = static_cast<std::size_t>(it.col());
      row_used[r] = 1;
      col_used[c] = 1;
      sets.unite(r, rows + c);
    }
  }
  std::vector<std::ptrdiff_t> slot(rows + cols, -1);
  std::vector<MatrixComponent> out;
  auto component_of = [&](std::size_t node) -> MatrixComponent& {
    std::size_t root = sets.find(node);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    return out[static_cast<std::size_t>(slot[root])];
  };
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_used[r]) component_of(r).rows.push_back(static_cast<Index>(r));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_used[c]) component_of(rows + c).cols.push_back(static_cast<Index>(c));
  }
  // local coordinates
  std::vector<Index> local_row(rows, -1), local_col(cols, -1);
  std::vector<std::size_t> comp_of_row(rows, 0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& c = out[k];
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      local_row[static_cast<std::size_t>(c.rows[i])] = static_cast<Index>(i);
      comp_of_row[static_cast<std::size_t>(c.rows[i])] = k;
    }
    for (std::size_t i = 0; i < c.cols.size(); ++i) local_col[static_cast<std::size_t>(c.cols[i])] = static_cast<Index>(i);
    c.block = DenseMatrix::Zero(static_cast<Index>(c.rows.size()), static_cast<Index>(c.cols.size()));
  }
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      auto r = static_cast<std::size_t>(it.row());
      auto& c = out[comp_of_row[r]];
      c.block(local_row[r], local_col[static_cast<std::size_t>(it.col())]) += it.value();
    }
  }
  return out;
}

std::vector<double> row_spectrum(const SparseMatrix& m) {
  std::vector<double> values;
  for (const auto& c : decompose(m)) {
    auto s = component_spectrum(c);
    values.insert(values.end(), s.begin(), s.end());
  }
  return padded_sorted(std::move(values), static_cast<std::size_t>(m.rows()));
}

std::vector<double> column_spectrum(const SparseMatrix& m) {
  std::vector<double> values;
  for (const auto& c : decompose(m)) {
    auto s = component_spectrum(c);
    values.insert(values.end(), s.begin(), s.end());
  }
  return padded_sorted(std::move(values), static_cast<std::size_t>(m.cols()));
}

std::vector<double> singular_values(const SparseMatrix& m) {
  std::vector<double> values;
  for (const auto& c : decompose(m)) {
    auto s = component_spectrum(c);
    values.insert(values.end(), s.begin(), s.end());
  }
  auto sq = padded_sorted(std::move(values), static_cast<std::size_t>(std::min(m.rows(), m.cols())));
  for (auto& v : sq) v = std::sqrt(v);
  return sq;
}

double operator_norm(const SparseMatrix& m) {
  auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

std::optional<SparseMatrix> block_inverse(const SparseMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  std::vector<Eigen::Triplet<Complex>> triplets;
  Index covered = 0;
  for (const auto& c : decompose(m)) {
    if (c.rows.size() != c.cols.size()) return std::nullopt;
    Eigen::VectorXd s;
    if (c.block.rows() <= 64) {
      s = Eigen::JacobiSVD<DenseMatrix>(c.block).singularValues();
    } else {
      s = Eigen::BDCSVD<DenseMatrix>(c.block).singularValues();
    }
    if (s(s.size() - 1) <= tolerance * s(0)) return std::nullopt;
    DenseMatrix inv = c.block.partialPivLu().inverse();
    for (std::size_t i = 0; i < c.cols.size(); ++i) {
      for (std::size_t j = 0; j < c.rows.size(); ++j) {
        triplets.emplace_back(c.cols[i], c.rows[j], inv(static_cast<Index>(i), static_cast<Index>(j)));
      }
    }
    covered += static_cast<Index>(c.rows.size());
  }
  if (covered != m.rows()) return std::nullopt;
  SparseMatrix inv(m.rows(), m.cols());
  inv.setFromTriplets(triplets.begin(), triplets.end());
  return inv;
}

double frobenius_norm(const SparseMatrix& m) {
  double acc = 0.0;
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) acc += std::norm(it.value());
  }
  return std::sqrt(acc);
}

SparseMatrix sparse_identity(Index dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

}  // namespace framemult

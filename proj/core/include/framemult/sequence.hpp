#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framemult/core.hpp"
#include "framemult/weight_expr.hpp"

namespace framemult {

struct ColumnEntry {
  Index row = 0;
  Complex value;
};

/// Nonzero entries of one sequence element, rows ascending.
using SparseColumn = std::vector<ColumnEntry>;

/// One position of a block pattern: block k contributes coefficient(k) * e_j
/// with j = k + offset (block-relative) or j = offset (fixed).
struct BlockRule {
  WeightExpr coefficient;
  bool relative = true;
  std::int64_t offset = 0;

  friend bool operator==(const BlockRule&, const BlockRule&) = default;
};

/// Generator of a vector sequence (phi_n), n >= 1, in l^2.
///
/// Kinds: the orthonormal basis (e_n); weighted bases (w_n e_n); block
/// patterns built from the rules above; finite Gabor systems on C^L
/// (modulated translates of a window, frequency index outer, time index
/// inner), repeated on consecutive copies of C^L so the system continues
/// indefinitely; images of the basis under a P x P invertible matrix,
/// likewise repeated block-diagonally; explicit finite lists; and scalar
/// rescalings (c_n phi_n) of any of these.
class SequenceSpec {
 public:
  enum class Kind { Onb, WeightedOnb, BlockPattern, Gabor, RieszImage, Explicit, Scaled };

  static SequenceSpec onb();
  static SequenceSpec weighted_onb(const WeightExpr& weights);
  static SequenceSpec block_pattern(std::vector<BlockRule> rules);
  /// Throws LatticeError unless a and b divide the window length.
  static SequenceSpec gabor(std::vector<Complex> window, std::int64_t a, std::int64_t b);
  /// Gabor system with a complex Gaussian window drawn from `seed`.
  static SequenceSpec gabor_seeded(std::int64_t length, std::int64_t a, std::int64_t b, std::uint64_t seed);
  /// Throws NumericalError when `base` is numerically singular.
  static SequenceSpec riesz_image(const DenseMatrix& base);
  static SequenceSpec explicit_vectors(std::vector<Vector> vectors);
  /// (w_n phi_n); folds into weighted bases and block patterns when possible.
  static SequenceSpec scaled(const SequenceSpec& base, const WeightExpr& weights);

  Kind kind() const noexcept;
  std::string kind_name() const;

  /// Smallest ambient dimension holding phi_1..phi_N.
  Index required_dim(std::int64_t count) const;
  /// Longest realizable prefix; unbounded for generated kinds.
  std::optional<std::int64_t> max_length() const;
  SparseColumn column(std::int64_t n) const;
  /// n -> ||phi_n|| as a weight expression (exact for bases and block
  /// patterns, numeric constants per position otherwise).
  WeightExpr norm_weights() const;
  /// Length of the repeating structure (block period, Gabor atoms per copy,
  /// Riesz block size); 1 when unstructured.
  std::size_t period() const;
  /// Whether the construction spans the whole ambient space at every
  /// truncation (as opposed to an explicit list whose span is unknown).
  bool designed_complete() const;

  // kind-specific accessors
  const WeightExpr& weights() const;              // WeightedOnb, Scaled
  const std::vector<BlockRule>& rules() const;    // BlockPattern
  const std::vector<Complex>& window() const;     // Gabor
  std::int64_t window_length() const;             // Gabor
  std::int64_t time_step() const;                 // Gabor
  std::int64_t frequency_step() const;            // Gabor
  const DenseMatrix& base_matrix() const;         // RieszImage
  const SequenceSpec& base() const;               // Scaled
  const std::vector<Vector>& vectors() const;     // Explicit

  nlohmann::json to_json() const;
  static SequenceSpec from_json(const nlohmann::json& j, const std::string& path = "");

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b);

  struct Data;

 private:
  explicit SequenceSpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// phi_1..phi_N as the columns of a D x N synthesis matrix.
class RealizedSequence {
 public:
  RealizedSequence(SequenceSpec spec, std::int64_t count, Index dim);

  const SequenceSpec& spec() const noexcept { return spec_; }
  std::int64_t count() const noexcept { return count_; }
  Index dim() const noexcept { return dim_; }
  const SparseColumn& column(std::int64_t n) const { return columns_[static_cast<std::size_t>(n - 1)]; }
  const std::vector<SparseColumn>& columns() const noexcept { return columns_; }
  /// Column n equals phi_n.
  const SparseMatrix& synthesis_matrix() const noexcept { return matrix_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

 private:
  SequenceSpec spec_;
  std::int64_t count_;
  Index dim_;
  std::vector<SparseColumn> columns_;
  SparseMatrix matrix_;
};

/// Throws ShapeError when dim < spec.required_dim(count) or count exceeds
/// the length of a finite sequence.
RealizedSequence build_sequence(const SequenceSpec& spec, std::int64_t count, Index dim);

/// Same, with dim = spec.required_dim(count).
RealizedSequence build_sequence(const SequenceSpec& spec, std::int64_t count);

/// Inner product <f, g> = sum_i f_i conj(g_i) of a dense vector with a column.
Complex inner(const Vector& f, const SparseColumn& g);

double squared_norm(const SparseColumn& c);

}  // namespace framemult

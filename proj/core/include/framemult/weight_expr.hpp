#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "framemult/rational.hpp"

namespace framemult {

using Complex = std::complex<double>;

/// Closed-form scalar sequence n -> w_n, n >= 1.
///
/// The grammar is deliberately small: constants (rational, optionally times
/// the imaginary unit), powers n^p with rational p, geometric terms r^(n-1)
/// with rational r, products, principal square roots, conjugation, modulus,
/// block patterns (period P, one expression of the block index per position)
/// and finite explicit lists with a default tail. Every expression is total
/// on n >= 1 and serializable.
///
/// Values are immutable; copies share structure.
class WeightExpr {
 public:
  enum class Kind { Constant, Power, Geometric, Product, Sqrt, Conj, Abs, Block, Explicit };

  /// The constant sequence 1.
  WeightExpr();

  static WeightExpr constant(Rational value, bool imaginary = false);
  static WeightExpr constant(std::int64_t value) { return constant(Rational(value)); }
  static WeightExpr power(Rational exponent);
  /// r^(n-1); r must be nonzero.
  static WeightExpr geometric(Rational ratio);
  static WeightExpr block(std::vector<WeightExpr> entries);
  static WeightExpr explicit_list(std::vector<Complex> values, Complex tail = 0.0);

  /// Simplifying constructors. Constants, powers, geometric ratios and
  /// same-period block patterns are folded exactly.
  static WeightExpr product(const WeightExpr& a, const WeightExpr& b);
  static WeightExpr sqrt(const WeightExpr& a);
  static WeightExpr conj(const WeightExpr& a);
  static WeightExpr abs(const WeightExpr& a);
  /// Exact reciprocal when the expression admits one; nullopt otherwise
  /// (the caller then tabulates). Throws CanonicalizationError on a
  /// provably zero constant.
  static std::optional<WeightExpr> reciprocal(const WeightExpr& a);

  /// Sample values for n = 1..count into an explicit list (tail 0).
  static WeightExpr tabulate(const WeightExpr& a, std::size_t count);

  /// Parse the string grammar, e.g. "n^2", "(1/2)^(n-1)", "2^-(n-1)",
  /// "sqrt(2^-n)", "-1/2*i", "conj(n*i)". Inside block entries the variable
  /// may also be written `k`.
  static WeightExpr parse(std::string_view text);

  /// Value at index n >= 1. Throws OverflowError if the result is not finite.
  Complex eval(std::int64_t n) const;

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  /// Exact value when this is a real constant.
  std::optional<Rational> real_constant() const;
  /// True for the constant 1.
  bool is_one() const;
  /// Block period (1 when the expression has no block structure).
  std::size_t period() const;
  /// True when every value is provably real and strictly positive.
  bool provably_positive() const;

  /// Grammar string; only defined when the expression contains no block
  /// pattern or explicit list.
  std::optional<std::string> to_string() const;
  nlohmann::json to_json() const;
  static WeightExpr from_json(const nlohmann::json& j, const std::string& path = "");

  friend bool operator==(const WeightExpr& a, const WeightExpr& b);

  struct Node;

 private:
  friend struct WeightExprAccess;
  explicit WeightExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace framemult

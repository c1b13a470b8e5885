#include "framemult/weight_expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "framemult/error.hpp"
#include "json_util.hpp"

namespace framemult {

struct WeightExpr::Node {
  Kind kind = Kind::Constant;
  Rational value{1};  // constant value, power exponent or geometric ratio
  bool imaginary = false;
  std::vector<WeightExpr> kids;  // product factors, unary operand, block entries
  std::vector<Complex> values;
  Complex tail{0.0, 0.0};
};

namespace {

using Node = WeightExpr::Node;
using Kind = WeightExpr::Kind;

std::shared_ptr<Node> make_node(Kind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

Complex positive_zero_imag(Complex c) { return {c.real(), c.imag() + 0.0}; }

using detail::complex_from_json;
using detail::complex_to_json;

}  // namespace

// Internal access helpers; WeightExpr only exposes Node through these.
struct WeightExprAccess {
  static const Node& node(const WeightExpr& w);
  static WeightExpr wrap(std::shared_ptr<const Node> n);
};

namespace {

const Node& N(const WeightExpr& w) { return WeightExprAccess::node(w); }
WeightExpr wrap(std::shared_ptr<const Node> n) { return WeightExprAccess::wrap(std::move(n)); }

WeightExpr unary(Kind kind, const WeightExpr& child) {
  auto n = make_node(kind);
  n->kids.push_back(child);
  return wrap(std::move(n));
}

bool provably_nonnegative(const WeightExpr& w) {
  const Node& n = N(w);
  switch (n.kind) {
    case Kind::Constant:
      return !n.imaginary && !n.value.is_negative();
    case Kind::Power:
      return true;
    case Kind::Geometric:
      return !n.value.is_negative();
    case Kind::Abs:
      return true;
    case Kind::Sqrt:
      return provably_nonnegative(n.kids[0]);
    case Kind::Conj:
      return provably_nonnegative(n.kids[0]);
    case Kind::Product:
    case Kind::Block:
      for (const auto& k : n.kids) {
        if (!provably_nonnegative(k)) return false;
      }
      return true;
    case Kind::Explicit:
      for (const auto& v : n.values) {
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
      }
      return n.tail.imag() == 0.0 && n.tail.real() >= 0.0;
  }
  return false;
}

}  // namespace

const Node& WeightExprAccess::node(const WeightExpr& w) { return *w.node_; }
WeightExpr WeightExprAccess::wrap(std::shared_ptr<const Node> n) { return WeightExpr(std::move(n)); }

WeightExpr::WeightExpr() : WeightExpr(constant(Rational(1))) {}

WeightExpr WeightExpr::constant(Rational value, bool imaginary) {
  auto n = make_node(Kind::Constant);
  n->value = value;
  n->imaginary = imaginary && !value.is_zero();
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::power(Rational exponent) {
  if (exponent.is_zero()) return constant(Rational(1));
  auto n = make_node(Kind::Power);
  n->value = exponent;
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::geometric(Rational ratio) {
  if (ratio.is_zero()) throw ParseError("", "geometric ratio must be nonzero");
  if (ratio == Rational(1)) return constant(Rational(1));
  auto n = make_node(Kind::Geometric);
  n->value = ratio;
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::block(std::vector<WeightExpr> entries) {
  if (entries.empty()) throw ParseError("", "block pattern needs period >= 1");
  if (entries.size() == 1) {
    // Period 1: the single entry is evaluated at k = n.
    return entries.front();
  }
  auto n = make_node(Kind::Block);
  n->kids = std::move(entries);
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::explicit_list(std::vector<Complex> values, Complex tail) {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw OverflowError("explicit weight is not finite");
  }
  auto n = make_node(Kind::Explicit);
  n->values = std::move(values);
  n->tail = tail;
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::product(const WeightExpr& a, const WeightExpr& b) {
  std::vector<WeightExpr> factors;
  auto collect = [&](const WeightExpr& w) {
    if (N(w).kind == Kind::Product) {
      for (const auto& k : N(w).kids) factors.push_back(k);
    } else {
      factors.push_back(w);
    }
  };
  collect(a);
  collect(b);

  Rational coeff(1);
  int imag_units = 0;
  Rational exponent(0);
  Rational ratio(1);
  std::vector<WeightExpr> rest;
  for (const auto& f : factors) {
    const Node& n = N(f);
    switch (n.kind) {
      case Kind::Constant:
        coeff = coeff * n.value;
        imag_units += n.imaginary ? 1 : 0;
        break;
      case Kind::Power:
        exponent = exponent + n.value;
        break;
      case Kind::Geometric:
        ratio = ratio * n.value;
        break;
      case Kind::Block: {
        bool merged = false;
        for (auto& r : rest) {
          if (N(r).kind == Kind::Block && N(r).kids.size() == n.kids.size()) {
            std::vector<WeightExpr> entries;
            for (std::size_t j = 0; j < n.kids.size(); ++j) entries.push_back(product(N(r).kids[j], n.kids[j]));
            r = block(std::move(entries));
            merged = true;
            break;
          }
        }
        if (!merged) rest.push_back(f);
        break;
      }
      default:
        rest.push_back(f);
    }
  }
  if (coeff.is_zero()) return constant(Rational(0));
  switch (imag_units % 4) {
    case 2:
      coeff = -coeff;
      break;
    case 3:
      coeff = -coeff;
      break;
    default:
      break;
  }
  bool imaginary = imag_units % 2 == 1;

  std::vector<WeightExpr> out;
  if (!(coeff == Rational(1)) || imaginary) out.push_back(constant(coeff, imaginary));
  if (!exponent.is_zero()) out.push_back(power(exponent));
  if (!(ratio == Rational(1))) out.push_back(geometric(ratio));
  for (auto& r : rest) {
    if (r.is_one()) continue;
    out.push_back(r);
  }
  if (out.empty()) return constant(Rational(1));
  if (out.size() == 1) return out.front();
  auto n = make_node(Kind::Product);
  n->kids = std::move(out);
  return WeightExpr(std::move(n));
}

WeightExpr WeightExpr::sqrt(const WeightExpr& a) {
  const Node& n = N(a);
  switch (n.kind) {
    case Kind::Constant: {
      if (n.imaginary) return unary(Kind::Sqrt, a);
      if (!n.value.is_negative()) {
        if (auto s = n.value.sqrt_exact()) return constant(*s);
        return unary(Kind::Sqrt, a);
      }
      // Principal branch of a negative real: i * sqrt(|r|).
      Rational mag = n.value.abs();
      if (auto s = mag.sqrt_exact()) return constant(*s, true);
      return product(constant(Rational(1), true), unary(Kind::Sqrt, constant(mag)));
    }
    case Kind::Power:
      return power(n.value * Rational(1, 2));
    case Kind::Geometric:
      if (!n.value.is_negative()) {
        if (auto s = n.value.sqrt_exact()) return geometric(*s);
      }
      return unary(Kind::Sqrt, a);
    case Kind::Product: {
      bool split = true;
      for (const auto& k : n.kids) {
        const Node& kn = N(k);
        if (kn.kind == Kind::Constant) {
          if (kn.imaginary) split = false;
        } else if (!provably_nonnegative(k)) {
          split = false;
        }
      }
      if (!split) return unary(Kind::Sqrt, a);
      WeightExpr out;
      for (const auto& k : n.kids) out = product(out, sqrt(k));
      return out;
    }
    case Kind::Block: {
      std::vector<WeightExpr> entries;
      for (const auto& k : n.kids) entries.push_back(sqrt(k));
      return block(std::move(entries));
    }
    case Kind::Explicit: {
      std::vector<Complex> vals;
      for (const auto& v : n.values) vals.push_back(std::sqrt(positive_zero_imag(v)));
      return explicit_list(std::move(vals), std::sqrt(positive_zero_imag(n.tail)));
    }
    default:
      return unary(Kind::Sqrt, a);
  }
}

WeightExpr WeightExpr::conj(const WeightExpr& a) {
  const Node& n = N(a);
  switch (n.kind) {
    case Kind::Constant:
      return n.imaginary ? constant(-n.value, true) : a;
    case Kind::Power:
    case Kind::Geometric:
    case Kind::Abs:
      return a;
    case Kind::Conj:
      return n.kids[0];
    case Kind::Sqrt:
      return provably_nonnegative(n.kids[0]) ? a : unary(Kind::Conj, a);
    case Kind::Product: {
      WeightExpr out;
      for (const auto& k : n.kids) out = product(out, conj(k));
      return out;
    }
    case Kind::Block: {
      std::vector<WeightExpr> entries;
      for (const auto& k : n.kids) entries.push_back(conj(k));
      return block(std::move(entries));
    }
    case Kind::Explicit: {
      std::vector<Complex> vals;
      for (const auto& v : n.values) vals.push_back(std::conj(v));
      return explicit_list(std::move(vals), std::conj(n.tail));
    }
  }
  return unary(Kind::Conj, a);
}

WeightExpr WeightExpr::abs(const WeightExpr& a) {
  const Node& n = N(a);
  switch (n.kind) {
    case Kind::Constant:
      return constant(n.value.abs());
    case Kind::Power:
    case Kind::Abs:
      return a;
    case Kind::Geometric:
      return geometric(n.value.abs());
    case Kind::Conj:
      return abs(n.kids[0]);
    case Kind::Sqrt:
      return unary(Kind::Sqrt, abs(n.kids[0]));
    case Kind::Product: {
      WeightExpr out;
      for (const auto& k : n.kids) out = product(out, abs(k));
      return out;
    }
    case Kind::Block: {
      std::vector<WeightExpr> entries;
      for (const auto& k : n.kids) entries.push_back(abs(k));
      return block(std::move(entries));
    }
    case Kind::Explicit: {
      std::vector<Complex> vals;
      for (const auto& v : n.values) vals.emplace_back(std::abs(v), 0.0);
      return explicit_list(std::move(vals), std::abs(n.tail));
    }
  }
  return unary(Kind::Abs, a);
}

std::optional<WeightExpr> WeightExpr::reciprocal(const WeightExpr& a) {
  const Node& n = N(a);
  switch (n.kind) {
    case Kind::Constant:
      if (n.value.is_zero()) throw CanonicalizationError("reciprocal of the zero weight");
      // 1/(r i) = -i/r
      return n.imaginary ? constant(-n.value.reciprocal(), true) : constant(n.value.reciprocal());
    case Kind::Power:
      return power(-n.value);
    case Kind::Geometric:
      return geometric(n.value.reciprocal());
    case Kind::Product: {
      WeightExpr out;
      for (const auto& k : n.kids) {
        auto r = reciprocal(k);
        if (!r) return std::nullopt;
        out = product(out, *r);
      }
      return out;
    }
    case Kind::Block: {
      std::vector<WeightExpr> entries;
      for (const auto& k : n.kids) {
        auto r = reciprocal(k);
        if (!r) return std::nullopt;
        entries.push_back(*r);
      }
      return block(std::move(entries));
    }
    case Kind::Explicit: {
      std::vector<Complex> vals;
      for (const auto& v : n.values) {
        if (v == Complex(0.0, 0.0)) return std::nullopt;
        vals.push_back(1.0 / v);
      }
      if (n.tail == Complex(0.0, 0.0)) return std::nullopt;
      return explicit_list(std::move(vals), 1.0 / n.tail);
    }
    case Kind::Abs: {
      auto r = reciprocal(n.kids[0]);
      if (!r) return std::nullopt;
      return abs(*r);
    }
    case Kind::Conj: {
      auto r = reciprocal(n.kids[0]);
      if (!r) return std::nullopt;
      return conj(*r);
    }
    case Kind::Sqrt: {
      if (!provably_nonnegative(n.kids[0])) return std::nullopt;
      auto r = reciprocal(n.kids[0]);
      if (!r) return std::nullopt;
      return sqrt(*r);
    }
  }
  return std::nullopt;
}

WeightExpr WeightExpr::tabulate(const WeightExpr& a, std::size_t count) {
  std::vector<Complex> vals;
  vals.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) vals.push_back(a.eval(static_cast<std::int64_t>(i)));
  return explicit_list(std::move(vals), 0.0);
}

Complex WeightExpr::eval(std::int64_t index) const {
  const Node& n = *node_;
  Complex v;
  switch (n.kind) {
    case Kind::Constant:
      v = n.imaginary ? Complex(0.0, n.value.to_double()) : Complex(n.value.to_double(), 0.0);
      break;
    case Kind::Power:
      v = n.value.is_integer() && n.value.num() >= 0 && n.value.num() <= 4
              ? Complex(std::pow(static_cast<double>(index), static_cast<int>(n.value.num())), 0.0)
              : Complex(std::pow(static_cast<double>(index), n.value.to_double()), 0.0);
      break;
    case Kind::Geometric:
      v = Complex(std::pow(n.value.to_double(), static_cast<double>(index - 1)), 0.0);
      break;
    case Kind::Product:
      v = Complex(1.0, 0.0);
      for (const auto& k : n.kids) v *= k.eval(index);
      break;
    case Kind::Sqrt:
      v = std::sqrt(positive_zero_imag(n.kids[0].eval(index)));
      break;
    case Kind::Conj:
      v = std::conj(n.kids[0].eval(index));
      break;
    case Kind::Abs:
      v = Complex(std::abs(n.kids[0].eval(index)), 0.0);
      break;
    case Kind::Block: {
      auto period = static_cast<std::int64_t>(n.kids.size());
      std::int64_t block_index = (index - 1) / period + 1;
      v = n.kids[static_cast<std::size_t>((index - 1) % period)].eval(block_index);
      break;
    }
    case Kind::Explicit:
      v = index <= static_cast<std::int64_t>(n.values.size()) ? n.values[static_cast<std::size_t>(index - 1)] : n.tail;
      break;
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw OverflowError("weight value at n=" + std::to_string(index) + " is not representable");
  }
  return v;
}

WeightExpr::Kind WeightExpr::kind() const noexcept { return node_->kind; }

std::optional<Rational> WeightExpr::real_constant() const {
  if (node_->kind != Kind::Constant || node_->imaginary) return std::nullopt;
  return node_->value;
}

bool WeightExpr::is_one() const {
  auto c = real_constant();
  return c && *c == Rational(1);
}

std::size_t WeightExpr::period() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Block:
      return n.kids.size();
    case Kind::Product:
    case Kind::Sqrt:
    case Kind::Conj:
    case Kind::Abs: {
      std::size_t p = 1;
      for (const auto& k : n.kids) p = std::lcm(p, k.period());
      return p;
    }
    default:
      return 1;
  }
}

bool WeightExpr::provably_positive() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return !n.imaginary && !n.value.is_negative() && !n.value.is_zero();
    case Kind::Power:
      return true;
    case Kind::Geometric:
      return !n.value.is_negative();
    case Kind::Product:
    case Kind::Block:
      for (const auto& k : n.kids) {
        if (!k.provably_positive()) return false;
      }
      return true;
    case Kind::Sqrt:
    case Kind::Abs:
    case Kind::Conj:
      return n.kids[0].provably_positive();
    case Kind::Explicit:
      for (const auto& v : n.values) {
        if (v.imag() != 0.0 || v.real() <= 0.0) return false;
      }
      return n.tail.imag() == 0.0 && n.tail.real() > 0.0;
  }
  return false;
}

std::optional<std::string> WeightExpr::to_string() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      if (!n.imaginary) return n.value.to_string();
      if (n.value == Rational(1)) return std::string("i");
      if (n.value == Rational(-1)) return std::string("-i");
      return n.value.to_string() + "*i";
    case Kind::Power:
      if (n.value == Rational(1)) return std::string("n");
      if (n.value.is_integer()) return "n^" + n.value.to_string();
      return "n^(" + n.value.to_string() + ")";
    case Kind::Geometric:
      if (n.value.is_integer() && !n.value.is_negative()) return n.value.to_string() + "^(n-1)";
      return "(" + n.value.to_string() + ")^(n-1)";
    case Kind::Product: {
      std::string out;
      for (const auto& k : n.kids) {
        auto s = k.to_string();
        if (!s) return std::nullopt;
        if (!out.empty()) out += "*";
        out += *s;
      }
      return out;
    }
    case Kind::Sqrt:
    case Kind::Conj:
    case Kind::Abs: {
      auto s = n.kids[0].to_string();
      if (!s) return std::nullopt;
      const char* fn = n.kind == Kind::Sqrt ? "sqrt" : n.kind == Kind::Conj ? "conj" : "abs";
      return std::string(fn) + "(" + *s + ")";
    }
    case Kind::Block:
    case Kind::Explicit:
      return std::nullopt;
  }
  return std::nullopt;
}

nlohmann::json WeightExpr::to_json() const {
  if (auto s = to_string()) return *s;
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Block: {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& k : n.kids) entries.push_back(k.to_json());
      return {{"period", n.kids.size()}, {"entries", entries}};
    }
    case Kind::Explicit: {
      nlohmann::json vals = nlohmann::json::array();
      for (const auto& v : n.values) vals.push_back(complex_to_json(v));
      return {{"values", vals}, {"tail", complex_to_json(n.tail)}};
    }
    case Kind::Product: {
      nlohmann::json factors = nlohmann::json::array();
      for (const auto& k : n.kids) factors.push_back(k.to_json());
      return {{"product", factors}};
    }
    case Kind::Sqrt:
      return {{"sqrt", n.kids[0].to_json()}};
    case Kind::Conj:
      return {{"conj", n.kids[0].to_json()}};
    case Kind::Abs:
      return {{"abs", n.kids[0].to_json()}};
    default:
      break;
  }
  return nullptr;
}

WeightExpr WeightExpr::from_json(const nlohmann::json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse(j.get<std::string>());
    if (j.is_number_integer()) return constant(Rational(j.get<std::int64_t>()));
    if (j.is_number()) return explicit_list({}, Complex(j.get<double>(), 0.0));
    if (!j.is_object()) throw ParseError(path, "weight must be a string, number or object");
    if (j.contains("period") || j.contains("entries")) {
      if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError(path, "block pattern needs 'entries'");
      const auto& e = j["entries"];
      if (j.contains("period")) {
        if (!j["period"].is_number_integer() || j["period"].get<std::int64_t>() < 1) {
          throw ParseError(path + ".period", "period must be an integer >= 1");
        }
        if (j["period"].get<std::size_t>() != e.size()) {
          throw ParseError(path + ".entries", "number of entries must equal the period");
        }
      }
      std::vector<WeightExpr> entries;
      for (std::size_t i = 0; i < e.size(); ++i) {
        entries.push_back(from_json(e[i], path + ".entries[" + std::to_string(i) + "]"));
      }
      return block(std::move(entries));
    }
    if (j.contains("values")) {
      if (!j["values"].is_array()) throw ParseError(path + ".values", "expected an array");
      std::vector<Complex> vals;
      for (std::size_t i = 0; i < j["values"].size(); ++i) {
        vals.push_back(complex_from_json(j["values"][i], path + ".values[" + std::to_string(i) + "]"));
      }
      Complex tail = j.contains("tail") ? complex_from_json(j["tail"], path + ".tail") : Complex(0.0, 0.0);
      return explicit_list(std::move(vals), tail);
    }
    if (j.contains("product")) {
      WeightExpr out;
      const auto& f = j["product"];
      for (std::size_t i = 0; i < f.size(); ++i) out = product(out, from_json(f[i], path + ".product[" + std::to_string(i) + "]"));
      return out;
    }
    if (j.contains("sqrt")) return sqrt(from_json(j["sqrt"], path + ".sqrt"));
    if (j.contains("conj")) return conj(from_json(j["conj"], path + ".conj"));
    if (j.contains("abs")) return abs(from_json(j["abs"], path + ".abs"));
    throw ParseError(path, "unrecognized weight object");
  } catch (const ParseError& e) {
    if (!e.path().empty()) throw;
    throw ParseError(path, e.what());
  }
}

bool operator==(const WeightExpr& a, const WeightExpr& b) { return a.to_json() == b.to_json(); }

// --- string grammar -------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WeightExpr parse_all() {
    WeightExpr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  struct Exponent {
    bool linear = false;  // s*(n-1) or s*n
    bool shifted = true;  // (n-1) vs n
    int sign = 1;
    Rational value{1};
  };

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("", "weight '" + std::string(text_) + "': " + msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  bool accept_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) == w) {
      std::size_t end = pos_ + w.size();
      if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
      pos_ = end;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Rational::parse(text_.substr(start, pos_ - start)).num();
  }

  bool accept_variable() { return accept_word("n") || accept_word("k"); }

  WeightExpr expr() {
    bool negate = accept('-');
    WeightExpr t = term();
    return negate ? WeightExpr::product(WeightExpr::constant(Rational(-1)), t) : t;
  }

  WeightExpr term() {
    WeightExpr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = WeightExpr::product(acc, factor());
      } else if (accept('/')) {
        WeightExpr d = factor();
        auto r = WeightExpr::reciprocal(d);
        if (!r) fail("divisor has no closed-form reciprocal");
        acc = WeightExpr::product(acc, *r);
      } else {
        return acc;
      }
    }
  }

  WeightExpr factor() {
    WeightExpr base = atom();
    if (accept('^')) return apply_exponent(base, exponent());
    return base;
  }

  WeightExpr atom() {
    if (peek_digit()) return WeightExpr::constant(Rational(integer()));
    if (accept_word("sqrt")) return WeightExpr::sqrt(call_argument());
    if (accept_word("conj")) return WeightExpr::conj(call_argument());
    if (accept_word("abs")) return WeightExpr::abs(call_argument());
    if (accept_variable()) return WeightExpr::power(Rational(1));
    if (accept_word("i")) return WeightExpr::constant(Rational(1), true);
    if (accept('(')) {
      WeightExpr e = expr();
      expect(')');
      return e;
    }
    if (accept('-')) return WeightExpr::product(WeightExpr::constant(Rational(-1)), atom());
    fail("expected a number, n, i, '(' or a function");
  }

  WeightExpr call_argument() {
    expect('(');
    WeightExpr e = expr();
    expect(')');
    return e;
  }

  Exponent exponent() {
    Exponent ex;
    if (accept('-')) ex.sign = -1;
    if (peek_digit()) {
      ex.value = Rational(ex.sign * integer());
      return ex;
    }
    if (accept_variable()) {
      ex.linear = true;
      ex.shifted = false;
      return ex;
    }
    expect('(');
    int inner_sign = accept('-') ? -1 : 1;
    if (accept_variable()) {
      ex.linear = true;
      ex.sign *= inner_sign;
      ex.shifted = false;
      if (accept('-')) {
        if (integer() != 1) fail("only (n-1) offsets are supported");
        ex.shifted = true;
      }
      expect(')');
      return ex;
    }
    std::int64_t num = integer();
    std::int64_t den = 1;
    if (accept('/')) den = integer();
    if (den == 0) fail("zero denominator");
    expect(')');
    ex.value = Rational(ex.sign * inner_sign * num, den);
    return ex;
  }

  WeightExpr apply_exponent(const WeightExpr& base, const Exponent& ex) {
    if (ex.linear) {
      auto r = base.real_constant();
      if (!r || r->is_zero()) fail("n-dependent exponents need a nonzero rational base");
      Rational ratio = ex.sign > 0 ? *r : r->reciprocal();
      WeightExpr g = WeightExpr::geometric(ratio);
      return ex.shifted ? g : WeightExpr::product(WeightExpr::constant(ratio), g);
    }
    const Rational& q = ex.value;
    if (base.kind() == WeightExpr::Kind::Power) return WeightExpr::power(N(base).value * q);
    if (base.kind() == WeightExpr::Kind::Geometric && q.is_integer()) {
      // (r^(n-1))^q = (r^q)^(n-1)
      return WeightExpr::geometric(N(base).value.pow(q.num()));
    }
    if (auto r = base.real_constant()) {
      if (q.is_integer()) {
        if (r->is_zero() && q.is_negative()) fail("zero to a negative power");
        return WeightExpr::constant(r->pow(q.num()));
      }
      if (q.den() == 2) {
        if (r->is_zero()) return WeightExpr::constant(Rational(0));
        return WeightExpr::sqrt(WeightExpr::constant(r->pow(q.num())));
      }
      fail("only integer or half-integer powers of constants are supported");
    }
    if (!q.is_integer()) fail("fractional powers need base n or a constant");
    WeightExpr out;
    std::int64_t e = q.num() < 0 ? -q.num() : q.num();
    for (std::int64_t i = 0; i < e; ++i) out = WeightExpr::product(out, base);
    if (q.num() < 0) {
      auto r = WeightExpr::reciprocal(out);
      if (!r) fail("negative power has no closed-form reciprocal");
      return *r;
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

WeightExpr WeightExpr::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace framemult

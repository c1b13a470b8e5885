#include "framemult/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/SVD>

#include "framemult/error.hpp"
#include "json_util.hpp"

namespace framemult {

using detail::complex_from_json;
using detail::complex_to_json;

struct SequenceSpec::Data {
  Kind kind = Kind::Onb;
  WeightExpr weights;
  std::vector<BlockRule> rules;
  std::vector<Complex> window;
  std::optional<std::uint64_t> window_seed;
  std::int64_t a = 1;
  std::int64_t b = 1;
  DenseMatrix base_matrix;
  std::vector<Vector> vectors;
  std::vector<SequenceSpec> base;  // at most one element
};

namespace {

using Kind = SequenceSpec::Kind;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

const SequenceSpec::Data& checked(const std::shared_ptr<const SequenceSpec::Data>& d, Kind want, const char* what) {
  if (d->kind != want) throw PreconditionError(std::string("sequence has no ") + what);
  return *d;
}

// Number of block indices k >= 1 whose position j (0-based) lies within the first `count` terms.
std::int64_t blocks_reaching(std::int64_t count, std::int64_t period, std::int64_t j) {
  if (count <= j) return 0;
  return (count - j + period - 1) / period;
}

std::vector<WeightExpr> block_entries(const WeightExpr& w) {
  std::vector<WeightExpr> out;
  const auto j = w.to_json();
  for (const auto& e : j.at("entries")) out.push_back(WeightExpr::from_json(e));
  return out;
}

nlohmann::json index_to_json(const BlockRule& r) {
  if (!r.relative) return r.offset;
  if (r.offset == 0) return "k";
  return "k+" + std::to_string(r.offset);
}

BlockRule rule_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("coef") || !j.contains("index")) {
    throw ParseError(path, "block rule needs \"coef\" and \"index\"");
  }
  BlockRule r;
  r.coefficient = WeightExpr::from_json(j["coef"], path + ".coef");
  const auto& idx = j["index"];
  if (idx.is_number_integer()) {
    r.relative = false;
    r.offset = idx.get<std::int64_t>();
    if (r.offset < 1) throw ParseError(path + ".index", "fixed basis index must be >= 1");
    return r;
  }
  if (!idx.is_string()) throw ParseError(path + ".index", "expected an integer or \"k\", \"k+<offset>\"");
  std::string s = idx.get<std::string>();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s == "k") return r;
  if (s.rfind("k+", 0) == 0) {
    try {
      std::size_t used = 0;
      r.offset = std::stoll(s.substr(2), &used);
      if (used == s.size() - 2 && r.offset >= 0) return r;
    } catch (const std::exception&) {
    }
  }
  throw ParseError(path + ".index", "expected an integer or \"k\", \"k+<offset>\"");
}

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

std::int64_t int_field(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(path + "." + key, "expected an integer");
  }
  return j[key].get<std::int64_t>();
}

}  // namespace

SequenceSpec SequenceSpec::onb() { return SequenceSpec(std::make_shared<Data>()); }

SequenceSpec SequenceSpec::weighted_onb(const WeightExpr& weights) {
  if (weights.is_one()) return onb();
  auto d = std::make_shared<Data>();
  d->kind = Kind::WeightedOnb;
  d->weights = weights;
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::block_pattern(std::vector<BlockRule> rules) {
  if (rules.empty()) throw ShapeError("block pattern needs at least one rule");
  for (const auto& r : rules) {
    if (r.relative ? r.offset < 0 : r.offset < 1) throw ShapeError("block rule refers to a basis index below 1");
  }
  if (rules.size() == 1 && rules[0].relative && rules[0].offset == 0) return weighted_onb(rules[0].coefficient);
  auto d = std::make_shared<Data>();
  d->kind = Kind::BlockPattern;
  d->rules = std::move(rules);
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::gabor(std::vector<Complex> window, std::int64_t a, std::int64_t b) {
  const auto L = static_cast<std::int64_t>(window.size());
  if (L < 1) throw LatticeError("Gabor window must be nonempty");
  if (a < 1 || b < 1) throw LatticeError("lattice parameters a and b must be positive");
  if (L % a != 0) throw LatticeError("a must divide L");
  if (L % b != 0) throw LatticeError("b must divide L");
  if (std::all_of(window.begin(), window.end(), [](Complex c) { return c == Complex(0.0, 0.0); })) {
    throw LatticeError("Gabor window is zero");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Gabor;
  d->window = std::move(window);
  d->a = a;
  d->b = b;
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::gabor_seeded(std::int64_t length, std::int64_t a, std::int64_t b, std::uint64_t seed) {
  if (length < 1) throw LatticeError("Gabor window must be nonempty");
  auto engine = RngSeed{seed}.engine(0);
  Vector g = gaussian_vector(length, engine);
  SequenceSpec s = gabor(std::vector<Complex>(g.data(), g.data() + g.size()), a, b);
  auto d = std::make_shared<Data>(*s.data_);
  d->window_seed = seed;
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::riesz_image(const DenseMatrix& base) {
  if (base.rows() != base.cols() || base.rows() == 0) throw ShapeError("Riesz base matrix must be square");
  Eigen::VectorXd s = Eigen::JacobiSVD<DenseMatrix>(base).singularValues();
  if (!(s(s.size() - 1) > 1e-12 * s(0))) throw NumericalError("Riesz base matrix is numerically singular");
  auto d = std::make_shared<Data>();
  d->kind = Kind::RieszImage;
  d->base_matrix = base;
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::explicit_vectors(std::vector<Vector> vectors) {
  if (vectors.empty()) throw ShapeError("explicit sequence needs at least one vector");
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size() || v.size() == 0) {
      throw ShapeError("explicit vectors must share one nonzero dimension");
    }
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Explicit;
  d->vectors = std::move(vectors);
  return SequenceSpec(std::move(d));
}

SequenceSpec SequenceSpec::scaled(const SequenceSpec& base, const WeightExpr& weights) {
  if (weights.is_one()) return base;
  switch (base.kind()) {
    case Kind::Onb:
      return weighted_onb(weights);
    case Kind::WeightedOnb:
      return weighted_onb(WeightExpr::product(base.weights(), weights));
    case Kind::Scaled:
      return scaled(base.base(), WeightExpr::product(base.weights(), weights));
    case Kind::BlockPattern: {
      auto rules = base.rules();
      if (weights.is_constant()) {
        for (auto& r : rules) r.coefficient = WeightExpr::product(r.coefficient, weights);
        return block_pattern(std::move(rules));
      }
      if (weights.kind() == WeightExpr::Kind::Block && weights.period() == rules.size()) {
        auto entries = block_entries(weights);
        for (std::size_t j = 0; j < rules.size(); ++j) {
          rules[j].coefficient = WeightExpr::product(rules[j].coefficient, entries[j]);
        }
        return block_pattern(std::move(rules));
      }
      break;
    }
    default:
      break;
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Scaled;
  d->weights = weights;
  d->base.push_back(base);
  return SequenceSpec(std::move(d));
}

SequenceSpec::Kind SequenceSpec::kind() const noexcept { return data_->kind; }

std::string SequenceSpec::kind_name() const {
  switch (kind()) {
    case Kind::Onb:
      return "onb";
    case Kind::WeightedOnb:
      return "weighted_onb";
    case Kind::BlockPattern:
      return "block_pattern";
    case Kind::Gabor:
      return "gabor";
    case Kind::RieszImage:
      return "riesz_image";
    case Kind::Explicit:
      return "explicit";
    case Kind::Scaled:
      return "scaled";
  }
  return "onb";
}

Index SequenceSpec::required_dim(std::int64_t count) const {
  if (count < 1) return 0;
  const auto& d = *data_;
  switch (d.kind) {
    case Kind::Onb:
    case Kind::WeightedOnb:
      return count;
    case Kind::BlockPattern: {
      const auto P = static_cast<std::int64_t>(d.rules.size());
      std::int64_t dim = 0;
      for (std::int64_t j = 0; j < P; ++j) {
        std::int64_t k = blocks_reaching(count, P, j);
        if (k == 0) continue;
        const auto& r = d.rules[static_cast<std::size_t>(j)];
        dim = std::max(dim, r.relative ? k + r.offset : r.offset);
      }
      return dim;
    }
    case Kind::Gabor: {
      const auto L = static_cast<std::int64_t>(d.window.size());
      const std::int64_t atoms = (L / d.a) * (L / d.b);
      return L * ceil_div(count, atoms);
    }
    case Kind::RieszImage: {
      const auto P = d.base_matrix.rows();
      return P * ceil_div(count, P);
    }
    case Kind::Explicit:
      return d.vectors.front().size();
    case Kind::Scaled:
      return d.base.front().required_dim(count);
  }
  return count;
}

std::optional<std::int64_t> SequenceSpec::max_length() const {
  if (kind() == Kind::Explicit) return static_cast<std::int64_t>(data_->vectors.size());
  if (kind() == Kind::Scaled) return base().max_length();
  return std::nullopt;
}

SparseColumn SequenceSpec::column(std::int64_t n) const {
  if (n < 1) throw ShapeError("sequence index must be >= 1");
  const auto& d = *data_;
  SparseColumn out;
  auto push = [&out](Index row, Complex v) {
    if (v != Complex(0.0, 0.0)) out.push_back({row, v});
  };
  switch (d.kind) {
    case Kind::Onb:
      push(n - 1, 1.0);
      break;
    case Kind::WeightedOnb:
      push(n - 1, d.weights.eval(n));
      break;
    case Kind::BlockPattern: {
      const auto P = static_cast<std::int64_t>(d.rules.size());
      const std::int64_t k = (n - 1) / P + 1;
      const auto& r = d.rules[static_cast<std::size_t>((n - 1) % P)];
      push((r.relative ? k + r.offset : r.offset) - 1, r.coefficient.eval(k));
      break;
    }
    case Kind::Gabor: {
      const auto L = static_cast<std::int64_t>(d.window.size());
      const std::int64_t shifts = L / d.a;
      const std::int64_t atoms = shifts * (L / d.b);
      const std::int64_t copy = (n - 1) / atoms;
      const std::int64_t j = (n - 1) % atoms;
      const std::int64_t freq = j / shifts;
      const std::int64_t shift = (j % shifts) * d.a;
      for (std::int64_t x = 0; x < L; ++x) {
        Complex g = d.window[static_cast<std::size_t>(((x - shift) % L + L) % L)];
        if (g == Complex(0.0, 0.0)) continue;
        const std::int64_t phase = (freq * d.b * x) % L;
        push(copy * L + x, g * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(L)));
      }
      break;
    }
    case Kind::RieszImage: {
      const auto P = d.base_matrix.rows();
      const std::int64_t copy = (n - 1) / P;
      const Index j = (n - 1) % P;
      for (Index i = 0; i < P; ++i) push(copy * P + i, d.base_matrix(i, j));
      break;
    }
    case Kind::Explicit: {
      if (n > static_cast<std::int64_t>(d.vectors.size())) throw ShapeError("explicit sequence is shorter than requested");
      const auto& v = d.vectors[static_cast<std::size_t>(n - 1)];
      for (Index i = 0; i < v.size(); ++i) push(i, v(i));
      break;
    }
    case Kind::Scaled: {
      Complex w = d.weights.eval(n);
      for (const auto& e : d.base.front().column(n)) push(e.row, w * e.value);
      break;
    }
  }
  return out;
}

WeightExpr SequenceSpec::norm_weights() const {
  const auto& d = *data_;
  switch (d.kind) {
    case Kind::Onb:
      return WeightExpr();
    case Kind::WeightedOnb:
      return WeightExpr::abs(d.weights);
    case Kind::BlockPattern: {
      std::vector<WeightExpr> entries;
      for (const auto& r : d.rules) entries.push_back(WeightExpr::abs(r.coefficient));
      return WeightExpr::block(std::move(entries));
    }
    case Kind::Gabor: {
      double s = 0.0;
      for (const auto& g : d.window) s += std::norm(g);
      return WeightExpr::explicit_list({}, std::sqrt(s));
    }
    case Kind::RieszImage: {
      std::vector<WeightExpr> entries;
      for (Index j = 0; j < d.base_matrix.cols(); ++j) {
        entries.push_back(WeightExpr::explicit_list({}, d.base_matrix.col(j).norm()));
      }
      return WeightExpr::block(std::move(entries));
    }
    case Kind::Explicit: {
      std::vector<Complex> norms;
      for (const auto& v : d.vectors) norms.emplace_back(v.norm());
      return WeightExpr::explicit_list(std::move(norms), 0.0);
    }
    case Kind::Scaled:
      return WeightExpr::product(WeightExpr::abs(d.weights), d.base.front().norm_weights());
  }
  return WeightExpr();
}

std::size_t SequenceSpec::period() const {
  const auto& d = *data_;
  switch (d.kind) {
    case Kind::Onb:
    case Kind::Explicit:
      return 1;
    case Kind::WeightedOnb:
      return d.weights.period();
    case Kind::BlockPattern: {
      std::size_t p = d.rules.size();
      for (const auto& r : d.rules) p = std::lcm(p, d.rules.size() * r.coefficient.period());
      return p;
    }
    case Kind::Gabor: {
      const auto L = static_cast<std::int64_t>(d.window.size());
      return static_cast<std::size_t>((L / d.a) * (L / d.b));
    }
    case Kind::RieszImage:
      return static_cast<std::size_t>(d.base_matrix.rows());
    case Kind::Scaled:
      return std::lcm(d.base.front().period(), d.weights.period());
  }
  return 1;
}

bool SequenceSpec::designed_complete() const {
  if (kind() == Kind::Explicit) return false;
  if (kind() == Kind::Scaled) return base().designed_complete();
  return true;
}

const WeightExpr& SequenceSpec::weights() const {
  if (kind() != Kind::WeightedOnb && kind() != Kind::Scaled) throw PreconditionError("sequence has no weights");
  return data_->weights;
}
const std::vector<BlockRule>& SequenceSpec::rules() const { return checked(data_, Kind::BlockPattern, "block rules").rules; }
const std::vector<Complex>& SequenceSpec::window() const { return checked(data_, Kind::Gabor, "window").window; }
std::int64_t SequenceSpec::window_length() const {
  return static_cast<std::int64_t>(checked(data_, Kind::Gabor, "window").window.size());
}
std::int64_t SequenceSpec::time_step() const { return checked(data_, Kind::Gabor, "lattice").a; }
std::int64_t SequenceSpec::frequency_step() const { return checked(data_, Kind::Gabor, "lattice").b; }
const DenseMatrix& SequenceSpec::base_matrix() const {
  return checked(data_, Kind::RieszImage, "base matrix").base_matrix;
}
const SequenceSpec& SequenceSpec::base() const { return checked(data_, Kind::Scaled, "base sequence").base.front(); }
const std::vector<Vector>& SequenceSpec::vectors() const { return checked(data_, Kind::Explicit, "vectors").vectors; }

nlohmann::json SequenceSpec::to_json() const {
  const auto& d = *data_;
  nlohmann::json j = {{"kind", kind_name()}};
  switch (d.kind) {
    case Kind::Onb:
      break;
    case Kind::WeightedOnb:
      j["weights"] = d.weights.to_json();
      break;
    case Kind::BlockPattern: {
      nlohmann::json rules = nlohmann::json::array();
      for (const auto& r : d.rules) rules.push_back({{"coef", r.coefficient.to_json()}, {"index", index_to_json(r)}});
      j["rules"] = rules;
      break;
    }
    case Kind::Gabor: {
      if (d.window_seed) {
        j["window"] = {{"seed", *d.window_seed}, {"length", d.window.size()}};
      } else {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& g : d.window) w.push_back(complex_to_json(g));
        j["window"] = w;
      }
      j["a"] = d.a;
      j["b"] = d.b;
      break;
    }
    case Kind::RieszImage:
      j["base"] = matrix_to_json(d.base_matrix);
      break;
    case Kind::Explicit: {
      nlohmann::json vs = nlohmann::json::array();
      for (const auto& v : d.vectors) vs.push_back(vector_to_json(v));
      j["vectors"] = vs;
      break;
    }
    case Kind::Scaled:
      j["base"] = d.base.front().to_json();
      j["weights"] = d.weights.to_json();
      break;
  }
  return j;
}

SequenceSpec SequenceSpec::from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "sequence must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError(path + ".kind", "missing sequence kind");
  const std::string kind = j["kind"].get<std::string>();
  auto weights_of = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(path + "." + key, "missing field");
    return WeightExpr::from_json(j[key], path + "." + key);
  };
  try {
    if (kind == "onb") return onb();
    if (kind == "weighted_onb") return weighted_onb(weights_of("weights"));
    if (kind == "block_pattern") {
      if (!j.contains("rules") || !j["rules"].is_array() || j["rules"].empty()) {
        throw ParseError(path + ".rules", "expected a nonempty array of rules");
      }
      std::vector<BlockRule> rules;
      for (std::size_t i = 0; i < j["rules"].size(); ++i) {
        rules.push_back(rule_from_json(j["rules"][i], path + ".rules[" + std::to_string(i) + "]"));
      }
      return block_pattern(std::move(rules));
    }
    if (kind == "gabor") {
      const std::int64_t a = int_field(j, "a", path);
      const std::int64_t b = int_field(j, "b", path);
      if (!j.contains("window")) throw ParseError(path + ".window", "missing field");
      const auto& w = j["window"];
      if (w.is_object()) {
        const std::int64_t length = int_field(w, "length", path + ".window");
        if (!w.contains("seed") || !w["seed"].is_number_unsigned()) {
          throw ParseError(path + ".window.seed", "expected a nonnegative integer");
        }
        return gabor_seeded(length, a, b, w["seed"].get<std::uint64_t>());
      }
      Vector g = vector_from_json(w, path + ".window");
      return gabor(std::vector<Complex>(g.data(), g.data() + g.size()), a, b);
    }
    if (kind == "riesz_image") {
      if (!j.contains("base") || !j["base"].is_array() || j["base"].empty()) {
        throw ParseError(path + ".base", "expected a square matrix");
      }
      const auto& rows = j["base"];
      const auto P = static_cast<Index>(rows.size());
      DenseMatrix m(P, P);
      for (Index i = 0; i < P; ++i) {
        Vector row = vector_from_json(rows[static_cast<std::size_t>(i)], path + ".base[" + std::to_string(i) + "]");
        if (row.size() != P) throw ParseError(path + ".base", "expected a square matrix");
        m.row(i) = row.transpose();
      }
      return riesz_image(m);
    }
    if (kind == "explicit") {
      if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty()) {
        throw ParseError(path + ".vectors", "expected a nonempty array of vectors");
      }
      std::vector<Vector> vs;
      for (std::size_t i = 0; i < j["vectors"].size(); ++i) {
        vs.push_back(vector_from_json(j["vectors"][i], path + ".vectors[" + std::to_string(i) + "]"));
      }
      return explicit_vectors(std::move(vs));
    }
    if (kind == "scaled") {
      if (!j.contains("base")) throw ParseError(path + ".base", "missing field");
      return scaled(from_json(j["base"], path + ".base"), weights_of("weights"));
    }
  } catch (const ShapeError& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path + ".kind", "unknown sequence kind \"" + kind + "\"");
}

bool operator==(const SequenceSpec& a, const SequenceSpec& b) { return a.to_json() == b.to_json(); }

RealizedSequence::RealizedSequence(SequenceSpec spec, std::int64_t count, Index dim)
    : spec_(std::move(spec)), count_(count), dim_(dim) {
  if (count < 1) throw ShapeError("truncation length must be >= 1");
  if (auto len = spec_.max_length(); len && count > *len) {
    throw ShapeError("sequence has only " + std::to_string(*len) + " elements, " + std::to_string(count) + " requested");
  }
  if (dim < spec_.required_dim(count)) throw ShapeError("ambient dimension too small for the requested truncation");
  columns_.reserve(static_cast<std::size_t>(count));
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::int64_t n = 1; n <= count; ++n) {
    columns_.push_back(spec_.column(n));
    for (const auto& e : columns_.back()) triplets.emplace_back(e.row, n - 1, e.value);
  }
  matrix_.resize(dim, count);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
}

RealizedSequence build_sequence(const SequenceSpec& spec, std::int64_t count, Index dim) {
  return RealizedSequence(spec, count, dim);
}

RealizedSequence build_sequence(const SequenceSpec& spec, std::int64_t count) {
  return RealizedSequence(spec, count, spec.required_dim(count));
}

Complex inner(const Vector& f, const SparseColumn& g) {
  Complex acc(0.0, 0.0);
  for (const auto& e : g) {
    if (e.row < f.size()) acc += f(e.row) * std::conj(e.value);
  }
  return acc;
}

double squared_norm(const SparseColumn& c) {
  double acc = 0.0;
  for (const auto& e : c) acc += std::norm(e.value);
  return acc;
}

}  // namespace framemult

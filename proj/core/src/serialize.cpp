#include "framemult/serialize.hpp"

#include <cmath>

namespace framemult {

using nlohmann::json;

json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json json_numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(json_number(x));
  return out;
}

json to_json(const LinearFit& fit) {
  return {{"slope", json_number(fit.slope)}, {"intercept", json_number(fit.intercept)}, {"r2", json_number(fit.r2)}};
}

json to_json(const GrowthFit& fit) {
  return {{"model", to_string(fit.model)},
          {"r2", json_number(fit.r2)},
          {"power_alpha", json_number(fit.power.slope)},
          {"power_r2", json_number(fit.power.r2)},
          {"log_slope", json_number(fit.logarithmic.slope)},
          {"log_r2", json_number(fit.logarithmic.r2)},
          {"last_octave_increase", json_number(fit.last_octave_increase)}};
}

json to_json(const TailEvidence& tail) {
  return {{"trend", to_string(tail.trend)}, {"exponent", json_number(tail.exponent)}, {"last", json_number(tail.last)}};
}

json to_json(const ScalarClassification& sc) {
  return {{"lengths", sc.lengths},
          {"inf", json_numbers(sc.inf_per_step)},
          {"sup", json_numbers(sc.sup_per_step)},
          {"square_sums", json_numbers(sc.square_sums)},
          {"inf_fit", to_json(sc.inf_fit)},
          {"sup_fit", to_json(sc.sup_fit)},
          {"is_nbb", to_string(sc.is_nbb)},
          {"inf_estimate", json_number(sc.inf_estimate)},
          {"is_linf", to_string(sc.is_linf)},
          {"sup_estimate", json_number(sc.sup_estimate)},
          {"is_semi_normalized", to_string(sc.is_semi_normalized)},
          {"a", json_number(sc.a)},
          {"b", json_number(sc.b)},
          {"is_l2", to_string(sc.is_l2)},
          {"l2_tail", to_json(sc.l2_tail)}};
}

json to_json(const FrameBounds& fb) {
  return {{"lengths", fb.lengths},
          {"dims", fb.dims},
          {"B", json_numbers(fb.bessel_B)},
          {"A", json_numbers(fb.lower_A)},
          {"gram_min", json_numbers(fb.gram_min)},
          {"gram_max", json_numbers(fb.gram_max)},
          {"upper_fit", to_json(fb.upper_fit)},
          {"lower_fit", to_json(fb.lower_fit)},
          {"bessel", to_string(fb.bessel)},
          {"frame", to_string(fb.frame)},
          {"riesz", to_string(fb.riesz)},
          {"verdict", to_string(fb.verdict)},
          {"B_estimate", json_number(fb.B_estimate)},
          {"A_estimate", json_number(fb.A_estimate)}};
}

json to_json(const BiorthogonalResult& br) {
  return {{"minimal", to_string(br.minimal_verdict)},
          {"structural", br.structural},
          {"reason", br.reason},
          {"gram_condition", json_numbers(br.gram_condition)},
          {"residual", json_number(br.residual)}};
}

json to_json(const TraceEvidence& ev) {
  return {{"pattern", ev.pattern},
          {"oscillation", json_numbers(ev.oscillation)},
          {"tail", to_json(ev.tail)},
          {"growth", to_json(ev.growth)}};
}

json to_json(const SquareSumEvidence& ev) {
  return {{"verdict", to_string(ev.verdict)},
          {"window_sums", json_numbers(ev.window_sums)},
          {"totals", json_numbers(ev.totals)},
          {"tail", to_json(ev.tail)},
          {"growth", to_json(ev.growth)}};
}

json to_json(const ConvergenceResult& res) {
  json probes = json::array();
  for (const auto& pe : res.probes) {
    probes.push_back({{"probe", pe.probe},
                      {"f_norm", json_number(pe.f_norm)},
                      {"ordered", to_json(pe.ordered)},
                      {"square_sum", to_json(pe.square_sum)},
                      {"pattern_envelope", json_numbers(pe.pattern_envelope)},
                      {"envelope_tail", to_json(pe.envelope_tail)},
                      {"worst_pattern", to_json(pe.worst_pattern)},
                      {"persisting_patterns", pe.persisting_patterns}});
  }
  return {{"verdict", to_string(res.verdict)},
          {"ordered_converges", to_string(res.ordered_converges)},
          {"lengths", res.lengths},
          {"worst_tails", json_numbers(res.worst_tails)},
          {"witness", {{"probe", res.witness_probe}, {"pattern", res.witness_pattern}, {"growth", to_json(res.witness_growth)}}},
          {"witnesses", res.witnesses},
          {"probes", probes}};
}

json to_json(const NecessaryReport& rep) {
  json flags = json::array();
  for (const auto& f : rep.contradictions) flags.push_back({{"rule", f.rule}, {"message", f.message}});
  return {{"m_phinorm_psi", to_json(rep.m_phinorm_psi)},
          {"m_psinorm_phi", to_json(rep.m_psinorm_phi)},
          {"normalized_phi", to_json(rep.normalized_phi)},
          {"m_psi", to_json(rep.m_psi)},
          {"m_phi", to_json(rep.m_phi)},
          {"phi", to_json(rep.phi)},
          {"psi", to_json(rep.psi)},
          {"symbol", to_json(rep.symbol)},
          {"phi_norms", to_json(rep.phi_norms)},
          {"psi_norms", to_json(rep.psi_norms)},
          {"m_phi_norms", to_json(rep.m_phi_norms)},
          {"m_psi_norms", to_json(rep.m_psi_norms)},
          {"product_norms", to_json(rep.product_norms)},
          {"checked", rep.checked},
          {"contradictions", flags},
          {"contradiction_count", rep.contradictions.size()}};
}

json to_json(const CanonicalResult& res) {
  double worst = 0.0;
  for (double r : res.invariance_residual) worst = std::max(worst, r);
  return {{"reweighting", res.reweighting.to_json()},
          {"symbol", res.reweighted.symbol.to_json()},
          {"symbol_is_one", res.reweighted.symbol.is_one()},
          {"reweighted", res.reweighted.to_json()},
          {"phi_bounds", to_json(res.phi_bounds)},
          {"psi_bounds", to_json(res.psi_bounds)},
          {"invariance_residual", json_numbers(res.invariance_residual)},
          {"max_invariance_residual", json_number(worst)},
          {"bessel_pair", to_string(res.bessel_pair)},
          {"frame_pair", to_string(res.frame_pair)},
          {"product_norms", to_json(res.product_norms)}};
}

json to_json(const InvertibilityReport& rep) {
  json out = {{"verdict", to_string(rep.verdict)},
              {"lengths", rep.lengths},
              {"condition", json_numbers(rep.condition)},
              {"min_singular", json_numbers(rep.min_singular)},
              {"max_singular", json_numbers(rep.max_singular)},
              {"identity_residual", json_numbers(rep.identity_residual)},
              {"condition_fit", to_json(rep.condition_fit)},
              {"adjoint_inverse_ok", rep.adjoint_inverse_ok},
              {"contradiction", rep.contradiction},
              {"note", rep.note}};
  out["adjoint_inverse_residual"] = rep.adjoint_inverse_residual ? json_number(*rep.adjoint_inverse_residual) : json();
  if (rep.minimal) {
    out["minimal"] = {{"dual_residual", json_number(rep.minimal->dual_residual)},
                      {"min_product", json_number(rep.minimal->min_product)},
                      {"inverse_norm", json_number(rep.minimal->inverse_norm)},
                      {"bound_holds", rep.minimal->bound_holds}};
  } else {
    out["minimal"] = nullptr;
  }
  return out;
}

json to_json(const ImpossibilityCertificate& cert) {
  return {{"N", cert.N},
          {"optimum", cert.optimum.to_string()},
          {"optimum_value", json_number(cert.optimum.to_double())},
          {"witness_product", cert.witness_product.to_string()},
          {"attained", cert.witness_product == cert.optimum}};
}

json to_json(const DualCheck& check) {
  return {{"lengths", check.lengths},
          {"residual", json_numbers(check.residual)},
          {"swapped_residual", json_numbers(check.swapped_residual)},
          {"vanishes", check.vanishes},
          {"swapped_vanishes", check.swapped_vanishes}};
}

json to_json(const AdjointCheck& check) {
  return {{"lengths", check.lengths},
          {"residual", json_numbers(check.residual)},
          {"scale", json_numbers(check.scale)},
          {"worst_relative", json_number(check.worst_relative)}};
}

}  // namespace framemult

#pragma once

#include <complex>
#include <string>

#include <nlohmann/json.hpp>

#include "framemult/error.hpp"

namespace framemult::detail {

inline nlohmann::json complex_to_json(std::complex<double> c) {
  if (c.imag() == 0.0) return c.real();
  return nlohmann::json::array({c.real(), c.imag()});
}

inline std::complex<double> complex_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(path, "expected a number or [re, im] pair");
}

}  // namespace framemult::detail

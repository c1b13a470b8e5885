#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "framemult/multiplier.hpp"
#include "framemult/sequence.hpp"
#include "framemult/weight_expr.hpp"

namespace testing_support {

inline framemult::SequenceSpec sequence(const nlohmann::json& j) { return framemult::SequenceSpec::from_json(j); }

inline framemult::MultiplierSpec multiplier(const std::string& text,
                                            const framemult::TruncationLadder& ladder = framemult::TruncationLadder()) {
  return framemult::MultiplierSpec::from_json(nlohmann::json::parse(text), ladder);
}

inline const nlohmann::json kBlockPhi = nlohmann::json::parse(
    R"({"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": 1}, {"coef": -1, "index": 1}]})");
inline const nlohmann::json kBlockPsi = nlohmann::json::parse(
    R"({"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]})");

inline framemult::MultiplierSpec block_example(const framemult::TruncationLadder& ladder, bool swapped = false) {
  framemult::MultiplierSpec s;
  s.phi = sequence(swapped ? kBlockPsi : kBlockPhi);
  s.psi = sequence(swapped ? kBlockPhi : kBlockPsi);
  s.ladder = ladder;
  return s;
}

}  // namespace testing_support

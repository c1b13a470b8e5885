#include <string_view>

#include "framemult/scenarios.hpp"

namespace framemult {

namespace {

constexpr std::string_view kRegistry = R"json({
  "format": 1,
  "scenarios": [
    {
      "name": "paper.example_wd",
      "description": "Well defined with the identity as sum, but not unconditionally convergent: phi = (e1, e1, -e1, e2, e1, -e1, ...), psi = (e1, e1, e1, e2, e2, e2, ...).",
      "multiplier": {
        "symbol": 1,
        "phi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": 1}, {"coef": -1, "index": 1}]},
        "psi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "frame_bounds", "invertibility", "dual_check", "adjoint_check", "necessary_report"],
      "options": {"identity_claimed": true},
      "expected": {
        "convergence": {"verdict": "ConditionalAtScale"},
        "frame_bounds": {"phi.verdict": "not_bessel", "psi.verdict": "frame",
                         "psi.B_estimate": {"value": 3, "tol": 1e-12}, "psi.A_estimate": {"value": 3, "tol": 1e-12}},
        "invertibility": {"verdict": "InvertibleAtScale", "contradiction": false},
        "dual_check": {"vanishes": true},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.example_wd_swapped",
      "description": "The same pair with the roles of analysis and synthesis exchanged: not well defined.",
      "multiplier": {
        "symbol": 1,
        "phi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]},
        "psi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": 1}, {"coef": -1, "index": 1}]}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "adjoint_check", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "DivergentAtScale"},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.mult_1_en_over_n",
      "description": "m = (n), phi = psi = (e_n / n): the operator diag(1/n), equal to the multiplier ((1), (e_n), (e_n / n)).",
      "multiplier": {"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"}, "psi": {"kind": "weighted_onb", "weights": "1/n"}},
      "analyses": ["convergence", "invertibility", "canonicalize", "classify_scalars", "adjoint_check", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "NotInvertible"},
        "canonicalize": {"symbol_is_one": true, "bessel_pair": "yes"},
        "classify_scalars": {"symbol.is_nbb": "yes", "symbol.is_linf": {"in": ["no", "trend_no"]}},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.e1short",
      "description": "m = (n), phi = (n e_n), psi = (e_n / n^2): the identity, with canonical form ((1), (e_n), (e_n)).",
      "multiplier": {"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "n"}, "psi": {"kind": "weighted_onb", "weights": "n^-2"}},
      "analyses": ["canonicalize", "invertibility", "convergence", "necessary_report", "adjoint_check"],
      "options": {"identity_claimed": true},
      "expected": {
        "canonicalize": {"symbol_is_one": true, "bessel_pair": "yes", "frame_pair": "yes",
                         "phi_bounds.B_estimate": {"value": 1, "tol": 1e-12}, "psi_bounds.B_estimate": {"value": 1, "tol": 1e-12},
                         "max_invariance_residual": {"max": 1e-12}},
        "invertibility": {"verdict": "InvertibleAtScale", "contradiction": false},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0, "m_phinorm_psi.B_estimate": {"value": 1, "tol": 1e-12}},
        "adjoint_check": {"worst_relative": {"max": 1e-13}}
      }
    },
    {
      "name": "paper.e2",
      "description": "m = (n), phi = psi = (e_n / n): no reweighting turns both sequences into frames; the bound product is at most 1/N^2.",
      "multiplier": {"symbol": "n", "phi": {"kind": "weighted_onb", "weights": "1/n"}, "psi": {"kind": "weighted_onb", "weights": "1/n"}},
      "analyses": ["e2_certificate", "canonicalize", "invertibility"],
      "options": {"e2_sizes": [2, 10, 100]},
      "expected": {
        "e2_certificate": {"certificates.0.optimum": "1/4", "certificates.1.optimum": "1/100", "certificates.2.optimum": "1/10000",
                           "certificates.2.attained": true},
        "canonicalize": {"frame_pair": {"in": ["no", "trend_no"]}},
        "invertibility": {"verdict": "NotInvertible"}
      }
    },
    {
      "name": "paper.remark_rem2",
      "description": "The example pair with m = (1, 1, 1, 1, 1/2, 1/2, 1, 1/4, 1/4, ...). Claimed not unconditionally convergent; the paired weights 2^-(k-1) are square-summable.",
      "multiplier": {
        "symbol": {"period": 3, "entries": [1, "2^-(k-1)", "2^-(k-1)"]},
        "phi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": 1}, {"coef": -1, "index": 1}]},
        "psi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "necessary_report"],
      "expected": {
        "convergence": {"unspecified": true, "claim": {"verdict": "ConditionalAtScale"},
                        "note": "the e1 components sum to sum_k 2^-(k-1) (<f,e_k> - <f,e_k>) with absolutely summable weights"}
      }
    },
    {
      "name": "paper.prop4iii_counter",
      "description": "m = (1/n), phi = (e_n), psi = (n^2 e_n): not well defined; f = sum k^-3/2 e_k gives terms of norm k^-1/2.",
      "multiplier": {"symbol": "1/n", "phi": {"kind": "onb"}, "psi": {"kind": "weighted_onb", "weights": "n^2"}},
      "analyses": ["convergence", "classify_scalars", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "DivergentAtScale", "witnesses": {"contains": "power_3/2"}},
        "classify_scalars": {"symbol.is_linf": "yes"},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.remark_cex1",
      "description": "phi = (e1/2, e2, e1/4, e3, ...), psi = (e1, e2, e1, e3, ...), m = (1): unconditionally convergent although m psi = psi is not Bessel (phi is not NBB).",
      "multiplier": {
        "symbol": 1,
        "phi": {"kind": "block_pattern", "rules": [{"coef": "2^-k", "index": 1}, {"coef": 1, "index": "k+1"}]},
        "psi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": 1}, {"coef": 1, "index": "k+1"}]}
      },
      "analyses": ["convergence", "necessary_report", "frame_bounds"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0, "m_psi.verdict": "not_bessel", "phi_norms.is_nbb": {"in": ["no", "trend_no"]}},
        "frame_bounds": {"psi.verdict": "not_bessel"}
      }
    },
    {
      "name": "paper.remark42",
      "description": "m = (n), phi = (e_n), psi = (e_n / n): the identity with an unbounded symbol (psi is not NBB).",
      "multiplier": {"symbol": "n", "phi": {"kind": "onb"}, "psi": {"kind": "weighted_onb", "weights": "1/n"}},
      "analyses": ["convergence", "necessary_report", "invertibility"],
      "options": {"identity_claimed": true},
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0, "symbol.is_linf": {"in": ["no", "trend_no"]}},
        "invertibility": {"verdict": "InvertibleAtScale"}
      }
    },
    {
      "name": "paper.alternating_sign",
      "description": "m = (1, -1, 1, -1, ...), phi = psi = (e1, e1, e2, e2, ...): the zero operator by pairwise cancellation.",
      "multiplier": {
        "symbol": {"period": 2, "entries": [1, -1]},
        "phi": {"kind": "block_pattern", "rules": [{"coef": 1, "index": "k"}, {"coef": 1, "index": "k"}]}
      },
      "analyses": ["convergence", "invertibility", "adjoint_check", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "NotInvertible"},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.sqrt_case",
      "description": "m = (n^2), phi = psi = (e_n / n): the identity; the square-root split gives the pair ((e_n), (e_n)).",
      "multiplier": {"symbol": "n^2", "phi": {"kind": "weighted_onb", "weights": "1/n"}, "psi": {"kind": "weighted_onb", "weights": "1/n"}},
      "analyses": ["sqrt_split", "convergence", "invertibility"],
      "options": {"identity_claimed": true},
      "expected": {
        "sqrt_split": {"symbol_is_one": true, "phi_bounds.B_estimate": {"value": 1, "tol": 1e-12},
                       "psi_bounds.B_estimate": {"value": 1, "tol": 1e-12}, "frame_pair": "yes"},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "InvertibleAtScale"}
      }
    },
    {
      "name": "paper.gabor_frame_case",
      "description": "Gabor system of a seeded window on C^12 with a = 2, b = 3 (24 atoms), m = (1, 1/2, 1, 1/2, ...).",
      "multiplier": {
        "symbol": {"period": 2, "entries": [1, "1/2"]},
        "phi": {"kind": "gabor", "window": {"seed": 7, "length": 12}, "a": 2, "b": 3}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["frame_bounds", "classify_scalars", "convergence", "necessary_report"],
      "expected": {
        "frame_bounds": {"phi.verdict": "frame"},
        "classify_scalars": {"symbol.is_semi_normalized": "yes"},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.gabor_unbounded",
      "description": "The same Gabor frame with m = (n): NBB but unbounded, so not unconditionally convergent.",
      "multiplier": {
        "symbol": "n",
        "phi": {"kind": "gabor", "window": {"seed": 7, "length": 12}, "a": 2, "b": 3}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "DivergentAtScale"},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.riesz_bessel",
      "description": "phi a Riesz basis (block images under a 3x3 invertible matrix), psi = (e_n), bounded m: unconditional, and (m psi) is Bessel.",
      "multiplier": {
        "symbol": {"period": 3, "entries": [1, "1/2", -1]},
        "phi": {"kind": "riesz_image", "base": [[2, 1, 0], [0, 1, 1], [1, 0, 1]]}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["frame_bounds", "convergence", "necessary_report"],
      "expected": {
        "frame_bounds": {"phi.verdict": "riesz_basis", "phi_minimality.minimal": "yes"},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0, "m_psi.bessel": "yes"}
      }
    },
    {
      "name": "paper.riesz_unbounded",
      "description": "phi a Riesz basis, psi = (e_n), m = (n): (m psi) is not Bessel, so not even well defined.",
      "multiplier": {
        "symbol": "n",
        "phi": {"kind": "riesz_image", "base": [[2, 1, 0], [0, 1, 1], [1, 0, 1]]},
        "psi": {"kind": "onb"}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "DivergentAtScale"},
        "necessary_report": {"contradiction_count": 0, "m_psi.bessel": {"in": ["no", "trend_no"]}}
      }
    },
    {
      "name": "paper.riesz_non_nbb",
      "description": "phi a Riesz basis, psi = (e_n / n) (not NBB), m = (n): unconditionally convergent with an unbounded symbol.",
      "multiplier": {
        "symbol": "n",
        "phi": {"kind": "riesz_image", "base": [[2, 1, 0], [0, 1, 1], [1, 0, 1]]},
        "psi": {"kind": "weighted_onb", "weights": "1/n"}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["convergence", "necessary_report"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0, "symbol.is_linf": {"in": ["no", "trend_no"]}}
      }
    },
    {
      "name": "paper.riesz_pair",
      "description": "phi and psi both Riesz bases (3x3 and 4x4 block images) and m bounded: unconditionally convergent.",
      "multiplier": {
        "symbol": {"period": 2, "entries": [1, "1/2"]},
        "phi": {"kind": "riesz_image", "base": [[2, 1, 0], [0, 1, 1], [1, 0, 1]]},
        "psi": {"kind": "riesz_image", "base": [[1, 0.5, 0, 0], [0, 1, 0.5, 0], [0, 0, 1, 0.5], [0.5, 0, 0, 1]]}
      },
      "ladder": [48, 192, 768, 3072],
      "analyses": ["frame_bounds", "convergence", "necessary_report"],
      "expected": {
        "frame_bounds": {"phi.verdict": "riesz_basis", "psi.verdict": "riesz_basis"},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.cor5_counter",
      "description": "m = (1), phi = psi = (2^-1/2 e1, e2, 2^-1 e1, e3, ...): a Parseval frame whose norm product is not bounded below.",
      "multiplier": {
        "symbol": 1,
        "phi": {"kind": "block_pattern", "rules": [{"coef": "sqrt(2^-k)", "index": 1}, {"coef": 1, "index": "k+1"}]}
      },
      "analyses": ["frame_bounds", "classify_scalars", "convergence", "invertibility"],
      "options": {"identity_claimed": true},
      "expected": {
        "frame_bounds": {"phi.verdict": "frame", "phi.B_estimate": {"value": 1, "tol": 1e-12}},
        "classify_scalars": {"product_norms.is_nbb": {"in": ["no", "trend_no"]}},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "InvertibleAtScale"}
      }
    },
    {
      "name": "paper.onb_identity",
      "description": "m = (1), phi = psi = (e_n).",
      "multiplier": {"symbol": 1, "phi": {"kind": "onb"}},
      "analyses": ["convergence", "frame_bounds", "invertibility", "canonicalize", "dual_check", "adjoint_check", "necessary_report"],
      "options": {"identity_claimed": true},
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "frame_bounds": {"phi.verdict": "riesz_basis", "phi.B_estimate": {"value": 1, "tol": 1e-12}},
        "invertibility": {"verdict": "InvertibleAtScale"},
        "canonicalize": {"symbol_is_one": true, "frame_pair": "yes"},
        "dual_check": {"vanishes": true, "swapped_vanishes": true},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "necessary_report": {"contradiction_count": 0}
      }
    },
    {
      "name": "paper.p3_not_p1",
      "description": "m = (1), phi = (e_n / n), psi = (e_n): Bessel pair after reweighting, but the norm product 1/n is not bounded below.",
      "multiplier": {"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "1/n"}, "psi": {"kind": "onb"}},
      "analyses": ["convergence", "classify_scalars", "canonicalize"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "classify_scalars": {"product_norms.is_nbb": {"in": ["no", "trend_no"]}},
        "canonicalize": {"bessel_pair": "yes"}
      }
    },
    {
      "name": "paper.complex_symbol",
      "description": "m = (i n), phi = (n e_n), psi = (e_n / n^2): i times the identity.",
      "multiplier": {"symbol": "n*i", "phi": {"kind": "weighted_onb", "weights": "n"}, "psi": {"kind": "weighted_onb", "weights": "n^-2"}},
      "analyses": ["convergence", "invertibility", "adjoint_check", "canonicalize"],
      "expected": {
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "InvertibleAtScale"},
        "adjoint_check": {"worst_relative": {"max": 1e-13}},
        "canonicalize": {"symbol_is_one": true, "max_invariance_residual": {"max": 1e-12}}
      }
    },
    {
      "name": "paper.dual_pair",
      "description": "m = (1), phi = (e_n / n), psi = (n e_n): biorthogonal sequences, so both orders give the identity.",
      "multiplier": {"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "1/n"}, "psi": {"kind": "weighted_onb", "weights": "n"}},
      "analyses": ["dual_check", "convergence", "invertibility"],
      "options": {"identity_claimed": true},
      "expected": {
        "dual_check": {"vanishes": true, "swapped_vanishes": true},
        "convergence": {"verdict": "UnconditionalAtScale"},
        "invertibility": {"verdict": "InvertibleAtScale"}
      }
    }
  ]
})json";

}  // namespace

const std::vector<Scenario>& registry_list() {
  static const std::vector<Scenario> entries = parse_scenarios(kRegistry);
  return entries;
}

std::optional<Scenario> registry_find(std::string_view name) {
  std::string full = name.substr(0, 6) == "paper." ? std::string(name) : "paper." + std::string(name);
  for (const auto& s : registry_list())
    if (s.name == full) return s;
  return std::nullopt;
}

}  // namespace framemult

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quorum/decision_case.hpp"

namespace quorum {

// Generative regimes. Each one is built so that a different aggregation
// method is the reliable solver, with the regime recognizable from
// label-symmetric statistics (confidence level, vote margin, and the
// direction in which respondents mis-predict the majority's popularity):
//   EASY_MAJORITY      - confident, mostly-correct crowd; majority rule wins.
//   MISLEADING         - wrong majority, wrong voters the most confident,
//                        everyone OVER-predicts the majority's support, so
//                        the surprisingly-popular signal flips to the truth.
//   CONFIDENT_MINORITY - wrong majority but a highly confident correct
//                        minority; confidence methods win.
//   DA_ONLY            - wrong majority, confidence aligned with the
//                        majority, support UNDER-predicted: all four
//                        standard methods fail and only the opposition pick
//                        is right.
//   NOISE              - uninformative crowd; everything is a coin flip.
enum class Regime { EASY_MAJORITY, MISLEADING, CONFIDENT_MINORITY, DA_ONLY, NOISE };

const char* regime_name(Regime r);

struct RegimeSpec {
  Regime regime = Regime::NOISE;
  double p_correct = 0.5;  // per-respondent probability of voting the truth
  double conf_correct_mean = 0.55, conf_correct_spread = 0.1;
  double conf_wrong_mean = 0.55, conf_wrong_spread = 0.1;
  double meta_knowledge = 0.5;  // 1 = predictions track realized shares exactly
  double ps_bias = 0.0;         // shift applied to the majority's predicted share
  std::size_t n_min = 40, n_max = 100;
};

// Tuned per-regime defaults (group sizes 40..100).
RegimeSpec default_regime(Regime r);

// One case, deterministic from the seed. Regenerates until the case is
// non-degenerate and shows the regime's defining outcome pattern; gives up
// after a bounded number of attempts.
DecisionCase generate_case(const RegimeSpec& spec, std::uint64_t seed);

struct TaggedCorpus {
  std::vector<DecisionCase> cases;
  std::vector<Regime> tags;  // diagnostics only, never fed to models
};

TaggedCorpus generate_corpus(const std::vector<std::pair<RegimeSpec, std::size_t>>& mixture,
                             std::uint64_t seed);

// The standard evaluation mixture: 150 EASY_MAJORITY, 150 MISLEADING,
// 100 CONFIDENT_MINORITY, 50 DA_ONLY, 50 NOISE.
std::vector<std::pair<RegimeSpec, std::size_t>> default_mixture();

}  // namespace quorum

#include "quorum/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "quorum/aggregators.hpp"
#include "quorum/errors.hpp"
#include "quorum/parallel.hpp"
#include "quorum/rng.hpp"

namespace quorum {
namespace {

constexpr int kRetryBudget = 1000;

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// Outcome bits (O_MR, O_HAC, O_WC, O_SP, O_DA) for a freshly generated case.
std::array<int, 5> outcomes_of(const DecisionCase& c) {
  std::array<int, 5> out{};
  const auto results = aggregate_all(c);
  for (std::size_t i = 0; i < results.size(); ++i) out[i] = *results[i].outcome;
  return out;
}

bool regime_satisfied(Regime r, const std::array<int, 5>& o) {
  switch (r) {
    case Regime::EASY_MAJORITY: return o[0] == 1;                      // MR solves
    case Regime::MISLEADING: return o[0] == 0 && o[3] == 1;            // SP solves, MR fails
    case Regime::CONFIDENT_MINORITY: return o[0] == 0 && o[1] == 1;    // HAC solves, MR fails
    case Regime::DA_ONLY: return o == std::array<int, 5>{0, 0, 0, 0, 1};
    case Regime::NOISE: return true;
  }
  return true;
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::EASY_MAJORITY: return "EASY_MAJORITY";
    case Regime::MISLEADING: return "MISLEADING";
    case Regime::CONFIDENT_MINORITY: return "CONFIDENT_MINORITY";
    case Regime::DA_ONLY: return "DA_ONLY";
    case Regime::NOISE: return "NOISE";
  }
  return "?";
}

RegimeSpec default_regime(Regime r) {
  RegimeSpec s;
  s.regime = r;
  switch (r) {
    case Regime::EASY_MAJORITY:
      s.p_correct = 0.72;
      s.conf_correct_mean = 0.78;
      s.conf_correct_spread = 0.08;
      s.conf_wrong_mean = 0.60;
      s.conf_wrong_spread = 0.08;
      s.meta_knowledge = 0.85;
      s.ps_bias = 0.12;  // the crowd over-predicts its own majority
      break;
    case Regime::MISLEADING:
      s.p_correct = 0.32;
      s.conf_correct_mean = 0.47;
      s.conf_correct_spread = 0.08;
      s.conf_wrong_mean = 0.66;
      s.conf_wrong_spread = 0.08;
      s.meta_knowledge = 0.85;
      s.ps_bias = 0.20;  // gross over-prediction of the wrong majority
      break;
    case Regime::CONFIDENT_MINORITY:
      s.p_correct = 0.36;
      s.conf_correct_mean = 0.88;
      s.conf_correct_spread = 0.05;
      s.conf_wrong_mean = 0.48;
      s.conf_wrong_spread = 0.08;
      s.meta_knowledge = 0.85;
      s.ps_bias = 0.0;  // accurate predictions: no surprise signal
      break;
    case Regime::DA_ONLY:
      s.p_correct = 0.30;
      s.conf_correct_mean = 0.45;
      s.conf_correct_spread = 0.07;
      s.conf_wrong_mean = 0.70;
      s.conf_wrong_spread = 0.07;
      s.meta_knowledge = 0.85;
      s.ps_bias = -0.18;  // under-prediction keeps the wrong majority "surprising"
      break;
    case Regime::NOISE:
      s.p_correct = 0.5;
      s.conf_correct_mean = 0.55;
      s.conf_correct_spread = 0.15;
      s.conf_wrong_mean = 0.55;
      s.conf_wrong_spread = 0.15;
      s.meta_knowledge = 0.3;
      s.ps_bias = 0.0;
      break;
  }
  return s;
}

DecisionCase generate_case(const RegimeSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const double ps_noise = 0.05 + 0.15 * (1.0 - spec.meta_knowledge);

  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    DecisionCase c;
    c.answers = {"A", "B"};
    // Randomize which index carries the truth so nothing can be read off
    // answer positions.
    const std::size_t correct = rng.next_double() < 0.5 ? 0 : 1;
    c.correct = correct;

    const std::size_t n = spec.n_min + std::size_t(rng.next_below(spec.n_max - spec.n_min + 1));
    std::size_t n_correct = 0;
    std::vector<bool> is_correct(n);
    for (std::size_t j = 0; j < n; ++j) {
      is_correct[j] = rng.next_double() < spec.p_correct;
      if (is_correct[j]) ++n_correct;
    }
    if (n_correct == 0 || n_correct == n) continue;  // degenerate, §5.1 would drop it

    const std::size_t majority =
        2 * n_correct >= n ? correct : 1 - correct;  // ties go to the truth
    const double share_majority =
        double(majority == correct ? n_correct : n - n_correct) / double(n);

    c.responses.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      Response& r = c.responses[j];
      r.vote = is_correct[j] ? correct : 1 - correct;
      const double mean = is_correct[j] ? spec.conf_correct_mean : spec.conf_wrong_mean;
      const double spread = is_correct[j] ? spec.conf_correct_spread : spec.conf_wrong_spread;
      r.confidence = clamp(mean + spread * rng.next_normal(), 0.02, 1.0);
      // Predicted support: a blend of the realized majority share and an
      // uninformed prior, shifted by the regime's bias, plus personal noise.
      const double anchor =
          spec.meta_knowledge * share_majority + (1.0 - spec.meta_knowledge) * 0.5;
      const double pred =
          clamp(anchor + spec.ps_bias + ps_noise * rng.next_normal(), 0.02, 0.98);
      r.predicted_support.assign(2, 0.0);
      r.predicted_support[majority] = pred;
      r.predicted_support[1 - majority] = 1.0 - pred;
    }

    c = validate_case(std::move(c));
    if (regime_satisfied(spec.regime, outcomes_of(c))) return c;
  }
  fail("RegimeUnsatisfiable", std::string("regime ") + regime_name(spec.regime) +
                                  " not satisfied within retry budget");
}

TaggedCorpus generate_corpus(const std::vector<std::pair<RegimeSpec, std::size_t>>& mixture,
                             std::uint64_t seed) {
  std::size_t total = 0;
  for (const auto& [spec, count] : mixture) total += count;
  if (total == 0) fail("EmptyTrainingSet", "mixture requests zero cases");

  std::vector<RegimeSpec> specs;
  specs.reserve(total);
  std::vector<Regime> tags;
  tags.reserve(total);
  for (const auto& [spec, count] : mixture)
    for (std::size_t i = 0; i < count; ++i) {
      specs.push_back(spec);
      tags.push_back(spec.regime);
    }

  std::vector<DecisionCase> cases(total);
  parallel_for(total, default_workers(), [&](std::size_t i) {
    cases[i] = generate_case(specs[i], mix_seed(seed, i));
  });

  // Shuffle so regime blocks are not positionally identifiable, then name
  // cases by their final position.
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  Rng shuffle_rng(mix_seed(seed, 0x517565));
  shuffle_indices(order, shuffle_rng);

  TaggedCorpus out;
  out.cases.reserve(total);
  out.tags.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    out.cases.push_back(std::move(cases[order[i]]));
    out.tags.push_back(tags[order[i]]);
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%05zu", i);
    out.cases.back().case_id = buf;
  }
  return out;
}

std::vector<std::pair<RegimeSpec, std::size_t>> default_mixture() {
  return {
      {default_regime(Regime::EASY_MAJORITY), 150},
      {default_regime(Regime::MISLEADING), 150},
      {default_regime(Regime::CONFIDENT_MINORITY), 100},
      {default_regime(Regime::DA_ONLY), 50},
      {default_regime(Regime::NOISE), 50},
  };
}

}  // namespace quorum

#include "quorum/aggregators.hpp"

#include <algorithm>

#include "quorum/errors.hpp"

namespace quorum {
namespace {

std::size_t argmax_lowest(const std::vector<double>& score) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < score.size(); ++i)
    if (score[i] > score[best]) best = i;
  return best;
}

AggregationResult mr_from(const SupportStats& sup) {
  AggregationResult r;
  r.method = MethodId::MR;
  r.score_per_answer = sup.support;
  r.chosen = sup.a_max;
  return r;
}

AggregationResult wc_from(const SupportStats& sup, const ConfidenceStats& conf) {
  AggregationResult r;
  r.method = MethodId::WC;
  r.score_per_answer.assign(sup.support.size(), 0.0);
  for (std::size_t a = 0; a < sup.support.size(); ++a)
    if (conf.per_answer_avg[a]) r.score_per_answer[a] = sup.support[a] * *conf.per_answer_avg[a];
  r.chosen = argmax_lowest(r.score_per_answer);
  return r;
}

AggregationResult hac_from(const SupportStats& sup, const ConfidenceStats& conf) {
  AggregationResult r;
  r.method = MethodId::HAC;
  r.score_per_answer.assign(sup.support.size(), 0.0);
  bool found = false;
  std::size_t best = 0;
  for (std::size_t a = 0; a < sup.support.size(); ++a) {
    if (!conf.per_answer_avg[a]) continue;  // no supporters: not eligible
    r.score_per_answer[a] = *conf.per_answer_avg[a];
    if (!found || r.score_per_answer[a] > r.score_per_answer[best]) {
      best = a;
      found = true;
    }
  }
  r.chosen = best;
  return r;
}

AggregationResult sp_from(const SupportStats& sup, const PredictedSupportStats& ps) {
  AggregationResult r;
  r.method = MethodId::SP;
  r.score_per_answer.resize(sup.support.size());
  for (std::size_t a = 0; a < sup.support.size(); ++a)
    r.score_per_answer[a] = sup.support[a] - ps.per_answer_avg[a];
  r.chosen = argmax_lowest(r.score_per_answer);
  return r;
}

}  // namespace

const char* method_name(MethodId m) {
  switch (m) {
    case MethodId::MR: return "MR";
    case MethodId::HAC: return "HAC";
    case MethodId::WC: return "WC";
    case MethodId::SP: return "SP";
    case MethodId::DA: return "DA";
  }
  return "?";
}

std::optional<MethodId> method_from_name(const std::string& name) {
  for (MethodId m : kAllMethods)
    if (name == method_name(m)) return m;
  return std::nullopt;
}

AggregationResult aggregate_mr(const DecisionCase& c) { return mr_from(support_stats(c)); }

AggregationResult aggregate_wc(const DecisionCase& c) {
  auto sup = support_stats(c);
  return wc_from(sup, confidence_stats(c, sup));
}

AggregationResult aggregate_hac(const DecisionCase& c) {
  auto sup = support_stats(c);
  return hac_from(sup, confidence_stats(c, sup));
}

AggregationResult aggregate_sp(const DecisionCase& c) {
  return sp_from(support_stats(c), predicted_support_stats(c));
}

AggregationResult aggregate_da(std::size_t n_answers,
                               const std::vector<std::pair<MethodId, std::size_t>>& inputs,
                               std::size_t mr_choice) {
  if (inputs.empty()) fail("EmptyInputMethods", "DA needs at least one input method");
  AggregationResult r;
  r.method = MethodId::DA;
  r.score_per_answer.assign(n_answers, 0.0);
  for (const auto& [m, chosen] : inputs) r.score_per_answer[chosen] += 1.0;
  double lo = *std::min_element(r.score_per_answer.begin(), r.score_per_answer.end());
  // Minimal counter wins; among tied answers prefer one MR did not choose.
  std::size_t pick = n_answers;
  for (std::size_t a = 0; a < n_answers; ++a)
    if (r.score_per_answer[a] == lo && a != mr_choice) {
      pick = a;
      break;
    }
  r.chosen = (pick == n_answers) ? mr_choice : pick;
  return r;
}

int outcome(const AggregationResult& r, std::size_t correct) {
  return r.chosen == correct ? 1 : 0;
}

std::vector<AggregationResult> aggregate_subset(const DecisionCase& c,
                                                const std::vector<MethodId>& included) {
  auto sup = support_stats(c);
  auto conf = confidence_stats(c, sup);
  auto ps = predicted_support_stats(c);
  std::vector<AggregationResult> out;
  out.reserve(included.size());
  std::vector<std::pair<MethodId, std::size_t>> da_inputs;
  std::size_t mr_choice = sup.a_max;
  for (MethodId m : kStandardMethods) {
    if (std::find(included.begin(), included.end(), m) == included.end()) continue;
    AggregationResult r;
    switch (m) {
      case MethodId::MR: r = mr_from(sup); break;
      case MethodId::HAC: r = hac_from(sup, conf); break;
      case MethodId::WC: r = wc_from(sup, conf); break;
      case MethodId::SP: r = sp_from(sup, ps); break;
      default: break;
    }
    da_inputs.emplace_back(m, r.chosen);
    out.push_back(std::move(r));
  }
  if (std::find(included.begin(), included.end(), MethodId::DA) != included.end())
    out.push_back(aggregate_da(c.answers.size(), da_inputs, mr_choice));
  if (c.correct)
    for (auto& r : out) r.outcome = outcome(r, *c.correct);
  return out;
}

std::vector<AggregationResult> aggregate_all(const DecisionCase& c) {
  return aggregate_subset(c, {kAllMethods.begin(), kAllMethods.end()});
}

}  // namespace quorum

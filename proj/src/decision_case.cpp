#include "quorum/decision_case.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "quorum/errors.hpp"

namespace quorum {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / double(xs.size());
}

double population_variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / double(xs.size());
}

DecisionCase validate_case(DecisionCase c) {
  if (c.answers.size() < 2)
    fail("TooFewAnswers", "case '" + c.case_id + "' needs at least 2 answers");
  {
    std::unordered_set<std::string> seen;
    for (const auto& a : c.answers)
      if (!seen.insert(a).second)
        fail("DuplicateAnswers", "case '" + c.case_id + "' repeats answer '" + a + "'");
  }
  if (c.responses.empty())
    fail("EmptyResponses", "case '" + c.case_id + "' has no responses");
  if (c.correct && *c.correct >= c.answers.size())
    fail("CorrectOutsideAnswerSet", "case '" + c.case_id + "' ground truth index out of range");

  const std::size_t m = c.answers.size();
  for (auto& r : c.responses) {
    if (r.vote >= m)
      fail("VoteOutsideAnswerSet", "case '" + c.case_id + "' vote index out of range");
    if (r.confidence < 0.0 || r.confidence > 100.0)
      fail("ConfidenceOutOfRange", "case '" + c.case_id + "' confidence outside [0,100]");
    if (r.confidence > 1.0) r.confidence /= 100.0;  // percent scale
    if (r.predicted_support.size() != m)
      fail("PredictedSupportLengthMismatch",
           "case '" + c.case_id + "' prediction vector length != answer count");
    double sum = 0.0;
    for (double p : r.predicted_support) {
      if (p < 0.0)
        fail("PredictedSupportNegative", "case '" + c.case_id + "' negative predicted support");
      sum += p;
    }
    if (sum <= 0.0)
      fail("PredictedSupportAllZero", "case '" + c.case_id + "' prediction vector sums to 0");
    // Rescale to sum 1, but leave already-normalized vectors bit-identical
    // so canonicalization is idempotent and file round-trips are exact.
    if (std::abs(sum - 1.0) > 1e-9)
      for (double& p : r.predicted_support) p /= sum;
  }
  return c;
}

SupportStats support_stats(const DecisionCase& c) {
  const std::size_t m = c.answers.size();
  SupportStats s;
  s.support.assign(m, 0.0);
  s.supporters.assign(m, {});
  for (std::size_t j = 0; j < c.responses.size(); ++j)
    s.supporters[c.responses[j].vote].push_back(j);
  const double n = double(c.responses.size());
  for (std::size_t a = 0; a < m; ++a) s.support[a] = double(s.supporters[a].size()) / n;
  s.a_max = 0;
  s.a_min = 0;
  for (std::size_t a = 1; a < m; ++a) {
    if (s.support[a] > s.support[s.a_max]) s.a_max = a;
    if (s.support[a] < s.support[s.a_min]) s.a_min = a;
  }
  return s;
}

ConfidenceStats confidence_stats(const DecisionCase& c, const SupportStats& s) {
  ConfidenceStats cs;
  cs.all_conf.reserve(c.responses.size());
  for (const auto& r : c.responses) cs.all_conf.push_back(r.confidence);
  cs.min = *std::min_element(cs.all_conf.begin(), cs.all_conf.end());
  cs.max = *std::max_element(cs.all_conf.begin(), cs.all_conf.end());
  cs.mean = mean_of(cs.all_conf);
  cs.variance = population_variance(cs.all_conf);
  cs.per_answer_avg.assign(c.answers.size(), std::nullopt);
  for (std::size_t a = 0; a < c.answers.size(); ++a) {
    if (s.supporters[a].empty()) continue;
    double sum = 0.0;
    for (std::size_t j : s.supporters[a]) sum += c.responses[j].confidence;
    cs.per_answer_avg[a] = sum / double(s.supporters[a].size());
  }
  return cs;
}

PredictedSupportStats predicted_support_stats(const DecisionCase& c) {
  PredictedSupportStats ps;
  const std::size_t m = c.answers.size();
  const double n = double(c.responses.size());
  ps.per_answer_avg.assign(m, 0.0);
  for (const auto& r : c.responses)
    for (std::size_t a = 0; a < m; ++a) ps.per_answer_avg[a] += r.predicted_support[a];
  for (double& v : ps.per_answer_avg) v /= n;
  ps.own_vote_ps.reserve(c.responses.size());
  for (const auto& r : c.responses) ps.own_vote_ps.push_back(r.predicted_support[r.vote]);
  return ps;
}

}  // namespace quorum

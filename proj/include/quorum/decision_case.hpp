#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace quorum {

// One respondent's contribution: a vote (index into the case's answer list),
// a confidence in [0,1], and a predicted support share for every answer.
struct Response {
  std::size_t vote = 0;
  double confidence = 0.0;
  std::vector<double> predicted_support;
};

// A single collective decision problem: the answer set, everyone's response,
// and (when known) the index of the correct answer.
struct DecisionCase {
  std::string case_id;
  std::vector<std::string> answers;
  std::vector<Response> responses;
  std::optional<std::size_t> correct;
};

struct SupportStats {
  std::vector<double> support;                    // share of votes per answer
  std::size_t a_max = 0;                          // most popular (lowest index on ties)
  std::size_t a_min = 0;                          // least popular (lowest index on ties)
  std::vector<std::vector<std::size_t>> supporters;  // response indices per answer
};

struct ConfidenceStats {
  std::vector<double> all_conf;
  std::vector<std::optional<double>> per_answer_avg;  // absent iff no supporters
  double min = 0.0, max = 0.0, mean = 0.0, variance = 0.0;
};

struct PredictedSupportStats {
  std::vector<double> per_answer_avg;  // mean over all responses of ps[a]
  std::vector<double> own_vote_ps;     // each response's prediction for its own vote
};

// Checks well-formedness and canonicalizes scales: confidences reported in
// (1,100] are treated as percentages, and each predicted-support vector is
// rescaled to sum to 1. Throws Error with a stable code on any violation.
DecisionCase validate_case(DecisionCase c);

SupportStats support_stats(const DecisionCase& c);
ConfidenceStats confidence_stats(const DecisionCase& c, const SupportStats& s);
PredictedSupportStats predicted_support_stats(const DecisionCase& c);

double mean_of(const std::vector<double>& xs);
double population_variance(const std::vector<double>& xs);

}  // namespace quorum

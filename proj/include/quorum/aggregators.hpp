#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quorum/decision_case.hpp"

namespace quorum {

// Canonical method order. Everything that enumerates methods (labels,
// reports, tie-breaks) uses this order.
enum class MethodId { MR = 0, HAC = 1, WC = 2, SP = 3, DA = 4 };

inline constexpr std::array<MethodId, 5> kAllMethods = {
    MethodId::MR, MethodId::HAC, MethodId::WC, MethodId::SP, MethodId::DA};

inline constexpr std::array<MethodId, 4> kStandardMethods = {
    MethodId::MR, MethodId::HAC, MethodId::WC, MethodId::SP};

const char* method_name(MethodId m);
std::optional<MethodId> method_from_name(const std::string& name);

struct AggregationResult {
  MethodId method = MethodId::MR;
  std::size_t chosen = 0;
  std::vector<double> score_per_answer;  // DA: the counters
  std::optional<int> outcome;            // 1 iff chosen == correct, when known
};

AggregationResult aggregate_mr(const DecisionCase& c);
AggregationResult aggregate_wc(const DecisionCase& c);
AggregationResult aggregate_hac(const DecisionCase& c);
AggregationResult aggregate_sp(const DecisionCase& c);

// DA never looks at the responses, only at what the other methods chose.
// `inputs` holds (method, chosen answer index) pairs; the counter minimum
// wins, ties prefer answers other than MR's choice, then lowest index.
AggregationResult aggregate_da(std::size_t n_answers,
                               const std::vector<std::pair<MethodId, std::size_t>>& inputs,
                               std::size_t mr_choice);

int outcome(const AggregationResult& r, std::size_t correct);

// Runs the included methods, sharing one stats computation. DA, when
// included, takes the included standard methods' choices as its inputs.
// Results come back in canonical order with outcomes filled in when the case
// carries ground truth.
std::vector<AggregationResult> aggregate_subset(const DecisionCase& c,
                                                const std::vector<MethodId>& included);

// All five methods in canonical order (MR, HAC, WC, SP, DA).
std::vector<AggregationResult> aggregate_all(const DecisionCase& c);

}  // namespace quorum

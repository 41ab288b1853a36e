#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "quorum/decision_case.hpp"

namespace quorum {

// How sub-groups of responses are resampled for features 18-27.
struct SubgroupPlan {
  std::size_t num_subgroups = 10;
  double fraction = 0.5;
  std::size_t min_size = 3;
  std::uint64_t seed = 0;
};

// Which feature groups a downstream model may see. Rows 16-17 carry both a
// confidence and a predicted-support signal, so they survive only when both
// groups are present.
struct FeatureMask {
  bool voting = true;
  bool confidence = true;
  bool predicted_support = true;

  bool operator==(const FeatureMask&) const = default;
};

inline constexpr std::size_t kNumFeatures = 27;

// Row names, in table order (index i = row i+1).
extern const std::array<const char*, kNumFeatures> kFeatureNames;

struct CaseInstance {
  std::string case_id;
  std::array<double, kNumFeatures> features{};
};

// 0-based indices of the rows a mask keeps, ascending.
std::vector<std::size_t> active_feature_rows(const FeatureMask& mask);

// Sub-set size rule: max(min_size, round(fraction*N)), capped at N-1.
std::size_t subgroup_size(std::size_t n, const SubgroupPlan& plan);

// Draws plan.num_subgroups index sub-sets (into c.responses), each without
// replacement, reproducibly from (plan.seed, case_id) and independent of the
// responses' input order.
std::vector<std::vector<std::size_t>> sample_subgroups(const DecisionCase& c,
                                                       const SubgroupPlan& plan);

// Rows 1-17, computed from the full response set.
std::array<double, 17> compute_global_features(const DecisionCase& c);

// Rows 18-27, computed from the given response sub-sets.
std::array<double, 10> compute_subgroup_features(const DecisionCase& c,
                                                 const std::vector<std::vector<std::size_t>>& subgroups);

CaseInstance featurize_case(const DecisionCase& c, const SubgroupPlan& plan);

}  // namespace quorum

#pragma once

// Dataset file format: line-delimited JSON. The first line is a header
// declaring the schema version; every following line is one decision case
// with votes and the correct answer written as answer strings.

#include <string>
#include <vector>

#include "quorum/decision_case.hpp"
#include "quorum/run_config.hpp"

namespace quorum {

inline constexpr int kDatasetSchemaVersion = 1;

struct ExclusionRecord {
  std::string case_id;
  double share = 0.0;  // the correct answer's vote share that triggered exclusion
};

struct LoadResult {
  std::vector<DecisionCase> corpus;
  std::vector<ExclusionRecord> excluded;
};

// Parse and validate a dataset. With the filter on (the default), labeled
// cases whose correct-vote share is exactly 0 or exactly 1 are dropped and
// logged; unlabeled cases are always kept.
LoadResult load_and_filter(const std::string& path, bool exclude_degenerate = true);

// Inverse of load: header line plus one record per case. Loading the result
// reproduces the cases exactly.
void save_dataset(const std::vector<DecisionCase>& corpus, const std::string& path);

// CSV export of the instance matrix the configured approach trains on:
// active feature columns (Table order) followed by the outcome-label columns
// (AMP) or the per-method choice one-hots plus the target column (DAP).
// Requires ground truth. Full-precision values.
void export_feature_matrix(const std::vector<DecisionCase>& corpus, Approach approach,
                           const RunConfig& config, const std::string& path);

}  // namespace quorum

#pragma once

#include <cstdint>
#include <vector>

#include "quorum/classifiers.hpp"

namespace quorum {

enum class WrapScheme { BR, CC, LP };

const char* scheme_name(WrapScheme s);

// A multi-label model built from single-label classifiers by one of the
// standard problem transformations:
//   BR - one independent binary model per label;
//   CC - a chain in label order, each model also seeing the preceding labels
//        (true bits at training, hard 0.5-thresholded bits at prediction);
//   LP - one multi-class model over the observed label combinations, with
//        per-label probabilities recovered by marginalization.
// The label count is fixed at fit time (the full five method-outcome bits,
// or fewer under ablation) and label order is the canonical method order.
class MultiLabelModel {
 public:
  static MultiLabelModel fit(WrapScheme scheme, LearnerKind base, const LearnerParams& params,
                             const Eigen::MatrixXd& X, const std::vector<std::vector<int>>& Y,
                             std::uint64_t seed);

  // P(label_i = 1) for each label, in fit-time label order.
  std::vector<double> predict_label_proba(const Eigen::RowVectorXd& x) const;

  WrapScheme scheme() const { return scheme_; }
  LearnerKind base() const { return base_; }
  std::size_t label_count() const { return label_count_; }

  nlohmann::json to_json() const;
  static MultiLabelModel from_json(const nlohmann::json& j);

 private:
  WrapScheme scheme_ = WrapScheme::BR;
  LearnerKind base_ = LearnerKind::RF;
  std::size_t label_count_ = 0;
  std::vector<Classifier> models_;  // BR/CC: one per label; LP: exactly one
};

}  // namespace quorum

#include "quorum/multilabel.hpp"

#include "quorum/errors.hpp"
#include "quorum/rng.hpp"

namespace quorum {
namespace {

// Probability that a fitted binary model assigns to class 1.
double prob_of_one(const Classifier& c, const Eigen::RowVectorXd& x) {
  const auto p = c.predict_proba(x);
  for (std::size_t k = 0; k < c.classes().size(); ++k)
    if (c.classes()[k] == 1) return p[k];
  return 0.0;  // class 1 never seen in training
}

int bitmask_of(const std::vector<int>& row) {
  int mask = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i]) mask |= 1 << i;
  return mask;
}

}  // namespace

const char* scheme_name(WrapScheme s) {
  switch (s) {
    case WrapScheme::BR: return "BR";
    case WrapScheme::CC: return "CC";
    case WrapScheme::LP: return "LP";
  }
  return "?";
}

MultiLabelModel MultiLabelModel::fit(WrapScheme scheme, LearnerKind base,
                                     const LearnerParams& params, const Eigen::MatrixXd& X,
                                     const std::vector<std::vector<int>>& Y, std::uint64_t seed) {
  if (std::size_t(X.rows()) != Y.size()) fail("LengthMismatch", "labels do not match instances");
  if (Y.empty()) fail("EmptyTrainingSet", "no training instances");
  MultiLabelModel m;
  m.scheme_ = scheme;
  m.base_ = base;
  m.label_count_ = Y.front().size();
  const std::size_t L = m.label_count_;
  for (const auto& row : Y)
    if (row.size() != L) fail("LengthMismatch", "ragged label rows");

  switch (scheme) {
    case WrapScheme::BR: {
      for (std::size_t i = 0; i < L; ++i) {
        std::vector<int> yi(Y.size());
        for (std::size_t r = 0; r < Y.size(); ++r) yi[r] = Y[r][i];
        m.models_.push_back(Classifier::fit(base, params, X, yi, mix_seed(seed, i)));
      }
      break;
    }
    case WrapScheme::CC: {
      Eigen::MatrixXd Xa = X;
      for (std::size_t i = 0; i < L; ++i) {
        std::vector<int> yi(Y.size());
        for (std::size_t r = 0; r < Y.size(); ++r) yi[r] = Y[r][i];
        m.models_.push_back(Classifier::fit(base, params, Xa, yi, mix_seed(seed, i)));
        if (i + 1 == L) break;
        Xa.conservativeResize(Eigen::NoChange, Xa.cols() + 1);
        for (Eigen::Index r = 0; r < Xa.rows(); ++r)
          Xa(r, Xa.cols() - 1) = double(Y[std::size_t(r)][i]);
      }
      break;
    }
    case WrapScheme::LP: {
      std::vector<int> yc(Y.size());
      for (std::size_t r = 0; r < Y.size(); ++r) yc[r] = bitmask_of(Y[r]);
      m.models_.push_back(Classifier::fit(base, params, X, yc, seed));
      break;
    }
  }
  return m;
}

std::vector<double> MultiLabelModel::predict_label_proba(const Eigen::RowVectorXd& x) const {
  std::vector<double> out(label_count_, 0.0);
  switch (scheme_) {
    case WrapScheme::BR: {
      for (std::size_t i = 0; i < label_count_; ++i) out[i] = prob_of_one(models_[i], x);
      break;
    }
    case WrapScheme::CC: {
      Eigen::RowVectorXd xa = x;
      for (std::size_t i = 0; i < label_count_; ++i) {
        out[i] = prob_of_one(models_[i], xa);
        if (i + 1 == label_count_) break;
        xa.conservativeResize(xa.size() + 1);
        xa[xa.size() - 1] = out[i] > 0.5 ? 1.0 : 0.0;
      }
      break;
    }
    case WrapScheme::LP: {
      const auto& model = models_[0];
      const auto p = model.predict_proba(x);
      for (std::size_t k = 0; k < model.classes().size(); ++k) {
        const int mask = model.classes()[k];
        for (std::size_t i = 0; i < label_count_; ++i)
          if (mask & (1 << i)) out[i] += p[k];
      }
      break;
    }
  }
  return out;
}

nlohmann::json MultiLabelModel::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["scheme"] = scheme_name(scheme_);
  j["base"] = learner_name(base_);
  j["label_count"] = label_count_;
  nlohmann::json models = nlohmann::json::array();
  for (const auto& m : models_) models.push_back(m.to_json());
  j["models"] = std::move(models);
  return j;
}

MultiLabelModel MultiLabelModel::from_json(const nlohmann::json& j) {
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    fail("SchemaVersionUnsupported", "unknown model format version");
  MultiLabelModel m;
  const std::string scheme = j["scheme"].get<std::string>();
  for (WrapScheme s : {WrapScheme::BR, WrapScheme::CC, WrapScheme::LP})
    if (scheme == scheme_name(s)) m.scheme_ = s;
  const std::string base = j["base"].get<std::string>();
  for (LearnerKind k : {LearnerKind::BNB, LearnerKind::KNN, LearnerKind::LR, LearnerKind::RF})
    if (base == learner_name(k)) m.base_ = k;
  m.label_count_ = j["label_count"].get<std::size_t>();
  for (const auto& mj : j["models"]) m.models_.push_back(Classifier::from_json(mj));
  return m;
}

}  // namespace quorum

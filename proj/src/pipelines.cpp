#include "quorum/pipelines.hpp"

#include <algorithm>

#include "quorum/errors.hpp"
#include "quorum/parallel.hpp"

namespace quorum {
namespace {

std::vector<double> masked_features(const CaseInstance& inst, const FeatureMask& mask) {
  std::vector<double> out;
  for (std::size_t row : active_feature_rows(mask)) out.push_back(inst.features[row]);
  return out;
}

// Direct-answer feature vector (masked rows + one-hot method choices);
// usable at prediction time, where ground truth may be absent.
std::vector<double> dap_features(const DecisionCase& c, const SubgroupPlan& plan,
                                 const std::vector<MethodId>& included, const FeatureMask& mask) {
  std::vector<double> feats = masked_features(featurize_case(c, plan), mask);
  for (const auto& r : aggregate_subset(c, included))
    for (std::size_t a = 0; a < c.answers.size(); ++a)
      feats.push_back(a == r.chosen ? 1.0 : 0.0);
  return feats;
}

}  // namespace

std::vector<MethodId> all_methods() { return {kAllMethods.begin(), kAllMethods.end()}; }

MethodOutcomes method_outcomes(const DecisionCase& c, const std::vector<MethodId>& included) {
  MethodOutcomes mo;
  for (const auto& r : aggregate_subset(c, included)) {
    mo.methods.push_back(r.method);
    mo.choices.push_back(r.chosen);
    if (r.outcome) mo.outcomes.push_back(*r.outcome);
  }
  return mo;
}

AmpInstance build_amp_instance(const DecisionCase& c, const SubgroupPlan& plan,
                               const std::vector<MethodId>& included, const FeatureMask& mask) {
  if (!c.correct) fail("MissingGroundTruth", "case '" + c.case_id + "' lacks a correct answer");
  AmpInstance inst;
  inst.features = masked_features(featurize_case(c, plan), mask);
  inst.labels = method_outcomes(c, included).outcomes;
  return inst;
}

DapInstance build_dap_instance(const DecisionCase& c, const SubgroupPlan& plan,
                               const std::vector<MethodId>& included, const FeatureMask& mask) {
  if (!c.correct) fail("MissingGroundTruth", "case '" + c.case_id + "' lacks a correct answer");
  DapInstance inst;
  inst.features = dap_features(c, plan, included, mask);
  inst.label = int(*c.correct);
  return inst;
}

AmpDecision amp_select_and_aggregate(const MultiLabelModel& model, const DecisionCase& c,
                                     const SubgroupPlan& plan,
                                     const std::vector<MethodId>& included,
                                     const FeatureMask& mask) {
  const auto feats = masked_features(featurize_case(c, plan), mask);
  Eigen::RowVectorXd x = Eigen::Map<const Eigen::RowVectorXd>(feats.data(), Eigen::Index(feats.size()));

  AmpDecision d;
  d.label_proba = model.predict_label_proba(x);
  // Results (and hence training labels) are in canonical method order, which
  // may differ from the order methods were requested in; index into results.
  auto results = aggregate_subset(c, included);
  if (d.label_proba.size() != results.size())
    fail("WidthMismatch", "model label count does not match included methods");
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.label_proba.size(); ++i)
    if (d.label_proba[i] > d.label_proba[best]) best = i;  // ties: canonical order
  d.selected = results[best].method;
  d.result = std::move(results[best]);
  return d;
}

DapDecision dap_predict_answer(const Classifier& model, const DecisionCase& c,
                               const SubgroupPlan& plan, const std::vector<MethodId>& included,
                               const FeatureMask& mask) {
  const auto inst = dap_features(c, plan, included, mask);
  Eigen::RowVectorXd x =
      Eigen::Map<const Eigen::RowVectorXd>(inst.data(), Eigen::Index(inst.size()));

  DapDecision d;
  d.answer_proba.assign(c.answers.size(), 0.0);
  const auto p = model.predict_proba(x);
  for (std::size_t k = 0; k < model.classes().size(); ++k) {
    const int cls = model.classes()[k];
    if (cls >= 0 && std::size_t(cls) < d.answer_proba.size()) d.answer_proba[std::size_t(cls)] = p[k];
  }
  d.chosen = 0;
  for (std::size_t a = 1; a < d.answer_proba.size(); ++a)
    if (d.answer_proba[a] > d.answer_proba[d.chosen]) d.chosen = a;  // ties: lowest index
  if (c.correct) d.outcome = d.chosen == *c.correct ? 1 : 0;
  return d;
}

AmpDataset build_amp_dataset(const std::vector<DecisionCase>& corpus, const SubgroupPlan& plan,
                             const std::vector<MethodId>& included, const FeatureMask& mask,
                             std::size_t workers) {
  AmpDataset ds;
  ds.methods = included;
  std::vector<AmpInstance> rows(corpus.size());
  parallel_for(corpus.size(), workers,
               [&](std::size_t i) { rows[i] = build_amp_instance(corpus[i], plan, included, mask); });
  if (rows.empty()) fail("EmptyTrainingSet", "empty corpus");
  ds.X.resize(Eigen::Index(rows.size()), Eigen::Index(rows.front().features.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].features.size(); ++j)
      ds.X(Eigen::Index(i), Eigen::Index(j)) = rows[i].features[j];
    ds.Y.push_back(rows[i].labels);
  }
  return ds;
}

DapDataset build_dap_dataset(const std::vector<DecisionCase>& corpus, const SubgroupPlan& plan,
                             const std::vector<MethodId>& included, const FeatureMask& mask,
                             std::size_t workers) {
  DapDataset ds;
  ds.methods = included;
  if (corpus.empty()) fail("EmptyTrainingSet", "empty corpus");
  ds.n_answers = corpus.front().answers.size();
  for (const auto& c : corpus)
    if (c.answers.size() != ds.n_answers)
      fail("WidthMismatch", "direct-answer datasets need a uniform answer count");
  std::vector<DapInstance> rows(corpus.size());
  parallel_for(corpus.size(), workers,
               [&](std::size_t i) { rows[i] = build_dap_instance(corpus[i], plan, included, mask); });
  ds.X.resize(Eigen::Index(rows.size()), Eigen::Index(rows.front().features.size()));
  ds.y.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].features.size(); ++j)
      ds.X(Eigen::Index(i), Eigen::Index(j)) = rows[i].features[j];
    ds.y[i] = rows[i].label;
  }
  return ds;
}

}  // namespace quorum

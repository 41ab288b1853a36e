#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "quorum/errors.hpp"
#include "quorum/pipelines.hpp"
#include "quorum/rng.hpp"
#include "quorum/synth.hpp"

using namespace quorum;
using Eigen::MatrixXd;

namespace {

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code;
  }
  return "none";
}

// A constant-label selection model: every training row carries `labels`.
MultiLabelModel constant_model(const std::vector<int>& labels, Eigen::Index width) {
  MatrixXd X = MatrixXd::Zero(4, width);
  std::vector<std::vector<int>> Y(4, labels);
  return MultiLabelModel::fit(WrapScheme::BR, LearnerKind::BNB, {}, X, Y, 1);
}

}  // namespace

TEST_CASE("the full method set is the canonical order") {
  auto ms = all_methods();
  REQUIRE(ms.size() == 5);
  CHECK(ms[0] == MethodId::MR);
  CHECK(ms[1] == MethodId::HAC);
  CHECK(ms[2] == MethodId::WC);
  CHECK(ms[3] == MethodId::SP);
  CHECK(ms[4] == MethodId::DA);
}

TEST_CASE("worked example: selection-approach instance") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  auto inst = build_amp_instance(c, plan, all_methods());
  CHECK(inst.features.size() == kNumFeatures);
  CHECK(inst.labels == std::vector<int>{0, 1, 0, 0, 1});
  // The feature block is exactly the unmasked feature row.
  auto full = featurize_case(c, plan);
  for (std::size_t i = 0; i < kNumFeatures; ++i) CHECK(inst.features[i] == full.features[i]);
}

TEST_CASE("worked example: removing one method rewires the labels") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  std::vector<MethodId> included = {MethodId::MR, MethodId::HAC, MethodId::WC, MethodId::DA};
  auto inst = build_amp_instance(c, plan, included);
  // Opposition inputs shrink to (MR=A, HAC=B, WC=A): it still picks B.
  CHECK(inst.labels == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("worked example: direct-answer instance") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  auto inst = build_dap_instance(c, plan, all_methods());
  REQUIRE(inst.features.size() == kNumFeatures + 5 * 2);
  // One-hot blocks for the choices (A, B, A, A, B) in canonical order.
  std::vector<double> expected = {1, 0, 0, 1, 1, 0, 1, 0, 0, 1};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(inst.features[kNumFeatures + i] == expected[i]);
  CHECK(inst.label == 1);
}

TEST_CASE("instances demand ground truth") {
  auto c = oracle::case_x();
  c.correct.reset();
  SubgroupPlan plan;
  CHECK(code_of([&] { build_amp_instance(c, plan, all_methods()); }) == "MissingGroundTruth");
  CHECK(code_of([&] { build_dap_instance(c, plan, all_methods()); }) == "MissingGroundTruth");
}

TEST_CASE("selection ties fall back to the earliest included method") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  // Every label constant 1: all probabilities tie at 1, so MR wins.
  auto tie = constant_model(std::vector<int>(5, 1), Eigen::Index(kNumFeatures));
  auto d = amp_select_and_aggregate(tie, c, plan, all_methods());
  CHECK(d.selected == MethodId::MR);
  CHECK(d.result.method == MethodId::MR);
  CHECK(d.result.chosen == 0);
  CHECK(d.result.outcome == 0);
}

TEST_CASE("selection follows the probability ranking") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  // Only the opposition label is ever 1: it must be selected and applied.
  auto da_only = constant_model({0, 0, 0, 0, 1}, Eigen::Index(kNumFeatures));
  auto d = amp_select_and_aggregate(da_only, c, plan, all_methods());
  CHECK(d.selected == MethodId::DA);
  CHECK(d.label_proba == std::vector<double>{0, 0, 0, 0, 1});
  CHECK(d.result.chosen == 1);
  CHECK(d.result.outcome == 1);
}

TEST_CASE("selection restricted to majority rule is majority rule") {
  Rng rng(701);
  SubgroupPlan plan;
  std::vector<MethodId> only_mr = {MethodId::MR};
  auto model = constant_model({1}, Eigen::Index(kNumFeatures));
  for (int t = 0; t < 20; ++t) {
    auto c = oracle::random_case(rng, 3, 12, 2, 3);
    auto d = amp_select_and_aggregate(model, c, plan, only_mr);
    CHECK(d.selected == MethodId::MR);
    CHECK(d.result.chosen == aggregate_mr(c).chosen);
  }
}

TEST_CASE("a label-count mismatch is rejected") {
  auto c = oracle::case_x();
  SubgroupPlan plan;
  auto four = constant_model({1, 0, 0, 1}, Eigen::Index(kNumFeatures));
  CHECK(code_of([&] { amp_select_and_aggregate(four, c, plan, all_methods()); }) ==
        "WidthMismatch");
}

TEST_CASE("direct-answer prediction: probabilities, ties, and outcomes") {
  SubgroupPlan plan;
  // Two cases with opposite truths; nearest-neighbour with k=2 sees one
  // training label of each class, so every probability ties at one half and
  // the lowest answer index wins.
  auto c1 = oracle::case_x();
  auto c2 = oracle::case_x();
  c2.case_id = "case-y";
  c2.correct = 0;
  std::vector<DecisionCase> corpus = {c1, c2};
  auto ds = build_dap_dataset(corpus, plan, all_methods(), {}, 1);
  LearnerParams params;
  params.knn.k = 2;
  auto model = Classifier::fit(LearnerKind::KNN, params, ds.X, ds.y, 1);
  auto d = dap_predict_answer(model, c1, plan, all_methods());
  CHECK(d.answer_proba[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.answer_proba[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.chosen == 0);
  CHECK(d.outcome == 0);  // truth is B

  // A single observed class leaves unseen answers at probability zero.
  std::vector<DecisionCase> all_b = {c1, c1, c1};
  auto ds_b = build_dap_dataset(all_b, plan, all_methods(), {}, 1);
  auto single = Classifier::fit(LearnerKind::KNN, params, ds_b.X, ds_b.y, 1);
  auto db = dap_predict_answer(single, c1, plan, all_methods());
  CHECK(db.answer_proba[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(db.answer_proba[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(db.chosen == 1);
  CHECK(db.outcome == 1);

  // Unlabeled cases still get a decision, with no outcome.
  auto blind = c1;
  blind.correct.reset();
  auto dq = dap_predict_answer(single, blind, plan, all_methods());
  CHECK_FALSE(dq.outcome.has_value());
}

TEST_CASE("dataset assembly: shapes, masking, and worker invariance") {
  TaggedCorpus tc = generate_corpus({{default_regime(Regime::NOISE), 12}}, 44);
  SubgroupPlan plan;
  plan.seed = 3;

  auto amp = build_amp_dataset(tc.cases, plan, all_methods(), {}, 1);
  CHECK(amp.X.rows() == 12);
  CHECK(amp.X.cols() == Eigen::Index(kNumFeatures));
  CHECK(amp.Y.size() == 12);
  for (const auto& row : amp.Y) CHECK(row.size() == 5);

  FeatureMask no_ps;
  no_ps.predicted_support = false;
  auto masked = build_amp_dataset(tc.cases, plan, all_methods(), no_ps, 1);
  CHECK(masked.X.cols() == 22);

  auto par = build_amp_dataset(tc.cases, plan, all_methods(), {}, 3);
  CHECK(par.X.cwiseEqual(amp.X).all());
  CHECK(par.Y == amp.Y);

  auto dap = build_dap_dataset(tc.cases, plan, all_methods(), {}, 2);
  CHECK(dap.n_answers == 2);
  CHECK(dap.X.cols() == Eigen::Index(kNumFeatures) + 5 * 2);
  for (std::size_t i = 0; i < tc.cases.size(); ++i)
    CHECK(dap.y[i] == int(*tc.cases[i].correct));

  // Mixed answer counts cannot be one-hot encoded into a fixed width.
  auto odd = tc.cases;
  odd.push_back(oracle::make_case("three", {"A", "B", "C"},
                                  {oracle::resp(0, 0.5, {0.4, 0.3, 0.3}),
                                   oracle::resp(1, 0.6, {0.2, 0.5, 0.3}),
                                   oracle::resp(2, 0.7, {0.1, 0.2, 0.7})},
                                  0));
  CHECK(code_of([&] { build_dap_dataset(odd, plan, all_methods(), {}, 1); }) == "WidthMismatch");
}

TEST_CASE("instance labels always match a fresh aggregation") {
  Rng rng(702);
  SubgroupPlan plan;
  for (int t = 0; t < 40; ++t) {
    auto c = oracle::random_case(rng, 2, 15, 2, 4);
    auto inst = build_amp_instance(c, plan, all_methods());
    auto results = aggregate_subset(c, all_methods());
    REQUIRE(inst.labels.size() == results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      REQUIRE(results[i].outcome.has_value());
      CHECK(inst.labels[i] == *results[i].outcome);
    }
  }
}

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "quorum/errors.hpp"
#include "quorum/multilabel.hpp"
#include "quorum/rng.hpp"

using namespace quorum;
using Eigen::MatrixXd;
using Eigen::RowVectorXd;

namespace {

MatrixXd random_X(std::size_t n, std::size_t d, Rng& rng) {
  MatrixXd X{Eigen::Index(n), Eigen::Index(d)};
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = rng.next_normal();
  return X;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(std::string(scheme_name(WrapScheme::BR)) == "BR");
  CHECK(std::string(scheme_name(WrapScheme::CC)) == "CC");
  CHECK(std::string(scheme_name(WrapScheme::LP)) == "LP");
}

TEST_CASE("independent wrapper: a constant label stays constant") {
  Rng rng(31);
  auto X = random_X(30, 3, rng);
  std::vector<std::vector<int>> Y(30, std::vector<int>{0, 0});
  for (std::size_t i = 0; i < 30; ++i) Y[i][1] = int(rng.next_below(2));
  auto m = MultiLabelModel::fit(WrapScheme::BR, LearnerKind::KNN, {}, X, Y, 1);
  CHECK(m.label_count() == 2);
  for (int t = 0; t < 10; ++t) {
    auto p = m.predict_label_proba(random_X(1, 3, rng).row(0));
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[1] >= 0.0);
    CHECK(p[1] <= 1.0);
  }
}

TEST_CASE("chain with one label equals the independent wrapper") {
  Rng rng(32);
  auto X = random_X(40, 3, rng);
  std::vector<std::vector<int>> Y(40, std::vector<int>(1));
  for (std::size_t i = 0; i < 40; ++i) Y[i][0] = X(Eigen::Index(i), 0) > 0 ? 1 : 0;
  auto br = MultiLabelModel::fit(WrapScheme::BR, LearnerKind::RF, {}, X, Y, 7);
  auto cc = MultiLabelModel::fit(WrapScheme::CC, LearnerKind::RF, {}, X, Y, 7);
  for (int t = 0; t < 10; ++t) {
    auto q = random_X(1, 3, rng).row(0);
    CHECK(br.predict_label_proba(q) == cc.predict_label_proba(q));
  }
}

TEST_CASE("chain: a duplicated label rides on the first model's hard bit") {
  Rng rng(33);
  auto X = random_X(60, 2, rng);
  std::vector<std::vector<int>> Y(60, std::vector<int>(2));
  for (std::size_t i = 0; i < 60; ++i) {
    int bit = X(Eigen::Index(i), 0) > 0 ? 1 : 0;
    Y[i] = {bit, bit};
  }
  auto m = MultiLabelModel::fit(WrapScheme::CC, LearnerKind::RF, {}, X, Y, 3);
  for (int t = 0; t < 20; ++t) {
    RowVectorXd q = random_X(1, 2, rng).row(0);
    q(0) += q(0) >= 0 ? 0.5 : -0.5;  // keep clear of the decision boundary
    auto p = m.predict_label_proba(q);
    // The second model sees the thresholded first bit, which separates its
    // training data perfectly, so it echoes that bit with near certainty.
    if (p[0] > 0.5)
      CHECK(p[1] > 0.9);
    else
      CHECK(p[1] < 0.1);
  }
}

TEST_CASE("power-set wrapper marginalizes over observed combinations") {
  // Two combinations ever occur; per-label probabilities must be sums of
  // combination probabilities, so complementary labels mirror each other.
  Rng rng(34);
  const std::size_t n = 40;
  MatrixXd X(n, 1);
  std::vector<std::vector<int>> Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool first = i % 2 == 0;
    X(Eigen::Index(i), 0) = first ? -2.0 + 0.1 * rng.next_normal() : 2.0 + 0.1 * rng.next_normal();
    Y[i] = first ? std::vector<int>{1, 0, 0, 0, 1} : std::vector<int>{0, 1, 1, 1, 0};
  }
  auto m = MultiLabelModel::fit(WrapScheme::LP, LearnerKind::KNN, {}, X, Y, 5);
  CHECK(m.label_count() == 5);
  for (double q : {-2.0, -0.5, 0.5, 2.0}) {
    RowVectorXd x(1);
    x << q;
    auto p = m.predict_label_proba(x);
    REQUIRE(p.size() == 5);
    CHECK(p[0] == doctest::Approx(p[4]).epsilon(1e-12));          // same combination
    CHECK(p[1] == doctest::Approx(p[2]).epsilon(1e-12));
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));    // the two combos partition
  }
  RowVectorXd far_left(1);
  far_left << -2.0;
  CHECK(m.predict_label_proba(far_left)[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent wrapper stays calibrated on complementary labels") {
  // Second label is the exact complement of the first; with a neighbour-count
  // base the two probabilities sum to 1 exactly.
  Rng rng(35);
  auto X = random_X(50, 2, rng);
  std::vector<std::vector<int>> Y(50, std::vector<int>(2));
  for (std::size_t i = 0; i < 50; ++i) {
    int bit = int(rng.next_below(2));
    Y[i] = {bit, 1 - bit};
  }
  auto m = MultiLabelModel::fit(WrapScheme::BR, LearnerKind::KNN, {}, X, Y, 9);
  for (int t = 0; t < 20; ++t) {
    auto p = m.predict_label_proba(random_X(1, 2, rng).row(0));
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("label counts other than five work end to end") {
  Rng rng(36);
  auto X = random_X(30, 2, rng);
  std::vector<std::vector<int>> Y(30, std::vector<int>(3));
  for (auto& row : Y)
    for (auto& bit : row) bit = int(rng.next_below(2));
  for (WrapScheme s : {WrapScheme::BR, WrapScheme::CC, WrapScheme::LP}) {
    auto m = MultiLabelModel::fit(s, LearnerKind::BNB, {}, X, Y, 2);
    CHECK(m.label_count() == 3);
    auto p = m.predict_label_proba(random_X(1, 2, rng).row(0));
    REQUIRE(p.size() == 3);
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("ragged label rows are rejected") {
  Rng rng(37);
  auto X = random_X(4, 2, rng);
  std::vector<std::vector<int>> Y = {{1, 0}, {0, 1}, {1}, {0, 0}};
  try {
    MultiLabelModel::fit(WrapScheme::BR, LearnerKind::KNN, {}, X, Y, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == "LengthMismatch");
  }
}

TEST_CASE("serialized wrappers predict identically after reload") {
  Rng rng(38);
  auto X = random_X(30, 3, rng);
  std::vector<std::vector<int>> Y(30, std::vector<int>(2));
  for (auto& row : Y)
    for (auto& bit : row) bit = int(rng.next_below(2));
  for (WrapScheme s : {WrapScheme::BR, WrapScheme::CC, WrapScheme::LP}) {
    auto m = MultiLabelModel::fit(s, LearnerKind::RF, {}, X, Y, 4);
    auto copy = MultiLabelModel::from_json(m.to_json());
    CHECK(copy.scheme() == m.scheme());
    CHECK(copy.label_count() == m.label_count());
    for (int t = 0; t < 10; ++t) {
      auto q = random_X(1, 3, rng).row(0);
      CHECK(m.predict_label_proba(q) == copy.predict_label_proba(q));
    }
  }
}

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "json.hpp"

namespace quorum {

enum class LearnerKind { BNB, KNN, LR, RF };

const char* learner_name(LearnerKind k);

struct RfParams {
  std::size_t num_trees = 100;
  std::size_t min_leaf = 1;
  std::size_t max_depth = 0;  // 0 = unlimited
  bool bootstrap = true;
};

struct KnnParams {
  std::size_t k = 5;
};

struct LrParams {
  double l2 = 1.0;
  std::size_t max_iters = 500;
  double tol = 1e-6;
};

struct BnbParams {
  double alpha = 1.0;
};

// One bundle carrying every kind's settings; fit() reads only its own.
// `workers` caps fit-internal parallelism (0 = environment default); callers
// that already parallelize across fits set it to 1.
struct LearnerParams {
  RfParams rf;
  KnnParams knn;
  LrParams lr;
  BnbParams bnb;
  std::size_t workers = 0;
};

// Column-wise z-scoring learned on training data. Constant columns map to 0.
struct Standardizer {
  Eigen::VectorXd mean, std;

  void fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
  Eigen::RowVectorXd transform_row(const Eigen::RowVectorXd& x) const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  int leaf_class = -1;
};

// Multinomial logistic loss + L2 penalty and its gradient at an arbitrary
// parameter vector theta = [W row-major (K x d), b (K)]. Exposed so the
// optimizer's gradient can be validated against finite differences.
double lr_loss(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
               const Eigen::VectorXd& theta, double lambda);
Eigen::VectorXd lr_grad(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
                        const Eigen::VectorXd& theta, double lambda);

// A fitted classifier of any supported kind. All kinds share the same
// contract: predict_proba returns a distribution over classes() (ascending
// label order), deterministic given (data, params, seed). Training sets with
// a single distinct label short-circuit to a constant predictor.
class Classifier {
 public:
  static Classifier fit(LearnerKind kind, const LearnerParams& params, const Eigen::MatrixXd& X,
                        const std::vector<int>& y, std::uint64_t seed);

  std::vector<double> predict_proba(const Eigen::RowVectorXd& x) const;
  int predict(const Eigen::RowVectorXd& x) const;  // argmax, ties to lower class

  LearnerKind kind() const { return kind_; }
  const std::vector<int>& classes() const { return classes_; }
  const std::vector<double>& lr_loss_history() const;

  nlohmann::json to_json() const;
  static Classifier from_json(const nlohmann::json& j);

 private:
  struct SingleClassState {};
  struct RfState {
    std::vector<std::vector<TreeNode>> trees;
  };
  struct KnnState {
    Standardizer stz;
    Eigen::MatrixXd Xz;
    std::vector<int> y;
    std::size_t k = 5;
  };
  struct LrState {
    Standardizer stz;
    Eigen::MatrixXd W;  // K x d
    Eigen::VectorXd b;  // K
    std::vector<double> loss_history;
  };
  struct BnbState {
    Eigen::VectorXd median;
    std::vector<double> log_prior;                // per class
    std::vector<Eigen::VectorXd> log_on, log_off;  // per class, per feature
  };

  LearnerKind kind_ = LearnerKind::RF;
  std::vector<int> classes_;
  Eigen::Index width_ = 0;
  std::variant<SingleClassState, RfState, KnnState, LrState, BnbState> state_;
};

}  // namespace quorum

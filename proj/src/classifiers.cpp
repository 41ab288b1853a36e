#include "quorum/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quorum/errors.hpp"
#include "quorum/parallel.hpp"
#include "quorum/rng.hpp"

namespace quorum {

const char* learner_name(LearnerKind k) {
  switch (k) {
    case LearnerKind::BNB: return "BNB";
    case LearnerKind::KNN: return "KNN";
    case LearnerKind::LR: return "LR";
    case LearnerKind::RF: return "RF";
  }
  return "?";
}

void Standardizer::fit(const Eigen::MatrixXd& X) {
  const double n = double(X.rows());
  mean = X.colwise().sum() / n;
  Eigen::MatrixXd centered = X.rowwise() - mean.transpose();
  std = (centered.array().square().colwise().sum() / n).sqrt();
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd Z = X.rowwise() - mean.transpose();
  for (Eigen::Index c = 0; c < Z.cols(); ++c) {
    if (std[c] > 0.0)
      Z.col(c) /= std[c];
    else
      Z.col(c).setZero();
  }
  return Z;
}

Eigen::RowVectorXd Standardizer::transform_row(const Eigen::RowVectorXd& x) const {
  Eigen::RowVectorXd z = x - mean.transpose();
  for (Eigen::Index c = 0; c < z.size(); ++c) z[c] = std[c] > 0.0 ? z[c] / std[c] : 0.0;
  return z;
}

namespace {

std::vector<int> distinct_sorted(const std::vector<int>& y) {
  std::vector<int> cls(y);
  std::sort(cls.begin(), cls.end());
  cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  return cls;
}

std::vector<int> remap(const std::vector<int>& y, const std::vector<int>& classes) {
  std::vector<int> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = int(std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Decision tree (CART, Gini). Performance matters here: leave-one-out over a
// forest grid rebuilds hundreds of thousands of trees, so the builder works
// on flat index buffers and per-node sorted scratch arrays.
// ---------------------------------------------------------------------------

struct TreeBuilder {
  const Eigen::MatrixXd& X;
  const std::vector<int>& y;  // compact class ids
  int num_classes;
  const RfParams& params;
  Rng rng;

  std::vector<TreeNode> nodes;
  std::vector<int> rows;                       // the tree's sample, partitioned in place
  std::vector<std::pair<double, int>> sorted;  // (value, row) scratch
  std::vector<int> scratch;                    // partition scratch
  std::vector<int> counts_left, counts_node;
  std::vector<int> feat_perm;

  TreeBuilder(const Eigen::MatrixXd& X_, const std::vector<int>& y_, int k,
              const RfParams& p, std::uint64_t seed)
      : X(X_), y(y_), num_classes(k), params(p), rng(seed) {
    counts_left.resize(k);
    counts_node.resize(k);
    feat_perm.resize(X.cols());
    std::iota(feat_perm.begin(), feat_perm.end(), 0);
  }

  std::vector<TreeNode> build() {
    const int n = int(X.rows());
    rows.resize(n);
    if (params.bootstrap) {
      for (int i = 0; i < n; ++i) rows[i] = int(rng.next_below(std::uint64_t(n)));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    nodes.clear();
    grow(0, n, 0);
    return std::move(nodes);
  }

  int make_leaf(int lo, int hi) {
    std::fill(counts_node.begin(), counts_node.end(), 0);
    for (int i = lo; i < hi; ++i) counts_node[y[rows[i]]]++;
    int best = 0;
    for (int c = 1; c < num_classes; ++c)
      if (counts_node[c] > counts_node[best]) best = c;
    TreeNode leaf;
    leaf.leaf_class = best;
    nodes.push_back(leaf);
    return int(nodes.size()) - 1;
  }

  int grow(int lo, int hi, std::size_t depth) {
    const int m = hi - lo;
    std::fill(counts_node.begin(), counts_node.end(), 0);
    for (int i = lo; i < hi; ++i) counts_node[y[rows[i]]]++;
    bool pure = false;
    for (int c = 0; c < num_classes; ++c)
      if (counts_node[c] == m) pure = true;
    if (pure || m < 2 * int(params.min_leaf) ||
        (params.max_depth && depth >= params.max_depth)) {
      int best = 0;
      for (int c = 1; c < num_classes; ++c)
        if (counts_node[c] > counts_node[best]) best = c;
      TreeNode leaf;
      leaf.leaf_class = best;
      nodes.push_back(leaf);
      return int(nodes.size()) - 1;
    }

    // Candidate features: a fresh random permutation, scanned until sqrt(d)
    // non-constant features have been evaluated (or all are exhausted). The
    // fallback past the first sqrt(d) entries keeps impure nodes splittable
    // whenever any feature still varies.
    const int d = int(X.cols());
    for (int i = 0; i < d; ++i) {
      int j = i + int(rng.next_below(std::uint64_t(d - i)));
      std::swap(feat_perm[i], feat_perm[j]);
    }
    const int mtry = int(std::ceil(std::sqrt(double(d))));

    double best_score = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    int evaluated = 0;

    double node_sumsq = 0.0;
    for (int c = 0; c < num_classes; ++c)
      node_sumsq += double(counts_node[c]) * double(counts_node[c]);

    for (int fi = 0; fi < d && evaluated < mtry; ++fi) {
      const int f = feat_perm[fi];
      const double* col = X.col(f).data();
      sorted.resize(std::size_t(m));
      for (int i = 0; i < m; ++i) sorted[std::size_t(i)] = {col[rows[lo + i]], rows[lo + i]};
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (sorted.front().first == sorted.back().first) continue;  // constant here
      ++evaluated;

      std::fill(counts_left.begin(), counts_left.end(), 0);
      double sumsq_l = 0.0, sumsq_r = node_sumsq;
      for (int i = 0; i < m - 1; ++i) {
        const int c = y[sorted[std::size_t(i)].second];
        const double q_l = double(counts_left[c]);
        const double q_r = double(counts_node[c] - counts_left[c]);  // right count before move
        sumsq_l += 2.0 * q_l + 1.0;
        sumsq_r -= 2.0 * q_r - 1.0;
        counts_left[c]++;
        if (sorted[std::size_t(i)].first == sorted[std::size_t(i + 1)].first) continue;
        const int nl = i + 1, nr = m - nl;
        if (nl < int(params.min_leaf) || nr < int(params.min_leaf)) continue;
        // Weighted Gini: nl*(1 - sumsq_l/nl^2) + nr*(1 - sumsq_r/nr^2),
        // with the constant m dropped.
        const double score = -sumsq_l / double(nl) - sumsq_r / double(nr);
        if (score < best_score) {
          best_score = score;
          best_feature = f;
          double v1 = sorted[std::size_t(i)].first, v2 = sorted[std::size_t(i + 1)].first;
          double mid = v1 + (v2 - v1) / 2.0;
          best_threshold = (mid <= v1) ? v2 : mid;
        }
      }
    }

    if (best_feature < 0) return make_leaf(lo, hi);

    // Stable two-way partition of rows[lo,hi) on x < threshold.
    scratch.clear();
    const double* col = X.col(best_feature).data();
    int w = lo;
    for (int i = lo; i < hi; ++i) {
      if (col[rows[i]] < best_threshold)
        rows[w++] = rows[i];
      else
        scratch.push_back(rows[i]);
    }
    std::copy(scratch.begin(), scratch.end(), rows.begin() + w);
    const int mid = w;
    if (mid == lo || mid == hi) return make_leaf(lo, hi);  // degenerate, shouldn't happen

    TreeNode inner;
    inner.feature = best_feature;
    inner.threshold = best_threshold;
    nodes.push_back(inner);
    const int self = int(nodes.size()) - 1;
    const int left = grow(lo, mid, depth + 1);
    const int right = grow(mid, hi, depth + 1);
    nodes[std::size_t(self)].left = left;
    nodes[std::size_t(self)].right = right;
    return self;
  }
};

int tree_predict(const std::vector<TreeNode>& nodes, const Eigen::RowVectorXd& x) {
  int i = 0;
  while (nodes[std::size_t(i)].feature >= 0) {
    const TreeNode& nd = nodes[std::size_t(i)];
    i = x[nd.feature] < nd.threshold ? nd.left : nd.right;
  }
  return nodes[std::size_t(i)].leaf_class;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Multinomial logistic regression loss/gradient (shared by fit and tests).
// theta = [W row-major (K x d), b (K)]; loss = mean NLL + lambda/(2n)*||W||^2.
// ---------------------------------------------------------------------------

namespace {

void unpack_theta(const Eigen::VectorXd& theta, int K, Eigen::Index d, Eigen::MatrixXd& W,
                  Eigen::VectorXd& b) {
  W.resize(K, d);
  b.resize(K);
  for (int k = 0; k < K; ++k)
    for (Eigen::Index j = 0; j < d; ++j) W(k, j) = theta[Eigen::Index(k) * d + j];
  for (int k = 0; k < K; ++k) b[k] = theta[Eigen::Index(K) * d + k];
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd P = logits;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    const double mx = P.row(i).maxCoeff();
    P.row(i) = (P.row(i).array() - mx).exp();
    P.row(i) /= P.row(i).sum();
  }
  return P;
}

}  // namespace

double lr_loss(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
               const Eigen::VectorXd& theta, double lambda) {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
  unpack_theta(theta, num_classes, X.cols(), W, b);
  const double n = double(X.rows());
  Eigen::MatrixXd logits = X * W.transpose();
  logits.rowwise() += b.transpose();
  double nll = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    const double lse = mx + std::log((logits.row(i).array() - mx).exp().sum());
    nll += lse - logits(i, y[std::size_t(i)]);
  }
  return nll / n + lambda / (2.0 * n) * W.squaredNorm();
}

Eigen::VectorXd lr_grad(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
                        const Eigen::VectorXd& theta, double lambda) {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
  unpack_theta(theta, num_classes, X.cols(), W, b);
  const double n = double(X.rows());
  const Eigen::Index d = X.cols();
  Eigen::MatrixXd logits = X * W.transpose();
  logits.rowwise() += b.transpose();
  Eigen::MatrixXd P = softmax_rows(logits);
  for (Eigen::Index i = 0; i < X.rows(); ++i) P(i, y[std::size_t(i)]) -= 1.0;
  P /= n;
  Eigen::MatrixXd GW = P.transpose() * X + (lambda / n) * W;
  Eigen::VectorXd gb = P.colwise().sum();
  Eigen::VectorXd g(Eigen::Index(num_classes) * d + num_classes);
  for (int k = 0; k < num_classes; ++k)
    for (Eigen::Index j = 0; j < d; ++j) g[Eigen::Index(k) * d + j] = GW(k, j);
  for (int k = 0; k < num_classes; ++k) g[Eigen::Index(num_classes) * d + k] = gb[k];
  return g;
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

Classifier Classifier::fit(LearnerKind kind, const LearnerParams& params, const Eigen::MatrixXd& X,
                           const std::vector<int>& y, std::uint64_t seed) {
  if (X.rows() == 0) fail("EmptyTrainingSet", "no training instances");
  if (X.cols() == 0) fail("WidthMismatch", "empty feature set");
  if (std::size_t(X.rows()) != y.size()) fail("LengthMismatch", "labels do not match instances");

  Classifier c;
  c.kind_ = kind;
  c.width_ = X.cols();
  c.classes_ = distinct_sorted(y);
  if (c.classes_.size() == 1) {
    c.state_ = SingleClassState{};
    return c;
  }
  const std::vector<int> yc = remap(y, c.classes_);
  const int K = int(c.classes_.size());

  switch (kind) {
    case LearnerKind::RF: {
      RfState st;
      st.trees.resize(params.rf.num_trees);
      const std::size_t fit_workers =
          params.workers != 0 ? params.workers : default_workers();
      parallel_for(params.rf.num_trees, fit_workers, [&](std::size_t t) {
        TreeBuilder tb(X, yc, K, params.rf, mix_seed(seed, t));
        st.trees[t] = tb.build();
      });
      c.state_ = std::move(st);
      break;
    }
    case LearnerKind::KNN: {
      KnnState st;
      st.stz.fit(X);
      st.Xz = st.stz.transform(X);
      st.y = yc;
      st.k = params.knn.k;
      c.state_ = std::move(st);
      break;
    }
    case LearnerKind::LR: {
      LrState st;
      st.stz.fit(X);
      Eigen::MatrixXd Xz = st.stz.transform(X);
      const Eigen::Index d = Xz.cols();
      Eigen::VectorXd theta = Eigen::VectorXd::Zero(Eigen::Index(K) * d + K);
      double loss = lr_loss(Xz, yc, K, theta, params.lr.l2);
      st.loss_history.push_back(loss);
      double step = 1.0;
      for (std::size_t it = 0; it < params.lr.max_iters; ++it) {
        Eigen::VectorXd g = lr_grad(Xz, yc, K, theta, params.lr.l2);
        // Backtracking line search: never accept an increase.
        double new_loss = loss;
        Eigen::VectorXd cand;
        step *= 2.0;
        for (; step > 1e-15; step /= 2.0) {
          cand = theta - step * g;
          new_loss = lr_loss(Xz, yc, K, cand, params.lr.l2);
          if (new_loss <= loss) break;
        }
        if (new_loss > loss) break;  // no descent direction step found
        theta = cand;
        st.loss_history.push_back(new_loss);
        const double delta = loss - new_loss;
        loss = new_loss;
        if (delta < params.lr.tol) break;
      }
      unpack_theta(theta, K, d, st.W, st.b);
      c.state_ = std::move(st);
      break;
    }
    case LearnerKind::BNB: {
      BnbState st;
      const Eigen::Index d = X.cols();
      st.median.resize(d);
      for (Eigen::Index f = 0; f < d; ++f) {
        std::vector<double> col(X.col(f).data(), X.col(f).data() + X.rows());
        st.median[f] = median_of(std::move(col));
      }
      const double alpha = params.bnb.alpha;
      st.log_prior.resize(std::size_t(K));
      st.log_on.assign(std::size_t(K), Eigen::VectorXd::Zero(d));
      st.log_off.assign(std::size_t(K), Eigen::VectorXd::Zero(d));
      std::vector<double> class_count(std::size_t(K), 0.0);
      std::vector<Eigen::VectorXd> on_count(std::size_t(K), Eigen::VectorXd::Zero(d));
      for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const auto k = std::size_t(yc[std::size_t(i)]);
        class_count[k] += 1.0;
        for (Eigen::Index f = 0; f < d; ++f)
          if (X(i, f) > st.median[f]) on_count[k][f] += 1.0;
      }
      for (int k = 0; k < K; ++k) {
        st.log_prior[std::size_t(k)] = std::log(class_count[std::size_t(k)] / double(X.rows()));
        for (Eigen::Index f = 0; f < d; ++f) {
          const double on = (on_count[std::size_t(k)][f] + alpha) /
                            (class_count[std::size_t(k)] + 2.0 * alpha);
          st.log_on[std::size_t(k)][f] = std::log(on);
          st.log_off[std::size_t(k)][f] = std::log(1.0 - on);
        }
      }
      c.state_ = std::move(st);
      break;
    }
  }
  return c;
}

std::vector<double> Classifier::predict_proba(const Eigen::RowVectorXd& x) const {
  if (x.size() != width_) fail("WidthMismatch", "query width does not match training width");
  const std::size_t K = classes_.size();
  std::vector<double> p(K, 0.0);

  if (std::holds_alternative<SingleClassState>(state_)) {
    p[0] = 1.0;
    return p;
  }
  if (const auto* rf = std::get_if<RfState>(&state_)) {
    for (const auto& tree : rf->trees) p[std::size_t(tree_predict(tree, x))] += 1.0;
    for (double& v : p) v /= double(rf->trees.size());
    return p;
  }
  if (const auto* knn = std::get_if<KnnState>(&state_)) {
    const Eigen::RowVectorXd q = knn->stz.transform_row(x);
    const Eigen::Index n = knn->Xz.rows();
    std::vector<std::pair<double, Eigen::Index>> dist;
    dist.resize(std::size_t(n));
    for (Eigen::Index i = 0; i < n; ++i)
      dist[std::size_t(i)] = {(knn->Xz.row(i) - q).squaredNorm(), i};
    const std::size_t kk = std::min<std::size_t>(knn->k, std::size_t(n));
    std::partial_sort(dist.begin(), dist.begin() + long(kk), dist.end());
    for (std::size_t i = 0; i < kk; ++i) p[std::size_t(knn->y[std::size_t(dist[i].second)])] += 1.0;
    for (double& v : p) v /= double(kk);
    return p;
  }
  if (const auto* lr = std::get_if<LrState>(&state_)) {
    const Eigen::RowVectorXd q = lr->stz.transform_row(x);
    Eigen::VectorXd logits = lr->W * q.transpose() + lr->b;
    const double mx = logits.maxCoeff();
    Eigen::VectorXd e = (logits.array() - mx).exp();
    e /= e.sum();
    for (std::size_t k = 0; k < K; ++k) p[k] = e[Eigen::Index(k)];
    return p;
  }
  const auto& nb = std::get<BnbState>(state_);
  Eigen::VectorXd logp = Eigen::VectorXd::Zero(Eigen::Index(K));
  for (std::size_t k = 0; k < K; ++k) {
    double lp = nb.log_prior[k];
    for (Eigen::Index f = 0; f < width_; ++f)
      lp += x[f] > nb.median[f] ? nb.log_on[k][f] : nb.log_off[k][f];
    logp[Eigen::Index(k)] = lp;
  }
  const double mx = logp.maxCoeff();
  Eigen::VectorXd e = (logp.array() - mx).exp();
  e /= e.sum();
  for (std::size_t k = 0; k < K; ++k) p[k] = e[Eigen::Index(k)];
  return p;
}

int Classifier::predict(const Eigen::RowVectorXd& x) const {
  const auto p = predict_proba(x);
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k] > p[best]) best = k;
  return classes_[best];
}

const std::vector<double>& Classifier::lr_loss_history() const {
  static const std::vector<double> empty;
  if (const auto* lr = std::get_if<LrState>(&state_)) return lr->loss_history;
  return empty;
}

// ---------------------------------------------------------------------------
// Serialization (self-describing JSON, format_version 1)
// ---------------------------------------------------------------------------

namespace {

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vec_from_json(const nlohmann::json& j) {
  auto v = j.get<std::vector<double>>();
  return Eigen::Map<Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

nlohmann::json mat_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd mat_from_json(const nlohmann::json& j, Eigen::Index cols_hint) {
  const Eigen::Index r = Eigen::Index(j.size());
  Eigen::Index c = r > 0 ? Eigen::Index(j[0].size()) : cols_hint;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = j[std::size_t(i)][std::size_t(k)].get<double>();
  return m;
}

}  // namespace

nlohmann::json Classifier::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = learner_name(kind_);
  j["classes"] = classes_;
  j["width"] = width_;
  if (std::holds_alternative<SingleClassState>(state_)) {
    j["state"] = "single_class";
    return j;
  }
  if (const auto* rf = std::get_if<RfState>(&state_)) {
    j["state"] = "rf";
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : rf->trees) {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& nd : tree)
        nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right, nd.leaf_class});
      trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j;
  }
  if (const auto* knn = std::get_if<KnnState>(&state_)) {
    j["state"] = "knn";
    j["mean"] = vec_to_json(knn->stz.mean);
    j["std"] = vec_to_json(knn->stz.std);
    j["Xz"] = mat_to_json(knn->Xz);
    j["y"] = knn->y;
    j["k"] = knn->k;
    return j;
  }
  if (const auto* lr = std::get_if<LrState>(&state_)) {
    j["state"] = "lr";
    j["mean"] = vec_to_json(lr->stz.mean);
    j["std"] = vec_to_json(lr->stz.std);
    j["W"] = mat_to_json(lr->W);
    j["b"] = vec_to_json(lr->b);
    return j;
  }
  const auto& nb = std::get<BnbState>(state_);
  j["state"] = "bnb";
  j["median"] = vec_to_json(nb.median);
  j["log_prior"] = nb.log_prior;
  nlohmann::json on = nlohmann::json::array(), off = nlohmann::json::array();
  for (const auto& v : nb.log_on) on.push_back(vec_to_json(v));
  for (const auto& v : nb.log_off) off.push_back(vec_to_json(v));
  j["log_on"] = std::move(on);
  j["log_off"] = std::move(off);
  return j;
}

Classifier Classifier::from_json(const nlohmann::json& j) {
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    fail("SchemaVersionUnsupported", "unknown model format version");
  Classifier c;
  const std::string kind = j["kind"].get<std::string>();
  for (LearnerKind k : {LearnerKind::BNB, LearnerKind::KNN, LearnerKind::LR, LearnerKind::RF})
    if (kind == learner_name(k)) c.kind_ = k;
  c.classes_ = j["classes"].get<std::vector<int>>();
  c.width_ = j["width"].get<Eigen::Index>();
  const std::string state = j["state"].get<std::string>();
  if (state == "single_class") {
    c.state_ = SingleClassState{};
  } else if (state == "rf") {
    RfState st;
    for (const auto& tj : j["trees"]) {
      std::vector<TreeNode> tree;
      for (const auto& nj : tj) {
        TreeNode nd;
        nd.feature = nj[0].get<int>();
        nd.threshold = nj[1].get<double>();
        nd.left = nj[2].get<int>();
        nd.right = nj[3].get<int>();
        nd.leaf_class = nj[4].get<int>();
        tree.push_back(nd);
      }
      st.trees.push_back(std::move(tree));
    }
    c.state_ = std::move(st);
  } else if (state == "knn") {
    KnnState st;
    st.stz.mean = vec_from_json(j["mean"]);
    st.stz.std = vec_from_json(j["std"]);
    st.Xz = mat_from_json(j["Xz"], c.width_);
    st.y = j["y"].get<std::vector<int>>();
    st.k = j["k"].get<std::size_t>();
    c.state_ = std::move(st);
  } else if (state == "lr") {
    LrState st;
    st.stz.mean = vec_from_json(j["mean"]);
    st.stz.std = vec_from_json(j["std"]);
    st.W = mat_from_json(j["W"], c.width_);
    st.b = vec_from_json(j["b"]);
    c.state_ = std::move(st);
  } else if (state == "bnb") {
    BnbState st;
    st.median = vec_from_json(j["median"]);
    st.log_prior = j["log_prior"].get<std::vector<double>>();
    for (const auto& v : j["log_on"]) st.log_on.push_back(vec_from_json(v));
    for (const auto& v : j["log_off"]) st.log_off.push_back(vec_from_json(v));
    c.state_ = std::move(st);
  } else {
    fail("ParseError", "unknown classifier state '" + state + "'");
  }
  return c;
}

}  // namespace quorum

#include "quorum/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "quorum/errors.hpp"
#include "quorum/parallel.hpp"
#include "quorum/rng.hpp"

namespace quorum {

namespace {

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

double mean_bits(const std::vector<int>& bits) {
  if (bits.empty()) return 0.0;
  long sum = 0;
  for (int b : bits) sum += b;
  return double(sum) / double(bits.size());
}

std::size_t sum_bits(const std::vector<int>& bits) {
  std::size_t s = 0;
  for (int b : bits) s += std::size_t(b != 0);
  return s;
}

std::size_t method_slot(const std::vector<MethodId>& methods, MethodId m) {
  for (std::size_t k = 0; k < methods.size(); ++k)
    if (methods[k] == m) return k;
  fail("UsageError", std::string("method not in the included set: ") + method_name(m));
}

void require_ground_truth(const std::vector<DecisionCase>& corpus) {
  for (const auto& c : corpus)
    if (!c.correct)
      fail("MissingGroundTruth", "case " + c.case_id + " carries no correct answer");
}

// Per-method 0/1 outcome bits for one case, aligned with `methods`.
void fill_method_bits(const DecisionCase& c, const std::vector<MethodId>& methods,
                      std::size_t slot, std::vector<std::vector<int>>& mbits) {
  const auto res = aggregate_subset(c, methods);
  for (std::size_t k = 0; k < methods.size(); ++k) {
    int bit = 0;
    for (const auto& r : res)
      if (r.method == methods[k]) {
        bit = r.outcome.value_or(0);
        break;
      }
    mbits[k][slot] = bit;
  }
}

CoverageReport coverage_from_bits(const std::vector<MethodId>& methods,
                                  const std::vector<std::vector<int>>& mbits,
                                  std::size_t n_cases) {
  CoverageReport rep;
  rep.methods = methods;
  rep.n_cases = n_cases;
  rep.region_counts.assign(std::size_t(1) << methods.size(), 0);
  std::uint32_t standard_mask = 0;
  for (std::size_t k = 0; k < methods.size(); ++k)
    if (methods[k] != MethodId::DA) standard_mask |= std::uint32_t(1) << k;
  for (std::size_t i = 0; i < n_cases; ++i) {
    std::uint32_t m = 0;
    for (std::size_t k = 0; k < methods.size(); ++k)
      if (mbits[k][i]) m |= std::uint32_t(1) << k;
    rep.region_counts[m]++;
    if (m != 0) rep.union_all++;
    if ((m & standard_mask) != 0) rep.union_standard++;
  }
  return rep;
}

// A trained pipeline of either approach plus the glue to apply it to a case.
struct PipelineModel {
  Approach approach = Approach::AMP;
  std::optional<MultiLabelModel> amp;
  std::optional<Classifier> dap;
};

PipelineModel fit_rows(Approach approach, const Technique& tech, const LearnerParams& params,
                       const AmpDataset* ads, const DapDataset* dds,
                       const std::vector<std::size_t>& rows, std::uint64_t seed) {
  PipelineModel m;
  m.approach = approach;
  if (approach == Approach::AMP) {
    Eigen::MatrixXd X(Eigen::Index(rows.size()), ads->X.cols());
    std::vector<std::vector<int>> Y;
    Y.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      X.row(Eigen::Index(r)) = ads->X.row(Eigen::Index(rows[r]));
      Y.push_back(ads->Y[rows[r]]);
    }
    m.amp = MultiLabelModel::fit(tech.scheme, tech.base, params, X, Y, seed);
  } else {
    Eigen::MatrixXd X(Eigen::Index(rows.size()), dds->X.cols());
    std::vector<int> y;
    y.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      X.row(Eigen::Index(r)) = dds->X.row(Eigen::Index(rows[r]));
      y.push_back(dds->y[rows[r]]);
    }
    m.dap = Classifier::fit(tech.base, params, X, y, seed);
  }
  return m;
}

struct CaseDecision {
  int bit = 0;
  std::size_t sel = 0;  // index into included (AMP only)
};

CaseDecision decide(const PipelineModel& m, const DecisionCase& c, const EvalOptions& o) {
  CaseDecision d;
  if (m.approach == Approach::AMP) {
    AmpDecision a = amp_select_and_aggregate(*m.amp, c, o.plan, o.included, o.mask);
    d.bit = a.result.outcome.value_or(0);
    d.sel = method_slot(o.included, a.selected);
  } else {
    DapDecision p = dap_predict_answer(*m.dap, c, o.plan, o.included, o.mask);
    d.bit = p.outcome.value_or(0);
  }
  return d;
}

// Leave-one-out over `evals` (a subset of `train`): for each held-out case,
// fit on train minus that case and score the end-to-end decision. Seeds
// derive from corpus indices, so results are worker-count invariant.
void loo_over(const std::vector<DecisionCase>& corpus, Approach approach, const Technique& tech,
              const LearnerParams& fit_params, const EvalOptions& options,
              const AmpDataset* ads, const DapDataset* dds,
              const std::vector<std::size_t>& train, const std::vector<std::size_t>& evals,
              std::uint64_t stream, std::size_t workers, std::vector<int>& bits,
              std::vector<std::size_t>* sel) {
  bits.assign(evals.size(), 0);
  if (sel) sel->assign(evals.size(), 0);
  parallel_for(evals.size(), workers, [&](std::size_t e) {
    const std::size_t hold = evals[e];
    std::vector<std::size_t> rows;
    rows.reserve(train.size() - 1);
    for (std::size_t i : train)
      if (i != hold) rows.push_back(i);
    PipelineModel m =
        fit_rows(approach, tech, fit_params, ads, dds, rows, mix_seed(stream, hold));
    CaseDecision d = decide(m, corpus[hold], options);
    bits[e] = d.bit;
    if (sel) (*sel)[e] = d.sel;
  });
}

// Stratified (by correct answer) subsample of the inner evaluation set,
// proportional with largest-remainder rounding. Returns `train` itself when
// no subsampling applies.
std::vector<std::size_t> inner_eval_set(const std::vector<DecisionCase>& corpus,
                                        const std::vector<std::size_t>& train,
                                        std::size_t target, std::uint64_t seed) {
  if (target == 0 || target >= train.size()) return train;
  std::map<std::size_t, std::vector<std::size_t>> strata;
  for (std::size_t i : train) strata[*corpus[i].correct].push_back(i);
  const std::size_t total = train.size();
  std::vector<std::pair<std::size_t, std::size_t>> quota;  // (stratum key, count)
  std::vector<std::pair<std::size_t, std::size_t>> remainder;  // (-rem, key) ordering
  std::size_t assigned = 0;
  for (const auto& [key, members] : strata) {
    std::size_t q = target * members.size() / total;
    std::size_t rem = target * members.size() % total;
    quota.emplace_back(key, q);
    remainder.emplace_back(total - rem, key);  // ascending sort = descending remainder
    assigned += q;
  }
  std::sort(remainder.begin(), remainder.end());
  for (std::size_t r = 0; assigned < target && r < remainder.size(); ++r) {
    const std::size_t key = remainder[r].second;
    for (auto& [k, q] : quota)
      if (k == key && q < strata[key].size()) {
        ++q;
        ++assigned;
        break;
      }
  }
  std::vector<std::size_t> picked;
  picked.reserve(target);
  for (const auto& [key, q] : quota) {
    const auto& members = strata[key];
    Rng rng(mix_seed(seed, key));
    for (std::size_t j : sample_without_replacement(members.size(), q, rng))
      picked.push_back(members[j]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

double exact_binomial_p(std::size_t b, std::size_t c) {
  const std::size_t n = b + c;
  const std::size_t k = std::min(b, c);
  const double log_n = std::lgamma(double(n) + 1.0);
  const double log_half = std::log(2.0) * double(n);
  double sum = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    double log_choose =
        log_n - std::lgamma(double(i) + 1.0) - std::lgamma(double(n - i) + 1.0);
    sum += std::exp(log_choose - log_half);
  }
  return std::min(1.0, 2.0 * sum);
}

const char* kReportSchema = "quorum.evaluation.v1";
const char* kSelectionSchema = "quorum.selection.v1";
const char* kCoverageSchema = "quorum.coverage.v1";
const char* kAblationSchema = "quorum.ablation.v1";

nlohmann::json test_json(const TestResult& t) {
  return {{"statistic", t.statistic}, {"p_value", t.p_value}};
}

std::string region_label(const std::vector<MethodId>& methods, std::size_t mask) {
  if (mask == 0) return "(none)";
  std::string s;
  for (std::size_t k = 0; k < methods.size(); ++k)
    if (mask & (std::size_t(1) << k)) {
      if (!s.empty()) s += "+";
      s += method_name(methods[k]);
    }
  return s;
}

void coverage_text_body(std::ostringstream& out, const CoverageReport& r) {
  const double n = r.n_cases ? double(r.n_cases) : 1.0;
  out << "union all methods:     " << r.union_all << "/" << r.n_cases << " ("
      << g6(double(r.union_all) / n) << ")\n";
  out << "union without dissent: " << r.union_standard << "/" << r.n_cases << " ("
      << g6(double(r.union_standard) / n) << ")\n";
  out << "regions (solved set -> cases):\n";
  for (std::size_t mask = 0; mask < r.region_counts.size(); ++mask) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-24s %zu\n", region_label(r.methods, mask).c_str(),
                  r.region_counts[mask]);
    out << line;
  }
}

nlohmann::json coverage_json_body(const CoverageReport& r) {
  nlohmann::json regions = nlohmann::json::array();
  for (std::size_t mask = 0; mask < r.region_counts.size(); ++mask)
    regions.push_back({{"solved", region_label(r.methods, mask)},
                       {"count", r.region_counts[mask]}});
  nlohmann::json names = nlohmann::json::array();
  for (MethodId m : r.methods) names.push_back(method_name(m));
  return {{"methods", names},
          {"n_cases", r.n_cases},
          {"union_all", r.union_all},
          {"union_standard", r.union_standard},
          {"regions", regions}};
}

}  // namespace

std::string approach_name(Approach a) { return a == Approach::AMP ? "amp" : "dap"; }

Approach approach_from_name(const std::string& name) {
  if (name == "amp") return Approach::AMP;
  if (name == "dap") return Approach::DAP;
  fail("UsageError", "unknown approach: " + name + " (expected amp or dap)");
}

std::string technique_name(Approach approach, const Technique& t) {
  if (approach == Approach::AMP)
    return std::string(scheme_name(t.scheme)) + "+" + learner_name(t.base);
  return learner_name(t.base);
}

std::vector<Technique> technique_grid(Approach approach) {
  std::vector<Technique> grid;
  if (approach == Approach::AMP) {
    for (WrapScheme s : {WrapScheme::BR, WrapScheme::CC, WrapScheme::LP})
      for (LearnerKind b : {LearnerKind::BNB, LearnerKind::KNN, LearnerKind::LR, LearnerKind::RF})
        grid.push_back({s, b});
  } else {
    for (LearnerKind b : {LearnerKind::KNN, LearnerKind::LR, LearnerKind::RF})
      grid.push_back({WrapScheme::BR, b});
  }
  return grid;
}

Technique default_technique(Approach approach) {
  (void)approach;
  return {WrapScheme::BR, LearnerKind::RF};
}

TestResult mcnemar_counts(std::size_t b, std::size_t c, bool exact) {
  TestResult r;
  if (b + c == 0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const double diff = double(b) - double(c);
  r.statistic = diff * diff / double(b + c);
  r.p_value = exact ? exact_binomial_p(b, c) : std::erfc(std::sqrt(r.statistic / 2.0));
  return r;
}

TestResult mcnemar_test(const std::vector<int>& first, const std::vector<int>& second,
                        bool exact) {
  if (first.size() != second.size())
    fail("LengthMismatch", "paired outcome vectors differ in length");
  std::size_t b = 0, c = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i] != 0 && second[i] == 0) ++b;
    if (first[i] == 0 && second[i] != 0) ++c;
  }
  return mcnemar_counts(b, c, exact);
}

TestResult proportion_test(std::size_t successes1, std::size_t n1, std::size_t successes2,
                           std::size_t n2) {
  if (n1 == 0 || n2 == 0) fail("ZeroSample", "proportion test needs nonempty samples");
  if (successes1 > n1 || successes2 > n2)
    fail("UsageError", "successes exceed sample size");
  TestResult r;
  const double pooled = double(successes1 + successes2) / double(n1 + n2);
  if (pooled <= 0.0 || pooled >= 1.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const double se =
      std::sqrt(pooled * (1.0 - pooled) * (1.0 / double(n1) + 1.0 / double(n2)));
  r.statistic = (double(successes1) / double(n1) - double(successes2) / double(n2)) / se;
  r.p_value = std::erfc(std::abs(r.statistic) / std::sqrt(2.0));
  return r;
}

CoverageReport coverage_analysis(const std::vector<DecisionCase>& corpus,
                                 const std::vector<MethodId>& methods, std::size_t workers) {
  if (methods.empty()) fail("UsageError", "coverage needs at least one method");
  require_ground_truth(corpus);
  if (workers == 0) workers = default_workers();
  std::vector<std::vector<int>> mbits(methods.size(), std::vector<int>(corpus.size(), 0));
  parallel_for(corpus.size(), workers,
               [&](std::size_t i) { fill_method_bits(corpus[i], methods, i, mbits); });
  return coverage_from_bits(methods, mbits, corpus.size());
}

EvaluationReport loo_evaluate(const std::vector<DecisionCase>& corpus, Approach approach,
                              const Technique& technique, const EvalOptions& options) {
  if (corpus.size() < 3)
    fail("CorpusTooSmall", "leave-one-out evaluation needs at least 3 cases");
  if (options.included.empty()) fail("UsageError", "no methods included");
  require_ground_truth(corpus);
  const std::size_t workers = options.workers ? options.workers : default_workers();
  LearnerParams fit_params = options.params;
  fit_params.workers = 1;

  std::optional<AmpDataset> ads;
  std::optional<DapDataset> dds;
  if (approach == Approach::AMP)
    ads = build_amp_dataset(corpus, options.plan, options.included, options.mask, workers);
  else
    dds = build_dap_dataset(corpus, options.plan, options.included, options.mask, workers);

  const std::size_t n = corpus.size();
  std::vector<std::size_t> all_idx(n);
  std::iota(all_idx.begin(), all_idx.end(), std::size_t(0));

  std::vector<int> bits;
  std::vector<std::size_t> sel;
  loo_over(corpus, approach, technique, fit_params, options, ads ? &*ads : nullptr,
           dds ? &*dds : nullptr, all_idx, all_idx, mix_seed(options.seed, fnv1a("loo")),
           workers, bits, approach == Approach::AMP ? &sel : nullptr);

  std::vector<std::vector<int>> mbits(options.included.size(), std::vector<int>(n, 0));
  parallel_for(n, workers,
               [&](std::size_t i) { fill_method_bits(corpus[i], options.included, i, mbits); });

  EvaluationReport rep;
  rep.approach = approach;
  rep.technique = technique_name(approach, technique);
  rep.seed = options.seed;
  rep.config_hash = options.config_hash;
  rep.n_cases = n;
  rep.included = options.included;
  rep.approach_outcomes = bits;
  rep.approach_success = mean_bits(bits);
  rep.method_bits = mbits;
  if (approach == Approach::AMP) rep.selected_method = sel;

  const std::size_t approach_successes = sum_bits(bits);
  for (std::size_t k = 0; k < options.included.size(); ++k) {
    MethodSummary ms;
    ms.method = options.included[k];
    ms.uniform_success = mean_bits(mbits[k]);
    if (approach == Approach::AMP) {
      std::size_t picked = 0, picked_hits = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (sel[i] == k) {
          ++picked;
          picked_hits += std::size_t(bits[i] != 0);
        }
      ms.times_selected = picked;
      ms.selection_share = double(picked) / double(n);
      if (picked > 0) ms.conditional_success = double(picked_hits) / double(picked);
    }
    ms.mcnemar = mcnemar_test(bits, mbits[k], options.mcnemar_exact);
    ms.proportion = proportion_test(approach_successes, n, sum_bits(mbits[k]), n);
    rep.methods.push_back(ms);
  }
  rep.coverage = coverage_from_bits(options.included, mbits, n);
  return rep;
}

ModelSelectionResult nested_model_selection(const std::vector<DecisionCase>& corpus,
                                            Approach approach,
                                            const std::vector<Technique>& grid,
                                            const EvalOptions& options) {
  if (grid.empty()) fail("UsageError", "empty candidate grid");
  const std::size_t folds = options.folds ? options.folds : 10;
  if (folds < 2) fail("UsageError", "model selection needs at least 2 folds");
  if (corpus.size() < 2 * folds)
    fail("CorpusTooSmall", "model selection needs at least " + std::to_string(2 * folds) +
                               " cases for " + std::to_string(folds) + " folds");
  if (options.included.empty()) fail("UsageError", "no methods included");
  require_ground_truth(corpus);
  const std::size_t workers = options.workers ? options.workers : default_workers();
  LearnerParams fit_params = options.params;
  fit_params.workers = 1;

  std::optional<AmpDataset> ads;
  std::optional<DapDataset> dds;
  if (approach == Approach::AMP)
    ads = build_amp_dataset(corpus, options.plan, options.included, options.mask, workers);
  else
    dds = build_dap_dataset(corpus, options.plan, options.included, options.mask, workers);
  const AmpDataset* ap = ads ? &*ads : nullptr;
  const DapDataset* dp = dds ? &*dds : nullptr;

  const std::size_t n = corpus.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  Rng fold_rng(mix_seed(options.seed, fnv1a("folds")));
  shuffle_indices(order, fold_rng);

  std::vector<std::vector<std::size_t>> fold_idx(folds);
  const std::size_t base = n / folds, rem = n % folds;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = base + (f < rem ? 1 : 0);
    fold_idx[f].assign(order.begin() + long(pos), order.begin() + long(pos + size));
    pos += size;
  }

  ModelSelectionResult res;
  res.approach = approach;
  res.seed = options.seed;
  res.config_hash = options.config_hash;
  res.grid = grid;
  for (const auto& t : grid) res.grid_names.push_back(technique_name(approach, t));
  res.inner_success.assign(folds, std::vector<double>(grid.size(), 0.0));
  res.fold_winner.assign(folds, 0);
  res.outer_success.assign(folds, 0.0);
  res.fold_sizes.assign(folds, 0);

  const std::uint64_t inner_stream = mix_seed(options.seed, fnv1a("inner"));
  const std::uint64_t outer_stream = mix_seed(options.seed, fnv1a("outer"));

  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train;
    train.reserve(n - fold_idx[f].size());
    for (std::size_t g = 0; g < folds; ++g)
      if (g != f) train.insert(train.end(), fold_idx[g].begin(), fold_idx[g].end());

    const std::vector<std::size_t> evals = inner_eval_set(
        corpus, train, options.inner_subsample, mix_seed(inner_stream, fnv1a("subsample") + f));

    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<int> bits;
      loo_over(corpus, approach, grid[g], fit_params, options, ap, dp, train, evals,
               mix_seed(mix_seed(inner_stream, f), g), workers, bits, nullptr);
      res.inner_success[f][g] = mean_bits(bits);
    }

    std::size_t winner = 0;
    for (std::size_t g = 1; g < grid.size(); ++g)
      if (res.inner_success[f][g] > res.inner_success[f][winner]) winner = g;
    res.fold_winner[f] = winner;

    PipelineModel model = fit_rows(approach, grid[winner], fit_params, ap, dp, train,
                                   mix_seed(outer_stream, f));
    std::vector<int> test_bits(fold_idx[f].size(), 0);
    parallel_for(fold_idx[f].size(), workers, [&](std::size_t e) {
      test_bits[e] = decide(model, corpus[fold_idx[f][e]], options).bit;
    });
    res.outer_success[f] = mean_bits(test_bits);
    res.fold_sizes[f] = fold_idx[f].size();
  }

  std::vector<std::size_t> wins(grid.size(), 0);
  for (std::size_t f = 0; f < folds; ++f) wins[res.fold_winner[f]]++;
  std::size_t chosen = 0;
  for (std::size_t g = 1; g < grid.size(); ++g)
    if (wins[g] > wins[chosen]) chosen = g;
  res.chosen = chosen;
  return res;
}

Exclusion parse_exclusion(const std::vector<std::string>& names) {
  Exclusion e;
  for (const auto& name : names) {
    if (name.empty() || name == "none") continue;
    if (name == "confidence" || name == "conf")
      e.conf_features = true;
    else if (name == "ps" || name == "predicted_support")
      e.ps_features = true;
    else if (name == "wc_hac" || name == "wc+hac")
      e.wc_hac = true;
    else if (name == "sp")
      e.sp = true;
    else if (name == "da")
      e.da = true;
    else if (name == "voting" || name == "mr")
      fail("InvalidExclusion", "the voting backbone cannot be excluded: " + name);
    else
      fail("UsageError", "unknown exclusion component: " + name);
  }
  return e;
}

FeatureMask exclusion_mask(const Exclusion& e) {
  FeatureMask mask;
  mask.voting = true;
  mask.confidence = !e.conf_features;
  mask.predicted_support = !e.ps_features;
  return mask;
}

std::vector<MethodId> exclusion_methods(const Exclusion& e) {
  std::vector<MethodId> methods{MethodId::MR};
  if (!e.wc_hac) {
    methods.push_back(MethodId::HAC);
    methods.push_back(MethodId::WC);
  }
  if (!e.sp) methods.push_back(MethodId::SP);
  if (!e.da) methods.push_back(MethodId::DA);
  return methods;
}

std::string exclusion_label(const Exclusion& e) {
  std::string s;
  auto add = [&s](const char* name) {
    if (!s.empty()) s += "+";
    s += name;
  };
  if (e.conf_features) add("confidence");
  if (e.ps_features) add("ps");
  if (e.wc_hac) add("wc_hac");
  if (e.sp) add("sp");
  if (e.da) add("da");
  return s.empty() ? "none" : s;
}

AblationRow ablate(const std::vector<DecisionCase>& corpus, Approach approach,
                   const Technique& technique, const Exclusion& exclusion,
                   const EvalOptions& options) {
  EvalOptions o = options;
  o.mask = exclusion_mask(exclusion);
  o.included = exclusion_methods(exclusion);
  const EvaluationReport rep = loo_evaluate(corpus, approach, technique, o);
  AblationRow row;
  row.exclusion = exclusion;
  row.label = exclusion_label(exclusion);
  row.success = rep.approach_success;
  row.n_cases = rep.n_cases;
  return row;
}

std::vector<Exclusion> ablation_ladder() {
  auto make = [](bool conf, bool ps, bool wc_hac, bool sp, bool da) {
    Exclusion e;
    e.conf_features = conf;
    e.ps_features = ps;
    e.wc_hac = wc_hac;
    e.sp = sp;
    e.da = da;
    return e;
  };
  return {
      make(false, false, false, false, false), make(true, false, false, false, false),
      make(false, true, false, false, false),  make(true, true, false, false, false),
      make(false, false, true, false, false),  make(false, false, false, true, false),
      make(false, false, true, true, false),   make(false, false, false, false, true),
      make(true, false, true, false, false),   make(false, true, false, true, false),
      make(true, true, true, true, false),
  };
}

// ---- rendering ----

std::string report_to_text(const EvaluationReport& r) {
  std::ostringstream out;
  out << "evaluation report\n";
  out << "approach:    " << approach_name(r.approach) << " (" << r.technique << ")\n";
  out << "cases:       " << r.n_cases << "\n";
  out << "seed:        " << r.seed << "\n";
  out << "config:      " << (r.config_hash.empty() ? "-" : r.config_hash) << "\n";
  out << "success:     " << g6(r.approach_success) << "\n\n";
  char line[200];
  std::snprintf(line, sizeof line, "%-6s %-10s %-9s %-9s %-12s %-12s %-10s %-10s %-10s\n",
                "method", "uniform", "selected", "share", "conditional", "mcnemar_x2",
                "mcnemar_p", "prop_z", "prop_p");
  out << line;
  const bool amp = r.approach == Approach::AMP;
  for (const auto& ms : r.methods) {
    const std::string selected = amp ? std::to_string(ms.times_selected) : "-";
    const std::string share = amp ? g6(ms.selection_share) : "-";
    const std::string cond =
        amp ? (ms.conditional_success ? g6(*ms.conditional_success) : "undefined") : "-";
    std::snprintf(line, sizeof line, "%-6s %-10s %-9s %-9s %-12s %-12s %-10s %-10s %-10s\n",
                  method_name(ms.method), g6(ms.uniform_success).c_str(), selected.c_str(),
                  share.c_str(), cond.c_str(), g6(ms.mcnemar.statistic).c_str(),
                  g6(ms.mcnemar.p_value).c_str(), g6(ms.proportion.statistic).c_str(),
                  g6(ms.proportion.p_value).c_str());
    out << line;
  }
  out << "\ncoverage\n";
  coverage_text_body(out, r.coverage);
  return out.str();
}

std::string report_to_json(const EvaluationReport& r) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& ms : r.methods) {
    nlohmann::json m{{"name", method_name(ms.method)},
                     {"uniform_success", ms.uniform_success},
                     {"mcnemar", test_json(ms.mcnemar)},
                     {"proportion", test_json(ms.proportion)}};
    if (r.approach == Approach::AMP) {
      m["times_selected"] = ms.times_selected;
      m["selection_share"] = ms.selection_share;
      if (ms.conditional_success)
        m["conditional_success"] = *ms.conditional_success;
      else
        m["conditional_success"] = nullptr;
    }
    methods.push_back(m);
  }
  nlohmann::json included = nlohmann::json::array();
  for (MethodId m : r.included) included.push_back(method_name(m));
  nlohmann::json j{{"schema", kReportSchema},
                   {"approach", approach_name(r.approach)},
                   {"technique", r.technique},
                   {"seed", r.seed},
                   {"config_hash", r.config_hash},
                   {"n_cases", r.n_cases},
                   {"included", included},
                   {"approach_success", r.approach_success},
                   {"approach_outcomes", r.approach_outcomes},
                   {"method_bits", r.method_bits},
                   {"methods", methods},
                   {"coverage", coverage_json_body(r.coverage)}};
  if (r.approach == Approach::AMP) j["selected_method"] = r.selected_method;
  return j.dump(2) + "\n";
}

std::string selection_to_text(const ModelSelectionResult& r) {
  std::ostringstream out;
  out << "model selection (" << approach_name(r.approach) << ")\n";
  out << "seed:   " << r.seed << "\n";
  out << "config: " << (r.config_hash.empty() ? "-" : r.config_hash) << "\n";
  out << "folds:  " << r.fold_winner.size() << "\n\n";
  char cell[64];
  std::snprintf(cell, sizeof cell, "%-10s", "candidate");
  out << cell;
  for (std::size_t f = 0; f < r.fold_winner.size(); ++f) {
    std::snprintf(cell, sizeof cell, " %9s", ("fold" + std::to_string(f)).c_str());
    out << cell;
  }
  out << "      wins\n";
  std::vector<std::size_t> wins(r.grid.size(), 0);
  for (std::size_t w : r.fold_winner) wins[w]++;
  for (std::size_t g = 0; g < r.grid.size(); ++g) {
    std::snprintf(cell, sizeof cell, "%-10s", r.grid_names[g].c_str());
    out << cell;
    for (std::size_t f = 0; f < r.fold_winner.size(); ++f) {
      std::snprintf(cell, sizeof cell, " %9s", g6(r.inner_success[f][g]).c_str());
      out << cell;
    }
    std::snprintf(cell, sizeof cell, " %9zu\n", wins[g]);
    out << cell;
  }
  std::snprintf(cell, sizeof cell, "%-10s", "winner");
  out << "\n" << cell;
  for (std::size_t f = 0; f < r.fold_winner.size(); ++f) {
    std::snprintf(cell, sizeof cell, " %9s", r.grid_names[r.fold_winner[f]].c_str());
    out << cell;
  }
  out << "\n";
  std::snprintf(cell, sizeof cell, "%-10s", "test");
  out << cell;
  for (std::size_t f = 0; f < r.fold_winner.size(); ++f) {
    std::snprintf(cell, sizeof cell, " %9s", g6(r.outer_success[f]).c_str());
    out << cell;
  }
  out << "\n\nchosen: " << r.grid_names[r.chosen] << "\n";
  return out.str();
}

std::string selection_to_json(const ModelSelectionResult& r) {
  nlohmann::json j{{"schema", kSelectionSchema},
                   {"approach", approach_name(r.approach)},
                   {"seed", r.seed},
                   {"config_hash", r.config_hash},
                   {"grid", r.grid_names},
                   {"inner_success", r.inner_success},
                   {"fold_winner", r.fold_winner},
                   {"outer_success", r.outer_success},
                   {"fold_sizes", r.fold_sizes},
                   {"chosen", r.chosen},
                   {"chosen_name", r.grid_names[r.chosen]}};
  return j.dump(2) + "\n";
}

std::string coverage_to_text(const CoverageReport& r) {
  std::ostringstream out;
  out << "coverage analysis\n";
  coverage_text_body(out, r);
  return out.str();
}

std::string coverage_to_json(const CoverageReport& r) {
  nlohmann::json j = coverage_json_body(r);
  j["schema"] = kCoverageSchema;
  return j.dump(2) + "\n";
}

std::string ablation_to_text(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  out << "ablation\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %-5s %-4s %-7s %-4s %-4s %-9s %s\n", "excluded",
                "conf", "ps", "wc_hac", "sp", "da", "success", "cases");
  out << line;
  for (const auto& row : rows) {
    auto flag = [](bool excluded) { return excluded ? "-" : "+"; };
    std::snprintf(line, sizeof line, "%-28s %-5s %-4s %-7s %-4s %-4s %-9s %zu\n",
                  row.label.c_str(), flag(row.exclusion.conf_features),
                  flag(row.exclusion.ps_features), flag(row.exclusion.wc_hac),
                  flag(row.exclusion.sp), flag(row.exclusion.da), g6(row.success).c_str(),
                  row.n_cases);
    out << line;
  }
  return out.str();
}

std::string ablation_to_json(const std::vector<AblationRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows)
    arr.push_back({{"excluded", row.label},
                   {"conf_features", !row.exclusion.conf_features},
                   {"ps_features", !row.exclusion.ps_features},
                   {"wc_hac", !row.exclusion.wc_hac},
                   {"sp", !row.exclusion.sp},
                   {"da", !row.exclusion.da},
                   {"success", row.success},
                   {"n_cases", row.n_cases}});
  nlohmann::json j{{"schema", kAblationSchema}, {"rows", arr}};
  return j.dump(2) + "\n";
}

}  // namespace quorum

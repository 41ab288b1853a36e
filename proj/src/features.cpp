#include "quorum/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quorum/errors.hpp"
#include "quorum/rng.hpp"

namespace quorum {

const std::array<const char*, kNumFeatures> kFeatureNames = {
    "N",
    "D_Smax_Smin",
    "ES",
    "VarS",
    "D_S_Uniform",
    "CAmin",
    "CAmax",
    "MinC",
    "AvgC",
    "VarC",
    "D_MaxC_AvgC",
    "B_Amax_MaxCa",
    "MaxPSa",
    "MinPSa",
    "AvgPSv",
    "P_lowC_highPSv",
    "P_lowPSv_highC",
    "SG_B_Amax",
    "SG_VarSAmax",
    "SG_D_MaxVarS_MinVarS",
    "SG_D_MaxES_MinES",
    "SG_D_MaxAvgC_MinAvgC",
    "SG_D_MaxVarC_MinVarC",
    "SG_VarCAmin",
    "SG_VarCAmax",
    "SG_AvgCAmin",
    "SG_AvgCAmax",
};

namespace {

// Group membership per row (0-based): rows 1-5 and 18-21 are voting; 6-12
// and 22-27 confidence; 13-15 predicted-support; 16-17 both of the latter.
constexpr bool kVotingRow[kNumFeatures] = {
    true,  true,  true,  true,  true,  false, false, false, false,
    false, false, false, false, false, false, false, false, true,
    true,  true,  true,  false, false, false, false, false, false};
constexpr bool kConfidenceRow[kNumFeatures] = {
    false, false, false, false, false, true,  true,  true,  true,
    true,  true,  true,  false, false, false, true,  true,  false,
    false, false, false, true,  true,  true,  true,  true,  true};
constexpr bool kPredictedRow[kNumFeatures] = {
    false, false, false, false, false, false, false, false, false,
    false, false, false, true,  true,  true,  true,  true,  false,
    false, false, false, false, false, false, false, false, false};

double entropy2(const std::vector<double>& dist) {
  double e = 0.0;
  for (double p : dist)
    if (p > 0.0) e -= p * std::log2(p);
  return e;
}

double l2_from_uniform(const std::vector<double>& dist) {
  double u = 1.0 / double(dist.size());
  double s = 0.0;
  for (double p : dist) s += (p - u) * (p - u);
  return std::sqrt(s);
}

// Per-sub-set summary reusing the case-model statistics.
struct SubStats {
  std::size_t a_max, a_min;
  double s_amax;       // support of the sub-set's own a_max
  double var_s, es;
  double avg_c, var_c;
  double c_amin, c_amax;  // 0 when that answer has no supporters here
};

SubStats stats_for_subset(const DecisionCase& c, const std::vector<std::size_t>& subset) {
  DecisionCase sub;
  sub.answers = c.answers;
  sub.responses.reserve(subset.size());
  for (std::size_t j : subset) sub.responses.push_back(c.responses[j]);
  auto sup = support_stats(sub);
  auto conf = confidence_stats(sub, sup);
  SubStats s{};
  s.a_max = sup.a_max;
  s.a_min = sup.a_min;
  s.s_amax = sup.support[sup.a_max];
  s.var_s = population_variance(sup.support);
  s.es = entropy2(sup.support);
  s.avg_c = conf.mean;
  s.var_c = conf.variance;
  s.c_amin = conf.per_answer_avg[sup.a_min].value_or(0.0);
  s.c_amax = conf.per_answer_avg[sup.a_max].value_or(0.0);
  return s;
}

}  // namespace

std::vector<std::size_t> active_feature_rows(const FeatureMask& mask) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (kVotingRow[i] && !mask.voting) continue;
    if (kConfidenceRow[i] && !mask.confidence) continue;
    if (kPredictedRow[i] && !mask.predicted_support) continue;
    rows.push_back(i);
  }
  return rows;
}

std::size_t subgroup_size(std::size_t n, const SubgroupPlan& plan) {
  auto sz = std::size_t(std::max<long long>(
      (long long)plan.min_size, std::llround(plan.fraction * double(n))));
  if (sz > n - 1) sz = n - 1;
  return sz;
}

std::vector<std::vector<std::size_t>> sample_subgroups(const DecisionCase& c,
                                                       const SubgroupPlan& plan) {
  const std::size_t n = c.responses.size();
  if (n < 2) fail("CaseTooSmall", "case '" + c.case_id + "' needs >=2 responses for sub-groups");

  // Canonical response order: sampling is keyed to content, not input order,
  // so featurization is invariant under response permutation.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    const Response& a = c.responses[x];
    const Response& b = c.responses[y];
    if (a.vote != b.vote) return a.vote < b.vote;
    if (a.confidence != b.confidence) return a.confidence < b.confidence;
    return a.predicted_support < b.predicted_support;
  });

  const std::size_t sz = subgroup_size(n, plan);
  const std::uint64_t case_seed = mix_seed(plan.seed, fnv1a(c.case_id));
  std::vector<std::vector<std::size_t>> out(plan.num_subgroups);
  for (std::size_t k = 0; k < plan.num_subgroups; ++k) {
    Rng rng(mix_seed(case_seed, k));
    auto positions = sample_without_replacement(n, sz, rng);
    out[k].reserve(sz);
    for (std::size_t p : positions) out[k].push_back(perm[p]);
  }
  return out;
}

std::array<double, 17> compute_global_features(const DecisionCase& c) {
  auto sup = support_stats(c);
  auto conf = confidence_stats(c, sup);
  auto ps = predicted_support_stats(c);
  const double n = double(c.responses.size());

  std::array<double, 17> f{};
  f[0] = n;
  f[1] = sup.support[sup.a_max] - sup.support[sup.a_min];
  f[2] = entropy2(sup.support);
  f[3] = population_variance(sup.support);
  f[4] = l2_from_uniform(sup.support);
  f[5] = conf.per_answer_avg[sup.a_min].value_or(0.0);
  f[6] = conf.per_answer_avg[sup.a_max].value_or(0.0);
  f[7] = conf.min;
  f[8] = conf.mean;
  f[9] = conf.variance;
  f[10] = conf.max - conf.mean;

  double max_ca = 0.0;
  bool any_ca = false;
  for (const auto& v : conf.per_answer_avg)
    if (v) {
      max_ca = any_ca ? std::max(max_ca, *v) : *v;
      any_ca = true;
    }
  f[11] = (any_ca && conf.per_answer_avg[sup.a_max] &&
           *conf.per_answer_avg[sup.a_max] == max_ca)
              ? 1.0
              : 0.0;

  f[12] = *std::max_element(ps.per_answer_avg.begin(), ps.per_answer_avg.end());
  f[13] = *std::min_element(ps.per_answer_avg.begin(), ps.per_answer_avg.end());
  f[14] = mean_of(ps.own_vote_ps);

  double low_c_high_psv = 0.0, low_psv_high_c = 0.0;
  for (std::size_t j = 0; j < c.responses.size(); ++j) {
    const Response& r = c.responses[j];
    if (r.confidence < conf.mean && ps.own_vote_ps[j] > f[14]) low_c_high_psv += 1.0;
    if (r.confidence > conf.mean && ps.own_vote_ps[j] < f[14]) low_psv_high_c += 1.0;
  }
  f[15] = low_c_high_psv / n;
  f[16] = low_psv_high_c / n;
  return f;
}

std::array<double, 10> compute_subgroup_features(
    const DecisionCase& c, const std::vector<std::vector<std::size_t>>& subgroups) {
  std::vector<SubStats> st;
  st.reserve(subgroups.size());
  for (const auto& sg : subgroups) st.push_back(stats_for_subset(c, sg));

  auto collect = [&](auto field) {
    std::vector<double> v;
    v.reserve(st.size());
    for (const auto& s : st) v.push_back(field(s));
    return v;
  };
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  };

  bool amax_differs = false;
  for (const auto& s : st)
    if (s.a_max != st.front().a_max) amax_differs = true;

  std::array<double, 10> f{};
  f[0] = amax_differs ? 1.0 : 0.0;
  f[1] = population_variance(collect([](const SubStats& s) { return s.s_amax; }));
  f[2] = spread(collect([](const SubStats& s) { return s.var_s; }));
  f[3] = spread(collect([](const SubStats& s) { return s.es; }));
  f[4] = spread(collect([](const SubStats& s) { return s.avg_c; }));
  f[5] = spread(collect([](const SubStats& s) { return s.var_c; }));
  f[6] = population_variance(collect([](const SubStats& s) { return s.c_amin; }));
  f[7] = population_variance(collect([](const SubStats& s) { return s.c_amax; }));
  f[8] = mean_of(collect([](const SubStats& s) { return s.c_amin; }));
  f[9] = mean_of(collect([](const SubStats& s) { return s.c_amax; }));
  return f;
}

CaseInstance featurize_case(const DecisionCase& c, const SubgroupPlan& plan) {
  CaseInstance inst;
  inst.case_id = c.case_id;
  auto global = compute_global_features(c);
  auto sg = compute_subgroup_features(c, sample_subgroups(c, plan));
  std::copy(global.begin(), global.end(), inst.features.begin());
  std::copy(sg.begin(), sg.end(), inst.features.begin() + 17);
  return inst;
}

}  // namespace quorum

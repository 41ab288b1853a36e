#pragma once

// Hand-rolled reference implementations used as test oracles: straight-line
// recomputations of the aggregation rules and the feature table, kept
// deliberately independent of the library code paths (plain loops, no shared
// helpers). Also the little case builders the suites share.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quorum/decision_case.hpp"
#include "quorum/rng.hpp"

namespace oracle {

// ---- case builders ----

inline quorum::Response resp(std::size_t vote, double conf, std::vector<double> ps) {
  quorum::Response r;
  r.vote = vote;
  r.confidence = conf;
  r.predicted_support = std::move(ps);
  return r;
}

inline quorum::DecisionCase make_case(std::string id, std::vector<std::string> answers,
                                      std::vector<quorum::Response> rs,
                                      std::optional<std::size_t> correct = std::nullopt) {
  quorum::DecisionCase c;
  c.case_id = std::move(id);
  c.answers = std::move(answers);
  c.responses = std::move(rs);
  c.correct = correct;
  return c;
}

// The worked two-answer example used throughout the suites: three A-voters
// of middling confidence, two confident B-voters, B correct.
inline quorum::DecisionCase case_x() {
  return make_case("case-x", {"A", "B"},
                   {resp(0, 0.9, {0.6, 0.4}), resp(0, 0.5, {0.7, 0.3}),
                    resp(0, 0.6, {0.8, 0.2}), resp(1, 1.0, {0.3, 0.7}),
                    resp(1, 0.9, {0.5, 0.5})},
                   1);
}

// A uniformly random, already-canonical case: confidences inside [0.05, 1]
// (no percent rescale) and predictions normalized to sum 1.
inline quorum::DecisionCase random_case(quorum::Rng& rng, std::size_t n_min, std::size_t n_max,
                                        std::size_t m_min = 2, std::size_t m_max = 2,
                                        bool labeled = true) {
  const std::size_t m = m_min + rng.next_below(m_max - m_min + 1);
  const std::size_t n = n_min + rng.next_below(n_max - n_min + 1);
  quorum::DecisionCase c;
  c.case_id = "r" + std::to_string(rng.next_u64() % 1000000);
  for (std::size_t a = 0; a < m; ++a) c.answers.push_back(std::string(1, char('A' + a)));
  for (std::size_t j = 0; j < n; ++j) {
    quorum::Response r;
    r.vote = rng.next_below(m);
    r.confidence = 0.05 + 0.95 * rng.next_double();
    double sum = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      double v = 0.05 + 0.95 * rng.next_double();
      r.predicted_support.push_back(v);
      sum += v;
    }
    for (double& v : r.predicted_support) v /= sum;
    c.responses.push_back(std::move(r));
  }
  if (labeled) c.correct = rng.next_below(m);
  return c;
}

// ---- direct recomputation of the aggregation rules ----
// Every tie goes to the lowest answer index unless stated otherwise.

inline std::size_t argmax_low(const std::vector<double>& xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[best]) best = i;
  return best;
}

inline std::vector<double> vote_shares(const quorum::DecisionCase& c) {
  std::vector<double> s(c.answers.size(), 0.0);
  for (const auto& r : c.responses) s[r.vote] += 1.0;
  for (double& v : s) v /= double(c.responses.size());
  return s;
}

// Mean confidence of an answer's supporters; empty when nobody voted for it.
inline std::optional<double> supporter_conf(const quorum::DecisionCase& c, std::size_t a) {
  double sum = 0.0;
  std::size_t k = 0;
  for (const auto& r : c.responses)
    if (r.vote == a) {
      sum += r.confidence;
      ++k;
    }
  if (k == 0) return std::nullopt;
  return sum / double(k);
}

inline std::size_t mr_choice(const quorum::DecisionCase& c) { return argmax_low(vote_shares(c)); }

inline std::size_t wc_choice(const quorum::DecisionCase& c) {
  auto s = vote_shares(c);
  std::vector<double> score(c.answers.size(), 0.0);
  for (std::size_t a = 0; a < c.answers.size(); ++a) {
    auto conf = supporter_conf(c, a);
    score[a] = conf ? s[a] * *conf : 0.0;
  }
  return argmax_low(score);
}

inline std::size_t hac_choice(const quorum::DecisionCase& c) {
  bool any = false;
  std::size_t best = 0;
  double best_v = 0.0;
  for (std::size_t a = 0; a < c.answers.size(); ++a) {
    auto conf = supporter_conf(c, a);
    if (!conf) continue;
    if (!any || *conf > best_v) {
      any = true;
      best = a;
      best_v = *conf;
    }
  }
  return best;
}

inline std::size_t sp_choice(const quorum::DecisionCase& c) {
  auto s = vote_shares(c);
  std::vector<double> score(c.answers.size(), 0.0);
  for (std::size_t a = 0; a < c.answers.size(); ++a) {
    double predicted = 0.0;
    for (const auto& r : c.responses) predicted += r.predicted_support[a];
    predicted /= double(c.responses.size());
    score[a] = s[a] - predicted;
  }
  return argmax_low(score);
}

// Opposition pick: fewest endorsements wins; ties avoid majority rule's
// choice, then take the lowest index.
inline std::size_t da_choice(std::size_t n_answers, const std::vector<std::size_t>& inputs,
                             std::size_t mr) {
  std::vector<std::size_t> counter(n_answers, 0);
  for (std::size_t ch : inputs) ++counter[ch];
  std::size_t lo = *std::min_element(counter.begin(), counter.end());
  for (std::size_t a = 0; a < n_answers; ++a)
    if (counter[a] == lo && a != mr) return a;
  return mr;
}

// The four standard choices plus the opposition pick, in canonical order
// (MR, HAC, WC, SP, DA).
inline std::array<std::size_t, 5> all_choices(const quorum::DecisionCase& c) {
  std::size_t mr = mr_choice(c);
  std::size_t hac = hac_choice(c);
  std::size_t wc = wc_choice(c);
  std::size_t sp = sp_choice(c);
  std::size_t da = da_choice(c.answers.size(), {mr, hac, wc, sp}, mr);
  return {mr, hac, wc, sp, da};
}

// ---- direct recomputation of the 27-row feature table ----

inline double pop_var(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= double(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return v / double(xs.size());
}

inline double mean(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / double(xs.size());
}

inline double entropy_bits(const std::vector<double>& dist) {
  double e = 0.0;
  for (double p : dist)
    if (p > 0.0) e -= p * std::log2(p);
  return e;
}

// Summary of one response sub-set, recomputed from scratch.
struct SubSummary {
  std::size_t a_max = 0, a_min = 0;
  double s_amax = 0.0, var_s = 0.0, es = 0.0;
  double avg_c = 0.0, var_c = 0.0;
  double c_amin = 0.0, c_amax = 0.0;  // 0 when unsupported inside the sub-set
};

inline SubSummary summarize_subset(const quorum::DecisionCase& c,
                                   const std::vector<std::size_t>& subset) {
  const std::size_t m = c.answers.size();
  std::vector<double> share(m, 0.0);
  std::vector<double> confs;
  for (std::size_t j : subset) {
    share[c.responses[j].vote] += 1.0;
    confs.push_back(c.responses[j].confidence);
  }
  for (double& v : share) v /= double(subset.size());

  SubSummary s;
  for (std::size_t a = 1; a < m; ++a) {
    if (share[a] > share[s.a_max]) s.a_max = a;
    if (share[a] < share[s.a_min]) s.a_min = a;
  }
  s.s_amax = share[s.a_max];
  s.var_s = pop_var(share);
  s.es = entropy_bits(share);
  s.avg_c = mean(confs);
  s.var_c = pop_var(confs);
  auto conf_of = [&](std::size_t a) {
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t j : subset)
      if (c.responses[j].vote == a) {
        sum += c.responses[j].confidence;
        ++k;
      }
    return k ? sum / double(k) : 0.0;
  };
  s.c_amin = conf_of(s.a_min);
  s.c_amax = conf_of(s.a_max);
  return s;
}

inline std::array<double, 27> features(const quorum::DecisionCase& c,
                                       const std::vector<std::vector<std::size_t>>& subgroups) {
  const std::size_t m = c.answers.size();
  const std::size_t n = c.responses.size();
  std::array<double, 27> f{};

  auto share = vote_shares(c);
  std::size_t a_max = 0, a_min = 0;
  for (std::size_t a = 1; a < m; ++a) {
    if (share[a] > share[a_max]) a_max = a;
    if (share[a] < share[a_min]) a_min = a;
  }

  f[0] = double(n);
  f[1] = share[a_max] - share[a_min];
  f[2] = entropy_bits(share);
  f[3] = pop_var(share);
  double d2 = 0.0;
  for (double v : share) d2 += (v - 1.0 / double(m)) * (v - 1.0 / double(m));
  f[4] = std::sqrt(d2);

  auto ca_min = supporter_conf(c, a_min);
  auto ca_max = supporter_conf(c, a_max);
  f[5] = ca_min.value_or(0.0);
  f[6] = ca_max.value_or(0.0);

  std::vector<double> confs;
  for (const auto& r : c.responses) confs.push_back(r.confidence);
  f[7] = *std::min_element(confs.begin(), confs.end());
  f[8] = mean(confs);
  f[9] = pop_var(confs);
  f[10] = *std::max_element(confs.begin(), confs.end()) - f[8];

  double best_ca = 0.0;
  bool seen = false;
  for (std::size_t a = 0; a < m; ++a)
    if (auto v = supporter_conf(c, a)) {
      best_ca = seen ? std::max(best_ca, *v) : *v;
      seen = true;
    }
  f[11] = (ca_max && *ca_max == best_ca) ? 1.0 : 0.0;

  std::vector<double> ps_avg(m, 0.0);
  for (const auto& r : c.responses)
    for (std::size_t a = 0; a < m; ++a) ps_avg[a] += r.predicted_support[a];
  for (double& v : ps_avg) v /= double(n);
  f[12] = *std::max_element(ps_avg.begin(), ps_avg.end());
  f[13] = *std::min_element(ps_avg.begin(), ps_avg.end());

  std::vector<double> own;
  for (const auto& r : c.responses) own.push_back(r.predicted_support[r.vote]);
  f[14] = mean(own);

  double p16 = 0.0, p17 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (confs[j] < f[8] && own[j] > f[14]) p16 += 1.0;
    if (confs[j] > f[8] && own[j] < f[14]) p17 += 1.0;
  }
  f[15] = p16 / double(n);
  f[16] = p17 / double(n);

  std::vector<SubSummary> subs;
  for (const auto& sg : subgroups) subs.push_back(summarize_subset(c, sg));
  bool differ = false;
  for (const auto& s : subs)
    if (s.a_max != subs.front().a_max) differ = true;
  auto pull = [&](double SubSummary::*field) {
    std::vector<double> v;
    for (const auto& s : subs) v.push_back(s.*field);
    return v;
  };
  auto spread = [](std::vector<double> v) {
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  };
  f[17] = differ ? 1.0 : 0.0;
  f[18] = pop_var(pull(&SubSummary::s_amax));
  f[19] = spread(pull(&SubSummary::var_s));
  f[20] = spread(pull(&SubSummary::es));
  f[21] = spread(pull(&SubSummary::avg_c));
  f[22] = spread(pull(&SubSummary::var_c));
  f[23] = pop_var(pull(&SubSummary::c_amin));
  f[24] = pop_var(pull(&SubSummary::c_amax));
  f[25] = mean(pull(&SubSummary::c_amin));
  f[26] = mean(pull(&SubSummary::c_amax));
  return f;
}

}  // namespace oracle

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "quorum/errors.hpp"
#include "quorum/features.hpp"
#include "quorum/rng.hpp"

using namespace quorum;

TEST_CASE("feature names are the table rows in order") {
  REQUIRE(kNumFeatures == 27);
  CHECK(std::string(kFeatureNames[0]) == "N");
  CHECK(std::string(kFeatureNames[4]) == "D_S_Uniform");
  CHECK(std::string(kFeatureNames[11]) == "B_Amax_MaxCa");
  CHECK(std::string(kFeatureNames[16]) == "P_lowPSv_highC");
  CHECK(std::string(kFeatureNames[17]) == "SG_B_Amax");
  CHECK(std::string(kFeatureNames[26]) == "SG_AvgCAmax");
}

TEST_CASE("worked example: full-set rows") {
  auto f = compute_global_features(oracle::case_x());
  // Exact decimals first.
  CHECK(f[0] == doctest::Approx(5.0).epsilon(1e-12));       // N
  CHECK(f[1] == doctest::Approx(0.2).epsilon(1e-12));       // D_Smax_Smin
  CHECK(f[3] == doctest::Approx(0.01).epsilon(1e-12));      // VarS
  CHECK(f[5] == doctest::Approx(0.95).epsilon(1e-12));      // CAmin
  CHECK(f[7] == doctest::Approx(0.5).epsilon(1e-12));       // MinC
  CHECK(f[8] == doctest::Approx(0.78).epsilon(1e-12));      // AvgC
  CHECK(f[9] == doctest::Approx(0.0376).epsilon(1e-12));    // VarC
  CHECK(f[10] == doctest::Approx(0.22).epsilon(1e-12));     // D_MaxC_AvgC
  CHECK(f[11] == doctest::Approx(0.0).epsilon(1e-12));      // B_Amax_MaxCa
  CHECK(f[12] == doctest::Approx(0.58).epsilon(1e-12));     // MaxPSa
  CHECK(f[13] == doctest::Approx(0.42).epsilon(1e-12));     // MinPSa
  CHECK(f[14] == doctest::Approx(0.66).epsilon(1e-12));     // AvgPSv
  CHECK(f[15] == doctest::Approx(0.4).epsilon(1e-12));      // P_lowC_highPSv
  CHECK(f[16] == doctest::Approx(0.4).epsilon(1e-12));      // P_lowPSv_highC
  // Rounded table prints, held to half an ulp of the 5th decimal.
  CHECK(f[2] == doctest::Approx(0.97095).epsilon(5e-6));    // ES, bits
  CHECK(f[4] == doctest::Approx(0.14142).epsilon(5e-6));    // L2 from uniform
  CHECK(f[6] == doctest::Approx(0.66667).epsilon(5e-6));    // CAmax
}

TEST_CASE("worked example: two hand-built sub-sets") {
  auto c = oracle::case_x();
  std::vector<std::vector<std::size_t>> subs = {{0, 1, 3}, {2, 3, 4}};
  auto f = compute_subgroup_features(c, subs);
  // The sub-sets elect different answers, with equal winning shares.
  CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));              // SG_B_Amax
  CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-12));              // SG_VarSAmax
  CHECK(f[4] == doctest::Approx(0.8333333333333334 - 0.8).epsilon(1e-9));  // SG_D_MaxAvgC_MinAvgC
  // Same support profile both times: the vote-dispersion spreads vanish.
  CHECK(f[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f[3] == doctest::Approx(0.0).epsilon(1e-12));
  // Winner/loser confidence aggregates, straight arithmetic.
  CHECK(f[7] == doctest::Approx(0.015625).epsilon(1e-12));  // SG_VarCAmax of {0.7, 0.95}
  CHECK(f[9] == doctest::Approx(0.825).epsilon(1e-12));     // SG_AvgCAmax
  CHECK(f[6] == doctest::Approx(0.04).epsilon(1e-12));      // SG_VarCAmin of {1.0, 0.6}
  CHECK(f[8] == doctest::Approx(0.8).epsilon(1e-12));       // SG_AvgCAmin

  // Identical sub-sets leave every sub-group row at zero spread.
  std::vector<std::vector<std::size_t>> same = {{0, 1, 3}, {0, 1, 3}, {0, 1, 3}};
  auto g = compute_subgroup_features(c, same);
  CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (std::size_t i : {1, 2, 3, 4, 5, 6, 7}) CHECK(g[i] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sub-set size rule") {
  SubgroupPlan plan;
  CHECK(subgroup_size(70, plan) == 35);
  CHECK(subgroup_size(5, plan) == 3);
  CHECK(subgroup_size(4, plan) == 3);
  CHECK(subgroup_size(2, plan) == 1);  // capped at N-1
  plan.fraction = 0.3;
  plan.min_size = 2;
  CHECK(subgroup_size(10, plan) == 3);
  CHECK(subgroup_size(3, plan) == 2);

  auto tiny = oracle::make_case("tiny", {"A", "B"}, {oracle::resp(0, 0.5, {0.5, 0.5})});
  CHECK_THROWS_AS(sample_subgroups(tiny, SubgroupPlan{}), Error);
  try {
    sample_subgroups(tiny, SubgroupPlan{});
  } catch (const Error& e) {
    CHECK(e.code == "CaseTooSmall");
  }
}

TEST_CASE("sampling is reproducible and keyed to content, not input order") {
  Rng rng(601);
  for (int t = 0; t < 20; ++t) {
    auto c = oracle::random_case(rng, 4, 15, 2, 3);
    SubgroupPlan plan;
    plan.seed = 77;

    auto inst1 = featurize_case(c, plan);
    auto inst2 = featurize_case(c, plan);
    CHECK(inst1.features == inst2.features);

    auto shuffled = c;
    std::vector<std::size_t> perm(c.responses.size());
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    shuffle_indices(perm, rng);
    for (std::size_t j = 0; j < perm.size(); ++j) shuffled.responses[j] = c.responses[perm[j]];
    auto inst3 = featurize_case(shuffled, plan);
    for (std::size_t i = 0; i < kNumFeatures; ++i)
      CHECK(inst1.features[i] == doctest::Approx(inst3.features[i]).epsilon(1e-12));

    // A different seed draws different sub-sets for at least some cases.
    SubgroupPlan other = plan;
    other.seed = 78;
    auto s1 = sample_subgroups(c, plan);
    auto s2 = sample_subgroups(c, other);
    CHECK(s1.size() == plan.num_subgroups);
    for (const auto& sg : s1) CHECK(sg.size() == subgroup_size(c.responses.size(), plan));
    (void)s2;
  }
}

TEST_CASE("random cases match the direct recomputation row for row") {
  Rng rng(602);
  for (int t = 0; t < 60; ++t) {
    auto c = oracle::random_case(rng, 2, 8, 2, 4);
    SubgroupPlan plan;
    plan.seed = 900 + std::uint64_t(t);
    auto subs = sample_subgroups(c, plan);
    auto expect = oracle::features(c, subs);
    auto inst = featurize_case(c, plan);
    for (std::size_t i = 0; i < kNumFeatures; ++i)
      CHECK(inst.features[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("masks keep exactly their group's rows") {
  auto rows_of = [](bool v, bool cf, bool ps) {
    FeatureMask m;
    m.voting = v;
    m.confidence = cf;
    m.predicted_support = ps;
    return active_feature_rows(m);
  };

  auto full = rows_of(true, true, true);
  REQUIRE(full.size() == kNumFeatures);
  for (std::size_t i = 0; i < kNumFeatures; ++i) CHECK(full[i] == i);

  CHECK(rows_of(true, false, false) ==
        std::vector<std::size_t>{0, 1, 2, 3, 4, 17, 18, 19, 20});
  CHECK(rows_of(false, true, false) ==
        std::vector<std::size_t>{5, 6, 7, 8, 9, 10, 11, 21, 22, 23, 24, 25, 26});
  CHECK(rows_of(false, false, true) == std::vector<std::size_t>{12, 13, 14});

  // Rows 16-17 (1-based) need both confidence and predicted support.
  auto no_ps = rows_of(true, true, false);
  CHECK(no_ps.size() == 22);
  CHECK(std::find(no_ps.begin(), no_ps.end(), 15) == no_ps.end());
  CHECK(std::find(no_ps.begin(), no_ps.end(), 16) == no_ps.end());
  auto no_conf = rows_of(true, false, true);
  CHECK(no_conf.size() == 12);
  CHECK(std::find(no_conf.begin(), no_conf.end(), 15) == no_conf.end());
  CHECK(std::find(no_conf.begin(), no_conf.end(), 16) == no_conf.end());
}

#include <set>
#include <string>

#include "doctest.h"
#include "quorum/aggregators.hpp"
#include "quorum/decision_case.hpp"
#include "quorum/errors.hpp"
#include "quorum/synth.hpp"

using namespace quorum;

namespace {

std::array<int, 5> outcome_bits(const DecisionCase& c) {
  std::array<int, 5> out{};
  auto results = aggregate_all(c);
  for (std::size_t i = 0; i < results.size(); ++i) out[i] = *results[i].outcome;
  return out;
}

}  // namespace

TEST_CASE("regime names") {
  CHECK(std::string(regime_name(Regime::EASY_MAJORITY)) == "EASY_MAJORITY");
  CHECK(std::string(regime_name(Regime::MISLEADING)) == "MISLEADING");
  CHECK(std::string(regime_name(Regime::CONFIDENT_MINORITY)) == "CONFIDENT_MINORITY");
  CHECK(std::string(regime_name(Regime::DA_ONLY)) == "DA_ONLY");
  CHECK(std::string(regime_name(Regime::NOISE)) == "NOISE");
}

TEST_CASE("generated cases are valid, bounded, and non-degenerate") {
  for (Regime r : {Regime::EASY_MAJORITY, Regime::MISLEADING, Regime::CONFIDENT_MINORITY,
                   Regime::DA_ONLY, Regime::NOISE}) {
    auto spec = default_regime(r);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      auto c = generate_case(spec, seed);
      CHECK(c.answers.size() == 2);
      CHECK(c.responses.size() >= spec.n_min);
      CHECK(c.responses.size() <= spec.n_max);
      REQUIRE(c.correct.has_value());

      // Already canonical: a validation pass is the identity.
      auto v = validate_case(c);
      for (std::size_t j = 0; j < c.responses.size(); ++j) {
        CHECK(v.responses[j].confidence == c.responses[j].confidence);
        CHECK(v.responses[j].predicted_support == c.responses[j].predicted_support);
      }

      std::size_t hits = 0;
      for (const auto& resp : c.responses)
        if (resp.vote == *c.correct) ++hits;
      CHECK(hits > 0);
      CHECK(hits < c.responses.size());
    }
  }
}

TEST_CASE("each regime guarantees its outcome pattern") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto easy = outcome_bits(generate_case(default_regime(Regime::EASY_MAJORITY), seed));
    CHECK(easy[0] == 1);

    auto mis = outcome_bits(generate_case(default_regime(Regime::MISLEADING), seed));
    CHECK(mis[0] == 0);
    CHECK(mis[3] == 1);

    auto conf = outcome_bits(generate_case(default_regime(Regime::CONFIDENT_MINORITY), seed));
    CHECK(conf[0] == 0);
    CHECK(conf[1] == 1);

    auto da = outcome_bits(generate_case(default_regime(Regime::DA_ONLY), seed));
    CHECK(da == std::array<int, 5>{0, 0, 0, 0, 1});
  }
}

TEST_CASE("generation is deterministic in the seed") {
  auto spec = default_regime(Regime::MISLEADING);
  auto a = generate_case(spec, 42);
  auto b = generate_case(spec, 42);
  auto c = generate_case(spec, 43);
  REQUIRE(a.responses.size() == b.responses.size());
  CHECK(a.correct == b.correct);
  for (std::size_t j = 0; j < a.responses.size(); ++j) {
    CHECK(a.responses[j].vote == b.responses[j].vote);
    CHECK(a.responses[j].confidence == b.responses[j].confidence);
    CHECK(a.responses[j].predicted_support == b.responses[j].predicted_support);
  }
  bool differs = a.responses.size() != c.responses.size() || a.correct != c.correct;
  if (!differs)
    for (std::size_t j = 0; j < a.responses.size(); ++j)
      if (a.responses[j].confidence != c.responses[j].confidence) differs = true;
  CHECK(differs);
}

TEST_CASE("corpus generation: counts, tags, names, and shuffling") {
  std::vector<std::pair<RegimeSpec, std::size_t>> mix = {
      {default_regime(Regime::EASY_MAJORITY), 20},
      {default_regime(Regime::DA_ONLY), 10},
  };
  auto tc = generate_corpus(mix, 7);
  REQUIRE(tc.cases.size() == 30);
  REQUIRE(tc.tags.size() == 30);

  std::size_t easy = 0, da = 0;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tc.cases.size(); ++i) {
    ids.insert(tc.cases[i].case_id);
    auto bits = outcome_bits(tc.cases[i]);
    if (tc.tags[i] == Regime::EASY_MAJORITY) {
      ++easy;
      CHECK(bits[0] == 1);
    } else {
      ++da;
      CHECK(bits == std::array<int, 5>{0, 0, 0, 0, 1});
    }
  }
  CHECK(easy == 20);
  CHECK(da == 10);
  CHECK(ids.size() == 30);  // sequential names, so all distinct
  CHECK(tc.cases.front().case_id == "c00000");

  // The regimes are interleaved, not left in blocks.
  bool interleaved = false;
  for (std::size_t i = 0; i + 1 < 20; ++i)
    if (tc.tags[i] == Regime::DA_ONLY) interleaved = true;
  CHECK(interleaved);

  // Same seed, same corpus; the tag stream too.
  auto again = generate_corpus(mix, 7);
  CHECK(again.tags == tc.tags);
  for (std::size_t i = 0; i < tc.cases.size(); ++i) {
    CHECK(again.cases[i].case_id == tc.cases[i].case_id);
    CHECK(again.cases[i].correct == tc.cases[i].correct);
    REQUIRE(again.cases[i].responses.size() == tc.cases[i].responses.size());
    for (std::size_t j = 0; j < tc.cases[i].responses.size(); ++j)
      CHECK(again.cases[i].responses[j].confidence == tc.cases[i].responses[j].confidence);
  }
}

TEST_CASE("the standard mixture") {
  auto mix = default_mixture();
  REQUIRE(mix.size() == 5);
  CHECK(mix[0].first.regime == Regime::EASY_MAJORITY);
  CHECK(mix[0].second == 150);
  CHECK(mix[1].first.regime == Regime::MISLEADING);
  CHECK(mix[1].second == 150);
  CHECK(mix[2].first.regime == Regime::CONFIDENT_MINORITY);
  CHECK(mix[2].second == 100);
  CHECK(mix[3].first.regime == Regime::DA_ONLY);
  CHECK(mix[3].second == 50);
  CHECK(mix[4].first.regime == Regime::NOISE);
  CHECK(mix[4].second == 50);
}

TEST_CASE("an impossible regime reports failure instead of looping") {
  // Demanding that majority rule fails while every voter is right cannot be
  // satisfied; the generator must give up with a stable code.
  auto spec = default_regime(Regime::DA_ONLY);
  spec.p_correct = 0.99;
  spec.n_min = 80;
  spec.n_max = 100;
  try {
    generate_case(spec, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == "RegimeUnsatisfiable");
  }
}

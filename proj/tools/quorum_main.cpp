// Command-line surface: dataset validation, featurization, uniform
// aggregation, model selection, evaluation, ablation, coverage, significance
// tests, and synthetic corpus generation. Text goes to stdout (6 significant
// digits); --out writes the full-precision structured artifact.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quorum/dataset.hpp"
#include "quorum/errors.hpp"
#include "quorum/evaluation.hpp"
#include "quorum/run_config.hpp"
#include "quorum/synth.hpp"

namespace {

using namespace quorum;

std::string error_record(const std::string& code, const std::string& message) {
  return nlohmann::json{{"error", code}, {"message", message}}.dump() + "\n";
}

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) parts.push_back(item);
  return parts;
}

std::string upper(std::string s) {
  for (char& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<MethodId> parse_methods(const std::string& csv) {
  std::vector<MethodId> methods;
  for (const auto& tok : split_csv(csv)) {
    auto m = method_from_name(upper(tok));
    if (!m) fail("UsageError", "unknown method: " + tok);
    if (std::find(methods.begin(), methods.end(), *m) != methods.end())
      fail("UsageError", "method listed twice: " + tok);
    methods.push_back(*m);
  }
  if (methods.empty()) fail("UsageError", "--methods must name at least one method");
  std::sort(methods.begin(), methods.end());
  return methods;
}

Technique parse_candidate(Approach approach, const std::string& name) {
  Technique t;
  for (const Technique& cand : technique_grid(approach))
    if (upper(name) == technique_name(approach, cand)) return cand;
  fail("UsageError", "unknown candidate for " + approach_name(approach) + ": " + name);
}

Regime regime_from_cli(const std::string& name) {
  const std::string u = upper(name);
  if (u == "EASY_MAJORITY" || u == "EASY") return Regime::EASY_MAJORITY;
  if (u == "MISLEADING") return Regime::MISLEADING;
  if (u == "CONFIDENT_MINORITY" || u == "CONFIDENT") return Regime::CONFIDENT_MINORITY;
  if (u == "DA_ONLY") return Regime::DA_ONLY;
  if (u == "NOISE") return Regime::NOISE;
  fail("UsageError", "unknown regime: " + name);
}

// Scale the standard mixture to `n` cases, proportionally with
// largest-remainder rounding.
std::vector<std::pair<RegimeSpec, std::size_t>> scaled_default_mixture(std::size_t n) {
  auto mix = default_mixture();
  std::size_t total = 0;
  for (const auto& [spec, count] : mix) total += count;
  if (n == 0 || n == total) return mix;
  std::vector<std::size_t> scaled(mix.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> rema;  // (total - remainder, slot)
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    scaled[i] = n * mix[i].second / total;
    rema.emplace_back(total - n * mix[i].second % total, i);
    assigned += scaled[i];
  }
  std::sort(rema.begin(), rema.end());
  for (std::size_t r = 0; assigned < n && r < rema.size(); ++r, ++assigned)
    scaled[rema[r].second]++;
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i].second = scaled[i];
  return mix;
}

std::vector<std::pair<RegimeSpec, std::size_t>> parse_mixture(const std::string& text,
                                                              std::size_t n) {
  if (text == "default") return scaled_default_mixture(n);
  std::vector<std::pair<RegimeSpec, std::size_t>> mix;
  for (const auto& tok : split_csv(text)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      fail("UsageError", "mixture entries look like regime=count: " + tok);
    const Regime r = regime_from_cli(tok.substr(0, eq));
    const long count = std::atol(tok.substr(eq + 1).c_str());
    if (count <= 0) fail("UsageError", "mixture counts must be positive: " + tok);
    mix.emplace_back(default_regime(r), std::size_t(count));
  }
  if (mix.empty()) fail("UsageError", "empty mixture");
  return mix;
}

void write_artifact(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail("WriteError", "cannot open for writing: " + path);
  out << content;
  if (!out) fail("WriteError", "failed writing: " + path);
}

struct Cli {
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;

  std::string data_path, out_path;
  std::string approach_str = "amp", methods_csv, exclude_csv, candidates_csv;
  std::string mixture = "default", mcnemar_args, proportion_args;
  std::size_t synth_n = 0;
  bool keep_degenerate = false, ladder = false, exact = false;
  CLI::Option* approach_opt = nullptr;
  CLI::Option* methods_opt = nullptr;

  RunConfig make_config() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (seed_opt->count()) c.seed = seed;
    if (workers_opt->count()) c.workers = workers;
    if (approach_opt->count() || config_path.empty())
      c.approach = approach_from_name(approach_str);
    if (methods_opt->count()) c.included = parse_methods(methods_csv);
    if (keep_degenerate) c.exclude_degenerate = false;
    return c;
  }

  std::vector<DecisionCase> load_corpus(const RunConfig& c) const {
    return load_and_filter(data_path, c.exclude_degenerate).corpus;
  }
};

void cmd_validate(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const LoadResult r = load_and_filter(cli.data_path, cfg.exclude_degenerate);
  std::cout << "cases:    " << r.corpus.size() << "\n";
  std::cout << "excluded: " << r.excluded.size() << "\n";
  for (const auto& e : r.excluded)
    std::cout << "  " << e.case_id << " share=" << g6(e.share) << "\n";
  nlohmann::json exc = nlohmann::json::array();
  for (const auto& e : r.excluded)
    exc.push_back({{"case_id", e.case_id}, {"share", e.share}});
  write_artifact(cli.out_path, nlohmann::json{{"schema", "quorum.validate.v1"},
                                              {"config_hash", config_hash(cfg)},
                                              {"seed", cfg.seed},
                                              {"cases", r.corpus.size()},
                                              {"excluded", exc}}
                                   .dump(2) +
                                   "\n");
}

void cmd_featurize(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  if (cli.out_path.empty()) fail("UsageError", "featurize needs --out <matrix.csv>");
  const auto corpus = cli.load_corpus(cfg);
  export_feature_matrix(corpus, cfg.approach, cfg, cli.out_path);
  std::cout << "cases: " << corpus.size() << "\n";
  std::cout << "wrote: " << cli.out_path << "\n";
}

void cmd_aggregate(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const auto corpus = cli.load_corpus(cfg);
  const auto& methods = cfg.included;
  std::vector<std::size_t> hits(methods.size(), 0);
  std::size_t labeled = 0;
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : corpus) {
    const auto results = aggregate_subset(c, methods);
    std::cout << c.case_id << ":";
    nlohmann::json choices, outcomes;
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const AggregationResult* r = nullptr;
      for (const auto& cand : results)
        if (cand.method == methods[k]) r = &cand;
      std::cout << " " << method_name(methods[k]) << "=" << c.answers[r->chosen];
      choices[method_name(methods[k])] = c.answers[r->chosen];
      if (r->outcome) {
        outcomes[method_name(methods[k])] = *r->outcome;
        hits[k] += std::size_t(*r->outcome);
      }
    }
    std::cout << "\n";
    nlohmann::json rec{{"case_id", c.case_id}, {"choices", choices}};
    if (c.correct) rec["outcomes"] = outcomes;
    cases.push_back(rec);
    labeled += std::size_t(bool(c.correct));
  }
  nlohmann::json summary;
  if (labeled > 0) {
    std::cout << "success rates (" << labeled << " labeled cases):\n";
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const double rate = double(hits[k]) / double(labeled);
      std::cout << "  " << method_name(methods[k]) << " " << g6(rate) << "\n";
      summary[method_name(methods[k])] = rate;
    }
  }
  write_artifact(cli.out_path, nlohmann::json{{"schema", "quorum.aggregate.v1"},
                                              {"config_hash", config_hash(cfg)},
                                              {"seed", cfg.seed},
                                              {"labeled", labeled},
                                              {"success", summary},
                                              {"cases", cases}}
                                   .dump(2) +
                                   "\n");
}

void cmd_model_select(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const auto corpus = cli.load_corpus(cfg);
  std::vector<Technique> grid;
  if (!cli.candidates_csv.empty())
    for (const auto& name : split_csv(cli.candidates_csv))
      grid.push_back(parse_candidate(cfg.approach, name));
  else
    grid = technique_grid(cfg.approach);
  const ModelSelectionResult res =
      nested_model_selection(corpus, cfg.approach, grid, eval_options(cfg));
  std::cout << selection_to_text(res);
  write_artifact(cli.out_path, selection_to_json(res));
}

void cmd_evaluate(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const auto corpus = cli.load_corpus(cfg);
  const EvaluationReport rep =
      loo_evaluate(corpus, cfg.approach, config_technique(cfg), eval_options(cfg));
  std::cout << report_to_text(rep);
  write_artifact(cli.out_path, report_to_json(rep));
}

void cmd_ablate(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const auto corpus = cli.load_corpus(cfg);
  std::vector<AblationRow> rows;
  if (cli.ladder)
    for (const Exclusion& e : ablation_ladder())
      rows.push_back(ablate(corpus, cfg.approach, config_technique(cfg), e, eval_options(cfg)));
  else
    rows.push_back(ablate(corpus, cfg.approach, config_technique(cfg),
                          parse_exclusion(split_csv(cli.exclude_csv)), eval_options(cfg)));
  std::cout << ablation_to_text(rows);
  write_artifact(cli.out_path, ablation_to_json(rows));
}

void cmd_coverage(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  const auto corpus = cli.load_corpus(cfg);
  const CoverageReport rep = coverage_analysis(corpus, cfg.included, cfg.workers);
  std::cout << coverage_to_text(rep);
  write_artifact(cli.out_path, coverage_to_json(rep));
}

void cmd_stats(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  nlohmann::json results = nlohmann::json::array();
  if (!cli.mcnemar_args.empty()) {
    const auto parts = split_csv(cli.mcnemar_args);
    if (parts.size() != 2) fail("UsageError", "--mcnemar wants b,c");
    const TestResult t = mcnemar_counts(std::size_t(std::atol(parts[0].c_str())),
                                        std::size_t(std::atol(parts[1].c_str())), cli.exact);
    std::cout << "mcnemar: x2=" << g6(t.statistic) << " p=" << g6(t.p_value) << "\n";
    results.push_back({{"test", "mcnemar"}, {"statistic", t.statistic}, {"p_value", t.p_value}});
  }
  if (!cli.proportion_args.empty()) {
    const auto parts = split_csv(cli.proportion_args);
    if (parts.size() != 4) fail("UsageError", "--proportion wants s1,n1,s2,n2");
    const TestResult t = proportion_test(
        std::size_t(std::atol(parts[0].c_str())), std::size_t(std::atol(parts[1].c_str())),
        std::size_t(std::atol(parts[2].c_str())), std::size_t(std::atol(parts[3].c_str())));
    std::cout << "proportion: z=" << g6(t.statistic) << " p=" << g6(t.p_value) << "\n";
    results.push_back({{"test", "proportion"}, {"statistic", t.statistic}, {"p_value", t.p_value}});
  }
  if (cli.mcnemar_args.empty() && cli.proportion_args.empty()) {
    if (cli.data_path.empty())
      fail("UsageError", "stats wants a dataset or --mcnemar/--proportion counts");
    const auto corpus = cli.load_corpus(cfg);
    const auto& methods = cfg.included;
    std::vector<std::vector<int>> bits(methods.size(), std::vector<int>(corpus.size(), 0));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (!corpus[i].correct)
        fail("MissingGroundTruth", "case " + corpus[i].case_id + " carries no correct answer");
      const auto results_i = aggregate_subset(corpus[i], methods);
      for (std::size_t k = 0; k < methods.size(); ++k)
        for (const auto& r : results_i)
          if (r.method == methods[k]) bits[k][i] = r.outcome.value_or(0);
    }
    for (std::size_t a = 0; a < methods.size(); ++a)
      for (std::size_t b = a + 1; b < methods.size(); ++b) {
        const TestResult mc = mcnemar_test(bits[a], bits[b], cli.exact);
        std::size_t sa = 0, sb = 0;
        for (int v : bits[a]) sa += std::size_t(v);
        for (int v : bits[b]) sb += std::size_t(v);
        const TestResult pz = proportion_test(sa, corpus.size(), sb, corpus.size());
        std::cout << method_name(methods[a]) << " vs " << method_name(methods[b])
                  << ": mcnemar_x2=" << g6(mc.statistic) << " mcnemar_p=" << g6(mc.p_value)
                  << " prop_z=" << g6(pz.statistic) << " prop_p=" << g6(pz.p_value) << "\n";
        results.push_back({{"first", method_name(methods[a])},
                           {"second", method_name(methods[b])},
                           {"mcnemar", {{"statistic", mc.statistic}, {"p_value", mc.p_value}}},
                           {"proportion", {{"statistic", pz.statistic}, {"p_value", pz.p_value}}}});
      }
  }
  write_artifact(cli.out_path, nlohmann::json{{"schema", "quorum.stats.v1"},
                                              {"config_hash", config_hash(cfg)},
                                              {"seed", cfg.seed},
                                              {"results", results}}
                                   .dump(2) +
                                   "\n");
}

void cmd_synth(const Cli& cli) {
  const RunConfig cfg = cli.make_config();
  if (cli.out_path.empty()) fail("UsageError", "synth needs --out <data.jsonl>");
  const auto mix = parse_mixture(cli.mixture, cli.synth_n);
  const TaggedCorpus tc = generate_corpus(mix, cfg.seed);
  save_dataset(tc.cases, cli.out_path);
  std::cout << "cases: " << tc.cases.size() << "\n";
  for (const auto& [spec, count] : mix)
    std::cout << "  " << regime_name(spec.regime) << " " << count << "\n";
  std::cout << "seed:  " << cfg.seed << "\n";
  std::cout << "wrote: " << cli.out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-shot collective-decision aggregation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Cli cli;

  app.add_option("--config", cli.config_path, "run configuration file (JSON)");
  cli.seed_opt = app.add_option("--seed", cli.seed, "master seed (overrides config)");
  cli.workers_opt = app.add_option("--workers", cli.workers, "worker threads (overrides config)");

  auto add_data = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("data", cli.data_path, "dataset file (JSONL)");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub, const char* help) {
    sub->add_option("--out", cli.out_path, help);
  };
  auto add_approach = [&](CLI::App* sub) {
    cli.approach_opt = sub->add_option("--approach", cli.approach_str, "amp or dap");
  };
  auto add_keep = [&](CLI::App* sub) {
    sub->add_flag("--keep-degenerate", cli.keep_degenerate,
                  "keep cases with a 0 or 1 correct-vote share");
  };

  auto* validate = app.add_subcommand("validate", "parse, validate, and filter a dataset");
  add_data(validate);
  add_keep(validate);
  add_out(validate, "write the validation summary (JSON)");
  validate->callback([&] { cmd_validate(cli); });

  auto* featurize = app.add_subcommand("featurize", "export the instance matrix (CSV)");
  add_data(featurize);
  add_approach(featurize);
  add_keep(featurize);
  add_out(featurize, "matrix output path (required)");
  featurize->callback([&] { cmd_featurize(cli); });

  auto* aggregate = app.add_subcommand("aggregate", "run uniform methods over a dataset");
  add_data(aggregate);
  cli.methods_opt = aggregate->add_option("--methods", cli.methods_csv,
                                          "comma-separated methods (default all)");
  add_keep(aggregate);
  add_out(aggregate, "write per-case choices and rates (JSON)");
  aggregate->callback([&] { cmd_aggregate(cli); });

  auto* select = app.add_subcommand("model-select", "nested cross-validated model selection");
  add_data(select);
  add_approach(select);
  select->add_option("--candidates", cli.candidates_csv,
                     "comma-separated candidate names (default: full grid)");
  add_keep(select);
  add_out(select, "write the selection grid (JSON)");
  select->callback([&] { cmd_model_select(cli); });

  auto* evaluate = app.add_subcommand("evaluate", "leave-one-out evaluation of one technique");
  add_data(evaluate);
  add_approach(evaluate);
  add_keep(evaluate);
  add_out(evaluate, "write the evaluation report (JSON)");
  evaluate->callback([&] { cmd_evaluate(cli); });

  auto* ablate = app.add_subcommand("ablate", "re-evaluate with components excluded");
  add_data(ablate);
  add_approach(ablate);
  ablate->add_option("--exclude", cli.exclude_csv,
                     "components: confidence, ps, wc_hac, sp, da (comma-separated)");
  ablate->add_flag("--ladder", cli.ladder, "run the standard exclusion ladder");
  add_keep(ablate);
  add_out(ablate, "write the ablation rows (JSON)");
  ablate->callback([&] { cmd_ablate(cli); });

  auto* coverage = app.add_subcommand("coverage", "which cases each method solves");
  add_data(coverage);
  add_keep(coverage);
  add_out(coverage, "write the coverage report (JSON)");
  coverage->callback([&] { cmd_coverage(cli); });

  auto* stats = app.add_subcommand("stats", "significance tests");
  add_data(stats, false);
  stats->add_option("--mcnemar", cli.mcnemar_args, "discordant counts b,c");
  stats->add_option("--proportion", cli.proportion_args, "success counts s1,n1,s2,n2");
  stats->add_flag("--exact", cli.exact, "exact binomial p-value for the paired test");
  add_keep(stats);
  add_out(stats, "write the test results (JSON)");
  stats->callback([&] { cmd_stats(cli); });

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--mixture", cli.mixture,
                    "\"default\" or regime=count list (easy,misleading,confident,da_only,noise)");
  synth->add_option("--n", cli.synth_n, "total cases (scales the default mixture)");
  add_out(synth, "dataset output path (required)");
  synth->callback([&] { cmd_synth(cli); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_record("UsageError", e.what());
    return 2;
  } catch (const quorum::Error& e) {
    std::cerr << error_record(e.code, e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_record("InternalError", e.what());
    return 3;
  }
  return 0;
}

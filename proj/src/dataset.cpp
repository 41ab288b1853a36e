#include "quorum/dataset.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "quorum/errors.hpp"
#include "quorum/parallel.hpp"
#include "quorum/pipelines.hpp"

namespace quorum {

namespace {

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::size_t answer_index(const std::vector<std::string>& answers, const std::string& answer,
                         const char* code, const std::string& context) {
  for (std::size_t a = 0; a < answers.size(); ++a)
    if (answers[a] == answer) return a;
  fail(code, context + ": answer \"" + answer + "\" is not in the answer set");
}

DecisionCase parse_record(const nlohmann::json& j, std::size_t line_no) {
  const std::string where = "line " + std::to_string(line_no);
  if (!j.is_object()) fail("ParseError", where + ": record is not an object");
  for (const char* key : {"case_id", "answers", "responses"})
    if (!j.contains(key)) fail("ParseError", where + ": missing field " + key);
  DecisionCase c;
  try {
    c.case_id = j.at("case_id").get<std::string>();
    c.answers = j.at("answers").get<std::vector<std::string>>();
    if (j.contains("correct_answer") && !j.at("correct_answer").is_null())
      c.correct = answer_index(c.answers, j.at("correct_answer").get<std::string>(),
                               "CorrectOutsideAnswerSet", where + " (case " + c.case_id + ")");
    const auto& responses = j.at("responses");
    if (!responses.is_array()) fail("ParseError", where + ": responses is not an array");
    for (const auto& rj : responses) {
      Response r;
      r.vote = answer_index(c.answers, rj.at("vote").get<std::string>(), "VoteOutsideAnswerSet",
                            where + " (case " + c.case_id + ")");
      r.confidence = rj.at("confidence").get<double>();
      r.predicted_support = rj.at("predicted_support").get<std::vector<double>>();
      c.responses.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    fail("ParseError", where + ": " + e.what());
  }
  try {
    return validate_case(std::move(c));
  } catch (const Error& e) {
    fail(e.code, where + ": " + e.what());
  }
}

}  // namespace

LoadResult load_and_filter(const std::string& path, bool exclude_degenerate) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open dataset file: " + path);
  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail("ParseError", "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!saw_header) {
      if (!j.is_object() || !j.contains("schema_version"))
        fail("SchemaVersionUnsupported",
             "line " + std::to_string(line_no) + ": dataset must start with a schema_version header");
      if (!j.at("schema_version").is_number_integer() ||
          j.at("schema_version").get<int>() != kDatasetSchemaVersion)
        fail("SchemaVersionUnsupported",
             "line " + std::to_string(line_no) + ": unsupported schema_version " +
                 j.at("schema_version").dump());
      saw_header = true;
      continue;
    }
    DecisionCase c = parse_record(j, line_no);
    if (exclude_degenerate && c.correct) {
      std::size_t hits = 0;
      for (const auto& r : c.responses) hits += std::size_t(r.vote == *c.correct);
      if (hits == 0 || hits == c.responses.size()) {
        result.excluded.push_back({c.case_id, double(hits) / double(c.responses.size())});
        continue;
      }
    }
    result.corpus.push_back(std::move(c));
  }
  if (!saw_header)
    fail("SchemaVersionUnsupported", "dataset has no schema_version header: " + path);
  return result;
}

void save_dataset(const std::vector<DecisionCase>& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("WriteError", "cannot open for writing: " + path);
  out << nlohmann::json{{"schema_version", kDatasetSchemaVersion}}.dump() << "\n";
  for (const auto& c : corpus) {
    nlohmann::json responses = nlohmann::json::array();
    for (const auto& r : c.responses)
      responses.push_back({{"vote", c.answers[r.vote]},
                           {"confidence", r.confidence},
                           {"predicted_support", r.predicted_support}});
    nlohmann::json j{{"case_id", c.case_id}, {"answers", c.answers}, {"responses", responses}};
    if (c.correct) j["correct_answer"] = c.answers[*c.correct];
    out << j.dump() << "\n";
  }
  if (!out) fail("WriteError", "failed writing dataset: " + path);
}

void export_feature_matrix(const std::vector<DecisionCase>& corpus, Approach approach,
                           const RunConfig& config, const std::string& path) {
  for (const auto& c : corpus)
    if (!c.correct)
      fail("MissingGroundTruth", "case " + c.case_id + " carries no correct answer");
  const EvalOptions o = eval_options(config);
  const std::size_t workers = o.workers ? o.workers : default_workers();

  std::ofstream out(path);
  if (!out) fail("WriteError", "cannot open for writing: " + path);

  std::vector<std::string> header;
  for (std::size_t row : active_feature_rows(o.mask)) header.push_back(kFeatureNames[row]);

  if (approach == Approach::AMP) {
    const AmpDataset ds = build_amp_dataset(corpus, o.plan, o.included, o.mask, workers);
    for (MethodId m : ds.methods) header.push_back(std::string("O_") + method_name(m));
    for (std::size_t h = 0; h < header.size(); ++h) out << (h ? "," : "") << header[h];
    out << "\n";
    for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
      for (Eigen::Index c = 0; c < ds.X.cols(); ++c) out << (c ? "," : "") << full(ds.X(i, c));
      for (int bit : ds.Y[std::size_t(i)]) out << "," << bit;
      out << "\n";
    }
  } else {
    const DapDataset ds = build_dap_dataset(corpus, o.plan, o.included, o.mask, workers);
    for (MethodId m : ds.methods)
      for (std::size_t a = 0; a < ds.n_answers; ++a)
        header.push_back(std::string("f_") + method_name(m) + "_" + std::to_string(a));
    header.push_back("target");
    for (std::size_t h = 0; h < header.size(); ++h) out << (h ? "," : "") << header[h];
    out << "\n";
    for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
      for (Eigen::Index c = 0; c < ds.X.cols(); ++c) out << (c ? "," : "") << full(ds.X(i, c));
      out << "," << ds.y[std::size_t(i)] << "\n";
    }
  }
  if (!out) fail("WriteError", "failed writing feature matrix: " + path);
}

}  // namespace quorum

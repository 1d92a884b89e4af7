// SPDX-License-Identifier: Apache-2.0

// End-to-end coverage of the command line interface: exit-code contract
// (0 success, 1 domain or I/O failure, 2 usage error), the javadoc ->
// features -> train -> recommend pipeline on the fixture corpus, and the
// evaluate subcommand on a hand-built two-rule dataset.

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "migmap/api_json.hpp"
#include "migmap/api_model.hpp"
#include "migmap/cli.hpp"
#include "migmap/features.hpp"
#include "migmap/learner.hpp"
#include "migmap/mapping_dataset.hpp"
#include "test_support.hpp"

namespace {

using nlohmann::json;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("migmap");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& arg : full) argv.push_back(arg.c_str());

  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.code =
      migmap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string fixture(const char* name) {
  return (testsup::fixture_dir() / name).string();
}

// Two migration rules with hand-picked methods. Within each rule the valid
// target copies the source's name, return type, and parameters, while the
// decoy shares none of them, so the signature baseline ranks every source
// correctly and the leave-one-rule-out accuracies are exactly 1.
struct TwoRuleWorld {
  std::filesystem::path alib;
  std::filesystem::path blib;
  std::filesystem::path clib;
  std::filesystem::path dlib;
  std::filesystem::path mappings;
};

TwoRuleWorld make_two_rule_world(const testsup::TempDir& dir) {
  using migmap::corpus::ApiLibrary;
  using migmap::corpus::ApiMethod;
  using migmap::corpus::MappingLabel;
  using migmap::corpus::MappingRecord;

  auto counterpart = [](const ApiMethod& source, std::string package_name,
                        std::string class_name) {
    ApiMethod m = source;
    m.package_name = std::move(package_name);
    m.class_name = std::move(class_name);
    m.description = source.description + " Replacement entry point.";
    return m;
  };

  ApiMethod read_token = testsup::make_method(
      "a.lib", "TokenReader", "readToken", "String", {{"input", "String", "raw text"}},
      "Reads the next token from the input.", "the next token",
      "Splits raw text into tokens.");
  ApiMethod close_cursor = testsup::make_method(
      "a.lib", "CursorOps", "closeCursor", "void", {},
      "Closes the active cursor.", "", "Cursor lifecycle helpers.");
  ApiMethod write_buffer = testsup::make_method(
      "b.lib", "BufferSink", "writeBuffer", "int",
      {{"data", "byte[]", "bytes to append"}, {"offset", "int", "start position"}},
      "Appends bytes to the buffer.", "the number of bytes written",
      "Growable byte buffer.");

  ApiMethod parse_record = testsup::make_method(
      "c.lib", "RecordParser", "parseRecord", "Record", {{"line", "String", "one csv line"}},
      "Parses a single record from a line.", "the parsed record",
      "Streaming record parser.");
  ApiMethod open_session = testsup::make_method(
      "c.lib", "SessionPool", "openSession", "Session", {},
      "Opens a pooled session.", "a session ready for use",
      "Connection pooling utilities.");
  ApiMethod filter_widget = testsup::make_method(
      "d.lib", "WidgetQuery", "filterWidget", "boolean",
      {{"widget", "Widget", "candidate widget"}},
      "Checks a widget against the query.", "true when the widget matches",
      "Declarative widget queries.");

  ApiLibrary alib("alib", "1.0", {read_token, close_cursor});
  ApiLibrary blib("blib", "2.0",
                  {counterpart(read_token, "b.lib", "TokenPort"),
                   counterpart(close_cursor, "b.lib", "CursorPort"), write_buffer});
  ApiLibrary clib("clib", "1.0", {parse_record, open_session});
  ApiLibrary dlib("dlib", "2.0",
                  {counterpart(parse_record, "d.lib", "RecordPort"),
                   counterpart(open_session, "d.lib", "SessionPort"), filter_widget});

  // Library method order is normalized internally; recover the pairing by name.
  auto sorted_by_name = [](const ApiLibrary& lib, std::vector<std::string> names) {
    std::vector<const ApiMethod*> out;
    for (const auto& name : names) {
      for (const auto& method : lib.methods()) {
        if (method.method_name == name) out.push_back(&method);
      }
    }
    return out;
  };
  std::vector<MappingRecord> records;
  auto add_pairs = [&records](const std::string& rule_id,
                              const std::vector<const ApiMethod*>& sources,
                              const std::vector<const ApiMethod*>& targets,
                              const ApiMethod& decoy) {
    for (std::size_t i = 0; i < sources.size(); ++i) {
      records.push_back({rule_id, sources[i]->qualified_id(),
                         targets[i]->qualified_id(), MappingLabel::valid});
      records.push_back({rule_id, sources[i]->qualified_id(), decoy.qualified_id(),
                         MappingLabel::invalid});
    }
  };
  add_pairs("alib→blib", sorted_by_name(alib, {"readToken", "closeCursor"}),
            sorted_by_name(blib, {"readToken", "closeCursor"}), write_buffer);
  add_pairs("clib→dlib", sorted_by_name(clib, {"parseRecord", "openSession"}),
            sorted_by_name(dlib, {"parseRecord", "openSession"}), filter_widget);

  TwoRuleWorld world;
  world.alib = dir.file("alib.json");
  world.blib = dir.file("blib.json");
  world.clib = dir.file("clib.json");
  world.dlib = dir.file("dlib.json");
  world.mappings = dir.file("two_rules.csv");
  migmap::corpus::save_api_json(alib, world.alib);
  migmap::corpus::save_api_json(blib, world.blib);
  migmap::corpus::save_api_json(clib, world.clib);
  migmap::corpus::save_api_json(dlib, world.dlib);
  migmap::corpus::save_mapping_records(records, world.mappings);
  return world;
}

}  // namespace

TEST_CASE("cli help exits zero and usage errors exit two") {
  CliResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "Usage"));
  CHECK(contains(help.out, "recommend"));
  CHECK(contains(help.out, "evaluate"));

  CliResult sub_help = run_cli({"recommend", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(contains(sub_help.out, "--approach"));

  // No subcommand, unknown subcommand, unknown flag, missing required
  // option, and a rejected option value are all usage errors.
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--bogus", "recommend"}).code == 2);
  CHECK(run_cli({"features", "--source", "a.json"}).code == 2);
  CHECK(run_cli({"--vsm-mode", "loose", "train", "--features", "x", "--output", "y"}).code ==
        2);
  CHECK(run_cli({"recommend", "--source", "a.json", "--target", "b.json", "--approach",
                 "bogus"})
            .code == 2);
}

TEST_CASE("cli domain failures exit one with an error line") {
  testsup::TempDir dir;

  CliResult missing = run_cli({"features", "--source", dir.file("absent.json").string(),
                               "--target", dir.file("absent.json").string(), "--mappings",
                               dir.file("absent.csv").string(), "--output",
                               dir.file("out.csv").string()});
  CHECK(missing.code == 1);
  CHECK(contains(missing.err, "error: "));

  // A missing custom stop-word list fails before any other input is touched.
  CliResult stopwords = run_cli({"--stopwords", dir.file("no_such_words.txt").string(),
                                 "features", "--source", dir.file("absent.json").string(),
                                 "--target", dir.file("absent.json").string(), "--mappings",
                                 dir.file("absent.csv").string(), "--output",
                                 dir.file("out.csv").string()});
  CHECK(stopwords.code == 1);
  CHECK(contains(stopwords.err, "error: "));
}

TEST_CASE("cli pipeline from javadoc fixtures to ranked recommendations") {
  testsup::TempDir dir;
  const std::string em_json = dir.file("easymock.json").string();
  const std::string mo_json = dir.file("mockito.json").string();
  const std::string feats = dir.file("features.csv").string();
  const std::string model = dir.file("model.json").string();

  CliResult parse_em = run_cli({"parse-docs", "--input", fixture("easymock-3.4-javadoc"),
                                "--name", "easymock", "--lib-version", "3.4", "--output",
                                em_json});
  REQUIRE(parse_em.code == 0);
  CHECK(contains(parse_em.out, "parsed 5 methods into"));
  CHECK(parse_em.err.empty());

  CliResult parse_mo = run_cli({"parse-docs", "--input", fixture("mockito-core-2.7.1-javadoc"),
                                "--name", "mockito-core", "--lib-version", "2.7.1",
                                "--output", mo_json});
  REQUIRE(parse_mo.code == 0);
  CHECK(contains(parse_mo.out, "parsed 4 methods into"));

  // The boosted classifier cannot score without a trained model.
  CliResult no_model = run_cli({"recommend", "--source", em_json, "--target", mo_json,
                                "--approach", "rapim"});
  CHECK(no_model.code == 1);
  CHECK(contains(no_model.err, "needs --model"));

  CliResult feat = run_cli({"features", "--source", em_json, "--target", mo_json,
                            "--mappings", fixture("mappings/easymock_mockito.csv"),
                            "--output", feats});
  REQUIRE(feat.code == 0);
  CHECK(contains(feat.out, "wrote 11 feature vectors"));
  CHECK(migmap::features::load_feature_csv(feats).size() == 11);

  CliResult train = run_cli({"train", "--features", feats, "--output", model, "--trees",
                             "12", "--min-leaf", "2", "--max-leaves", "4", "--rate", "0.3"});
  REQUIRE(train.code == 0);
  CHECK(contains(train.out, "trained 12 trees on 11 vectors"));
  CHECK(contains(train.out, "saved model to"));
  CHECK(migmap::learner::load_model(model).trees().size() == 12);

  // The trained model drives ranked recommendations for every source method.
  CliResult rec = run_cli({"recommend", "--model", model, "--source", em_json, "--target",
                           mo_json, "--approach", "rapim", "-n", "3"});
  REQUIRE(rec.code == 0);
  json body = json::parse(rec.out);
  CHECK(body["approach"] == "rapim");
  CHECK(body["source_library"] == "easymock");
  CHECK(body["target_library"] == "mockito-core");
  REQUIRE(body["results"].size() == 5);
  for (const auto& entry : body["results"]) {
    REQUIRE(entry["recommendations"].size() <= 3);
    REQUIRE(!entry["recommendations"].empty());
    double previous = 1.0;
    for (const auto& item : entry["recommendations"]) {
      const double score = item["score"].get<double>();
      CHECK(score > 0.0);
      CHECK(score < 1.0);
      CHECK(score <= previous);
      CHECK(contains(item["target"].get<std::string>(), "org.mockito"));
      previous = score;
    }
  }

  // A single-source query with a signature baseline needs no model at all.
  const std::string query = "org.easymock.IMockBuilder#createMock(String,MockType)";
  CliResult one = run_cli({"recommend", "--source", em_json, "--target", mo_json,
                           "--approach", "ms", "--source-method", query, "-n", "1"});
  REQUIRE(one.code == 0);
  json one_body = json::parse(one.out);
  CHECK(one_body["approach"] == "ms");
  REQUIRE(one_body["results"].size() == 1);
  CHECK(one_body["results"][0]["source"] == query);
  CHECK(one_body["results"][0]["recommendations"].size() == 1);

  // --output redirects the same report into a file.
  const std::string saved = dir.file("recs.json").string();
  CliResult filed = run_cli({"recommend", "--source", em_json, "--target", mo_json,
                             "--approach", "ms", "--source-method", query, "-n", "1",
                             "--output", saved});
  REQUIRE(filed.code == 0);
  CHECK(contains(filed.out, "wrote recommendations for 1 methods to"));
  CHECK(testsup::read_file(saved) == one.out);

  CliResult unknown = run_cli({"recommend", "--source", em_json, "--target", mo_json,
                               "--approach", "ms", "--source-method", "no.such#method()"});
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "unknown source method"));
}

TEST_CASE("cli seed option pins training output bytes") {
  testsup::TempDir dir;
  const std::string feats = dir.file("features.csv").string();
  migmap::features::save_feature_csv(
      feats, testsup::make_threshold_dataset(60, 11, 0.0).vectors);

  auto train_with_seed = [&](const std::string& seed, const std::string& name) {
    const std::string path = dir.file(name).string();
    CliResult r = run_cli({"--seed", seed, "train", "--features", feats, "--output", path,
                           "--trees", "8", "--min-leaf", "3", "--max-leaves", "4", "--rate",
                           "0.3"});
    REQUIRE(r.code == 0);
    return testsup::read_file(path);
  };

  const std::string first = train_with_seed("7", "m1.json");
  const std::string second = train_with_seed("7", "m2.json");
  const std::string other = train_with_seed("8", "m3.json");
  CHECK(first == second);
  CHECK(first != other);
}

TEST_CASE("cli tune reports the grid search and saves the best model") {
  testsup::TempDir dir;
  const std::string feats = dir.file("features.csv").string();
  migmap::features::save_feature_csv(
      feats, testsup::make_threshold_dataset(80, 7, 0.0).vectors);

  const std::string tuned = dir.file("tuned.json").string();
  const std::string trials = dir.file("trials.csv").string();
  CliResult tune = run_cli({"tune", "--features", feats, "--output", tuned, "--leaves", "4",
                            "--min-leaf", "3", "--rates", "0.25", "--trees", "8,16",
                            "--validation-fraction", "0.25", "--trials-out", trials});
  REQUIRE(tune.code == 0);
  CHECK(contains(tune.out, "best: max_leaves=4 min_leaf=3 rate=0.25 trees="));
  CHECK(contains(tune.out, "wrote 2 trials to"));
  CHECK_FALSE(migmap::learner::load_model(tuned).trees().empty());

  const std::string trial_text = testsup::read_file(trials);
  CHECK(contains(trial_text,
                 "max_leaves,min_leaf_instances,learning_rate,num_trees,validation_error"));
  CHECK(std::count(trial_text.begin(), trial_text.end(), '\n') == 3);
}

TEST_CASE("cli evaluate runs leave-one-rule-out on a two-rule dataset") {
  testsup::TempDir dir;
  TwoRuleWorld world = make_two_rule_world(dir);
  const std::string report_path = dir.file("report.json").string();

  CliResult loro = run_cli({"evaluate", "--mappings", world.mappings.string(), "--api",
                            world.alib.string(), "--api", world.blib.string(), "--api",
                            world.clib.string(), "--api", world.dlib.string(), "--mode",
                            "loro", "--approach", "ms", "--json", report_path});
  REQUIRE(loro.code == 0);
  CHECK(contains(loro.out, "rule"));
  CHECK(contains(loro.out, "alib→blib"));
  CHECK(contains(loro.out, "clib→dlib"));
  CHECK(contains(loro.out, "Average"));
  CHECK(contains(loro.out, "Error"));
  CHECK(contains(loro.out, "1.000"));
  CHECK(contains(loro.out, "0.000"));

  json report = json::parse(testsup::read_file(report_path));
  CHECK(report["mode"] == "loro");
  REQUIRE(report["approaches"].size() == 1);
  const json& ms = report["approaches"][0];
  CHECK(ms["approach"] == "ms");
  CHECK(ms["average_accuracy"].get<double>() == 1.0);
  CHECK(ms["error"].get<double>() == 0.0);
  REQUIRE(ms["per_rule"].size() == 2);
  CHECK(ms["per_rule"][0]["rule"] == "alib→blib");
  CHECK(ms["per_rule"][0]["evaluated"] == 2);
  CHECK(ms["per_rule"][1]["rule"] == "clib→dlib");
  CHECK(ms["per_rule"][1]["accuracy"].get<double>() == 1.0);

  // Holding a rule out needs at least two rules; the fixture dataset has one.
  const std::string em_json = dir.file("easymock.json").string();
  const std::string mo_json = dir.file("mockito.json").string();
  REQUIRE(run_cli({"parse-docs", "--input", fixture("easymock-3.4-javadoc"), "--name",
                   "easymock", "--lib-version", "3.4", "--output", em_json})
              .code == 0);
  REQUIRE(run_cli({"parse-docs", "--input", fixture("mockito-core-2.7.1-javadoc"), "--name",
                   "mockito-core", "--lib-version", "2.7.1", "--output", mo_json})
              .code == 0);
  CliResult single = run_cli({"evaluate", "--mappings",
                              fixture("mappings/easymock_mockito.csv"), "--api", em_json,
                              "--api", mo_json, "--mode", "loro", "--approach", "ms"});
  CHECK(single.code == 1);
  CHECK(contains(single.err, "error: "));
}

TEST_CASE("cli evaluate roc mode writes out-of-fold points") {
  testsup::TempDir dir;
  TwoRuleWorld world = make_two_rule_world(dir);
  const std::string points = dir.file("roc.csv").string();

  CliResult roc = run_cli({"evaluate", "--mappings", world.mappings.string(), "--api",
                           world.alib.string(), "--api", world.blib.string(), "--api",
                           world.clib.string(), "--api", world.dlib.string(), "--mode",
                           "roc", "--trees", "6", "--min-leaf", "1", "--max-leaves", "3",
                           "--rate", "0.4", "--points", points});
  REQUIRE(roc.code == 0);
  REQUIRE(contains(roc.out, "auc="));
  const std::size_t start = roc.out.find("auc=") + 4;
  const double auc = std::stod(roc.out.substr(start));
  CHECK(auc >= 0.0);
  CHECK(auc <= 1.0);

  const std::string text = testsup::read_file(points);
  CHECK(contains(text, "threshold,false_positive_rate,true_positive_rate"));
  CHECK(std::count(text.begin(), text.end(), '\n') >= 3);
}

// SPDX-License-Identifier: Apache-2.0
#include "migmap/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "migmap/api_json.hpp"
#include "migmap/archive.hpp"
#include "migmap/baselines.hpp"
#include "migmap/csv.hpp"
#include "migmap/errors.hpp"
#include "migmap/eval.hpp"
#include "migmap/features.hpp"
#include "migmap/javadoc_parser.hpp"
#include "migmap/learner.hpp"
#include "migmap/mapping_dataset.hpp"
#include "migmap/maven.hpp"
#include "migmap/service.hpp"

namespace migmap::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string vsm_mode = "smoothed";
  std::string stopwords_file;

  // Keeps a loaded stop-word list alive for the extractor pointing at it.
  std::optional<textops::StopwordSet> custom_stopwords;

  vsm::VsmConfig vsm_config() const {
    vsm::VsmConfig config;
    config.idf_mode =
        vsm_mode == "literal" ? vsm::IdfMode::literal : vsm::IdfMode::smoothed;
    return config;
  }

  features::FeatureExtractor make_extractor() {
    const textops::StopwordSet* words = nullptr;
    if (!stopwords_file.empty()) {
      custom_stopwords = textops::StopwordSet::from_file(stopwords_file);
      words = &*custom_stopwords;
    }
    return features::FeatureExtractor(vsm_config(), words);
  }
};

struct TrainFlags {
  int max_leaves = 6;
  int min_leaf = 47;
  double rate = 0.14;
  int trees = 233;

  learner::GbdtHyperparams hyperparams(std::uint64_t seed) const {
    learner::GbdtHyperparams hp;
    hp.max_leaves = max_leaves;
    hp.min_leaf_instances = min_leaf;
    hp.learning_rate = rate;
    hp.num_trees = trees;
    hp.seed = seed;
    return hp;
  }
};

void add_train_flags(CLI::App* cmd, TrainFlags* flags) {
  cmd->add_option("--max-leaves", flags->max_leaves, "Maximum leaves per tree")
      ->capture_default_str();
  cmd->add_option("--min-leaf", flags->min_leaf, "Minimum instances per leaf")
      ->capture_default_str();
  cmd->add_option("--rate", flags->rate, "Learning rate")->capture_default_str();
  cmd->add_option("--trees", flags->trees, "Number of boosting rounds")
      ->capture_default_str();
}

corpus::ApiLibrary load_library(const std::string& path) {
  return corpus::load_api_json(path);
}

std::vector<features::FeatureVector> extract_dataset_vectors(
    const corpus::MappingDataset& dataset, const features::FeatureExtractor& extractor) {
  std::vector<features::FeatureVector> vectors;
  for (const auto& group : dataset.rules) {
    for (auto& v : features::extract_rule_vectors(group, extractor)) {
      vectors.push_back(std::move(v));
    }
  }
  return vectors;
}

eval::PairScorer build_scorer(eval::Approach approach, const std::string& model_path,
                              features::FeatureExtractor extractor) {
  switch (approach) {
    case eval::Approach::rapim: {
      if (model_path.empty()) {
        throw IoFailure("the boosted classifier needs --model");
      }
      return eval::make_rapim_scorer(learner::load_model(model_path), std::move(extractor));
    }
    case eval::Approach::ltr:
      return eval::make_ltr_scorer(baselines::published_ltr_weights(), std::move(extractor));
    case eval::Approach::tmap:
      return eval::make_tmap_scorer(std::move(extractor));
    case eval::Approach::ms:
      return eval::make_ms_scorer();
  }
  throw IoFailure("unknown approach");
}

eval::Approach parse_approach(const std::string& tag) {
  auto approach = eval::approach_from_tag(tag);
  if (!approach.has_value()) {
    throw IoFailure("unknown approach tag: " + tag);
  }
  return *approach;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoFailure("cannot write " + path);
}

std::string format_cell(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

int run_fetch(GlobalOptions&, std::ostream& out, const std::string& group,
              const std::string& artifact, const std::string& version,
              const std::string& dest, const std::string& base_url,
              const std::string& extract_to) {
  corpus::MavenCoordinates coords(group, artifact, version);
  std::filesystem::path jar =
      base_url.empty() ? corpus::fetch_javadoc_archive(coords, dest)
                       : corpus::fetch_javadoc_archive(coords, dest, base_url);
  out << "saved " << jar.string() << "\n";
  if (!extract_to.empty()) {
    corpus::extract_archive(jar, extract_to);
    out << "extracted to " << extract_to << "\n";
  }
  return 0;
}

int run_parse_docs(std::ostream& out, std::ostream& err, const std::string& input,
                   const std::string& name, const std::string& version,
                   const std::string& output) {
  std::vector<std::string> warnings;
  corpus::ApiLibrary library = corpus::parse_javadoc_html(input, name, version, &warnings);
  for (const auto& warning : warnings) err << "warning: " << warning << "\n";
  corpus::save_api_json(library, output);
  out << "parsed " << library.methods().size() << " methods into " << output << "\n";
  return 0;
}

int run_features(GlobalOptions& global, std::ostream& out, const std::string& source,
                 const std::string& target, const std::string& mappings,
                 const std::string& output) {
  features::FeatureExtractor extractor = global.make_extractor();
  std::vector<corpus::ApiLibrary> libraries;
  libraries.push_back(load_library(source));
  libraries.push_back(load_library(target));
  corpus::MappingDataset dataset = corpus::load_mapping_dataset(mappings, libraries);
  std::vector<features::FeatureVector> vectors = extract_dataset_vectors(dataset, extractor);
  features::save_feature_csv(output, vectors);
  out << "wrote " << vectors.size() << " feature vectors to " << output << "\n";
  return 0;
}

int run_train(GlobalOptions& global, std::ostream& out, const std::string& features_path,
              const std::string& output, const TrainFlags& flags) {
  std::vector<features::FeatureVector> vectors = features::load_feature_csv(features_path);
  std::vector<double> loss_trace;
  learner::GbdtModel model =
      learner::train(vectors, flags.hyperparams(global.seed),
                     learner::default_feature_indices(), &loss_trace);
  learner::save_model(model, output);
  out << "trained " << model.trees().size() << " trees on " << vectors.size()
      << " vectors; training loss " << csv::format_double(loss_trace.front()) << " -> "
      << csv::format_double(loss_trace.back()) << "\n";
  out << "saved model to " << output << "\n";
  return 0;
}

int run_tune(GlobalOptions& global, std::ostream& out, const std::string& features_path,
             const std::string& output, const learner::HyperparamGrids& grids,
             double validation_fraction, const std::string& trials_out) {
  std::vector<features::FeatureVector> vectors = features::load_feature_csv(features_path);
  learner::TuneResult result =
      learner::grid_search_tune(vectors, grids, validation_fraction, global.seed);
  if (!output.empty()) learner::save_model(result.model, output);

  out << "best: max_leaves=" << result.best.max_leaves
      << " min_leaf=" << result.best.min_leaf_instances
      << " rate=" << csv::format_double(result.best.learning_rate)
      << " trees=" << result.best.num_trees
      << " validation_error=" << csv::format_double(result.validation_error) << "\n";
  if (!output.empty()) out << "saved model to " << output << "\n";

  if (!trials_out.empty()) {
    std::string text = "max_leaves,min_leaf_instances,learning_rate,num_trees,validation_error\n";
    for (const auto& [hp, error] : result.trials) {
      text += csv::format_row({std::to_string(hp.max_leaves),
                               std::to_string(hp.min_leaf_instances),
                               csv::format_double(hp.learning_rate),
                               std::to_string(hp.num_trees), csv::format_double(error)});
      text += '\n';
    }
    write_text_file(trials_out, text);
    out << "wrote " << result.trials.size() << " trials to " << trials_out << "\n";
  }
  return 0;
}

int run_recommend(GlobalOptions& global, std::ostream& out, const std::string& model_path,
                  const std::string& source, const std::string& target,
                  const std::string& approach_tag, const std::string& source_method,
                  std::size_t top_n, const std::string& output) {
  eval::Approach approach = parse_approach(approach_tag);
  features::FeatureExtractor extractor = global.make_extractor();
  corpus::ApiLibrary source_library = load_library(source);
  corpus::ApiLibrary target_library = load_library(target);
  eval::PairScorer scorer = build_scorer(approach, model_path, std::move(extractor));

  std::vector<const corpus::ApiMethod*> sources;
  if (source_method.empty()) {
    for (const auto& method : source_library.methods()) sources.push_back(&method);
  } else {
    const corpus::ApiMethod* method = source_library.find(source_method);
    if (method == nullptr) {
      throw Error("unknown source method: " + source_method);
    }
    sources.push_back(method);
  }

  ordered_json body;
  body["approach"] = std::string(eval::approach_tag(approach));
  body["source_library"] = source_library.name();
  body["target_library"] = target_library.name();
  ordered_json results = ordered_json::array();
  for (const corpus::ApiMethod* method : sources) {
    eval::RecommendationSet set =
        eval::recommend_top_n(*method, target_library, scorer, top_n);
    ordered_json entry;
    entry["source"] = set.source_id;
    ordered_json items = ordered_json::array();
    for (const auto& r : set.recommendations) {
      items.push_back(ordered_json{{"target", r.target_id}, {"score", r.score}});
    }
    entry["recommendations"] = std::move(items);
    results.push_back(std::move(entry));
  }
  body["results"] = std::move(results);

  std::string text = body.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    write_text_file(output, text);
    out << "wrote recommendations for " << sources.size() << " methods to " << output << "\n";
  }
  return 0;
}

std::vector<eval::Approach> approaches_for(const std::string& tag) {
  if (tag == "all") {
    return {eval::Approach::ltr, eval::Approach::tmap, eval::Approach::ms,
            eval::Approach::rapim};
  }
  return {parse_approach(tag)};
}

void print_loro_table(std::ostream& out, const eval::LoroReport& report) {
  if (report.approaches.empty()) return;
  std::size_t width = 4;  // "rule"
  for (const auto& rule : report.approaches.front().per_rule) {
    width = std::max(width, rule.rule_id.size());
  }

  out << "rule";
  out << std::string(width - 4, ' ');
  for (const auto& approach : report.approaches) {
    std::string tag(eval::approach_tag(approach.approach));
    out << "  " << tag << std::string(tag.size() < 6 ? 6 - tag.size() : 0, ' ');
  }
  out << "\n";

  for (std::size_t i = 0; i < report.approaches.front().per_rule.size(); ++i) {
    const std::string& rule_id = report.approaches.front().per_rule[i].rule_id;
    out << rule_id << std::string(width - rule_id.size(), ' ');
    for (const auto& approach : report.approaches) {
      out << "  " << format_cell(approach.per_rule[i].accuracy) << " ";
    }
    out << "\n";
  }

  out << "Average" << std::string(width > 7 ? width - 7 : 0, ' ');
  for (const auto& approach : report.approaches) {
    out << "  " << format_cell(approach.average_accuracy) << " ";
  }
  out << "\n";
  out << "Error" << std::string(width > 5 ? width - 5 : 0, ' ');
  for (const auto& approach : report.approaches) {
    out << "  " << format_cell(approach.error) << " ";
  }
  out << "\n";
}

int run_evaluate(GlobalOptions& global, std::ostream& out, const std::string& mappings,
                 const std::vector<std::string>& api_paths, const std::string& mode,
                 const std::string& approach_tag, const TrainFlags& flags, bool refit_ltr,
                 const std::string& json_out, const std::string& points_out) {
  features::FeatureExtractor extractor = global.make_extractor();
  std::vector<corpus::ApiLibrary> libraries;
  libraries.reserve(api_paths.size());
  for (const auto& path : api_paths) libraries.push_back(load_library(path));
  corpus::MappingDataset dataset = corpus::load_mapping_dataset(mappings, libraries);

  if (mode == "loro") {
    eval::LoroOptions options;
    options.hyperparams = flags.hyperparams(global.seed);
    options.refit_linear_baseline = refit_ltr;
    options.approaches = approaches_for(approach_tag);
    eval::LoroReport report = eval::leave_one_rule_out(dataset, extractor, options);

    print_loro_table(out, report);
    if (!json_out.empty()) {
      ordered_json body;
      body["mode"] = "loro";
      ordered_json approaches = ordered_json::array();
      for (const auto& approach : report.approaches) {
        ordered_json entry;
        entry["approach"] = std::string(eval::approach_tag(approach.approach));
        entry["average_accuracy"] = approach.average_accuracy;
        entry["error"] = approach.error;
        ordered_json rules = ordered_json::array();
        for (const auto& rule : approach.per_rule) {
          rules.push_back(ordered_json{{"rule", rule.rule_id},
                                       {"accuracy", rule.accuracy},
                                       {"evaluated", rule.evaluated}});
        }
        entry["per_rule"] = std::move(rules);
        approaches.push_back(std::move(entry));
      }
      body["approaches"] = std::move(approaches);
      write_text_file(json_out, body.dump(2) + "\n");
      out << "wrote report to " << json_out << "\n";
    }
    return 0;
  }

  if (mode == "curve") {
    std::vector<features::FeatureVector> vectors = extract_dataset_vectors(dataset, extractor);
    std::vector<eval::CurvePoint> curve =
        eval::training_size_curve(vectors, flags.hyperparams(global.seed), 10, global.seed);
    out << "training_size,accuracy\n";
    std::string text = "training_size,accuracy\n";
    for (const auto& point : curve) {
      std::string row = std::to_string(point.training_size) + "," +
                        csv::format_double(point.accuracy) + "\n";
      out << row;
      text += row;
    }
    if (!points_out.empty()) {
      write_text_file(points_out, text);
      out << "wrote curve to " << points_out << "\n";
    }
    return 0;
  }

  if (mode == "roc") {
    // Out-of-fold probabilities: each rule is scored by a model trained on
    // the remaining rules.
    std::vector<features::FeatureVector> all_vectors =
        extract_dataset_vectors(dataset, extractor);
    if (dataset.rules.size() < 2) {
      throw TooFewRules("roc mode needs at least 2 rules");
    }
    std::vector<std::pair<double, bool>> scored;
    for (const auto& group : dataset.rules) {
      learner::GbdtModel model = eval::train_excluding_rule(
          all_vectors, group.rule.rule_id, flags.hyperparams(global.seed));
      for (const auto& v : all_vectors) {
        if (v.rule_id != group.rule.rule_id || !v.label.has_value()) continue;
        scored.emplace_back(model.predict_proba(v), *v.label);
      }
    }
    std::vector<eval::RocPoint> points = eval::roc_curve(scored);
    out << "auc=" << csv::format_double(eval::roc_auc(points)) << "\n";
    std::string text = "threshold,false_positive_rate,true_positive_rate\n";
    for (const auto& point : points) {
      text += csv::format_double(point.threshold) + "," +
              csv::format_double(point.false_positive_rate) + "," +
              csv::format_double(point.true_positive_rate) + "\n";
    }
    if (points_out.empty()) {
      out << text;
    } else {
      write_text_file(points_out, text);
      out << "wrote " << points.size() << " roc points to " << points_out << "\n";
    }
    return 0;
  }

  throw IoFailure("unknown evaluate mode: " + mode);
}

int run_serve(GlobalOptions& global, std::ostream& out, const std::string& model_path,
              const std::string& source, const std::string& target,
              const std::string& approach_tag, int port) {
  eval::Approach approach = parse_approach(approach_tag);
  features::FeatureExtractor extractor = global.make_extractor();
  corpus::ApiLibrary source_library = load_library(source);
  corpus::ApiLibrary target_library = load_library(target);
  eval::PairScorer scorer = build_scorer(approach, model_path, std::move(extractor));

  service::RecommendService server(std::move(source_library), std::move(target_library),
                                   std::move(scorer));
  int bound = port;
  if (port == 0) {
    bound = server.start_on_any_port();
  } else {
    server.start(port);
  }
  out << "listening on http://127.0.0.1:" << bound << "\n" << std::flush;
  while (server.is_running()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  GlobalOptions global;

  CLI::App app{"Method-level migration mapping recommender for Java libraries"};
  app.require_subcommand(1);
  app.fallthrough(true);
  app.add_option("--seed", global.seed, "Seed for every randomized step")
      ->capture_default_str();
  app.add_option("--vsm-mode", global.vsm_mode, "Term weighting: smoothed or literal")
      ->check(CLI::IsMember({"smoothed", "literal"}))
      ->capture_default_str();
  app.add_option("--stopwords", global.stopwords_file,
                 "Stop-word list file (one word per line) replacing the built-in one");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Download a javadoc jar from a Maven repository");
  std::string group;
  std::string artifact;
  std::string version;
  std::string dest = ".";
  std::string base_url;
  std::string extract_to;
  fetch->add_option("--group", group, "Maven group id")->required();
  fetch->add_option("--artifact", artifact, "Maven artifact id")->required();
  fetch->add_option("--version", version, "Artifact version")->required();
  fetch->add_option("--dest", dest, "Directory for the downloaded jar")
      ->capture_default_str();
  fetch->add_option("--base-url", base_url, "Repository base URL (default: Maven Central)");
  fetch->add_option("--extract-to", extract_to, "Also unpack the jar into this directory");

  // parse-docs
  auto* parse_docs =
      app.add_subcommand("parse-docs", "Parse an extracted javadoc tree into API JSON");
  std::string input;
  std::string library_name;
  std::string library_version;
  std::string parse_output;
  parse_docs->add_option("--input", input, "Directory with extracted javadoc HTML")->required();
  parse_docs->add_option("--name", library_name, "Library name")->required();
  parse_docs->add_option("--lib-version", library_version, "Library version")->required();
  parse_docs->add_option("--output", parse_output, "API JSON output path")->required();

  // features
  auto* features_cmd =
      app.add_subcommand("features", "Extract feature vectors for labeled method pairs");
  std::string features_source;
  std::string features_target;
  std::string features_mappings;
  std::string features_output;
  features_cmd->add_option("--source", features_source, "Source library API JSON")->required();
  features_cmd->add_option("--target", features_target, "Target library API JSON")->required();
  features_cmd->add_option("--mappings", features_mappings, "Labeled mapping CSV")->required();
  features_cmd->add_option("--output", features_output, "Feature CSV output path")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the boosted classifier");
  std::string train_features;
  std::string train_output;
  TrainFlags train_flags;
  train_cmd->add_option("--features", train_features, "Feature CSV")->required();
  train_cmd->add_option("--output", train_output, "Model JSON output path")->required();
  add_train_flags(train_cmd, &train_flags);

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search hyperparameters");
  std::string tune_features;
  std::string tune_output;
  std::string trials_out;
  learner::HyperparamGrids grids;
  double validation_fraction = 0.2;
  tune_cmd->add_option("--features", tune_features, "Feature CSV")->required();
  tune_cmd->add_option("--output", tune_output, "Model JSON output for the best trial");
  tune_cmd->add_option("--leaves", grids.max_leaves, "Grid of max_leaves values")
      ->delimiter(',');
  tune_cmd->add_option("--min-leaf", grids.min_leaf_instances,
                       "Grid of min_leaf_instances values")
      ->delimiter(',');
  tune_cmd->add_option("--rates", grids.learning_rates, "Grid of learning rates")
      ->delimiter(',');
  tune_cmd->add_option("--trees", grids.num_trees, "Grid of boosting round counts")
      ->delimiter(',');
  tune_cmd->add_option("--validation-fraction", validation_fraction,
                       "Share of labeled vectors held out for validation")
      ->capture_default_str();
  tune_cmd->add_option("--trials-out", trials_out, "CSV listing every trial");

  // recommend
  auto* recommend_cmd =
      app.add_subcommand("recommend", "Rank replacement candidates for source methods");
  std::string recommend_model;
  std::string recommend_source;
  std::string recommend_target;
  std::string recommend_approach = "rapim";
  std::string recommend_method;
  std::size_t recommend_n = 5;
  std::string recommend_output;
  recommend_cmd->add_option("--model", recommend_model, "Model JSON (boosted classifier only)");
  recommend_cmd->add_option("--source", recommend_source, "Source library API JSON")
      ->required();
  recommend_cmd->add_option("--target", recommend_target, "Target library API JSON")
      ->required();
  recommend_cmd->add_option("--approach", recommend_approach,
                            "Scorer: rapim, ltr, tmap or ms")
      ->check(CLI::IsMember({"rapim", "ltr", "tmap", "ms"}))
      ->capture_default_str();
  recommend_cmd->add_option("--source-method", recommend_method,
                            "Only recommend for this qualified method id");
  recommend_cmd->add_option("-n,--top", recommend_n, "Recommendations per source method")
      ->capture_default_str();
  recommend_cmd->add_option("--output", recommend_output, "Write JSON here instead of stdout");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate approaches on a labeled dataset");
  std::string evaluate_mappings;
  std::vector<std::string> evaluate_apis;
  std::string evaluate_mode = "loro";
  std::string evaluate_approach = "all";
  TrainFlags evaluate_flags;
  bool refit_ltr = false;
  std::string json_out;
  std::string points_out;
  evaluate_cmd->add_option("--mappings", evaluate_mappings, "Labeled mapping CSV")->required();
  evaluate_cmd->add_option("--api", evaluate_apis, "API JSON (repeat for every library)")
      ->required();
  evaluate_cmd->add_option("--mode", evaluate_mode, "loro, curve or roc")
      ->check(CLI::IsMember({"loro", "curve", "roc"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--approach", evaluate_approach,
                           "all or one of rapim, ltr, tmap, ms (loro mode)")
      ->check(CLI::IsMember({"all", "rapim", "ltr", "tmap", "ms"}))
      ->capture_default_str();
  add_train_flags(evaluate_cmd, &evaluate_flags);
  evaluate_cmd->add_flag("--refit-ltr", refit_ltr,
                         "Refit the linear baseline per fold instead of using the published "
                         "weights");
  evaluate_cmd->add_option("--json", json_out, "Write the report as JSON here");
  evaluate_cmd->add_option("--points", points_out, "Write curve or roc points as CSV here");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Serve recommendations over HTTP");
  std::string serve_model;
  std::string serve_source;
  std::string serve_target;
  std::string serve_approach = "rapim";
  int serve_port = 8080;
  serve_cmd->add_option("--model", serve_model, "Model JSON (boosted classifier only)");
  serve_cmd->add_option("--source", serve_source, "Source library API JSON")->required();
  serve_cmd->add_option("--target", serve_target, "Target library API JSON")->required();
  serve_cmd->add_option("--approach", serve_approach, "Scorer: rapim, ltr, tmap or ms")
      ->check(CLI::IsMember({"rapim", "ltr", "tmap", "ms"}))
      ->capture_default_str();
  serve_cmd->add_option("--port", serve_port, "Port to bind on 127.0.0.1 (0 picks one)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (fetch->parsed()) {
      return run_fetch(global, out, group, artifact, version, dest, base_url, extract_to);
    }
    if (parse_docs->parsed()) {
      return run_parse_docs(out, err, input, library_name, library_version, parse_output);
    }
    if (features_cmd->parsed()) {
      return run_features(global, out, features_source, features_target, features_mappings,
                          features_output);
    }
    if (train_cmd->parsed()) {
      return run_train(global, out, train_features, train_output, train_flags);
    }
    if (tune_cmd->parsed()) {
      return run_tune(global, out, tune_features, tune_output, grids, validation_fraction,
                      trials_out);
    }
    if (recommend_cmd->parsed()) {
      return run_recommend(global, out, recommend_model, recommend_source, recommend_target,
                           recommend_approach, recommend_method, recommend_n,
                           recommend_output);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(global, out, evaluate_mappings, evaluate_apis, evaluate_mode,
                          evaluate_approach, evaluate_flags, refit_ltr, json_out, points_out);
    }
    if (serve_cmd->parsed()) {
      return run_serve(global, out, serve_model, serve_source, serve_target, serve_approach,
                       serve_port);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command selected\n";
  return 2;
}

int run(int argc, const char* const* argv) {
  return run(argc, argv, std::cout, std::cerr);
}

}  // namespace migmap::cli

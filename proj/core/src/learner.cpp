// SPDX-License-Identifier: Apache-2.0
#include "migmap/learner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "migmap/errors.hpp"
#include "migmap/rng.hpp"

namespace migmap::learner {
namespace {

using ordered_json = nlohmann::ordered_json;

// Leaf values and raw scores are kept inside ranges where the logistic
// function is numerically comfortable and probabilities stay inside (0,1).
constexpr double kMaxLeafValue = 4.0;
constexpr double kMaxLogit = 36.0;

double sigmoid(double x) {
  x = std::clamp(x, -kMaxLogit, kMaxLogit);
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

/// Mean logistic loss via the stable softplus form
/// log(1+exp(-x)) = max(0,-x) + log(1+exp(-|x|)).
double mean_logistic_loss(std::span<const double> raw, std::span<const double> y) {
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double margin = (y[i] > 0.5 ? 1.0 : -1.0) * raw[i];
    total += std::max(0.0, -margin) + std::log1p(std::exp(-std::abs(margin)));
  }
  return total / static_cast<double>(raw.size());
}

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;  // squared-error reduction
};

struct BuildNode {
  std::vector<std::uint32_t> rows;
  double sum = 0.0;
  SplitChoice split;
  int node_index = -1;
};

/// Best split of `rows` by squared-error reduction. Candidate thresholds are
/// midpoints between consecutive distinct feature values; both children must
/// keep min_leaf rows. Ties resolve to the lowest feature index, then the
/// lowest threshold.
SplitChoice best_split(const std::vector<std::vector<double>>& columns,
                       std::span<const double> residual,
                       const std::vector<std::uint32_t>& rows, double node_sum,
                       int min_leaf) {
  SplitChoice best;
  std::size_t n = rows.size();
  if (n < 2 * static_cast<std::size_t>(min_leaf)) return best;
  double parent_sse_term = node_sum * node_sum / static_cast<double>(n);

  std::vector<std::pair<double, double>> points(n);  // (feature value, residual)
  for (std::size_t f = 0; f < columns.size(); ++f) {
    const auto& column = columns[f];
    for (std::size_t i = 0; i < n; ++i) {
      points[i] = {column[rows[i]], residual[rows[i]]};
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double left_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_sum += points[i].second;
      if (points[i].first == points[i + 1].first) continue;
      std::size_t left_n = i + 1;
      std::size_t right_n = n - left_n;
      if (left_n < static_cast<std::size_t>(min_leaf) ||
          right_n < static_cast<std::size_t>(min_leaf)) {
        continue;
      }
      double right_sum = node_sum - left_sum;
      double gain = left_sum * left_sum / static_cast<double>(left_n) +
                    right_sum * right_sum / static_cast<double>(right_n) - parent_sse_term;
      double threshold = points[i].first + (points[i + 1].first - points[i].first) / 2.0;
      bool better = gain > best.gain;
      bool tie = gain == best.gain && best.found &&
                 (static_cast<int>(f) < best.feature ||
                  (static_cast<int>(f) == best.feature && threshold < best.threshold));
      if ((gain > 0.0 && better) || (gain > 0.0 && tie)) {
        best.found = true;
        best.feature = static_cast<int>(f);
        best.threshold = threshold;
        best.gain = gain;
      }
    }
  }
  return best;
}

/// Newton step for the logistic loss on residuals r = y - p: the optimal leaf
/// value is sum(r) / sum(|r|(1-|r|)), saturated to +-kMaxLeafValue when the
/// curvature vanishes.
double leaf_value(std::span<const double> residual, const std::vector<std::uint32_t>& rows) {
  double num = 0.0;
  double den = 0.0;
  for (std::uint32_t i : rows) {
    double r = residual[i];
    num += r;
    den += std::abs(r) * (1.0 - std::abs(r));
  }
  if (den < 1e-12) {
    if (num > 0.0) return kMaxLeafValue;
    if (num < 0.0) return -kMaxLeafValue;
    return 0.0;
  }
  return std::clamp(num / den, -kMaxLeafValue, kMaxLeafValue);
}

/// Grows one regression tree on the residuals, expanding the leaf with the
/// largest achievable gain first until max_leaves is reached or no leaf can
/// split. Returns per-row predicted values through `tree_output`.
RegressionTree grow_tree(const std::vector<std::vector<double>>& columns,
                         std::span<const double> residual, int max_leaves, int min_leaf,
                         std::vector<double>* tree_output) {
  std::size_t n = residual.size();
  RegressionTree tree;

  BuildNode root;
  root.rows.resize(n);
  std::iota(root.rows.begin(), root.rows.end(), 0);
  root.sum = std::accumulate(residual.begin(), residual.end(), 0.0);
  root.split = best_split(columns, residual, root.rows, root.sum, min_leaf);
  root.node_index = 0;
  tree.nodes.push_back({});

  std::vector<BuildNode> open;
  open.push_back(std::move(root));
  int leaves = 1;

  while (leaves < max_leaves) {
    // Pick the expandable leaf with the largest gain; insertion order breaks
    // ties so earlier-created nodes win.
    std::size_t pick = open.size();
    double best_gain = 0.0;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (!open[i].split.found) continue;
      if (pick == open.size() || open[i].split.gain > best_gain) {
        pick = i;
        best_gain = open[i].split.gain;
      }
    }
    if (pick == open.size()) break;

    BuildNode node = std::move(open[pick]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));

    BuildNode left;
    BuildNode right;
    const auto& column = columns[static_cast<std::size_t>(node.split.feature)];
    for (std::uint32_t row : node.rows) {
      if (column[row] <= node.split.threshold) {
        left.rows.push_back(row);
        left.sum += residual[row];
      } else {
        right.rows.push_back(row);
        right.sum += residual[row];
      }
    }

    int left_index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    int right_index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    TreeNode& parent = tree.nodes[static_cast<std::size_t>(node.node_index)];
    parent.feature = node.split.feature;
    parent.threshold = node.split.threshold;
    parent.left = left_index;
    parent.right = right_index;

    left.node_index = left_index;
    right.node_index = right_index;
    left.split = best_split(columns, residual, left.rows, left.sum, min_leaf);
    right.split = best_split(columns, residual, right.rows, right.sum, min_leaf);
    open.push_back(std::move(left));
    open.push_back(std::move(right));
    ++leaves;
  }

  for (auto& node : open) {
    double value = leaf_value(residual, node.rows);
    tree.nodes[static_cast<std::size_t>(node.node_index)].value = value;
    if (tree_output != nullptr) {
      for (std::uint32_t row : node.rows) (*tree_output)[row] = value;
    }
  }
  return tree;
}

}  // namespace

void GbdtHyperparams::validate() const {
  if (max_leaves < 2) throw std::invalid_argument("max_leaves must be at least 2");
  if (min_leaf_instances < 1) throw std::invalid_argument("min_leaf_instances must be positive");
  if (!(learning_rate > 0.0) || !(learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must be in (0,1]");
  }
  if (num_trees < 1) throw std::invalid_argument("num_trees must be positive");
}

double RegressionTree::predict(std::span<const double> row) const {
  std::size_t at = 0;
  while (nodes[at].feature >= 0) {
    const TreeNode& node = nodes[at];
    at = static_cast<std::size_t>(row[static_cast<std::size_t>(node.feature)] <= node.threshold
                                      ? node.left
                                      : node.right);
  }
  return nodes[at].value;
}

std::size_t RegressionTree::leaf_count() const {
  std::size_t count = 0;
  for (const auto& node : nodes) {
    if (node.feature < 0) ++count;
  }
  return count;
}

std::vector<std::size_t> default_feature_indices() {
  return {0, 1, 2, 3, 4, 5, 6, 7};
}

double GbdtModel::predict_proba(std::span<const double> phi) const {
  if (trees_.empty() && feature_indices_.empty()) {
    throw EmptyDataset("model has not been trained");
  }
  std::vector<double> selected(feature_indices_.size());
  for (std::size_t i = 0; i < feature_indices_.size(); ++i) {
    if (feature_indices_[i] >= phi.size()) {
      throw ArityMismatch("model needs feature index " + std::to_string(feature_indices_[i]) +
                          " but the vector has " + std::to_string(phi.size()));
    }
    selected[i] = phi[feature_indices_[i]];
  }
  std::vector<double> row = features::zscore_apply(normalization_, selected);
  double raw = base_score_;
  for (const auto& tree : trees_) {
    raw += hyperparams_.learning_rate * tree.predict(row);
  }
  return sigmoid(raw);
}

double GbdtModel::predict_proba(const features::FeatureVector& vector) const {
  return predict_proba(std::span<const double>(vector.phi.data(), vector.phi.size()));
}

bool GbdtModel::classify(const features::FeatureVector& vector, double threshold) const {
  return predict_proba(vector) >= threshold;
}

GbdtModel train(std::span<const features::FeatureVector> instances,
                const GbdtHyperparams& hyperparams, std::vector<std::size_t> feature_indices,
                std::vector<double>* loss_trace) {
  hyperparams.validate();
  if (feature_indices.empty()) throw std::invalid_argument("feature_indices must not be empty");
  if (instances.empty()) throw EmptyDataset("no training instances");

  std::vector<const features::FeatureVector*> labeled;
  for (const auto& v : instances) {
    if (v.label.has_value()) labeled.push_back(&v);
  }
  if (labeled.empty()) throw EmptyDataset("no labeled training instances");

  std::size_t n = labeled.size();
  std::size_t positives = 0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = *labeled[i]->label ? 1.0 : 0.0;
    positives += *labeled[i]->label ? 1 : 0;
  }
  if (positives == 0 || positives == n) {
    throw DegenerateLabels("training needs both valid and invalid pairs");
  }

  GbdtModel model;
  model.hyperparams_ = hyperparams;
  model.feature_indices_ = std::move(feature_indices);

  std::vector<std::vector<double>> selected_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    selected_rows[i].resize(model.feature_indices_.size());
    for (std::size_t j = 0; j < model.feature_indices_.size(); ++j) {
      std::size_t idx = model.feature_indices_[j];
      if (idx >= features::kFeatureCount) {
        throw std::invalid_argument("feature index out of range: " + std::to_string(idx));
      }
      selected_rows[i][j] = labeled[i]->phi[idx];
    }
  }
  model.normalization_ = features::zscore_fit(selected_rows);

  // Column-major normalized matrix for fast split scanning.
  std::vector<std::vector<double>> columns(model.feature_indices_.size(),
                                           std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row = features::zscore_apply(model.normalization_, selected_rows[i]);
    for (std::size_t j = 0; j < row.size(); ++j) columns[j][i] = row[j];
  }

  double p = static_cast<double>(positives) / static_cast<double>(n);
  model.base_score_ = std::log(p / (1.0 - p));

  std::vector<double> raw(n, model.base_score_);
  std::vector<double> residual(n);
  std::vector<double> tree_output(n);
  if (loss_trace != nullptr) {
    loss_trace->clear();
    loss_trace->push_back(mean_logistic_loss(raw, y));
  }

  for (int round = 0; round < hyperparams.num_trees; ++round) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - sigmoid(raw[i]);
    RegressionTree tree =
        grow_tree(columns, residual, hyperparams.max_leaves, hyperparams.min_leaf_instances,
                  &tree_output);
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] += hyperparams.learning_rate * tree_output[i];
    }
    model.trees_.push_back(std::move(tree));
    if (loss_trace != nullptr) loss_trace->push_back(mean_logistic_loss(raw, y));
  }
  return model;
}

namespace {

ordered_json tree_to_json(const RegressionTree& tree) {
  // Flat node list: splits are {"f","t","l","r"}, leaves are {"v"}. Child
  // fields index into the same list; node 0 is the root.
  ordered_json nodes = ordered_json::array();
  for (const auto& node : tree.nodes) {
    if (node.feature < 0) {
      nodes.push_back(ordered_json{{"v", node.value}});
    } else {
      nodes.push_back(ordered_json{{"f", node.feature},
                                   {"t", node.threshold},
                                   {"l", node.left},
                                   {"r", node.right}});
    }
  }
  return nodes;
}

RegressionTree tree_from_json(const ordered_json& nodes, std::size_t tree_index) {
  std::string path = "trees[" + std::to_string(tree_index) + "]";
  if (!nodes.is_array() || nodes.empty()) throw SchemaViolation(path);
  RegressionTree tree;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& j = nodes[i];
    std::string node_path = path + "[" + std::to_string(i) + "]";
    if (!j.is_object()) throw SchemaViolation(node_path);
    TreeNode node;
    if (j.contains("v")) {
      if (!j["v"].is_number()) throw SchemaViolation(node_path + ".v");
      node.value = j["v"].get<double>();
    } else {
      for (const char* key : {"f", "l", "r"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
          throw SchemaViolation(node_path + "." + key);
        }
      }
      if (!j.contains("t") || !j["t"].is_number()) throw SchemaViolation(node_path + ".t");
      node.feature = j["f"].get<int>();
      node.threshold = j["t"].get<double>();
      node.left = j["l"].get<int>();
      node.right = j["r"].get<int>();
      if (node.feature < 0 || node.left <= 0 || node.right <= 0 ||
          node.left >= static_cast<int>(nodes.size()) ||
          node.right >= static_cast<int>(nodes.size())) {
        throw SchemaViolation(node_path);
      }
    }
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

std::string model_to_json(const GbdtModel& model) {
  ordered_json j;
  j["format_version"] = 1;
  j["hyperparams"] = {{"max_leaves", model.hyperparams().max_leaves},
                      {"min_leaf_instances", model.hyperparams().min_leaf_instances},
                      {"learning_rate", model.hyperparams().learning_rate},
                      {"num_trees", model.hyperparams().num_trees},
                      {"seed", model.hyperparams().seed}};
  j["base_score"] = model.base_score();
  j["feature_indices"] = model.feature_indices();
  j["normalization"] = {{"mean", model.normalization().mean},
                        {"stddev", model.normalization().stddev},
                        {"fitted_on", model.normalization().fitted_on}};
  ordered_json trees = ordered_json::array();
  for (const auto& tree : model.trees()) trees.push_back(tree_to_json(tree));
  j["trees"] = std::move(trees);
  return j.dump(2) + "\n";
}

GbdtModel model_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaViolation("$");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
    throw SchemaViolation("format_version");
  }
  int version = j["format_version"].get<int>();
  if (version != 1) {
    throw VersionMismatch("model format_version " + std::to_string(version) +
                          " is not supported (expected 1)");
  }

  for (const char* key : {"hyperparams", "base_score", "feature_indices", "normalization",
                          "trees"}) {
    if (!j.contains(key)) throw SchemaViolation(key);
  }
  const auto& h = j["hyperparams"];
  if (!h.is_object()) throw SchemaViolation("hyperparams");
  for (const char* key : {"max_leaves", "min_leaf_instances", "num_trees"}) {
    if (!h.contains(key) || !h[key].is_number_integer()) {
      throw SchemaViolation(std::string("hyperparams.") + key);
    }
  }
  if (!h.contains("learning_rate") || !h["learning_rate"].is_number()) {
    throw SchemaViolation("hyperparams.learning_rate");
  }
  if (!h.contains("seed") || !h["seed"].is_number_unsigned()) {
    throw SchemaViolation("hyperparams.seed");
  }

  GbdtModel model;
  model.hyperparams_.max_leaves = h["max_leaves"].get<int>();
  model.hyperparams_.min_leaf_instances = h["min_leaf_instances"].get<int>();
  model.hyperparams_.learning_rate = h["learning_rate"].get<double>();
  model.hyperparams_.num_trees = h["num_trees"].get<int>();
  model.hyperparams_.seed = h["seed"].get<std::uint64_t>();
  try {
    model.hyperparams_.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(std::string("hyperparams: ") + e.what());
  }

  if (!j["base_score"].is_number()) throw SchemaViolation("base_score");
  model.base_score_ = j["base_score"].get<double>();

  if (!j["feature_indices"].is_array() || j["feature_indices"].empty()) {
    throw SchemaViolation("feature_indices");
  }
  for (const auto& idx : j["feature_indices"]) {
    if (!idx.is_number_unsigned()) throw SchemaViolation("feature_indices");
    model.feature_indices_.push_back(idx.get<std::size_t>());
  }

  const auto& norm = j["normalization"];
  if (!norm.is_object() || !norm.contains("mean") || !norm.contains("stddev") ||
      !norm.contains("fitted_on")) {
    throw SchemaViolation("normalization");
  }
  if (!norm["mean"].is_array() || !norm["stddev"].is_array()) {
    throw SchemaViolation("normalization.mean");
  }
  for (const auto& x : norm["mean"]) {
    if (!x.is_number()) throw SchemaViolation("normalization.mean");
    model.normalization_.mean.push_back(x.get<double>());
  }
  for (const auto& x : norm["stddev"]) {
    if (!x.is_number()) throw SchemaViolation("normalization.stddev");
    model.normalization_.stddev.push_back(x.get<double>());
  }
  if (model.normalization_.mean.size() != model.normalization_.stddev.size() ||
      model.normalization_.mean.size() != model.feature_indices_.size()) {
    throw SchemaViolation("normalization");
  }
  if (!norm["fitted_on"].is_number_unsigned()) throw SchemaViolation("normalization.fitted_on");
  model.normalization_.fitted_on = norm["fitted_on"].get<std::size_t>();

  if (!j["trees"].is_array()) throw SchemaViolation("trees");
  std::size_t index = 0;
  for (const auto& tree : j["trees"]) {
    model.trees_.push_back(tree_from_json(tree, index));
    ++index;
  }
  return model;
}

void save_model(const GbdtModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << model_to_json(model);
  if (!out) throw IoFailure("cannot write " + path.string());
}

GbdtModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(text);
}

TuneResult grid_search_tune(std::span<const features::FeatureVector> instances,
                            const HyperparamGrids& grids, double validation_fraction,
                            std::uint64_t seed) {
  if (grids.max_leaves.empty() || grids.min_leaf_instances.empty() ||
      grids.learning_rates.empty() || grids.num_trees.empty()) {
    throw EmptyGrid("every hyperparameter grid needs at least one value");
  }
  if (!(validation_fraction > 0.0) || !(validation_fraction < 1.0)) {
    throw std::invalid_argument("validation_fraction must be in (0,1)");
  }

  std::vector<features::FeatureVector> labeled;
  for (const auto& v : instances) {
    if (v.label.has_value()) labeled.push_back(v);
  }
  if (labeled.size() < 4) {
    throw InsufficientData("tuning needs at least 4 labeled vectors, got " +
                           std::to_string(labeled.size()));
  }

  rng::SplitMix64 gen(seed);
  rng::shuffle(labeled, gen);
  std::size_t validation_n = static_cast<std::size_t>(
      std::round(validation_fraction * static_cast<double>(labeled.size())));
  validation_n = std::clamp<std::size_t>(validation_n, 1, labeled.size() - 2);
  std::vector<features::FeatureVector> validation(labeled.begin(),
                                                  labeled.begin() + validation_n);
  std::vector<features::FeatureVector> training(labeled.begin() + validation_n, labeled.end());

  TuneResult result;
  bool have_best = false;
  for (int trees : grids.num_trees) {
    for (int leaves : grids.max_leaves) {
      for (int min_leaf : grids.min_leaf_instances) {
        for (double rate : grids.learning_rates) {
          GbdtHyperparams hp;
          hp.max_leaves = leaves;
          hp.min_leaf_instances = min_leaf;
          hp.learning_rate = rate;
          hp.num_trees = trees;
          hp.seed = seed;
          GbdtModel model = train(training, hp);
          std::size_t wrong = 0;
          for (const auto& v : validation) {
            if (model.classify(v) != *v.label) ++wrong;
          }
          double error = static_cast<double>(wrong) / static_cast<double>(validation.size());
          result.trials.emplace_back(hp, error);
          bool better = !have_best || error < result.validation_error ||
                        (error == result.validation_error &&
                         (trees < result.best.num_trees ||
                          (trees == result.best.num_trees && leaves < result.best.max_leaves)));
          if (better) {
            have_best = true;
            result.best = hp;
            result.validation_error = error;
            result.model = std::move(model);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace migmap::learner

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "migmap/features.hpp"

namespace migmap::learner {

struct GbdtHyperparams {
  int max_leaves = 6;
  int min_leaf_instances = 47;
  double learning_rate = 0.14;
  int num_trees = 233;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;

  friend bool operator==(const GbdtHyperparams&, const GbdtHyperparams&) = default;
};

/// Binary tree stored as an array; feature < 0 marks a leaf carrying `value`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  double value = 0.0;
  int left = -1;
  int right = -1;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> row) const;
  std::size_t leaf_count() const;
};

/// The default model uses the eight signature and documentation features
/// phi1..phi8; phi9 is dropped by feature selection and phix belongs to a
/// baseline.
std::vector<std::size_t> default_feature_indices();

class GbdtModel {
 public:
  GbdtModel() = default;

  /// Probability that the pair is a valid mapping, strictly inside (0,1).
  double predict_proba(std::span<const double> phi) const;
  double predict_proba(const features::FeatureVector& vector) const;

  bool classify(const features::FeatureVector& vector, double threshold = 0.5) const;

  const GbdtHyperparams& hyperparams() const { return hyperparams_; }
  double base_score() const { return base_score_; }
  const std::vector<std::size_t>& feature_indices() const { return feature_indices_; }
  const features::NormalizationParams& normalization() const { return normalization_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }

  friend GbdtModel train(std::span<const features::FeatureVector> instances,
                         const GbdtHyperparams& hyperparams,
                         std::vector<std::size_t> feature_indices,
                         std::vector<double>* loss_trace);
  friend GbdtModel model_from_json(const std::string& text);

 private:
  GbdtHyperparams hyperparams_;
  double base_score_ = 0.0;
  std::vector<std::size_t> feature_indices_;
  features::NormalizationParams normalization_;
  std::vector<RegressionTree> trees_;
};

/// Trains the boosted classifier on the labeled instances (unlabeled ones are
/// rejected). Deterministic: no randomness is consumed. When `loss_trace` is
/// given it receives the mean logistic loss before boosting and after every
/// tree, which is non-increasing.
GbdtModel train(std::span<const features::FeatureVector> instances,
                const GbdtHyperparams& hyperparams,
                std::vector<std::size_t> feature_indices = default_feature_indices(),
                std::vector<double>* loss_trace = nullptr);

std::string model_to_json(const GbdtModel& model);
GbdtModel model_from_json(const std::string& text);

void save_model(const GbdtModel& model, const std::filesystem::path& path);
GbdtModel load_model(const std::filesystem::path& path);

struct HyperparamGrids {
  std::vector<int> max_leaves = {6};
  std::vector<int> min_leaf_instances = {47};
  std::vector<double> learning_rates = {0.14};
  std::vector<int> num_trees = {233};
};

struct TuneResult {
  GbdtHyperparams best;
  double validation_error = 0.0;
  GbdtModel model;
  std::vector<std::pair<GbdtHyperparams, double>> trials;
};

/// Exhaustive grid search scored by misclassification rate on a seeded random
/// validation split. Ties prefer fewer trees, then fewer leaves, then the
/// earlier grid entry.
TuneResult grid_search_tune(std::span<const features::FeatureVector> instances,
                            const HyperparamGrids& grids, double validation_fraction,
                            std::uint64_t seed);

}  // namespace migmap::learner

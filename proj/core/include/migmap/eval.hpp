// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "migmap/baselines.hpp"
#include "migmap/features.hpp"
#include "migmap/learner.hpp"
#include "migmap/mapping_dataset.hpp"

namespace migmap::eval {

struct ConfusionMatrix {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;

  std::size_t total() const {
    return true_positive + false_positive + true_negative + false_negative;
  }
};

/// (TP + TN) / total; throws EmptyMatrix on an empty matrix.
double confusion_accuracy(const ConfusionMatrix& matrix);

/// Classifies every labeled vector at the threshold and tallies the outcomes.
ConfusionMatrix evaluate_classifier(const learner::GbdtModel& model,
                                    std::span<const features::FeatureVector> vectors,
                                    double threshold = 0.5);

enum class Approach { rapim, ltr, tmap, ms };

std::string_view approach_tag(Approach approach);
std::optional<Approach> approach_from_tag(std::string_view tag);

/// Scores a candidate target method against a source method; larger is a
/// better migration match.
using PairScorer =
    std::function<double(const corpus::ApiMethod&, const corpus::ApiMethod&)>;

PairScorer make_rapim_scorer(learner::GbdtModel model,
                             features::FeatureExtractor extractor = features::FeatureExtractor());
PairScorer make_ltr_scorer(baselines::LtrWeights weights,
                           features::FeatureExtractor extractor = features::FeatureExtractor());
PairScorer make_tmap_scorer(features::FeatureExtractor extractor = features::FeatureExtractor());
PairScorer make_ms_scorer();

struct Recommendation {
  std::string target_id;
  double score = 0.0;
};

struct RecommendationSet {
  std::string source_id;
  std::vector<Recommendation> recommendations;  // best first
};

/// Highest-scoring target method; score ties resolve to the lexicographically
/// smallest qualified id. Throws EmptyTargetLibrary when `targets` is empty.
Recommendation recommend_top1(const corpus::ApiMethod& source, const corpus::ApiLibrary& targets,
                              const PairScorer& scorer);

/// Up to n recommendations ordered by descending score, id ascending on ties.
RecommendationSet recommend_top_n(const corpus::ApiMethod& source,
                                  const corpus::ApiLibrary& targets, const PairScorer& scorer,
                                  std::size_t n);

struct RuleResult {
  std::string rule_id;
  double accuracy = 0.0;
  std::size_t evaluated = 0;  // pairs (classifier) or source methods (ranking)
};

struct ApproachReport {
  Approach approach = Approach::rapim;
  std::vector<RuleResult> per_rule;
  double average_accuracy = 0.0;  // mean over rules with evaluated > 0
  double error = 0.0;             // 1 - average_accuracy
};

struct LoroOptions {
  learner::GbdtHyperparams hyperparams;
  double classification_threshold = 0.5;
  /// When true the linear baseline is refit on the training rules of each
  /// fold; otherwise the published weights are used everywhere.
  bool refit_linear_baseline = false;
  std::vector<Approach> approaches = {Approach::rapim, Approach::ltr, Approach::tmap,
                                      Approach::ms};
};

struct LoroReport {
  std::vector<ApproachReport> approaches;

  const ApproachReport* find(Approach approach) const;
};

/// Trains the boosted classifier on every labeled vector whose rule differs
/// from `held_out_rule`. The held-out rows never influence the result, which
/// the leakage tests verify byte-for-byte.
learner::GbdtModel train_excluding_rule(std::span<const features::FeatureVector> vectors,
                                        std::string_view held_out_rule,
                                        const learner::GbdtHyperparams& hyperparams);

/// Leave-one-rule-out evaluation. The boosted classifier is scored as pair
/// classification accuracy on the held-out rule; the baselines are scored as
/// top-1 ranking accuracy over the held-out rule's source methods that have
/// at least one valid-labeled candidate. Throws TooFewRules below two rules.
LoroReport leave_one_rule_out(const corpus::MappingDataset& dataset,
                              const features::FeatureExtractor& extractor,
                              const LoroOptions& options = {});

struct CurvePoint {
  std::size_t training_size = 0;
  double accuracy = 0.0;
};

/// Shuffles the labeled vectors once with the seed, splits them into `folds`
/// near-equal folds (the first size%folds folds take one extra row), then for
/// k = 1..folds-1 trains on the first k folds and reports held-out accuracy
/// on the rest. Throws InsufficientData when fewer than 2*folds rows.
std::vector<CurvePoint> training_size_curve(std::span<const features::FeatureVector> vectors,
                                            const learner::GbdtHyperparams& hyperparams,
                                            int folds = 10, std::uint64_t seed = 42);

struct RocPoint {
  double threshold = 0.0;
  double false_positive_rate = 0.0;
  double true_positive_rate = 0.0;
};

/// One point per distinct probability plus thresholds 0 and 1 (a pair is
/// predicted valid when probability >= threshold, so the curve always spans
/// (0,0) to (1,1)). Points come back sorted by (fpr, tpr). Throws
/// EmptyDataset / DegenerateLabels.
std::vector<RocPoint> roc_curve(std::span<const std::pair<double, bool>> scored);

/// Trapezoidal area under a curve sorted by (fpr, tpr).
double roc_auc(std::span<const RocPoint> points);

struct MannWhitneyResult {
  double u_a = 0.0;
  double u_b = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  /// The normal approximation needs samples with n*m >= 20 to be trusted.
  bool reliable = false;
};

/// Two-sided Mann-Whitney U via midranks with tie-corrected variance and a
/// 0.5 continuity correction. Throws EmptySample when a sample is empty.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

}  // namespace migmap::eval

// SPDX-License-Identifier: Apache-2.0
#include "migmap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "migmap/errors.hpp"
#include "migmap/rng.hpp"

namespace migmap::eval {
namespace {

/// Top-1 ranking accuracy over the labeled pairs of one rule: for every
/// source method with at least one valid candidate, the highest-scoring
/// candidate (smallest target id on ties) must be labeled valid.
RuleResult ranking_rule_result(const corpus::RuleGroup& group,
                               const std::vector<double>& scores) {
  // Sorted map keeps evaluation order independent of CSV row order.
  std::map<std::string, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < group.mappings.size(); ++i) {
    by_source[group.mappings[i].record.source_method_id].push_back(i);
  }

  RuleResult result;
  result.rule_id = group.rule.rule_id;
  std::size_t hits = 0;
  for (const auto& [source_id, indices] : by_source) {
    bool any_valid = std::any_of(indices.begin(), indices.end(), [&](std::size_t i) {
      return group.mappings[i].record.label == corpus::MappingLabel::valid;
    });
    if (!any_valid) continue;
    std::size_t best = indices.front();
    for (std::size_t i : indices) {
      if (scores[i] > scores[best] ||
          (scores[i] == scores[best] &&
           group.mappings[i].record.target_method_id <
               group.mappings[best].record.target_method_id)) {
        best = i;
      }
    }
    ++result.evaluated;
    if (group.mappings[best].record.label == corpus::MappingLabel::valid) ++hits;
  }
  result.accuracy = result.evaluated == 0
                        ? 0.0
                        : static_cast<double>(hits) / static_cast<double>(result.evaluated);
  return result;
}

void finish_report(ApproachReport* report) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& rule : report->per_rule) {
    if (rule.evaluated == 0) continue;
    sum += rule.accuracy;
    ++counted;
  }
  report->average_accuracy = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  report->error = 1.0 - report->average_accuracy;
}

double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace

double confusion_accuracy(const ConfusionMatrix& matrix) {
  if (matrix.total() == 0) throw EmptyMatrix("confusion matrix has no outcomes");
  return static_cast<double>(matrix.true_positive + matrix.true_negative) /
         static_cast<double>(matrix.total());
}

ConfusionMatrix evaluate_classifier(const learner::GbdtModel& model,
                                    std::span<const features::FeatureVector> vectors,
                                    double threshold) {
  ConfusionMatrix matrix;
  for (const auto& v : vectors) {
    if (!v.label.has_value()) continue;
    bool predicted = model.classify(v, threshold);
    if (predicted && *v.label) {
      ++matrix.true_positive;
    } else if (predicted && !*v.label) {
      ++matrix.false_positive;
    } else if (!predicted && !*v.label) {
      ++matrix.true_negative;
    } else {
      ++matrix.false_negative;
    }
  }
  return matrix;
}

std::string_view approach_tag(Approach approach) {
  switch (approach) {
    case Approach::rapim: return "rapim";
    case Approach::ltr: return "ltr";
    case Approach::tmap: return "tmap";
    case Approach::ms: return "ms";
  }
  return "rapim";
}

std::optional<Approach> approach_from_tag(std::string_view tag) {
  if (tag == "rapim") return Approach::rapim;
  if (tag == "ltr") return Approach::ltr;
  if (tag == "tmap") return Approach::tmap;
  if (tag == "ms") return Approach::ms;
  return std::nullopt;
}

PairScorer make_rapim_scorer(learner::GbdtModel model, features::FeatureExtractor extractor) {
  return [model = std::move(model), extractor = std::move(extractor)](
             const corpus::ApiMethod& s, const corpus::ApiMethod& t) {
    return model.predict_proba(extractor.extract(s, t));
  };
}

PairScorer make_ltr_scorer(baselines::LtrWeights weights, features::FeatureExtractor extractor) {
  return [weights, extractor = std::move(extractor)](const corpus::ApiMethod& s,
                                                     const corpus::ApiMethod& t) {
    return baselines::ltr_score(weights, extractor.phi_all(s, t));
  };
}

PairScorer make_tmap_scorer(features::FeatureExtractor extractor) {
  return [extractor = std::move(extractor)](const corpus::ApiMethod& s,
                                            const corpus::ApiMethod& t) {
    return baselines::tmap_score(s, t, extractor);
  };
}

PairScorer make_ms_scorer() {
  return [](const corpus::ApiMethod& s, const corpus::ApiMethod& t) {
    return baselines::ms_score(s, t);
  };
}

Recommendation recommend_top1(const corpus::ApiMethod& source, const corpus::ApiLibrary& targets,
                              const PairScorer& scorer) {
  if (targets.methods().empty()) {
    throw EmptyTargetLibrary("no candidate methods in " + targets.name());
  }
  // Methods are sorted by qualified id, so the first maximum is the
  // lexicographically smallest of the tied candidates.
  Recommendation best;
  bool first = true;
  for (const auto& method : targets.methods()) {
    double score = scorer(source, method);
    if (first || score > best.score) {
      best.target_id = method.qualified_id();
      best.score = score;
      first = false;
    }
  }
  return best;
}

RecommendationSet recommend_top_n(const corpus::ApiMethod& source,
                                  const corpus::ApiLibrary& targets, const PairScorer& scorer,
                                  std::size_t n) {
  if (targets.methods().empty()) {
    throw EmptyTargetLibrary("no candidate methods in " + targets.name());
  }
  RecommendationSet set;
  set.source_id = source.qualified_id();
  for (const auto& method : targets.methods()) {
    set.recommendations.push_back({method.qualified_id(), scorer(source, method)});
  }
  std::stable_sort(set.recommendations.begin(), set.recommendations.end(),
                   [](const Recommendation& a, const Recommendation& b) {
                     return a.score > b.score;
                   });
  if (set.recommendations.size() > n) set.recommendations.resize(n);
  return set;
}

const ApproachReport* LoroReport::find(Approach approach) const {
  for (const auto& report : approaches) {
    if (report.approach == approach) return &report;
  }
  return nullptr;
}

learner::GbdtModel train_excluding_rule(std::span<const features::FeatureVector> vectors,
                                        std::string_view held_out_rule,
                                        const learner::GbdtHyperparams& hyperparams) {
  std::vector<features::FeatureVector> training;
  for (const auto& v : vectors) {
    if (v.rule_id != held_out_rule) training.push_back(v);
  }
  return learner::train(training, hyperparams);
}

LoroReport leave_one_rule_out(const corpus::MappingDataset& dataset,
                              const features::FeatureExtractor& extractor,
                              const LoroOptions& options) {
  if (dataset.rules.size() < 2) {
    throw TooFewRules("leave-one-rule-out needs at least 2 rules, got " +
                      std::to_string(dataset.rules.size()));
  }

  // Feature extraction dominates the cost, so run it once per pair up front.
  std::vector<std::vector<features::FeatureVector>> per_rule_vectors;
  std::vector<features::FeatureVector> all_vectors;
  for (const auto& group : dataset.rules) {
    per_rule_vectors.push_back(features::extract_rule_vectors(group, extractor));
    for (const auto& v : per_rule_vectors.back()) all_vectors.push_back(v);
  }

  bool want_rapim = false;
  bool want_ltr = false;
  LoroReport report;
  for (Approach approach : options.approaches) {
    ApproachReport entry;
    entry.approach = approach;
    report.approaches.push_back(std::move(entry));
    want_rapim |= approach == Approach::rapim;
    want_ltr |= approach == Approach::ltr;
  }

  for (std::size_t r = 0; r < dataset.rules.size(); ++r) {
    const corpus::RuleGroup& group = dataset.rules[r];
    const auto& test_vectors = per_rule_vectors[r];

    learner::GbdtModel fold_model;
    if (want_rapim) {
      fold_model = train_excluding_rule(all_vectors, group.rule.rule_id, options.hyperparams);
    }
    baselines::LtrWeights fold_weights = baselines::published_ltr_weights();
    if (want_ltr && options.refit_linear_baseline) {
      std::vector<features::FeatureVector> training;
      for (const auto& v : all_vectors) {
        if (v.rule_id != group.rule.rule_id) training.push_back(v);
      }
      fold_weights = baselines::ltr_train(training);
    }

    for (auto& approach_report : report.approaches) {
      switch (approach_report.approach) {
        case Approach::rapim: {
          RuleResult result;
          result.rule_id = group.rule.rule_id;
          std::size_t correct = 0;
          for (const auto& v : test_vectors) {
            bool predicted = fold_model.classify(v, options.classification_threshold);
            if (predicted == *v.label) ++correct;
            ++result.evaluated;
          }
          result.accuracy = result.evaluated == 0 ? 0.0
                                                  : static_cast<double>(correct) /
                                                        static_cast<double>(result.evaluated);
          approach_report.per_rule.push_back(std::move(result));
          break;
        }
        case Approach::ltr: {
          std::vector<double> scores;
          scores.reserve(test_vectors.size());
          for (const auto& v : test_vectors) {
            scores.push_back(baselines::ltr_score(fold_weights, v.phi));
          }
          approach_report.per_rule.push_back(ranking_rule_result(group, scores));
          break;
        }
        case Approach::tmap: {
          std::vector<double> scores;
          scores.reserve(group.mappings.size());
          for (const auto& m : group.mappings) {
            scores.push_back(baselines::tmap_score(*m.source, *m.target, extractor));
          }
          approach_report.per_rule.push_back(ranking_rule_result(group, scores));
          break;
        }
        case Approach::ms: {
          std::vector<double> scores;
          scores.reserve(group.mappings.size());
          for (const auto& m : group.mappings) {
            scores.push_back(baselines::ms_score(*m.source, *m.target));
          }
          approach_report.per_rule.push_back(ranking_rule_result(group, scores));
          break;
        }
      }
    }
  }

  for (auto& approach_report : report.approaches) finish_report(&approach_report);
  return report;
}

std::vector<CurvePoint> training_size_curve(std::span<const features::FeatureVector> vectors,
                                            const learner::GbdtHyperparams& hyperparams,
                                            int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("folds must be at least 2");
  std::vector<features::FeatureVector> labeled;
  for (const auto& v : vectors) {
    if (v.label.has_value()) labeled.push_back(v);
  }
  if (labeled.size() < 2 * static_cast<std::size_t>(folds)) {
    throw InsufficientData("training size curve needs at least " +
                           std::to_string(2 * folds) + " labeled vectors, got " +
                           std::to_string(labeled.size()));
  }

  rng::SplitMix64 gen(seed);
  rng::shuffle(labeled, gen);

  std::size_t n = labeled.size();
  std::size_t base = n / static_cast<std::size_t>(folds);
  std::size_t extra = n % static_cast<std::size_t>(folds);
  std::vector<std::size_t> fold_end(static_cast<std::size_t>(folds));
  std::size_t offset = 0;
  for (std::size_t f = 0; f < fold_end.size(); ++f) {
    offset += base + (f < extra ? 1 : 0);
    fold_end[f] = offset;
  }

  std::vector<CurvePoint> curve;
  for (int k = 1; k < folds; ++k) {
    std::size_t split = fold_end[static_cast<std::size_t>(k - 1)];
    std::vector<features::FeatureVector> training(labeled.begin(),
                                                  labeled.begin() + split);
    learner::GbdtModel model = learner::train(training, hyperparams);
    std::size_t correct = 0;
    for (std::size_t i = split; i < n; ++i) {
      if (model.classify(labeled[i]) == *labeled[i].label) ++correct;
    }
    CurvePoint point;
    point.training_size = split;
    point.accuracy = static_cast<double>(correct) / static_cast<double>(n - split);
    curve.push_back(point);
  }
  return curve;
}

std::vector<RocPoint> roc_curve(std::span<const std::pair<double, bool>> scored) {
  if (scored.empty()) throw EmptyDataset("roc curve needs scored pairs");
  std::size_t positives = 0;
  for (const auto& [score, label] : scored) positives += label ? 1 : 0;
  std::size_t negatives = scored.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DegenerateLabels("roc curve needs both labels present");
  }

  std::set<double> thresholds = {0.0, 1.0};
  for (const auto& [score, label] : scored) thresholds.insert(score);

  std::vector<RocPoint> points;
  for (double threshold : thresholds) {
    RocPoint point;
    point.threshold = threshold;
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (const auto& [score, label] : scored) {
      if (score < threshold) continue;
      (label ? tp : fp) += 1;
    }
    point.true_positive_rate = static_cast<double>(tp) / static_cast<double>(positives);
    point.false_positive_rate = static_cast<double>(fp) / static_cast<double>(negatives);
    points.push_back(point);
  }
  std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
    return std::tie(a.false_positive_rate, a.true_positive_rate) <
           std::tie(b.false_positive_rate, b.true_positive_rate);
  });
  return points;
}

double roc_auc(std::span<const RocPoint> points) {
  if (points.size() < 2) throw InsufficientData("auc needs at least 2 roc points");
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    double width = points[i].false_positive_rate - points[i - 1].false_positive_rate;
    double height = (points[i].true_positive_rate + points[i - 1].true_positive_rate) / 2.0;
    area += width * height;
  }
  return area;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptySample("both samples must be non-empty");

  std::vector<std::pair<double, int>> combined;  // (value, 0 for a / 1 for b)
  combined.reserve(a.size() + b.size());
  for (double x : a) combined.emplace_back(x, 0);
  for (double x : b) combined.emplace_back(x, 1);
  std::sort(combined.begin(), combined.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  double n_a = static_cast<double>(a.size());
  double n_b = static_cast<double>(b.size());
  double n = n_a + n_b;

  // Midranks: tied values share the average of the ranks they occupy.
  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  std::size_t i = 0;
  while (i < combined.size()) {
    std::size_t j = i;
    while (j < combined.size() && combined[j].first == combined[i].first) ++j;
    double t = static_cast<double>(j - i);
    double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (combined[k].second == 0) rank_sum_a += midrank;
    }
    tie_term += t * t * t - t;
    i = j;
  }

  MannWhitneyResult result;
  result.u_a = rank_sum_a - n_a * (n_a + 1.0) / 2.0;
  result.u_b = n_a * n_b - result.u_a;
  result.reliable = n_a * n_b >= 20.0;

  double mean_u = n_a * n_b / 2.0;
  double variance =
      n_a * n_b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (variance <= 0.0) {
    result.z = 0.0;
    result.p_value = 1.0;
    return result;
  }
  // Continuity correction: shift half a unit toward the mean.
  double delta = result.u_a - mean_u;
  if (delta > 0.5) {
    delta -= 0.5;
  } else if (delta < -0.5) {
    delta += 0.5;
  } else {
    delta = 0.0;
  }
  result.z = delta / std::sqrt(variance);
  result.p_value = std::min(1.0, normal_two_sided_p(result.z));
  return result;
}

}  // namespace migmap::eval

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "migmap/api_model.hpp"
#include "migmap/mapping_dataset.hpp"
#include "migmap/textops.hpp"
#include "migmap/vsm.hpp"

namespace migmap::features {

using corpus::ApiMethod;

/// phi1..phi9 plus the class-description similarity used only by the
/// signature-and-description baseline.
inline constexpr std::size_t kFeatureCount = 10;
inline constexpr std::size_t kPhiX = 9;

using PhiArray = std::array<double, kFeatureCount>;

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "phi1", "phi2", "phi3", "phi4", "phi5", "phi6", "phi7", "phi8", "phi9", "phix"};

struct FeatureVector {
  std::string rule_id;
  std::string source_id;
  std::string target_id;
  PhiArray phi{};
  std::optional<bool> label;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Similarity of parameter counts: 1 - |a-b|/(a+b), with (0,0) mapping to 1.
double phi7_param_count(std::size_t source_count, std::size_t target_count);

/// Exact match of trimmed return type strings, 1.0 or 0.0.
double phi5_return_signature(std::string_view source_type, std::string_view target_type);

class FeatureExtractor {
 public:
  explicit FeatureExtractor(vsm::VsmConfig config = {},
                            const textops::StopwordSet* stopwords = nullptr);

  double phi1_method_description(const ApiMethod& s, const ApiMethod& t) const;
  double phi2_return_description(const ApiMethod& s, const ApiMethod& t) const;
  double phi3_parameters_description(const ApiMethod& s, const ApiMethod& t) const;
  double phi4_parameters_signature(const ApiMethod& s, const ApiMethod& t) const;
  double phi5_return_type(const ApiMethod& s, const ApiMethod& t) const;
  double phi6_method_name(const ApiMethod& s, const ApiMethod& t) const;
  double phi7_parameter_count(const ApiMethod& s, const ApiMethod& t) const;
  double phi8_package_name(const ApiMethod& s, const ApiMethod& t) const;
  double phi9_class_name(const ApiMethod& s, const ApiMethod& t) const;
  double phi_x_class_description(const ApiMethod& s, const ApiMethod& t) const;

  PhiArray phi_all(const ApiMethod& s, const ApiMethod& t) const;

  FeatureVector extract(const ApiMethod& s, const ApiMethod& t,
                        std::optional<bool> label = std::nullopt,
                        std::string rule_id = {}) const;

  /// Cosine similarity of the full-pipeline preprocessed descriptions; the
  /// signature-and-description baseline scores descriptions this way instead
  /// of with phi1's lighter normalization.
  double preprocessed_description_similarity(const ApiMethod& s, const ApiMethod& t) const;

  const vsm::VsmConfig& config() const { return config_; }

  static const FeatureExtractor& default_instance();

 private:
  double ie_similarity(std::string_view a, std::string_view b) const;
  double tpp_similarity(const std::string& a, const std::string& b) const;

  vsm::VsmConfig config_;
  const textops::StopwordSet* stopwords_;
};

struct NormalizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::size_t fitted_on = 0;
};

/// Fits per-column mean and population standard deviation. Throws
/// InsufficientData for fewer than two rows, ArityMismatch on ragged input.
NormalizationParams zscore_fit(std::span<const std::vector<double>> rows);

/// Applies (x - mean) / stddev per column; columns with zero spread map to 0.
std::vector<double> zscore_apply(const NormalizationParams& params,
                                 std::span<const double> row);

struct FeatureScore {
  std::size_t index = 0;
  std::string name;
  double correlation = 0.0;  // absolute Pearson correlation with the label
  bool retained = false;
};

struct FeatureScores {
  std::vector<FeatureScore> scores;  // one per phi1..phi9 plus phix
  double threshold = 0.0;
  std::vector<std::size_t> retained_indices() const;
};

/// Scores phi1..phix by absolute Pearson correlation against the binary label
/// and marks features at or above the threshold as retained. Requires at
/// least 30 labeled vectors and both label values present.
FeatureScores filter_feature_selection(std::span<const FeatureVector> vectors,
                                       double threshold = 0.05);

/// Serializes vectors as CSV, rows ordered by (rule_id, source_id, target_id).
std::string write_feature_csv(std::span<const FeatureVector> vectors);
void save_feature_csv(const std::filesystem::path& path,
                      std::span<const FeatureVector> vectors);

std::vector<FeatureVector> read_feature_csv(const std::string& text);
std::vector<FeatureVector> load_feature_csv(const std::filesystem::path& path);

/// Extracts one labeled vector per resolved mapping in the rule group.
std::vector<FeatureVector> extract_rule_vectors(const corpus::RuleGroup& group,
                                                const FeatureExtractor& extractor);

}  // namespace migmap::features

// SPDX-License-Identifier: Apache-2.0
#include "migmap/features.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <tuple>

#include "migmap/csv.hpp"
#include "migmap/errors.hpp"

namespace migmap::features {
namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return std::string(s);
}

double parse_double_field(const std::string& field, std::size_t row) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, errc] = std::from_chars(first, last, value);
  if (errc != std::errc() || ptr != last) {
    throw MalformedRow("not a number: '" + field + "'", row);
  }
  return value;
}

}  // namespace

double phi7_param_count(std::size_t source_count, std::size_t target_count) {
  if (source_count == 0 && target_count == 0) return 1.0;
  double s = static_cast<double>(source_count);
  double t = static_cast<double>(target_count);
  return 1.0 - std::abs(s - t) / (s + t);
}

double phi5_return_signature(std::string_view source_type, std::string_view target_type) {
  return trim_copy(source_type) == trim_copy(target_type) ? 1.0 : 0.0;
}

FeatureExtractor::FeatureExtractor(vsm::VsmConfig config, const textops::StopwordSet* stopwords)
    : config_(config),
      stopwords_(stopwords != nullptr ? stopwords : &textops::StopwordSet::embedded()) {
  config_.validate();
}

const FeatureExtractor& FeatureExtractor::default_instance() {
  static const FeatureExtractor instance;
  return instance;
}

double FeatureExtractor::ie_similarity(std::string_view a, std::string_view b) const {
  std::string left = textops::to_lower_ascii(textops::information_extraction(a));
  std::string right = textops::to_lower_ascii(textops::information_extraction(b));
  return vsm::text_similarity(left, right, config_);
}

double FeatureExtractor::tpp_similarity(const std::string& a, const std::string& b) const {
  return vsm::text_similarity(textops::text_preprocess(a, *stopwords_),
                              textops::text_preprocess(b, *stopwords_), config_);
}

double FeatureExtractor::phi1_method_description(const ApiMethod& s, const ApiMethod& t) const {
  return vsm::text_similarity(textops::lightweight_normalize(s.description),
                              textops::lightweight_normalize(t.description), config_);
}

double FeatureExtractor::phi2_return_description(const ApiMethod& s, const ApiMethod& t) const {
  return tpp_similarity(s.return_description, t.return_description);
}

double FeatureExtractor::phi3_parameters_description(const ApiMethod& s,
                                                     const ApiMethod& t) const {
  return tpp_similarity(s.input_parameters_description(), t.input_parameters_description());
}

double FeatureExtractor::phi4_parameters_signature(const ApiMethod& s, const ApiMethod& t) const {
  return ie_similarity(s.input_parameters_signature(), t.input_parameters_signature());
}

double FeatureExtractor::phi5_return_type(const ApiMethod& s, const ApiMethod& t) const {
  return phi5_return_signature(s.return_type, t.return_type);
}

double FeatureExtractor::phi6_method_name(const ApiMethod& s, const ApiMethod& t) const {
  return ie_similarity(s.method_name, t.method_name);
}

double FeatureExtractor::phi7_parameter_count(const ApiMethod& s, const ApiMethod& t) const {
  return phi7_param_count(s.input_parameter_count(), t.input_parameter_count());
}

double FeatureExtractor::phi8_package_name(const ApiMethod& s, const ApiMethod& t) const {
  return ie_similarity(s.package_name, t.package_name);
}

double FeatureExtractor::phi9_class_name(const ApiMethod& s, const ApiMethod& t) const {
  return ie_similarity(s.class_name, t.class_name);
}

double FeatureExtractor::phi_x_class_description(const ApiMethod& s, const ApiMethod& t) const {
  return tpp_similarity(s.class_description, t.class_description);
}

double FeatureExtractor::preprocessed_description_similarity(const ApiMethod& s,
                                                             const ApiMethod& t) const {
  return tpp_similarity(s.description, t.description);
}

PhiArray FeatureExtractor::phi_all(const ApiMethod& s, const ApiMethod& t) const {
  PhiArray phi{};
  phi[0] = phi1_method_description(s, t);
  phi[1] = phi2_return_description(s, t);
  phi[2] = phi3_parameters_description(s, t);
  phi[3] = phi4_parameters_signature(s, t);
  phi[4] = phi5_return_type(s, t);
  phi[5] = phi6_method_name(s, t);
  phi[6] = phi7_parameter_count(s, t);
  phi[7] = phi8_package_name(s, t);
  phi[8] = phi9_class_name(s, t);
  phi[kPhiX] = phi_x_class_description(s, t);
  return phi;
}

FeatureVector FeatureExtractor::extract(const ApiMethod& s, const ApiMethod& t,
                                        std::optional<bool> label, std::string rule_id) const {
  FeatureVector v;
  v.rule_id = std::move(rule_id);
  v.source_id = s.qualified_id();
  v.target_id = t.qualified_id();
  v.phi = phi_all(s, t);
  v.label = label;
  return v;
}

NormalizationParams zscore_fit(std::span<const std::vector<double>> rows) {
  if (rows.size() < 2) {
    throw InsufficientData("normalization needs at least 2 rows, got " +
                           std::to_string(rows.size()));
  }
  std::size_t width = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw ArityMismatch("rows of width " + std::to_string(width) + " and " +
                          std::to_string(row.size()));
    }
  }
  NormalizationParams params;
  params.fitted_on = rows.size();
  params.mean.assign(width, 0.0);
  params.stddev.assign(width, 0.0);
  double n = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) params.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < width; ++j) params.mean[j] /= n;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) {
      double d = row[j] - params.mean[j];
      params.stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < width; ++j) params.stddev[j] = std::sqrt(params.stddev[j] / n);
  return params;
}

std::vector<double> zscore_apply(const NormalizationParams& params, std::span<const double> row) {
  if (row.size() != params.mean.size()) {
    throw ArityMismatch("normalizer fitted on width " + std::to_string(params.mean.size()) +
                        ", row has " + std::to_string(row.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = params.stddev[j] == 0.0 ? 0.0 : (row[j] - params.mean[j]) / params.stddev[j];
  }
  return out;
}

std::vector<std::size_t> FeatureScores::retained_indices() const {
  std::vector<std::size_t> out;
  for (const auto& s : scores) {
    if (s.retained) out.push_back(s.index);
  }
  return out;
}

FeatureScores filter_feature_selection(std::span<const FeatureVector> vectors, double threshold) {
  std::vector<const FeatureVector*> labeled;
  for (const auto& v : vectors) {
    if (v.label.has_value()) labeled.push_back(&v);
  }
  if (labeled.size() < 30) {
    throw InsufficientData("feature selection needs at least 30 labeled vectors, got " +
                           std::to_string(labeled.size()));
  }
  bool any_true = false;
  bool any_false = false;
  for (const auto* v : labeled) {
    (*v->label ? any_true : any_false) = true;
  }
  if (!any_true || !any_false) {
    throw DegenerateLabels("feature selection needs both labels present");
  }

  double n = static_cast<double>(labeled.size());
  double label_mean = 0.0;
  for (const auto* v : labeled) label_mean += *v->label ? 1.0 : 0.0;
  label_mean /= n;
  double label_var = 0.0;
  for (const auto* v : labeled) {
    double d = (*v->label ? 1.0 : 0.0) - label_mean;
    label_var += d * d;
  }

  FeatureScores result;
  result.threshold = threshold;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double mean = 0.0;
    for (const auto* v : labeled) mean += v->phi[j];
    mean /= n;
    double var = 0.0;
    double cov = 0.0;
    for (const auto* v : labeled) {
      double d = v->phi[j] - mean;
      var += d * d;
      cov += d * ((*v->label ? 1.0 : 0.0) - label_mean);
    }
    FeatureScore score;
    score.index = j;
    score.name = kFeatureNames[j];
    double denom = std::sqrt(var * label_var);
    score.correlation = denom == 0.0 ? 0.0 : std::abs(cov / denom);
    score.retained = score.correlation >= threshold;
    result.scores.push_back(std::move(score));
  }
  return result;
}

std::string write_feature_csv(std::span<const FeatureVector> vectors) {
  std::vector<const FeatureVector*> sorted;
  sorted.reserve(vectors.size());
  for (const auto& v : vectors) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(), [](const FeatureVector* a, const FeatureVector* b) {
    return std::tie(a->rule_id, a->source_id, a->target_id) <
           std::tie(b->rule_id, b->source_id, b->target_id);
  });

  std::string out = "rule_id,source_id,target_id";
  for (const char* name : kFeatureNames) {
    out += ',';
    out += name;
  }
  out += ",label\n";
  for (const auto* v : sorted) {
    std::vector<std::string> fields = {v->rule_id, v->source_id, v->target_id};
    for (double x : v->phi) fields.push_back(csv::format_double(x));
    fields.push_back(!v->label.has_value() ? "" : (*v->label ? "valid" : "invalid"));
    out += csv::format_row(fields);
    out += '\n';
  }
  return out;
}

void save_feature_csv(const std::filesystem::path& path,
                      std::span<const FeatureVector> vectors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << write_feature_csv(vectors);
  if (!out) throw IoFailure("cannot write " + path.string());
}

namespace {

std::vector<FeatureVector> parse_feature_rows(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) throw MalformedRow("feature file has no header", 1);

  std::string expected = "rule_id,source_id,target_id";
  for (const char* name : kFeatureNames) {
    expected += ',';
    expected += name;
  }
  expected += ",label";
  auto header = csv::parse(expected).at(0);
  if (rows[0] != header) {
    throw MalformedRow("unexpected feature header", 1);
  }

  std::vector<FeatureVector> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size()) {
      throw MalformedRow("expected " + std::to_string(header.size()) + " fields, got " +
                         std::to_string(row.size()), i + 1);
    }
    FeatureVector v;
    v.rule_id = row[0];
    v.source_id = row[1];
    v.target_id = row[2];
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      v.phi[j] = parse_double_field(row[3 + j], i + 1);
    }
    const std::string& label = row[3 + kFeatureCount];
    if (label == "valid") {
      v.label = true;
    } else if (label == "invalid") {
      v.label = false;
    } else if (!label.empty()) {
      throw MalformedRow("label must be valid, invalid or empty, got '" + label + "'", i + 1);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<FeatureVector> read_feature_csv(const std::string& text) {
  return parse_feature_rows(csv::parse(text));
}

std::vector<FeatureVector> load_feature_csv(const std::filesystem::path& path) {
  return parse_feature_rows(csv::read_file(path));
}

std::vector<FeatureVector> extract_rule_vectors(const corpus::RuleGroup& group,
                                                const FeatureExtractor& extractor) {
  std::vector<FeatureVector> out;
  out.reserve(group.mappings.size());
  for (const auto& m : group.mappings) {
    out.push_back(extractor.extract(*m.source, *m.target,
                                    m.record.label == corpus::MappingLabel::valid,
                                    group.rule.rule_id));
  }
  return out;
}

}  // namespace migmap::features

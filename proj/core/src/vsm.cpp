// SPDX-License-Identifier: Apache-2.0
#include "migmap/vsm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace migmap::vsm {
namespace {

std::vector<std::string> split_terms(std::string_view doc) {
  std::vector<std::string> terms;
  std::size_t i = 0;
  while (i < doc.size()) {
    while (i < doc.size() && doc[i] == ' ') ++i;
    std::size_t start = i;
    while (i < doc.size() && doc[i] != ' ') ++i;
    if (i > start) terms.emplace_back(doc.substr(start, i - start));
  }
  return terms;
}

std::map<std::string, std::size_t> term_counts(const std::vector<std::string>& terms) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : terms) ++counts[t];
  return counts;
}

}  // namespace

void VsmConfig::validate() const {
  if (!(log_base > 1.0)) throw std::invalid_argument("vsm log base must be > 1");
}

double TermWeightVector::norm() const {
  double sum = 0.0;
  for (const auto& [term, w] : weights) sum += w * w;
  return std::sqrt(sum);
}

std::pair<TermWeightVector, TermWeightVector> build_weight_vectors(
    std::string_view doc_s, std::string_view doc_t, const VsmConfig& config) {
  config.validate();
  constexpr double kDocumentCount = 2.0;
  const double log_div = std::log(config.log_base);

  auto counts_s = term_counts(split_terms(doc_s));
  auto counts_t = term_counts(split_terms(doc_t));

  auto build = [&](const std::map<std::string, std::size_t>& own,
                   const std::map<std::string, std::size_t>& other) {
    TermWeightVector vec;
    for (const auto& [term, count] : own) vec.term_count += count;
    for (const auto& [term, count] : own) {
      double df = other.contains(term) ? 2.0 : 1.0;
      double idf = std::log(kDocumentCount / df) / log_div;
      if (config.idf_mode == IdfMode::smoothed) idf += 1.0;
      double tf = static_cast<double>(count) / static_cast<double>(vec.term_count);
      vec.weights.emplace(term, tf * idf);
    }
    return vec;
  };

  return {build(counts_s, counts_t), build(counts_t, counts_s)};
}

double cosine_similarity(const TermWeightVector& a, const TermWeightVector& b) {
  double na = a.norm();
  double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = 0.0;
  for (const auto& [term, w] : a.weights) {
    auto it = b.weights.find(term);
    if (it != b.weights.end()) dot += w * it->second;
  }
  double sim = dot / (na * nb);
  if (sim < 0.0) return 0.0;
  if (sim > 1.0) return 1.0;
  return sim;
}

double text_similarity(std::string_view doc_s, std::string_view doc_t, const VsmConfig& config) {
  auto [a, b] = build_weight_vectors(doc_s, doc_t, config);
  return cosine_similarity(a, b);
}

}  // namespace migmap::vsm

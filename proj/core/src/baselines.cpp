// SPDX-License-Identifier: Apache-2.0
#include "migmap/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "migmap/errors.hpp"
#include "migmap/textops.hpp"

namespace migmap::baselines {
namespace {

constexpr std::size_t kLtrFeatures = 8;

/// Solves Ax = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
  std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-12) {
      throw DegenerateLabels("normal equations are singular");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= a[i][k] * x[k];
    x[i] = sum / a[i][i];
  }
  return x;
}

}  // namespace

LtrWeights published_ltr_weights() {
  return {0.41, 0.10, 0.17, 0.39, 0.49, -0.11, 0.37, -0.00058};
}

LtrWeights ltr_train(std::span<const features::FeatureVector> instances) {
  std::vector<const features::FeatureVector*> labeled;
  for (const auto& v : instances) {
    if (v.label.has_value()) labeled.push_back(&v);
  }
  if (labeled.size() < kLtrFeatures + 1) {
    throw InsufficientData("linear baseline needs at least 9 labeled vectors, got " +
                           std::to_string(labeled.size()));
  }
  bool any_true = false;
  bool any_false = false;
  for (const auto* v : labeled) {
    (*v->label ? any_true : any_false) = true;
  }
  if (!any_true || !any_false) {
    throw DegenerateLabels("linear baseline needs both labels present");
  }

  // Normal equations over [1, phi1..phi8]; a tiny ridge keeps collinear
  // features solvable without visibly moving the solution.
  constexpr std::size_t kCols = kLtrFeatures + 1;
  constexpr double kRidge = 1e-9;
  std::vector<std::vector<double>> ata(kCols, std::vector<double>(kCols, 0.0));
  std::vector<double> atb(kCols, 0.0);
  for (const auto* v : labeled) {
    std::array<double, kCols> row;
    row[0] = 1.0;
    for (std::size_t j = 0; j < kLtrFeatures; ++j) row[j + 1] = v->phi[j];
    double y = *v->label ? 1.0 : 0.0;
    for (std::size_t i = 0; i < kCols; ++i) {
      for (std::size_t j = 0; j < kCols; ++j) ata[i][j] += row[i] * row[j];
      atb[i] += row[i] * y;
    }
  }
  for (std::size_t i = 0; i < kCols; ++i) ata[i][i] += kRidge;

  std::vector<double> solution = solve_linear_system(std::move(ata), std::move(atb));
  LtrWeights weights{};
  for (std::size_t j = 0; j < kLtrFeatures; ++j) weights[j] = solution[j + 1];
  return weights;
}

double ltr_score(const LtrWeights& weights, const features::PhiArray& phi) {
  double score = 0.0;
  for (std::size_t j = 0; j < kLtrFeatures; ++j) score += weights[j] * phi[j];
  return score;
}

double ltr_score(const LtrWeights& weights, const features::ApiMethod& source,
                 const features::ApiMethod& target,
                 const features::FeatureExtractor& extractor) {
  return ltr_score(weights, extractor.phi_all(source, target));
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  // Hunt-Szymanski: walk a's positions of each b character from right to left
  // and keep the smallest tail element each match can extend, so the LCS is
  // the length of the longest strictly increasing chain found.
  std::array<std::vector<std::size_t>, 256> positions_in_a;
  for (std::size_t i = a.size(); i-- > 0;) {
    positions_in_a[static_cast<unsigned char>(a[i])].push_back(i);
  }
  std::vector<std::size_t> tails;  // tails[k] = least a-index ending a chain of k+1
  for (char c : b) {
    for (std::size_t pos : positions_in_a[static_cast<unsigned char>(c)]) {
      auto it = std::lower_bound(tails.begin(), tails.end(), pos);
      if (it == tails.end()) {
        tails.push_back(pos);
      } else {
        *it = pos;
      }
    }
  }
  return tails.size();
}

double lcs_norm(std::string_view a, std::string_view b) {
  std::string la = textops::to_lower_ascii(a);
  std::string lb = textops::to_lower_ascii(b);
  if (la.empty() && lb.empty()) return 1.0;
  std::size_t longer = std::max(la.size(), lb.size());
  return static_cast<double>(lcs_length(la, lb)) / static_cast<double>(longer);
}

double token_level_sim(std::string_view a, std::string_view b) {
  auto token_set = [](std::string_view text) {
    std::set<std::string> out;
    // information_extraction camel-splits and joins with single spaces.
    for (const auto& token : textops::tokenize(textops::information_extraction(text))) {
      out.insert(textops::to_lower_ascii(token));
    }
    return out;
  };
  std::set<std::string> sa = token_set(a);
  std::set<std::string> sb = token_set(b);
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const auto& t : sa) intersection += sb.count(t);
  std::size_t unions = sa.size() + sb.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

double tmap_score(const features::ApiMethod& source, const features::ApiMethod& target,
                  const features::FeatureExtractor& extractor) {
  return extractor.preprocessed_description_similarity(source, target) +
         extractor.phi6_method_name(source, target) +
         extractor.phi8_package_name(source, target) +
         extractor.phi9_class_name(source, target) +
         extractor.phi_x_class_description(source, target);
}

double ms_score(const features::ApiMethod& source, const features::ApiMethod& target) {
  return 0.25 * token_level_sim(source.return_type, target.return_type) +
         0.25 * lcs_norm(source.input_parameters_signature(),
                         target.input_parameters_signature()) +
         0.5 * lcs_norm(source.method_name, target.method_name);
}

}  // namespace migmap::baselines

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <string_view>

#include "migmap/features.hpp"

namespace migmap::baselines {

/// Coefficients for phi1..phi8 of the linear learning-to-rank baseline.
using LtrWeights = std::array<double, 8>;

/// Weights reported for the linear baseline trained on the full benchmark.
LtrWeights published_ltr_weights();

/// Least-squares fit of label on phi1..phi8 with an intercept; the intercept
/// is dropped so scores are a pure weighted feature sum. Throws
/// InsufficientData below 9 labeled vectors, DegenerateLabels when only one
/// label value is present.
LtrWeights ltr_train(std::span<const features::FeatureVector> instances);

double ltr_score(const LtrWeights& weights, const features::PhiArray& phi);
double ltr_score(const LtrWeights& weights, const features::ApiMethod& source,
                 const features::ApiMethod& target,
                 const features::FeatureExtractor& extractor =
                     features::FeatureExtractor::default_instance());

/// Length of the longest common subsequence.
std::size_t lcs_length(std::string_view a, std::string_view b);

/// LCS length of the lowercased strings over the length of the longer one;
/// two empty strings count as identical.
double lcs_norm(std::string_view a, std::string_view b);

/// Jaccard overlap of the lowercased camel-case token sets; two empty token
/// sets count as identical.
double token_level_sim(std::string_view a, std::string_view b);

/// Documentation-similarity baseline: preprocessed description similarity
/// plus method name, package name, class name and class description
/// similarities, in [0,5].
double tmap_score(const features::ApiMethod& source, const features::ApiMethod& target,
                  const features::FeatureExtractor& extractor =
                      features::FeatureExtractor::default_instance());

/// Signature-only baseline: 0.25 * return-type token similarity
/// + 0.25 * normalized LCS of the parameter signatures
/// + 0.5 * normalized LCS of the method names.
double ms_score(const features::ApiMethod& source, const features::ApiMethod& target);

}  // namespace migmap::baselines

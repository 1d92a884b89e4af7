// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace migmap::vsm {

enum class IdfMode {
  // idf = 1 + log(N/df). Terms shared by both documents keep weight, so
  // identical documents score 1.
  smoothed,
  // idf = log(N/df). With N = 2 every shared term weighs zero, which makes the
  // similarity of any document pair identically zero. Kept for comparison.
  literal,
};

struct VsmConfig {
  double log_base = 2.718281828459045;  // natural log
  IdfMode idf_mode = IdfMode::smoothed;

  /// Throws std::invalid_argument unless log_base > 1.
  void validate() const;
};

/// Per-document term weights over the shared two-document space.
struct TermWeightVector {
  std::map<std::string, double> weights;  // ordered for deterministic iteration
  std::size_t term_count = 0;             // tokens in the document, with repeats

  double norm() const;
};

/// Builds tf-idf weight vectors for the two documents (N = 2). Documents are
/// space-separated term strings; an empty document yields an empty vector.
std::pair<TermWeightVector, TermWeightVector> build_weight_vectors(
    std::string_view doc_s, std::string_view doc_t, const VsmConfig& config = {});

/// Cosine of the two weight vectors, clamped to [0, 1]. Either norm being zero
/// gives 0 by convention.
double cosine_similarity(const TermWeightVector& a, const TermWeightVector& b);

/// build_weight_vectors + cosine_similarity in one step.
double text_similarity(std::string_view doc_s, std::string_view doc_t,
                       const VsmConfig& config = {});

}  // namespace migmap::vsm

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "migmap/baselines.hpp"
#include "migmap/errors.hpp"
#include "migmap/rng.hpp"
#include "test_support.hpp"

using namespace migmap;
using namespace migmap::baselines;

namespace {

// Textbook bottom-up dynamic-programming table, deliberately different from
// the position-list algorithm inside lcs_length.
std::size_t lcs_table_oracle(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> dp(a.size() + 1,
                                           std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                      : std::max(dp[i - 1][j], dp[i][j - 1]);
    }
  }
  return dp[a.size()][b.size()];
}

std::string random_string(migmap::rng::SplitMix64& gen, std::size_t max_len) {
  static const std::string alphabet = "abcABC<>,. ";
  std::string out;
  const std::size_t len = gen.next_index(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) out.push_back(alphabet[gen.next_index(alphabet.size())]);
  return out;
}

}  // namespace

TEST_CASE("the fixed linear weights are the published ones") {
  const LtrWeights w = published_ltr_weights();
  CHECK(w[0] == 0.41);
  CHECK(w[1] == 0.10);
  CHECK(w[2] == 0.17);
  CHECK(w[3] == 0.39);
  CHECK(w[4] == 0.49);
  CHECK(w[5] == -0.11);
  CHECK(w[6] == 0.37);
  CHECK(w[7] == -0.00058);
}

TEST_CASE("linear scoring is a dot product over the first eight features") {
  const LtrWeights w = published_ltr_weights();
  features::PhiArray phi;
  phi.fill(1.0);
  CHECK(ltr_score(w, phi) == doctest::Approx(1.81942).epsilon(1e-12));

  // The class-name and class-description features do not participate.
  phi[8] = 99.0;
  phi[9] = -99.0;
  CHECK(ltr_score(w, phi) == doctest::Approx(1.81942).epsilon(1e-12));

  features::PhiArray one_hot{};
  one_hot[5] = 2.0;
  CHECK(ltr_score(w, one_hot) == doctest::Approx(-0.22).epsilon(1e-12));
}

TEST_CASE("least squares recovers an exactly linear labeling") {
  // label == phi5 with every other feature independent noise: the design has
  // an exact linear representation, so the fit must find it.
  migmap::rng::SplitMix64 gen(7);
  std::vector<features::FeatureVector> vectors;
  for (int i = 0; i < 60; ++i) {
    features::FeatureVector v;
    for (double& x : v.phi) x = gen.next_double();
    v.phi[4] = gen.next() % 2 == 0 ? 1.0 : 0.0;
    v.label = v.phi[4] == 1.0;
    vectors.push_back(std::move(v));
  }
  const LtrWeights w = ltr_train(vectors);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i] == doctest::Approx(i == 4 ? 1.0 : 0.0).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("linear training input validation") {
  std::vector<features::FeatureVector> eight(8);
  for (int i = 0; i < 8; ++i) eight[i].label = i % 2 == 0;
  CHECK_THROWS_AS(ltr_train(eight), InsufficientData);

  std::vector<features::FeatureVector> unlabeled(20);
  CHECK_THROWS_AS(ltr_train(unlabeled), InsufficientData);

  std::vector<features::FeatureVector> onesided(12);
  for (auto& v : onesided) v.label = true;
  CHECK_THROWS_AS(ltr_train(onesided), DegenerateLabels);

  std::vector<features::FeatureVector> nine(9);
  for (int i = 0; i < 9; ++i) {
    nine[i].phi[0] = 0.1 * i;
    nine[i].label = i % 2 == 0;
  }
  CHECK_NOTHROW(ltr_train(nine));
}

TEST_CASE("subsequence length agrees with the table oracle") {
  CHECK(lcs_length("ABCBDAB", "BDCABA") == 4);
  CHECK(lcs_length("", "anything") == 0);
  CHECK(lcs_length("same", "same") == 4);
  CHECK(lcs_length("abc", "cba") == 1);

  migmap::rng::SplitMix64 gen(2718);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = random_string(gen, 14);
    const std::string b = random_string(gen, 14);
    const std::size_t expected = lcs_table_oracle(a, b);
    CHECK(lcs_length(a, b) == expected);
    CHECK(lcs_length(b, a) == expected);
    CHECK(expected <= std::min(a.size(), b.size()));
  }
}

TEST_CASE("normalized subsequence similarity") {
  CHECK(lcs_norm("toJSONString", "toString") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(lcs_norm("", "") == 1.0);
  CHECK(lcs_norm("a", "") == 0.0);
  CHECK(lcs_norm("ABC", "abc") == 1.0);  // case folded before matching
  CHECK(lcs_norm("mock", "mock") == 1.0);
  CHECK(lcs_norm("xyz", "abc") == 0.0);
}

TEST_CASE("token-level similarity is a Jaccard overlap of camel tokens") {
  CHECK(token_level_sim("toString", "toJSONString") == doctest::Approx(2.0 / 3.0));
  CHECK(token_level_sim("JSONObject", "JsonObject") == 1.0);
  CHECK(token_level_sim("String", "String") == 1.0);
  CHECK(token_level_sim("String", "boolean") == 0.0);
  CHECK(token_level_sim("", "") == 1.0);
  CHECK(token_level_sim("List<String>", "String") == doctest::Approx(0.5));
  CHECK(token_level_sim("a", "") == 0.0);
}

TEST_CASE("signature baseline reproduces the worked example") {
  testsup::MigrationExample example = testsup::make_migration_example();
  const corpus::ApiMethod* best = example.target_library.find(example.best_target_id);
  REQUIRE(best != nullptr);

  // 0.25 * 1 (same return type) + 0.25 * 1 (both parameterless) + 0.5 * 2/3.
  CHECK(ms_score(example.source, *best) == doctest::Approx(0.8333).epsilon(1e-4));

  for (const auto& candidate : example.target_library.methods()) {
    if (candidate.qualified_id() == example.best_target_id) continue;
    CHECK(ms_score(example.source, candidate) < ms_score(example.source, *best));
  }
}

TEST_CASE("documentation baseline spans its full range") {
  corpus::ApiMethod documented = testsup::make_documented_method();
  CHECK(tmap_score(documented, documented) == doctest::Approx(5.0).epsilon(1e-9));

  corpus::ApiMethod blank;
  blank.package_name = "aaa.bbb";
  blank.class_name = "Ccc";
  blank.method_name = "ddd";
  corpus::ApiMethod other;
  other.package_name = "xxx.yyy";
  other.class_name = "Zzz";
  other.method_name = "www";
  CHECK(tmap_score(blank, other) == 0.0);

  migmap::rng::SplitMix64 gen(11);
  for (int i = 0; i < 50; ++i) {
    corpus::ApiMethod a = testsup::make_random_method(gen, "org.alpha");
    corpus::ApiMethod b = testsup::make_random_method(gen, "com.beta");
    const double score = tmap_score(a, b);
    CHECK(score >= 0.0);
    CHECK(score <= 5.0);
  }
}

TEST_CASE("documentation baseline prefers the documented counterpart") {
  testsup::MigrationExample example = testsup::make_migration_example();
  const corpus::ApiMethod* best = example.target_library.find(example.best_target_id);
  REQUIRE(best != nullptr);
  for (const auto& candidate : example.target_library.methods()) {
    if (candidate.qualified_id() == example.best_target_id) continue;
    CHECK(tmap_score(example.source, candidate) < tmap_score(example.source, *best));
  }
}

TEST_CASE("published linear weights prefer the documented counterpart") {
  testsup::MigrationExample example = testsup::make_migration_example();
  const corpus::ApiMethod* best = example.target_library.find(example.best_target_id);
  REQUIRE(best != nullptr);
  const LtrWeights w = published_ltr_weights();
  for (const auto& candidate : example.target_library.methods()) {
    if (candidate.qualified_id() == example.best_target_id) continue;
    CHECK(ltr_score(w, example.source, candidate) < ltr_score(w, example.source, *best));
  }
  // The two scoring overloads agree.
  CHECK(ltr_score(w, example.source, *best) ==
        ltr_score(w, features::FeatureExtractor::default_instance().phi_all(example.source,
                                                                            *best)));
}

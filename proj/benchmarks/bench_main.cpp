// SPDX-License-Identifier: Apache-2.0

// Microbenchmarks for the hot paths: text preprocessing, similarity scoring,
// feature extraction, and the boosted classifier.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "migmap/api_model.hpp"
#include "migmap/features.hpp"
#include "migmap/learner.hpp"
#include "migmap/rng.hpp"
#include "migmap/textops.hpp"
#include "migmap/vsm.hpp"

namespace {

using namespace migmap;

corpus::ApiMethod make_source_method() {
  corpus::ApiMethod m;
  m.package_name = "org.easymock";
  m.class_name = "IMockBuilder";
  m.method_name = "createMock";
  m.return_type = "T";
  m.parameters = {{"name", "String", "the mock name"},
                  {"type", "MockType", "the mock type"}};
  m.description = "Create a named mock of the request type from this builder. "
                  "The same builder can be called to create multiple mocks.";
  m.return_description = "the newly created mock";
  m.class_description = "Helps the creation of partial mocks.";
  return m;
}

corpus::ApiMethod make_target_method() {
  corpus::ApiMethod m;
  m.package_name = "org.mockito";
  m.class_name = "Mockito";
  m.method_name = "mock";
  m.return_type = "T";
  m.parameters = {{"classToMock", "Class<T>", "class or interface to mock"}};
  m.description = "Creates mock object of given class or interface.";
  m.return_description = "mock object";
  m.class_description = "The Mockito library enables mock creation, verification "
                        "and stubbing.";
  return m;
}

// Random labeled vectors with a learnable signal in the first column.
std::vector<features::FeatureVector> make_training_vectors(std::size_t n) {
  rng::SplitMix64 gen(99);
  std::vector<features::FeatureVector> vectors(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& v = vectors[i];
    const bool label = (gen.next() & 1) != 0;
    v.phi[0] = label ? 0.55 + 0.45 * gen.next_double() : 0.45 * gen.next_double();
    for (std::size_t f = 1; f < features::kFeatureCount; ++f) {
      v.phi[f] = gen.next_double();
    }
    v.label = label;
  }
  return vectors;
}

void BM_TextPreprocess(benchmark::State& state) {
  const std::string text =
      "Create a named mock of the request type from this builder. "
      "The same builder can be called to create multiple mocks.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(textops::text_preprocess(text));
  }
}
BENCHMARK(BM_TextPreprocess);

void BM_InformationExtraction(benchmark::State& state) {
  const std::string text = "org.easymock.IMockBuilder#createMock(String,MockType)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(textops::information_extraction(text));
  }
}
BENCHMARK(BM_InformationExtraction);

void BM_TextSimilarity(benchmark::State& state) {
  const std::string a = "create name mock request type builder call create multiple mock";
  const std::string b = "create mock object give class interface annotation support";
  for (auto _ : state) {
    benchmark::DoNotOptimize(vsm::text_similarity(a, b));
  }
}
BENCHMARK(BM_TextSimilarity);

void BM_FeatureExtraction(benchmark::State& state) {
  const corpus::ApiMethod source = make_source_method();
  const corpus::ApiMethod target = make_target_method();
  const auto& extractor = features::FeatureExtractor::default_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(extractor.phi_all(source, target));
  }
}
BENCHMARK(BM_FeatureExtraction);

void BM_GbdtTrain(benchmark::State& state) {
  const auto vectors = make_training_vectors(static_cast<std::size_t>(state.range(0)));
  learner::GbdtHyperparams hp;
  hp.max_leaves = 6;
  hp.min_leaf_instances = 5;
  hp.learning_rate = 0.14;
  hp.num_trees = 25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(learner::train(vectors, hp));
  }
}
BENCHMARK(BM_GbdtTrain)->Arg(100)->Arg(500);

void BM_GbdtPredict(benchmark::State& state) {
  const auto vectors = make_training_vectors(500);
  learner::GbdtHyperparams hp;
  hp.max_leaves = 6;
  hp.min_leaf_instances = 5;
  hp.learning_rate = 0.14;
  hp.num_trees = 233;
  const learner::GbdtModel model = learner::train(vectors, hp);
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.predict_proba(vectors[next]));
    next = (next + 1) % vectors.size();
  }
}
BENCHMARK(BM_GbdtPredict);

}  // namespace

BENCHMARK_MAIN();

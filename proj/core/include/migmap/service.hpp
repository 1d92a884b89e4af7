// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "migmap/eval.hpp"
#include "migmap/mapping_dataset.hpp"

namespace migmap::service {

/// HTTP endpoint serving migration recommendations for one source library
/// against one target library:
///   GET /health                                -> {"status":"ok"}
///   GET /recommend?source_method=<id>&n=<k>    -> ranked candidates
/// Unknown source ids give 404, missing or malformed parameters give 400.
class RecommendService {
 public:
  RecommendService(corpus::ApiLibrary source_library, corpus::ApiLibrary target_library,
                   eval::PairScorer scorer);
  ~RecommendService();

  RecommendService(const RecommendService&) = delete;
  RecommendService& operator=(const RecommendService&) = delete;

  /// Binds the port and serves requests on a background thread; throws
  /// NetworkFailure when the port cannot be bound.
  void start(int port);

  /// Binds an ephemeral port and returns it.
  int start_on_any_port();

  void stop();
  bool is_running() const;
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace migmap::service

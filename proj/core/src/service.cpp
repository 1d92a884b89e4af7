// SPDX-License-Identifier: Apache-2.0
#include "migmap/service.hpp"

#include <charconv>
#include <thread>
#include <utility>

// Keep the httplib configuration identical across translation units.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "migmap/errors.hpp"

namespace migmap::service {

using ordered_json = nlohmann::ordered_json;

struct RecommendService::Impl {
  corpus::ApiLibrary source_library;
  corpus::ApiLibrary target_library;
  eval::PairScorer scorer;
  httplib::Server server;
  std::thread worker;
  int bound_port = -1;

  void configure_routes() {
    // httplib's default options include SO_REUSEPORT on Linux, which lets two
    // servers share one port; keep only SO_REUSEADDR so a conflict is an error.
    server.set_socket_options([](httplib::socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
                 sizeof(yes));
    });

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"status\":\"ok\"}\n", "application/json");
    });

    server.Get("/recommend", [this](const httplib::Request& req, httplib::Response& res) {
      auto fail = [&res](int status, const std::string& message) {
        ordered_json body;
        body["error"] = message;
        res.status = status;
        res.set_content(body.dump() + "\n", "application/json");
      };

      if (!req.has_param("source_method")) {
        fail(400, "missing required parameter: source_method");
        return;
      }
      std::string source_id = req.get_param_value("source_method");

      std::size_t n = 5;
      if (req.has_param("n")) {
        std::string raw = req.get_param_value("n");
        const char* first = raw.data();
        const char* last = raw.data() + raw.size();
        auto [ptr, errc] = std::from_chars(first, last, n);
        if (errc != std::errc() || ptr != last || n == 0) {
          fail(400, "parameter n must be a positive integer");
          return;
        }
      }

      const corpus::ApiMethod* source = source_library.find(source_id);
      if (source == nullptr) {
        fail(404, "unknown source method: " + source_id);
        return;
      }

      eval::RecommendationSet set;
      try {
        set = eval::recommend_top_n(*source, target_library, scorer, n);
      } catch (const std::exception& e) {
        fail(500, e.what());
        return;
      }

      ordered_json body;
      body["source"] = set.source_id;
      ordered_json items = ordered_json::array();
      for (const auto& r : set.recommendations) {
        items.push_back(ordered_json{{"target", r.target_id}, {"score", r.score}});
      }
      body["recommendations"] = std::move(items);
      res.set_content(body.dump() + "\n", "application/json");
    });
  }
};

RecommendService::RecommendService(corpus::ApiLibrary source_library,
                                   corpus::ApiLibrary target_library, eval::PairScorer scorer)
    : impl_(std::make_unique<Impl>()) {
  impl_->source_library = std::move(source_library);
  impl_->target_library = std::move(target_library);
  impl_->scorer = std::move(scorer);
  impl_->configure_routes();
}

RecommendService::~RecommendService() {
  stop();
}

void RecommendService::start(int port) {
  if (is_running()) throw NetworkFailure("service is already running");
  if (!impl_->server.bind_to_port("127.0.0.1", port)) {
    throw NetworkFailure("cannot bind 127.0.0.1:" + std::to_string(port));
  }
  impl_->bound_port = port;
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

int RecommendService::start_on_any_port() {
  if (is_running()) throw NetworkFailure("service is already running");
  int port = impl_->server.bind_to_any_port("127.0.0.1");
  if (port <= 0) throw NetworkFailure("cannot bind an ephemeral port on 127.0.0.1");
  impl_->bound_port = port;
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void RecommendService::stop() {
  if (impl_ == nullptr) return;
  if (impl_->server.is_running()) impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
  impl_->bound_port = -1;
}

bool RecommendService::is_running() const {
  return impl_ != nullptr && impl_->server.is_running();
}

int RecommendService::port() const {
  return impl_ == nullptr ? -1 : impl_->bound_port;
}

}  // namespace migmap::service

// Copyright 2026 The orsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ScorerSuite backed by a remote JSON-over-HTTP service.
//
//   POST /generate {question, path_prefix, layer, n} -> {fragments: [...]}
//   POST /score    {question, path_prefix}           -> {logit}
//   POST /prefer   {question, a, b}                  -> {logit}
//
// Transport failures and 5xx responses are retried with exponential
// backoff; other non-2xx statuses fail immediately.

#ifndef ORSEARCH_HTTP_SUITE_HPP_
#define ORSEARCH_HTTP_SUITE_HPP_

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "orsearch/error.hpp"
#include "orsearch/search.hpp"

namespace orsearch {

struct HttpSuiteOptions {
  std::string endpoint;  // e.g. "http://127.0.0.1:8080"
  std::chrono::milliseconds timeout{30000};
  int retries = 3;
  std::chrono::milliseconds backoff_base{500};
  double backoff_factor = 2.0;
  int max_in_flight = 4;
};

class HttpSuite final : public ScorerSuite {
 public:
  explicit HttpSuite(HttpSuiteOptions options)
      : options_(std::move(options)),
        slots_(std::make_unique<std::counting_semaphore<>>(
            options_.max_in_flight)) {
    if (options_.endpoint.empty()) {
      throw Error(Errc::kInvalidConfig, "empty endpoint");
    }
    if (options_.retries < 0 || options_.max_in_flight < 1) {
      throw Error(Errc::kInvalidConfig,
                  "retries must be >= 0 and max_in_flight >= 1");
    }
  }

  std::vector<std::string> expand(const std::string& question,
                                  const std::vector<std::string>& path_prefix,
                                  Layer layer, int n) override {
    nlohmann::json body{{"question", question},
                        {"path_prefix", path_prefix},
                        {"layer", layer_name(layer)},
                        {"n", n}};
    const nlohmann::json reply = post("/generate", body);
    auto it = reply.find("fragments");
    if (it == reply.end() || !it->is_array()) {
      throw Error(Errc::kMalformedResponse, "/generate: missing 'fragments'");
    }
    if (it->size() != static_cast<std::size_t>(n)) {
      throw Error(Errc::kMalformedResponse,
                  "/generate: " + std::to_string(it->size()) +
                      " fragments, expected " + std::to_string(n));
    }
    std::vector<std::string> out;
    for (const auto& f : *it) {
      if (!f.is_string()) {
        throw Error(Errc::kMalformedResponse,
                    "/generate: fragment is not a string");
      }
      out.push_back(f.get<std::string>());
    }
    return out;
  }

  double score_logit(const std::string& question,
                     const std::vector<std::string>& path_prefix) override {
    return logit_of("/score", post("/score", {{"question", question},
                                              {"path_prefix", path_prefix}}));
  }

  double prefer_logit(const std::string& question,
                      const std::vector<std::string>& a,
                      const std::vector<std::string>& b) override {
    return logit_of("/prefer",
                    post("/prefer", {{"question", question}, {"a", a}, {"b", b}}));
  }

  long retry_count() const { return retries_.load(); }

 private:
  static double logit_of(const char* path, const nlohmann::json& reply) {
    auto it = reply.find("logit");
    if (it == reply.end() || !it->is_number()) {
      throw Error(Errc::kMalformedResponse,
                  std::string(path) + ": missing numeric 'logit'");
    }
    return it->get<double>();
  }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    slots_->acquire();
    struct Release {
      std::counting_semaphore<>* s;
      ~Release() { s->release(); }
    } release{slots_.get()};

    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
      if (attempt > 0) {
        ++retries_;
        const double wait = static_cast<double>(options_.backoff_base.count()) *
                            std::pow(options_.backoff_factor, attempt - 1);
        std::this_thread::sleep_for(
            std::chrono::milliseconds(static_cast<long>(wait)));
      }
      httplib::Client client(options_.endpoint);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
          options_.timeout);
      const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
          options_.timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      auto res = client.Post(path, payload, "application/json");
      if (!res) {
        last_error = "transport: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status >= 500) {
        last_error = "status " + std::to_string(res->status);
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        throw Error(Errc::kHttpStatus, path + ": status " +
                                           std::to_string(res->status));
      }
      try {
        auto reply = nlohmann::json::parse(res->body);
        if (!reply.is_object()) {
          throw Error(Errc::kMalformedResponse, path + ": not a JSON object");
        }
        return reply;
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kMalformedResponse, path + ": " + e.what());
      }
    }
    const bool transport = last_error.rfind("transport", 0) == 0;
    throw Error(transport ? Errc::kTransport : Errc::kHttpStatus,
                path + " failed after " + std::to_string(options_.retries) +
                    " retries (" + last_error + ")");
  }

  HttpSuiteOptions options_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
  std::atomic<long> retries_{0};
};

}  // namespace orsearch

#endif  // ORSEARCH_HTTP_SUITE_HPP_

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

// Deterministic oracle implementation of the three search roles over a
// fixture with one planted correct fragment per layer.

#ifndef ORSEARCH_ORACLE_SUITE_HPP_
#define ORSEARCH_ORACLE_SUITE_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orsearch/error.hpp"
#include "orsearch/rng.hpp"
#include "orsearch/search.hpp"

namespace orsearch {

struct PlantedProblem {
  std::string question;
  std::map<Layer, std::string> correct_fragments;
  std::map<Layer, std::vector<std::string>> decoy_fragments;
};

struct NoiseModel {
  double correct_logit_mean = 2.0;
  double incorrect_logit_mean = -2.0;
  double logit_stddev = 0.0;
  // Preference judge: logit = margin * (c_a - c_b) + judge_stddev * N(0, 1),
  // with c = 1 on the planted path and 0 elsewhere.
  double judge_margin = 4.0;
  double judge_stddev = 0.0;
  // Saturated judge: S = 1, 0 or 0.5 exactly.
  bool perfect_judge = false;
  std::uint64_t rng_seed = 0;
};

// Fragment joiner used for single-shot generation.
using FragmentCombiner =
    std::function<std::string(const std::vector<std::string>&)>;

inline std::string join_lines(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '\n';
    out += parts[i];
  }
  return out;
}

class OracleSuite final : public ScorerSuite {
 public:
  OracleSuite(PlantedProblem problem, NoiseModel noise,
              FragmentCombiner combine = join_lines)
      : problem_(std::move(problem)),
        noise_(noise),
        combine_(std::move(combine)) {
    for (Layer l : kLayers) {
      if (!problem_.correct_fragments.count(l)) {
        throw Error(Errc::kFixtureExhausted,
                    "no planted fragment for layer " +
                        std::string(layer_name(l)));
      }
    }
  }

  const PlantedProblem& problem() const { return problem_; }
  const NoiseModel& noise() const { return noise_; }

  std::vector<std::string> expand(const std::string& question,
                                  const std::vector<std::string>& path_prefix,
                                  Layer layer, int n) override {
    if (n < 1) throw Error(Errc::kInvalidConfig, "n must be >= 1");
    if (path_prefix.empty() && layer == Layer::kOC) return {direct(question)};
    Rng rng(mix_seed(noise_.rng_seed,
                     key("expand", question, layer_name(layer), path_prefix)));
    std::vector<std::string> out = sample_decoys(layer, n - 1, rng);
    const std::size_t slot = rng.uniform_index(out.size() + 1);
    out.insert(out.begin() + static_cast<long>(slot),
               problem_.correct_fragments.at(layer));
    return out;
  }

  double score_logit(const std::string& question,
                     const std::vector<std::string>& path_prefix) override {
    const double mean = on_planted_path(path_prefix)
                            ? noise_.correct_logit_mean
                            : noise_.incorrect_logit_mean;
    if (noise_.logit_stddev == 0.0) return mean;
    Rng rng(mix_seed(noise_.rng_seed, key("score", question, "", path_prefix)));
    return mean + noise_.logit_stddev * rng.normal();
  }

  double prefer_logit(const std::string& question,
                      const std::vector<std::string>& a,
                      const std::vector<std::string>& b) override {
    const int ca = is_planted_leaf(a) ? 1 : 0;
    const int cb = is_planted_leaf(b) ? 1 : 0;
    if (noise_.perfect_judge) {
      constexpr double inf = std::numeric_limits<double>::infinity();
      return ca == cb ? 0.0 : (ca > cb ? inf : -inf);
    }
    double logit = noise_.judge_margin * (ca - cb);
    if (noise_.judge_stddev != 0.0) {
      std::vector<std::string> both = a;
      both.push_back("\x1f");
      both.insert(both.end(), b.begin(), b.end());
      Rng rng(mix_seed(noise_.rng_seed, key("prefer", question, "", both)));
      logit += noise_.judge_stddev * rng.normal();
    }
    return logit;
  }

  // True when every fragment matches the planted fragment of its layer.
  bool on_planted_path(const std::vector<std::string>& prefix) const {
    if (prefix.size() == 1 && prefix[0] == planted_model()) return true;
    if (prefix.size() > kLayers.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] != problem_.correct_fragments.at(kLayers[i])) return false;
    }
    return true;
  }

  bool is_planted_leaf(const std::vector<std::string>& path) const {
    return (path.size() == kLayers.size() || path.size() == 1) &&
           on_planted_path(path);
  }

  std::string planted_model() const {
    std::vector<std::string> parts;
    for (Layer l : kLayers) parts.push_back(problem_.correct_fragments.at(l));
    return combine_(parts);
  }

 private:
  static constexpr std::array<Layer, 3> kLayers{Layer::kSP, Layer::kV,
                                                Layer::kOC};

  static std::string key(std::string_view tag, const std::string& question,
                         std::string_view layer,
                         const std::vector<std::string>& parts) {
    std::string k(tag);
    k += '\x1e';
    k += question;
    k += '\x1e';
    k += layer;
    for (const auto& p : parts) {
      k += '\x1e';
      k += p;
    }
    return k;
  }

  std::vector<std::string> sample_decoys(Layer layer, int count,
                                         Rng& rng) const {
    auto it = problem_.decoy_fragments.find(layer);
    const std::size_t have =
        it == problem_.decoy_fragments.end() ? 0 : it->second.size();
    if (have < static_cast<std::size_t>(count)) {
      throw Error(Errc::kFixtureExhausted,
                  std::to_string(have) + " decoys for layer " +
                      std::string(layer_name(layer)) + ", need " +
                      std::to_string(count));
    }
    if (count == 0) return {};
    std::vector<std::string> pool = it->second;
    rng.shuffle(pool);
    pool.resize(static_cast<std::size_t>(count));
    return pool;
  }

  // Single-shot generation: one fragment per layer drawn from the shuffled
  // pool of planted fragment plus decoys.
  std::string direct(const std::string& question) const {
    std::vector<std::string> parts;
    for (Layer l : kLayers) {
      std::vector<std::string> pool{problem_.correct_fragments.at(l)};
      if (auto it = problem_.decoy_fragments.find(l);
          it != problem_.decoy_fragments.end()) {
        pool.insert(pool.end(), it->second.begin(), it->second.end());
      }
      Rng rng(mix_seed(noise_.rng_seed,
                       key("direct", question, layer_name(l), {})));
      rng.shuffle(pool);
      parts.push_back(pool.front());
    }
    return combine_(parts);
  }

  PlantedProblem problem_;
  NoiseModel noise_;
  FragmentCombiner combine_;
};

}  // namespace orsearch

#endif  // ORSEARCH_ORACLE_SUITE_HPP_

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

// Process-reward guided search over the four-layer reasoning tree
//
//   Q (question) -> SP (sets + parameters) -> V (variables)
//                -> OC (objective + constraints)
//
// Candidates are produced by a pluggable generator and scored by a process
// scorer (logit -> sigmoid). Greedy, epsilon-greedy and random-greedy follow
// a single path; beam search keeps the top-k per layer; BPP re-ranks the
// final beam with a pairwise preference judge.

#ifndef ORSEARCH_SEARCH_HPP_
#define ORSEARCH_SEARCH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orsearch/error.hpp"
#include "orsearch/rng.hpp"

namespace orsearch {

enum class Layer { kQ, kSP, kV, kOC };

constexpr std::string_view layer_name(Layer l) {
  switch (l) {
    case Layer::kQ: return "Q";
    case Layer::kSP: return "SP";
    case Layer::kV: return "V";
    case Layer::kOC: return "OC";
  }
  return "?";
}

constexpr Layer next_layer(Layer l) {
  switch (l) {
    case Layer::kQ: return Layer::kSP;
    case Layer::kSP: return Layer::kV;
    default: return Layer::kOC;
  }
}

inline constexpr int kTreeDepth = 3;  // generated layers below the question

struct Node {
  std::size_t id = 0;
  Layer layer = Layer::kQ;
  std::string content;
  std::optional<std::size_t> parent;
  std::optional<double> prm_score;
};

class SearchTree {
 public:
  std::size_t add_root(std::string question) {
    nodes_.clear();
    nodes_.push_back({0, Layer::kQ, std::move(question), std::nullopt, {}});
    return 0;
  }

  std::size_t add_child(std::size_t parent, std::string content) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({id, next_layer(nodes_[parent].layer), std::move(content),
                      parent, {}});
    return id;
  }

  Node& node(std::size_t id) { return nodes_[id]; }
  const Node& node(std::size_t id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  const std::string& question() const { return nodes_.front().content; }

  // Generated fragments from the first layer below the root down to `id`.
  std::vector<std::string> path(std::size_t id) const {
    std::vector<std::string> out;
    for (std::optional<std::size_t> cur = id; cur && *cur != 0;
         cur = nodes_[*cur].parent) {
      out.push_back(nodes_[*cur].content);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Node> nodes_;
};

// The three pluggable model roles. Implementations must tolerate concurrent
// calls when parallel expansion is enabled.
class ScorerSuite {
 public:
  virtual ~ScorerSuite() = default;

  // Exactly `n` candidate fragments for `layer`, given the fragments chosen
  // so far.
  virtual std::vector<std::string> expand(
      const std::string& question, const std::vector<std::string>& path_prefix,
      Layer layer, int n) = 0;

  // Logit of the "correct" label for a cumulative path prefix.
  virtual double score_logit(const std::string& question,
                             const std::vector<std::string>& path_prefix) = 0;

  // Logit that candidate `a` (shown first) is better than `b`.
  virtual double prefer_logit(const std::string& question,
                              const std::vector<std::string>& a,
                              const std::vector<std::string>& b) = 0;
};

enum class Algorithm {
  kGreedy,
  kEpsilonGreedy,
  kRandomGreedy,
  kBeam,
  kBpp,
  kFullTraverse,
  kDirect,
};

constexpr std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kEpsilonGreedy: return "epsilon-greedy";
    case Algorithm::kRandomGreedy: return "random-greedy";
    case Algorithm::kBeam: return "beam";
    case Algorithm::kBpp: return "bpp";
    case Algorithm::kFullTraverse: return "full-traverse";
    case Algorithm::kDirect: return "direct";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a :
       {Algorithm::kGreedy, Algorithm::kEpsilonGreedy, Algorithm::kRandomGreedy,
        Algorithm::kBeam, Algorithm::kBpp, Algorithm::kFullTraverse,
        Algorithm::kDirect}) {
    if (algorithm_name(a) == text) return a;
  }
  throw Error(Errc::kInvalidConfig,
              "unknown algorithm '" + std::string(text) + "'");
}

struct SearchConfig {
  Algorithm algorithm = Algorithm::kGreedy;
  int branching = 3;
  int beam_width = 2;
  double epsilon = 0.1;
  double threshold = 0.05;
  std::uint64_t rng_seed = 0;
  bool parallel_expansion = false;

  void check() const {
    if (branching < 1) {
      throw Error(Errc::kInvalidConfig, "branching must be >= 1");
    }
    long max_width = 1;
    for (int i = 0; i < kTreeDepth; ++i) max_width *= branching;
    const bool beamed =
        algorithm == Algorithm::kBeam || algorithm == Algorithm::kBpp;
    if (beamed && (beam_width < 1 || beam_width > max_width)) {
      throw Error(Errc::kInvalidConfig,
                  "beam width must be in [1, " + std::to_string(max_width) +
                      "]");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw Error(Errc::kInvalidConfig, "epsilon must be in [0, 1]");
    }
    if (!(threshold >= 0.0)) {
      throw Error(Errc::kInvalidConfig, "threshold must be >= 0");
    }
  }
};

struct Candidate {
  std::size_t node_id = 0;
  double prm_score = 0.0;
  std::optional<double> preference_score;
};

struct SearchOutcome {
  Algorithm algorithm = Algorithm::kGreedy;
  std::uint64_t seed = 0;
  std::size_t chosen_leaf = 0;
  std::size_t reasoning_steps = 0;
  std::vector<std::size_t> visited;
  std::vector<Candidate> final_queue;
  SearchTree tree;

  const Node& leaf() const { return tree.node(chosen_leaf); }
  std::vector<std::string> leaf_path() const { return tree.path(chosen_leaf); }
};

inline double sigmoid(double logit) { return 1.0 / (1.0 + std::exp(-logit)); }

// Index of the highest score; lowest index on ties.
inline std::size_t select_greedy(std::span<const double> scores) {
  if (scores.empty()) throw Error(Errc::kEmptyCandidates, "no candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

inline std::size_t select_epsilon_greedy(std::span<const double> scores,
                                         double epsilon, Rng& rng) {
  if (scores.empty()) throw Error(Errc::kEmptyCandidates, "no candidates");
  if (rng.uniform01() < epsilon) return rng.uniform_index(scores.size());
  return select_greedy(scores);
}

// Uniform choice among candidates whose score is within `threshold` of the
// best.
inline std::size_t select_random_greedy(std::span<const double> scores,
                                        double threshold, Rng& rng) {
  if (scores.empty()) throw Error(Errc::kEmptyCandidates, "no candidates");
  const double best = scores[select_greedy(scores)];
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (best - scores[i] <= threshold) window.push_back(i);
  }
  return window[rng.uniform_index(window.size())];
}

// S(A > B) from both presentation orders, cancelling position bias.
inline double symmetrized_preference(double a_first, double b_first) {
  return 0.5 * (a_first + (1.0 - b_first));
}

// Mean of each row's off-diagonal entries: prefs[i][j] = S(X_i > X_j).
inline std::vector<double> aggregate_preference(
    const std::vector<std::vector<double>>& prefs) {
  const std::size_t n = prefs.size();
  if (n < 2) {
    throw Error(Errc::kEmptyCandidates,
                "preference ranking needs at least two candidates");
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) total += prefs[i][j];
    }
    out[i] = total / static_cast<double>(n - 1);
  }
  return out;
}

namespace search_detail {

template <typename Fn>
auto map_ordered(std::size_t count, bool parallel, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out;
  out.reserve(count);
  if (!parallel || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<R>> pending;
  pending.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pending.push_back(std::async(std::launch::async, fn, i));
  }
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

class Engine {
 public:
  Engine(const SearchConfig& config, ScorerSuite& suite, SearchTree& tree)
      : config_(config), suite_(suite), tree_(tree) {}

  // Expands each parent into `branching` scored children; returns the child
  // ids in (parent, child) order.
  std::vector<std::size_t> expand(const std::vector<std::size_t>& parents) {
    const int n = config_.branching;
    auto fragments = map_ordered(
        parents.size(), config_.parallel_expansion, [&](std::size_t i) {
          const Node& p = tree_.node(parents[i]);
          const Layer layer = next_layer(p.layer);
          std::vector<std::string> out;
          try {
            out = suite_.expand(tree_.question(), tree_.path(p.id), layer, n);
          } catch (const std::exception& e) {
            fail(p.id, layer, e.what());
          }
          if (out.size() != static_cast<std::size_t>(n)) {
            fail(p.id, layer,
                 "generator returned " + std::to_string(out.size()) +
                     " fragments, expected " + std::to_string(n));
          }
          return out;
        });
    std::vector<std::size_t> children;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      for (auto& f : fragments[i]) {
        children.push_back(tree_.add_child(parents[i], std::move(f)));
      }
    }
    auto scores = map_ordered(
        children.size(), config_.parallel_expansion, [&](std::size_t i) {
          const Node& c = tree_.node(children[i]);
          try {
            return sigmoid(
                suite_.score_logit(tree_.question(), tree_.path(c.id)));
          } catch (const std::exception& e) {
            fail(c.id, c.layer, std::string("scorer: ") + e.what());
          }
        });
    for (std::size_t i = 0; i < children.size(); ++i) {
      tree_.node(children[i]).prm_score = scores[i];
    }
    return children;
  }

  std::vector<double> scores_of(const std::vector<std::size_t>& ids) const {
    std::vector<double> s;
    for (auto id : ids) s.push_back(*tree_.node(id).prm_score);
    return s;
  }

  [[noreturn]] void fail(std::size_t node, Layer layer,
                         const std::string& what) const {
    throw Error(Errc::kGeneratorFailure,
                "at node " + std::to_string(node) + " expanding layer " +
                    std::string(layer_name(layer)) + " (" +
                    std::to_string(tree_.size()) +
                    " nodes built so far): " + what);
  }

 private:
  const SearchConfig& config_;
  ScorerSuite& suite_;
  SearchTree& tree_;
};

}  // namespace search_detail

// One beam step: expand every beam and keep the `k` best children by
// score; ties go to the lower parent index, then the lower child index.
inline std::vector<std::size_t> beam_step(SearchTree& tree,
                                          const std::vector<std::size_t>& beams,
                                          int k, const SearchConfig& config,
                                          ScorerSuite& suite) {
  if (beams.empty()) throw Error(Errc::kEmptyCandidates, "empty beam");
  search_detail::Engine engine(config, suite, tree);
  std::vector<std::size_t> children = engine.expand(beams);
  std::stable_sort(children.begin(), children.end(),
                   [&](std::size_t a, std::size_t b) {
                     return *tree.node(a).prm_score > *tree.node(b).prm_score;
                   });
  if (children.size() > static_cast<std::size_t>(k)) children.resize(k);
  return children;
}

// Pairwise preference ranking of `leaves`: both presentation orders are
// queried for every pair. Returns the aggregated score per leaf.
inline std::vector<double> rank_by_preference(
    const SearchTree& tree, const std::vector<std::size_t>& leaves,
    ScorerSuite& suite) {
  const std::size_t n = leaves.size();
  std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.5));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      raw[i][j] = sigmoid(suite.prefer_logit(
          tree.question(), tree.path(leaves[i]), tree.path(leaves[j])));
    }
  }
  std::vector<std::vector<double>> prefs(n, std::vector<double>(n, 0.5));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) prefs[i][j] = symmetrized_preference(raw[i][j], raw[j][i]);
    }
  }
  return aggregate_preference(prefs);
}

inline SearchOutcome run_search(const std::string& question,
                                const SearchConfig& config,
                                ScorerSuite& suite) {
  config.check();
  SearchOutcome out;
  out.algorithm = config.algorithm;
  out.seed = config.rng_seed;
  const std::size_t root = out.tree.add_root(question);
  search_detail::Engine engine(config, suite, out.tree);
  Rng rng(config.rng_seed);

  switch (config.algorithm) {
    case Algorithm::kGreedy:
    case Algorithm::kEpsilonGreedy:
    case Algorithm::kRandomGreedy: {
      std::size_t current = root;
      for (int depth = 0; depth < kTreeDepth; ++depth) {
        const auto children = engine.expand({current});
        const auto scores = engine.scores_of(children);
        std::size_t pick = 0;
        if (config.algorithm == Algorithm::kGreedy) {
          pick = select_greedy(scores);
        } else if (config.algorithm == Algorithm::kEpsilonGreedy) {
          pick = select_epsilon_greedy(scores, config.epsilon, rng);
        } else {
          pick = select_random_greedy(scores, config.threshold, rng);
        }
        current = children[pick];
      }
      out.chosen_leaf = current;
      break;
    }
    case Algorithm::kBeam:
    case Algorithm::kBpp: {
      std::vector<std::size_t> beams{root};
      for (int depth = 0; depth < kTreeDepth; ++depth) {
        beams = beam_step(out.tree, beams, config.beam_width, config, suite);
      }
      for (auto id : beams) {
        out.final_queue.push_back({id, *out.tree.node(id).prm_score, {}});
      }
      std::size_t winner = 0;
      if (config.algorithm == Algorithm::kBpp && beams.size() >= 2) {
        std::vector<double> agg;
        try {
          agg = rank_by_preference(out.tree, beams, suite);
        } catch (const Error&) {
          throw;
        } catch (const std::exception& e) {
          throw Error(Errc::kGeneratorFailure,
                      std::string("preference judge: ") + e.what());
        }
        for (std::size_t i = 0; i < agg.size(); ++i) {
          out.final_queue[i].preference_score = agg[i];
          const auto& w = out.final_queue[winner];
          const auto& c = out.final_queue[i];
          if (agg[i] > agg[winner] ||
              (agg[i] == agg[winner] && c.prm_score > w.prm_score)) {
            winner = i;
          }
        }
      }
      out.chosen_leaf = beams[winner];
      break;
    }
    case Algorithm::kFullTraverse: {
      std::vector<std::size_t> frontier{root};
      for (int depth = 0; depth < kTreeDepth; ++depth) {
        frontier = engine.expand(frontier);
      }
      const auto scores = engine.scores_of(frontier);
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        out.final_queue.push_back({frontier[i], scores[i], {}});
      }
      out.chosen_leaf = frontier[select_greedy(scores)];
      break;
    }
    case Algorithm::kDirect: {
      std::vector<std::string> whole;
      try {
        whole = suite.expand(question, {}, Layer::kOC, 1);
      } catch (const std::exception& e) {
        engine.fail(root, Layer::kOC, e.what());
      }
      if (whole.size() != 1) {
        engine.fail(root, Layer::kOC, "direct generation must return 1 model");
      }
      // Single hop from the question to a complete model.
      const std::size_t leaf = out.tree.add_child(root, std::move(whole[0]));
      out.tree.node(leaf).layer = Layer::kOC;
      out.chosen_leaf = leaf;
      break;
    }
  }

  out.reasoning_steps = out.tree.size() - 1;
  out.visited.resize(out.tree.size());
  std::iota(out.visited.begin(), out.visited.end(), std::size_t{0});
  return out;
}

// Structured report of a search, stable across runs.
inline nlohmann::ordered_json search_report(const SearchOutcome& outcome,
                                            const SearchConfig& config) {
  nlohmann::ordered_json r;
  r["algorithm"] = algorithm_name(outcome.algorithm);
  r["branching"] = config.branching;
  if (config.algorithm == Algorithm::kBeam ||
      config.algorithm == Algorithm::kBpp) {
    r["beam_width"] = config.beam_width;
  }
  if (config.algorithm == Algorithm::kEpsilonGreedy) {
    r["epsilon"] = config.epsilon;
  }
  if (config.algorithm == Algorithm::kRandomGreedy) {
    r["threshold"] = config.threshold;
  }
  r["seed"] = outcome.seed;
  r["steps"] = outcome.reasoning_steps;
  const Node& leaf = outcome.leaf();
  nlohmann::ordered_json chosen;
  chosen["id"] = leaf.id;
  chosen["layer"] = layer_name(leaf.layer);
  if (leaf.prm_score) chosen["prm_score"] = *leaf.prm_score;
  chosen["path"] = outcome.leaf_path();
  r["chosen_leaf"] = std::move(chosen);
  auto queue = nlohmann::ordered_json::array();
  for (const auto& c : outcome.final_queue) {
    nlohmann::ordered_json q;
    q["id"] = c.node_id;
    q["prm_score"] = c.prm_score;
    if (c.preference_score) q["preference_score"] = *c.preference_score;
    queue.push_back(std::move(q));
  }
  r["final_queue"] = std::move(queue);
  r["visited"] = outcome.visited;
  return r;
}

}  // namespace orsearch

#endif  // ORSEARCH_SEARCH_HPP_

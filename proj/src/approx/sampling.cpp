#include <algorithm>
#include <cmath>

#include "tokensched/approx.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/rng.hpp"

namespace tokensched::approx {

int sample_count(int n) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
  return static_cast<int>(std::ceil(ApproxConstants::kSampleLogFactor * lg - 1e-12)) + 1;
}

namespace {

// One walk for commodity k; empty on a dead end or overlong walk.
VertexPath walk_once(const FlowSolution& flow, int k, int L_hat, const std::vector<char>& in_w,
                     Rng& rng) {
  const int w = flow.W[k];
  const ArcFlow& arcs = flow.flow[k];
  VertexPath walk{w};
  int at = w;
  for (int layer = 0;; ++layer) {
    if (layer >= L_hat) return {};
    auto lo = arcs.lower_bound({layer, at, -1});
    auto hi = arcs.lower_bound({layer, at + 1, -1});
    double total = 0.0;
    for (auto it = lo; it != hi; ++it) total += std::max(0.0, it->second);
    if (total < ApproxConstants::kDeadEndFlow) return {};
    double pick = rng.uniform01() * total;
    int next = -1;
    for (auto it = lo; it != hi; ++it) {
      const double f = std::max(0.0, it->second);
      if (f <= 0.0) continue;
      next = std::get<2>(it->first);
      if (pick < f) break;
      pick -= f;
    }
    if (next == w) return {};
    walk.push_back(next);
    at = next;
    if (in_w[at]) break;
  }
  return excise_loops(walk);
}

}  // namespace

SampledPaths sample_paths(const FlowSolution& flow, int L_hat, const std::vector<int>& W,
                          std::uint64_t seed) {
  if (W != flow.W) throw InputError("sample_paths: W differs from the flow's commodities");
  std::vector<char> in_w(flow.n, 0);
  for (int w : W) in_w[w] = 1;

  SampledPaths out;
  out.sample_count = sample_count(flow.n);
  out.threshold = ApproxConstants::kCongestionFactor * flow.z *
                  std::log2(static_cast<double>(std::max(L_hat, 2)));
  const Rng root(seed);
  int best_kept = -1;
  for (int i = 0; i < out.sample_count; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    std::vector<VertexPath> sample;
    for (int k = 0; k < static_cast<int>(W.size()); ++k) {
      for (int attempt = 0; attempt < ApproxConstants::kWalkRetries; ++attempt) {
        VertexPath p = walk_once(flow, k, L_hat, in_w, rng);
        if (!p.empty()) {
          sample.push_back(std::move(p));
          break;
        }
      }
    }
    const auto occ = vertex_occurrences(sample, flow.n);
    std::vector<VertexPath> kept;
    for (auto& path : sample) {
      int con = 0;
      for (int v : path) con = std::max(con, occ[v]);
      if (con <= out.threshold + 1e-9) kept.push_back(path);
    }
    out.kept_per_sample.push_back(static_cast<int>(kept.size()));
    if (static_cast<int>(kept.size()) > best_kept) {
      best_kept = static_cast<int>(kept.size());
      out.best_sample = i;
      out.walks_in_best = static_cast<int>(sample.size());
      out.paths = std::move(kept);
    }
  }
  return out;
}

}  // namespace tokensched::approx

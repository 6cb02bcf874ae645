#ifndef BWM_SPANNING_TREE_HPP
#define BWM_SPANNING_TREE_HPP

#include <cstddef>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "bwm/error.hpp"
#include "bwm/llsm.hpp"
#include "bwm/model.hpp"

namespace bwm {

inline constexpr std::size_t kSpanningTreeMaxNodes = 8;

// Calls visit(edge indices) once for every spanning tree of g.
inline void for_each_spanning_tree(const ComparisonGraph& g,
                                   const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = g.node_count();
  const auto& edges = g.edges();
  if (n == 0) return;
  std::vector<std::size_t> chosen;
  chosen.reserve(n - 1);

  // Union-find without path compression so that unions can be undone.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  std::function<void(std::size_t)> recurse = [&](std::size_t next) {
    if (chosen.size() == n - 1) {
      visit(chosen);
      return;
    }
    if (edges.size() - next < (n - 1) - chosen.size()) return;
    const auto [a, b] = edges[next];
    const auto ra = root(a);
    const auto rb = root(b);
    if (ra != rb) {
      parent[ra] = rb;
      chosen.push_back(next);
      recurse(next + 1);
      chosen.pop_back();
      parent[ra] = ra;
    }
    recurse(next + 1);
  };
  recurse(0);
}

// Geometric mean over all spanning trees of the consistent weight vectors
// each tree determines. Independent of the Laplacian route; used as a test
// oracle for it.
inline PriorityVector spanning_tree_oracle(const IncompletePcm& pcm) {
  const std::size_t n = pcm.size();
  if (n > kSpanningTreeMaxNodes)
    throw Error(Errc::TooLarge, "spanning tree enumeration limited to " + std::to_string(kSpanningTreeMaxNodes) + " nodes");
  const auto g = pcm.graph();
  if (!g.connected()) throw Error(Errc::Disconnected, "comparison graph is not connected");

  const auto& edges = g.edges();
  std::vector<double> edge_log(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) edge_log[e] = pcm.at(edges[e].first, edges[e].second)->log();

  std::vector<double> total(n, 0.0);
  std::size_t trees = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  std::vector<double> y(n);
  std::vector<bool> seen(n);
  std::vector<std::size_t> stack;

  for_each_spanning_tree(g, [&](const std::vector<std::size_t>& tree) {
    for (auto& a : adj) a.clear();
    for (auto e : tree) {
      const auto [i, j] = edges[e];
      // a_ij = w_i / w_j, so y_j = y_i - log a_ij.
      adj[i].emplace_back(j, -edge_log[e]);
      adj[j].emplace_back(i, edge_log[e]);
    }
    std::fill(seen.begin(), seen.end(), false);
    y[0] = 0.0;
    seen[0] = true;
    stack.assign(1, 0);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& [v, delta] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        y[v] = y[u] + delta;
        stack.push_back(v);
      }
    }
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) total[i] += y[i] - mean;
    ++trees;
  });

  for (auto& t : total) t /= static_cast<double>(trees);
  return PriorityVector(std::move(total));
}

}  // namespace bwm

#endif  // BWM_SPANNING_TREE_HPP

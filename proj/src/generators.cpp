#include "tridet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "tridet/error.hpp"
#include "tridet/rng.hpp"

namespace tridet {

namespace {

void check_node_count(std::uint64_t n) {
  if (n >= std::numeric_limits<NodeId>::max()) throw InvalidArgument("node count exceeds NodeId range");
}

// Bernoulli(p) over all pairs (w < v) by geometric skipping.
void sample_pairs(std::uint64_t n, double p, Rng& rng, std::vector<RawEdge>& out) {
  if (n < 2 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t v = 1; v < n; ++v)
      for (std::uint64_t w = 0; w < v; ++w) out.push_back({static_cast<NodeId>(v), static_cast<NodeId>(w)});
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < n) {
    const std::uint64_t step = skip(rng);
    w += first ? step : step + 1;
    first = false;
    while (v < n && w >= v) {
      w -= v;
      ++v;
    }
    if (v < n) out.push_back({static_cast<NodeId>(v), static_cast<NodeId>(w)});
  }
}

}  // namespace

Graph gen_er(std::uint64_t n, double mean_k, std::uint64_t seed) {
  check_node_count(n);
  if (n == 0) return Graph::from_pairs(0, {});
  if (!(mean_k >= 0.0) || mean_k > static_cast<double>(n - 1))
    throw InvalidArgument("ER mean degree must lie in [0, n-1]");
  const double p = n > 1 ? mean_k / static_cast<double>(n - 1) : 0.0;
  Rng rng = make_stream(seed, "er");
  std::vector<RawEdge> pairs;
  pairs.reserve(static_cast<std::size_t>(mean_k * static_cast<double>(n) / 2.0 * 1.1) + 16);
  sample_pairs(n, p, rng, pairs);
  return Graph::from_pairs(n, pairs);
}

Graph gen_ba(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  check_node_count(n);
  if (m < 1 || m >= n) throw InvalidArgument("BA requires 1 <= m < n");
  Rng rng = make_stream(seed, "ba");
  std::vector<RawEdge> pairs;
  pairs.reserve(m * (m + 1) / 2 + (n - m - 1) * m);
  // Each endpoint appears once per incident edge, so a uniform pick is
  // degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * pairs.capacity());
  for (NodeId a = 0; a <= m; ++a)
    for (NodeId b = 0; b < a; ++b) {
      pairs.push_back({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  std::vector<NodeId> targets;
  targets.reserve(m);
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (targets.size() < m) {
      const NodeId t = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      pairs.push_back({v, t});
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return Graph::from_pairs(n, pairs);
}

Graph gen_ws(std::uint64_t n, std::uint64_t k, double p_rewire, std::uint64_t seed) {
  check_node_count(n);
  if (k % 2 != 0 || k >= n) throw InvalidArgument("WS requires even k < n");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) throw InvalidArgument("WS rewiring probability outside [0,1]");
  Rng rng = make_stream(seed, "ws");
  std::vector<std::unordered_set<NodeId>> adj(n);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 1; j <= k / 2; ++j) {
      const auto a = static_cast<NodeId>(i), b = static_cast<NodeId>((i + j) % n);
      adj[a].insert(b);
      adj[b].insert(a);
    }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  for (std::uint64_t j = 1; j <= k / 2; ++j) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto u = static_cast<NodeId>(i), v = static_cast<NodeId>((i + j) % n);
      if (coin(rng) >= p_rewire) continue;
      if (!adj[u].contains(v) || adj[u].size() >= n - 1) continue;
      NodeId w = node(rng);
      while (w == u || adj[u].contains(w)) w = node(rng);
      adj[u].erase(v);
      adj[v].erase(u);
      adj[u].insert(w);
      adj[w].insert(u);
    }
  }
  std::vector<RawEdge> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId w : adj[u])
      if (u < w) pairs.push_back({u, w});
  return Graph::from_pairs(n, pairs);
}

Generated gen_ng(const NgSpec& spec) {
  check_node_count(spec.n);
  if (spec.communities < 1 || spec.n % spec.communities != 0)
    throw InvalidArgument("n must be divisible by the number of communities");
  if (!(spec.k_out >= 0.0 && spec.k_out <= spec.mean_k))
    throw InvalidArgument("k_out must lie in [0, mean_k]");
  const std::uint64_t block = spec.n / spec.communities;
  const double p_in = block > 1 ? (spec.mean_k - spec.k_out) / static_cast<double>(block - 1) : 0.0;
  const std::uint64_t outside = spec.n - block;
  const double p_out = outside > 0 ? spec.k_out / static_cast<double>(outside) : 0.0;
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0))
    throw InvalidArgument("planted partition probabilities outside [0,1] (p_in=" + std::to_string(p_in) +
                          ", p_out=" + std::to_string(p_out) + ")");

  Generated out;
  out.report.model = "ng";
  out.report.seed = spec.seed;
  out.report.membership.resize(spec.n);
  for (std::uint64_t v = 0; v < spec.n; ++v) out.report.membership[v] = static_cast<std::uint32_t>(v / block);
  out.report.community_sizes.assign(spec.communities, block);
  out.report.requested_mixing = spec.mean_k > 0.0 ? spec.k_out / spec.mean_k : 0.0;

  Rng rng = make_stream(spec.seed, "ng");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<RawEdge> pairs;
  for (std::uint64_t v = 1; v < spec.n; ++v)
    for (std::uint64_t w = 0; w < v; ++w) {
      const double p = (v / block == w / block) ? p_in : p_out;
      if (coin(rng) < p) pairs.push_back({static_cast<NodeId>(v), static_cast<NodeId>(w)});
    }
  out.graph = Graph::from_pairs(spec.n, pairs);
  out.report.realized_mixing = mixing_fraction(out.graph, out.report.membership);
  out.report.stats = degree_stats(out.graph);
  return out;
}

double mixing_fraction(const Graph& g, std::span<const std::uint32_t> membership) {
  if (membership.size() != g.node_count()) throw InvalidArgument("membership size does not match graph");
  double sum = 0.0;
  std::uint64_t counted = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    if (nb.empty()) continue;
    const auto ext = std::count_if(nb.begin(), nb.end(), [&](NodeId w) { return membership[w] != membership[v]; });
    sum += static_cast<double>(ext) / static_cast<double>(nb.size());
    ++counted;
  }
  return counted ? sum / static_cast<double>(counted) : 0.0;
}

}  // namespace tridet

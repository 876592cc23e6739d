#include "tridet/census.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>

#include <Eigen/Dense>

#include "tridet/error.hpp"
#include "tridet/rng.hpp"

namespace tridet {

namespace {

std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

struct OutAdjacency {
  std::vector<std::uint64_t> offsets;
  std::vector<NodeId> targets;

  std::span<const NodeId> of(NodeId v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
};

// Keeps only neighbours of higher (degree, id) rank. Lists stay sorted by id.
OutAdjacency orient_by_degree(const Graph& g) {
  const std::size_t n = g.node_count();
  auto higher = [&](NodeId a, NodeId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? db > da : b > a;
  };
  OutAdjacency out;
  out.offsets.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    std::uint64_t c = 0;
    for (NodeId w : g.neighbors(u))
      if (higher(u, w)) ++c;
    out.offsets[u + 1] = out.offsets[u] + c;
  }
  out.targets.resize(out.offsets[n]);
  for (NodeId u = 0; u < n; ++u) {
    std::uint64_t pos = out.offsets[u];
    for (NodeId w : g.neighbors(u))
      if (higher(u, w)) out.targets[pos++] = w;
  }
  return out;
}

void count_range(const OutAdjacency& out, NodeId begin, NodeId end,
                 std::vector<std::uint64_t>& tally) {
  for (NodeId u = begin; u < end; ++u) {
    const auto ou = out.of(u);
    for (NodeId v : ou) {
      const auto ov = out.of(v);
      auto a = ou.begin();
      auto b = ov.begin();
      while (a != ou.end() && b != ov.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++tally[u];
          ++tally[v];
          ++tally[*a];
          ++a;
          ++b;
        }
      }
    }
  }
}

}  // namespace

TriangleCensus triangle_census(const Graph& g, unsigned workers) {
  const std::size_t n = g.node_count();
  TriangleCensus c;
  c.per_node.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) c.wedge_count += choose2(g.degree(v));
  if (n == 0) return c;

  const OutAdjacency out = orient_by_degree(g);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    count_range(out, 0, static_cast<NodeId>(n), c.per_node);
  } else {
    // Balance on out-list work rather than node count.
    std::vector<NodeId> cuts{0};
    const std::uint64_t total_work = out.offsets[n];
    for (unsigned w = 1; w < workers; ++w) {
      const std::uint64_t target = total_work * w / workers;
      auto it = std::lower_bound(out.offsets.begin(), out.offsets.end(), target);
      cuts.push_back(std::max<NodeId>(cuts.back(), static_cast<NodeId>(it - out.offsets.begin())));
    }
    cuts.push_back(static_cast<NodeId>(n));
    std::vector<std::vector<std::uint64_t>> tallies(workers, std::vector<std::uint64_t>(n, 0));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { count_range(out, cuts[w], cuts[w + 1], tallies[w]); });
    for (auto& t : pool) t.join();
    for (const auto& t : tallies)
      for (std::size_t v = 0; v < n; ++v) c.per_node[v] += t[v];
  }
  c.total_triangles = std::accumulate(c.per_node.begin(), c.per_node.end(), std::uint64_t{0}) / 3;
  return c;
}

TriangleEstimate approx_triangle_count(const Graph& g, std::uint64_t sample_size,
                                       std::uint64_t seed) {
  if (sample_size == 0) throw InvalidArgument("sample_size must be at least 1");
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> cum(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) cum[v + 1] = cum[v] + choose2(g.degree(v));
  const std::uint64_t wedges = cum[n];
  if (wedges == 0) throw UndefinedError("graph has no wedges; triangle estimate undefined");

  auto closed = [&](std::uint64_t t) {
    const auto centre = static_cast<NodeId>(std::upper_bound(cum.begin(), cum.end(), t) - cum.begin() - 1);
    const std::uint64_t r = t - cum[centre];
    // Unrank r into the pair (i < j), pairs ordered by j then i.
    auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(r))) / 2.0);
    while (j * (j - 1) / 2 > r) --j;
    while ((j + 1) * j / 2 <= r) ++j;
    const std::uint64_t i = r - j * (j - 1) / 2;
    const auto nb = g.neighbors(centre);
    return g.has_edge(nb[i], nb[j]);
  };

  TriangleEstimate est;
  std::uint64_t hits = 0;
  if (sample_size >= wedges) {
    for (std::uint64_t t = 0; t < wedges; ++t) hits += closed(t) ? 1 : 0;
    est.samples = wedges;
    est.exhaustive = true;
  } else {
    // Floyd's algorithm: sample_size distinct wedge indices.
    Rng rng = make_stream(seed, "wedge-sample");
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(sample_size * 2);
    for (std::uint64_t j = wedges - sample_size; j < wedges; ++j) {
      const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    for (std::uint64_t t : chosen) hits += closed(t) ? 1 : 0;
    est.samples = sample_size;
  }

  const double s = static_cast<double>(est.samples);
  const double w = static_cast<double>(wedges);
  est.closure_rate = static_cast<double>(hits) / s;
  est.estimate = est.closure_rate * w / 3.0;
  if (!est.exhaustive) {
    const double fpc = (w - s) / (w - 1.0);
    est.standard_error =
        std::sqrt(est.closure_rate * (1.0 - est.closure_rate) / s * fpc) * w / 3.0;
  }
  return est;
}

std::vector<double> local_clustering(const Graph& g, const TriangleCensus& census) {
  if (census.per_node.size() != g.node_count())
    throw InvalidArgument("census does not belong to this graph");
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::uint64_t pairs = choose2(g.degree(v));
    if (pairs > 0) out[v] = static_cast<double>(census.per_node[v]) / static_cast<double>(pairs);
  }
  return out;
}

double mean_local_clustering(std::span<const double> local) {
  if (local.empty()) throw UndefinedError("mean local clustering of an empty graph");
  return std::accumulate(local.begin(), local.end(), 0.0) / static_cast<double>(local.size());
}

double global_clustering(const TriangleCensus& census) {
  if (census.wedge_count == 0)
    throw UndefinedError("graph has no pairs of adjacent edges; clustering undefined");
  return 3.0 * static_cast<double>(census.total_triangles) / static_cast<double>(census.wedge_count);
}

SpectralOracle spectral_gcc_oracle(const Graph& g, std::size_t dense_cap) {
  const std::size_t n = g.node_count();
  if (n > dense_cap)
    throw CapacityError("dense path limited to " + std::to_string(dense_cap) + " nodes, graph has " +
                        std::to_string(n));
  const DegreeStats stats = degree_stats(g);
  const double denom = stats.mean_k2 - stats.mean_k;
  if (!(denom > 0.0)) throw UndefinedError("<k^2> equals <k>; clustering undefined");

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u)) a(u, v) = 1.0;
  // Entries of A^2 are path counts <= N, exact in double.
  const Eigen::MatrixXd a2 = a * a;

  SpectralOracle out;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      if (a(j, i) != 0.0) out.trace_a3 += static_cast<std::uint64_t>(std::llround(a2(i, j)));
  out.gcc = (static_cast<double>(out.trace_a3) / static_cast<double>(n)) / denom;
  return out;
}

}  // namespace tridet

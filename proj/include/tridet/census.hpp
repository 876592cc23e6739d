#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tridet/graph.hpp"

namespace tridet {

struct TriangleCensus {
  std::vector<std::uint64_t> per_node;  // triangles through each node
  std::uint64_t total_triangles = 0;
  std::uint64_t wedge_count = 0;        // Σ C(k_l, 2)
};

// Exact count by the degree-ordered forward algorithm: edges point from lower
// to higher (degree, id) rank and each triangle is found once at its
// lowest-ranked corner by intersecting sorted out-lists. `workers` > 1 splits
// the node range; per-worker tallies are merged in worker order so the result
// does not depend on the worker count.
TriangleCensus triangle_census(const Graph& g, unsigned workers = 1);

struct TriangleEstimate {
  double estimate = 0.0;        // estimated total triangle count
  double standard_error = 0.0;
  double closure_rate = 0.0;    // fraction of sampled wedges that are closed
  std::uint64_t samples = 0;    // wedges actually inspected
  bool exhaustive = false;      // sample_size covered every wedge
};

// Uniform wedge sampling without replacement: pick wedges uniformly from the
// Σ C(k,2) wedges, test closure, scale by wedge_count / 3. The standard error
// carries the finite-population correction. Throws UndefinedError when the
// graph has no wedges and InvalidArgument for sample_size == 0.
TriangleEstimate approx_triangle_count(const Graph& g, std::uint64_t sample_size,
                                       std::uint64_t seed);

// C_l = N_l / C(k_l, 2), defined as 0 for k_l < 2.
std::vector<double> local_clustering(const Graph& g, const TriangleCensus& census);

// Mean over all nodes; throws UndefinedError for an empty sequence.
double mean_local_clustering(std::span<const double> local);

// 3 * triangles / wedges; throws UndefinedError when wedge_count == 0.
double global_clustering(const TriangleCensus& census);

struct SpectralOracle {
  std::uint64_t trace_a3 = 0;  // trace(A^3), exact
  double gcc = 0.0;            // (trace(A^3)/N) / (<k^2> - <k>)
};

inline constexpr std::size_t kDefaultDenseCap = 2000;

// Materializes the dense adjacency matrix and evaluates trace(A^3) by
// matrix multiplication. Throws CapacityError above `dense_cap` nodes and
// UndefinedError when <k^2> == <k>.
SpectralOracle spectral_gcc_oracle(const Graph& g, std::size_t dense_cap = kDefaultDenseCap);

}  // namespace tridet

#pragma once

#include <cstdint>
#include <optional>

#include "tridet/census.hpp"
#include "tridet/graph.hpp"

namespace tridet {

// Clustering of an Erdős–Rényi graph: <k>/(N-1). Throws for n < 2.
double c_er(std::uint64_t n, double mean_k);

// Uncorrelated graph with the given degree moments:
// (<k^2> - <k>)^2 / (N <k>^3). Throws UndefinedError when <k> == 0.
double c_uncorrelated(const DegreeStats& stats);

// Barabási–Albert estimate ((m-1)/8) (ln N)^2 / N, natural logarithm.
double c_ba(std::uint64_t n, std::uint64_t m);

// Chung et al. leading-order λ₁: max(<k^2>/<k>, sqrt(k_max)), o(1) taken as 0.
double lambda1_chung(const DegreeStats& stats);

struct PowerIterationOptions {
  double tol = 1e-10;
  std::uint64_t max_iter = 20000;
};

struct PowerIterationResult {
  double lambda1 = 0.0;
  std::uint64_t iterations = 0;
  std::size_t component_size = 0;
  unsigned restarts = 0;
};

// Dominant adjacency eigenvalue via shifted power iteration on the largest
// connected component (A + I keeps ±λ₁ pairs of bipartite graphs apart).
// Converged when successive Rayleigh quotients agree to relative `tol`.
// Throws ConvergenceError with the last iterate after max_iter steps.
PowerIterationResult lambda1_power_iteration(const Graph& g, PowerIterationOptions opts = {});

// λ₁ contribution to the clustering coefficient, λ₁³ / (N (<k^2> - <k>)).
// Throws UndefinedError when <k^2> <= <k>.
double gcc_contribution(double lambda1, const DegreeStats& stats);

// Closed form <k^2>^3 / (N <k>^3 (<k^2> - <k>)), i.e. gcc_contribution at
// λ₁ = <k^2>/<k>. Kept separate so the two routes can be cross-checked.
double gcc_bound_moment_form(const DegreeStats& stats);

// (1/N) Σ λ³ over all adjacency eigenvalues except the `n_isolated` largest,
// from a dense symmetric eigensolve. Throws CapacityError above dense_cap.
double bulk_third_moment(const Graph& g, std::size_t n_isolated = 1,
                         std::size_t dense_cap = kDefaultDenseCap);

struct BaselineSet {
  double c_er = 0.0;
  double c_uc = 0.0;
  std::optional<double> c_ba;
  double lambda1_chung = 0.0;
  std::optional<double> lambda1_exact;
  std::optional<double> gcc_bound_lambda1;  // needs lambda1_exact
  double gcc_bound_chung = 0.0;
};

// `ba_m` fills c_ba when the graph is known to be a BA graph;
// `lambda1_exact` fills the exact-λ₁ entries.
BaselineSet compute_baselines(const DegreeStats& stats, std::optional<std::uint64_t> ba_m = std::nullopt,
                              std::optional<double> lambda1_exact = std::nullopt);

}  // namespace tridet

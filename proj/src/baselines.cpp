#include "tridet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "tridet/error.hpp"

namespace tridet {

double c_er(std::uint64_t n, double mean_k) {
  if (n < 2) throw InvalidArgument("C_ER needs at least 2 nodes");
  return mean_k / static_cast<double>(n - 1);
}

double c_uncorrelated(const DegreeStats& stats) {
  if (!(stats.mean_k > 0.0)) throw UndefinedError("C_uc undefined for zero mean degree");
  const double excess = stats.mean_k2 - stats.mean_k;
  return excess * excess / (static_cast<double>(stats.n) * stats.mean_k * stats.mean_k * stats.mean_k);
}

double c_ba(std::uint64_t n, std::uint64_t m) {
  if (m < 1 || n < 2) throw InvalidArgument("C_BA needs m >= 1 and n >= 2");
  const double log_n = std::log(static_cast<double>(n));
  return (static_cast<double>(m) - 1.0) / 8.0 * log_n * log_n / static_cast<double>(n);
}

double lambda1_chung(const DegreeStats& stats) {
  if (!(stats.mean_k > 0.0)) throw UndefinedError("Chung estimate undefined for zero mean degree");
  return std::max(stats.mean_k2 / stats.mean_k, std::sqrt(static_cast<double>(stats.k_max)));
}

PowerIterationResult lambda1_power_iteration(const Graph& g, PowerIterationOptions opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("power iteration tolerance must be positive");
  if (g.node_count() == 0) throw UndefinedError("power iteration on an empty graph");

  const std::vector<NodeId> comp = largest_component(g);
  const std::size_t n = comp.size();
  PowerIterationResult res;
  res.component_size = n;
  if (n == 1) return res;  // isolated node, λ₁ = 0

  std::vector<std::uint32_t> local(g.node_count(), 0);
  for (std::size_t i = 0; i < n; ++i) local[comp[i]] = static_cast<std::uint32_t>(i);

  auto normalize = [](std::vector<double>& v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm > 0.0)
      for (double& x : v) x /= norm;
    return norm;
  };

  std::vector<double> x(n, 1.0), y(n);
  normalize(x);
  double lambda = 0.0;
  bool have_previous = false;
  for (std::uint64_t it = 1; it <= opts.max_iter; ++it) {
    // y = (A + I) x
    for (std::size_t i = 0; i < n; ++i) {
      double acc = x[i];
      for (NodeId w : g.neighbors(comp[i])) acc += x[local[w]];
      y[i] = acc;
    }
    const double rayleigh = std::inner_product(y.begin(), y.end(), x.begin(), 0.0) - 1.0;
    const double norm = normalize(y);
    if (!(norm > 1e-12)) {
      // Stalled: restart orthogonal to the current direction.
      ++res.restarts;
      std::vector<double> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = (i % 2 == 0) ? 1.0 : -0.5;
      const double proj = std::inner_product(z.begin(), z.end(), x.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) z[i] -= proj * x[i];
      normalize(z);
      x.swap(z);
      have_previous = false;
      continue;
    }
    x.swap(y);
    res.iterations = it;
    if (have_previous && std::abs(rayleigh - lambda) <= opts.tol * std::abs(rayleigh)) {
      res.lambda1 = rayleigh;
      return res;
    }
    lambda = rayleigh;
    have_previous = true;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                             " iterations",
                         lambda, std::move(x));
}

double gcc_contribution(double lambda1, const DegreeStats& stats) {
  const double excess = stats.mean_k2 - stats.mean_k;
  if (!(excess > 0.0)) throw UndefinedError("<k^2> <= <k>; clustering bound undefined");
  return lambda1 * lambda1 * lambda1 / (static_cast<double>(stats.n) * excess);
}

double gcc_bound_moment_form(const DegreeStats& stats) {
  const double excess = stats.mean_k2 - stats.mean_k;
  if (!(excess > 0.0)) throw UndefinedError("<k^2> <= <k>; clustering bound undefined");
  const double k = stats.mean_k, k2 = stats.mean_k2;
  return k2 * k2 * k2 / (static_cast<double>(stats.n) * k * k * k * excess);
}

double bulk_third_moment(const Graph& g, std::size_t n_isolated, std::size_t dense_cap) {
  const std::size_t n = g.node_count();
  if (n > dense_cap)
    throw CapacityError("dense eigensolve limited to " + std::to_string(dense_cap) + " nodes, graph has " +
                        std::to_string(n));
  if (n == 0) throw UndefinedError("spectrum of an empty graph");
  if (n_isolated > n) throw InvalidArgument("n_isolated exceeds the number of eigenvalues");

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u)) a(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("dense eigensolve failed");
  const Eigen::VectorXd& eig = solver.eigenvalues();  // ascending

  double sum = 0.0;
  for (Eigen::Index i = 0; i < dim - static_cast<Eigen::Index>(n_isolated); ++i)
    sum += eig[i] * eig[i] * eig[i];
  return sum / static_cast<double>(n);
}

BaselineSet compute_baselines(const DegreeStats& stats, std::optional<std::uint64_t> ba_m,
                              std::optional<double> lambda1_exact) {
  BaselineSet b;
  b.c_er = c_er(stats.n, stats.mean_k);
  b.c_uc = c_uncorrelated(stats);
  if (ba_m) b.c_ba = c_ba(stats.n, *ba_m);
  b.lambda1_chung = lambda1_chung(stats);
  b.gcc_bound_chung = gcc_contribution(b.lambda1_chung, stats);
  if (lambda1_exact) {
    b.lambda1_exact = *lambda1_exact;
    b.gcc_bound_lambda1 = gcc_contribution(*lambda1_exact, stats);
  }
  return b;
}

}  // namespace tridet

#include "tridet/verdict.hpp"

#include <cmath>

#include "tridet/error.hpp"

namespace tridet {

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Undetectable: return "Undetectable";
    case Classification::Indeterminate: return "Indeterminate";
    case Classification::Detectable: return "Detectable";
  }
  return "?";
}

std::string_view to_string(Lambda1Source s) noexcept {
  return s == Lambda1Source::Chung ? "chung" : "power_iteration";
}

Verdict verdict_from_values(double gcc, double c_uc, double bound) {
  if (!std::isfinite(gcc) || !std::isfinite(c_uc) || !std::isfinite(bound))
    throw InvalidArgument("verdict inputs must be finite");
  if (bound < 0.0) throw InvalidArgument("verdict bound must be non-negative");
  Verdict v;
  v.gcc = gcc;
  v.c_uc = c_uc;
  v.bound_eq11 = bound;
  if (gcc <= c_uc)
    v.classification = Classification::Undetectable;
  else if (gcc < bound)
    v.classification = Classification::Indeterminate;
  else
    v.classification = Classification::Detectable;
  return v;
}

AssumptionReport check_assumptions(const Graph& g, const DegreeStats& stats,
                                   std::optional<double> lambda1,
                                   const AssumptionThresholds& thresholds) {
  AssumptionReport r;
  r.bipartite = is_bipartite(g);
  if (lambda1 && stats.mean_k > 0.0)
    r.assumption3_holds = *lambda1 >= stats.mean_k2 / stats.mean_k - 1.0;
  if (stats.mean_k > 0.0) {
    const double dispersion = (stats.mean_k2 - stats.mean_k * stats.mean_k) / stats.mean_k;
    r.near_poisson = std::abs(dispersion - 1.0) <= thresholds.poisson_dispersion_tolerance;
  }
  r.small_n_warning = stats.n < thresholds.small_n;
  r.density_warning = stats.mean_k / static_cast<double>(stats.n) > thresholds.density;
  const double assort = degree_assortativity(g);
  if (!std::isnan(assort)) r.assortativity = assort;
  return r;
}

Assessment assess(const Graph& g, const AssessmentOptions& options) {
  const DegreeStats stats = degree_stats(g);
  const TriangleCensus census = triangle_census(g, options.workers);
  if (census.wedge_count == 0) throw UndefinedError("graph has no wedges; cannot assess");

  Assessment a;
  a.n = stats.n;
  a.e = stats.e;
  a.mean_k = stats.mean_k;
  a.mean_k2 = stats.mean_k2;
  a.k_max = stats.k_max;
  a.total_triangles = census.total_triangles;
  a.wedge_count = census.wedge_count;
  a.mean_local_clustering = mean_local_clustering(local_clustering(g, census));

  std::optional<double> exact;
  if (options.lambda1 == Lambda1Source::PowerIteration)
    exact = lambda1_power_iteration(g, options.power).lambda1;
  a.baselines = compute_baselines(stats, options.ba_m, exact);

  const double gcc = global_clustering(census);
  const double bound = exact ? *a.baselines.gcc_bound_lambda1 : a.baselines.gcc_bound_chung;
  a.verdict = verdict_from_values(gcc, a.baselines.c_uc, bound);
  a.verdict.lambda1_used = exact ? *exact : a.baselines.lambda1_chung;
  a.verdict.lambda1_source = options.lambda1;

  a.assumptions = check_assumptions(g, stats, exact, options.thresholds);
  a.assumptions.band_inverted = a.baselines.c_uc > bound;

  if (a.assumptions.bipartite)
    a.warnings.emplace_back("graph is bipartite: negative isolated eigenvalues break the clustering premise");
  if (a.assumptions.assumption3_holds == false)
    a.warnings.emplace_back("lambda1 < <k^2>/<k> - 1: C_uc is no longer a conservative reference");
  if (a.assumptions.band_inverted)
    a.warnings.emplace_back("C_uc exceeds the lambda1 bound: indeterminate band is inverted");
  if (a.assumptions.small_n_warning)
    a.warnings.emplace_back("small graph: N below " + std::to_string(options.thresholds.small_n));
  if (a.assumptions.density_warning)
    a.warnings.emplace_back("dense graph: <k>/N above sparse-graph threshold");
  return a;
}

}  // namespace tridet

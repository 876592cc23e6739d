#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tridet/baselines.hpp"
#include "tridet/census.hpp"
#include "tridet/graph.hpp"

namespace tridet {

// Ordered: Undetectable < Indeterminate < Detectable.
enum class Classification { Undetectable = 0, Indeterminate = 1, Detectable = 2 };

enum class Lambda1Source { Chung, PowerIteration };

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(Lambda1Source s) noexcept;

struct Verdict {
  Classification classification = Classification::Undetectable;
  double gcc = 0.0;
  double c_uc = 0.0;
  double bound_eq11 = 0.0;  // λ₁-based upper reference for the clustering
  double lambda1_used = 0.0;
  Lambda1Source lambda1_source = Lambda1Source::Chung;
};

// Undetectable when gcc <= c_uc, else Detectable when gcc >= bound, else
// Indeterminate. Throws InvalidArgument for non-finite input or bound < 0.
Verdict verdict_from_values(double gcc, double c_uc, double bound);

struct AssumptionThresholds {
  std::uint64_t small_n = 100;  // warn when N < small_n
  double density = 0.1;         // warn when <k>/N > density
  double poisson_dispersion_tolerance = 0.25;  // |var/mean - 1| for "near Poisson"
};

struct AssumptionReport {
  bool bipartite = false;
  std::optional<bool> assumption3_holds;  // λ₁ >= <k^2>/<k> - 1, set only with an exact λ₁
  bool near_poisson = false;  // λ₁ >= <k^2>/<k> - 1 follows from Rayleigh's inequality
  bool small_n_warning = false;
  bool density_warning = false;
  std::optional<double> assortativity;
  bool band_inverted = false;  // c_uc > bound; set by assess()
};

AssumptionReport check_assumptions(const Graph& g, const DegreeStats& stats,
                                   std::optional<double> lambda1 = std::nullopt,
                                   const AssumptionThresholds& thresholds = {});

struct AssessmentOptions {
  Lambda1Source lambda1 = Lambda1Source::Chung;
  PowerIterationOptions power;
  AssumptionThresholds thresholds;
  std::optional<std::uint64_t> ba_m;  // report C_BA for a known BA graph
  unsigned workers = 1;               // triangle census workers
};

struct Assessment {
  std::uint64_t n = 0;
  std::uint64_t e = 0;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  std::uint64_t k_max = 0;
  std::uint64_t total_triangles = 0;
  std::uint64_t wedge_count = 0;
  double mean_local_clustering = 0.0;
  BaselineSet baselines;
  Verdict verdict;
  AssumptionReport assumptions;
  std::vector<std::string> warnings;
};

// Throws UndefinedError when the graph has no wedges.
Assessment assess(const Graph& g, const AssessmentOptions& options = {});

}  // namespace tridet

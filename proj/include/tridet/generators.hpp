#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tridet/graph.hpp"

namespace tridet {

// G(n, p) with p = mean_k / (n - 1).
Graph gen_er(std::uint64_t n, double mean_k, std::uint64_t seed);

// Preferential attachment grown from a clique on m + 1 nodes; every later
// node brings m edges to distinct, degree-proportional targets.
Graph gen_ba(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

// Ring lattice with k/2 neighbours per side, each lattice edge rewired with
// probability p_rewire to a uniform endpoint that creates no loop or duplicate.
Graph gen_ws(std::uint64_t n, std::uint64_t k, double p_rewire, std::uint64_t seed);

struct GenReport {
  std::string model;
  std::uint64_t seed = 0;
  DegreeStats stats;                      // of the realized graph
  std::vector<std::uint32_t> membership;  // planted community of each node
  std::vector<std::uint64_t> community_sizes;
  double requested_mixing = 0.0;
  double realized_mixing = 0.0;  // mean over nodes with k > 0 of k_ext / k
  std::uint64_t rewiring_attempts = 0;
  std::uint64_t unresolved_stubs = 0;  // stubs dropped when rewiring ran out
  std::optional<double> k_min;         // fitted lower cutoff of the degree law
  std::optional<double> expected_mean_k;  // mean of the sampled degree law
};

struct Generated {
  Graph graph;
  GenReport report;
};

// Four-block planted partition (Newman–Girvan benchmark).
struct NgSpec {
  std::uint64_t n = 256;
  std::uint32_t communities = 4;
  double mean_k = 16.0;
  double k_out = 0.0;  // expected inter-community degree per node
  std::uint64_t seed = 0;
};

// p_in = (mean_k - k_out)/(n/c - 1), p_out = k_out/(n - n/c).
Generated gen_ng(const NgSpec& spec);

struct LfrSpec {
  std::uint64_t n = 1000;
  double mean_k = 20.0;
  std::uint64_t k_max = 50;
  double gamma = 2.0;
  double gamma_c = 1.0;
  std::uint64_t min_community = 20;
  std::uint64_t max_community = 100;
  double mu = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t rewire_budget_factor = 100;  // swap attempts per edge
  double max_unresolved_fraction = 0.01;     // of all stubs, before failing
};

// LFR-style benchmark: truncated power-law degrees and community sizes,
// stub matching inside and across communities, then swap rewiring to remove
// loops, multi-edges and external edges that land inside a community.
Generated gen_lfr_like(const LfrSpec& spec);

// Lower cutoff x such that the discretized law P(k) ∝ k^-gamma on
// [floor(x), k_max] (with the floor(x) atom weighted by 1 - frac(x)) has mean
// `mean_k`. Bisection; throws GenerationError when unreachable.
double solve_degree_cutoff(double mean_k, std::uint64_t k_max, double gamma);
std::vector<double> degree_law_weights(double cutoff, std::uint64_t k_max, double gamma);

// Mean over non-isolated nodes of the fraction of neighbours outside the
// node's community.
double mixing_fraction(const Graph& g, std::span<const std::uint32_t> membership);

}  // namespace tridet

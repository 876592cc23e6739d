#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tridet/baselines.hpp"
#include "tridet/census.hpp"
#include "tridet/error.hpp"
#include "tridet/generators.hpp"

using namespace tridet;

namespace {

DegreeStats moments(std::uint64_t n, double mean_k, double mean_k2, std::uint64_t k_max) {
  DegreeStats s;
  s.n = n;
  s.mean_k = mean_k;
  s.mean_k2 = mean_k2;
  s.k_max = k_max;
  s.e = static_cast<std::uint64_t>(std::llround(mean_k * static_cast<double>(n) / 2.0));
  return s;
}

}  // namespace

TEST_CASE("c_er examples") {
  CHECK(c_er(256, 16) == doctest::Approx(16.0 / 255.0));
  CHECK(c_er(1000, 20) == doctest::Approx(0.02002).epsilon(1e-4));
  CHECK(c_er(10, 0) == 0.0);
  CHECK_THROWS_AS(c_er(1, 0), InvalidArgument);
}

TEST_CASE("c_uncorrelated examples") {
  CHECK(c_uncorrelated(moments(256, 16, 272, 30)) == doctest::Approx(0.0625));
  CHECK(c_uncorrelated(moments(100, 3, 9, 3)) == doctest::Approx(4.0 / 300.0));
  CHECK_THROWS_AS(c_uncorrelated(moments(10, 0, 0, 0)), UndefinedError);
}

TEST_CASE("c_uncorrelated reduces to c_er (N-1)/N for Poisson moments") {
  for (std::uint64_t n : {50ULL, 256ULL, 1000ULL, 123457ULL})
    for (double k : {1.0, 3.5, 16.0, 40.0}) {
      const double uc = c_uncorrelated(moments(n, k, k * k + k, 1));
      const double er = c_er(n, k) * static_cast<double>(n - 1) / static_cast<double>(n);
      CHECK(std::abs(uc - er) <= 1e-12 * std::max(1.0, er));
    }
}

TEST_CASE("c_ba examples and scaling") {
  CHECK(c_ba(5000, 1) == 0.0);
  CHECK(c_ba(10000, 4) == doctest::Approx(3.18e-3).epsilon(2e-3));
  const double n = 3000.0;
  const double expected = std::pow(std::log(2 * n) / std::log(n), 2) / 2.0;
  CHECK(c_ba(6000, 3) / c_ba(3000, 3) == doctest::Approx(expected));
  CHECK_THROWS_AS(c_ba(1, 2), InvalidArgument);
  CHECK_THROWS_AS(c_ba(10, 0), InvalidArgument);
}

TEST_CASE("lambda1_chung examples") {
  CHECK(lambda1_chung(moments(256, 16, 272, 31)) == doctest::Approx(17.0));
  CHECK(lambda1_chung(degree_stats(oracle::cycle(9))) == doctest::Approx(2.0));
  CHECK(lambda1_chung(moments(1000000, 4, 120, 10000)) == doctest::Approx(100.0));
}

TEST_CASE("power iteration: K4, stars and bipartite graphs") {
  CHECK(lambda1_power_iteration(oracle::complete(4)).lambda1 == doctest::Approx(3.0).epsilon(1e-9));
  for (std::size_t q : {1, 4, 9, 50}) {
    auto r = lambda1_power_iteration(oracle::star(q));
    CHECK(r.lambda1 == doctest::Approx(std::sqrt(double(q))).epsilon(1e-8));
  }
  CHECK(lambda1_power_iteration(oracle::complete_bipartite(3, 5)).lambda1 ==
        doctest::Approx(std::sqrt(15.0)).epsilon(1e-8));
  CHECK(lambda1_power_iteration(oracle::cycle(8)).lambda1 == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("power iteration runs on the largest component") {
  // K5 beside a triangle: largest component decides.
  auto g = oracle::from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
                                  {5, 6}, {6, 7}, {7, 5}});
  auto r = lambda1_power_iteration(g);
  CHECK(r.lambda1 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.component_size == 5);
}

TEST_CASE("power iteration: G(500, <k>=16) matches the dense eigensolver") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto g = oracle::coin_flip_graph(500, 16.0 / 499.0, seed);
    const double dense = oracle::eigenvalues(g).maxCoeff();
    CHECK(std::abs(lambda1_power_iteration(g).lambda1 - dense) <= 1e-6);
  }
}

TEST_CASE("power iteration reports non-convergence") {
  PowerIterationOptions opts;
  opts.max_iter = 2;
  opts.tol = 1e-15;
  auto g = oracle::coin_flip_graph(200, 0.05, 4);
  CHECK_THROWS_AS(lambda1_power_iteration(g, opts), ConvergenceError);
}

TEST_CASE("gcc_contribution examples") {
  auto k4 = degree_stats(oracle::complete(4));
  CHECK(gcc_contribution(3.0, k4) == doctest::Approx(1.125));
  auto er = moments(256, 16, 272, 30);
  CHECK(gcc_contribution(lambda1_chung(er), er) == doctest::Approx(0.0750).epsilon(1e-3));
  CHECK(gcc_bound_moment_form(er) == doctest::Approx(gcc_contribution(17.0, er)));
  CHECK_THROWS_AS(gcc_contribution(1.0, degree_stats(oracle::from_edges(2, {{0, 1}}))), UndefinedError);
}

TEST_CASE("gcc_contribution bounds measured clustering on BA(2000, 4)") {
  int below = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = gen_ba(2000, 4, seed);
    const double gcc = global_clustering(triangle_census(g));
    if (gcc < gcc_contribution(lambda1_power_iteration(g).lambda1, degree_stats(g))) ++below;
  }
  CHECK(below >= 99);
}

TEST_CASE("bound ordering: Chung bound is at least c_uc when lambda1 >= <k^2>/<k> - 1") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::uint64_t n = 10 + rng() % 100000;
    const double k = 0.5 + 60.0 * unit(rng);
    const double k2 = std::max(k * k, k) * (1.001 + 3.0 * unit(rng));
    const auto s = moments(n, k, k2, 1 + rng() % 2000);
    const double lambda = lambda1_chung(s);
    REQUIRE(lambda >= s.mean_k2 / s.mean_k - 1.0);
    const double bound = gcc_contribution(lambda, s);
    const double uc = c_uncorrelated(s);
    CHECK(bound >= uc * (1.0 - 1e-12));
  }
}

TEST_CASE("compute_baselines: Chung bound equals plugging lambda1_chung into gcc_contribution") {
  auto s = degree_stats(gen_ba(500, 3, 9));
  auto b = compute_baselines(s, 3, 11.0);
  CHECK(b.gcc_bound_chung == gcc_contribution(b.lambda1_chung, s));
  REQUIRE(b.c_ba.has_value());
  CHECK(*b.c_ba == c_ba(500, 3));
  REQUIRE(b.gcc_bound_lambda1.has_value());
  CHECK(*b.gcc_bound_lambda1 == gcc_contribution(11.0, s));
  CHECK(b.c_er >= 0.0);
  CHECK(b.c_uc >= 0.0);
  auto plain = compute_baselines(s);
  CHECK_FALSE(plain.c_ba.has_value());
  CHECK_FALSE(plain.lambda1_exact.has_value());
  CHECK_FALSE(plain.gcc_bound_lambda1.has_value());
}

TEST_CASE("lambda1 lower bounds from triangle counts") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = trial % 2 ? oracle::coin_flip_graph(30 + rng() % 150, 0.1 + 0.3 * (rng() % 100) / 100.0, rng())
                       : gen_ba(50 + rng() % 300, 2 + rng() % 4, rng());
    auto c = triangle_census(g);
    if (c.total_triangles == 0) continue;
    const double lambda = oracle::eigenvalues(g).maxCoeff();
    const auto max_local = *std::max_element(c.per_node.begin(), c.per_node.end());
    CHECK(lambda > std::cbrt(2.0 * static_cast<double>(max_local)));
    CHECK(lambda > std::cbrt(static_cast<double>(c.total_triangles)));
  }
}

TEST_CASE("bulk third moment") {
  CHECK(bulk_third_moment(oracle::complete(4), 1) == doctest::Approx(-0.75));
  // n_isolated = 0 keeps the whole spectrum: trace(A^3)/N.
  CHECK(bulk_third_moment(oracle::complete(4), 0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(bulk_third_moment(oracle::complete(5), 1, 4), CapacityError);
}

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "tridet/baselines.hpp"
#include "tridet/census.hpp"
#include "tridet/generators.hpp"
#include "tridet/harness.hpp"
#include "tridet/verdict.hpp"

using namespace tridet;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Moments {
  double mean = 0.0, sd = 0.0, se = 0.0;
};

Moments moments_of(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  m.se = m.sd / std::sqrt(static_cast<double>(xs.size()));
  return m;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

double gcc(const Graph& g) { return global_clustering(triangle_census(g)); }

Outcome spectral_identity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 20 + rng() % 181;
    const std::uint64_t seed = rng();
    Graph g;
    switch (i % 3) {
      case 0: g = gen_er(n, 2.0 + static_cast<double>(rng() % 120) / 10.0, seed); break;
      case 1: g = gen_ba(n, 1 + rng() % 6, seed); break;
      default: g = gen_ws(n, 2 * (1 + rng() % 5), static_cast<double>(rng() % 101) / 100.0, seed); break;
    }
    auto c = triangle_census(g);
    if (c.wedge_count == 0) continue;
    worst = std::max(worst, std::abs(spectral_gcc_oracle(g).gcc - global_clustering(c)));
    ++checked;
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && checked >= 190 && t < 30.0,
          fmt("%d graphs, max residual %.3g, %.2f s", checked, worst, t)};
}

Outcome er_baseline() {
  const auto t0 = Clock::now();
  std::vector<double> xs;
  for (std::uint64_t s = 0; s < 100; ++s) xs.push_back(gcc(gen_er(1000, 16, s)));
  const auto m = moments_of(xs);
  const double target = 16.0 / 999.0;
  const double z = (m.mean - target) / m.se;
  const double t = seconds_since(t0);
  return {std::abs(z) <= 3.0 && t < 20.0,
          fmt("mean %.6f vs %.6f, %.2f SE, %.2f s", m.mean, target, z, t)};
}

Outcome bulk_skew() {
  const auto t0 = Clock::now();
  const std::pair<const char*, std::function<Graph(std::uint64_t)>> models[] = {
      {"ER", [](std::uint64_t s) { return gen_er(500, 10, s); }},
      {"BA", [](std::uint64_t s) { return gen_ba(500, 4, s); }},
      {"WS", [](std::uint64_t s) { return gen_ws(500, 10, 0.5, s); }},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [name, make] : models) {
    int negative = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
      if (bulk_third_moment(make(s), 1) < 0.0) ++negative;
    pass = pass && negative >= 95;
    detail += fmt("%s %d/100 negative; ", name, negative);
  }
  return {pass, detail + fmt("%.1f s", seconds_since(t0))};
}

Outcome ng_transition() {
  const auto t0 = Clock::now();
  SweepSpec spec;
  spec.model = "ng";
  spec.parameter = "k_out_fraction";
  for (int i = 0; i <= 12; ++i) spec.grid.push_back(i / 16.0);
  spec.replicates = 100;
  spec.base_seed = 1;
  spec.threads = threads();
  const auto rows = run_sweep(spec);

  std::vector<double> er;
  for (std::uint64_t s = 0; s < 100; ++s) er.push_back(gcc(gen_er(256, 16, 500000 + s)));
  const auto band = moments_of(er);
  const double band_hi = band.mean + band.sd;

  std::vector<double> mean_gcc(spec.grid.size());
  std::vector<int> detectable(spec.grid.size(), 0);
  int errors = 0;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    std::vector<double> xs;
    for (std::size_t r = 0; r < spec.replicates; ++r) {
      const auto& row = rows[i * spec.replicates + r];
      if (!row.gcc) {
        ++errors;
        continue;
      }
      xs.push_back(*row.gcc);
      if (row.verdict == "Detectable") ++detectable[i];
    }
    mean_gcc[i] = moments_of(xs).mean;
  }

  bool decreasing = true;
  std::size_t entered = spec.grid.size();
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    if (mean_gcc[i] <= band_hi) {
      entered = i;
      break;
    }
    if (i > 0 && !(mean_gcc[i] < mean_gcc[i - 1])) decreasing = false;
  }
  if (entered < spec.grid.size() && entered > 0 && !(mean_gcc[entered] < mean_gcc[entered - 1])) decreasing = false;

  std::size_t flip = spec.grid.size();
  for (std::size_t i = 0; i < spec.grid.size(); ++i)
    if (detectable[i] * 2 <= static_cast<int>(spec.replicates)) {
      flip = i;
      break;
    }
  bool stays = true;
  for (std::size_t i = flip; i < spec.grid.size(); ++i)
    if (detectable[i] * 2 > static_cast<int>(spec.replicates)) stays = false;
  const bool flip_ok = flip > 0 && flip < spec.grid.size() && spec.grid[flip] >= 0.44 && spec.grid[flip] <= 0.75;

  std::string trace;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) trace += fmt(" %.4f/%d", mean_gcc[i], detectable[i]);
  return {decreasing && entered < spec.grid.size() && flip_ok && stays && errors == 0,
          fmt("band <= %.4f entered at %s, flip at %s; gcc/detectable:%s; %.1f s",
              band_hi, entered < spec.grid.size() ? fmt("%.4f", spec.grid[entered]).c_str() : "never",
              flip < spec.grid.size() ? fmt("%.4f", spec.grid[flip]).c_str() : "never", trace.c_str(),
              seconds_since(t0))};
}

Outcome lfr_validation() {
  const auto t0 = Clock::now();
  SweepSpec spec;
  spec.model = "lfr";
  spec.parameter = "mu";
  for (int i = 1; i <= 9; ++i) spec.grid.push_back(i / 10.0);
  spec.replicates = 100;
  spec.base_seed = 2;
  spec.threads = threads();
  const auto rows = run_sweep(spec);
  bool pass = true;
  std::string trace;
  int errors = 0;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    int detectable = 0;
    for (std::size_t r = 0; r < spec.replicates; ++r) {
      const auto& row = rows[i * spec.replicates + r];
      if (row.verdict == "error") ++errors;
      if (row.verdict == "Detectable") ++detectable;
    }
    const double mu = spec.grid[i];
    if (mu <= 0.5 + 1e-9 && detectable < 90) pass = false;
    if (mu >= 0.9 - 1e-9 && detectable > 10) pass = false;
    trace += fmt(" %.1f:%d", mu, detectable);
  }
  return {pass && errors == 0,
          fmt("Detectable per 100 at mu%s; %d errors; %.1f s", trace.c_str(), errors, seconds_since(t0))};
}

Outcome bound_ordering() {
  const auto t0 = Clock::now();
  int ordered = 0, total = 0, below_exact = 0, exact_le_chung = 0;
  for (std::uint64_t n : {1000ULL, 3000ULL, 10000ULL})
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto g = gen_ba(n, 4, 1000 * n + s);
      auto st = degree_stats(g);
      const double measured = gcc(g);
      const double exact = gcc_contribution(lambda1_power_iteration(g).lambda1, st);
      const double chung = gcc_contribution(lambda1_chung(st), st);
      ++total;
      below_exact += measured < exact;
      exact_le_chung += exact <= chung;
      if (measured < exact && exact <= chung) ++ordered;
    }
  return {ordered * 100 >= 95 * total,
          fmt("%d/%d graphs ordered (gcc < exact %d, exact <= chung %d), %.1f s", ordered, total, below_exact,
              exact_le_chung, seconds_since(t0))};
}

Outcome verdict_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long violations = 0;
  for (int i = 0; i < 100000; ++i) {
    double c_uc = u(rng), bound = u(rng), g = u(rng);
    switch (i % 5) {
      case 1: g = c_uc; break;
      case 2: g = bound; break;
      case 3: bound = c_uc; g = (i % 2) ? c_uc : u(rng); break;
      default: break;
    }
    const auto c = verdict_from_values(g, c_uc, bound).classification;
    const bool und = g <= c_uc;
    const bool ind = g > c_uc && g < bound;
    const bool det = g >= bound && g > c_uc;
    // Exactly one predicate, and it names the returned class.
    if (int(und) + int(ind) + int(det) != 1) ++violations;
    if ((c == Classification::Undetectable) != und) ++violations;
    if ((c == Classification::Indeterminate) != ind) ++violations;
    if ((c == Classification::Detectable) != det) ++violations;
    const double g2 = g + u(rng) * (1.0 - g);
    if (verdict_from_values(g2, c_uc, bound).classification < c) ++violations;
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 1.0, fmt("100000 triples, %ld violations, %.3f s", violations, t)};
}

Outcome exact_counter() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + rng() % 58;
    auto g = oracle::coin_flip_graph(n, std::uniform_real_distribution<double>(0.05, 0.6)(rng), rng());
    auto c = triangle_census(g);
    auto b = oracle::brute_force_triangles(g);
    if (c.total_triangles != b.total || c.per_node != b.per_node) ++mismatches;
  }
  auto g = gen_er(1000, 16, 4242);
  const double exact = static_cast<double>(triangle_census(g).total_triangles);
  int within = 0;
  for (std::uint64_t s = 0; s < 100; ++s)
    if (std::abs(approx_triangle_count(g, 100000, s).estimate - exact) <= 0.05 * exact) ++within;
  return {mismatches == 0 && within >= 95,
          fmt("%d/100 brute-force mismatches; sampler within 5%% in %d/100 seeds; %.1f s", mismatches, within,
              seconds_since(t0))};
}

Outcome performance() {
  auto g = gen_ba(100000, 10, 1);
  auto t0 = Clock::now();
  auto c = triangle_census(g);
  const double census_s = seconds_since(t0);
  t0 = Clock::now();
  auto a = assess(g);
  const double assess_s = seconds_since(t0);
  return {census_s < 10.0 && assess_s < 15.0 && a.total_triangles == c.total_triangles,
          fmt("E = %llu, census %.2f s, assess %.2f s (%s)", static_cast<unsigned long long>(g.edge_count()),
              census_s, assess_s, std::string(to_string(a.verdict.classification)).c_str())};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"1 spectral identity", spectral_identity},
      {"2 ER baseline", er_baseline},
      {"3 negative bulk skew", bulk_skew},
      {"4 NG detectability transition", ng_transition},
      {"5 LFR-style validation", lfr_validation},
      {"6 bound ordering", bound_ordering},
      {"7 verdict engine", verdict_suite},
      {"8 exact counter oracle", exact_counter},
      {"9 performance", performance},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-32s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}

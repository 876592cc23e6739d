#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "tridet/error.hpp"
#include "tridet/generators.hpp"
#include "tridet/rng.hpp"

namespace tridet {

namespace {

double law_mean(const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    num += static_cast<double>(k) * w[k];
    den += w[k];
  }
  return num / den;
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Edge multiset under repair. `allowed(u, v)` rejects pairs beyond loops and
// duplicates (e.g. external edges inside one community).
template <class Allowed>
class StubMatcher {
public:
  StubMatcher(std::vector<NodeId> stubs, Rng& rng, Allowed allowed)
      : rng_(rng), allowed_(allowed) {
    std::shuffle(stubs.begin(), stubs.end(), rng_);
    if (stubs.size() % 2 == 1) odd_stub_ = stubs.back();
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      edges_.push_back({stubs[i], stubs[i + 1]});
      ++count_[pair_key(stubs[i], stubs[i + 1])];
    }
  }

  bool good(const RawEdge& e) const {
    return e.u != e.v && allowed_(e.u, e.v) && count_.at(pair_key(e.u, e.v)) == 1;
  }

  bool acceptable_new(NodeId a, NodeId b) const {
    if (a == b || !allowed_(a, b)) return false;
    auto it = count_.find(pair_key(a, b));
    return it == count_.end() || it->second == 0;
  }

  // Swap-repair bad edges; returns attempts used.
  std::uint64_t repair(std::uint64_t budget) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!good(edges_[i])) bad.push_back(i);
    std::uint64_t attempts = 0;
    if (edges_.size() < 2) return attempts;
    std::uniform_int_distribution<std::size_t> pick(0, edges_.size() - 1);
    std::bernoulli_distribution orient(0.5);
    while (!bad.empty() && attempts < budget) {
      const std::size_t i = bad.back();
      if (good(edges_[i])) {
        bad.pop_back();
        continue;
      }
      ++attempts;
      const std::size_t j = pick(rng_);
      if (j == i) continue;
      RawEdge e1 = edges_[i], e2 = edges_[j];
      if (orient(rng_)) std::swap(e2.u, e2.v);
      // (a,b),(c,d) -> (a,d),(c,b)
      const NodeId a = e1.u, b = e1.v, c = e2.u, d = e2.v;
      remove(e1);
      remove(e2);
      if (acceptable_new(a, d) && acceptable_new(c, b) && pair_key(a, d) != pair_key(c, b)) {
        edges_[i] = {a, d};
        edges_[j] = {c, b};
        add(edges_[i]);
        add(edges_[j]);
        bad.pop_back();
      } else {
        add(e1);
        add(e2);
      }
    }
    return attempts;
  }

  // Keeps one copy of every good pair. Endpoints of the rest go to
  // `leftover` when given; returns the number of stubs not kept.
  std::uint64_t collect(std::vector<RawEdge>& out, std::vector<NodeId>* leftover = nullptr) {
    std::uint64_t dropped = 0;
    for (const auto& e : edges_) {
      auto& c = count_[pair_key(e.u, e.v)];
      if (e.u == e.v || !allowed_(e.u, e.v) || c == 0) {
        dropped += 2;
        if (leftover) {
          leftover->push_back(e.u);
          leftover->push_back(e.v);
        }
        continue;
      }
      c = 0;  // later copies are dropped
      out.push_back(e);
    }
    if (odd_stub_ && leftover) leftover->push_back(*odd_stub_);
    return dropped + (odd_stub_ ? 1 : 0);
  }

  std::size_t size() const { return edges_.size(); }

private:
  void remove(const RawEdge& e) { --count_[pair_key(e.u, e.v)]; }
  void add(const RawEdge& e) { ++count_[pair_key(e.u, e.v)]; }

  Rng& rng_;
  Allowed allowed_;
  std::vector<RawEdge> edges_;
  std::unordered_map<std::uint64_t, std::uint32_t> count_;
  std::optional<NodeId> odd_stub_;
};

std::vector<std::uint64_t> sample_community_sizes(const LfrSpec& spec, Rng& rng) {
  std::vector<double> w(spec.max_community + 1, 0.0);
  for (std::uint64_t s = spec.min_community; s <= spec.max_community; ++s)
    w[s] = std::pow(static_cast<double>(s), -spec.gamma_c);
  std::discrete_distribution<std::uint64_t> draw(w.begin(), w.end());

  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  while (total < spec.n) {
    const std::uint64_t s = draw(rng);
    if (total + s <= spec.n) {
      sizes.push_back(s);
      total += s;
      continue;
    }
    std::uint64_t rest = spec.n - total;
    if (rest >= spec.min_community) {
      sizes.push_back(rest);
    } else {
      // Spread the remainder over existing communities with room.
      std::uniform_int_distribution<std::size_t> start(0, sizes.empty() ? 0 : sizes.size() - 1);
      std::size_t idx = sizes.empty() ? 0 : start(rng);
      std::size_t stuck = 0;
      while (rest > 0 && !sizes.empty() && stuck < sizes.size()) {
        if (sizes[idx] < spec.max_community) {
          ++sizes[idx];
          --rest;
          stuck = 0;
        } else {
          ++stuck;
        }
        idx = (idx + 1) % sizes.size();
      }
      if (rest > 0) sizes.push_back(rest);
    }
    total = spec.n;
  }
  return sizes;
}

}  // namespace

std::vector<double> degree_law_weights(double cutoff, std::uint64_t k_max, double gamma) {
  std::vector<double> w(k_max + 1, 0.0);
  const auto lo = static_cast<std::uint64_t>(std::floor(cutoff));
  const double frac = cutoff - static_cast<double>(lo);
  for (std::uint64_t k = std::max<std::uint64_t>(lo, 1); k <= k_max; ++k)
    w[k] = std::pow(static_cast<double>(k), -gamma);
  if (lo >= 1 && lo <= k_max) w[lo] *= 1.0 - frac;
  return w;
}

double solve_degree_cutoff(double mean_k, std::uint64_t k_max, double gamma) {
  if (k_max < 1) throw GenerationError("degree law needs k_max >= 1");
  double lo = 1.0, hi = static_cast<double>(k_max);
  const double mean_lo = law_mean(degree_law_weights(lo, k_max, gamma));
  if (mean_k < mean_lo || mean_k > static_cast<double>(k_max)) {
    std::ostringstream msg;
    msg << "mean degree " << mean_k << " unreachable with k_max " << k_max << " and exponent " << gamma
        << " (range [" << mean_lo << ", " << k_max << "])";
    throw GenerationError(msg.str());
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (law_mean(degree_law_weights(mid, k_max, gamma)) < mean_k)
      lo = mid;
    else
      hi = mid;
  }
  const double cutoff = 0.5 * (lo + hi);
  const double achieved = law_mean(degree_law_weights(cutoff, k_max, gamma));
  if (std::abs(achieved - mean_k) > 0.02 * mean_k)
    throw GenerationError("degree cutoff bisection missed the target mean");
  return cutoff;
}

Generated gen_lfr_like(const LfrSpec& spec) {
  if (!(spec.mu >= 0.0 && spec.mu <= 1.0)) throw InvalidArgument("mixing parameter must lie in [0,1]");
  if (spec.min_community < 2 || spec.min_community > spec.max_community)
    throw InvalidArgument("invalid community size range");
  if (spec.n < spec.min_community) throw InvalidArgument("n smaller than the minimum community size");
  if (static_cast<double>(spec.min_community) <= spec.mean_k / 2.0)
    throw InvalidArgument("minimum community size must exceed mean_k/2");
  if (spec.k_max >= spec.n) throw InvalidArgument("k_max must be below n");
  if (spec.n >= std::numeric_limits<NodeId>::max()) throw InvalidArgument("node count exceeds NodeId range");

  const std::uint64_t n = spec.n;
  Generated out;
  GenReport& rep = out.report;
  rep.model = "lfr";
  rep.seed = spec.seed;
  rep.requested_mixing = spec.mu;

  // Degrees.
  const double cutoff = solve_degree_cutoff(spec.mean_k, spec.k_max, spec.gamma);
  const auto law = degree_law_weights(cutoff, spec.k_max, spec.gamma);
  rep.k_min = cutoff;
  rep.expected_mean_k = law_mean(law);
  Rng deg_rng = make_stream(spec.seed, "lfr-degrees");
  std::discrete_distribution<std::uint64_t> draw_degree(law.begin(), law.end());
  std::vector<std::uint64_t> degree(n);
  for (auto& k : degree) k = draw_degree(deg_rng);
  if (std::accumulate(degree.begin(), degree.end(), std::uint64_t{0}) % 2 == 1) {
    auto it = std::find_if(degree.begin(), degree.end(), [&](std::uint64_t k) { return k < spec.k_max; });
    if (it != degree.end())
      ++*it;
    else
      --degree.front();
  }

  // Internal / external split with unbiased rounding of mu * k.
  Rng split_rng = make_stream(spec.seed, "lfr-split");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::uint64_t> k_ext(n), k_int(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    const double target = spec.mu * static_cast<double>(degree[v]);
    const double base = std::floor(target);
    k_ext[v] = static_cast<std::uint64_t>(base) + (unit(split_rng) < target - base ? 1 : 0);
    k_ext[v] = std::min(k_ext[v], degree[v]);
    k_int[v] = degree[v] - k_ext[v];
  }

  const bool isolated_communities = spec.mu == 0.0;

  // Communities, filled largest internal degree first so every node lands in
  // a community big enough for its internal stubs.
  Rng comm_rng = make_stream(spec.seed, "lfr-communities");
  rep.community_sizes = sample_community_sizes(spec, comm_rng);
  const auto& sizes = rep.community_sizes;
  std::vector<std::uint64_t> room(sizes);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return k_int[a] > k_int[b]; });
  rep.membership.assign(n, 0);
  std::vector<double> weight(sizes.size());
  for (NodeId v : order) {
    for (std::size_t c = 0; c < sizes.size(); ++c)
      weight[c] = (room[c] > 0 && sizes[c] - 1 >= k_int[v]) ? static_cast<double>(room[c]) : 0.0;
    std::size_t chosen;
    if (std::any_of(weight.begin(), weight.end(), [](double x) { return x > 0.0; })) {
      std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
      chosen = pick(comm_rng);
    } else {
      // No community fits: take the biggest one with room and move the
      // overflow to external stubs.
      chosen = sizes.size();
      for (std::size_t c = 0; c < sizes.size(); ++c)
        if (room[c] > 0 && (chosen == sizes.size() || sizes[c] > sizes[chosen])) chosen = c;
      const std::uint64_t cap = sizes[chosen] - 1;
      if (isolated_communities)
        degree[v] -= k_int[v] - cap;
      else
        k_ext[v] += k_int[v] - cap;
      k_int[v] = cap;
    }
    --room[chosen];
    rep.membership[v] = static_cast<std::uint32_t>(chosen);
  }

  std::vector<std::vector<NodeId>> members(sizes.size());
  for (NodeId v = 0; v < n; ++v) members[rep.membership[v]].push_back(v);

  // Internal stub sums must be even per community; move one stub outward,
  // or drop it when communities are isolated.
  for (auto& group : members) {
    std::uint64_t sum = 0;
    for (NodeId v : group) sum += k_int[v];
    if (sum % 2 == 1) {
      auto it = std::max_element(group.begin(), group.end(), [&](NodeId a, NodeId b) { return k_int[a] < k_int[b]; });
      --k_int[*it];
      if (isolated_communities)
        --degree[*it];
      else
        ++k_ext[*it];
    }
  }

  const std::uint64_t total_edges = std::accumulate(degree.begin(), degree.end(), std::uint64_t{0}) / 2;
  const std::uint64_t budget = spec.rewire_budget_factor * std::max<std::uint64_t>(total_edges, 1);
  std::vector<RawEdge> edges;
  edges.reserve(total_edges);
  Rng wire_rng = make_stream(spec.seed, "lfr-wiring");

  // Internal stubs left over after repair join the external pool.
  std::vector<NodeId> spill;
  auto always = [](NodeId, NodeId) { return true; };
  for (const auto& group : members) {
    std::vector<NodeId> stubs;
    for (NodeId v : group) stubs.insert(stubs.end(), k_int[v], v);
    StubMatcher matcher(std::move(stubs), wire_rng, always);
    const std::uint64_t share =
        std::max<std::uint64_t>(budget * matcher.size() / std::max<std::uint64_t>(total_edges, 1), 100);
    rep.rewiring_attempts += matcher.repair(share);
    const std::uint64_t left = matcher.collect(edges, isolated_communities ? nullptr : &spill);
    if (isolated_communities) rep.unresolved_stubs += left;
  }

  {
    std::vector<NodeId> stubs = std::move(spill);
    for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), k_ext[v], v);
    const auto& memb = rep.membership;
    auto crossing = [&memb](NodeId a, NodeId b) { return memb[a] != memb[b]; };
    StubMatcher matcher(std::move(stubs), wire_rng, crossing);
    const std::uint64_t share =
        std::max<std::uint64_t>(budget * matcher.size() / std::max<std::uint64_t>(total_edges, 1), 100);
    rep.rewiring_attempts += matcher.repair(share);
    rep.unresolved_stubs += matcher.collect(edges);
  }

  const std::uint64_t total_stubs = 2 * total_edges;
  if (static_cast<double>(rep.unresolved_stubs) > spec.max_unresolved_fraction * static_cast<double>(total_stubs)) {
    std::ostringstream msg;
    msg << "stub matching failed: " << rep.unresolved_stubs << " of " << total_stubs
        << " stubs unresolved after " << rep.rewiring_attempts << " rewiring attempts (mu=" << spec.mu
        << ", communities=" << sizes.size() << ")";
    throw GenerationError(msg.str());
  }

  out.graph = Graph::from_pairs(n, edges);
  rep.realized_mixing = mixing_fraction(out.graph, rep.membership);
  rep.stats = degree_stats(out.graph);
  return out;
}

}  // namespace tridet

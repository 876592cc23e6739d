#include "tridet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "tridet/error.hpp"

namespace tridet {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  EdgeList list;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](std::string_view tok, std::size_t line_no) -> NodeId {
    auto [it, inserted] = index.try_emplace(std::string(tok), static_cast<NodeId>(list.labels.size()));
    if (inserted) {
      if (list.labels.size() >= std::numeric_limits<NodeId>::max())
        throw ParseError(line_no, "too many distinct nodes");
      list.labels.emplace_back(tok);
    }
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected 2 tokens, found " + std::to_string(tokens.size()));
    NodeId u = intern(tokens[0], line_no);
    NodeId v = intern(tokens[1], line_no);
    list.pairs.push_back({u, v});
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  return list;
}

EdgeList parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

EdgeList read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in);
}

Graph Graph::from_pairs(std::size_t node_count, std::span<const RawEdge> pairs,
                        BuildReport* report) {
  if (node_count >= std::numeric_limits<NodeId>::max())
    throw InvalidArgument("node count exceeds NodeId range");
  BuildReport local;
  std::vector<std::uint64_t> degree(node_count, 0);
  for (const auto& p : pairs) {
    if (p.u >= node_count || p.v >= node_count)
      throw InvalidArgument("edge endpoint out of range");
    if (p.u == p.v) {
      ++local.self_loops_dropped;
      continue;
    }
    ++degree[p.u];
    ++degree[p.v];
  }

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  std::vector<NodeId> adj(g.offsets_.back());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& p : pairs) {
    if (p.u == p.v) continue;
    adj[cursor[p.u]++] = p.v;
    adj[cursor[p.v]++] = p.u;
  }

  // Sort and deduplicate each list, compacting in place.
  std::uint64_t write = 0;
  std::uint64_t dup_half_edges = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    auto uniq_end = std::unique(first, last);
    dup_half_edges += static_cast<std::uint64_t>(last - uniq_end);
    g.offsets_[v] = write;
    for (auto it = first; it != uniq_end; ++it) adj[write++] = *it;
  }
  g.offsets_[node_count] = write;
  adj.resize(write);
  adj.shrink_to_fit();
  g.neighbors_ = std::move(adj);
  local.duplicates_dropped = dup_half_edges / 2;
  if (report) *report = local;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  if (nu.size() > nv.size()) return std::binary_search(nv.begin(), nv.end(), u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count())
    throw InvalidArgument("label count does not match node count");
  labels_ = std::move(labels);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph build_graph(const EdgeList& list, BuildReport* report,
                  std::optional<std::size_t> node_count_override) {
  std::size_t n = list.node_count();
  if (node_count_override) {
    if (*node_count_override < n)
      throw InvalidArgument("node count override " + std::to_string(*node_count_override) +
                            " is below the " + std::to_string(n) + " nodes seen");
    n = *node_count_override;
  }
  Graph g = Graph::from_pairs(n, list.pairs, report);
  std::vector<std::string> labels = list.labels;
  for (std::size_t i = labels.size(); i < n; ++i) labels.push_back("_isolated_" + std::to_string(i));
  g.set_labels(std::move(labels));
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  const auto& labels = g.labels();
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) {
    if (labels.empty())
      out << u << ' ' << v << '\n';
    else
      out << labels[u] << ' ' << labels[v] << '\n';
  }
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw UndefinedError("degree statistics undefined for an empty graph");
  DegreeStats s;
  s.n = n;
  s.e = g.edge_count();
  s.degrees.resize(n);
  std::uint64_t sum_k = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t k = g.degree(v);
    s.degrees[v] = k;
    sum_k += k;
    s.sum_k2 += k * k;
    s.k_max = std::max(s.k_max, k);
  }
  s.mean_k = static_cast<double>(sum_k) / static_cast<double>(n);
  s.mean_k2 = static_cast<double>(s.sum_k2) / static_cast<double>(n);
  return s;
}

bool is_bipartite(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::int8_t> colour(n, -1);
  std::deque<NodeId> queue;
  for (NodeId start = 0; start < n; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId w : g.neighbors(u)) {
        if (colour[w] < 0) {
          colour[w] = static_cast<std::int8_t>(1 - colour[u]);
          queue.push_back(w);
        } else if (colour[w] == colour[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<NodeId> largest_component(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<NodeId> stack;
  std::uint32_t best = 0;
  std::size_t best_size = 0;
  std::uint32_t next = 0;
  for (NodeId start = 0; start < n; ++start) {
    if (comp[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    std::size_t size = 0;
    comp[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : g.neighbors(u)) {
        if (comp[w] == std::numeric_limits<std::uint32_t>::max()) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = next;
    }
    ++next;
  }
  std::vector<NodeId> out;
  out.reserve(best_size);
  for (NodeId v = 0; v < n; ++v)
    if (comp[v] == best) out.push_back(v);
  return out;
}

double degree_assortativity(const Graph& g) {
  // Newman's edge-based form, each undirected edge counted in both directions.
  double sum_prod = 0.0, sum_sum = 0.0, sum_sq = 0.0;
  const double m = static_cast<double>(g.edge_count());
  if (m == 0.0) return std::numeric_limits<double>::quiet_NaN();
  for (const auto& [u, v] : g.edges()) {
    const double ku = static_cast<double>(g.degree(u));
    const double kv = static_cast<double>(g.degree(v));
    sum_prod += ku * kv;
    sum_sum += 0.5 * (ku + kv);
    sum_sq += 0.5 * (ku * ku + kv * kv);
  }
  const double mean = sum_sum / m;
  const double denom = sum_sq / m - mean * mean;
  if (!(denom > 1e-12 * (sum_sq / m))) return std::numeric_limits<double>::quiet_NaN();
  return (sum_prod / m - mean * mean) / denom;
}

}  // namespace tridet

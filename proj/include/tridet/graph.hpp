#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tridet {

using NodeId = std::uint32_t;

// Undirected pair as read from an edge list, before any cleaning.
struct RawEdge {
  NodeId u;
  NodeId v;
};

// Result of parsing an edge-list stream. `labels[i]` is the original token
// of dense node i.
struct EdgeList {
  std::vector<RawEdge> pairs;
  std::vector<std::string> labels;

  std::size_t node_count() const noexcept { return labels.size(); }
};

// Parses whitespace-separated "u v" lines; '#' lines and blank lines are
// skipped. Tokens are remapped to dense indices in order of first
// appearance. Throws ParseError carrying the 1-based line number.
EdgeList parse_edge_list(std::istream& in);
EdgeList parse_edge_list(std::string_view text);
EdgeList read_edge_list_file(const std::string& path);

struct BuildReport {
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
};

// Immutable simple undirected graph in compressed sparse row form.
// Neighbor lists are sorted ascending, contain no self-loops and no
// duplicates, and adjacency is symmetric.
class Graph {
public:
  Graph() : offsets_(1, 0) {}

  // Cleans `pairs` (drops loops, collapses duplicates). `node_count` must be
  // greater than every endpoint; nodes without edges are kept isolated.
  static Graph from_pairs(std::size_t node_count, std::span<const RawEdge> pairs,
                          BuildReport* report = nullptr);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::uint64_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint64_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  // Original tokens when the graph came from a parsed file; empty otherwise.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Each undirected edge once, with u < v, in ascending order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  bool operator==(const Graph& other) const noexcept {
    return offsets_ == other.offsets_ && neighbors_ == other.neighbors_;
  }

private:
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
};

// Builds from a parsed edge list. `node_count_override`, when given, must be
// at least the number of distinct tokens; extra nodes enter isolated.
Graph build_graph(const EdgeList& list, BuildReport* report = nullptr,
                  std::optional<std::size_t> node_count_override = std::nullopt);

void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

struct DegreeStats {
  std::uint64_t n = 0;
  std::uint64_t e = 0;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  std::uint64_t k_max = 0;
  std::uint64_t sum_k2 = 0;  // exact Σ k_l², kept for integer identities
  std::vector<std::uint64_t> degrees;
};

// Moments of the realized degree sequence, isolated nodes included.
// Throws UndefinedError for an empty graph.
DegreeStats degree_stats(const Graph& g);

// Proper 2-colouring exists (BFS per component).
bool is_bipartite(const Graph& g);

// Node labels of the largest connected component, ascending; ties go to the
// component containing the smallest node id.
std::vector<NodeId> largest_component(const Graph& g);

// Pearson correlation of degrees at either end of an edge. NaN when
// undefined (no edges, or every edge joins equal degrees).
double degree_assortativity(const Graph& g);

}  // namespace tridet

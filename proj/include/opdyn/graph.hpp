#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace opdyn {

using Vertex = std::size_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Partition;

/// Undirected simple graph on vertices 0..n-1 with an external label per vertex.
///
/// Edges are kept sorted and deduplicated; each edge has a stable index into
/// edges(), which the dynamics use to record interaction sets compactly.
/// Immutable after construction.
class Graph {
 public:
  /// Builds a graph from index pairs. Duplicate pairs (in either orientation)
  /// collapse; self-loops and out-of-range indices throw std::invalid_argument.
  /// Empty `labels` means "use the decimal index".
  Graph(std::size_t vertex_count, const std::vector<Edge>& edges,
        std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted neighbor list of `i`.
  const std::vector<Vertex>& neighbors(Vertex i) const { return adjacency_.at(i); }
  std::size_t degree(Vertex i) const { return adjacency_.at(i).size(); }
  bool has_edge(Vertex i, Vertex j) const;

  const std::string& label(Vertex i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::string> labels_;
};

/// Parses whitespace-separated label pairs, one edge per line. Blank lines and
/// lines whose first non-space character is '#' are skipped. Labels map to
/// indices in order of first appearance.
Graph load_edge_list(std::string_view text);

struct EdgeListOptions {
  /// Drop "a a" lines instead of rejecting them (raw crawled networks).
  bool drop_self_loops = false;
};

/// As load_edge_list, with lenient handling controlled by `options`.
/// `dropped_self_loops`, when given, receives the number of discarded lines.
Graph load_edge_list(std::string_view text, const EdgeListOptions& options,
                     std::size_t* dropped_self_loops = nullptr);

/// Reads a file and parses it with load_edge_list. Throws std::runtime_error if
/// the file cannot be opened.
Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {},
                          std::size_t* dropped_self_loops = nullptr);

/// The partition into connected components, singletons for isolated vertices.
Partition connected_components(const Graph& g);

bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  /// parent_index[k] is the index in the parent graph of subgraph vertex k.
  std::vector<Vertex> parent_index;
};

/// Subgraph on `vertices` (any order, no duplicates) keeping only internal edges.
/// Subgraph vertex k corresponds to the k-th smallest requested vertex.
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

/// Same vertex set; keeps an edge iff both endpoints share a class of `p`.
Graph partition_spanning_subgraph(const Graph& g, const Partition& p);

/// Graphviz export.
std::string to_dot(const Graph& g, std::string_view name = "G");
/// Graphviz export with nodes filled by class (`class` attribute holds the class
/// index) and edges between classes drawn dashed.
std::string to_dot(const Graph& g, const Partition& p, std::string_view name = "G");

}  // namespace opdyn

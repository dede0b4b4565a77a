#include "opdyn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "opdyn/errors.hpp"
#include "opdyn/partition.hpp"

namespace opdyn {

Graph::Graph(std::size_t vertex_count, const std::vector<Edge>& edges,
             std::vector<std::string> labels)
    : adjacency_(vertex_count), labels_(std::move(labels)) {
  if (vertex_count == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (labels_.empty()) {
    labels_.reserve(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != vertex_count) {
    throw std::invalid_argument("label count does not match vertex count");
  }

  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v)
      throw std::invalid_argument("self-loop on vertex " + labels_[e.u]);
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Vertex i, Vertex j) const {
  const auto& nb = adjacency_.at(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Graph load_edge_list(std::string_view text) { return load_edge_list(text, EdgeListOptions{}); }

Graph load_edge_list(std::string_view text, const EdgeListOptions& options,
                     std::size_t* dropped_self_loops) {
  std::unordered_map<std::string, Vertex> index;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::size_t dropped = 0;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected 2 vertex labels, found " + std::to_string(tokens.size()));
    if (tokens[0] == tokens[1]) {
      if (options.drop_self_loops) {
        ++dropped;
        continue;
      }
      throw ParseError(line_no, "self-loop on vertex " + tokens[0]);
    }
    Vertex a = intern(tokens[0]);
    Vertex b = intern(tokens[1]);
    edges.push_back({a, b});
  }
  if (labels.empty()) throw ParseError(line_no, "edge list contains no edges");
  if (dropped_self_loops) *dropped_self_loops = dropped;
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options,
                          std::size_t* dropped_self_loops) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str(), options, dropped_self_loops);
}

Partition connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, kUnset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return Partition::from_labels(comp);
}

bool is_connected(const Graph& g) { return connected_components(g).class_count() == 1; }

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("induced subgraph needs a non-empty vertex set");
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("induced subgraph vertex set has duplicates");
  if (sorted.back() >= g.vertex_count())
    throw std::invalid_argument("induced subgraph vertex out of range");

  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local(g.vertex_count(), kAbsent);
  for (std::size_t k = 0; k < sorted.size(); ++k) local[sorted[k]] = k;

  std::vector<Edge> edges;
  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    labels.push_back(g.label(sorted[k]));
    for (Vertex w : g.neighbors(sorted[k])) {
      if (local[w] != kAbsent && local[w] > k) edges.push_back({k, local[w]});
    }
  }
  return {Graph(sorted.size(), edges, std::move(labels)), std::move(sorted)};
}

Graph partition_spanning_subgraph(const Graph& g, const Partition& p) {
  if (p.vertex_count() != g.vertex_count())
    throw std::invalid_argument("partition does not cover the graph's vertex set");
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (p.class_of(e.u) == p.class_of(e.v)) kept.push_back(e);
  }
  return Graph(g.vertex_count(), kept, g.labels());
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string dot_export(const Graph& g, const Partition* p, std::string_view name) {
  if (p && p->vertex_count() != g.vertex_count())
    throw std::invalid_argument("partition does not cover the graph's vertex set");
  std::ostringstream out;
  out << "graph " << dot_quote(std::string(name)) << " {\n";
  if (p) out << "  node [style=filled, colorscheme=set312];\n";
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    out << "  " << i << " [label=" << dot_quote(g.label(i));
    if (p) {
      std::size_t c = p->class_of(i);
      out << ", class=" << c << ", fillcolor=" << (c % 12) + 1;
    }
    out << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (p && p->class_of(e.u) != p->class_of(e.v)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const Graph& g, std::string_view name) { return dot_export(g, nullptr, name); }

std::string to_dot(const Graph& g, const Partition& p, std::string_view name) {
  return dot_export(g, &p, name);
}

}  // namespace opdyn

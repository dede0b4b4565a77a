#include "opdyn/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "opdyn/partition.hpp"

namespace opdyn {

namespace {

constexpr std::pair<int, int> kKarateEdges[] = {
    {1, 2},   {1, 3},   {1, 4},   {1, 5},   {1, 6},   {1, 7},   {1, 8},   {1, 9},
    {1, 11},  {1, 12},  {1, 13},  {1, 14},  {1, 18},  {1, 20},  {1, 22},  {1, 32},
    {2, 3},   {2, 4},   {2, 8},   {2, 14},  {2, 18},  {2, 20},  {2, 22},  {2, 31},
    {3, 4},   {3, 8},   {3, 9},   {3, 10},  {3, 14},  {3, 28},  {3, 29},  {3, 33},
    {4, 8},   {4, 13},  {4, 14},  {5, 7},   {5, 11},  {6, 7},   {6, 11},  {6, 17},
    {7, 17},  {9, 31},  {9, 33},  {9, 34},  {10, 34}, {14, 34}, {15, 33}, {15, 34},
    {16, 33}, {16, 34}, {19, 33}, {19, 34}, {20, 34}, {21, 33}, {21, 34}, {23, 33},
    {23, 34}, {24, 26}, {24, 28}, {24, 30}, {24, 33}, {24, 34}, {25, 26}, {25, 28},
    {25, 32}, {26, 32}, {27, 30}, {27, 34}, {28, 34}, {29, 32}, {29, 34}, {30, 33},
    {30, 34}, {31, 33}, {31, 34}, {32, 33}, {32, 34}, {33, 34},
};

constexpr std::size_t kBooksVertices = 105;
constexpr std::size_t kBlogsVertices = 1222;

Graph largest_component(const Graph& g) {
  const Partition comps = connected_components(g);
  const auto& classes = comps.classes();
  auto largest = std::max_element(classes.begin(), classes.end(),
                                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return induced_subgraph(g, *largest).graph;
}

}  // namespace

Graph karate_club() {
  std::vector<Edge> edges;
  for (auto [a, b] : kKarateEdges)
    edges.push_back({static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1)});
  std::vector<std::string> labels;
  for (int i = 1; i <= 34; ++i) labels.push_back(std::to_string(i));
  return Graph(34, edges, std::move(labels));
}

Network load_named_network(std::string_view name, const std::string& path) {
  if (name == "karate") return {"karate", karate_club(), {}};
  if (name != "books" && name != "blogs")
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
  if (path.empty())
    throw std::invalid_argument("fixture '" + std::string(name) + "' needs an edge-list path");

  if (name == "books") {
    Graph g = load_edge_list_file(path);
    if (g.vertex_count() != kBooksVertices)
      throw std::invalid_argument("books network must have 105 vertices, found " +
                                  std::to_string(g.vertex_count()));
    return {"books", std::move(g), {}};
  }

  std::size_t dropped = 0;
  Graph raw = load_edge_list_file(path, EdgeListOptions{.drop_self_loops = true}, &dropped);
  std::vector<std::string> notes{"hyperlinks symmetrized, duplicate links collapsed"};
  if (dropped) notes.push_back("dropped " + std::to_string(dropped) + " self-links");
  Graph g = largest_component(raw);
  if (g.vertex_count() != raw.vertex_count())
    notes.push_back("kept largest connected component (" + std::to_string(g.vertex_count()) +
                    " of " + std::to_string(raw.vertex_count()) + " vertices)");
  if (g.vertex_count() != kBlogsVertices)
    throw std::invalid_argument("blogs network must have 1222 vertices in its largest component, found " +
                                std::to_string(g.vertex_count()));
  return {"blogs", std::move(g), std::move(notes)};
}

Network load_network_file(const std::string& path) {
  return {path, load_edge_list_file(path), {}};
}

}  // namespace opdyn

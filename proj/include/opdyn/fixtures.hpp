#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opdyn/graph.hpp"

namespace opdyn {

/// Zachary's karate club: 34 members labelled "1".."34", 78 friendships.
Graph karate_club();

struct Network {
  std::string name;
  Graph graph;
  /// Human-readable notes on any cleanup applied while loading.
  std::vector<std::string> preprocessing;
};

/// Resolves a benchmark network by name.
///
/// "karate" is built in and ignores `path`. "books" (105 vertices) and "blogs"
/// (1222 vertices) are read from the user-supplied edge list at `path`; the
/// loader checks the expected vertex count. For "blogs", hyperlinks are
/// symmetrized, duplicates and self-links dropped, and the largest connected
/// component kept. Throws std::invalid_argument for unknown names or count
/// mismatches.
Network load_named_network(std::string_view name, const std::string& path = {});

/// A plain edge-list file, named after the path.
Network load_network_file(const std::string& path);

}  // namespace opdyn

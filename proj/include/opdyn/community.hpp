#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/partition.hpp"

namespace opdyn {

enum class CommunitySource { interaction_graph, opinion_clustering };

std::string_view to_string(CommunitySource source);

struct CommunityResult {
  Partition partition;
  /// Mean final opinion of each class, aligned with partition.classes().
  std::vector<double> limit_opinions;
  CommunitySource source = CommunitySource::interaction_graph;
  /// Both extraction routes gave the same partition.
  bool agreement = false;
  /// mu2 of the induced subgraph per class; empty for singleton classes.
  std::vector<std::optional<double>> mu2_per_class;
  /// Every class with >= 2 members has mu2 > delta.
  bool problem1_satisfied = false;
  /// Largest spread of final opinions inside a class, and smallest gap between
  /// the limits of two different classes. Logged when the routes disagree.
  double max_class_spread = 0.0;
  double min_class_gap = 0.0;

  /// Smallest mu2 over classes with >= 2 members, if any.
  std::optional<double> min_mu2() const;
};

/// Connected components of the trace's final interaction graph.
/// Throws ContractError for a non-stabilized trace.
Partition communities_from_interaction_graph(const OpinionTrace& trace);

/// Twice the motion still allowed after T by the geometric envelope, 2 R rho^T / (1 - rho),
/// plus a rounding allowance.
double default_clustering_tolerance(const OpinionTrace& trace, const SimulationConfig& cfg);

/// Single-linkage grouping of the final opinions: sort, split at every gap
/// strictly greater than `tolerance`. Throws ContractError for a
/// non-stabilized trace.
Partition communities_from_opinions(const OpinionTrace& trace, double tolerance);

/// Runs both routes, keeps the interaction-graph partition, and scores every
/// class against delta.
CommunityResult extract(const Graph& g, const OpinionTrace& trace, const SimulationConfig& cfg,
                        double delta);

/// {"classes": [[labels...]], "limit_opinions", "mu2", "agreement", ...}.
/// Members are listed by external label, numerically when labels are integers.
std::string to_json(const CommunityResult& result, const Graph& g);

/// Label order used in reports: integer labels numerically, others lexically,
/// integers first.
bool label_less(const std::string& a, const std::string& b);

}  // namespace opdyn

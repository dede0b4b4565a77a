#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/fixtures.hpp"
#include "opdyn/partition.hpp"
#include "opdyn/quality.hpp"

namespace opdyn {

/// One Monte-Carlo experiment. The decay rate is not a free parameter: it is
/// always 1 - alpha * delta.
struct ExperimentSpec {
  /// Builtin or named network ("karate", "books", "blogs"); empty for a plain file.
  std::string fixture;
  /// Edge-list path (plain file, or the data behind "books"/"blogs").
  std::string graph_path;
  double delta = 0.2;
  double radius = 1.0;
  double alpha = 0.1;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  WeightMode weight_mode = WeightMode::degree_average;
  std::vector<double> stability_times;
  /// Worker threads; 0 picks the hardware concurrency. Does not affect results.
  unsigned threads = 0;

  double rho() const { return 1.0 - alpha * delta; }
  /// Throws std::invalid_argument on delta outside (0,1], runs == 0, or model
  /// parameters the simulator would reject.
  void validate() const;
  SimulationConfig simulation_config() const;
};

/// Seed of run `run` under master seed `master` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run);

Network load_network(const ExperimentSpec& spec);

struct PartitionSummary {
  Partition partition;
  std::size_t occurrences = 0;
  /// Runs producing this partition where both extraction routes agreed.
  std::size_t agreements = 0;
  std::optional<double> min_mu2;
  /// Empty for an edgeless graph.
  std::optional<double> modularity;
  bool problem1_satisfied = false;
  std::optional<StabilityCurve> stability;

  std::size_t class_count() const { return partition.class_count(); }
  /// Class sizes, largest first.
  std::vector<std::size_t> class_sizes() const;
};

struct RouteDisagreement {
  std::size_t run;
  double max_class_spread;
  double min_class_gap;
};

struct ExperimentReport {
  std::shared_ptr<const Network> network;
  ExperimentSpec spec;

  /// Distinct partitions, most frequent first (ties by canonical key).
  std::vector<PartitionSummary> partitions;
  std::size_t not_stabilized = 0;

  std::size_t min_end_time = 0;
  std::size_t max_end_time = 0;
  double mean_end_time = 0.0;

  /// Largest |x_i(t) - x_i(T_end)| - R/(1-rho) rho^t over all stabilized runs.
  double max_envelope_violation = 0.0;
  /// Largest |mean(x(t)) - mean(x(0))| over all runs and steps.
  double max_mean_drift = 0.0;

  /// Fitted per-agent convergence rates against rho.
  std::size_t agents_fitted = 0;
  std::size_t agents_exact = 0;
  std::size_t agents_at_or_above_rho = 0;
  std::optional<double> max_fitted_rate;

  std::vector<RouteDisagreement> disagreements;

  std::size_t runs() const { return spec.runs; }
  /// Most frequent partition, or nullptr when no run stabilized.
  const PartitionSummary* modal() const;
};

/// Simulates spec.runs random initial opinion vectors on the spec's network and
/// aggregates the extracted partitions. Deterministic in `spec`; the thread
/// count only changes wall time. Throws ContractError if a run whose two
/// extraction routes agree violates the mu2 > delta guarantee.
ExperimentReport run_experiment(const ExperimentSpec& spec);
ExperimentReport run_experiment(std::shared_ptr<const Network> network, const ExperimentSpec& spec);

/// One report per delta, all sharing the spec's master seed and network.
std::vector<ExperimentReport> delta_sweep(const ExperimentSpec& spec, const std::vector<double>& deltas);

}  // namespace opdyn

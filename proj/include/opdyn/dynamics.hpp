#pragma once

#include <cstddef>
#include <limits>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opdyn/graph.hpp"

namespace opdyn {

/// Opinion scalar. Quad precision where the compiler has it: classes whose
/// second eigenvalue decays barely slower than the confidence bound only
/// separate once the bound is around 1e-20, below the resolution of double
/// opinions near 0.5.
#if defined(__SIZEOF_FLOAT128__)
using Opinion = __float128;
inline constexpr int kOpinionDigits = 113;
#else
using Opinion = long double;
inline constexpr int kOpinionDigits = std::numeric_limits<long double>::digits;
#endif

/// Unit roundoff of Opinion (2^-digits).
inline const double kOpinionRoundoff = std::ldexp(1.0, -kOpinionDigits);

using OpinionVector = std::vector<Opinion>;

inline double to_double(Opinion v) { return static_cast<double>(v); }
inline Opinion abs(Opinion v) { return v < 0 ? -v : v; }

enum class WeightMode {
  /// x_i += alpha/|N_i| * sum_{j in N_i} (x_j - x_i)
  degree_average,
  /// Symmetric weights alpha / (1 + max(|N_i|, |N_j|)); the update matrix is
  /// doubly stochastic and preserves the opinion mean.
  metropolis,
};

std::string_view to_string(WeightMode mode);
/// Accepts "degree_average"/"degree-average" and "metropolis".
WeightMode parse_weight_mode(std::string_view text);

/// Model parameters. The constructor rejects radius <= 0, decay outside (0,1)
/// and step weight outside (0, 1/2).
class SimulationConfig {
 public:
  SimulationConfig(double radius, double decay, double step_weight,
                   WeightMode mode = WeightMode::degree_average);

  double radius() const noexcept { return radius_; }
  double decay() const noexcept { return decay_; }
  double step_weight() const noexcept { return step_weight_; }
  WeightMode weight_mode() const noexcept { return mode_; }
  double stop_threshold() const noexcept { return stop_threshold_; }
  std::size_t stable_window() const noexcept { return stable_window_; }
  std::size_t max_steps() const noexcept { return max_steps_; }

  /// Confidence bound R * rho^t.
  double confidence_bound(std::size_t t) const;

  SimulationConfig& set_stop_threshold(double eps);
  SimulationConfig& set_stable_window(std::size_t steps);
  SimulationConfig& set_max_steps(std::size_t steps);

 private:
  double radius_;
  double decay_;
  double step_weight_;
  WeightMode mode_;
  double stop_threshold_ = std::ldexp(1e4, -kOpinionDigits);
  std::size_t stable_window_ = 50;
  std::size_t max_steps_ = 100000;
};

/// Active edges at one step, as a mask over Graph::edges().
using InteractionSet = std::vector<bool>;

/// Edges of `g` whose endpoints differ by at most the bound at step `t`.
InteractionSet interaction_set(const Graph& g, std::span<const Opinion> x, std::size_t t,
                               const SimulationConfig& cfg);

/// Spanning subgraph of `g` holding the edges flagged in `active`.
Graph interaction_graph(const Graph& g, const InteractionSet& active);

/// N_i(t): neighbors j of i with |x_i - x_j| <= R rho^t (ties included).
std::vector<Vertex> confidence_neighborhood(const Graph& g, std::span<const Opinion> x,
                                            std::size_t t, const SimulationConfig& cfg, Vertex i);

struct StepResult {
  OpinionVector next;
  InteractionSet active;
};

/// One synchronous update x(t) -> x(t+1), returning E(t) alongside.
StepResult step(const Graph& g, std::span<const Opinion> x, std::size_t t,
                const SimulationConfig& cfg);

struct OpinionTrace {
  /// states[t] = x(t) for t = 0..end_time().
  std::vector<OpinionVector> states;
  /// interactions[t] = E(t) for t = 0..end_time()-1.
  std::vector<InteractionSet> interactions;
  /// Start of the final run of identical interaction sets; empty when the
  /// step cap was hit first.
  std::optional<std::size_t> stable_since;
  /// Interaction graph evaluated at x(end_time()).
  Graph final_graph;

  std::size_t end_time() const noexcept { return interactions.size(); }
  bool stabilized() const noexcept { return stable_since.has_value(); }
  const OpinionVector& final_opinions() const { return states.back(); }
};

/// Iterates `step` until the bound R rho^t has dropped below the stop threshold
/// and E(t) has been unchanged for the configured window, or until max_steps.
/// Throws std::invalid_argument on a size mismatch or non-finite opinions.
OpinionTrace simulate(const Graph& g, OpinionVector initial, const SimulationConfig& cfg);
OpinionTrace simulate(const Graph& g, const std::vector<double>& initial, const SimulationConfig& cfg);

/// n uniform draws in [0,1) from a seeded 64-bit Mersenne twister. Portable:
/// the mapping from engine output to double is fixed here, not by the library.
std::vector<double> sample_initial_opinions(std::size_t n, std::uint64_t seed);

/// max over i,t of |x_i(t) - x_i(T_end)| - R/(1-rho) * rho^t, using the final
/// state as the limit. Non-positive up to rounding for a correct trace.
/// Throws ContractError for a trace that did not stabilize.
double check_convergence_bound(const OpinionTrace& trace, const SimulationConfig& cfg);

/// Per-agent geometric rate fitted to the tail of |x_i(t) - x_i(T_end)|.
/// std::nullopt means the agent sat at its limit (too few samples above the
/// rounding floor to fit). Throws ContractError for a non-stabilized trace.
std::vector<std::optional<double>> estimate_convergence_rate(const OpinionTrace& trace);

/// CSV with header "t,agent,opinion", one row per (t, agent).
std::string trace_csv(const OpinionTrace& trace, const Graph& g);
/// JSON object with end_time, stable_since (or null) and the stabilized flag.
std::string trace_summary_json(const OpinionTrace& trace);

}  // namespace opdyn

#include "opdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "opdyn/errors.hpp"

namespace opdyn {

std::string_view to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::degree_average: return "degree_average";
    case WeightMode::metropolis: return "metropolis";
  }
  return "unknown";
}

WeightMode parse_weight_mode(std::string_view text) {
  if (text == "degree_average" || text == "degree-average") return WeightMode::degree_average;
  if (text == "metropolis") return WeightMode::metropolis;
  throw std::invalid_argument("unknown weight mode '" + std::string(text) + "'");
}

SimulationConfig::SimulationConfig(double radius, double decay, double step_weight, WeightMode mode)
    : radius_(radius), decay_(decay), step_weight_(step_weight), mode_(mode) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("confidence radius must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay rate must lie in (0,1)");
  if (!(step_weight > 0.0 && step_weight < 0.5))
    throw std::invalid_argument("step weight must lie in (0,1/2)");
}

double SimulationConfig::confidence_bound(std::size_t t) const {
  return radius_ * std::pow(decay_, static_cast<double>(t));
}

SimulationConfig& SimulationConfig::set_stop_threshold(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("stop threshold must be positive");
  stop_threshold_ = eps;
  return *this;
}

SimulationConfig& SimulationConfig::set_stable_window(std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("stable window must be at least one step");
  stable_window_ = steps;
  return *this;
}

SimulationConfig& SimulationConfig::set_max_steps(std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("max steps must be positive");
  max_steps_ = steps;
  return *this;
}

InteractionSet interaction_set(const Graph& g, std::span<const Opinion> x, std::size_t t,
                               const SimulationConfig& cfg) {
  if (x.size() != g.vertex_count()) throw std::invalid_argument("opinion vector size mismatch");
  const Opinion bound = cfg.confidence_bound(t);
  const auto& edges = g.edges();
  InteractionSet active(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k)
    active[k] = abs(x[edges[k].u] - x[edges[k].v]) <= bound;
  return active;
}

Graph interaction_graph(const Graph& g, const InteractionSet& active) {
  std::vector<Edge> kept;
  for (std::size_t k = 0; k < active.size(); ++k)
    if (active[k]) kept.push_back(g.edges()[k]);
  return Graph(g.vertex_count(), kept, g.labels());
}

std::vector<Vertex> confidence_neighborhood(const Graph& g, std::span<const Opinion> x,
                                            std::size_t t, const SimulationConfig& cfg, Vertex i) {
  if (x.size() != g.vertex_count()) throw std::invalid_argument("opinion vector size mismatch");
  const Opinion bound = cfg.confidence_bound(t);
  std::vector<Vertex> out;
  for (Vertex j : g.neighbors(i))
    if (abs(x[i] - x[j]) <= bound) out.push_back(j);
  return out;
}

StepResult step(const Graph& g, std::span<const Opinion> x, std::size_t t,
                const SimulationConfig& cfg) {
  if (x.size() != g.vertex_count()) throw std::invalid_argument("opinion vector size mismatch");
  const auto& edges = g.edges();
  const Opinion bound = cfg.confidence_bound(t);
  const Opinion alpha = cfg.step_weight();
  StepResult r{OpinionVector(x.begin(), x.end()), InteractionSet(edges.size())};

  // diff[k] = x_v - x_u for every edge, so each difference is formed once.
  OpinionVector diff(edges.size());
  std::vector<std::size_t> count(x.size(), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [u, v] = edges[k];
    diff[k] = x[v] - x[u];
    if (abs(diff[k]) <= bound) {
      r.active[k] = true;
      ++count[u];
      ++count[v];
    }
  }

  if (cfg.weight_mode() == WeightMode::degree_average) {
    OpinionVector pull(x.size(), 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!r.active[k]) continue;
      pull[edges[k].u] += diff[k];
      pull[edges[k].v] -= diff[k];
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      if (count[i] > 0) r.next[i] = x[i] + alpha / static_cast<Opinion>(count[i]) * pull[i];
  } else {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!r.active[k]) continue;
      const auto [u, v] = edges[k];
      const Opinion flow = alpha / static_cast<Opinion>(1 + std::max(count[u], count[v])) * diff[k];
      r.next[u] += flow;
      r.next[v] -= flow;
    }
  }
  return r;
}

OpinionTrace simulate(const Graph& g, const std::vector<double>& initial, const SimulationConfig& cfg) {
  for (double v : initial)
    if (!std::isfinite(v)) throw std::invalid_argument("initial opinions must be finite");
  return simulate(g, OpinionVector(initial.begin(), initial.end()), cfg);
}

OpinionTrace simulate(const Graph& g, OpinionVector initial, const SimulationConfig& cfg) {
  if (initial.size() != g.vertex_count())
    throw std::invalid_argument("initial opinion vector size mismatch");
  for (Opinion v : initial)
    if (!std::isfinite(to_double(v))) throw std::invalid_argument("initial opinions must be finite");

  std::vector<OpinionVector> states;
  std::vector<InteractionSet> interactions;
  std::optional<std::size_t> stable_since;
  states.push_back(std::move(initial));

  std::size_t run = 0;
  for (std::size_t t = 0; t < cfg.max_steps(); ++t) {
    StepResult r = step(g, states.back(), t, cfg);
    run = (!interactions.empty() && r.active == interactions.back()) ? run + 1 : 1;
    interactions.push_back(std::move(r.active));
    states.push_back(std::move(r.next));
    if (cfg.confidence_bound(t) < cfg.stop_threshold() && run > cfg.stable_window()) {
      stable_since = interactions.size() - run;
      break;
    }
  }

  const std::size_t end = interactions.size();
  Graph final_graph = interaction_graph(g, interaction_set(g, states.back(), end, cfg));
  return {std::move(states), std::move(interactions), stable_since, std::move(final_graph)};
}

std::vector<double> sample_initial_opinions(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one agent");
  std::mt19937_64 engine(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return x;
}

namespace {

void require_stabilized(const OpinionTrace& trace) {
  if (!trace.stabilized()) throw ContractError("trace did not stabilize");
}

}  // namespace

double check_convergence_bound(const OpinionTrace& trace, const SimulationConfig& cfg) {
  require_stabilized(trace);
  const auto& limit = trace.final_opinions();
  const double scale = cfg.radius() / (1.0 - cfg.decay());
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trace.states.size(); ++t) {
    const double envelope = scale * std::pow(cfg.decay(), static_cast<double>(t));
    const auto& x = trace.states[t];
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, to_double(abs(x[i] - limit[i])) - envelope);
  }
  return worst;
}

std::vector<std::optional<double>> estimate_convergence_rate(const OpinionTrace& trace) {
  require_stabilized(trace);
  constexpr std::size_t kMinSamples = 10;
  const auto& limit = trace.final_opinions();
  double magnitude = 0.0;
  for (Opinion v : limit) magnitude = std::max(magnitude, std::abs(to_double(v)));
  if (magnitude == 0.0) magnitude = 1.0;
  const double floor = 1e3 * 2.0 * kOpinionRoundoff * magnitude;

  std::vector<std::optional<double>> rates(limit.size());
  for (std::size_t i = 0; i < limit.size(); ++i) {
    auto gap = [&](std::size_t t) { return to_double(abs(trace.states[t][i] - limit[i])); };
    // Last contiguous stretch of samples above the rounding floor.
    std::size_t last = trace.states.size();
    while (last > 0 && gap(last - 1) <= floor) --last;
    if (last == 0) continue;
    std::size_t first = last - 1;
    while (first > 0 && gap(first - 1) > floor) --first;
    // Fit the later half to skip the transient.
    const std::size_t begin = first + (last - first) / 2;
    if (last - begin < kMinSamples) continue;

    double st = 0, sy = 0, stt = 0, sty = 0;
    const double count = static_cast<double>(last - begin);
    for (std::size_t t = begin; t < last; ++t) {
      const double tt = static_cast<double>(t);
      const double y = std::log(gap(t));
      st += tt;
      sy += y;
      stt += tt * tt;
      sty += tt * y;
    }
    const double slope = (count * sty - st * sy) / (count * stt - st * st);
    rates[i] = std::exp(slope);
  }
  return rates;
}

std::string trace_csv(const OpinionTrace& trace, const Graph& g) {
  std::ostringstream out;
  out.precision(21);
  out << "t,agent,opinion\n";
  for (std::size_t t = 0; t < trace.states.size(); ++t)
    for (std::size_t i = 0; i < trace.states[t].size(); ++i)
      out << t << ',' << g.label(i) << ',' << static_cast<long double>(trace.states[t][i]) << '\n';
  return out.str();
}

std::string trace_summary_json(const OpinionTrace& trace) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["end_time"] = trace.end_time();
  j["stable_since"] = trace.stable_since ? nlohmann::ordered_json(*trace.stable_since) : nullptr;
  j["stabilized"] = trace.stabilized();
  j["final_interaction_edges"] = trace.final_graph.edge_count();
  return j.dump(2) + "\n";
}

}  // namespace opdyn

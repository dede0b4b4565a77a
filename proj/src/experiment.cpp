#include "opdyn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "opdyn/community.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/spectral.hpp"

namespace opdyn {

void ExperimentSpec::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  for (double t : stability_times)
    if (!(t >= 0.0)) throw std::invalid_argument("stability times must be non-negative");
  simulation_config();
}

SimulationConfig ExperimentSpec::simulation_config() const {
  return SimulationConfig(radius, rho(), alpha, weight_mode);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix(run));
}

Network load_network(const ExperimentSpec& spec) {
  if (!spec.fixture.empty()) return load_named_network(spec.fixture, spec.graph_path);
  if (spec.graph_path.empty()) throw std::invalid_argument("no graph given");
  return load_network_file(spec.graph_path);
}

std::vector<std::size_t> PartitionSummary::class_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& cls : partition.classes()) sizes.push_back(cls.size());
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

const PartitionSummary* ExperimentReport::modal() const {
  return partitions.empty() ? nullptr : &partitions.front();
}

namespace {

struct RunOutcome {
  std::optional<CommunityResult> community;
  std::size_t end_time = 0;
  double envelope_violation = -std::numeric_limits<double>::infinity();
  double mean_drift = 0.0;
  std::size_t fitted = 0;
  std::size_t exact = 0;
  std::size_t at_or_above_rho = 0;
  std::optional<double> max_rate;
};

double max_mean_drift(const OpinionTrace& trace) {
  auto mean = [](const OpinionVector& x) {
    Opinion s = 0;
    for (Opinion v : x) s += v;
    return s / static_cast<Opinion>(x.size());
  };
  const Opinion start = mean(trace.states.front());
  double worst = 0.0;
  for (const auto& x : trace.states) worst = std::max(worst, to_double(abs(mean(x) - start)));
  return worst;
}

RunOutcome simulate_run(const Graph& g, const ExperimentSpec& spec, const SimulationConfig& cfg,
                        std::size_t run) {
  RunOutcome out;
  OpinionTrace trace =
      simulate(g, sample_initial_opinions(g.vertex_count(), derive_seed(spec.seed, run)), cfg);
  out.end_time = trace.end_time();
  out.mean_drift = max_mean_drift(trace);
  if (!trace.stabilized()) return out;

  out.community = extract(g, trace, cfg, spec.delta);
  out.envelope_violation = check_convergence_bound(trace, cfg);
  for (const auto& rate : estimate_convergence_rate(trace)) {
    if (!rate) {
      ++out.exact;
      continue;
    }
    ++out.fitted;
    if (*rate >= cfg.decay()) ++out.at_or_above_rho;
    if (!out.max_rate || *rate > *out.max_rate) out.max_rate = rate;
  }
  return out;
}

std::vector<RunOutcome> simulate_all(const Graph& g, const ExperimentSpec& spec) {
  const SimulationConfig cfg = spec.simulation_config();
  std::vector<RunOutcome> outcomes(spec.runs);
  std::vector<std::exception_ptr> errors(spec.runs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t r = next++; r < spec.runs; r = next++) {
      try {
        outcomes[r] = simulate_run(g, spec, cfg, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.runs));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return outcomes;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(std::make_shared<const Network>(load_network(spec)), spec);
}

ExperimentReport run_experiment(std::shared_ptr<const Network> network, const ExperimentSpec& spec) {
  spec.validate();
  const Graph& g = network->graph;
  std::vector<RunOutcome> outcomes = simulate_all(g, spec);

  ExperimentReport report;
  report.network = std::move(network);
  report.spec = spec;
  report.max_envelope_violation = -std::numeric_limits<double>::infinity();

  std::map<std::string, PartitionSummary> by_key;
  std::size_t stabilized = 0;
  double end_time_sum = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const RunOutcome& o = outcomes[r];
    report.max_mean_drift = std::max(report.max_mean_drift, o.mean_drift);
    if (!o.community) {
      ++report.not_stabilized;
      continue;
    }
    const CommunityResult& c = *o.community;
    if (c.agreement && !c.problem1_satisfied) {
      std::ostringstream msg;
      msg << "run " << r << ": communities agree on both routes but a class has mu2 "
          << c.min_mu2().value_or(0.0) << " <= delta " << spec.delta << " (slowest fitted rate "
          << o.max_rate.value_or(0.0) << ", rho " << spec.rho()
          << "; a rate at or above rho means the run stopped before that class could split)";
      throw ContractError(msg.str());
    }

    report.min_end_time = stabilized ? std::min(report.min_end_time, o.end_time) : o.end_time;
    report.max_end_time = std::max(report.max_end_time, o.end_time);
    end_time_sum += static_cast<double>(o.end_time);
    ++stabilized;

    report.max_envelope_violation = std::max(report.max_envelope_violation, o.envelope_violation);
    report.agents_fitted += o.fitted;
    report.agents_exact += o.exact;
    report.agents_at_or_above_rho += o.at_or_above_rho;
    if (o.max_rate && (!report.max_fitted_rate || *o.max_rate > *report.max_fitted_rate))
      report.max_fitted_rate = o.max_rate;
    if (!c.agreement) report.disagreements.push_back({r, c.max_class_spread, c.min_class_gap});

    auto it = by_key.find(c.partition.canonical_key());
    if (it == by_key.end()) {
      PartitionSummary fresh{.partition = c.partition,
                             .occurrences = 0,
                             .agreements = 0,
                             .min_mu2 = c.min_mu2(),
                             .modularity = std::nullopt,
                             .problem1_satisfied = c.problem1_satisfied,
                             .stability = std::nullopt};
      it = by_key.emplace(c.partition.canonical_key(), std::move(fresh)).first;
    }
    ++it->second.occurrences;
    if (c.agreement) ++it->second.agreements;
  }
  if (stabilized) report.mean_end_time = end_time_sum / static_cast<double>(stabilized);

  for (auto& [key, summary] : by_key) {
    if (g.edge_count() > 0) summary.modularity = modularity(g, summary.partition);
    report.partitions.push_back(std::move(summary));
  }
  // by_key iterates in key order, so a stable sort on occurrences breaks ties by key.
  std::stable_sort(report.partitions.begin(), report.partitions.end(),
                   [](const auto& a, const auto& b) { return a.occurrences > b.occurrences; });

  if (!spec.stability_times.empty() && !report.partitions.empty()) {
    std::vector<Partition> parts;
    for (const auto& s : report.partitions) parts.push_back(s.partition);
    auto curves = stability(g, parts, spec.stability_times);
    for (std::size_t k = 0; k < curves.size(); ++k) report.partitions[k].stability = std::move(curves[k]);
  }
  return report;
}

std::vector<ExperimentReport> delta_sweep(const ExperimentSpec& spec, const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("delta sweep needs at least one delta");
  for (double d : deltas) {
    ExperimentSpec s = spec;
    s.delta = d;
    s.validate();
  }
  auto network = std::make_shared<const Network>(load_network(spec));
  std::vector<ExperimentReport> reports;
  for (double d : deltas) {
    ExperimentSpec s = spec;
    s.delta = d;
    reports.push_back(run_experiment(network, s));
  }
  return reports;
}

}  // namespace opdyn

#include "opdyn/community.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/spectral.hpp"

namespace opdyn {

std::string_view to_string(CommunitySource source) {
  return source == CommunitySource::interaction_graph ? "interaction_graph" : "opinion_clustering";
}

std::optional<double> CommunityResult::min_mu2() const {
  std::optional<double> best;
  for (const auto& m : mu2_per_class)
    if (m && (!best || *m < *best)) best = m;
  return best;
}

Partition communities_from_interaction_graph(const OpinionTrace& trace) {
  if (!trace.stabilized()) throw ContractError("trace did not stabilize");
  return connected_components(trace.final_graph);
}

double default_clustering_tolerance(const OpinionTrace& trace, const SimulationConfig& cfg) {
  return 2.0 * cfg.confidence_bound(trace.end_time()) / (1.0 - cfg.decay()) +
         1e3 * 2.0 * kOpinionRoundoff;
}

Partition communities_from_opinions(const OpinionTrace& trace, double tolerance) {
  if (!trace.stabilized()) throw ContractError("trace did not stabilize");
  const auto& x = trace.final_opinions();
  std::vector<Vertex> order(x.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return x[a] < x[b]; });

  std::vector<std::size_t> class_of(x.size(), 0);
  std::size_t current = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (x[order[k]] - x[order[k - 1]] > static_cast<Opinion>(tolerance)) ++current;
    class_of[order[k]] = current;
  }
  return Partition::from_labels(class_of);
}

CommunityResult extract(const Graph& g, const OpinionTrace& trace, const SimulationConfig& cfg,
                        double delta) {
  Partition partition = communities_from_interaction_graph(trace);
  Partition clustered = communities_from_opinions(trace, default_clustering_tolerance(trace, cfg));
  const auto& x = trace.final_opinions();

  CommunityResult result{partition, {}, CommunitySource::interaction_graph, partition == clustered,
                         {}, true, 0.0, std::numeric_limits<double>::infinity()};

  for (const auto& cls : partition.classes()) {
    Opinion lo = x[cls.front()], hi = lo, sum = 0;
    for (Vertex v : cls) {
      lo = std::min(lo, x[v]);
      hi = std::max(hi, x[v]);
      sum += x[v];
    }
    result.limit_opinions.push_back(to_double(sum / static_cast<Opinion>(cls.size())));
    result.max_class_spread = std::max(result.max_class_spread, to_double(hi - lo));

    if (cls.size() < 2) {
      result.mu2_per_class.emplace_back();
      continue;
    }
    const double m = mu2(induced_subgraph(g, cls).graph);
    result.mu2_per_class.emplace_back(m);
    if (!(m > delta)) result.problem1_satisfied = false;
  }

  std::vector<double> limits = result.limit_opinions;
  std::sort(limits.begin(), limits.end());
  for (std::size_t k = 1; k < limits.size(); ++k)
    result.min_class_gap = std::min(result.min_class_gap, limits[k] - limits[k - 1]);
  return result;
}

bool label_less(const std::string& a, const std::string& b) {
  auto as_int = [](const std::string& s) -> std::optional<long long> {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  auto ia = as_int(a), ib = as_int(b);
  if (ia && ib) return *ia < *ib || (*ia == *ib && a < b);
  if (ia != ib && (ia || ib)) return ia.has_value();
  return a < b;
}

std::string to_json(const CommunityResult& result, const Graph& g) {
  nlohmann::ordered_json j;
  auto classes = nlohmann::ordered_json::array();
  auto mu2s = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < result.partition.class_count(); ++c) {
    std::vector<std::string> labels;
    for (Vertex v : result.partition[c]) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end(), label_less);
    classes.push_back(labels);
    const auto& m = result.mu2_per_class.at(c);
    mu2s.push_back(m ? nlohmann::ordered_json(*m) : nlohmann::ordered_json(nullptr));
  }
  j["classes"] = std::move(classes);
  j["limit_opinions"] = result.limit_opinions;
  j["mu2"] = std::move(mu2s);
  const auto min = result.min_mu2();
  j["min_mu2"] = min ? nlohmann::ordered_json(*min) : nlohmann::ordered_json(nullptr);
  j["source"] = std::string(to_string(result.source));
  j["agreement"] = result.agreement;
  j["problem1_satisfied"] = result.problem1_satisfied;
  return j.dump(2) + "\n";
}

}  // namespace opdyn

#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "opdyn/community.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/fixtures.hpp"
#include "opdyn/spectral.hpp"
#include "oracles.hpp"

using namespace opdyn;

namespace {

/// A stabilized trace whose only state is `x`; enough for the clustering route.
OpinionTrace frozen(const Graph& g, std::initializer_list<double> x) {
  OpinionVector v;
  for (double xi : x) v.push_back(Opinion(xi));
  return OpinionTrace{.states = {v}, .interactions = {}, .stable_since = 0, .final_graph = g};
}

const Graph kPair(2, {{0, 1}});

}  // namespace

TEST_CASE("interaction-graph route on two agents") {
  SimulationConfig cfg(1.0, 0.98, 0.1);
  auto joined = simulate(kPair, std::vector<double>{0.0, 0.5}, cfg);
  CHECK(communities_from_interaction_graph(joined) == Partition::whole(2));
  auto apart = simulate(kPair, std::vector<double>{0.0, 2.0}, cfg);
  CHECK(communities_from_interaction_graph(apart) == Partition::singletons(2));

  cfg.set_max_steps(5);
  auto cut_short = simulate(kPair, std::vector<double>{0.0, 0.5}, cfg);
  CHECK_THROWS_AS(communities_from_interaction_graph(cut_short), ContractError);
  CHECK_THROWS_AS(communities_from_opinions(cut_short, 1e-6), ContractError);
}

TEST_CASE("opinion clustering route") {
  CHECK(communities_from_opinions(frozen(kPair, {0.25, 0.25}), 1e-6) == Partition::whole(2));
  CHECK(communities_from_opinions(frozen(kPair, {0.1, 0.9}), 1e-6) == Partition::singletons(2));
  Graph four(4, {});
  CHECK(communities_from_opinions(frozen(four, {0.3, 0.3, 0.3, 0.3}), 0) == Partition::whole(4));
  // single linkage chains through neighbours; a gap equal to the tolerance does not split
  CHECK(communities_from_opinions(frozen(four, {0.75, 0.25, 0.5, 1.5}), 0.25) ==
        Partition(4, {{0, 1, 2}, {3}}));
  CHECK(communities_from_opinions(frozen(four, {0.75, 0.25, 0.5, 1.5}), 0.2) == Partition::singletons(4));
}

TEST_CASE("extract on two agents") {
  const double delta = 0.4;
  SimulationConfig cfg(1.0, 1 - 0.1 * delta, 0.1);
  auto trace = simulate(kPair, std::vector<double>{0.0, 0.5}, cfg);
  CommunityResult r = extract(kPair, trace, cfg, delta);
  CHECK(r.partition == Partition::whole(2));
  REQUIRE(r.mu2_per_class.size() == 1);
  CHECK(r.mu2_per_class[0].value() == doctest::Approx(2.0));
  CHECK(r.problem1_satisfied);
  CHECK(r.agreement);
  CHECK(r.source == CommunitySource::interaction_graph);
  REQUIRE(r.limit_opinions.size() == 1);
  CHECK(r.limit_opinions[0] == doctest::Approx(0.25));
  CHECK(std::isinf(r.min_class_gap));

  auto j = nlohmann::json::parse(to_json(r, kPair));
  CHECK(j["classes"] == nlohmann::json::parse(R"([["0","1"]])"));
  CHECK(j["min_mu2"].get<double>() == doctest::Approx(2.0));
  CHECK(j["agreement"] == true);
}

TEST_CASE("extract on an edgeless graph") {
  Graph g(3, {});
  SimulationConfig cfg(1.0, 0.98, 0.1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto trace = simulate(g, sample_initial_opinions(3, seed), cfg);
    CommunityResult r = extract(g, trace, cfg, 0.7);
    CHECK(r.partition == Partition::singletons(3));
    CHECK(r.problem1_satisfied);
    CHECK_FALSE(r.min_mu2().has_value());
    CHECK(r.agreement);
  }
}

TEST_CASE("karate at delta 0.2 splits in two and satisfies the spectral condition") {
  Graph g = karate_club();
  const double delta = 0.2;
  SimulationConfig cfg(1.0, 1 - 0.1 * delta, 0.1);
  std::size_t agreements = 0;
  const std::size_t runs = 20;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    auto trace = simulate(g, sample_initial_opinions(34, seed), cfg);
    REQUIRE(trace.stabilized());
    CommunityResult r = extract(g, trace, cfg, delta);
    CHECK(r.partition.class_count() == 2);
    CHECK(r.min_mu2().value() == doctest::Approx(0.250).epsilon(0.005 / 0.25));
    if (r.agreement) {
      ++agreements;
      CHECK(r.problem1_satisfied);
    }
    for (const auto& cls : r.partition.classes()) CHECK(is_connected(induced_subgraph(g, cls).graph));
    CHECK(r.max_class_spread < default_clustering_tolerance(trace, cfg));
  }
  CHECK(agreements == runs);
}

// The spectral condition is only guaranteed when every agent converges
// faster than rho. When the routes agree on a class that fails it, the fitted
// rates must show agents converging no faster than rho.
TEST_CASE("problem1 flag matches the per-class spectra") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + trial % 9;
    Graph g = oracle::random_connected_graph(rng, n, 0.2);
    const double delta = 0.1 + 0.03 * trial;
    SimulationConfig cfg(0.6, 1 - 0.1 * delta, 0.1);
    auto trace = simulate(g, sample_initial_opinions(n, trial), cfg);
    CommunityResult r = extract(g, trace, cfg, delta);
    bool all_above = true;
    for (const auto& cls : r.partition.classes())
      if (cls.size() >= 2 && !(mu2(induced_subgraph(g, cls).graph) > delta)) all_above = false;
    CHECK(r.problem1_satisfied == all_above);
    if (r.agreement && !r.problem1_satisfied) {
      auto rates = estimate_convergence_rate(trace);
      for (std::size_t c = 0; c < r.partition.class_count(); ++c) {
        const auto& m = r.mu2_per_class[c];
        if (!m || *m > delta) continue;
        for (Vertex v : r.partition[c]) {
          REQUIRE(rates[v].has_value());
          CHECK(*rates[v] >= cfg.decay() - 1e-3);
        }
      }
    }
  }
}

TEST_CASE("labels sort numerically before text") {
  CHECK(label_less("2", "10"));
  CHECK_FALSE(label_less("10", "2"));
  CHECK(label_less("9", "a"));
  CHECK(label_less("abc", "abd"));
  CHECK_FALSE(label_less("x", "x"));
}

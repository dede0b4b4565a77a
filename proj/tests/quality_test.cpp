#include <cmath>
#include <random>

#include "doctest.h"
#include "opdyn/fixtures.hpp"
#include "opdyn/partition.hpp"
#include "opdyn/quality.hpp"
#include "oracles.hpp"

using namespace opdyn;

namespace {

double expected_at_zero(const Graph& g, const Partition& p) {
  const double total = 2.0 * g.edge_count();
  double r = 0;
  for (const auto& cls : p.classes()) {
    double mass = 0;
    for (Vertex v : cls) mass += g.degree(v) / total;
    r += mass * (1 - mass);
  }
  return r;
}

// Four-class split of the karate club found at the largest confidence decay.
Partition karate_four_classes() {
  std::vector<std::vector<Vertex>> classes{
      {0, 1, 2, 3, 7, 11, 12, 13, 17, 19, 21},
      {4, 5, 6, 10, 16},
      {8, 9, 14, 15, 18, 20, 22, 26, 29, 30, 32, 33},
      {23, 24, 25, 27, 28, 31},
  };
  return Partition(34, classes);
}

}  // namespace

TEST_CASE("modularity examples") {
  Graph two_k2(4, {{0, 1}, {2, 3}});
  CHECK(modularity(two_k2, Partition(4, {{0, 1}, {2, 3}})) == 0.5);
  CHECK(modularity(oracle::complete_graph(3), Partition::singletons(3)) == doctest::Approx(-1.0 / 3));

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_connected_graph(rng, 2 + trial, 0.3);
    CHECK(std::abs(modularity(g, Partition::whole(g.vertex_count()))) <= 1e-15);
    // singletons keep only the -d_i d_j diagonal terms
    double expected = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const double share = g.degree(v) / (2.0 * g.edge_count());
      expected -= share * share;
    }
    CHECK(modularity(g, Partition::singletons(g.vertex_count())) == doctest::Approx(expected));
  }

  CHECK_THROWS_AS(modularity(Graph(3, {}), Partition::whole(3)), std::invalid_argument);
  CHECK_THROWS_AS(modularity(two_k2, Partition::whole(3)), std::invalid_argument);
  // isolated vertices are allowed
  CHECK(modularity(Graph(3, {{0, 1}}), Partition(3, {{0, 1}, {2}})) == doctest::Approx(0.0));
}

TEST_CASE("modularity matches the double sum on every partition of every small connected graph") {
  std::size_t graphs = 0, partitions = 0;
  double worst = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const Graph& g : oracle::all_connected_graphs(n)) {
      ++graphs;
      oracle::for_each_set_partition(n, [&](const std::vector<std::vector<Vertex>>& classes) {
        ++partitions;
        worst = std::max(worst, std::abs(modularity(g, Partition(n, classes)) - oracle::modularity(g, classes)));
      });
    }
  }
  // labelled connected graphs on 2..5 vertices: 1 + 4 + 38 + 728
  CHECK(graphs == 771);
  CHECK(partitions == 1 * 2 + 4 * 5 + 38 * 15 + 728 * 52);
  CHECK(worst <= 1e-15);
}

TEST_CASE("karate four-class partition") {
  CHECK(modularity(karate_club(), karate_four_classes()) == doctest::Approx(0.417).epsilon(0.001 / 0.417));
}

TEST_CASE("stationary distribution") {
  auto k2 = stationary_distribution(oracle::complete_graph(2));
  CHECK(k2 == std::vector<double>{0.5, 0.5});
  auto p3 = stationary_distribution(oracle::path_graph(3));
  CHECK(p3 == std::vector<double>{0.25, 0.5, 0.25});
  Graph cycle(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  for (double p : stationary_distribution(cycle)) CHECK(p == doctest::Approx(0.2));
  CHECK_THROWS_AS(stationary_distribution(Graph(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("matrix exponential") {
  CHECK((matrix_exponential(Eigen::MatrixXd::Zero(3, 3)) - Eigen::MatrixXd::Identity(3, 3)).norm() == 0);
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -3, 3, 0;
  Eigen::MatrixXd want(2, 2);
  want << std::cos(3.0), -std::sin(3.0), std::sin(3.0), std::cos(3.0);
  CHECK((matrix_exponential(rot) - want).cwiseAbs().maxCoeff() <= 1e-13);
  Eigen::MatrixXd d = Eigen::Vector3d(-40, 0.5, 7).asDiagonal();
  Eigen::MatrixXd de = Eigen::Vector3d(std::exp(-40.0), std::exp(0.5), std::exp(7.0)).asDiagonal();
  CHECK(((matrix_exponential(d) - de).array().abs() / (de.array().abs() + 1e-300)).maxCoeff() <= 1e-12);
}

TEST_CASE("walk kernel is stochastic and matches an eigendecomposition") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = oracle::random_connected_graph(rng, 3 + 2 * trial, 0.2);
    for (double t : {0.0, 0.3, 2.0, 25.0}) {
      Eigen::MatrixXd k = walk_kernel(g, t);
      CHECK((k.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
      CHECK((k - oracle::walk_kernel_by_eigendecomposition(g, t)).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  CHECK_THROWS_AS(walk_kernel(oracle::path_graph(3), -1), std::invalid_argument);
  CHECK_THROWS_AS(walk_kernel(Graph(3, {{0, 1}}), 1), std::invalid_argument);
}

TEST_CASE("stability properties") {
  std::mt19937_64 rng(13);
  const std::vector<double> times{0, 1, 10};
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + 2 * trial;
    Graph g = oracle::random_connected_graph(rng, n, 0.15);
    for (double r : stability(g, Partition::whole(n), times).values) CHECK(std::abs(r) <= 1e-12);

    std::vector<std::size_t> label(n);
    for (std::size_t v = 0; v < n; ++v) label[v] = rng() % 3;
    Partition p = Partition::from_labels(label);
    auto curve = stability(g, p, {0, 100});
    CHECK(curve.times == std::vector<double>{0, 100});
    CHECK(curve.values[0] == doctest::Approx(expected_at_zero(g, p)).epsilon(1e-12));
    CHECK(std::abs(curve.values[1]) < 1e-3);
  }
  CHECK_THROWS_AS(stability(Graph(3, {{0, 1}}), Partition::whole(3), {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(stability(oracle::path_graph(3), Partition::whole(3), {-1.0}), std::invalid_argument);
}

TEST_CASE("batched stability agrees with single-partition calls") {
  Graph g = karate_club();
  std::vector<Partition> ps{Partition::whole(34), karate_four_classes(), Partition::singletons(34)};
  const std::vector<double> times{0, 0.5, 3, 50};
  auto batch = stability(g, ps, times);
  REQUIRE(batch.size() == ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    auto single = stability(g, ps[k], times);
    for (std::size_t i = 0; i < times.size(); ++i)
      CHECK(batch[k].values[i] == doctest::Approx(single.values[i]).epsilon(1e-12));
  }
  CHECK(batch[1].values[0] == doctest::Approx(expected_at_zero(g, ps[1])));
}

TEST_CASE("stability CSV") {
  StabilityCurve c{{0, 0.5}, {0.25, 0.125}};
  CHECK(to_csv(c).rfind("t,value\n", 0) == 0);
  CHECK(to_csv(c).find("0.5,0.125") != std::string::npos);
}

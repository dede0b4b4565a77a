#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "opdyn/graph.hpp"
#include "opdyn/partition.hpp"

namespace opdyn {

/// Newman modularity. With |E| counting ordered pairs (twice the edge count),
///   Q = 1/|E| * sum_I sum_{i,j in I} (a_ij - d_i d_j / |E|),
/// the i == j terms included. Throws std::invalid_argument for an edgeless graph
/// or a partition of a different vertex set.
double modularity(const Graph& g, const Partition& p);

/// pi_i = d_i / sum_j d_j. Throws std::invalid_argument on an isolated vertex.
std::vector<double> stationary_distribution(const Graph& g);

/// exp(m) by scaling and squaring: scale until ||m||_1 / 2^s <= 1/2, sum the
/// Taylor series to degree 20, square s times.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m);

/// Transition kernel exp(t (W - Id)) of the unit-rate continuous-time random
/// walk, W = D^-1 A.
Eigen::MatrixXd walk_kernel(const Graph& g, double t);

struct StabilityCurve {
  std::vector<double> times;
  std::vector<double> values;
};

/// R(P, t) = sum_I p(I,t) - pi(I)^2 with p(I,t) = sum_{i,j in I} pi_i K_t(i,j).
/// Throws std::invalid_argument on isolated vertices or negative times.
StabilityCurve stability(const Graph& g, const Partition& p, const std::vector<double>& times);

/// Same as stability() for several partitions, sharing each kernel.
/// Result k corresponds to partitions[k].
std::vector<StabilityCurve> stability(const Graph& g, const std::vector<Partition>& partitions,
                                      const std::vector<double>& times);

/// "t,value" CSV.
std::string to_csv(const StabilityCurve& curve);

}  // namespace opdyn

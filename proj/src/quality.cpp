#include "opdyn/quality.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opdyn {

double modularity(const Graph& g, const Partition& p) {
  if (g.edge_count() == 0) throw std::invalid_argument("modularity is undefined without edges");
  if (p.vertex_count() != g.vertex_count())
    throw std::invalid_argument("partition does not cover the graph's vertex set");

  const double ordered_pairs = 2.0 * static_cast<double>(g.edge_count());
  std::vector<double> internal(p.class_count(), 0.0);
  std::vector<double> degree_sum(p.class_count(), 0.0);
  for (const auto& e : g.edges())
    if (p.class_of(e.u) == p.class_of(e.v)) internal[p.class_of(e.u)] += 2.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    degree_sum[p.class_of(v)] += static_cast<double>(g.degree(v));

  double q = 0.0;
  for (std::size_t c = 0; c < p.class_count(); ++c)
    q += internal[c] - degree_sum[c] * degree_sum[c] / ordered_pairs;
  return q / ordered_pairs;
}

std::vector<double> stationary_distribution(const Graph& g) {
  std::vector<double> pi(g.vertex_count());
  const double total = 2.0 * static_cast<double>(g.edge_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0)
      throw std::invalid_argument("random walk undefined: vertex " + g.label(v) + " is isolated");
    pi[v] = static_cast<double>(g.degree(v)) / total;
  }
  return pi;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix exponential needs a square matrix");
  constexpr int kTaylorDegree = 20;
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd a = m / std::ldexp(1.0, squarings);

  const auto n = m.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= kTaylorDegree; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Eigen::MatrixXd walk_kernel(const Graph& g, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("stability time must be non-negative");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd generator = -Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nb = g.neighbors(i);
    if (nb.empty())
      throw std::invalid_argument("random walk undefined: vertex " + g.label(i) + " is isolated");
    for (Vertex j : nb) generator(i, static_cast<Eigen::Index>(j)) = 1.0 / static_cast<double>(nb.size());
  }
  return matrix_exponential(t * generator);
}

std::vector<StabilityCurve> stability(const Graph& g, const std::vector<Partition>& partitions,
                                      const std::vector<double>& times) {
  const std::vector<double> pi = stationary_distribution(g);
  for (const auto& p : partitions)
    if (p.vertex_count() != g.vertex_count())
      throw std::invalid_argument("partition does not cover the graph's vertex set");

  std::vector<StabilityCurve> curves(partitions.size());
  for (auto& c : curves) c.times = times;
  for (double t : times) {
    const Eigen::MatrixXd kernel = walk_kernel(g, t);
    for (std::size_t k = 0; k < partitions.size(); ++k) {
      double value = 0.0;
      for (const auto& cls : partitions[k].classes()) {
        double stay = 0.0, mass = 0.0;
        for (Vertex i : cls) {
          mass += pi[i];
          double row = 0.0;
          for (Vertex j : cls)
            row += kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          stay += pi[i] * row;
        }
        value += stay - mass * mass;
      }
      curves[k].values.push_back(value);
    }
  }
  return curves;
}

StabilityCurve stability(const Graph& g, const Partition& p, const std::vector<double>& times) {
  return stability(g, std::vector<Partition>{p}, times).front();
}

std::string to_csv(const StabilityCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "t,value\n";
  for (std::size_t k = 0; k < curve.times.size(); ++k)
    out << curve.times[k] << ',' << curve.values[k] << '\n';
  return out.str();
}

}  // namespace opdyn

#include "opdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "opdyn/errors.hpp"

namespace opdyn {

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (g.degree(i) != 0) lap(i, i) = 1.0;
  for (const auto& e : g.edges()) {
    const double w = -1.0 / std::sqrt(static_cast<double>(g.degree(e.u) * g.degree(e.v)));
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, v) = w;
    lap(v, u) = w;
  }
  return lap;
}

namespace {

// Householder reduction of the symmetric matrix `a` (lower triangle used,
// destroyed) to tridiagonal form: diagonal in `d`, sub-diagonal in e[1..n-1].
void tridiagonalize(Eigen::MatrixXd& a, std::vector<double>& d, std::vector<double>& e) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const Eigen::Index l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (Eigen::Index k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (Eigen::Index k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (Eigen::Index j = 0; j <= l; ++j) {
          g = 0.0;
          for (Eigen::Index k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (Eigen::Index k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (Eigen::Index j = 0; j <= l; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          for (Eigen::Index k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  e[0] = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) d[i] = a(i, i);
}

// Implicit QL on the tridiagonal (d, e); eigenvalues are left in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  constexpr int kMaxIterations = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > kMaxIterations)
        throw std::runtime_error("symmetric eigensolver failed to converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ContractError("eigenvalue input is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return {};
  const double tol = 1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw ContractError("eigenvalue input is not symmetric");

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  std::vector<double> d(n), e(n);
  tridiagonalize(a, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

double mu2(const Graph& g) {
  if (g.vertex_count() < 2) throw std::invalid_argument("mu2 needs at least two vertices");
  return symmetric_eigenvalues(normalized_laplacian(g))[1];
}

Eigen::MatrixXd update_matrix(const Graph& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0,1/2)");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nb = g.neighbors(i);
    if (nb.empty()) continue;
    const double share = alpha / static_cast<double>(nb.size());
    p(i, i) = 1.0 - alpha;
    for (Vertex j : nb) p(i, static_cast<Eigen::Index>(j)) = share;
  }
  return p;
}

double verify_eigen_correspondence(const Graph& g, double alpha) {
  std::vector<double> laplacian = symmetric_eigenvalues(normalized_laplacian(g));

  Eigen::EigenSolver<Eigen::MatrixXd> solver(update_matrix(g, alpha), false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("general eigensolver failed");
  const Eigen::VectorXcd lambdas = solver.eigenvalues();

  std::vector<double> mapped;
  double imaginary = 0.0;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    mapped.push_back((1.0 - lambdas[k].real()) / alpha);
    imaginary = std::max(imaginary, std::abs(lambdas[k].imag()) / alpha);
  }
  // Sorted pairing is the optimal matching for real multisets.
  std::sort(mapped.begin(), mapped.end());
  double worst = imaginary;
  for (std::size_t k = 0; k < mapped.size(); ++k)
    worst = std::max(worst, std::abs(mapped[k] - laplacian[k]));
  return worst;
}

bool lambda2_check(const Graph& g, double alpha, double rho) {
  if (g.vertex_count() < 2) throw std::invalid_argument("community check needs at least two vertices");
  if (!is_connected(g)) throw std::invalid_argument("community check needs a connected graph");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
  return 1.0 - alpha * mu2(g) < rho;
}

}  // namespace opdyn

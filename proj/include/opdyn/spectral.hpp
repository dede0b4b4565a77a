#pragma once

#include <vector>

#include <Eigen/Dense>

#include "opdyn/graph.hpp"

namespace opdyn {

/// Normalized Laplacian: 1 on the diagonal of non-isolated vertices,
/// -1/sqrt(d_i d_j) on edges, 0 elsewhere. Symmetric, spectrum in [0,2].
Eigen::MatrixXd normalized_laplacian(const Graph& g);

/// All eigenvalues of a symmetric matrix, ascending.
///
/// Householder reduction to tridiagonal form followed by implicit QL with
/// Wilkinson shifts; eigenvectors are not accumulated. Throws ContractError if
/// some |m_ij - m_ji| exceeds 1e-12 * (1 + max|m|).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// Second-smallest eigenvalue of the normalized Laplacian. Zero (to rounding)
/// iff g is disconnected. Throws std::invalid_argument for a single vertex.
double mu2(const Graph& g);

/// Opinion update matrix P = Id - alpha * Q, where Q has 1 on the diagonal of
/// non-isolated vertices and -1/d_i on edges. Row-stochastic, diagonal > 1/2.
Eigen::MatrixXd update_matrix(const Graph& g, double alpha);

/// Largest |(1 - lambda)/alpha - mu| after matching the eigenvalues lambda of
/// update_matrix(g, alpha) with the eigenvalues mu of the normalized Laplacian.
/// P goes through a general (non-symmetric) eigensolver, so this checks the two
/// spectra along independent routes. Imaginary parts count toward the mismatch.
double verify_eigen_correspondence(const Graph& g, double alpha);

/// Whether 1 - alpha * mu2(g) < rho, i.e. the second eigenvalue of the update
/// matrix restricted to g decays faster than the confidence bound.
/// Throws std::invalid_argument if g has fewer than 2 vertices or is disconnected.
bool lambda2_check(const Graph& g, double alpha, double rho);

}  // namespace opdyn

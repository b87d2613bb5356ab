#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gne {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Chebyshev coefficients alpha_0..alpha_K over t = lambda - 1 (maps the
// Laplacian spectrum [0,2] onto the canonical [-1,1] domain).
struct FilterSpec {
  std::vector<double> cheb;
};

struct NormalizedLaplacian {
  Matrix mat;
  Vector degrees;
};

// Eigendecomposition of a normalized population Laplacian. Columns of U are
// eigenvectors, lambda is ascending, degrees carries the node degrees the
// Laplacian was built from (needed by the frequency quadratic form).
struct GraphSpectrum {
  Matrix U;
  Vector lambda;
  Vector degrees;
};

// A_ij = max(0, cos(z_i, z_j)) with z_i = x_i - colmean(X); A_ii = 1.
// Rows closer than 1e-12 to the centroid become isolated (self-loop only).
Matrix cosine_adjacency(const Matrix& pop);

// I - D^{-1/2} A D^{-1/2}, with the degree vector alongside.
NormalizedLaplacian normalized_laplacian(const Matrix& adj);

// Symmetric eigendecomposition with a deterministic sign convention: the
// first component of each eigenvector with |u| > 1e-12 is made nonnegative.
GraphSpectrum eig_sym(const Matrix& L, const Vector& degrees);
GraphSpectrum eig_sym(const NormalizedLaplacian& lap);
GraphSpectrum eig_sym(const Matrix& L);  // unit degrees, for raw matrices

Matrix gft(const GraphSpectrum& s, const Matrix& X);
Matrix igft(const GraphSpectrum& s, const Matrix& Xt);

// Clenshaw evaluation of sum_k alpha_k T_k(lambda - 1); lambda must lie in
// [0, 2] up to 1e-9 slack.
double cheb_eval(const FilterSpec& f, double lambda);

// U g(Lambda) U^T X
Matrix apply_filter(const GraphSpectrum& s, const FilterSpec& f, const Matrix& X);

// 0.5 * sum_ij A_ij (U_ki/sqrt(d_i) - U_kj/sqrt(d_j))^2, the frequency
// interpretation of eigenvalue k; agrees with lambda_k by construction.
double eigenvalue_quadratic_form(const GraphSpectrum& s, const Matrix& adj, int k);

}  // namespace gne

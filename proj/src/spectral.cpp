#include "gnebench/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gne {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace

Matrix cosine_adjacency(const Matrix& pop) {
  require_finite(pop, "cosine_adjacency");
  const int n = static_cast<int>(pop.rows());
  if (n < 2) throw std::invalid_argument("cosine_adjacency: need at least 2 individuals");

  const Eigen::RowVectorXd centroid = pop.colwise().mean();
  Matrix z = pop.rowwise() - centroid;
  Vector norms(n);
  for (int i = 0; i < n; ++i) norms[i] = z.row(i).norm();

  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 1.0;
  for (int i = 0; i < n; ++i) {
    if (norms[i] < 1e-12) continue;  // centroid-coincident: isolated node
    for (int j = i + 1; j < n; ++j) {
      if (norms[j] < 1e-12) continue;
      double c = z.row(i).dot(z.row(j)) / (norms[i] * norms[j]);
      if (c < 0.0) c = 0.0;
      if (c > 1.0) c = 1.0;  // guard rounding above parallel
      a(i, j) = c;
      a(j, i) = c;  // mirrored assignment keeps symmetry exact
    }
  }
  return a;
}

NormalizedLaplacian normalized_laplacian(const Matrix& adj) {
  require_finite(adj, "normalized_laplacian");
  const int n = static_cast<int>(adj.rows());
  if (adj.cols() != n) throw std::invalid_argument("normalized_laplacian: not square");

  Vector deg = adj.rowwise().sum();
  for (int i = 0; i < n; ++i) {
    if (!(deg[i] > 0.0))
      throw std::runtime_error("normalized_laplacian: nonpositive degree (invariant violation)");
  }
  Vector inv_sqrt = deg.array().rsqrt();

  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double v = -adj(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
      if (i == j) v += 1.0;
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return {std::move(l), std::move(deg)};
}

GraphSpectrum eig_sym(const Matrix& L, const Vector& degrees) {
  require_finite(L, "eig_sym");
  const int n = static_cast<int>(L.rows());
  if (L.cols() != n) throw std::invalid_argument("eig_sym: not square");
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("eig_sym: input not symmetric within 1e-12");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(L);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_sym: eigensolver failed to converge");

  Matrix u = solver.eigenvectors();
  Vector lam = solver.eigenvalues();  // ascending by Eigen's contract

  // sign convention: first component with |u| > 1e-12 made nonnegative
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double v = u(i, k);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) u.col(k) = -u.col(k);
        break;
      }
    }
  }
  return {std::move(u), std::move(lam), degrees};
}

GraphSpectrum eig_sym(const NormalizedLaplacian& lap) {
  return eig_sym(lap.mat, lap.degrees);
}

GraphSpectrum eig_sym(const Matrix& L) {
  return eig_sym(L, Vector::Ones(L.rows()));
}

Matrix gft(const GraphSpectrum& s, const Matrix& X) {
  if (X.rows() != s.U.rows())
    throw std::invalid_argument("gft: dimension mismatch");
  return s.U.transpose() * X;
}

Matrix igft(const GraphSpectrum& s, const Matrix& Xt) {
  if (Xt.rows() != s.U.rows())
    throw std::invalid_argument("igft: dimension mismatch");
  return s.U * Xt;
}

double cheb_eval(const FilterSpec& f, double lambda) {
  if (f.cheb.empty()) throw std::invalid_argument("cheb_eval: empty coefficients");
  if (lambda < -1e-9 || lambda > 2.0 + 1e-9)
    throw std::invalid_argument("cheb_eval: lambda outside [0,2]");

  const double t = lambda - 1.0;
  double d1 = 0.0, d2 = 0.0;
  for (int k = static_cast<int>(f.cheb.size()) - 1; k >= 1; --k) {
    const double d = 2.0 * t * d1 - d2 + f.cheb[static_cast<size_t>(k)];
    d2 = d1;
    d1 = d;
  }
  return t * d1 - d2 + f.cheb[0];
}

Matrix apply_filter(const GraphSpectrum& s, const FilterSpec& f, const Matrix& X) {
  if (X.rows() != s.U.rows())
    throw std::invalid_argument("apply_filter: dimension mismatch");
  const int n = static_cast<int>(s.lambda.size());
  Vector g(n);
  for (int k = 0; k < n; ++k) {
    // eigenvalues can stick out of [0,2] by solver roundoff; clamp for g only
    double lam = s.lambda[k];
    if (lam < 0.0) lam = 0.0;
    if (lam > 2.0) lam = 2.0;
    g[k] = cheb_eval(f, lam);
  }
  Matrix out = s.U * (g.asDiagonal() * (s.U.transpose() * X));
  if (!out.allFinite())
    throw std::runtime_error("apply_filter: non-finite output (filter blow-up)");
  return out;
}

double eigenvalue_quadratic_form(const GraphSpectrum& s, const Matrix& adj, int k) {
  const int n = static_cast<int>(adj.rows());
  if (k < 0 || k >= static_cast<int>(s.U.cols()))
    throw std::out_of_range("eigenvalue_quadratic_form: index out of range");

  Vector scaled(n);
  for (int i = 0; i < n; ++i) scaled[i] = s.U(i, k) / std::sqrt(s.degrees[i]);

  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double diff = scaled[i] - scaled[j];
      acc += adj(i, j) * diff * diff;
    }
  return 0.5 * acc;
}

}  // namespace gne

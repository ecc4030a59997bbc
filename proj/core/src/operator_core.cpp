#include "nonfloquet/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

namespace {

constexpr int kTaylorOrder = 18;
constexpr double kScaledNormBound = 0.5;
// 2^-60, below double rounding of an O(1) accumulator.
constexpr double kTruncationTarget = 8.673617379884035e-19;
constexpr int kMaxActionTerms = 40;

int action_terms(double theta) {
  if (theta == 0.0) return 0;
  double bound = theta;
  for (int m = 1; m <= kMaxActionTerms; ++m) {
    bound *= theta / static_cast<double>(m + 1);
    if (bound <= kTruncationTarget) return m;
  }
  return kMaxActionTerms;
}

template <typename Generator>
void taylor_action(const Generator& g, Complex coef, int terms, ComplexMatrix& x) {
  ComplexMatrix term = x;
  for (int k = 1; k <= terms; ++k) {
    term = (coef / static_cast<double>(k)) * (g * term);
    x += term;
  }
}

}  // namespace

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  if (!a.allFinite()) {
    throw InvalidInputError(std::string(what) + ": matrix has non-finite entries");
  }
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermiticity_defect: matrix is not square");
  return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

bool is_hermitian(const ComplexMatrix& a, double tol) { return hermiticity_defect(a) < tol; }

double norm_one(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

double norm_two(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix expm(const ComplexMatrix& a, double dt) {
  require_square_finite(a, "expm");
  if (!std::isfinite(dt)) throw InvalidInputError("expm: non-finite time step");
  const auto n = a.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  ComplexMatrix b = (-kI * dt) * a;
  const double norm = norm_one(b);
  int squarings = 0;
  if (norm > kScaledNormBound) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormBound)));
    b /= std::ldexp(1.0, squarings);
  }
  ComplexMatrix e = identity;
  for (int k = kTaylorOrder; k >= 1; --k) {
    e = identity + (b * e) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e;
}

void expm_apply(const ComplexMatrix& a, double dt, ComplexMatrix& x) {
  require_square_finite(a, "expm_apply");
  if (a.cols() != x.rows()) throw DimensionError("expm_apply: operand row count mismatch");
  const double total = norm_one(a) * std::abs(dt);
  if (total == 0.0) return;
  const int substeps = std::max(1, static_cast<int>(std::ceil(total / kScaledNormBound)));
  const int terms = action_terms(total / substeps);
  const Complex coef = -kI * (dt / substeps);

  const auto n = a.rows();
  const auto nonzeros = (a.array() != Complex(0.0)).count();
  if (n >= 16 && nonzeros * 4 <= n * n) {
    const Eigen::SparseMatrix<Complex> sparse = a.sparseView();
    for (int s = 0; s < substeps; ++s) taylor_action(sparse, coef, terms, x);
  } else {
    for (int s = 0; s < substeps; ++s) taylor_action(a, coef, terms, x);
  }
}

Eigen::VectorXd balance_scaling(const ComplexMatrix& a) {
  const auto n = a.rows();
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  if (n < 2) return scale;
  ComplexMatrix b = a;
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  bool converged = false;
  for (int sweep = 0; sweep < 1000 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        scale(i) *= f;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return scale;
}

SpectralDecomposition eig(const ComplexMatrix& a) {
  require_square_finite(a, "eig");
  const auto n = a.rows();
  SpectralDecomposition out;
  if (n == 0) return out;

  const Eigen::VectorXd d = balance_scaling(a);
  ComplexMatrix b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) b(i, j) = a(i, j) * (d(j) / d(i));
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(100 * n);
  solver.compute(b, true);
  if (solver.info() != Eigen::Success) {
    const double cond = std::max(1.0, d.maxCoeff() / d.minCoeff());
    throw ConvergenceError("eig: shifted QR did not converge within 100*dim sweeps", cond);
  }

  ComplexMatrix vectors = d.cast<Complex>().asDiagonal() * solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double norm = vectors.col(k).norm();
    if (norm > 0.0) vectors.col(k) /= norm;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const ComplexVector& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (values(x).real() != values(y).real()) return values(x).real() < values(y).real();
    return values(x).imag() < values(y).imag();
  });

  out.eigenvalues.resize(n);
  out.right_eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
    out.right_eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }

  Eigen::BDCSVD<ComplexMatrix> svd(out.right_eigenvectors);
  const auto& sv = svd.singularValues();
  const double smallest = sv(n - 1);
  out.condition_estimate = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  return out;
}

double max_eig_residual(const ComplexMatrix& a, const SpectralDecomposition& d) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    const ComplexVector v = d.right_eigenvectors.col(k);
    worst = std::max(worst, (a * v - d.eigenvalues(k) * v).norm());
  }
  return worst;
}

double fold_to_zone(double value, double period, double center) {
  const double width = kTwoPi / period;
  double x = value - center;
  x -= width * std::ceil(x / width - 0.5);
  return x + center;
}

double zone_difference(double a, double b, double period) { return fold_to_zone(a - b, period, 0.0); }

FloquetSpectrum quasienergies(const SpectralDecomposition& decomposition, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidInputError("quasienergies: period must be positive and finite");
  }
  const auto n = decomposition.eigenvalues.size();
  ComplexVector eps(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = decomposition.eigenvalues(k);
    if (std::abs(lambda) < Tolerances{}.singular_eigenvalue) {
      throw SingularPropagatorError("quasienergies: propagator has a zero eigenvalue");
    }
    const Complex e = (kI / period) * std::log(lambda);
    eps(k) = Complex(fold_to_zone(e.real(), period), e.imag());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (eps(x).real() != eps(y).real()) return eps(x).real() < eps(y).real();
    return eps(x).imag() < eps(y).imag();
  });

  FloquetSpectrum out;
  out.period = period;
  out.condition_estimate = decomposition.condition_estimate;
  out.quasienergies.resize(n);
  out.states.resize(decomposition.right_eigenvectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.quasienergies(k) = eps(src);
    out.states.col(k) = decomposition.right_eigenvectors.col(src);
  }
  return out;
}

FloquetSpectrum quasienergies(const ComplexMatrix& u, double period) {
  if (!(period > 0.0)) throw InvalidInputError("quasienergies: period must be positive");
  return quasienergies(eig(u), period);
}

}  // namespace nonfloquet

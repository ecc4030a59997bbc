#include "nonfloquet/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/LU>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

Complex SiteGenerator::value(double t, double omega, double phase) const {
  Complex out = constant + linear * t;
  const double theta = omega * t + phase;
  for (std::size_t h = 0; h < cos_coeffs.size(); ++h) out += cos_coeffs[h] * std::cos((h + 1.0) * theta);
  for (std::size_t h = 0; h < sin_coeffs.size(); ++h) out += sin_coeffs[h] * std::sin((h + 1.0) * theta);
  return out;
}

Complex SiteGenerator::derivative(double t, double omega, double phase) const {
  Complex out = linear;
  const double theta = omega * t + phase;
  for (std::size_t h = 0; h < cos_coeffs.size(); ++h) {
    out -= cos_coeffs[h] * ((h + 1.0) * omega * std::sin((h + 1.0) * theta));
  }
  for (std::size_t h = 0; h < sin_coeffs.size(); ++h) {
    out += sin_coeffs[h] * ((h + 1.0) * omega * std::cos((h + 1.0) * theta));
  }
  return out;
}

ComplexVector DeformationSpec::gamma(double t) const {
  ComplexVector out(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) out(static_cast<Eigen::Index>(i)) = sites[i].value(t, omega, phase);
  return out;
}

ComplexVector DeformationSpec::gamma_dot(double t) const {
  ComplexVector out(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = sites[i].derivative(t, omega, phase);
  }
  return out;
}

DeformationSpec DeformationSpec::inverse() const {
  DeformationSpec out = *this;
  for (auto& s : out.sites) {
    s.constant = -s.constant;
    s.linear = -s.linear;
    for (auto& c : s.cos_coeffs) c = -c;
    for (auto& c : s.sin_coeffs) c = -c;
  }
  return out;
}

DeformationSpec DeformationSpec::catalog_chain(std::size_t cells, double beta, const DriveSpec& drive) {
  drive.validate();
  DeformationSpec out;
  out.omega = drive.omega;
  out.phase = drive.phase;
  // iθ/2 with θ = ωt + φ splits into a linear term and a constant.
  const Complex half_phase = kI * (drive.phase / 2.0);
  const Complex half_rate = kI * (drive.omega / 2.0);
  for (std::size_t j = 1; j <= cells; ++j) {
    SiteGenerator a;
    a.constant = beta * static_cast<double>(j - 1) + half_phase;
    a.linear = half_rate;
    a.cos_coeffs = {Complex(-1.0)};
    SiteGenerator b;
    b.constant = beta * static_cast<double>(j) - half_phase;
    b.linear = -half_rate;
    b.cos_coeffs = {Complex(1.0)};
    out.sites.push_back(a);
    out.sites.push_back(b);
  }
  return out;
}

DeformationSpec DeformationSpec::catalog_temporal(std::size_t cells, const DriveSpec& drive) {
  return catalog_chain(cells, 0.0, drive);
}

namespace {

class DeformedModel final : public Model {
 public:
  DeformedModel(ModelPtr base, DeformationSpec gamma) : base_(std::move(base)), gamma_(std::move(gamma)) {
    const double period = base_->period();
    for (std::size_t i = 0; i < gamma_.sites.size() && periodic_; ++i) {
      for (std::size_t j = i + 1; j < gamma_.sites.size(); ++j) {
        const Complex drift = std::exp((gamma_.sites[i].linear - gamma_.sites[j].linear) * period);
        if (std::abs(drift - 1.0) > 1e-10) {
          periodic_ = false;
          break;
        }
      }
    }
  }

  std::size_t dimension() const override { return base_->dimension(); }
  double omega() const override { return base_->omega(); }
  std::string name() const override { return base_->name() + "/deformed"; }
  bool periodic() const override { return periodic_ && base_->periodic(); }
  std::vector<double> breakpoints() const override { return base_->breakpoints(); }

  ComplexMatrix sample(double t) const override {
    const ComplexVector g = gamma_.gamma(t);
    const ComplexVector up = g.array().exp();
    const ComplexVector down = (-g.array()).exp();
    ComplexMatrix h = up.asDiagonal() * base_->sample(t) * down.asDiagonal();
    h.diagonal() += kI * gamma_.gamma_dot(t);
    return h;
  }

 private:
  ModelPtr base_;
  DeformationSpec gamma_;
  bool periodic_ = true;
};

}  // namespace

ModelPtr transform_model(ModelPtr model, const DeformationSpec& gamma) {
  if (!model) throw InvalidInputError("transform_model: no model");
  if (gamma.dimension() != model->dimension()) {
    throw DimensionError("transform_model: generator dimension does not match the model");
  }
  return std::make_shared<DeformedModel>(std::move(model), gamma);
}

PseudoHermResidual pseudo_hermiticity_residual(const Model& model, const DeformationSpec& gamma,
                                               const std::vector<double>& times) {
  if (gamma.dimension() != model.dimension()) {
    throw DimensionError("pseudo_hermiticity_residual: generator dimension does not match the model");
  }
  PseudoHermResidual out;
  out.sampled_times = times;
  out.residual_norm = 0.0;
  bool first = true;
  for (double t : times) {
    const ComplexMatrix h = model.sample(t);
    const ComplexVector g = gamma.gamma(t);
    const Eigen::VectorXd weight = (2.0 * g.real().array()).exp();  // |e^γ|²
    const double cond = weight.maxCoeff() / weight.minCoeff();
    if (!(cond <= 1e12)) {
      throw IllConditionedError("pseudo_hermiticity_residual: theta1 condition exceeds 1e12");
    }
    const ComplexMatrix theta1 = weight.cast<Complex>().asDiagonal();
    const ComplexMatrix theta2 = gamma.gamma_dot(t).asDiagonal();
    const ComplexMatrix theta1_inv = weight.cwiseInverse().cast<Complex>().asDiagonal();
    const ComplexMatrix lhs = h.adjoint() - theta1 * h * theta1_inv;
    const ComplexMatrix rhs = kI * (theta2.adjoint() + theta1 * theta2 * theta1_inv);
    const double r = (lhs - rhs).norm() / std::max(1.0, h.norm());
    if (first || r > out.residual_norm) {
      out.residual_norm = r;
      out.theta1 = theta1;
      out.theta2 = theta2;
      first = false;
    }
  }
  return out;
}

ComplexVector generalized_shift(const DeformationSpec& gamma, double period) {
  if (!(period > 0.0)) throw InvalidInputError("generalized_shift: period must be positive");
  return (kI / period) * (gamma.gamma(period) - gamma.gamma(0.0));
}

double spectra_shift_check(const ComplexVector& eps_a, const ComplexVector& eps_b, Complex shift, double period) {
  if (eps_a.size() != eps_b.size()) throw DimensionError("spectra_shift_check: spectra differ in size");
  ComplexVector moved(eps_b.size());
  for (Eigen::Index i = 0; i < eps_b.size(); ++i) {
    const Complex e = eps_b(i) + shift;
    moved(i) = Complex(fold_to_zone(e.real(), period), e.imag());
  }
  return spectrum_distance(eps_a, moved, period);
}

double spectra_shift_check(const Model& a, const Model& b, Complex shift, std::size_t slices) {
  if (a.dimension() != b.dimension()) throw DimensionError("spectra_shift_check: models differ in dimension");
  if (std::abs(a.period() - b.period()) > 1e-12 * a.period()) {
    throw InvalidInputError("spectra_shift_check: models differ in period");
  }
  const auto sa = floquet_spectrum(a, 0.0, slices, false);
  const auto sb = floquet_spectrum(b, 0.0, slices, false);
  return spectra_shift_check(sa.quasienergies, sb.quasienergies, shift, a.period());
}

namespace {

ComplexMatrix checked_inverse(const ComplexMatrix& u, const char* what) {
  Eigen::FullPivLU<ComplexMatrix> lu(u);
  if (!lu.isInvertible()) throw SingularPropagatorError(std::string(what) + ": propagator is singular");
  return lu.inverse();
}

}  // namespace

double pt_check(const ComplexMatrix& u, const ComplexMatrix& p) {
  return pt_check(u, u, p);
}

double pt_check(const ComplexMatrix& u_k, const ComplexMatrix& u_minus_k, const ComplexMatrix& p) {
  require_square_finite(u_k, "pt_check");
  require_square_finite(p, "pt_check");
  if (u_k.rows() != p.rows() || u_minus_k.rows() != u_k.rows()) throw DimensionError("pt_check: size mismatch");
  const ComplexMatrix p_inv = checked_inverse(p, "pt_check");
  const ComplexMatrix lhs = p * u_k.conjugate() * p_inv;
  return (lhs - checked_inverse(u_minus_k, "pt_check")).norm() / u_k.norm();
}

ComplexMatrix sublattice_swap(std::size_t cells) {
  const auto n = static_cast<Eigen::Index>(2 * cells);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; j += 2) {
    p(j, j + 1) = 1.0;
    p(j + 1, j) = 1.0;
  }
  return p;
}

}  // namespace nonfloquet

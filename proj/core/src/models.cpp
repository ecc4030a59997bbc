#include "nonfloquet/models.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <utility>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Couplings of one unit cell at one instant, in the notation of the chain
// Hamiltonian: f₁ a†b, f₂ b†a, g₁ b_j†a_{j+1}, g₂ a_{j+1}†b_j,
// p₁ a_j†a_{j+1}, p₂ a_{j+1}†a_j (opposite sign on b), −μ on a, +μ on b.
struct CellCouplings {
  Complex f1, f2, g1, g2, p1, p2, mu;
};

CellCouplings chain_couplings(const BipartiteChainSpec& spec, double omega, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex forward = std::exp(Complex(2.0 * c, -theta));   // e^{−iθ + 2cos θ}
  const Complex backward = std::exp(Complex(-2.0 * c, theta));  // e^{iθ − 2cos θ}
  CellCouplings out{};
  switch (spec.variant) {
    case ChainVariant::non_hermitian:
      out.f1 = -spec.r1 * forward;
      out.f2 = -spec.r2 * backward;
      out.g1 = spec.v * backward;
      out.g2 = spec.v * forward;
      out.p1 = spec.q1 * s;
      out.p2 = spec.q2 * s;
      out.mu = Complex(spec.mu0, omega) * s - omega / 2.0;
      break;
    case ChainVariant::hermitian_counterpart:
      out.f1 = -spec.t1;
      out.f2 = -spec.t1;
      out.g1 = -spec.t2;
      out.g2 = -spec.t2;
      out.p1 = spec.p * s;
      out.p2 = spec.p * s;
      out.mu = spec.mu0 * s;
      break;
    case ChainVariant::temporal_only_deformed:
      out.f1 = -spec.t1 * forward;
      out.f2 = -spec.t1 * backward;
      out.g1 = -spec.t2 * backward;
      out.g2 = -spec.t2 * forward;
      out.p1 = spec.p * s;
      out.p2 = spec.p * s;
      out.mu = Complex(spec.mu0, omega) * s - omega / 2.0;
      break;
    default:
      throw ConfigError("bipartite chain: unknown variant");
  }
  return out;
}

class BipartiteChainModel final : public Model {
 public:
  BipartiteChainModel(BipartiteChainSpec spec, DriveSpec drive) : spec_(std::move(spec)), drive_(drive) {
    spec_.validate();
    drive_.validate();
  }

  std::size_t dimension() const override { return spec_.dimension(); }
  double omega() const override { return drive_.omega; }
  std::string name() const override { return "bipartite_chain/" + to_string(spec_.variant); }

  ComplexMatrix sample(double t) const override {
    const CellCouplings c = chain_couplings(spec_, drive_.omega, drive_.omega * t + drive_.phase);
    if (spec_.momentum) {
      const Complex ek = std::exp(Complex(0.0, *spec_.momentum));
      const Complex emk = std::conj(ek);
      ComplexMatrix h(2, 2);
      h(0, 0) = -c.mu + c.p1 * ek + c.p2 * emk;
      h(0, 1) = c.f1 + c.g2 * emk;
      h(1, 0) = c.f2 + c.g1 * ek;
      h(1, 1) = c.mu - c.p1 * ek - c.p2 * emk;
      return h;
    }
    const auto cells = static_cast<Eigen::Index>(spec_.cells);
    ComplexMatrix h = ComplexMatrix::Zero(2 * cells, 2 * cells);
    for (Eigen::Index j = 0; j < cells; ++j) {
      const Eigen::Index a = 2 * j;
      const Eigen::Index b = a + 1;
      h(a, b) += c.f1;
      h(b, a) += c.f2;
      h(a, a) += -c.mu;
      h(b, b) += c.mu;
      const bool last = j + 1 == cells;
      if (last && spec_.boundary == Boundary::open) continue;
      const Eigen::Index an = last ? 0 : a + 2;
      const Eigen::Index bn = an + 1;
      h(b, an) += c.g1;
      h(an, b) += c.g2;
      h(a, an) += c.p1;
      h(an, a) += c.p2;
      h(b, bn) += -c.p1;
      h(bn, b) += -c.p2;
    }
    return h;
  }

 private:
  BipartiteChainSpec spec_;
  DriveSpec drive_;
};

class StepQuenchModel final : public Model {
 public:
  StepQuenchModel(StepQuenchSpec spec, double phase) : spec_(std::move(spec)), phase_(phase) {
    spec_.validate();
    period_ = spec_.period();
    double acc = 0.0;
    for (const auto& step : spec_.steps) {
      starts_.push_back(acc);
      acc += step.duration;
    }
  }

  std::size_t dimension() const override { return 2; }
  double omega() const override { return kTwoPi / period_; }
  std::string name() const override { return "step_quench"; }

  std::vector<double> breakpoints() const override {
    // Shifted by the phase offset so they fall where the sampler jumps.
    std::vector<double> out;
    const double shift = phase_ / omega();
    for (double s : starts_) {
      double b = std::fmod(s - shift, period_);
      if (b < 0.0) b += period_;
      out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  ComplexMatrix sample(double t) const override {
    double local = std::fmod(t + phase_ / omega(), period_);
    if (local < 0.0) local += period_;
    std::size_t index = spec_.steps.size() - 1;
    for (std::size_t n = 0; n < spec_.steps.size(); ++n) {
      if (local < starts_[n] + spec_.steps[n].duration) {
        index = n;
        break;
      }
    }
    const QuenchStep& step = spec_.steps[index];
    const double phase = step.bond[0] * spec_.k[0] + step.bond[1] * spec_.k[1];
    const Complex e = std::exp(Complex(0.0, phase));
    const double ls = 2.0 * spec_.ladder_scale;  // σ⁺ = ls·|0⟩⟨1|
    ComplexMatrix h(2, 2);
    h(0, 0) = spec_.gamma_z;
    h(1, 1) = -spec_.gamma_z;
    h(0, 1) = -ls * step.j1 * e;
    h(1, 0) = -ls * step.j2 * std::conj(e);
    return h;
  }

 private:
  StepQuenchSpec spec_;
  double phase_;
  double period_ = 1.0;
  std::vector<double> starts_;
};

class StaticModel final : public Model {
 public:
  StaticModel(ComplexMatrix h, double omega, std::string name)
      : h_(std::move(h)), omega_(omega), name_(std::move(name)) {
    require_square_finite(h_, "static model");
    if (!(omega_ > 0.0)) throw ConfigError("static model: omega must be positive");
  }
  std::size_t dimension() const override { return static_cast<std::size_t>(h_.rows()); }
  double omega() const override { return omega_; }
  std::string name() const override { return name_; }
  ComplexMatrix sample(double) const override { return h_; }

 private:
  ComplexMatrix h_;
  double omega_;
  std::string name_;
};

class FunctionModel final : public Model {
 public:
  FunctionModel(std::size_t dim, double omega, std::function<ComplexMatrix(double)> fn, std::string name)
      : dim_(dim), omega_(omega), fn_(std::move(fn)), name_(std::move(name)) {
    if (!(omega_ > 0.0)) throw ConfigError("function model: omega must be positive");
    if (!fn_) throw ConfigError("function model: empty sampler");
  }
  std::size_t dimension() const override { return dim_; }
  double omega() const override { return omega_; }
  std::string name() const override { return name_; }
  ComplexMatrix sample(double t) const override {
    ComplexMatrix h = fn_(t);
    if (static_cast<std::size_t>(h.rows()) != dim_ || h.rows() != h.cols()) {
      throw DimensionError("function model: sampler returned wrong shape");
    }
    return h;
  }

 private:
  std::size_t dim_;
  double omega_;
  std::function<ComplexMatrix(double)> fn_;
  std::string name_;
};

}  // namespace

void DriveSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("drive: omega must be positive and finite");
  if (!std::isfinite(phase)) throw ConfigError("drive: phase must be finite");
}

void BipartiteChainSpec::validate() const {
  if (cells < 1) throw ConfigError("bipartite chain: need at least one cell");
  if (momentum && !std::isfinite(*momentum)) throw ConfigError("bipartite chain: momentum must be finite");
  for (double x : {r1, r2, v, q1, q2, t1, t2, p, mu0}) {
    if (!std::isfinite(x)) throw ConfigError("bipartite chain: non-finite parameter");
  }
  switch (variant) {
    case ChainVariant::non_hermitian:
    case ChainVariant::hermitian_counterpart:
    case ChainVariant::temporal_only_deformed:
      break;
    default:
      throw ConfigError("bipartite chain: unknown variant");
  }
}

double StepQuenchSpec::period() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.duration;
  return total;
}

void StepQuenchSpec::validate() const {
  if (steps.empty()) throw ConfigError("step quench: no steps");
  for (const auto& s : steps) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw ConfigError("step quench: step durations must be positive");
    }
  }
  if (!(ladder_scale > 0.0)) throw ConfigError("step quench: ladder_scale must be positive");
}

StepQuenchSpec StepQuenchSpec::seven_step(double coupling, double period) {
  StepQuenchSpec spec;
  for (int n = 1; n <= 7; ++n) {
    const double angle = kTwoPi * n / 7.0;
    spec.steps.push_back({period / 7.0, Complex(coupling), Complex(coupling), {std::cos(angle), std::sin(angle)}});
  }
  return spec;
}

void StarkChainSpec::validate() const {
  if (sites < 2) throw ConfigError("stark chain: need at least two sites");
  if (!(t_left > 0.0) || !(t_right > 0.0)) throw ConfigError("stark chain: hoppings must be positive");
  if (!std::isfinite(field)) throw ConfigError("stark chain: field must be finite");
}

ModelPtr make_bipartite_chain(const BipartiteChainSpec& spec, const DriveSpec& drive) {
  return std::make_shared<BipartiteChainModel>(spec, drive);
}

ModelPtr make_step_quench(const StepQuenchSpec& spec, double phase) {
  return std::make_shared<StepQuenchModel>(spec, phase);
}

ModelPtr make_static_model(ComplexMatrix h, double omega, std::string name) {
  return std::make_shared<StaticModel>(std::move(h), omega, std::move(name));
}

ModelPtr make_function_model(std::size_t dimension, double omega, std::function<ComplexMatrix(double)> sampler,
                             std::string name) {
  return std::make_shared<FunctionModel>(dimension, omega, std::move(sampler), std::move(name));
}

ModelPtr build_model(const ModelSpec& spec) {
  return std::visit(
      [&](const auto& body) -> ModelPtr {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BipartiteChainSpec>) {
          return make_bipartite_chain(body, spec.drive);
        } else if constexpr (std::is_same_v<T, StepQuenchSpec>) {
          return make_step_quench(body, spec.drive.phase);
        } else {
          body.validate();
          return make_static_model(stark_chain_hamiltonian(body), spec.drive.omega, "stark_chain");
        }
      },
      spec.body);
}

ComplexMatrix sample_hamiltonian(const Model& model, double t) {
  if (!std::isfinite(t)) throw InvalidInputError("sample_hamiltonian: non-finite time");
  return model.sample(t);
}

ComplexMatrix stark_chain_hamiltonian(const StarkChainSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.sites);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    h(l, l) = spec.field * static_cast<double>(l + 1);
    if (l + 1 < n) {
      h(l, l + 1) = spec.t_left;
      h(l + 1, l) = spec.t_right;
    }
  }
  return h;
}

CounterpartParams hermitian_counterpart_params(double r1, double r2, double v, double q1, double q2) {
  if (!(r1 * r2 > 0.0)) {
    throw UnsupportedParametersError("counterpart: r1 and r2 must be nonzero with equal sign");
  }
  const bool q_zero = q1 == 0.0 && q2 == 0.0;
  if (!q_zero && !(q1 * q2 > 0.0)) {
    throw UnsupportedParametersError("counterpart: q1 and q2 differ in sign, gauge undefined");
  }
  CounterpartParams out;
  out.t1 = sign_of(r1) * std::sqrt(r1 * r2);
  out.t2 = -v;
  out.p = q_zero ? 0.0 : sign_of(q1) * std::sqrt(q1 * q2);
  out.beta = 0.5 * std::log(r1 / r2);
  if (!q_zero) {
    const double ratio_r = r1 / r2;
    const double ratio_q = q1 / q2;
    out.gauge_consistent = std::abs(ratio_r - ratio_q) <= 1e-12 * std::max(std::abs(ratio_r), 1.0);
  }
  return out;
}

ComplexMatrix chiral_operator(std::size_t cells) {
  ComplexVector d(static_cast<Eigen::Index>(2 * cells));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = (i % 2 == 0) ? 1.0 : -1.0;
  return d.asDiagonal();
}

BlochFamily bloch_family(BipartiteChainSpec spec, DriveSpec drive) {
  return [spec, drive](double k) mutable {
    BipartiteChainSpec s = spec;
    s.momentum = k;
    return make_bipartite_chain(s, drive);
  };
}

std::string to_string(ChainVariant variant) {
  switch (variant) {
    case ChainVariant::non_hermitian:
      return "non_hermitian";
    case ChainVariant::hermitian_counterpart:
      return "hermitian_counterpart";
    case ChainVariant::temporal_only_deformed:
      return "temporal_only_deformed";
  }
  return "unknown";
}

std::string to_string(Boundary boundary) { return boundary == Boundary::open ? "open" : "periodic"; }

}  // namespace nonfloquet

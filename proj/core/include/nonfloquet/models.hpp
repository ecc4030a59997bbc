#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

/// Harmonic drive: angular frequency ω and a constant phase φ entering
/// every drive factor as ωt + φ.
struct DriveSpec {
  double omega = 1.0;
  double phase = 0.0;

  double period() const { return kTwoPi / omega; }
  void validate() const;
};

enum class Boundary { open, periodic };

enum class ChainVariant {
  non_hermitian,           // spatially and temporally asymmetric chain
  hermitian_counterpart,   // d-vector model reached by the full gauge
  temporal_only_deformed,  // counterpart deformed back by the temporal factor only
};

/// Driven two-sublattice chain. Real-space sites are ordered
/// (a₁, b₁, a₂, b₂, …) so the chiral operator is ⊕ σ_z. When `momentum` is
/// set the 2×2 Bloch Hamiltonian at that k is built instead.
struct BipartiteChainSpec {
  std::size_t cells = 1;
  Boundary boundary = Boundary::open;
  std::optional<double> momentum;
  ChainVariant variant = ChainVariant::hermitian_counterpart;

  // non_hermitian
  double r1 = 0.0;
  double r2 = 0.0;
  double v = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;

  // hermitian_counterpart and temporal_only_deformed
  double t1 = 0.0;
  double t2 = 0.0;
  double p = 0.0;

  double mu0 = 0.0;

  std::size_t dimension() const { return momentum ? 2 : 2 * cells; }
  void validate() const;
};

struct QuenchStep {
  double duration = 0.0;
  Complex j1{0.0};  // coefficient of e^{i b·k} σ⁺
  Complex j2{0.0};  // coefficient of e^{−i b·k} σ⁻
  std::array<double, 2> bond{1.0, 0.0};
};

/// Piecewise-constant two-band drive, one step active at a time:
/// H = −(J¹ e^{i b·k} σ⁺ + J² e^{−i b·k} σ⁻) + Γ σ_z with
/// σ± = ladder_scale·(σ_x ± iσ_y).
struct StepQuenchSpec {
  std::vector<QuenchStep> steps;
  Complex gamma_z{0.0};
  std::array<double, 2> k{0.0, 0.0};
  double ladder_scale = 1.0;

  double period() const;
  void validate() const;

  /// Seven equal steps of length T/7 with symmetric coupling J and bond
  /// vectors b_n = (cos 2πn/7, sin 2πn/7).
  static StepQuenchSpec seven_step(double coupling, double period = 1.0);
};

/// Static chain with asymmetric hopping and a linear potential:
/// H = Σ t_L c†_l c_{l+1} + t_R c†_{l+1} c_l + Σ α·l n_l, l = 1…N.
struct StarkChainSpec {
  std::size_t sites = 2;
  double t_left = 1.0;
  double t_right = 1.0;
  double field = 0.0;

  void validate() const;
};

/// Declarative model description, as read from a model file.
struct ModelSpec {
  std::variant<BipartiteChainSpec, StepQuenchSpec, StarkChainSpec> body;
  DriveSpec drive;
};

/// Time-periodic Hamiltonian sampler. Implementations are immutable and
/// may be evaluated concurrently.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::size_t dimension() const = 0;
  virtual double omega() const = 0;
  virtual std::string name() const = 0;
  virtual ComplexMatrix sample(double t) const = 0;

  /// False when a transformation introduced a secular drift.
  virtual bool periodic() const { return true; }

  /// Times in [0, T) at which H(t) jumps. Propagators align slices to them.
  virtual std::vector<double> breakpoints() const { return {}; }

  double period() const { return kTwoPi / omega(); }
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr make_bipartite_chain(const BipartiteChainSpec& spec, const DriveSpec& drive);
ModelPtr make_step_quench(const StepQuenchSpec& spec, double phase = 0.0);
ModelPtr make_static_model(ComplexMatrix h, double omega, std::string name = "static");
ModelPtr make_function_model(std::size_t dimension, double omega,
                             std::function<ComplexMatrix(double)> sampler,
                             std::string name = "function");
ModelPtr build_model(const ModelSpec& spec);

/// Convenience wrapper over Model::sample.
ComplexMatrix sample_hamiltonian(const Model& model, double t);

ComplexMatrix stark_chain_hamiltonian(const StarkChainSpec& spec);

/// Hermitian parameters reached from the non-Hermitian chain by the
/// spatial gauge e^{β(j−1)}, e^{βj} on (a_j, b_j).
struct CounterpartParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double p = 0.0;
  double beta = 0.0;
  /// r₁/r₂ = q₁/q₂, so a single β removes both asymmetries.
  bool gauge_consistent = true;
};

CounterpartParams hermitian_counterpart_params(double r1, double r2, double v, double q1, double q2);

/// σ_z on every cell: diag(1, −1, 1, −1, …).
ComplexMatrix chiral_operator(std::size_t cells);

/// Bloch family k ↦ two-band model, used by the topology routines.
using BlochFamily = std::function<ModelPtr(double k)>;
BlochFamily bloch_family(BipartiteChainSpec spec, DriveSpec drive);

std::string to_string(ChainVariant variant);
std::string to_string(Boundary boundary);

}  // namespace nonfloquet

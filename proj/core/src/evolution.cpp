#include "nonfloquet/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonfloquet/errors.hpp"
#include "nonfloquet/parallel.hpp"

namespace nonfloquet {

namespace {

// Breakpoints of a periodic model repeated over every period that
// intersects (t0, t1), strictly inside the interval.
std::vector<double> interior_cuts(const Model& model, double t0, double t1) {
  std::vector<double> cuts;
  const auto base = model.breakpoints();
  if (base.empty()) return cuts;
  const double period = model.period();
  const double guard = 1e-12 * std::max(1.0, std::abs(t1 - t0));
  const auto first = static_cast<long long>(std::floor(t0 / period)) - 1;
  const auto last = static_cast<long long>(std::ceil(t1 / period)) + 1;
  for (long long n = first; n <= last; ++n) {
    for (double b : base) {
      const double t = b + static_cast<double>(n) * period;
      if (t > t0 + guard && t < t1 - guard) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [&](double a, double b) { return b - a <= guard; }), cuts.end());
  return cuts;
}

}  // namespace

PropagatorResult propagate(const PropagatorRequest& request) {
  if (!request.model) throw InvalidInputError("propagate: no model");
  if (!std::isfinite(request.t0) || !std::isfinite(request.t1) || !(request.t1 > request.t0)) {
    throw InvalidInputError("propagate: need finite t1 > t0");
  }
  if (request.slices < 1) throw InvalidInputError("propagate: slices must be positive");
  const Model& model = *request.model;
  const auto dim = static_cast<Eigen::Index>(model.dimension());
  const double span = request.t1 - request.t0;

  std::vector<double> edges{request.t0};
  const auto cuts = interior_cuts(model, request.t0, request.t1);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(request.t1);

  PropagatorResult out;
  out.matrix = ComplexMatrix::Identity(dim, dim);
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double a = edges[s];
    const double len = edges[s + 1] - a;
    std::size_t pieces = request.slices;
    if (edges.size() > 2) {
      pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(request.slices * len / span)));
    }
    const double dt = len / static_cast<double>(pieces);
    for (std::size_t j = 0; j < pieces; ++j) {
      const double mid = a + (static_cast<double>(j) + 0.5) * dt;
      expm_apply(model.sample(mid), dt, out.matrix);
    }
    out.slices_used += pieces;
    out.max_step = std::max(out.max_step, dt);
  }
  out.under_resolved = out.max_step * model.omega() > kPi;
  return out;
}

ComplexMatrix floquet_operator(const Model& model, double t_start, std::size_t slices) {
  // Non-owning handle; the request never outlives this call.
  ModelPtr handle(&model, [](const Model*) {});
  return propagate({handle, t_start, t_start + model.period(), slices}).matrix;
}

FloquetSpectrum floquet_spectrum(const Model& model, double t_start, std::size_t slices, bool resolve_degenerate) {
  FloquetSpectrum spectrum = quasienergies(floquet_operator(model, t_start, slices), model.period());
  if (resolve_degenerate) resolve_degenerate_states(spectrum);
  return spectrum;
}

BulkGaps bulk_gaps(const BipartiteChainSpec& spec, const DriveSpec& drive, std::size_t slices) {
  BulkGaps gaps{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const double period = drive.period();
  const double edge = kPi / period;
  const auto family = bloch_family(spec, drive);
  for (std::size_t n = 0; n < spec.cells; ++n) {
    const double k = kTwoPi * static_cast<double>(n) / static_cast<double>(spec.cells);
    const auto model = family(k);
    const auto spectrum = quasienergies(floquet_operator(*model, 0.0, slices), period);
    for (Eigen::Index i = 0; i < spectrum.quasienergies.size(); ++i) {
      const double re = std::abs(spectrum.quasienergies(i).real());
      gaps.gap_zero = std::min(gaps.gap_zero, re);
      gaps.gap_pi = std::min(gaps.gap_pi, edge - re);
    }
  }
  return gaps;
}

std::vector<std::size_t> detect_edge_modes(const FloquetSpectrum& spectrum, const LocalizationReport& localization,
                                           const BulkGaps& gaps) {
  if (localization.factors.size() != spectrum.size()) {
    throw DimensionError("detect_edge_modes: localization report does not match the spectrum");
  }
  const double edge = kPi / spectrum.period;
  const double threshold = 0.5 * (1.0 - 1.0 / static_cast<double>(localization.dimension));
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double re = std::abs(spectrum.quasienergies(static_cast<Eigen::Index>(j)).real());
    const bool in_gap = re < gaps.gap_zero || edge - re < gaps.gap_pi;
    if (in_gap && localization.factors[j] > threshold) out.push_back(j);
  }
  return out;
}

std::vector<SweepRow> obc_sweep(const BipartiteChainSpec& spec, const DriveSpec& drive,
                                const std::vector<double>& mu0_grid, std::size_t slices) {
  if (spec.momentum) throw InvalidInputError("obc_sweep: needs a real-space chain");
  if (spec.boundary != Boundary::open) throw InvalidInputError("obc_sweep: needs open boundaries");
  return parallel_map(mu0_grid.size(), [&](std::size_t i) {
    BipartiteChainSpec s = spec;
    s.mu0 = mu0_grid[i];
    SweepRow row;
    row.mu0 = s.mu0;
    row.spectrum = floquet_spectrum(*make_bipartite_chain(s, drive), 0.0, slices);
    row.localization = localization_factor(row.spectrum.states);
    row.gaps = bulk_gaps(s, drive, slices);
    row.edge_modes = detect_edge_modes(row.spectrum, row.localization, row.gaps);
    return row;
  });
}

std::vector<PhaseStudyRow> starting_point_study(const Model& model, const std::vector<double>& phis,
                                                std::size_t slices) {
  return parallel_map(phis.size(), [&](std::size_t i) {
    PhaseStudyRow row;
    row.phi = phis[i];
    row.spectrum = floquet_spectrum(model, phis[i] / model.omega(), slices);
    row.localization = localization_factor(row.spectrum.states);
    return row;
  });
}

double spectrum_distance(const ComplexVector& a, const ComplexVector& b, double period) {
  if (a.size() != b.size()) throw DimensionError("spectrum_distance: multiset sizes differ");
  const auto n = a.size();
  std::vector<bool> used_a(static_cast<std::size_t>(n), false);
  std::vector<bool> used_b(static_cast<std::size_t>(n), false);
  auto distance = [&](Eigen::Index i, Eigen::Index j) {
    return std::hypot(zone_difference(a(i).real(), b(j).real(), period), a(i).imag() - b(j).imag());
  };
  double worst = 0.0;
  for (Eigen::Index round = 0; round < n; ++round) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index bi = 0;
    Eigen::Index bj = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used_a[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used_b[static_cast<std::size_t>(j)]) continue;
        const double d = distance(i, j);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[static_cast<std::size_t>(bi)] = true;
    used_b[static_cast<std::size_t>(bj)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

QuenchBandReport quench_band_report(const StepQuenchSpec& spec, std::size_t nk, std::size_t slices) {
  if (nk < 1) throw InvalidInputError("quench_band_report: need at least one k point");
  spec.validate();
  const double period = spec.period();
  const auto samples = parallel_map(nk, [&](std::size_t n) {
    StepQuenchSpec at = spec;
    const double s = kTwoPi * static_cast<double>(n) / static_cast<double>(nk);
    at.k = {s, 0.3 * s};
    const FloquetSpectrum f = floquet_spectrum(*make_step_quench(at), 0.0, slices, false);
    if (f.size() != 2) throw DimensionError("quench_band_report: needs a two-band model");
    return std::array<Complex, 2>{f.quasienergies(0), f.quasienergies(1)};
  });

  QuenchBandReport out;
  out.k_points = nk;
  const double count = static_cast<double>(nk);
  for (std::size_t b = 0; b < 2; ++b) {
    Complex phase_sum{0.0};
    double im_sum = 0.0;
    for (const auto& s : samples) {
      phase_sum += std::polar(1.0, -s[b].real() * period);
      im_sum += s[b].imag();
      out.max_abs_im = std::max(out.max_abs_im, std::abs(s[b].imag()));
    }
    out.mean_re[b] = fold_to_zone(-std::arg(phase_sum) / period, period);
    out.mean_im[b] = im_sum / count;
    double re_sq = 0.0;
    double im_sq = 0.0;
    for (const auto& s : samples) {
      re_sq += std::pow(zone_difference(s[b].real(), out.mean_re[b], period), 2);
      im_sq += std::pow(s[b].imag() - out.mean_im[b], 2);
    }
    out.std_re[b] = std::sqrt(re_sq / count);
    out.std_im[b] = std::sqrt(im_sq / count);
  }
  out.band_separation =
      std::hypot(zone_difference(out.mean_re[0], out.mean_re[1], period), out.mean_im[0] - out.mean_im[1]);
  return out;
}

}  // namespace nonfloquet

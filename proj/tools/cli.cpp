#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nonfloquet/nonfloquet.hpp"

namespace nonfloquet::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bands flatter and more real than this count as flat and real in the
// quench report.
constexpr double kFlatTolerance = 1e-8;
constexpr std::size_t kDeformCheckTimes = 64;

struct Options {
  std::string model;
  std::string out;
  std::string format;
  std::size_t slices = kDefaultSlices;
  std::optional<std::size_t> nk;
  int cutoff = 16;
  std::optional<double> mu0;
  std::string mu0_grid;
  std::string phi_grid;
  std::optional<double> omega;
  std::optional<std::uint64_t> seed;
  double r = 0.0;
  std::string asym_steps = "1";
};

struct Output {
  std::optional<Table> table;
  Json json;
};

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) throw InvalidInputError("not a number: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

ModelSpec load(const Options& o) {
  ModelSpec spec = load_model_spec(o.model);
  if (o.omega) {
    if (std::holds_alternative<StepQuenchSpec>(spec.body)) {
      throw InvalidInputError("--omega: the quench period comes from its steps");
    }
    spec.drive.omega = *o.omega;
    spec.drive.validate();
  }
  if (o.mu0) {
    auto* chain = std::get_if<BipartiteChainSpec>(&spec.body);
    if (!chain) throw InvalidInputError("--mu0 applies to bipartite_chain models only");
    chain->mu0 = *o.mu0;
  }
  return spec;
}

BipartiteChainSpec& chain_of(ModelSpec& spec, const char* command) {
  auto* chain = std::get_if<BipartiteChainSpec>(&spec.body);
  if (!chain) throw InvalidInputError(std::string(command) + ": needs a bipartite_chain model");
  return *chain;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Table spectrum_table(const FloquetSpectrum& s, const LocalizationReport& loc) {
  Table t{{"index", "re_eps", "im_eps", "I_j"}, {}};
  for (std::size_t j = 0; j < s.size(); ++j) {
    const Complex e = s.quasienergies(static_cast<Eigen::Index>(j));
    t.rows.push_back({static_cast<double>(j), e.real(), e.imag(), loc.factors[j]});
  }
  return t;
}

Output cmd_spectrum(const Options& o) {
  const ModelSpec spec = load(o);
  const ModelPtr model = build_model(spec);
  const FloquetSpectrum s = floquet_spectrum(*model, 0.0, o.slices);
  const LocalizationReport loc = localization_factor(s.states);
  Output out;
  out.table = spectrum_table(s, loc);
  Json eps = Json::array();
  for (Eigen::Index j = 0; j < s.quasienergies.size(); ++j) eps.push_back(complex_json(s.quasienergies(j)));
  out.json = {{"model", model->name()},
              {"period", s.period},
              {"condition_estimate", s.condition_estimate},
              {"quasienergies", eps},
              {"I_j", loc.factors}};
  return out;
}

Output cmd_sweep(const Options& o) {
  if (o.mu0_grid.empty()) throw InvalidInputError("sweep: --mu0-grid is required");
  ModelSpec spec = load(o);
  const BipartiteChainSpec& chain = chain_of(spec, "sweep");
  const auto rows = obc_sweep(chain, spec.drive, parse_grid(o.mu0_grid), o.slices);
  Output out;
  Table t{{"mu0", "index", "re_eps", "im_eps", "I_j", "edge"}, {}};
  out.json = Json::array();
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.spectrum.size(); ++j) {
      const Complex e = row.spectrum.quasienergies(static_cast<Eigen::Index>(j));
      const bool edge = std::find(row.edge_modes.begin(), row.edge_modes.end(), j) != row.edge_modes.end();
      t.rows.push_back({row.mu0, static_cast<double>(j), e.real(), e.imag(), row.localization.factors[j],
                        edge ? 1.0 : 0.0});
    }
    out.json.push_back({{"mu0", row.mu0},
                        {"gap_zero", row.gaps.gap_zero},
                        {"gap_pi", row.gaps.gap_pi},
                        {"edge_count", row.edge_modes.size()},
                        {"edge_modes", row.edge_modes}});
  }
  out.table = std::move(t);
  return out;
}

Output cmd_phase_study(const Options& o) {
  if (o.phi_grid.empty()) throw InvalidInputError("phase-study: --phi-grid is required");
  const ModelSpec spec = load(o);
  const ModelPtr model = build_model(spec);
  const auto rows = starting_point_study(*model, parse_grid(o.phi_grid), o.slices);
  Output out;
  Table t{{"phi", "index", "re_eps", "im_eps", "I_j"}, {}};
  out.json = Json::array();
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.spectrum.size(); ++j) {
      const Complex e = row.spectrum.quasienergies(static_cast<Eigen::Index>(j));
      t.rows.push_back({row.phi, static_cast<double>(j), e.real(), e.imag(), row.localization.factors[j]});
    }
    double delta_i = 0.0;
    for (std::size_t j = 0; j < row.spectrum.size(); ++j) {
      delta_i = std::max(delta_i, std::abs(row.localization.factors[j] - rows.front().localization.factors[j]));
    }
    out.json.push_back(
        {{"phi", row.phi},
         {"spectrum_distance_to_first",
          spectrum_distance(row.spectrum.quasienergies, rows.front().spectrum.quasienergies, row.spectrum.period)},
         {"max_delta_I_to_first", delta_i}});
  }
  out.table = std::move(t);
  return out;
}

Output cmd_winding(const Options& o) {
  ModelSpec spec = load(o);
  BipartiteChainSpec chain = chain_of(spec, "winding");
  chain.momentum = 0.0;
  const BlochFamily family = bloch_family(chain, spec.drive);
  const WindingReport w = winding_numbers(family, o.nk.value_or(256), o.slices);
  Output out;
  out.json = {{"W1", w.w1},
              {"W2", w.w2},
              {"nu0", w.nu0},
              {"nu_pi", w.nu_pi},
              {"mu0", chain.mu0},
              {"phase_accumulation1", w.phase_accumulation1},
              {"phase_accumulation2", w.phase_accumulation2},
              {"lower_left_W1", w.lower_left_w1},
              {"lower_left_W2", w.lower_left_w2},
              {"reciprocal_consistent", w.reciprocal_consistent},
              {"k_points", w.k_points},
              {"perturbed_points", w.perturbed_points},
              {"chiral_residual", chiral_drive_check(family, 64, 16)}};
  out.table = Table{{"mu0", "W1", "W2", "nu0", "nu_pi"},
                    {{chain.mu0, static_cast<double>(w.w1), static_cast<double>(w.w2), w.nu0, w.nu_pi}}};
  return out;
}

Output cmd_freqspace(const Options& o) {
  ModelSpec spec = load(o);
  BipartiteChainSpec chain = chain_of(spec, "freqspace");
  chain.momentum = 0.0;
  const BlochFamily family = bloch_family(chain, spec.drive);
  const std::size_t nk = o.nk.value_or(64);
  const int m = o.cutoff;
  struct PerK {
    SambeSpectrum spectrum;
    double coupling_ratio;
  };
  const auto per_k = parallel_map(nk, [&](std::size_t i) {
    const double k = kTwoPi * static_cast<double>(i) / static_cast<double>(nk);
    const HarmonicSet h = harmonics(*family(k), m);
    return PerK{sambe_spectrum(sambe_build(h, m)), h.coupling_ratio()};
  });

  Table t{{"k", "index", "re_eps", "im_eps", "peak_site", "interior"}, {}};
  double max_im = 0.0;
  double max_im_interior = 0.0;
  double ratio = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nk; ++i) {
    const double k = kTwoPi * static_cast<double>(i) / static_cast<double>(nk);
    const SambeSpectrum& s = per_k[i].spectrum;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const Complex e = s.eigenvalues(j);
      t.rows.push_back({k, static_cast<double>(j), e.real(), e.imag(), static_cast<double>(s.peak_site[ju]),
                        s.interior[ju] ? 1.0 : 0.0});
      max_im = std::max(max_im, std::abs(e.imag()));
      if (s.interior[ju]) max_im_interior = std::max(max_im_interior, std::abs(e.imag()));
    }
    ratio = std::max(ratio, per_k[i].coupling_ratio);
    gap = std::min(gap, central_zero_gap(s, spec.drive.omega));
  }
  Output out;
  out.table = std::move(t);
  out.json = {{"cutoff", m},
              {"k_points", nk},
              {"mu0", chain.mu0},
              {"max_abs_im", max_im},
              {"max_abs_im_interior", max_im_interior},
              {"coupling_ratio", ratio},
              {"central_zero_gap", gap}};
  return out;
}

Output cmd_stark(const Options& o) {
  const ModelSpec spec = load(o);
  const auto* stark = std::get_if<StarkChainSpec>(&spec.body);
  if (!stark) throw InvalidInputError("stark: needs a stark_chain model");
  const StarkStudy study = stark_chain_study(*stark);
  Table t{{"index", "re_E", "im_E", "peak_site"}, {}};
  for (Eigen::Index j = 0; j < study.eigenvalues.size(); ++j) {
    const Complex e = study.eigenvalues(j);
    t.rows.push_back({static_cast<double>(j), e.real(), e.imag(),
                      static_cast<double>(study.peak_site[static_cast<std::size_t>(j)])});
  }
  Output out;
  out.table = std::move(t);
  out.json = {{"sites", stark->sites},
              {"alpha", stark->field},
              {"ladder_spacing_estimate", study.ladder_spacing_estimate},
              {"gauge_residual", study.gauge_residual},
              {"peak_sites", study.peak_site}};
  return out;
}

Output cmd_deform_check(const Options& o) {
  ModelSpec spec = load(o);
  const BipartiteChainSpec chain = chain_of(spec, "deform-check");
  if (chain.variant != ChainVariant::non_hermitian) {
    throw InvalidInputError("deform-check: needs the non_hermitian chain variant");
  }
  const CounterpartParams cp = hermitian_counterpart_params(chain.r1, chain.r2, chain.v, chain.q1, chain.q2);
  BipartiteChainSpec partner = chain;
  partner.variant = ChainVariant::hermitian_counterpart;
  partner.t1 = cp.t1;
  partner.t2 = cp.t2;
  partner.p = cp.p;

  const std::size_t cells = chain.momentum ? 1 : chain.cells;
  const double beta = chain.momentum ? 0.0 : cp.beta;
  const DeformationSpec gamma = DeformationSpec::catalog_chain(cells, beta, spec.drive);
  const ModelPtr source = make_bipartite_chain(chain, spec.drive);
  const ModelPtr target = make_bipartite_chain(partner, spec.drive);
  const ModelPtr deformed = transform_model(source, gamma);

  std::vector<double> times;
  double defect = 0.0;
  double mismatch = 0.0;
  const double period = spec.drive.period();
  for (std::size_t i = 0; i < kDeformCheckTimes; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(kDeformCheckTimes);
    times.push_back(t);
    const ComplexMatrix h = deformed->sample(t);
    defect = std::max(defect, hermiticity_defect(h));
    mismatch = std::max(mismatch, (h - target->sample(t)).norm());
  }

  Json residual = nullptr;
  std::string note;
  try {
    residual = pseudo_hermiticity_residual(*source, gamma, times).residual_norm;
  } catch (const IllConditionedError& e) {
    note = e.what();
  }

  Json shifts = Json::array();
  const ComplexVector shift = generalized_shift(gamma, period);
  for (Eigen::Index i = 0; i < shift.size(); ++i) shifts.push_back(complex_json(shift(i)));

  Output out;
  out.json = {{"t1", cp.t1},
              {"t2", cp.t2},
              {"p", cp.p},
              {"beta", cp.beta},
              {"gauge_consistent", cp.gauge_consistent},
              {"deformed_hermiticity_defect", defect},
              {"counterpart_mismatch", mismatch},
              {"pseudo_hermiticity_residual", residual}};
  if (!note.empty()) out.json["pseudo_hermiticity_note"] = note;
  out.json["generalized_shift"] = shifts;
  out.json["spectrum_shift_deviation"] =
      spectra_shift_check(*source, *target, Complex(spec.drive.omega / 2.0), o.slices);
  return out;
}

Output cmd_quench(const Options& o) {
  ModelSpec spec = load(o);
  auto* quench = std::get_if<StepQuenchSpec>(&spec.body);
  if (!quench) throw InvalidInputError("quench: needs a step_quench model");
  std::vector<int> asym;
  if (o.r != 0.0) {
    for (const auto& part : split(o.asym_steps, ',')) {
      const double step = parse_double(part);
      if (step < 1 || step > static_cast<double>(quench->steps.size()) || step != std::floor(step)) {
        throw InvalidInputError("--asym-steps: step index out of range");
      }
      auto& s = quench->steps[static_cast<std::size_t>(step) - 1];
      s.j1 += o.r;
      s.j2 -= o.r;
      asym.push_back(static_cast<int>(step));
    }
  }
  const QuenchBandReport rep = quench_band_report(*quench, o.nk.value_or(128), o.slices);
  const bool flat = std::max(rep.std_re[0], rep.std_re[1]) < kFlatTolerance &&
                    std::max(rep.std_im[0], rep.std_im[1]) < kFlatTolerance;
  Output out;
  out.json = {{"r", o.r},
              {"asymmetric_steps", asym},
              {"k_points", rep.k_points},
              {"mean_re", rep.mean_re},
              {"std_re", rep.std_re},
              {"mean_im", rep.mean_im},
              {"std_im", rep.std_im},
              {"max_abs_im", rep.max_abs_im},
              {"band_separation", rep.band_separation},
              {"flat", flat},
              {"real", rep.max_abs_im < kFlatTolerance},
              {"degenerate", rep.band_separation < kFlatTolerance}};
  Table t{{"band", "mean_re", "std_re", "mean_im", "std_im"}, {}};
  for (std::size_t b = 0; b < 2; ++b) {
    t.rows.push_back({static_cast<double>(b), rep.mean_re[b], rep.std_re[b], rep.mean_im[b], rep.std_im[b]});
  }
  out.table = std::move(t);
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto colon = split(text, ':');
  std::vector<double> grid;
  if (colon.size() == 3) {
    const double a = parse_double(colon[0]);
    const double b = parse_double(colon[1]);
    const double n = parse_double(colon[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw InvalidInputError("grid: N must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return grid;
  }
  if (colon.size() != 1) throw InvalidInputError("grid: expected A:B:N or a comma-separated list");
  for (const auto& part : split(text, ',')) grid.push_back(parse_double(part));
  if (grid.empty()) throw InvalidInputError("grid: no values");
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasienergy spectra, deformations and topology of driven non-Hermitian chains", "nonfloquet"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    Output (*run)(const Options&);
    const char* default_format;
  };
  const std::vector<Command> commands = {
      {"spectrum", "Floquet quasienergies and localization factors", cmd_spectrum, "csv"},
      {"sweep", "Open-chain spectra and edge modes over a mu0 grid", cmd_sweep, "csv"},
      {"phase-study", "Spectra for several starting phases", cmd_phase_study, "csv"},
      {"winding", "Chiral winding numbers from the two symmetric time frames", cmd_winding, "json"},
      {"freqspace", "Truncated Sambe spectra over momentum", cmd_freqspace, "json"},
      {"stark", "Wannier-Stark chain eigenstates", cmd_stark, "csv"},
      {"deform-check", "Deformation of the non-Hermitian chain onto its counterpart", cmd_deform_check, "json"},
      {"quench", "Band flatness report for a step quench", cmd_quench, "json"},
  };

  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--model", o.model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output path; standard output when absent");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--slices", o.slices, "Time slices per period")->check(CLI::PositiveNumber);
    sub->add_option("--nk", o.nk, "Number of k points")->check(CLI::PositiveNumber);
    sub->add_option("--cutoff", o.cutoff, "Sambe cutoff M")->check(CLI::NonNegativeNumber);
    auto* mu0 = sub->add_option("--mu0", o.mu0, "Chemical potential override");
    sub->add_option("--mu0-grid", o.mu0_grid, "A:B:N or comma list")->excludes(mu0);
    sub->add_option("--phi-grid", o.phi_grid, "Starting phases in radians, A:B:N or comma list");
    sub->add_option("--omega", o.omega, "Drive frequency override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed recorded for randomized runs");
    if (std::string(c.name) == "quench") {
      sub->add_option("--r", o.r, "Coupling asymmetry J1 = J + r, J2 = J - r");
      sub->add_option("--asym-steps", o.asym_steps, "1-based steps receiving the asymmetry, comma list");
    }
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nonfloquet: " << e.what() << '\n';
    return kExitConfig;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const std::string format = o.format.empty() ? commands[i].default_format : o.format;
      Output result = commands[i].run(o);
      std::string text;
      if (format == "csv") {
        if (!result.table) throw InvalidInputError(std::string(commands[i].name) + ": no CSV form");
        text = format_csv(*result.table);
      } else {
        if (o.seed) result.json = Json{{"seed", *o.seed}, {"result", result.json}};
        text = result.json.dump(2) + "\n";
      }
      if (o.out.empty()) {
        out << text;
      } else {
        write_file_atomic(o.out, text);
      }
      return kExitOk;
    } catch (const ConfigError& e) {
      err << "nonfloquet " << commands[i].name << ": " << e.what() << '\n';
      return kExitConfig;
    } catch (const NumericalError& e) {
      err << "nonfloquet " << commands[i].name << ": " << e.what() << '\n';
      return kExitNumerical;
    }
  }
  err << "nonfloquet: no subcommand\n";
  return kExitConfig;
}

}  // namespace nonfloquet::cli

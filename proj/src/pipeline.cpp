#include "rydkick/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "rydkick/analysis.hpp"
#include "rydkick/basis.hpp"
#include "rydkick/constants.hpp"
#include "rydkick/csv.hpp"
#include "rydkick/errors.hpp"
#include "rydkick/kick.hpp"
#include "rydkick/measurement.hpp"
#include "rydkick/radial.hpp"
#include "rydkick/wavepacket.hpp"

namespace fs = std::filesystem;

namespace rydkick {

namespace {

std::string out_path(const RunContext &ctx, const std::string &suffix) {
  return (fs::path(ctx.out_dir) / (ctx.scenario.prefix + suffix)).string();
}

void ensure_out_dir(const RunContext &ctx) {
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + ctx.out_dir +
                      "': " + ec.message());
}

BasisSet make_basis(const Scenario &sc) {
  return BasisSet(sc.n_min, sc.n_max, sc.l_max, sc.m,
                  QuantumDefects(sc.defects));
}

WavePacketSpec make_packet(const Scenario &sc) {
  WavePacketSpec spec;
  for (int n = sc.packet_n_lo; n <= sc.packet_n_hi; ++n)
    spec.states.emplace_back(n, sc.packet_l);
  spec.weights = sc.packet_weights;
  spec.phases_rad = sc.packet_phases;
  return spec;
}

// Population-weighted mean bound energy of the launch packet; sets the
// jitter window together with the launch-state energy.
double packet_mean_energy(const Scenario &sc, const BasisSet &basis) {
  double norm2 = 0.0, acc = 0.0;
  for (size_t i = 0; i < sc.packet_weights.size(); ++i) {
    int n = sc.packet_n_lo + static_cast<int>(i);
    double w2 = sc.packet_weights[i] * sc.packet_weights[i];
    norm2 += w2;
    acc += w2 * basis.state(basis.index(n, sc.packet_l)).energy_au;
  }
  return acc / norm2;
}

void warn_or_throw(const RunContext &ctx, const std::string &msg) {
  if (ctx.strict)
    throw TruncationError(msg);
  std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

// Kick the packet at t_kick and report the rotating-frame amplitudes.
// Population lost to the truncated basis edge is a warning (an error under
// --strict) once it exceeds the configured tolerance.
Eigen::VectorXcd kicked_amplitudes(const RunContext &ctx,
                                   const KickOperator &kick,
                                   const Eigen::VectorXcd &a0,
                                   const Eigen::VectorXd &energies,
                                   double t_kick_au) {
  Eigen::VectorXcd a = apply_kick_at(kick, a0, energies, t_kick_au);
  double drop = 1.0 - a.squaredNorm();
  if (std::abs(drop) > ctx.scenario.unitarity_tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "impulse moved %.3e of the packet population outside the "
                  "basis (tolerance %.1e)",
                  drop, ctx.scenario.unitarity_tol);
    warn_or_throw(ctx, buf);
  }
  return a;
}

std::vector<Channel> scenario_channels(const Scenario &sc,
                                       const BasisSet &basis) {
  return make_channels(basis, sc.channel_states, sc.ref_amplitudes,
                       sc.ref_phases);
}

Eigen::VectorXcd channel_amplitudes(const Eigen::VectorXcd &a_full,
                                    const std::vector<Channel> &channels) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(channels.size()));
  for (size_t k = 0; k < channels.size(); ++k)
    out(static_cast<Eigen::Index>(k)) =
        a_full(static_cast<Eigen::Index>(channels[k].basis_index));
  return out;
}

EnsembleParams scenario_ensemble_params(const Scenario &sc,
                                        const BasisSet &basis,
                                        uint64_t seed) {
  if (sc.shots < 2)
    throw ConfigError("this command needs a complete [scan] section");
  EnsembleParams p;
  p.tau_ps = sc.tau_grid_ps();
  p.shots = sc.shots;
  p.jitter_window = jitter_window_au(
      sc.omega_g, packet_mean_energy(sc, basis), sc.jitter_periods);
  p.relative_noise = sc.relative_rms;
  p.omega_g_au = sc.omega_g;
  p.seed = seed;
  return p;
}

struct FittedPairs {
  CorrelationCurves curves;
  std::vector<SummaryRow> summary;
};

// Correlate, then fit every pair at its two-state beat frequency; the
// summary also refines the frequency against the data.
FittedPairs analyze_ensemble(const Ensemble &ens,
                             const std::vector<Channel> &channels,
                             bool refine) {
  FittedPairs out;
  out.curves = correlation_curves(ens, channels);
  std::vector<double> tau_au(out.curves.tau_ps.size());
  for (size_t i = 0; i < tau_au.size(); ++i)
    tau_au[i] = out.curves.tau_ps[i] * kPsToAu;
  for (size_t p = 0; p < out.curves.pairs.size(); ++p) {
    const ChannelPair &pr = out.curves.pairs[p];
    std::vector<double> r(out.curves.tau_ps.size());
    for (size_t d = 0; d < r.size(); ++d)
      r[d] = out.curves.r(static_cast<Eigen::Index>(p),
                          static_cast<Eigen::Index>(d));
    SummaryRow row;
    row.pair = pr.label;
    row.fit = fit_amplitude_phase(tau_au, r, pr.delta_omega);
    row.beat_frequency_au =
        refine ? std::abs(refine_beat_frequency(tau_au, r, pr.delta_omega))
               : std::abs(pr.delta_omega);
    out.summary.push_back(std::move(row));
  }
  return out;
}

} // namespace

void run_basis(const RunContext &ctx) {
  const Scenario &sc = ctx.scenario;
  BasisSet basis = make_basis(sc);
  RadialBasis radial(basis, sc.points_per_wavelength, sc.outer_factor);
  const RadialDiagnostics &diag = radial.diagnostics();

  if (diag.post_ortho_deficit > 1e-6)
    warn_or_throw(ctx, "radial orthonormality residual " +
                           format_double(diag.post_ortho_deficit) +
                           " exceeds 1e-6");
  if (diag.worst_end_ratio > 1e-6)
    warn_or_throw(ctx, "radial wavefunction boundary ratio " +
                           format_double(diag.worst_end_ratio) +
                           " exceeds 1e-6");

  ensure_out_dir(ctx);
  const std::string path = out_path(ctx, "_basis.csv");
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write output file: " + path);
  out << "# version: " << kVersion << "\n";
  out << "# command: basis\n";
  out << "# config_hash: " << sc.config_hash << "\n";
  out << "# grid_points: " << radial.grid().size() << "\n";
  out << "# grid_dx: " << format_double(radial.grid().dx) << "\n";
  out << "# pre_ortho_deficit: " << format_double(diag.pre_ortho_deficit)
      << "\n";
  out << "# post_ortho_deficit: " << format_double(diag.post_ortho_deficit)
      << "\n";
  out << "# worst_norm_dev: " << format_double(diag.worst_norm_dev) << "\n";
  out << "# worst_end_ratio: " << format_double(diag.worst_end_ratio) << "\n";
  out << "n,l,m,energy_au,nu,nodes\n";
  for (size_t i = 0; i < basis.size(); ++i) {
    const BasisState &st = basis.state(i);
    out << st.n << "," << st.l << "," << st.m << ","
        << format_double(st.energy_au) << "," << format_double(st.nu()) << ","
        << diag.node_counts[i] << "\n";
  }
  out.flush();
  if (!out)
    throw ConfigError("write failed for output file: " + path);
}

void run_kick(const RunContext &ctx) {
  const Scenario &sc = ctx.scenario;
  if (!sc.hcp_enabled)
    throw ConfigError("kick command needs an enabled [hcp] section");
  BasisSet basis = make_basis(sc);
  RadialBasis radial(basis, sc.points_per_wavelength, sc.outer_factor);
  KickOperator kick = build_kick_operator(radial, sc.impulse_au, sc.l_max_sum,
                                          sc.quadrature_stride);
  kick.require_unitary(sc.check_n_lo, sc.check_n_hi, sc.check_l,
                       sc.unitarity_tol);

  ensure_out_dir(ctx);
  kick.save(out_path(ctx, "_kick_operator.txt"));

  const std::string path = out_path(ctx, "_kick_unitarity.csv");
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write output file: " + path);
  KickOperator::WindowReport rep =
      kick.window_deficit(sc.check_n_lo, sc.check_n_hi, sc.check_l);
  out << "# version: " << kVersion << "\n";
  out << "# command: kick\n";
  out << "# config_hash: " << sc.config_hash << "\n";
  out << "# impulse_au: " << format_double(sc.impulse_au) << "\n";
  out << "# window: n in [" << sc.check_n_lo << "," << sc.check_n_hi
      << "], l = " << sc.check_l << "\n";
  out << "# tolerance: " << format_double(sc.unitarity_tol) << "\n";
  out << "# worst: " << rep.worst_label << " "
      << format_double(rep.worst) << "\n";
  out << "state,column_deficit\n";
  for (size_t j = 0; j < kick.size(); ++j) {
    const BasisState &st = kick.states()[j];
    if (st.l != sc.check_l || st.n < sc.check_n_lo || st.n > sc.check_n_hi)
      continue;
    out << st.label() << "," << format_double(kick.column_deficit(j)) << "\n";
  }
  out.flush();
  if (!out)
    throw ConfigError("write failed for output file: " + path);
}

void run_scan(const RunContext &ctx) {
  const Scenario &sc = ctx.scenario;
  BasisSet basis = make_basis(sc);
  Eigen::VectorXd energies = energies_of(basis);
  Eigen::VectorXcd a_rot = initial_wavepacket(make_packet(sc), basis);

  if (sc.hcp_enabled) {
    RadialBasis radial(basis, sc.points_per_wavelength, sc.outer_factor);
    KickOperator kick = build_kick_operator(
        radial, sc.impulse_au, sc.l_max_sum, sc.quadrature_stride);
    kick.require_unitary(sc.check_n_lo, sc.check_n_hi, sc.check_l,
                         sc.unitarity_tol);
    a_rot = kicked_amplitudes(ctx, kick, a_rot, energies,
                              sc.tau_hcp_ps * kPsToAu);
  }

  std::vector<Channel> channels = scenario_channels(sc, basis);
  EnsembleParams params = scenario_ensemble_params(sc, basis, sc.seed);
  Ensemble ens =
      generate_ensemble(channel_amplitudes(a_rot, channels), channels, params);
  FittedPairs fitted = analyze_ensemble(ens, channels, true);

  ensure_out_dir(ctx);
  Provenance prov{"scan", sc.config_hash, sc.seed, true};
  if (sc.write_ensemble)
    write_ensemble_csv(out_path(ctx, "_ensemble.csv"), ens, prov);
  write_correlation_csv(out_path(ctx, "_correlations.csv"), fitted.curves,
                        prov);
  write_summary_csv(out_path(ctx, "_summary.csv"), fitted.summary, prov);
}

void run_hcp_scan(const RunContext &ctx) {
  const Scenario &sc = ctx.scenario;
  if (!sc.hcp_enabled)
    throw ConfigError("hcp-scan command needs an enabled [hcp] section");
  if (!(sc.delay_scan_step_ps > 0.0))
    throw ConfigError("hcp-scan needs [hcp] delay_scan_start_ps/"
                      "delay_scan_end_ps/delay_scan_step_ps");
  std::vector<double> kick_times_ps = sc.hcp_delay_grid_ps();

  BasisSet basis = make_basis(sc);
  Eigen::VectorXd energies = energies_of(basis);
  Eigen::VectorXcd a0 = initial_wavepacket(make_packet(sc), basis);

  RadialBasis radial(basis, sc.points_per_wavelength, sc.outer_factor);
  KickOperator kick = build_kick_operator(radial, sc.impulse_au, sc.l_max_sum,
                                          sc.quadrature_stride);
  kick.require_unitary(sc.check_n_lo, sc.check_n_hi, sc.check_l,
                       sc.unitarity_tol);

  std::vector<Channel> channels = scenario_channels(sc, basis);
  Eigen::VectorXcd a0_ch = channel_amplitudes(a0, channels);

  std::vector<HcpScanRow> rows;
  for (size_t q = 0; q < kick_times_ps.size(); ++q) {
    // The no-kick reference run shares the kicked run's seed, so both see
    // identical jitter and noise draws and their fits differ only through
    // the impulse.
    uint64_t seed_q = sc.seed + q;
    Eigen::VectorXcd a_on = kicked_amplitudes(
        ctx, kick, a0, energies, kick_times_ps[q] * kPsToAu);
    Eigen::VectorXcd a_on_ch = channel_amplitudes(a_on, channels);

    EnsembleParams params = scenario_ensemble_params(sc, basis, seed_q);
    Ensemble ens_on = generate_ensemble(a_on_ch, channels, params);
    Ensemble ens_off = generate_ensemble(a0_ch, channels, params);
    FittedPairs on = analyze_ensemble(ens_on, channels, false);
    FittedPairs off = analyze_ensemble(ens_off, channels, false);

    for (size_t p = 0; p < on.curves.pairs.size(); ++p) {
      const ChannelPair &pr = on.curves.pairs[p];
      HcpScanRow row;
      row.tau_hcp_ps = kick_times_ps[q];
      row.pair = pr.label;
      row.amplitude_on = on.summary[p].fit.amplitude;
      row.amplitude_off = off.summary[p].fit.amplitude;
      row.amplitude_ratio = row.amplitude_off > 0.0
                                ? row.amplitude_on / row.amplitude_off
                                : std::numeric_limits<double>::quiet_NaN();
      row.phase_on = on.summary[p].fit.phase;
      row.phase_off = off.summary[p].fit.phase;
      row.phase_shift =
          (on.summary[p].fit.phase_defined && off.summary[p].fit.phase_defined)
              ? std::remainder(row.phase_on - row.phase_off, 2.0 * M_PI)
              : std::numeric_limits<double>::quiet_NaN();
      double on_prod = std::abs(a_on_ch(static_cast<Eigen::Index>(pr.j))) *
                       std::abs(a_on_ch(static_cast<Eigen::Index>(pr.k)));
      double off_prod = std::abs(a0_ch(static_cast<Eigen::Index>(pr.j))) *
                        std::abs(a0_ch(static_cast<Eigen::Index>(pr.k)));
      row.p_product = off_prod > 0.0
                          ? on_prod / off_prod
                          : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  }

  ensure_out_dir(ctx);
  Provenance prov{"hcp-scan", sc.config_hash, sc.seed, true};
  write_hcp_scan_csv(out_path(ctx, "_hcp_scan.csv"), rows, prov);
}

void run_analyze(const RunContext &ctx) {
  const Scenario &sc = ctx.scenario;
  BasisSet basis = make_basis(sc);
  std::vector<Channel> channels = scenario_channels(sc, basis);

  const std::string in_path = out_path(ctx, "_ensemble.csv");
  EnsembleFile file = read_ensemble_csv(in_path);
  if (!file.config_hash.empty() && file.config_hash != sc.config_hash)
    warn_or_throw(ctx, "ensemble file " + in_path +
                           " was produced by a different configuration");
  FittedPairs fitted = analyze_ensemble(file.ensemble, channels, true);

  ensure_out_dir(ctx);
  Provenance prov{"analyze", sc.config_hash, file.seed, true};
  write_correlation_csv(out_path(ctx, "_correlations.csv"), fitted.curves,
                        prov);
  write_summary_csv(out_path(ctx, "_summary.csv"), fitted.summary, prov);
}

} // namespace rydkick

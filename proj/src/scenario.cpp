#include "rydkick/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <sstream>

#include "rydkick/basis.hpp"
#include "rydkick/config.hpp"
#include "rydkick/constants.hpp"
#include "rydkick/errors.hpp"

namespace rydkick {

namespace {

const char kShellLetters[] = "spdfghiklmno";

std::vector<double> grid_from(double start, double end, double step,
                              const char *what) {
  if (!(step > 0.0))
    throw ConfigError(std::string(what) + ": step must be positive");
  if (!(end >= start))
    throw ConfigError(std::string(what) + ": end must be >= start");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > end + 1e-9 * step)
      break;
    out.push_back(v);
  }
  return out;
}

} // namespace

std::pair<int, int> parse_state_label(const std::string &token) {
  size_t i = 0;
  while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i])))
    ++i;
  if (i == 0 || i + 1 != token.size())
    throw ConfigError("malformed state label '" + token +
                      "' (expected e.g. 30p)");
  const char *pos = std::strchr(kShellLetters, token[i]);
  if (pos == nullptr || token[i] == '\0')
    throw ConfigError("unknown shell letter in state label '" + token + "'");
  int n = 0;
  try {
    n = std::stoi(token.substr(0, i));
  } catch (const std::exception &) {
    throw ConfigError("malformed state label '" + token + "'");
  }
  return {n, static_cast<int>(pos - kShellLetters)};
}

std::vector<double> Scenario::tau_grid_ps() const {
  return grid_from(tau_start_ps, tau_end_ps, tau_step_ps, "[scan] delay grid");
}

std::vector<double> Scenario::hcp_delay_grid_ps() const {
  return grid_from(delay_scan_start_ps, delay_scan_end_ps, delay_scan_step_ps,
                   "[hcp] delay scan");
}

Scenario load_scenario(const std::string &path) {
  Config cfg = Config::from_file(path);
  Scenario sc;
  sc.config_hash = cfg.content_hash();

  // --- [basis] ---
  if (!cfg.has_section("basis"))
    throw ConfigError("missing [basis] section");
  sc.n_min = static_cast<int>(cfg.require_int("basis", "n_min"));
  sc.n_max = static_cast<int>(cfg.require_int("basis", "n_max"));
  sc.l_max = static_cast<int>(cfg.require_int("basis", "l_max"));
  sc.m = static_cast<int>(cfg.get_int("basis", "m", 0));
  sc.defects = cfg.get_double_list("basis", "defects");
  if (sc.defects.empty())
    sc.defects.assign(kCesiumDefects.begin(), kCesiumDefects.end());
  sc.points_per_wavelength =
      cfg.get_double("basis", "points_per_wavelength", 40.0);
  sc.outer_factor = cfg.get_double("basis", "outer_factor", 2.5);
  sc.unitarity_tol = cfg.get_double("basis", "unitarity_tol", 1e-4);
  if (!(sc.points_per_wavelength >= 4.0))
    throw ConfigError("[basis] points_per_wavelength must be >= 4");
  if (!(sc.outer_factor > 2.0))
    throw ConfigError("[basis] outer_factor must exceed 2");
  if (!(sc.unitarity_tol > 0.0))
    throw ConfigError("[basis] unitarity_tol must be positive");
  for (double d : sc.defects)
    if (!std::isfinite(d))
      throw ConfigError("[basis] defects must be finite");

  // The basis set itself validates the window/m consistency; surface any
  // complaint as a configuration problem.
  QuantumDefects defects(sc.defects);
  BasisSet basis = [&] {
    try {
      return BasisSet(sc.n_min, sc.n_max, sc.l_max, sc.m, defects);
    } catch (const Error &e) {
      throw ConfigError(std::string("[basis] window invalid: ") + e.what());
    }
  }();

  // --- [packet] ---
  if (!cfg.has_section("packet"))
    throw ConfigError("missing [packet] section");
  sc.packet_n_lo = static_cast<int>(cfg.require_int("packet", "n_lo"));
  sc.packet_n_hi = static_cast<int>(cfg.require_int("packet", "n_hi"));
  sc.packet_l = static_cast<int>(cfg.get_int("packet", "l", 1));
  sc.packet_weights = cfg.get_double_list("packet", "amplitudes");
  sc.packet_phases = cfg.get_double_list("packet", "phases");
  sc.omega_g =
      cfg.get_double("packet", "launch_energy_au", kDefaultLaunchEnergyAu);
  if (sc.packet_n_lo > sc.packet_n_hi)
    throw ConfigError("[packet] n_lo exceeds n_hi");
  const size_t npk =
      static_cast<size_t>(sc.packet_n_hi - sc.packet_n_lo + 1);
  if (sc.packet_weights.empty())
    sc.packet_weights.assign(npk, 1.0);
  if (sc.packet_phases.empty())
    sc.packet_phases.assign(npk, 0.0);
  if (sc.packet_weights.size() != npk)
    throw ConfigError("[packet] amplitudes: expected " + std::to_string(npk) +
                      " entries, got " +
                      std::to_string(sc.packet_weights.size()));
  if (sc.packet_phases.size() != npk)
    throw ConfigError("[packet] phases: expected " + std::to_string(npk) +
                      " entries, got " + std::to_string(sc.packet_phases.size()));
  for (int n = sc.packet_n_lo; n <= sc.packet_n_hi; ++n)
    if (!basis.contains(n, sc.packet_l))
      throw ConfigError("[packet] state n=" + std::to_string(n) +
                        " l=" + std::to_string(sc.packet_l) +
                        " lies outside the basis window");
  if (!std::isfinite(sc.omega_g))
    throw ConfigError("[packet] launch_energy_au must be finite");

  // --- [hcp] ---
  sc.hcp_enabled = cfg.has_section("hcp") &&
                   cfg.get_bool("hcp", "enabled", true);
  sc.l_max_sum =
      static_cast<int>(cfg.get_int("hcp", "l_max_sum", sc.l_max + 1));
  sc.quadrature_stride =
      static_cast<int>(cfg.get_int("hcp", "quadrature_stride", 3));
  sc.check_n_lo =
      static_cast<int>(cfg.get_int("hcp", "check_n_lo", sc.packet_n_lo));
  sc.check_n_hi =
      static_cast<int>(cfg.get_int("hcp", "check_n_hi", sc.packet_n_hi));
  sc.check_l = static_cast<int>(cfg.get_int("hcp", "check_l", sc.packet_l));
  sc.impulse_au = cfg.get_double("hcp", "impulse_au", 0.0);
  sc.tau_hcp_ps = cfg.get_double("hcp", "tau_hcp_ps", 0.0);
  sc.delay_scan_start_ps = cfg.get_double("hcp", "delay_scan_start_ps", 0.0);
  sc.delay_scan_end_ps = cfg.get_double("hcp", "delay_scan_end_ps", 0.0);
  sc.delay_scan_step_ps = cfg.get_double("hcp", "delay_scan_step_ps", 0.0);
  if (sc.hcp_enabled) {
    if (!cfg.has("hcp", "impulse_au"))
      throw ConfigError("[hcp] impulse_au is required when the kick is "
                        "enabled");
    if (sc.l_max_sum < 0)
      throw ConfigError("[hcp] l_max_sum must be >= 0");
    if (sc.quadrature_stride < 1)
      throw ConfigError("[hcp] quadrature_stride must be >= 1");
    if (!basis.contains(sc.check_n_lo, sc.check_l) ||
        !basis.contains(sc.check_n_hi, sc.check_l))
      throw ConfigError("[hcp] unitarity check window lies outside the basis");
    if (!(sc.tau_hcp_ps >= 0.0))
      throw ConfigError("[hcp] tau_hcp_ps must be >= 0");
  }

  // --- [channels] ---
  if (cfg.has("channels", "states")) {
    std::string raw = cfg.require_string("channels", "states");
    std::istringstream ss(raw);
    std::string tok;
    while (ss >> tok)
      sc.channel_states.push_back(parse_state_label(tok));
  } else {
    for (int n = sc.packet_n_lo; n <= sc.packet_n_hi; ++n)
      sc.channel_states.emplace_back(n, sc.packet_l);
  }
  sc.ref_amplitudes = cfg.get_double_list("channels", "reference_amplitudes");
  sc.ref_phases = cfg.get_double_list("channels", "reference_phases");
  if (sc.channel_states.empty())
    throw ConfigError("[channels] states list is empty");
  for (const auto &[n, l] : sc.channel_states)
    if (!basis.contains(n, l))
      throw ConfigError("[channels] state n=" + std::to_string(n) +
                        " l=" + std::to_string(l) +
                        " lies outside the basis window");
  if (sc.ref_amplitudes.empty()) {
    // Default reference packet: a copy of the launch packet, so matching
    // channels interfere at full contrast.
    double norm2 = 0.0;
    for (double w : sc.packet_weights)
      norm2 += w * w;
    for (const auto &[n, l] : sc.channel_states) {
      double amp = 0.0;
      if (l == sc.packet_l && n >= sc.packet_n_lo && n <= sc.packet_n_hi)
        amp = sc.packet_weights[static_cast<size_t>(n - sc.packet_n_lo)] /
              std::sqrt(norm2);
      sc.ref_amplitudes.push_back(amp);
    }
  }
  if (sc.ref_phases.empty())
    sc.ref_phases.assign(sc.channel_states.size(), 0.0);
  if (sc.ref_amplitudes.size() != sc.channel_states.size())
    throw ConfigError("[channels] reference_amplitudes: expected " +
                      std::to_string(sc.channel_states.size()) +
                      " entries, got " +
                      std::to_string(sc.ref_amplitudes.size()));
  if (sc.ref_phases.size() != sc.channel_states.size())
    throw ConfigError("[channels] reference_phases: expected " +
                      std::to_string(sc.channel_states.size()) +
                      " entries, got " + std::to_string(sc.ref_phases.size()));
  for (double a : sc.ref_amplitudes)
    if (!(a >= 0.0))
      throw ConfigError("[channels] reference_amplitudes must be >= 0");

  // --- [noise] ---
  sc.relative_rms = cfg.get_double("noise", "relative_rms", 0.0);
  if (!(sc.relative_rms >= 0.0))
    throw ConfigError("[noise] relative_rms must be >= 0");

  // --- [scan] ---
  if (cfg.has_section("scan")) {
    sc.tau_start_ps = cfg.require_double("scan", "tau_start_ps");
    sc.tau_end_ps = cfg.require_double("scan", "tau_end_ps");
    sc.tau_step_ps = cfg.require_double("scan", "tau_step_ps");
    sc.shots = cfg.require_int("scan", "shots");
    sc.jitter_periods = cfg.get_int("scan", "jitter_periods", 3);
    long seed = cfg.get_int("scan", "seed", 1);
    if (seed < 0)
      throw ConfigError("[scan] seed must be >= 0");
    sc.seed = static_cast<uint64_t>(seed);
    if (!(sc.tau_step_ps > 0.0))
      throw ConfigError("[scan] tau_step_ps must be positive");
    if (!(sc.tau_end_ps > sc.tau_start_ps))
      throw ConfigError("[scan] tau_end_ps must exceed tau_start_ps");
    if (!(sc.tau_start_ps >= 0.0))
      throw ConfigError("[scan] tau_start_ps must be >= 0");
    if (sc.shots < 2)
      throw ConfigError("[scan] shots must be >= 2");
    if (sc.jitter_periods < 0)
      throw ConfigError("[scan] jitter_periods must be >= 0");
    if (sc.hcp_enabled) {
      // The impulse must land while only the first packet exists: before
      // the reference packet is created at the earliest scanned delay.
      if (!(sc.tau_hcp_ps < sc.tau_start_ps))
        throw ConfigError("[hcp] tau_hcp_ps must precede [scan] "
                          "tau_start_ps: the kick acts on the first packet "
                          "only");
      if (sc.delay_scan_step_ps != 0.0 &&
          !(sc.delay_scan_end_ps < sc.tau_start_ps))
        throw ConfigError("[hcp] delay scan must end before [scan] "
                          "tau_start_ps");
    }
  } else {
    sc.shots = 0; // commands that need an ensemble reject this later
  }

  // --- [output] ---
  sc.out_directory = cfg.get_string("output", "directory", "out");
  sc.prefix = cfg.get_string("output", "prefix", "run");
  sc.write_ensemble = cfg.get_bool("output", "write_ensemble", true);
  if (sc.prefix.empty())
    throw ConfigError("[output] prefix must not be empty");

  cfg.reject_unknown_keys();
  return sc;
}

} // namespace rydkick

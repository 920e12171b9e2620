#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rydkick {

// Fully typed, validated run description. One INI file drives every
// command; unused sections are tolerated (a scan config can also serve the
// basis command), unknown keys are not.
struct Scenario {
  // [basis]
  int n_min = 0, n_max = 0, l_max = 0, m = 0;
  std::vector<double> defects;       // per-l quantum defects
  double points_per_wavelength = 40.0;
  double outer_factor = 2.5;
  double unitarity_tol = 1e-4;

  // [packet]
  int packet_n_lo = 0, packet_n_hi = 0, packet_l = 1;
  std::vector<double> packet_weights; // relative magnitudes, one per n
  std::vector<double> packet_phases;  // radians, one per n
  double omega_g = 0.0;               // launch-state energy (a.u.)

  // [hcp]
  bool hcp_enabled = true;
  double impulse_au = 0.0;
  double tau_hcp_ps = 0.0;
  int l_max_sum = 0;          // multipole cutoff for the kick matrix
  int quadrature_stride = 3;
  int check_n_lo = 0, check_n_hi = 0, check_l = 0; // unitarity window
  double delay_scan_start_ps = 0.0; // kick-time sweep for hcp-scan
  double delay_scan_end_ps = 0.0;
  double delay_scan_step_ps = 0.0;

  // [channels]
  std::vector<std::pair<int, int>> channel_states; // (n, l)
  std::vector<double> ref_amplitudes;
  std::vector<double> ref_phases;

  // [noise]
  double relative_rms = 0.0;

  // [scan]
  double tau_start_ps = 0.0, tau_end_ps = 0.0, tau_step_ps = 0.0;
  long shots = 0;
  long jitter_periods = 3;
  uint64_t seed = 1;

  // [output]
  std::string out_directory = "out";
  std::string prefix = "run";
  bool write_ensemble = true;

  std::string config_hash; // of the raw file bytes

  // Delay grids, inclusive of the end point up to rounding.
  std::vector<double> tau_grid_ps() const;
  std::vector<double> hcp_delay_grid_ps() const;
};

// Parse "30p" into (30, 1); letters follow the spectroscopic sequence
// s p d f g h i k l m n o. Throws ConfigError on anything else.
std::pair<int, int> parse_state_label(const std::string &token);

// Read + validate a scenario file. Every cross-reference is checked here
// (packet and channels inside the basis window, kick before the reference
// delay grid, positive steps, matching list lengths), so commands can
// assume a coherent description and no output is produced from a bad one.
Scenario load_scenario(const std::string &path);

} // namespace rydkick

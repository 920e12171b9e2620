#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rydkick/analysis.hpp"
#include "rydkick/measurement.hpp"

namespace rydkick {

// Shared provenance header written as '#' comments at the top of every
// output file, so any result can be traced to the exact configuration and
// seed that produced it.
struct Provenance {
  std::string command;
  std::string config_hash; // hash of the raw config bytes
  uint64_t seed = 0;
  bool has_seed = false;
};

// %.17g rendering (shortest round-trippable is not needed; fixed precision
// keeps reruns byte-identical). NaN renders as "nan".
std::string format_double(double v);

void write_ensemble_csv(const std::string &path, const Ensemble &ensemble,
                        const Provenance &prov);

struct EnsembleFile {
  Ensemble ensemble;
  uint64_t seed = 0;
  std::string config_hash;
};

// Parse a file produced by write_ensemble_csv. Throws ConfigError on
// malformed or non-rectangular content.
EnsembleFile read_ensemble_csv(const std::string &path);

void write_correlation_csv(const std::string &path,
                           const CorrelationCurves &curves,
                           const Provenance &prov);

struct SummaryRow {
  std::string pair;
  QuadratureFit fit;
  double beat_frequency_au = 0.0; // refined |delta omega|
};

// Per-pair amplitude/phase summary. An unresolved phase is written as the
// literal "undefined" in both the phase and phase_err columns.
void write_summary_csv(const std::string &path,
                       const std::vector<SummaryRow> &rows,
                       const Provenance &prov);

struct HcpScanRow {
  double tau_hcp_ps = 0.0;
  std::string pair;
  double amplitude_on = 0.0;
  double amplitude_off = 0.0;
  double amplitude_ratio = 0.0;
  double phase_on = 0.0;       // NaN = undefined
  double phase_off = 0.0;      // NaN = undefined
  double phase_shift = 0.0;    // NaN = undefined
  double p_product = 0.0;
};

void write_hcp_scan_csv(const std::string &path,
                        const std::vector<HcpScanRow> &rows,
                        const Provenance &prov);

} // namespace rydkick

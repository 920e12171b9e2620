#include "rydkick/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rydkick/constants.hpp"
#include "rydkick/errors.hpp"

namespace rydkick {

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write output file: " + path);
  return out;
}

void write_header(std::ofstream &out, const Provenance &prov) {
  out << "# version: " << kVersion << "\n";
  out << "# command: " << prov.command << "\n";
  out << "# config_hash: " << prov.config_hash << "\n";
  if (prov.has_seed)
    out << "# seed: " << prov.seed << "\n";
}

void finish(std::ofstream &out, const std::string &path) {
  out.flush();
  if (!out)
    throw ConfigError("write failed for output file: " + path);
}

} // namespace

void write_ensemble_csv(const std::string &path, const Ensemble &ensemble,
                        const Provenance &prov) {
  std::ofstream out = open_out(path);
  write_header(out, prov);
  out << "# channels:";
  for (const auto &label : ensemble.channel_labels)
    out << " " << label;
  out << "\n";
  out << "tau_ps,shot,channel,signal\n";
  for (size_t d = 0; d < ensemble.n_delays(); ++d) {
    const std::string tau = format_double(ensemble.tau_ps[d]);
    const Eigen::MatrixXd &block = ensemble.signals[d];
    for (Eigen::Index s = 0; s < block.rows(); ++s)
      for (size_t k = 0; k < ensemble.n_channels(); ++k)
        out << tau << "," << s << "," << ensemble.channel_labels[k] << ","
            << format_double(block(s, static_cast<Eigen::Index>(k))) << "\n";
  }
  finish(out, path);
}

EnsembleFile read_ensemble_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open ensemble file: " + path);
  EnsembleFile file;
  Ensemble &ens = file.ensemble;

  std::string line;
  bool saw_columns = false;
  size_t cells = 0;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "seed:")
        ss >> file.seed;
      else if (key == "config_hash:")
        ss >> file.config_hash;
      continue;
    }
    if (!saw_columns) {
      if (line != "tau_ps,shot,channel,signal")
        throw ConfigError("unexpected ensemble column header: " + line);
      saw_columns = true;
      continue;
    }
    std::istringstream ss(line);
    std::string tau_s, shot_s, channel, signal_s;
    if (!std::getline(ss, tau_s, ',') || !std::getline(ss, shot_s, ',') ||
        !std::getline(ss, channel, ',') || !std::getline(ss, signal_s))
      throw ConfigError("malformed ensemble row: " + line);
    double tau = 0.0, signal = 0.0;
    long shot = 0;
    try {
      tau = std::stod(tau_s);
      shot = std::stol(shot_s);
      signal = std::stod(signal_s);
    } catch (const std::exception &) {
      throw ConfigError("malformed ensemble row: " + line);
    }

    if (ens.tau_ps.empty() || ens.tau_ps.back() != tau) {
      for (double seen : ens.tau_ps)
        if (seen == tau)
          throw ConfigError("ensemble delays not grouped: tau " + tau_s +
                            " appears in two separate blocks");
      ens.tau_ps.push_back(tau);
      ens.signals.emplace_back();
    }

    size_t ch = 0;
    for (; ch < ens.channel_labels.size(); ++ch)
      if (ens.channel_labels[ch] == channel)
        break;
    if (ch == ens.channel_labels.size()) {
      if (ens.tau_ps.size() > 1 || shot > 0)
        throw ConfigError("channel " + channel +
                          " appears mid-file; channel set must be "
                          "established by the first shot");
      ens.channel_labels.push_back(channel);
    }

    Eigen::MatrixXd &block = ens.signals.back();
    if (shot >= block.rows()) {
      Eigen::MatrixXd grown(shot + 1,
                            static_cast<Eigen::Index>(
                                std::max(ens.channel_labels.size(),
                                         static_cast<size_t>(block.cols()))));
      grown.setZero();
      if (block.size() > 0)
        grown.topLeftCorner(block.rows(), block.cols()) = block;
      block = std::move(grown);
    }
    if (static_cast<Eigen::Index>(ch) >= block.cols()) {
      Eigen::MatrixXd grown(block.rows(), static_cast<Eigen::Index>(ch) + 1);
      grown.setZero();
      if (block.size() > 0)
        grown.topLeftCorner(block.rows(), block.cols()) = block;
      block = std::move(grown);
    }
    block(shot, static_cast<Eigen::Index>(ch)) = signal;
    ++cells;
  }
  if (ens.tau_ps.empty())
    throw ConfigError("ensemble file has no data rows: " + path);
  const Eigen::Index nch = static_cast<Eigen::Index>(ens.channel_labels.size());
  const Eigen::Index shots = ens.signals.front().rows();
  for (const auto &block : ens.signals)
    if (block.rows() != shots || block.cols() != nch)
      throw ConfigError("ensemble file is not rectangular (same shots and "
                        "channels at every delay): " +
                        path);
  // dimension checks cannot see a hole that block growth zero-filled
  if (cells != ens.tau_ps.size() * static_cast<size_t>(shots) *
                   static_cast<size_t>(nch))
    throw ConfigError("ensemble file is missing shot rows: " + path);
  return file;
}

void write_correlation_csv(const std::string &path,
                           const CorrelationCurves &curves,
                           const Provenance &prov) {
  std::ofstream out = open_out(path);
  write_header(out, prov);
  out << "tau_ps,pair,r\n";
  for (size_t d = 0; d < curves.tau_ps.size(); ++d) {
    const std::string tau = format_double(curves.tau_ps[d]);
    for (size_t p = 0; p < curves.pairs.size(); ++p)
      out << tau << "," << curves.pairs[p].label << ","
          << format_double(curves.r(static_cast<Eigen::Index>(p),
                                    static_cast<Eigen::Index>(d)))
          << "\n";
  }
  finish(out, path);
}

void write_summary_csv(const std::string &path,
                       const std::vector<SummaryRow> &rows,
                       const Provenance &prov) {
  std::ofstream out = open_out(path);
  write_header(out, prov);
  out << "pair,amplitude,amplitude_err,phase,phase_err,beat_frequency_au\n";
  for (const auto &row : rows) {
    out << row.pair << "," << format_double(row.fit.amplitude) << ","
        << format_double(row.fit.amplitude_se) << ",";
    if (row.fit.phase_defined)
      out << format_double(row.fit.phase) << ","
          << format_double(row.fit.phase_se);
    else
      out << "undefined,undefined";
    out << "," << format_double(row.beat_frequency_au) << "\n";
  }
  finish(out, path);
}

void write_hcp_scan_csv(const std::string &path,
                        const std::vector<HcpScanRow> &rows,
                        const Provenance &prov) {
  std::ofstream out = open_out(path);
  write_header(out, prov);
  out << "tau_hcp_ps,pair,amplitude_on,amplitude_off,amplitude_ratio,"
         "phase_on,phase_off,phase_shift,p_product\n";
  auto phase_cell = [](double v) {
    return std::isnan(v) ? std::string("undefined") : format_double(v);
  };
  for (const auto &row : rows) {
    out << format_double(row.tau_hcp_ps) << "," << row.pair << ","
        << format_double(row.amplitude_on) << ","
        << format_double(row.amplitude_off) << ","
        << format_double(row.amplitude_ratio) << ","
        << phase_cell(row.phase_on) << "," << phase_cell(row.phase_off) << ","
        << phase_cell(row.phase_shift) << "," << format_double(row.p_product)
        << "\n";
  }
  finish(out, path);
}

} // namespace rydkick

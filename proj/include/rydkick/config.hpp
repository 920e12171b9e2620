#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rydkick {

// Minimal INI-style configuration reader: [section] headers, key = value
// pairs, '#'/';' comments, whitespace-separated lists. Typed getters record
// which keys were consumed so unrecognized keys can be rejected afterwards
// (catches typos instead of silently using defaults).
class Config {
public:
  static Config from_file(const std::string &path);
  static Config from_string(const std::string &text);

  bool has(const std::string &section, const std::string &key) const;
  bool has_section(const std::string &section) const;

  std::string get_string(const std::string &section, const std::string &key,
                         const std::string &fallback) const;
  std::string require_string(const std::string &section,
                             const std::string &key) const;

  double get_double(const std::string &section, const std::string &key,
                    double fallback) const;
  double require_double(const std::string &section,
                        const std::string &key) const;

  long get_int(const std::string &section, const std::string &key,
               long fallback) const;
  long require_int(const std::string &section, const std::string &key) const;

  bool get_bool(const std::string &section, const std::string &key,
                bool fallback) const;

  // Whitespace-separated list of reals; empty if key absent.
  std::vector<double> get_double_list(const std::string &section,
                                      const std::string &key) const;
  std::vector<long> get_int_list(const std::string &section,
                                 const std::string &key) const;

  // Throws ConfigError naming the first key never consumed by any getter.
  void reject_unknown_keys() const;

  // FNV-1a hash of the raw file bytes, as 16 hex digits (provenance header).
  const std::string &content_hash() const { return hash_; }

private:
  std::string raw_get(const std::string &section, const std::string &key,
                      bool required, bool *found) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
  mutable std::set<std::string> consumed_; // "section.key"
  std::string hash_;
};

} // namespace rydkick

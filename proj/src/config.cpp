#include "rydkick/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rydkick/errors.hpp"

namespace rydkick {

namespace {

std::string trim(const std::string &s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return s.substr(a, b - a);
}

std::string fnv1a_hex(const std::string &bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

} // namespace

Config Config::from_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string &text) {
  Config cfg;
  cfg.hash_ = fnv1a_hex(text);

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments; '#' and ';' start a comment anywhere on the line.
    size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos)
      line = line.substr(0, cut);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section name");
      cfg.sections_[section]; // register even if empty
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value, got: " + line);
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any [section]");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    auto &sec = cfg.sections_[section];
    if (sec.count(key))
      throw ConfigError("duplicate key [" + section + "] " + key);
    sec[key] = val;
  }
  return cfg;
}

std::string Config::raw_get(const std::string &section, const std::string &key,
                            bool required, bool *found) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end() || !sit->second.count(key)) {
    if (required)
      throw ConfigError("missing required key [" + section + "] " + key);
    if (found)
      *found = false;
    return {};
  }
  consumed_.insert(section + "." + key);
  if (found)
    *found = true;
  return sit->second.at(key);
}

bool Config::has(const std::string &section, const std::string &key) const {
  auto sit = sections_.find(section);
  return sit != sections_.end() && sit->second.count(key) > 0;
}

bool Config::has_section(const std::string &section) const {
  return sections_.count(section) > 0;
}

std::string Config::get_string(const std::string &section,
                               const std::string &key,
                               const std::string &fallback) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  return found ? v : fallback;
}

std::string Config::require_string(const std::string &section,
                                   const std::string &key) const {
  return raw_get(section, key, true, nullptr);
}

namespace {

double parse_double(const std::string &section, const std::string &key,
                    const std::string &v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size())
      throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception &) {
    throw ConfigError("[" + section + "] " + key +
                      ": not a real number: " + v);
  }
}

long parse_int(const std::string &section, const std::string &key,
               const std::string &v) {
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size())
      throw std::invalid_argument("trailing characters");
    return n;
  } catch (const std::exception &) {
    throw ConfigError("[" + section + "] " + key + ": not an integer: " + v);
  }
}

} // namespace

double Config::get_double(const std::string &section, const std::string &key,
                          double fallback) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  return found ? parse_double(section, key, v) : fallback;
}

double Config::require_double(const std::string &section,
                              const std::string &key) const {
  return parse_double(section, key, raw_get(section, key, true, nullptr));
}

long Config::get_int(const std::string &section, const std::string &key,
                     long fallback) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  return found ? parse_int(section, key, v) : fallback;
}

long Config::require_int(const std::string &section,
                         const std::string &key) const {
  return parse_int(section, key, raw_get(section, key, true, nullptr));
}

bool Config::get_bool(const std::string &section, const std::string &key,
                      bool fallback) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  if (!found)
    return fallback;
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw ConfigError("[" + section + "] " + key + ": not a boolean: " + v);
}

std::vector<double> Config::get_double_list(const std::string &section,
                                            const std::string &key) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  std::vector<double> out;
  if (!found)
    return out;
  std::istringstream ss(v);
  std::string tok;
  while (ss >> tok)
    out.push_back(parse_double(section, key, tok));
  return out;
}

std::vector<long> Config::get_int_list(const std::string &section,
                                       const std::string &key) const {
  bool found = false;
  std::string v = raw_get(section, key, false, &found);
  std::vector<long> out;
  if (!found)
    return out;
  std::istringstream ss(v);
  std::string tok;
  while (ss >> tok)
    out.push_back(parse_int(section, key, tok));
  return out;
}

void Config::reject_unknown_keys() const {
  for (const auto &[section, kv] : sections_)
    for (const auto &[key, value] : kv) {
      (void)value;
      if (!consumed_.count(section + "." + key))
        throw ConfigError("unrecognized key [" + section + "] " + key);
    }
}

} // namespace rydkick

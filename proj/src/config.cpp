#include "ski/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ski {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& tok) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw std::runtime_error("config: malformed number '" + tok + "'");
  return v;
}

// Tokens are separated by commas or whitespace; "a:step:b" expands to an
// inclusive arithmetic progression.
std::vector<double> parse_list(const std::string& raw) {
  std::string s = raw;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    auto c1 = tok.find(':');
    if (c1 != std::string::npos) {
      auto c2 = tok.find(':', c1 + 1);
      if (c2 == std::string::npos)
        throw std::runtime_error("config: range needs a:step:b, got '" + tok + "'");
      double a = parse_double(tok.substr(0, c1));
      double step = parse_double(tok.substr(c1 + 1, c2 - c1 - 1));
      double b = parse_double(tok.substr(c2 + 1));
      if (step == 0.0) throw std::runtime_error("config: zero range step");
      if ((b - a) / step < -1e-12)
        throw std::runtime_error("config: empty range '" + tok + "'");
      for (double v = a; (step > 0) ? v <= b + 1e-9 * std::abs(step)
                                    : v >= b - 1e-9 * std::abs(step);
           v += step)
        out.push_back(v);
    } else {
      out.push_back(parse_double(tok));
    }
  }
  return out;
}

}  // namespace

KvConfig KvConfig::from_string(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    if (cfg.values_.count(key))
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": duplicate key '" + key + "'");
    cfg.values_[key] = val;
  }
  return cfg;
}

KvConfig KvConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

bool KvConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void KvConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
  consumed_.erase(key);
}

std::string KvConfig::get_string(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error("config: missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string KvConfig::get_string(const std::string& key,
                                 const std::string& fallback) {
  consumed_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KvConfig::get_double(const std::string& key) {
  return parse_double(get_string(key));
}

double KvConfig::get_double(const std::string& key, double fallback) {
  auto it = values_.find(key);
  consumed_.insert(key);
  return it == values_.end() ? fallback : parse_double(it->second);
}

int KvConfig::get_int(const std::string& key, int fallback) {
  double v = get_double(key, static_cast<double>(fallback));
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9)
    throw std::runtime_error("config: key '" + key + "' must be an integer");
  return static_cast<int>(r);
}

std::uint64_t KvConfig::get_u64(const std::string& key, std::uint64_t fallback) {
  auto it = values_.find(key);
  consumed_.insert(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw std::runtime_error("config: key '" + key + "' must be an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

bool KvConfig::get_bool(const std::string& key, bool fallback) {
  std::string v = get_string(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error("config: key '" + key + "' must be a boolean");
}

std::vector<double> KvConfig::get_double_list(
    const std::string& key, const std::vector<double>& fallback) {
  auto it = values_.find(key);
  consumed_.insert(key);
  if (it == values_.end()) return fallback;
  return parse_list(it->second);
}

std::vector<int> KvConfig::get_int_list(const std::string& key,
                                        const std::vector<int>& fallback) {
  auto it = values_.find(key);
  consumed_.insert(key);
  if (it == values_.end()) return fallback;
  std::vector<int> out;
  for (double v : parse_list(it->second)) {
    double r = std::round(v);
    if (std::abs(v - r) > 1e-9)
      throw std::runtime_error("config: key '" + key + "' must hold integers");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

void KvConfig::check_consumed() const {
  std::string unknown;
  for (const auto& [k, v] : values_)
    if (!consumed_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty())
    throw std::runtime_error("config: unknown key(s): " + unknown);
}

}  // namespace ski

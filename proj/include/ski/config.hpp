// Key-value run configuration: "key = value" lines, '#' comments, lists as
// comma- or space-separated values with an a:step:b range shorthand.
// Every key must be consumed by the reader; unknown keys are an error.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ski {

class KvConfig {
 public:
  static KvConfig from_string(const std::string& text);
  static KvConfig from_file(const std::string& path);

  bool has(const std::string& key) const;
  // Inserts or overrides one entry; the key counts as unread again.
  void set(const std::string& key, const std::string& value);
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  double get_double(const std::string& key);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback);
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& fallback);

  // Throws listing every key that was never read.
  void check_consumed() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace ski

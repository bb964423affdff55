#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brwlab/errors.hpp"

namespace brw {

// Plain-text key = value configuration with [section] prefixes. Command-line
// overrides take precedence over the file, the file over defaults.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text, const std::string& origin = "<inline>");
  void apply_override(const std::string& key_equals_value);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& key,
                                         const std::vector<std::int64_t>& fallback) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  // canonical dump: sorted keys, one per line (hashed into the manifest)
  std::string canonical_text() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace brw

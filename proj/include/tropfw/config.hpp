#pragma once

// Minimal TOML-like configuration: `key = value` lines, optional `[section]`
// headers that prefix keys as `section.key`, `#` comments. Values are
// numbers, booleans, double-quoted strings, or one-line arrays of those.

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tropfw {

class Config {
 public:
  /// Throws ParseError on malformed lines.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::vector<std::string> keys() const;

  // Typed accessors throw ConfigError(key, ...) when the key is missing or
  // holds the wrong kind of value.
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key) const;
  std::vector<std::int64_t> get_int_array(const std::string& key) const;
  std::vector<std::string> get_string_array(const std::string& key) const;

  /// ConfigError naming the first key not in `allowed`.
  void reject_unknown(const std::set<std::string>& allowed) const;

  // Directory of the loaded file; relative paths in values resolve against it.
  const std::filesystem::path& base_directory() const noexcept { return base_; }

 private:
  struct Value {
    bool quoted = false;
    bool array = false;
    std::string scalar;
    std::vector<Value> items;
  };

  const Value& lookup(const std::string& key) const;

  std::map<std::string, Value> values_;
  std::filesystem::path base_;
};

}  // namespace tropfw

#include "tropfw/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tropfw/errors.hpp"

namespace tropfw {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config config;
  std::string section;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    const std::size_t line_start = offset;
    const std::string_view line = trim(strip_comment(text.substr(offset, end - offset)));
    offset = end + 1;
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_start);
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_key(name)) throw ParseError("invalid section name", line_start);
      section = std::string(name) + ".";
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_start);
    const std::string_view key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ParseError("invalid key '" + std::string(key) + "'", line_start);
    std::string_view raw = trim(line.substr(eq + 1));
    if (raw.empty()) throw ParseError("missing value for '" + std::string(key) + "'", line_start);

    auto parse_scalar = [&](std::string_view s) {
      Value v;
      s = trim(s);
      if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        v.quoted = true;
        v.scalar = std::string(s.substr(1, s.size() - 2));
      } else {
        if (s.empty() || s.find_first_of("\"[]") != std::string_view::npos) {
          throw ParseError("malformed value for '" + std::string(key) + "'", line_start);
        }
        v.scalar = std::string(s);
      }
      return v;
    };

    Value value;
    if (raw.front() == '[') {
      if (raw.back() != ']') throw ParseError("unterminated array for '" + std::string(key) + "'", line_start);
      value.array = true;
      const std::string_view inner = trim(raw.substr(1, raw.size() - 2));
      if (!inner.empty()) {
        std::size_t start = 0;
        bool in_string = false;
        for (std::size_t i = 0; i <= inner.size(); ++i) {
          if (i < inner.size() && inner[i] == '"') in_string = !in_string;
          if (i == inner.size() || (inner[i] == ',' && !in_string)) {
            const std::string_view item = trim(inner.substr(start, i - start));
            if (!item.empty() || i < inner.size()) value.items.push_back(parse_scalar(item));
            start = i + 1;
          }
        }
      }
    } else {
      value = parse_scalar(raw);
    }
    const std::string full = section + std::string(key);
    if (config.values_.count(full)) throw ParseError("duplicate key '" + full + "'", line_start);
    config.values_.emplace(full, std::move(value));
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    Config config = parse(buffer.str());
    config.base_ = path.parent_path();
    return config;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.offset());
  }
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

const Config::Value& Config::lookup(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing required key");
  return it->second;
}

namespace {

double to_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return value;
}

std::int64_t to_integer(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

std::string Config::get_string(const std::string& key) const {
  const Value& v = lookup(key);
  if (v.array || !v.quoted) throw ConfigError(key, "expected a quoted string");
  return v.scalar;
}

double Config::get_double(const std::string& key) const {
  const Value& v = lookup(key);
  if (v.array || v.quoted) throw ConfigError(key, "expected a number");
  return to_number(key, v.scalar);
}

std::int64_t Config::get_int(const std::string& key) const {
  const Value& v = lookup(key);
  if (v.array || v.quoted) throw ConfigError(key, "expected an integer");
  return to_integer(key, v.scalar);
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const Value& v = lookup(key);
  if (v.array || v.quoted) throw ConfigError(key, "expected an unsigned integer");
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(v.scalar.data(), v.scalar.data() + v.scalar.size(), value);
  if (ec != std::errc() || end != v.scalar.data() + v.scalar.size()) {
    throw ConfigError(key, "expected an unsigned integer, got '" + v.scalar + "'");
  }
  return value;
}

bool Config::get_bool(const std::string& key) const {
  const Value& v = lookup(key);
  if (!v.array && !v.quoted && v.scalar == "true") return true;
  if (!v.array && !v.quoted && v.scalar == "false") return false;
  throw ConfigError(key, "expected true or false");
}

std::vector<double> Config::get_double_array(const std::string& key) const {
  const Value& v = lookup(key);
  if (!v.array) throw ConfigError(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    if (v.items[i].quoted) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(to_number(key + "[" + std::to_string(i) + "]", v.items[i].scalar));
  }
  return out;
}

std::vector<std::int64_t> Config::get_int_array(const std::string& key) const {
  const Value& v = lookup(key);
  if (!v.array) throw ConfigError(key, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    if (v.items[i].quoted) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(to_integer(key + "[" + std::to_string(i) + "]", v.items[i].scalar));
  }
  return out;
}

std::vector<std::string> Config::get_string_array(const std::string& key) const {
  const Value& v = lookup(key);
  if (!v.array) throw ConfigError(key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    if (!v.items[i].quoted) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a quoted string");
    out.push_back(v.items[i].scalar);
  }
  return out;
}

void Config::reject_unknown(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_) {
    if (!allowed.count(k)) throw ConfigError(k, "unknown key");
  }
}

}  // namespace tropfw

#include "rfw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfw/core.hpp"

namespace rfw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

std::optional<double> to_double(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  if (t == "inf" || t == "+inf") return HUGE_VAL;
  if (t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError("empty section name", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no);
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full)) {
      throw ParseError("duplicate key '" + full + "' (first defined on line " +
                           std::to_string(cfg.entries_[full].line) + ")",
                       line_no);
    }
    cfg.entries_[full] = {value, line_no};
    cfg.order_.push_back(full);
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::size_t Config::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void Config::fail(const std::string& key, const std::string& msg) const {
  throw ParseError(key + ": " + msg, line_of(key));
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  auto it = entries_.find(key);
  std::string v = it == entries_.end() ? fallback : it->second.value;
  used_[key] = v;
  return v;
}

std::string Config::require_string(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError("missing required key '" + key + "'", 0);
  used_[key] = it->second.value;
  return it->second.value;
}

double Config::get_double(const std::string& key, double fallback) {
  auto it = entries_.find(key);
  double v = fallback;
  if (it != entries_.end()) {
    auto parsed = to_double(it->second.value);
    if (!parsed) fail(key, "expected a number, got '" + it->second.value + "'");
    v = *parsed;
  }
  used_[key] = v;
  return v;
}

std::optional<double> Config::get_optional_double(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  auto parsed = to_double(it->second.value);
  if (!parsed) fail(key, "expected a number, got '" + it->second.value + "'");
  used_[key] = *parsed;
  return parsed;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) {
  auto it = entries_.find(key);
  std::int64_t v = fallback;
  if (it != entries_.end()) {
    auto parsed = to_double(it->second.value);
    if (!parsed || std::floor(*parsed) != *parsed || std::abs(*parsed) > 9e15) {
      fail(key, "expected an integer, got '" + it->second.value + "'");
    }
    v = static_cast<std::int64_t>(*parsed);
  }
  used_[key] = v;
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) {
  auto it = entries_.find(key);
  bool v = fallback;
  if (it != entries_.end()) {
    const std::string& s = it->second.value;
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
      v = true;
    } else if (s == "false" || s == "0" || s == "no" || s == "off") {
      v = false;
    } else {
      fail(key, "expected a boolean, got '" + s + "'");
    }
  }
  used_[key] = v;
  return v;
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& fallback) {
  auto it = entries_.find(key);
  std::vector<std::string> v = it == entries_.end() ? fallback : split_list(it->second.value);
  if (it != entries_.end() && v.empty()) fail(key, "empty list");
  used_[key] = v;
  return v;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) {
  auto it = entries_.find(key);
  std::vector<double> v = fallback;
  if (it != entries_.end()) {
    v.clear();
    for (const auto& item : split_list(it->second.value)) {
      auto parsed = to_double(item);
      if (!parsed) fail(key, "expected a number, got '" + item + "'");
      v.push_back(*parsed);
    }
    if (v.empty()) fail(key, "empty list");
  }
  used_[key] = v;
  return v;
}

void Config::reject_unused() const {
  for (const auto& key : order_) {
    if (!used_.contains(key)) fail(key, "unknown key");
  }
}

}  // namespace rfw

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rfw {

/// Flat key/value experiment file. `[section]` headers prefix the keys that
/// follow ("[solver]\ngamma = 0.5" is the key "solver.gamma"); keys before
/// the first header are top level. '#' and ';' start comments.
///
/// Every lookup is recorded with its effective value so the run summary can
/// echo exactly what was used.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  std::optional<double> get_optional_double(const std::string& key);
  std::int64_t get_int(const std::string& key, std::int64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback);
  std::vector<double> get_double_list(const std::string& key, const std::vector<double>& fallback);

  /// Throws ParseError naming the first key never read, if any.
  void reject_unused() const;

  /// Effective values of every key read so far.
  const nlohmann::ordered_json& used() const { return used_; }

  /// Line on which a key was defined, 0 if absent.
  std::size_t line_of(const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  nlohmann::ordered_json used_ = nlohmann::ordered_json::object();
};

}  // namespace rfw

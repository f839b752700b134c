#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gpam {

/// Flat key=value configuration. `#` starts a comment; whitespace around
/// keys and values is trimmed. Later assignments override earlier ones.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config read(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  // Applies a `key=value` override.
  void assign(const std::string& pair);
  void merge(const Config& other);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double def) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int def) const;
  std::uint64_t get_uint(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t def) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool def) const;
  // Comma-separated reals.
  std::vector<double> get_doubles(const std::string& key,
                                  std::vector<double> def) const;
  // `a..b` inclusive, or a single integer.
  std::pair<int, int> get_range(const std::string& key,
                                std::pair<int, int> def) const;

  // Throws Config naming the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

  const std::map<std::string, std::string>& entries() const noexcept {
    return entries_;
  }
  std::string to_text() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::map<std::string, std::string> entries_;
};

std::pair<int, int> parse_range(const std::string& text);

}  // namespace gpam

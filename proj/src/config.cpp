#include "gpam/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gpam/errors.hpp"

namespace gpam {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(ErrorCode::Config, "key '" + key + "': cannot parse '" + text + "'");
  return value;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      fail(ErrorCode::Config,
           "line " + std::to_string(line_no) + ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Config,
          "cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void Config::assign(const std::string& pair) {
  const auto eq = pair.find('=');
  require(eq != std::string::npos && eq > 0, ErrorCode::Config,
          "expected key=value, got '" + pair + "'");
  set(trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

bool Config::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end())
    fail(ErrorCode::Config, "missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& def) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? def : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_number<double>(key, get_string(key));
}
double Config::get_double(const std::string& key, double def) const {
  return has(key) ? get_double(key) : def;
}
int Config::get_int(const std::string& key) const {
  return parse_number<int>(key, get_string(key));
}
int Config::get_int(const std::string& key, int def) const {
  return has(key) ? get_int(key) : def;
}
std::uint64_t Config::get_uint(const std::string& key) const {
  return parse_number<std::uint64_t>(key, get_string(key));
}
std::uint64_t Config::get_uint(const std::string& key,
                               std::uint64_t def) const {
  return has(key) ? get_uint(key) : def;
}

bool Config::get_bool(const std::string& key) const {
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorCode::Config, "key '" + key + "': expected a boolean");
}
bool Config::get_bool(const std::string& key, bool def) const {
  return has(key) ? get_bool(key) : def;
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        std::vector<double> def) const {
  if (!has(key)) return def;
  std::vector<double> out;
  std::stringstream ss(get_string(key));
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_number<double>(key, trim(item)));
  require(!out.empty(), ErrorCode::Config, "key '" + key + "' is empty");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_number<int>("range", trim(text));
    return {v, v};
  }
  const int a = parse_number<int>("range", trim(text.substr(0, dots)));
  const int b = parse_number<int>("range", trim(text.substr(dots + 2)));
  require(a <= b, ErrorCode::Config, "empty range '" + text + "'");
  return {a, b};
}

std::pair<int, int> Config::get_range(const std::string& key,
                                      std::pair<int, int> def) const {
  return has(key) ? parse_range(get_string(key)) : def;
}

void Config::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : entries_)
    if (std::find(known.begin(), known.end(), k) == known.end())
      fail(ErrorCode::Config, "unknown config key '" + k + "'");
}

std::string Config::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

void Config::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io,
          "cannot open '" + path.string() + "' for writing");
  out << to_text();
}

}  // namespace gpam

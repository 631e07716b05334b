#include "hetcache/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hetcache {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  // std::from_chars for double is available in libstdc++ 11.
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out))
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k{
      "num_files",    "zipf_exponent", "cache_size",    "alpha",
      "fragments_per_file", "mbs_radius_m", "sbs_spacing_m", "sbs_radius_m",
      "user_density_per_m2", "seed"};
  return k;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "num_files") num_files = parse_unsigned(key, value);
  else if (key == "zipf_exponent") zipf_exponent = parse_double(key, value);
  else if (key == "cache_size") cache_size = parse_double(key, value);
  else if (key == "alpha") alpha = parse_double(key, value);
  else if (key == "fragments_per_file") fragments_per_file = parse_unsigned(key, value);
  else if (key == "mbs_radius_m") mbs_radius_m = parse_double(key, value);
  else if (key == "sbs_spacing_m") sbs_spacing_m = parse_double(key, value);
  else if (key == "sbs_radius_m") sbs_radius_m = parse_double(key, value);
  else if (key == "user_density_per_m2") user_density_per_m2 = parse_double(key, value);
  else if (key == "seed") seed = parse_unsigned(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  if (num_files == 0) throw ConfigError("num_files must be >= 1");
  if (zipf_exponent < 0.0) throw ConfigError("zipf_exponent must be >= 0");
  if (!(cache_size > 0.0 && cache_size < static_cast<double>(num_files)))
    throw ConfigError("cache_size must satisfy 0 < cache_size < num_files");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (fragments_per_file == 0) throw ConfigError("fragments_per_file must be >= 1");
  if (!(mbs_radius_m > 0.0)) throw ConfigError("mbs_radius_m must be > 0");
  if (!(sbs_spacing_m > 0.0)) throw ConfigError("sbs_spacing_m must be > 0");
  if (!(user_density_per_m2 > 0.0)) throw ConfigError("user_density_per_m2 must be > 0");
  const double lo = sbs_spacing_m / std::sqrt(2.0);
  if (!(sbs_radius_m >= lo && sbs_radius_m <= sbs_spacing_m))
    throw ConfigError("sbs_radius_m must lie in [sbs_spacing_m/sqrt(2), sbs_spacing_m]");
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace hetcache

#pragma once

// Run configuration read from a plain key/value file:
//
//   # comment
//   num_files = 200
//   zipf_exponent = 0.7
//
// Unknown keys and malformed values are errors. Command-line flags with the
// same names override file values.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hetcache {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t num_files = 200;
  double zipf_exponent = 0.7;
  double cache_size = 20.0;
  double alpha = 0.0;
  std::size_t fragments_per_file = 100;
  double mbs_radius_m = 500.0;
  double sbs_spacing_m = 60.0;
  double sbs_radius_m = 45.0;
  double user_density_per_m2 = 0.05;
  std::uint64_t seed = 1;

  /// Applies one `key = value` assignment. Throws ConfigError.
  void set(std::string_view key, std::string_view value);

  /// Range checks across fields. Throws ConfigError.
  void validate() const;

  static const std::vector<std::string>& keys();
};

RunConfig parse_config_text(std::string_view text);
RunConfig load_config_file(const std::filesystem::path& path);

}  // namespace hetcache

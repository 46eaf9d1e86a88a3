#pragma once

// Prime-range sweeps with ordered CSV output and a resumable manifest.
//
// Each sweep kind writes <out_dir>/<kind>.csv and <out_dir>/<kind>.manifest.json.
// The manifest records the configuration, the completed work units (primes,
// dyadic X values or T values) and a SHA-256 digest of the CSV. Rerunning with
// an unchanged configuration computes only the units missing from the
// manifest; any configuration change starts over.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thetamom/moments.hpp"

namespace thetamom {

enum class SweepKind { moments, garaev, nonvanishing, mollifier, divisor };

[[nodiscard]] std::string to_string(SweepKind kind);
[[nodiscard]] std::optional<SweepKind> parse_sweep_kind(std::string_view s);

struct SweepConfig {
  SweepKind kind = SweepKind::moments;
  std::uint64_t x_min = 3;
  std::uint64_t x_max = 100;
  // 0: every prime below 10^4 plus 24 geometric points per octave above.
  unsigned per_octave = 0;
  std::vector<int> k_list{1, 2};
  double epsilon = 0.3;
  double tau = 0.5;
  std::string xi = "unit";
  unsigned jobs = 1;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  // Stop after this many newly computed units (the manifest stays resumable).
  std::optional<std::size_t> max_units;

  void validate() const;
  /// Key=value lines of every field that affects CSV content.
  [[nodiscard]] std::string canonical() const;
};

/// Applies key=value pairs (kind, min, max, per_octave, k, epsilon, tau, xi,
/// jobs, out, seed, max_units) on top of `base`. Throws InvalidArgument.
[[nodiscard]] SweepConfig apply_config_values(SweepConfig base, const std::map<std::string, std::string>& kv);

/// Parses a plain key=value file, one key per line, '#' starts a comment.
[[nodiscard]] std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

/// Ordered work units for the configuration.
[[nodiscard]] std::vector<std::uint64_t> sweep_units(const SweepConfig& config);

[[nodiscard]] std::string csv_header(SweepKind kind);

struct SweepResult {
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  std::size_t planned = 0;
  std::size_t reused = 0;
  std::size_t computed = 0;
  bool complete = false;
  std::vector<std::uint64_t> computed_units;
};

/// Throws IoError (with the failing unit where applicable) and InvalidArgument.
SweepResult run_sweep(const SweepConfig& config);

struct SeriesPoint {
  double x = 0.0;
  double value = 0.0;
};

/// Running sums: out[i].value = sum_{j <= i} in[j].value. Input x must be
/// strictly increasing; throws InvalidArgument otherwise.
[[nodiscard]] std::vector<SeriesPoint> cumulative_series(std::span<const SeriesPoint> records);

/// CSV of exceptional fractions, one row per (statistic, k, eta, delta).
/// A completed moments sweep also writes this as moments.exceptions.csv.
[[nodiscard]] std::string render_exceptions_csv(std::span<const ExceptionalFraction> rows);

/// Lowercase hex SHA-256 of a byte string.
[[nodiscard]] std::string sha256_hex(std::string_view data);

}  // namespace thetamom

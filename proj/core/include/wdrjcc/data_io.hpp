#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wdrjcc/instance.hpp"

namespace wdrjcc {

enum class ScenarioFormat { kCsv, kJson };

/// "csv" or "json"; throws ParseError otherwise.
[[nodiscard]] ScenarioFormat parse_format(std::string_view text);
/// Format implied by the file extension (.json means JSON, anything else CSV).
[[nodiscard]] ScenarioFormat format_for(const std::filesystem::path& path);

/// Headerless numeric CSV, or CSV whose first line contains a non-numeric
/// cell (taken as column names). Throws ParseError on empty input, ragged
/// rows or non-numeric cells, naming the offending line.
[[nodiscard]] Matrix parse_scenarios_csv(std::string_view text,
                                         std::vector<std::string>* header = nullptr);
/// {"k": K, "n": N, "rows": [[...], ...]}.
[[nodiscard]] Matrix parse_scenarios_json(std::string_view text);

[[nodiscard]] std::string format_scenarios_csv(const Matrix& m,
                                               const std::vector<std::string>& header = {});
[[nodiscard]] std::string format_scenarios_json(const Matrix& m);

[[nodiscard]] ScenarioSet load_scenarios(const std::filesystem::path& path, ScenarioFormat format);
[[nodiscard]] ScenarioSet load_scenarios(const std::filesystem::path& path);
void save_scenarios(const std::filesystem::path& path, const Matrix& samples,
                    ScenarioFormat format);

/// Numeric rows of a CSV file with an optional header; an empty file gives
/// zero rows. Rejects NaN and infinities.
[[nodiscard]] std::vector<std::vector<double>> load_points(const std::filesystem::path& path);

/// Plain CSV table of strings (no quoting support).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
[[nodiscard]] CsvTable parse_csv_table(std::string_view text);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

enum class Marginal { kNormal, kUniform };

/// Correlated synthetic scenarios: an AR(1) Gaussian chain across the K
/// coordinates of each sample, mapped to the requested marginal (uniform
/// marginals go through the normal CDF) and clamped to [lower, upper].
struct SynthSpec {
  std::size_t K = 1;
  std::size_t N = 100;
  std::size_t holdout = 0;
  Marginal marginal = Marginal::kNormal;
  double mean = 0.0;
  double sd = 1.0;
  double a = 0.0;
  double b = 1.0;
  double rho = 0.0;
  double lower = -kSynthInf;
  double upper = kSynthInf;
  std::uint64_t seed = 0;

  static constexpr double kSynthInf = 1e300;

  /// Throws ModelError on K = 0, N = 0, sd <= 0, a >= b, |rho| >= 1 or
  /// lower > upper.
  void validate() const;
};

[[nodiscard]] Matrix synth_matrix(const SynthSpec& spec, std::size_t rows, std::uint64_t stream);
[[nodiscard]] ScenarioSet synth_scenarios(const SynthSpec& spec);

}  // namespace wdrjcc

#pragma once

// Run configuration and tabular results.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tricav/sweep.hpp"

namespace tricav {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

std::string_view format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);

/// A parsed config document. Physical values are in units of kappa; `kappa`
/// is the scale applied to swept coordinates on output.
struct RunConfig {
  double kappa = 1.0;
  SweepSpec sweep;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::Csv;
};

/// Strict parse: unknown keys, wrong types, a missing or wrong `schema`, or
/// ambiguous aliases all throw Config. Sweep-level checks (axes) are left to
/// SweepSpec::validate so that steady runs accept axis-free documents.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// The resolved config as a document that parse_config accepts.
nlohmann::json config_to_json(const RunConfig& config);

struct ErrorEntry {
  std::vector<double> coords;
  std::string method;
  std::string code;
  std::string message;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<ErrorEntry> errors;
  nlohmann::json meta;
};

/// Axis columns, then <observable>_<method>. Points where any method failed
/// go to `errors` instead of `rows`. Axis values are scaled by `kappa`.
ResultTable sweep_table(const SweepResult& result, const RunConfig& config);

/// One row of numeric observables plus spectral_gap_numeric, followed by the
/// analytic observables when requested.
ResultTable steady_table(const SweepSpec& spec, const RunConfig& config);

/// Header row, LF endings, %.17g values.
void write_csv(std::ostream& os, const ResultTable& table);
nlohmann::json table_to_json(const ResultTable& table);

struct ParsedCsv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
ParsedCsv read_csv(std::istream& is);

/// Writes `path` in the given format. CSV output also gets a sibling
/// `<stem>.meta.json` carrying the metadata and the errors section.
/// Returns the paths written.
std::vector<std::string> write_table(const ResultTable& table, const std::string& path, OutputFormat format);

/// "out/fig6a.csv" + "_g0.3" -> "out/fig6a_g0.3.csv".
std::string with_suffix(const std::string& path, const std::string& suffix);

}  // namespace tricav

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfspec/spectrum.hpp"

namespace rfspec::cli {

inline constexpr const char* kVersion = "1.0.0";

// Overrides the output directory from the environment; a --out flag beats
// it, the config's output_path loses to it.
inline constexpr const char* kOutputDirEnv = "RFSPEC_OUTPUT_DIR";

// Thread-count override honored by the spectrum evaluators; outputs are
// byte-identical for any setting.
inline constexpr const char* kThreadsEnv = "RFSPEC_THREADS";

struct RunTolerances {
  double equivalence_rel = tol::equivalence_rel;
  double positivity_rel = tol::positivity_rel;
};

struct SweepSpec {
  std::string parameter;  // a ModelConfig field name
  std::vector<double> values;
};

struct RunConfig {
  ModelConfig model;
  FrequencyGrid grid;
  std::vector<Method> methods;
  std::string output_path = ".";
  std::vector<SweepSpec> sweeps;
  RunTolerances tolerances;
};

// Operationalizes the two headline claims for one run: the rival methods
// agree pointwise and the spectrum is nonnegative.
struct ComparisonReport {
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;  // relative to the peak value
  double min_value = 0.0;
  std::vector<double> peak_positions;
  bool pass = true;
};

// Parses the JSON run configuration. Throws InvalidConfig with a message
// naming the offending field for anything missing, unknown, or malformed.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

const char* method_name(Method method);

// Writes `nu,S` plus count data rows; UTF-8, LF line endings, shortest
// round-trip number formatting with canonical "0" for exact zero. Bytes
// are identical for identical inputs.
void emit_csv(const SpectrumResult& result, const std::filesystem::path& path);

// Local maxima rising above a small fraction of the peak, in ascending nu.
std::vector<double> peak_positions(const SpectrumResult& result);

struct Overrides {
  std::optional<std::vector<Method>> methods;
  std::optional<std::string> output_path;
};

// Executes a run configuration end to end: one CSV per method per sweep
// point plus a report file. Diagnostics go to `diag`. Exit code 0 on pass,
// 2 on method disagreement or negativity, 3 on configuration or
// singular-Liouvillian errors.
int run(const std::string& config_path, const Overrides& overrides,
        std::ostream& diag);

}  // namespace rfspec::cli

#include "rfspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rfspec/oracle.hpp"

namespace rfspec::cli {

namespace {

using nlohmann::json;

constexpr double kPeakDetectRel = 1e-3;

const json& require_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidConfig(std::string("config field '") + key + "' is required");
  }
  return *it;
}

double require_number(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_number()) {
    throw InvalidConfig(std::string("config field '") + key + "' must be a number");
  }
  return field.get<double>();
}

double optional_number(const json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    throw InvalidConfig(std::string("config field '") + key + "' must be a number");
  }
  return it->get<double>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw InvalidConfig("unknown config field '" + where + key + "'");
    }
  }
}

Method parse_method(const std::string& name) {
  if (name == "limit") return Method::Limit;
  if (name == "variance") return Method::Variance;
  if (name == "oracle") return Method::OracleTimeDomain;
  if (name == "mollow") return Method::MollowAnalytic;
  throw InvalidConfig("config field 'methods' contains unknown method '" + name +
                      "'");
}

double* parameter_slot(ModelConfig& model, const std::string& name) {
  if (name == "rabi_1") return &model.rabi_1;
  if (name == "rabi_2") return &model.rabi_2;
  if (name == "detuning_1") return &model.detuning_1;
  if (name == "detuning_2") return &model.detuning_2;
  if (name == "gamma_1") return &model.gamma_1;
  if (name == "gamma_2") return &model.gamma_2;
  if (name == "geometry_factor") return &model.geometry_factor;
  return nullptr;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // canonical zero, covers -0.0
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buffer, end};
}

json model_to_json(const ModelConfig& model) {
  json j;
  j["model"] = model.model == Model::TwoLevel ? "two_level" : "lambda";
  j["rabi_1"] = model.rabi_1;
  j["detuning_1"] = model.detuning_1;
  j["gamma_1"] = model.gamma_1;
  j["geometry_factor"] = model.geometry_factor;
  if (model.model == Model::Lambda) {
    j["rabi_2"] = model.rabi_2;
    j["detuning_2"] = model.detuning_2;
    j["gamma_2"] = model.gamma_2;
  }
  return j;
}

json config_to_json(const RunConfig& config) {
  json j = model_to_json(config.model);
  j["grid"] = {{"nu_min", config.grid.nu_min},
               {"nu_max", config.grid.nu_max},
               {"count", config.grid.count}};
  json methods = json::array();
  for (Method m : config.methods) methods.push_back(method_name(m));
  j["methods"] = methods;
  j["output_path"] = config.output_path;
  if (!config.sweeps.empty()) {
    json sweeps = json::array();
    for (const auto& sweep : config.sweeps) {
      sweeps.push_back({{"parameter", sweep.parameter}, {"values", sweep.values}});
    }
    j["sweep"] = sweeps;
  }
  j["tolerances"] = {{"equivalence_rel", config.tolerances.equivalence_rel},
                     {"positivity_rel", config.tolerances.positivity_rel}};
  return j;
}

struct PointOutcome {
  std::string label;
  ComparisonReport comparison;
  std::map<std::string, double> coherent_weights;
  std::map<std::string, std::string> files;
  std::map<std::string, int> invalid_points;
};

json point_to_json(const PointOutcome& point) {
  json j;
  j["label"] = point.label;
  j["max_abs_diff"] = point.comparison.max_abs_diff;
  j["max_rel_diff"] = point.comparison.max_rel_diff;
  j["min_value"] = point.comparison.min_value;
  j["peak_positions"] = point.comparison.peak_positions;
  j["pass"] = point.comparison.pass;
  j["coherent_weight"] = point.coherent_weights;
  j["files"] = point.files;
  j["invalid_points"] = point.invalid_points;
  return j;
}

SpectrumResult compute_method(Method method, const LiouvilleSystem& sys,
                              const SteadyState& ss, const CorrelationIC& ic,
                              const FrequencyGrid& grid) {
  switch (method) {
    case Method::Limit:
      return limit_spectrum(sys, ss, ic, grid);
    case Method::Variance:
      return variance_spectrum(sys, ss, ic, grid);
    case Method::OracleTimeDomain: {
      const CorrelationSeries series = integrate_correlation_auto(sys, ic);
      SpectrumResult result = fourier_spectrum(series, grid, sys.config.gamma_1,
                                               sys.config.geometry_factor);
      result.coherent_weight = coherent_weight(ss, ic.pair, sys.config);
      return result;
    }
    case Method::MollowAnalytic: {
      if (sys.config.model != Model::TwoLevel || sys.config.detuning_1 != 0.0) {
        throw InvalidConfig(
            "config field 'methods': mollow requires the two_level model at "
            "detuning_1 = 0");
      }
      SpectrumResult result =
          mollow_reference(sys.config.rabi_1, sys.config.gamma_1, grid);
      const double u = sys.config.geometry_factor;
      for (double& v : result.values) v *= u;
      result.coherent_weight *= u;
      return result;
    }
  }
  throw std::logic_error("unreachable method");
}

// Comparison over the rival methods only; oracle and mollow outputs are
// reference data with their own (looser) accuracy expectations.
ComparisonReport compare_methods(const std::map<std::string, SpectrumResult>& spectra,
                                 const RunTolerances& tolerances) {
  ComparisonReport report;
  const SpectrumResult* limit = nullptr;
  const SpectrumResult* variance = nullptr;
  if (const auto it = spectra.find("limit"); it != spectra.end()) limit = &it->second;
  if (const auto it = spectra.find("variance"); it != spectra.end()) {
    variance = &it->second;
  }

  double peak = 0.0;
  double min_value = 0.0;
  for (const SpectrumResult* r : {limit, variance}) {
    if (!r) continue;
    peak = std::max(peak, r->peak());
    for (double v : r->values) min_value = std::min(min_value, v);
  }
  report.min_value = min_value;

  if (limit && variance) {
    std::set<int> skip(limit->invalid_points.begin(), limit->invalid_points.end());
    skip.insert(variance->invalid_points.begin(), variance->invalid_points.end());
    for (int i = 0; i < limit->grid.count; ++i) {
      if (skip.contains(i)) continue;
      const double diff = std::abs(limit->values[static_cast<std::size_t>(i)] -
                                   variance->values[static_cast<std::size_t>(i)]);
      report.max_abs_diff = std::max(report.max_abs_diff, diff);
    }
    report.max_rel_diff = peak > 0.0 ? report.max_abs_diff / peak : 0.0;
  }

  // Peaks from the first available spectrum, variance preferred.
  for (const char* name : {"variance", "limit", "oracle", "mollow"}) {
    if (const auto it = spectra.find(name); it != spectra.end()) {
      report.peak_positions = peak_positions(it->second);
      break;
    }
  }

  report.pass = report.max_rel_diff <= tolerances.equivalence_rel &&
                report.min_value >= -tolerances.positivity_rel * peak;
  return report;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::Limit: return "limit";
    case Method::Variance: return "variance";
    case Method::OracleTimeDomain: return "oracle";
    case Method::MollowAnalytic: return "mollow";
  }
  return "unknown";
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
  reject_unknown_keys(j,
                      {"model", "rabi_1", "rabi_2", "detuning_1", "detuning_2",
                       "gamma_1", "gamma_2", "geometry_factor", "grid", "methods",
                       "output_path", "sweep", "tolerances"},
                      "");

  RunConfig config;
  const json& model_field = require_field(j, "model");
  if (!model_field.is_string()) {
    throw InvalidConfig("config field 'model' must be \"two_level\" or \"lambda\"");
  }
  const std::string model_name = model_field.get<std::string>();
  if (model_name == "two_level") {
    config.model.model = Model::TwoLevel;
  } else if (model_name == "lambda") {
    config.model.model = Model::Lambda;
  } else {
    throw InvalidConfig("config field 'model' must be \"two_level\" or \"lambda\"");
  }

  config.model.rabi_1 = require_number(j, "rabi_1");
  config.model.gamma_1 = require_number(j, "gamma_1");
  config.model.detuning_1 = optional_number(j, "detuning_1", 0.0);
  config.model.geometry_factor = optional_number(j, "geometry_factor", 1.0);
  if (config.model.model == Model::Lambda) {
    config.model.rabi_2 = require_number(j, "rabi_2");
    config.model.gamma_2 = require_number(j, "gamma_2");
    config.model.detuning_2 = optional_number(j, "detuning_2", 0.0);
  } else {
    config.model.rabi_2 = optional_number(j, "rabi_2", 0.0);
    config.model.gamma_2 = optional_number(j, "gamma_2", 0.0);
    config.model.detuning_2 = optional_number(j, "detuning_2", 0.0);
  }

  const json& grid = require_field(j, "grid");
  if (!grid.is_object()) throw InvalidConfig("config field 'grid' must be an object");
  reject_unknown_keys(grid, {"nu_min", "nu_max", "count"}, "grid.");
  config.grid.nu_min = require_number(grid, "nu_min");
  config.grid.nu_max = require_number(grid, "nu_max");
  const json& count = require_field(grid, "count");
  if (!count.is_number_integer()) {
    throw InvalidConfig("config field 'count' must be an integer");
  }
  config.grid.count = count.get<int>();
  validate(config.grid);

  const json& methods = require_field(j, "methods");
  if (!methods.is_array() || methods.empty()) {
    throw InvalidConfig(
        "config field 'methods' must name at least one of limit, variance, "
        "oracle, mollow");
  }
  for (const json& entry : methods) {
    if (!entry.is_string()) {
      throw InvalidConfig("config field 'methods' entries must be strings");
    }
    const Method m = parse_method(entry.get<std::string>());
    if (std::find(config.methods.begin(), config.methods.end(), m) !=
        config.methods.end()) {
      throw InvalidConfig("config field 'methods' repeats a method");
    }
    config.methods.push_back(m);
  }

  if (const auto it = j.find("output_path"); it != j.end()) {
    if (!it->is_string()) {
      throw InvalidConfig("config field 'output_path' must be a string");
    }
    config.output_path = it->get<std::string>();
  }

  if (const auto it = j.find("sweep"); it != j.end()) {
    if (!it->is_array()) throw InvalidConfig("config field 'sweep' must be an array");
    for (const json& entry : *it) {
      if (!entry.is_object()) {
        throw InvalidConfig("config field 'sweep' entries must be objects");
      }
      reject_unknown_keys(entry, {"parameter", "values"}, "sweep.");
      SweepSpec sweep;
      const json& name = require_field(entry, "parameter");
      if (!name.is_string()) {
        throw InvalidConfig("config field 'sweep.parameter' must be a string");
      }
      sweep.parameter = name.get<std::string>();
      ModelConfig probe = config.model;
      if (parameter_slot(probe, sweep.parameter) == nullptr) {
        throw InvalidConfig("config field 'sweep.parameter' names unknown parameter '" +
                            sweep.parameter + "'");
      }
      const json& values = require_field(entry, "values");
      if (!values.is_array() || values.empty()) {
        throw InvalidConfig("config field 'sweep.values' must be a nonempty array");
      }
      for (const json& v : values) {
        if (!v.is_number()) {
          throw InvalidConfig("config field 'sweep.values' must contain numbers");
        }
        sweep.values.push_back(v.get<double>());
      }
      config.sweeps.push_back(std::move(sweep));
    }
  }

  if (const auto it = j.find("tolerances"); it != j.end()) {
    if (!it->is_object()) {
      throw InvalidConfig("config field 'tolerances' must be an object");
    }
    reject_unknown_keys(*it, {"equivalence_rel", "positivity_rel"}, "tolerances.");
    config.tolerances.equivalence_rel =
        optional_number(*it, "equivalence_rel", config.tolerances.equivalence_rel);
    config.tolerances.positivity_rel =
        optional_number(*it, "positivity_rel", config.tolerances.positivity_rel);
    if (config.tolerances.equivalence_rel <= 0.0 ||
        config.tolerances.positivity_rel <= 0.0) {
      throw InvalidConfig("config field 'tolerances' entries must be positive");
    }
  }

  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidConfig("cannot open config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

void emit_csv(const SpectrumResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << "nu,S\n";
  for (int i = 0; i < result.grid.count; ++i) {
    out << format_double(result.grid.nu(i)) << ','
        << format_double(result.values[static_cast<std::size_t>(i)]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing output file " + path.string());
}

std::vector<double> peak_positions(const SpectrumResult& result) {
  std::vector<double> peaks;
  const double threshold = kPeakDetectRel * result.peak();
  for (int i = 1; i + 1 < result.grid.count; ++i) {
    const double v = result.values[static_cast<std::size_t>(i)];
    if (v > result.values[static_cast<std::size_t>(i - 1)] &&
        v >= result.values[static_cast<std::size_t>(i + 1)] && v >= threshold) {
      peaks.push_back(result.grid.nu(i));
    }
  }
  return peaks;
}

int run(const std::string& config_path, const Overrides& overrides,
        std::ostream& diag) {
  try {
    RunConfig config = load_run_config(config_path);
    if (overrides.methods) config.methods = *overrides.methods;
    if (const char* env = std::getenv(kOutputDirEnv)) config.output_path = env;
    if (overrides.output_path) config.output_path = *overrides.output_path;
    if (config.methods.empty()) {
      throw InvalidConfig("config field 'methods' must name at least one method");
    }

    const std::filesystem::path out_dir(config.output_path);
    std::filesystem::create_directories(out_dir);

    struct Point {
      std::string label;
      std::string suffix;  // file-name suffix, empty for the base run
      ModelConfig model;
    };
    std::vector<Point> points;
    if (config.sweeps.empty()) {
      points.push_back({"base", "", config.model});
    } else {
      for (const auto& sweep : config.sweeps) {
        for (std::size_t k = 0; k < sweep.values.size(); ++k) {
          ModelConfig model = config.model;
          *parameter_slot(model, sweep.parameter) = sweep.values[k];
          const std::string tag = sweep.parameter + "_" + std::to_string(k);
          points.push_back({tag, "_" + tag, model});
        }
      }
    }

    std::vector<PointOutcome> outcomes;
    for (const Point& point : points) {
      validate(point.model);
      const LiouvilleSystem sys = build_system(point.model);
      if (!sys.all_live()) {
        diag << "note: [" << point.label
             << "] level 2 is decoupled (rabi_2 = 0, gamma_2 = 0); its slots are "
                "pinned to zero\n";
      }
      const SteadyState ss = steady_state(sys);
      const DetectionPair pair = emission_pair(sys);
      const CorrelationIC ic = regression_initial(sys, ss, pair);

      PointOutcome outcome;
      outcome.label = point.label;
      std::map<std::string, SpectrumResult> spectra;
      for (Method method : config.methods) {
        SpectrumResult result = compute_method(method, sys, ss, ic, config.grid);
        const std::string name = method_name(method);
        const std::string file = name + point.suffix + ".csv";
        emit_csv(result, out_dir / file);
        if (!result.invalid_points.empty()) {
          diag << "warning: [" << point.label << "] " << name << " skipped "
               << result.invalid_points.size() << " resonant grid point(s)\n";
        }
        outcome.files[name] = file;
        outcome.coherent_weights[name] = result.coherent_weight;
        outcome.invalid_points[name] =
            static_cast<int>(result.invalid_points.size());
        spectra.emplace(name, std::move(result));
      }
      outcome.comparison = compare_methods(spectra, config.tolerances);
      outcomes.push_back(std::move(outcome));
    }

    json report;
    report["config"] = config_to_json(config);
    report["gamma_1"] = config.model.gamma_1;
    report["tolerances"] = {
        {"equivalence_rel", config.tolerances.equivalence_rel},
        {"positivity_rel", config.tolerances.positivity_rel}};
    bool pass = true;
    double max_abs = 0.0;
    double max_rel = 0.0;
    double min_value = 0.0;
    json point_array = json::array();
    for (const PointOutcome& outcome : outcomes) {
      pass = pass && outcome.comparison.pass;
      max_abs = std::max(max_abs, outcome.comparison.max_abs_diff);
      max_rel = std::max(max_rel, outcome.comparison.max_rel_diff);
      min_value = std::min(min_value, outcome.comparison.min_value);
      point_array.push_back(point_to_json(outcome));
    }
    report["pass"] = pass;
    report["max_abs_diff"] = max_abs;
    report["max_rel_diff"] = max_rel;
    report["min_value"] = min_value;
    report["peak_positions"] =
        outcomes.empty() ? json::array()
                         : json(outcomes.front().comparison.peak_positions);
    if (!outcomes.empty()) {
      report["coherent_weight"] = outcomes.front().coherent_weights;
    }
    report["points"] = point_array;

    const std::filesystem::path report_path = out_dir / "report.json";
    {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot open output file " + report_path.string());
      }
      out << report.dump(2) << '\n';
    }

    diag << "report: " << report_path.string() << (pass ? " (pass)" : " (fail)")
         << "\n";
    return pass ? 0 : 2;
  } catch (const InvalidConfig& e) {
    diag << "error: " << e.what() << "\n";
    return 3;
  } catch (const SingularLiouvillian& e) {
    diag << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace rfspec::cli

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rfspec/cli.hpp"

namespace {

std::vector<rfspec::Method> parse_method_list(const std::vector<std::string>& names) {
  std::vector<rfspec::Method> methods;
  for (const std::string& name : names) {
    if (name == "limit") {
      methods.push_back(rfspec::Method::Limit);
    } else if (name == "variance") {
      methods.push_back(rfspec::Method::Variance);
    } else if (name == "oracle") {
      methods.push_back(rfspec::Method::OracleTimeDomain);
    } else if (name == "mollow") {
      methods.push_back(rfspec::Method::MollowAnalytic);
    } else {
      throw CLI::ValidationError("--methods", "unknown method '" + name + "'");
    }
  }
  return methods;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incoherent resonance-fluorescence spectra of driven few-level "
               "emitters, by two independent methods"};
  app.set_version_flag("--version", std::string(rfspec::cli::kVersion));

  std::string config_path;
  std::vector<std::string> method_names;
  std::string out_dir;

  CLI::App* run_cmd = app.add_subcommand("run", "execute a run configuration");
  run_cmd->add_option("config", config_path, "path to a JSON run configuration")
      ->required();
  run_cmd
      ->add_option("--methods", method_names,
                   "override the configured methods (limit, variance, oracle, "
                   "mollow)")
      ->delimiter(',');
  run_cmd->add_option("--out", out_dir, "override the output directory");
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  rfspec::cli::Overrides overrides;
  try {
    if (!method_names.empty()) overrides.methods = parse_method_list(method_names);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (!out_dir.empty()) overrides.output_path = out_dir;

  return rfspec::cli::run(config_path, overrides, std::cerr);
}

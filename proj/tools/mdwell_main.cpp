// Command line front end: figure datasets, the consistency report, and the
// lambda convergence sweep. Exit codes: 0 success (for verify: all ground
// truth checks pass), 1 runtime/IO failure or failed verification, 2
// configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mdwell/mdwell.hpp>

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) mdwell::fail("config-invalid", "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mdwell::RunConfig build_config(const std::string& config_path,
                               const std::vector<std::string>& overrides) {
  nlohmann::json raw = nlohmann::json::object();
  if (!config_path.empty()) raw = mdwell::parse_config_text(read_text_file(config_path));
  for (const std::string& kv : overrides) mdwell::apply_override(raw, kv);
  return mdwell::resolve_config(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymmetric double-well construction, deformation, and verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  int figure_id = 0;
  std::vector<double> lambdas;

  CLI::App* fig = app.add_subcommand("figure", "emit one figure dataset as CSV");
  fig->add_option("--id", figure_id, "figure index")->required()->check(CLI::Range(1, 5));
  fig->add_option("--config", config_path, "JSON config file");
  fig->add_option("--set", overrides, "key=value config override (repeatable)");
  fig->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* ver = app.add_subcommand("verify", "run all consistency checks, write JSON report");
  ver->add_option("--config", config_path, "JSON config file");
  ver->add_option("--set", overrides, "key=value config override (repeatable)");
  ver->add_option("--out", out_path, "output JSON path")->required();

  CLI::App* swp = app.add_subcommand("sweep-lambda", "deformation convergence table as CSV");
  swp->add_option("--config", config_path, "JSON config file");
  swp->add_option("--set", overrides, "key=value config override (repeatable)");
  swp->add_option("--lambdas", lambdas, "comma-separated deformation parameters")
      ->required()
      ->delimiter(',');
  swp->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const mdwell::RunConfig cfg = build_config(config_path, overrides);
    if (fig->parsed()) {
      mdwell::run_figure(figure_id, cfg, out_path);
      return 0;
    }
    if (ver->parsed()) {
      const mdwell::VerifyOutcome outcome = mdwell::run_verify(cfg, out_path);
      std::cout << mdwell::render_verify_text(outcome);
      return outcome.all_pass ? 0 : 1;
    }
    if (swp->parsed()) {
      mdwell::run_lambda_sweep(cfg, lambdas, out_path);
      return 0;
    }
    return 2;
  } catch (const mdwell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == "io-error" ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

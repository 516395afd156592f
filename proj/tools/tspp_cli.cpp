#include <CLI11.hpp>
#include <iostream>

#include "tspp/commands.hpp"

namespace {

int dispatch(const std::string& cmd, const tspp::CommandOptions& opt) {
  try {
    return tspp::run_command(cmd, opt);
  } catch (const tspp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tspp::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tspp::CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 3;
  } catch (const tspp::SolverNonConvergence& e) {
    std::cerr << "solver did not converge: " << e.what() << " (best residual " << e.best_residual
              << ")\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-state preparation by work-operator reweighting"};
  app.require_subcommand(1);

  tspp::CommandOptions opt;
  const std::vector<std::pair<const char*, const char*>> cmds = {
      {"sweep-cutoff", "largest work cutoff over an eps or T grid (CSV)"},
      {"workdist", "binned work distributions with cutoff markers (CSV)"},
      {"scaling", "largest work cutoff against system size (CSV)"},
      {"run", "prepare the thermal state end to end (JSON)"},
      {"qsp-phases", "solve the QSP phase sets for a series (CSV)"},
      {"verify", "Jarzynski and Crooks residuals (JSON)"}};
  for (const auto& [name, help] : cmds) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON config file");
    sub->add_option("--out", opt.out, "output file (stdout if omitted)");
    sub->add_option("--workers", opt.workers, "worker threads (default: TSPP_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<std::string>(
           "--backend", [&](const std::string& b) { opt.backend = b; }, "lcu or qsp")
        ->check(CLI::IsMember({"lcu", "qsp"}));
    sub->add_option("--seed", opt.seed, "seed for randomized runs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return dispatch(app.get_subcommands().front()->get_name(), opt);
}

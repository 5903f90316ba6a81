#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "exit_ibp/exit_ibp.h"

namespace {

int run_command(const std::string& config_path) {
  eibp_experiment* experiment = nullptr;
  int status = eibp_experiment_from_file(config_path.c_str(), &experiment);
  if (status != EIBP_OK) {
    std::fprintf(stderr, "error: %s\n", eibp_last_error());
    return status;
  }
  status = eibp_experiment_run(experiment, nullptr);
  if (status == EIBP_OK) {
    std::fputs(eibp_experiment_summary(experiment), stdout);
    status = eibp_experiment_save(experiment, nullptr);
  }
  if (status != EIBP_OK) std::fprintf(stderr, "error: %s\n", eibp_last_error());
  eibp_experiment_free(experiment);
  return status == EIBP_INVALID_ARGUMENT ? EIBP_RUNTIME_ERROR : status;
}

void print_criterion(int, const char*, int, const char* line, void*) {
  std::printf("%s\n", line);
  std::fflush(stdout);
}

int validate_command(const std::string& suite) {
  const int status = eibp_validate(suite.c_str(), print_criterion, nullptr);
  if (status != EIBP_OK) std::fprintf(stderr, "error: %s\n", eibp_last_error());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbiased Monte Carlo for diffusion exit times"};
  app.set_version_flag("--version", std::string("exit-ibp ") + eibp_version());
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment and append its CSV row");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();

  std::string suite;
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_option("suite", suite, "smoke or full")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : EIBP_CONFIG_ERROR;
  }

  if (*run) return run_command(config_path);
  return validate_command(suite);
}

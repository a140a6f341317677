#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "l1split/cli.hpp"
#include "l1split/errors.hpp"

using namespace l1split;

int main(int argc, char** argv) {
  CLI::App app{"Splitting of the L1 manifolds in the circularly polarized hydrogen problem"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool resume = false, force_floor = false;
  int digits_override = 0, workers = 0;
  app.add_option("--config", config_path, "key = value job file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_flag("--resume", resume, "skip samples already in the result store");
  app.add_flag("--force-desk-floor-override", force_floor, "allow K below the desk floor");
  app.add_option("--digits-override", digits_override, "fixed decimal digits for every sample")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "worker threads for scans")->check(CLI::PositiveNumber);

  const char* help[][2] = {
      {"equilibria", "equilibria and exponents over the K grid"},
      {"manifold", "parameterization coefficients at the first K"},
      {"cp-scan", "CP splitting in synodic and resonant variables"},
      {"toy-scan", "toy model splitting for every (a, m)"},
      {"melnikov", "amended pendulum Melnikov integral z(0)"},
      {"singularity", "complex singularity of the section cubic"},
      {"fit", "fits over the stored samples"},
      {"plotdata", "two-column curves for every stored fit"},
  };
  for (auto& h : help) app.add_subcommand(h[0], h[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cli::Command cmd = cli::parse_command(app.get_subcommands().front()->get_name());
    cli::ConfigFile cf = config_path.empty() ? cli::ConfigFile{} : cli::ConfigFile::load(config_path);
    cli::JobConfig job = cli::job_from_config(cf, cmd);
    if (!out_dir.empty()) job.out_dir = out_dir;
    if (resume) job.resume = true;
    if (force_floor) job.policy.override_floor = true;
    if (digits_override > 0) job.policy.digits_override = digits_override;
    if (workers > 0) job.workers = workers;

    cli::JobReport rep = cli::run_job(job);
    std::cout << cli::command_name(cmd) << ": computed " << rep.computed << ", skipped " << rep.skipped << "\n";
    for (const auto& f : rep.files) std::cout << "  wrote " << f << "\n";
    for (const auto& f : rep.failures) std::cerr << "  failed " << f << "\n";
    return rep.exit_code;
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigInvalid ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error " << e.what() << "\n";
    return 1;
  }
}

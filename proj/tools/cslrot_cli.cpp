#include "cslrot/commands.hpp"
#include "cslrot/quadrature.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>

int main(int argc, char** argv) {
  using namespace cslrot;
  CLI::App app{"CSL decoherence of rigid rotors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool check = false;
  double tol = 0.0;

  const std::map<std::string_view, std::string> about = {
      {"formfactor", "mass-density form factor along k rays"},
      {"locrate", "orientational localization rate versus axis angle"},
      {"diffusion", "centre-of-mass and rotational diffusion constants versus r_c"},
      {"planar", "planar rotor Wigner function under CSL diffusion"},
      {"exclude", "exclusion curves and their intersection from heating rates"}};
  for (auto name : kCommands) {
    auto* sub = app.add_subcommand(std::string(name), about.at(name));
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--check", check, "compare against the built-in oracle");
    sub->add_option("--tol", tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = load_config(config_path);
    CommandOptions opt;
    opt.out_dir = out_dir;
    opt.check = check;
    if (app.get_subcommands().front()->count("--tol")) opt.tol = tol;

    const auto res = run_command(command, cfg, opt);
    for (const auto& n : res.notes) std::cerr << "cslrot " << command << ": " << n << "\n";
    for (const auto& f : res.files) std::cout << f.string() << "\n";
    if (res.check) {
      std::printf("check %s: max deviation %.3e (tolerance %.1e) %s\n", res.check->oracle.c_str(),
                  res.check->max_deviation, res.check->tolerance, res.check->passed() ? "ok" : "FAILED");
      if (!res.check->passed()) return kExitFailure;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "cslrot " << command << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "cslrot " << command << ": convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "cslrot " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

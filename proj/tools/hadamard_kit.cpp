#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hadamard/cli.hpp"
#include "hadamard/errors.hpp"

int main(int argc, char** argv) {
  using namespace hadamard::cli;

  CLI::App app{"Exact geodesic-space checks: monotone relations, W-property, flatness, extension"};
  app.set_version_flag("--version", "hadamard-kit 0.1.0");

  std::vector<std::string> names;
  for (auto c : {Command::ReproducePaper, Command::CheckMonotone, Command::CheckW,
                 Command::ClassifyFlat, Command::Theta, Command::Extend, Command::Norm,
                 Command::Identities}) {
    names.emplace_back(command_name(c));
  }

  RunConfig cfg;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--space", cfg.space_path, "Space description (JSON)");
  app.add_option("--relation", cfg.relation_path, "Relation file (JSON)");
  app.add_option("--hull", cfg.hull_path, "Convex hull generators (JSON)");
  app.add_option("--phi", cfg.phi_path, "Map from hull coordinates to points (JSON)");
  app.add_option("--dual", cfg.dual_path, "Dual element for `norm` (JSON)");
  app.add_option("--base", cfg.base, "Base point as inline JSON");
  app.add_option("--seed", seed, "RNG seed (default: $HADAMARD_KIT_SEED, else 1)");
  app.add_option("--samples", cfg.samples, "Number of random samples")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Float tolerance for euclidean spaces");
  app.add_option("--eps", cfg.eps, "Extension slack (default 1e-6, or 0 for exact spaces)");
  app.add_option("--depth", cfg.depth, "Extension grid depth")->capture_default_str();
  app.add_option("--refine-steps", cfg.refine_steps, "Extension refinement rounds")->capture_default_str();
  app.add_option("--lambda-den", cfg.lambda_den, "W grid uses every k/q with q up to this")
      ->capture_default_str();
  app.add_option("--max-witnesses", cfg.max_witnesses, "Witnesses listed by check-w (0: all)")
      ->capture_default_str();
  app.add_option("--table-size", cfg.table_size, "Rows of the monotone table in reproduce-paper")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  cfg.command = *parse_command(command);
  cfg.format = format == "json" ? Format::Json : Format::Text;
  try {
    cfg.seed = resolve_seed(seed, std::getenv("HADAMARD_KIT_SEED"));
  } catch (const hadamard::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return run_command(cfg, std::cout, std::cerr);
}

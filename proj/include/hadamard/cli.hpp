#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hadamard::cli {

enum class Command {
  ReproducePaper,
  CheckMonotone,
  CheckW,
  ClassifyFlat,
  Theta,
  Extend,
  Norm,
  Identities,
};

enum class Format { Text, Json };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

struct RunConfig {
  Command command = Command::ReproducePaper;
  std::optional<std::string> space_path;
  std::optional<std::string> relation_path;
  std::optional<std::string> hull_path;
  std::optional<std::string> phi_path;
  std::optional<std::string> dual_path;
  std::optional<std::string> base;  // point as inline JSON
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::optional<double> tol;        // overrides the euclidean tolerance
  std::optional<std::string> eps;   // default 1e-6 (euclidean) or 0 (spider)
  long depth = 4;
  long refine_steps = 64;
  long lambda_den = 10;             // W grid: all k/q with q <= lambda_den
  std::uint64_t max_witnesses = 10; // 0 lists every violation
  std::uint64_t table_size = 10;
  Format format = Format::Text;
};

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

// Flag value if given, else HADAMARD_KIT_SEED (the `env` argument), else 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env);

// Runs one command. The report goes to `out` in one write; diagnostics go to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hadamard::cli

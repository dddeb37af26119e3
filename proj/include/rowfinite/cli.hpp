#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowfinite/solver.hpp"

namespace rowfinite::cli {

enum class OutputFormat { json, csv, pretty };

struct RunConfig {
  std::string command;  // reduce | solve | fundamental | hess | verify
  std::optional<std::string> spec_path;
  std::optional<std::string> family;
  std::optional<Index> horizon;
  std::optional<Index> terms;
  FreeConstants free;
  std::optional<std::vector<Scalar>> g;
  OutputFormat format = OutputFormat::json;
  std::optional<Index> first_index;
  std::uint64_t seed = 1;
  bool verify_against_elimination = false;
};

enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_usage = 2,
  exit_evaluation = 3,
  exit_inconsistent = 4,
};

/// "0=1/2,3=-1" -> {0: 1/2, 3: -1}. Throws SpecError.
FreeConstants parse_free_list(std::string_view text);
/// "1,-2/3,0" -> scalars. Throws SpecError.
std::vector<Scalar> parse_scalar_list(std::string_view text);

/// Runs one command. Engine errors propagate as exceptions.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, runs the command and maps every error to its exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rowfinite::cli

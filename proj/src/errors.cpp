#include "rowfinite/errors.hpp"

#include <sstream>

namespace rowfinite {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : SpecError(message), offset_(offset), expected_(std::move(expected)) {}

EvalError::EvalError(std::int64_t n, std::int64_t j, const std::string& message)
    : Error(message + " at (n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")"),
      n_(n),
      j_(j) {}

namespace {

std::string describe_violations(const std::vector<std::int64_t>& violated) {
  std::ostringstream out;
  out << "inconsistent system: k_w != 0 for w in {";
  for (std::size_t i = 0; i < violated.size(); ++i) out << (i ? "," : "") << violated[i];
  out << "}";
  return out.str();
}

}  // namespace

InconsistentSystem::InconsistentSystem(std::vector<std::int64_t> violated)
    : Error(describe_violations(violated)), violated_(std::move(violated)) {}

}  // namespace rowfinite

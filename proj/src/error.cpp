#include "connsync/error.hpp"

#include <sstream>

namespace connsync {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid graph";
  for (const auto& v : violations) out << "\n  " << v;
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

ConvergenceError::ConvergenceError(const std::string& what, double residual)
    : Error(what), residual_(residual) {}

}  // namespace connsync

#include "dcbam/errors.hpp"

#include <sstream>

namespace dcbam {

ReferenceError::ReferenceError(std::string id, const std::string& context)
    : Error("unknown id '" + id + "' referenced by " + context), id_(std::move(id)) {}

NoArbitrageError::NoArbitrageError(std::string inequality, const std::string& detail)
    : Error(inequality + " violated (" + detail + ")"), inequality_(std::move(inequality)) {}

namespace {
std::string budget_message(double total, double budget) {
  std::ostringstream os;
  os.precision(17);
  os << "portfolio cost " << total << " exceeds budget " << budget << " by "
     << (total - budget);
  return os.str();
}
}  // namespace

BudgetError::BudgetError(double total, double budget)
    : Error(budget_message(total, budget)), total_(total), budget_(budget) {}

ParseError::ParseError(std::string location, const std::string& detail)
    : Error(location + ": " + detail), location_(std::move(location)) {}

}  // namespace dcbam

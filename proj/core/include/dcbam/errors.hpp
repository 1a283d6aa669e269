#pragma once

#include <stdexcept>
#include <string>

namespace dcbam {

// Every fault raised by the engine derives from Error so frontends can map
// the concrete kind onto an exit code or HTTP status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A module invariant does not hold for the supplied data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An id does not resolve (unknown DAD, dangling portfolio member, ...).
class ReferenceError : public Error {
 public:
  explicit ReferenceError(std::string id, const std::string& context);
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// d < 1 + r < u does not hold. `inequality()` names the violated half.
class NoArbitrageError : public Error {
 public:
  explicit NoArbitrageError(std::string inequality, const std::string& detail);
  const std::string& inequality() const noexcept { return inequality_; }

 private:
  std::string inequality_;
};

/// u == d: the up and down branches coincide.
class DegenerateLatticeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Portfolio spend exceeds its budget.
class BudgetError : public Error {
 public:
  BudgetError(double total, double budget);
  double total() const noexcept { return total_; }
  double budget() const noexcept { return budget_; }
  double excess() const noexcept { return total_ - budget_; }

 private:
  double total_;
  double budget_;
};

/// Malformed document or table. `location()` is a line number or a path.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& detail);
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcbam

#pragma once

// Error types shared by every gca module. Failures that signal a violated
// mathematical invariant carry a witness so reports can show what broke.

#include <stdexcept>
#include <string>
#include <utility>

namespace gca {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or ambient mismatch, bad index, malformed input.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// A polynomial grew past the configured term or work budget.
class TermLimitExceeded : public Error {
 public:
  using Error::Error;
};

// Exact division left a nonzero remainder. The remainder is kept in
// canonical text form so this header stays independent of the poly types.
class NotDivisible : public Error {
 public:
  NotDivisible(const std::string& what, std::string remainder)
      : Error(what + "; remainder: " + remainder), remainder_(std::move(remainder)) {}
  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

class NotSkewSymmetrizable : public Error {
 public:
  NotSkewSymmetrizable(const std::string& what, int i, int j)
      : Error(what), i_(i), j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

class CompatibilityBroken : public Error {
 public:
  using Error::Error;
};

class SignCoherenceViolated : public Error {
 public:
  SignCoherenceViolated(const std::string& what, int column)
      : Error(what), column_(column) {}
  int column() const noexcept { return column_; }

 private:
  int column_;
};

// An internal cross-check between two routes disagreed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class HypothesisUnmet : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class MissingLambda : public Error {
 public:
  using Error::Error;
};

class ExplorationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Name of the most derived error class, for reports.
inline const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const NotDivisible*>(&e)) return "NotDivisible";
  if (dynamic_cast<const NotSkewSymmetrizable*>(&e)) return "NotSkewSymmetrizable";
  if (dynamic_cast<const CompatibilityBroken*>(&e)) return "CompatibilityBroken";
  if (dynamic_cast<const SignCoherenceViolated*>(&e)) return "SignCoherenceViolated";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const HypothesisUnmet*>(&e)) return "HypothesisUnmet";
  if (dynamic_cast<const RankDeficient*>(&e)) return "RankDeficient";
  if (dynamic_cast<const MissingLambda*>(&e)) return "MissingLambda";
  if (dynamic_cast<const ExplorationBudgetExceeded*>(&e)) return "ExplorationBudgetExceeded";
  if (dynamic_cast<const TermLimitExceeded*>(&e)) return "TermLimitExceeded";
  if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const StructuralError*>(&e)) return "StructuralError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "exception";
}

}  // namespace gca

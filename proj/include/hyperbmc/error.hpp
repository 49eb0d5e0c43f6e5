#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperbmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based (0 when not line-oriented),
/// `column` is a 0-based character offset within the line or expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line_;
  std::size_t column_;
};

class UnknownOperatorError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Well-formed text describing an ill-formed model (duplicate state,
/// non-total state, ...). `rule` is a short machine-readable tag and
/// `subject` names the offending identifier.
class ModelError : public Error {
 public:
  ModelError(std::string rule, std::string subject, const std::string& message)
      : Error(message), rule_(std::move(rule)), subject_(std::move(subject)) {}

  const std::string& rule() const { return rule_; }
  const std::string& subject() const { return subject_; }

 private:
  std::string rule_;
  std::string subject_;
};

/// Property outside the checkable fragment (anything but one alternation
/// followed by a single G over a relational predicate).
class FragmentError : public Error {
 public:
  using Error::Error;
};

class BoundError : public Error {
 public:
  using Error::Error;
};

class EmptyProductError : public Error {
 public:
  using Error::Error;
};

/// The SAT backend failed to produce an answer (not the same as UNSAT).
class BackendError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A decoded witness or counterexample failed independent validation.
class SoundnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperbmc

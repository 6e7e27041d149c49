#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sstl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph: duplicate ids, unknown endpoints, bad weights.
class SpaceError : public Error {
public:
  using Error::Error;
};

/// Operands of a signal operation do not live on the same time domain.
class SignalError : public Error {
public:
  using Error::Error;
};

/// Formula text that does not follow the grammar. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Inputs that do not fit together: a formula variable missing from the
/// trace, or a trace whose locations differ from the space.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// Formula/trace/space combination that cannot be evaluated.
class EvaluationError : public Error {
public:
  using Error::Error;
};

/// The formula looks further ahead than the trace reaches.
class HorizonError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

/// File content that does not match its documented format.
class FormatError : public Error {
public:
  FormatError(const std::string& message, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Explicit integration produced a non-finite state.
class IntegrationError : public Error {
public:
  IntegrationError(const std::string& message, double time);
  double time() const noexcept { return time_; }

private:
  double time_;
};

} // namespace sstl

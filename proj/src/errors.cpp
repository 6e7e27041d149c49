#include "sstl/errors.hpp"

namespace sstl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

FormatError::FormatError(const std::string& message, std::size_t line)
    : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

IntegrationError::IntegrationError(const std::string& message, double time)
    : Error(message), time_(time) {}

} // namespace sstl

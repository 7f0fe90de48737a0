#pragma once

#include <stdexcept>
#include <string>

namespace optiverse {

// Every physics/domain failure names the invariant it violated so that the
// CLI can report it verbatim on stderr.
class DomainError : public std::domain_error
{
public:
  DomainError(std::string invariant, std::string message)
    : std::domain_error(invariant + ": " + message), invariant_(std::move(invariant)), message_(std::move(message))
  {
  }

  std::string const &invariant() const noexcept { return invariant_; }
  std::string const &message() const noexcept { return message_; }

private:
  std::string invariant_;
  std::string message_;
};

// Configuration problems (parse, schema, validation). line/column are 1-based,
// zero when the error is not tied to a source position.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string invariant, std::string const &what, int line = 0, int column = 0)
    : std::runtime_error(format(invariant, what, line, column)),
      invariant_(std::move(invariant)), line_(line), column_(column)
  {
  }

  std::string const &invariant() const noexcept { return invariant_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  static std::string format(std::string const &inv, std::string const &what, int line, int column)
  {
    std::string s = inv + ": " + what;
    if (line > 0)
      s += " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    return s;
  }

  std::string invariant_;
  int line_;
  int column_;
};

} // namespace optiverse

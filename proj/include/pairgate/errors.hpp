#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairgate
{
/// An input lies outside the domain of a physical formula (negative length,
/// index below one, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Arguments are individually valid but inconsistent with each other or with
/// an operation's contract (process mismatch, too few RK4 steps, ...).
class ContractError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input: unit strings, material files.
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    /// 1-based line of the offending input, 0 when not line oriented.
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};
}  // namespace pairgate

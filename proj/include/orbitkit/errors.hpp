#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitkit
{
    /// A numeric argument lies outside the domain of the operation
    /// (non-positive frequency, m = 0 orbit, overdamped parameters, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// Tensor or matrix dimensions that do not fit together.
    class ShapeError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Malformed text input; carries the 1-based line number.
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(std::size_t line, const std::string& what)
            : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
        {
        }

        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };
} // namespace orbitkit

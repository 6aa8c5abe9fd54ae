#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace divorce
{
    /// Malformed text input. Line and column are 1-based; column 0 means "whole line".
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(std::size_t line, std::size_t column, const std::string & what);

        auto line() const -> std::size_t { return _line; }
        auto column() const -> std::size_t { return _column; }

    private:
        std::size_t _line, _column;
    };

    /// Well-formed input that violates a semantic invariant (unknown names, non-mutual
    /// acceptability, a pair set that is not a matching, a bad source graph, ...).
    class ValidationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// An explicit size precondition (enumeration bound, node budget) was exceeded.
    class GuardExceeded : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

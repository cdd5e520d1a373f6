#pragma once

#include <stdexcept>
#include <string>

namespace perfcol
{
    /// A numeric argument is outside its supported range.
    class ParameterError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Malformed textual or JSON input (edge lists, matrices, colourings, stores).
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A precondition of a construction does not hold.
    class PreconditionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Exhaustive work stopped early because its resource budget ran out.
    class IncompleteError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A persisted results store failed re-verification on load.
    class StoreError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

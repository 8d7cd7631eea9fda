#pragma once

#include <stdexcept>
#include <string>

namespace ecca {

// Malformed text input (array or record files). `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// A record that cannot have been produced by any run of the constructor.
class InconsistentRecordError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit input sequence ran out before the iteration budget.
class InputExhaustedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact enumeration would exceed the configured guard.
class EnumerationLimitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bound whose defining inequality can never drop below 1.
class VacuousBoundError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ecca

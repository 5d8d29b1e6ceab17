#pragma once

#include <stdexcept>
#include <string>

namespace arcad {

/// Configuration / input file errors, with source location where known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Mismatched vector/matrix sizes between coupled arguments.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A direction-dependent operation was handed a vanishing direction.
class DegenerateDirectionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Simulation produced a non-finite value. Names the first bad channel.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::string channel, double time)
        : std::runtime_error("non-finite value in '" + channel + "' at t=" +
                             std::to_string(time) + " s"),
          channel_(std::move(channel)), time_(time) {}

    const std::string& channel() const { return channel_; }
    double time() const { return time_; }

private:
    std::string channel_;
    double time_;
};

} // namespace arcad

#pragma once

#include <stdexcept>
#include <string>

namespace citenet {

// Base class for all toolkit errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unusable input data (bad file contents, out-of-range ids,
// mismatched partitions). Maps to CLI exit code 2.
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

// Parse failure with the offending 1-based line number.
class parse_error : public input_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : input_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Deliberate refusal to run an algorithm outside its supported regime
// (e.g. spectral clustering over the size cap). Maps to CLI exit code 3.
class refusal_error : public error {
public:
    explicit refusal_error(const std::string& what) : error(what) {}
};

} // namespace citenet

#pragma once

#include <stdexcept>
#include <string>

namespace vcg {

// Invalid argument values (bad p, bad n, malformed spec).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input exceeds a configured size limit (exact solvers, exact MIS).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text decoding failure; line is 1-based.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    int line;
};

}  // namespace vcg

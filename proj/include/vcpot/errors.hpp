#pragma once

#include <stdexcept>
#include <string>

namespace vcpot {

// Bad user input: unparsable polynomial, inconsistent config, wrong sizes.
// The CLI maps this family to exit code 1.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical precondition failed: empty level set, unstable basis,
// suspected non-isolated singularity, lambda_mu = 0, degree overflow.
// Exit code 2.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal numerical failure (divergence, degenerate ray casting, ...).
// Exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : config_error {
    size_t position;
    parse_error(const std::string& msg, size_t pos)
        : config_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace vcpot

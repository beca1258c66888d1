#pragma once

#include <stdexcept>
#include <string>

namespace wittrat {

/// Raised by every computation in the library when an operation's
/// precondition fails or a result cannot be produced.
class math_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a built-in consistency check fails; indicates a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class parse_error : public math_error {
public:
    parse_error(std::size_t position, std::string expected, const std::string& detail)
        : math_error("parse error at position " + std::to_string(position) + ": " + detail +
                     " (expected " + expected + ")"),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

}  // namespace wittrat

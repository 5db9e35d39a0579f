#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace zetaline {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kEps = 2.220446049250313e-16;

/// Violated caller contract (bad argument, out-of-domain parameter,
/// incomplete table, ...). The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what)
        : std::invalid_argument(what) {}
};

/// File-level failure (missing file, bad bytes, ...). CLI exit code 3.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input content; carries the 1-based line number when known.
class parse_error : public io_error {
public:
    parse_error(const std::string& what, long line)
        : io_error(line > 0 ? what + " (line " + std::to_string(line) + ")"
                            : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// An iteration failed to converge (unresolved bracket, exhausted rescans).
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what)
        : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw precondition_error(msg);
}

inline bool finite(double x) { return std::isfinite(x); }

}  // namespace detail

}  // namespace zetaline

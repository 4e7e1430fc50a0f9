#pragma once

#include <stdexcept>
#include <string>

namespace fracineq {

// Precondition or configuration violation detected before any numerics ran.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure: non-finite data, solver residual too large, inadequate
// quadrature range.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
}

}  // namespace detail
}  // namespace fracineq

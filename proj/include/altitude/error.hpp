#pragma once

#include <stdexcept>
#include <string>

namespace altitude {

// Caller supplied something malformed: bad parameters, illegal moves,
// unreadable files. The CLI maps this to exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A property that should always hold did not. Always a bug in this
// library; the CLI maps this to exit code 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] inline void fail_internal(const std::string& what) { throw InternalError(what); }
}  // namespace detail

#define ALTITUDE_CHECK(cond, msg)                                                           \
  do {                                                                                      \
    if (!(cond)) ::altitude::detail::fail_internal(std::string("check failed: ") + (msg)); \
  } while (0)

}  // namespace altitude

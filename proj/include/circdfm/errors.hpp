#ifndef CIRCDFM_ERRORS_HPP_
#define CIRCDFM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace circdfm {

// Bad user input: malformed files, inconsistent configuration, violated
// preconditions on data. The CLI maps these to exit code 1; everything
// else (I/O failures, numerical breakdown) exits 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace circdfm

#endif  // CIRCDFM_ERRORS_HPP_

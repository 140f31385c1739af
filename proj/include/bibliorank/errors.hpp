#pragma once

#include <stdexcept>
#include <string>

namespace bibliorank {

// Problems caused by input data or configuration. The CLI maps these to
// exit code 2; everything else that escapes is an internal error (exit 1).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bibliorank

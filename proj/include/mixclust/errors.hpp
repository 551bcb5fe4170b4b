#pragma once

#include <stdexcept>
#include <string>

namespace mixclust {

// Bad input data or parameters (CLI exit code 2).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal guard tripped: oracle size limit, non-convergence (CLI exit code 3).
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mixclust

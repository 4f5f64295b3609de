#pragma once

#include <stdexcept>
#include <string>

namespace fracdim {

// File access and parse failures. The CLI maps these to exit status 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Violated preconditions and degenerate inputs. The CLI maps these to
// exit status 3.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracdim

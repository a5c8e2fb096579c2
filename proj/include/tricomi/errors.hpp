#pragma once

#include <stdexcept>
#include <string>

namespace tricomi {

// Raised when an internal invariant is violated (e.g. an exponent ordering
// that must hold by construction). The CLI maps this to exit code 2.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tricomi

#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

// Bad user input: malformed files, unknown vertices, invalid parameters.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation was violated by the caller.
struct contract_error : std::runtime_error {
  explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// A property the construction guarantees failed to verify. Indicates a bug
// in this library, never bad input; surfaced for investigation instead of
// being repaired silently.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace coarse

#pragma once

#include <stdexcept>
#include <string>

namespace oblock {

// Base for everything thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed words, unknown types, wall indices out of range.
struct usage_error : error {
  using error::error;
};

// Structurally valid input naming an object outside the domain of the
// requested operation (element not a block representative, etc).
struct domain_error : error {
  using error::error;
};

// Group cannot be enumerated: infinite type or element cap exceeded.
struct build_error : error {
  using error::error;
};

// A persisted KL table failed validation.
struct cache_error : error {
  using error::error;
};

// An internal identity that must hold did not.  Any throw of this type is a
// bug in the engine or a broken premise, never a user mistake.
struct invariant_violation : error {
  using error::error;
};

}  // namespace oblock

#pragma once

#include <stdexcept>
#include <string>

namespace dessins {

// Base class of every error thrown by the library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// An operation precondition was violated (bad degree, disconnected input, ...).
class precondition_error : public error {
public:
  using error::error;
};

// A configured resource cap was exceeded (group order, enumeration degree, ...).
class cap_exceeded : public error {
public:
  using error::error;
};

// Numerical path continuation could not disambiguate a step.
class continuation_error : public error {
public:
  using error::error;
};

// An invariant that holds by construction failed; indicates a bug.
class internal_error : public error {
public:
  using error::error;
};

}  // namespace dessins

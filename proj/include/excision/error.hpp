#pragma once
#include <stdexcept>
#include <string>

namespace exl {

// malformed input text or expressions
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// structurally valid input outside the fragment the engine can handle
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& m) : std::runtime_error(m) {}
};

// finiteness / termination caps exceeded
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& m) : std::runtime_error(m) {}
};

// well-formed request whose mathematical preconditions fail (bad presentation,
// non-associative table, hom not a hom, ...)
struct InvalidObjectError : std::runtime_error {
  explicit InvalidObjectError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace exl

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qg {

// Malformed or out-of-range input. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Identity text that does not match the grammar; offset is a byte index
// into the parsed string (== length for "unexpected end of input").
class SyntaxError : public InputError {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// A division symbol was evaluated over a table that is not a quasigroup.
class UnsupportedOperation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qg

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubetop {

// Wrong face dimension handed to a routine that expects a fixed one.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input too large for an exact routine with a hard size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Iterative construction exceeded its growth budget.
class GrowthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input. `offset` is the byte where decoding failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace cubetop

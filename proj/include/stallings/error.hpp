#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stallings {

/// Base class for every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (bad letter, K not <= H, ...).
class invalid_input : public error {
 public:
  using error::error;
};

/// Parse failure with the offending character position.
class parse_error : public invalid_input {
 public:
  parse_error(const std::string& what, std::size_t position)
      : invalid_input(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// rewrite_in_basis was asked to rewrite a word outside the subgroup.
class not_a_member : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// A search exceeded its configured budget before it could answer.
class resource_limit : public error {
 public:
  resource_limit(const std::string& what, std::uint64_t bound)
      : error(what), bound_(bound) {}

  /// The bound (vertex count, state count or word length) that was exceeded.
  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t bound_;
};

}  // namespace stallings

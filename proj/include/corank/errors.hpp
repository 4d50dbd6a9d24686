#pragma once

#include <stdexcept>

namespace corank {

/// Malformed text input: words, presentations, polynomials, data files.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace corank

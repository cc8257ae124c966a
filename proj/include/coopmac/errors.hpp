#pragma once

#include <stdexcept>
#include <string>

namespace coopmac {

/// Thrown when an argument violates a documented precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a distance lies outside the modelled transmission range.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace coopmac

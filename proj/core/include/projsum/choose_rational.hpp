#pragma once

#include <stdexcept>

#include "projsum/rational.hpp"

namespace projsum {

class EmptyInterval : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rational of least denominator strictly inside (lo, hi); among those the one
/// of least absolute numerator. Throws EmptyInterval when lo >= hi.
BigRational choose_rational(const BigRational& lo, const BigRational& hi);

}  // namespace projsum

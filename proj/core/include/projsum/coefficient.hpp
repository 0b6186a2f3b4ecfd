#pragma once

#include <string>
#include <variant>

#include "projsum/rational.hpp"

namespace projsum {

/// A real scalar that is either exact (rational) or approximate (double).
/// Exact op Exact stays exact; anything touching an approximate value is approximate.
class Coefficient {
 public:
  Coefficient() : value_(BigRational(0)) {}
  Coefficient(BigRational exact) : value_(std::move(exact)) {}  // NOLINT
  Coefficient(long exact) : value_(BigRational(exact)) {}       // NOLINT
  Coefficient(int exact) : value_(BigRational(exact)) {}        // NOLINT

  static Coefficient approx(double v) { return Coefficient(Tag{}, v); }
  static Coefficient exact(long num, long den) { return BigRational(num, den); }

  bool is_exact() const { return std::holds_alternative<BigRational>(value_); }
  const BigRational& exact_value() const { return std::get<BigRational>(value_); }
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// Integer part (floor) and fractional part, in the same representation.
  Coefficient floor() const;
  Coefficient fractional_part() const;
  /// Floor as a machine integer; throws if it does not fit.
  long floor_long() const;

  /// Rational exactly equal to this value (an approximate value maps to its dyadic rational).
  BigRational to_rational() const;

  /// "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;

  Coefficient operator-() const;
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b);

  /// Exact comparison when both are exact, double comparison otherwise.
  friend bool operator<(const Coefficient& a, const Coefficient& b);
  friend bool operator>(const Coefficient& a, const Coefficient& b) { return b < a; }
  friend bool operator<=(const Coefficient& a, const Coefficient& b) { return !(b < a); }
  friend bool operator>=(const Coefficient& a, const Coefficient& b) { return !(a < b); }
  /// Structural equality: same representation and same value.
  friend bool operator==(const Coefficient& a, const Coefficient& b);

 private:
  struct Tag {};
  Coefficient(Tag, double v) : value_(v) {}

  std::variant<BigRational, double> value_;
};

/// Exact values must agree exactly; if either side is approximate they must agree
/// within tol * max(1, |a|, |b|).
bool coefficients_match(const Coefficient& a, const Coefficient& b, double tol);

}  // namespace projsum

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace projsum {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exact rational number in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  BigRational(long numerator, long denominator);
  explicit BigRational(const mpq_class& q);

  /// Accepts "p", "p/q", "-p/q" and plain decimals such as "1.41421356".
  static BigRational parse(std::string_view text);
  /// Exact value of a finite double (every double is a dyadic rational).
  static BigRational from_double(double value);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Largest integer not above the value.
  mpz_class floor() const;
  /// Smallest integer not below the value.
  mpz_class ceil() const;
  /// value - floor(value), always in [0, 1).
  BigRational fractional_part() const;

  double to_double() const { return q_.get_d(); }
  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  const mpq_class& raw() const { return q_; }

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r);

 private:
  mpq_class q_;
};

BigRational abs(const BigRational& r);
BigRational min(const BigRational& a, const BigRational& b);
BigRational max(const BigRational& a, const BigRational& b);

/// Least common multiple of two positive integers.
mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace projsum

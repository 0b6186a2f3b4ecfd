#include "projsum/coefficient.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>

namespace projsum {

double Coefficient::to_double() const {
  if (is_exact()) return exact_value().to_double();
  return std::get<double>(value_);
}

int Coefficient::sign() const {
  if (is_exact()) return exact_value().sign();
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Coefficient Coefficient::floor() const {
  if (is_exact()) return BigRational(mpq_class(exact_value().floor()));
  return approx(std::floor(std::get<double>(value_)));
}

Coefficient Coefficient::fractional_part() const {
  if (is_exact()) return exact_value().fractional_part();
  double v = std::get<double>(value_);
  return approx(v - std::floor(v));
}

long Coefficient::floor_long() const {
  if (is_exact()) {
    mpz_class f = exact_value().floor();
    if (!f.fits_slong_p()) throw std::overflow_error("floor does not fit in long");
    return f.get_si();
  }
  double f = std::floor(std::get<double>(value_));
  if (!(f > static_cast<double>(LONG_MIN) && f < static_cast<double>(LONG_MAX)))
    throw std::overflow_error("floor does not fit in long");
  return static_cast<long>(f);
}

BigRational Coefficient::to_rational() const {
  if (is_exact()) return exact_value();
  return BigRational::from_double(std::get<double>(value_));
}

std::string Coefficient::to_string() const {
  if (is_exact()) return exact_value().to_string();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
  return std::string(buf, res.ptr);
}

Coefficient Coefficient::operator-() const {
  if (is_exact()) return -exact_value();
  return approx(-std::get<double>(value_));
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() + b.exact_value();
  return Coefficient::approx(a.to_double() + b.to_double());
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() - b.exact_value();
  return Coefficient::approx(a.to_double() - b.to_double());
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() * b.exact_value();
  return Coefficient::approx(a.to_double() * b.to_double());
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() / b.exact_value();
  if (b.to_double() == 0.0) throw std::domain_error("Coefficient: division by zero");
  return Coefficient::approx(a.to_double() / b.to_double());
}

bool operator<(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() < b.exact_value();
  return a.to_double() < b.to_double();
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact_value() == b.exact_value();
  return a.to_double() == b.to_double();
}

bool coefficients_match(const Coefficient& a, const Coefficient& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() == b.exact_value();
  double x = a.to_double();
  double y = b.to_double();
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= tol * scale;
}

}  // namespace projsum

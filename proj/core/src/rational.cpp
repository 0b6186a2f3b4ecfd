#include "projsum/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace projsum {

BigRational::BigRational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("BigRational: zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

BigRational::BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

BigRational BigRational::parse(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(i, end - i);
  if (body.empty()) throw ParseError("empty number", i);

  bool negative = false;
  std::size_t start = 0;
  if (body[0] == '+' || body[0] == '-') {
    negative = body[0] == '-';
    start = 1;
  }
  std::string_view digits = body.substr(start);

  mpq_class q;
  if (auto slash = digits.find('/'); slash != std::string_view::npos) {
    auto num = digits.substr(0, slash);
    auto den = digits.substr(slash + 1);
    if (!all_digits(num)) throw ParseError("bad numerator", i + start);
    if (!all_digits(den)) throw ParseError("bad denominator", i + start + slash + 1);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator", i + start + slash + 1);
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = digits.find('.'); dot != std::string_view::npos) {
    auto whole = digits.substr(0, dot);
    auto frac = digits.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw ParseError("bad decimal", i + start);
    if (!whole.empty() && !all_digits(whole)) throw ParseError("bad decimal", i + start);
    if (!frac.empty() && !all_digits(frac)) throw ParseError("bad decimal", i + start + dot + 1);
    std::string all = std::string(whole) + std::string(frac);
    if (all.empty()) all = "0";
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = mpq_class(mpz_class(all, 10), scale);
  } else {
    if (!all_digits(digits)) throw ParseError("bad integer", i + start);
    q = mpq_class(mpz_class(std::string(digits), 10));
  }
  q.canonicalize();
  if (negative) q = -q;
  return BigRational(q);
}

BigRational BigRational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("BigRational: non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return BigRational(q);
}

mpz_class BigRational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class BigRational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigRational BigRational::fractional_part() const {
  return BigRational(mpq_class(q_ - mpq_class(floor())));
}

std::string BigRational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational& BigRational::operator+=(const BigRational& o) {
  q_ += o.q_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  q_ -= o.q_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  q_ *= o.q_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.q_ == 0) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

BigRational abs(const BigRational& r) { return r.sign() < 0 ? -r : r; }
BigRational min(const BigRational& a, const BigRational& b) { return b < a ? b : a; }
BigRational max(const BigRational& a, const BigRational& b) { return a < b ? b : a; }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace projsum

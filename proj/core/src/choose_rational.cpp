#include "projsum/choose_rational.hpp"

#include <optional>

namespace projsum {

namespace {

// Simplest rational in (lo, hi) with 0 <= lo < hi; hi absent means +infinity.
BigRational simplest_positive(const BigRational& lo, const std::optional<BigRational>& hi) {
  const BigRational fl(mpq_class(lo.floor()));
  const BigRational next = fl + BigRational(1);
  if (!hi || next < *hi) return next;
  // lo and hi share the integer part fl, and hi <= fl + 1.
  const BigRational lo_frac = lo - fl;
  const BigRational hi_frac = *hi - fl;
  std::optional<BigRational> inv_hi;
  if (lo_frac.sign() != 0) inv_hi = BigRational(1) / lo_frac;
  const BigRational inner = simplest_positive(BigRational(1) / hi_frac, inv_hi);
  return fl + BigRational(1) / inner;
}

}  // namespace

BigRational choose_rational(const BigRational& lo, const BigRational& hi) {
  if (!(lo < hi)) throw EmptyInterval("empty interval (" + lo.to_string() + ", " + hi.to_string() + ")");
  if (lo.sign() < 0 && hi.sign() > 0) return BigRational(0);
  if (hi.sign() <= 0) return -simplest_positive(-hi, -lo);
  return simplest_positive(lo, hi);
}

}  // namespace projsum

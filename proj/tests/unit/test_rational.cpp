#include <doctest.h>
#include <mpfr.h>

#include <random>

#include "projsum/choose_rational.hpp"
#include "projsum/coefficient.hpp"
#include "projsum/rational.hpp"

using namespace projsum;

TEST_CASE("parse and print") {
  CHECK(BigRational::parse("3/6").to_string() == "1/2");
  CHECK(BigRational::parse("-4/2").to_string() == "-2");
  CHECK(BigRational::parse("1.41421356") == BigRational(35355339, 25000000));
  CHECK(BigRational::parse("-0.25") == BigRational(-1, 4));
  CHECK(BigRational::parse(".5") == BigRational(1, 2));
  CHECK(BigRational::parse("7") == BigRational(7));
  CHECK_THROWS_AS(BigRational::parse(""), ParseError);
  CHECK_THROWS_AS(BigRational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(BigRational::parse("1.2.3"), ParseError);
  CHECK_THROWS_AS(BigRational::parse("abc"), ParseError);
}

TEST_CASE("floor, ceil and fractional part") {
  const BigRational x(-7, 3);
  CHECK(x.floor() == -3);
  CHECK(x.ceil() == -2);
  CHECK(x.fractional_part() == BigRational(2, 3));
  CHECK(BigRational(5, 1).fractional_part().sign() == 0);
  CHECK(BigRational::from_double(0.375) == BigRational(3, 8));
}

TEST_CASE("coefficient representation rules") {
  const Coefficient a = Coefficient::exact(1, 3), b = Coefficient::exact(2, 3);
  CHECK((a + b).is_exact());
  CHECK((a + b) == Coefficient(1));
  const Coefficient c = a + Coefficient::approx(0.5);
  CHECK_FALSE(c.is_exact());
  CHECK(c.to_double() == doctest::Approx(5.0 / 6.0));
  CHECK(Coefficient::approx(2.5).floor().to_double() == 2.0);
  CHECK(Coefficient::approx(0.1).to_string() == "0.1");
  CHECK(Coefficient::exact(6, 4).to_string() == "3/2");
  CHECK(coefficients_match(Coefficient::approx(1.0 / 3.0), a, 1e-12));
  CHECK_FALSE(coefficients_match(Coefficient::exact(1, 3), Coefficient::exact(1, 4), 1e-1));
}

namespace {

// 256-bit binary floating point reference for one binary operation.
struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, 256); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

void set_ratio(Mp& out, long n, long d) {
  Mp den;
  mpfr_set_si(out.v, n, MPFR_RNDN);
  mpfr_set_si(den.v, d, MPFR_RNDN);
  mpfr_div(out.v, out.v, den.v, MPFR_RNDN);
}

}  // namespace

TEST_CASE("arithmetic agrees with a 256-bit float oracle on 10^4 operations") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const long n1 = num(rng), d1 = den(rng), n2 = num(rng), d2 = den(rng);
    const int op = i % 4;
    if (op == 3 && n2 == 0) continue;
    const BigRational a(n1, d1), b(n2, d2);
    BigRational exact;
    Mp x, y, r, q, diff;
    set_ratio(x, n1, d1);
    set_ratio(y, n2, d2);
    switch (op) {
      case 0: exact = a + b; mpfr_add(r.v, x.v, y.v, MPFR_RNDN); break;
      case 1: exact = a - b; mpfr_sub(r.v, x.v, y.v, MPFR_RNDN); break;
      case 2: exact = a * b; mpfr_mul(r.v, x.v, y.v, MPFR_RNDN); break;
      default: exact = a / b; mpfr_div(r.v, x.v, y.v, MPFR_RNDN); break;
    }
    mpfr_set_q(q.v, exact.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_sub(diff.v, q.v, r.v, MPFR_RNDN);
    mpfr_abs(diff.v, diff.v, MPFR_RNDN);
    mpfr_abs(q.v, q.v, MPFR_RNDN);
    mpfr_mul_2si(q.v, q.v, -240, MPFR_RNDN);
    if (mpfr_cmp(diff.v, q.v) > 0) FAIL("mismatch at op " << i << ": " << exact.to_string());
    ++checked;
  }
  CHECK(checked > 9900);
}

namespace {

// Least denominator first, then least numerator, by direct search.
BigRational brute_choose(const BigRational& lo, const BigRational& hi) {
  for (long q = 1;; ++q) {
    const BigRational qq(q);
    const mpz_class first = (lo * qq).floor() + 1;
    const mpz_class last = (hi * qq).ceil() - 1;
    if (first > last) continue;
    mpz_class best = first;
    if (first <= 0 && last >= 0) best = 0;
    else if (last < 0) best = last;
    return BigRational(mpq_class(best, q));
  }
}

}  // namespace

TEST_CASE("choose_rational examples") {
  CHECK(choose_rational(BigRational(1, 3), BigRational(2, 3)) == BigRational(1, 2));
  CHECK(choose_rational(BigRational(1), BigRational(2)) == BigRational(3, 2));
  CHECK(choose_rational(BigRational::parse("1.4"), BigRational::parse("1.6")) == BigRational(3, 2));
  CHECK(choose_rational(BigRational(-1, 2), BigRational(1, 3)) == BigRational(0));
  CHECK(choose_rational(BigRational(-2), BigRational(-1)) == BigRational(-3, 2));
  CHECK_THROWS_AS(choose_rational(BigRational(1), BigRational(1)), EmptyInterval);
  CHECK_THROWS_AS(choose_rational(BigRational(2), BigRational(1)), EmptyInterval);
}

TEST_CASE("choose_rational matches exhaustive denominator search") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-300, 300), den(1, 60);
  for (int i = 0; i < 3000; ++i) {
    BigRational lo(num(rng), den(rng)), hi(num(rng), den(rng));
    if (lo == hi) continue;
    if (hi < lo) std::swap(lo, hi);
    const BigRational got = choose_rational(lo, hi);
    CHECK(lo < got);
    CHECK(got < hi);
    CHECK(got == brute_choose(lo, hi));
  }
}

#include <doctest.h>

#include "projsum/ktheory.hpp"
#include "projsum/rational.hpp"

using namespace projsum;

namespace {

// Order by repeated addition.
std::int64_t brute_order(const KClass& g) {
  KClass acc = g;
  std::int64_t n = 1;
  while (!acc.is_zero()) {
    acc = acc + g;
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("group parsing") {
  CHECK(KGroup::parse("").order() == 1);
  CHECK(KGroup::parse("1").order() == 1);
  CHECK(KGroup::parse("2,3").moduli() == std::vector<std::int64_t>{2, 3});
  CHECK(KGroup::parse(" 4 , 6 ").order() == 24);
  CHECK_THROWS_AS(KGroup::parse("0"), ParseError);
  CHECK_THROWS_AS(KGroup::parse("2,-3"), ParseError);
  CHECK_THROWS_AS(KGroup::parse("2,,3"), ParseError);
  CHECK_THROWS_AS(KGroup::parse("x"), ParseError);
  CHECK_THROWS_AS(KGroup(std::vector<std::int64_t>{0}), std::invalid_argument);
  CHECK(KGroup::cuntz(2).order() == 1);
  CHECK(KGroup::cuntz(5).moduli() == std::vector<std::int64_t>{4});
}

TEST_CASE("class orders match repeated addition") {
  for (const char* spec : {"", "2", "3", "4", "2,3", "2,2", "4,6", "12", "3,5,2"}) {
    const KGroup g = KGroup::parse(spec);
    const auto all = g.elements();
    CHECK(static_cast<std::int64_t>(all.size()) == g.order());
    for (const auto& x : all) CHECK(class_order(x) == brute_order(x));
  }
}

TEST_CASE("group axioms over small groups") {
  const KGroup g = KGroup::parse("2,3");
  const auto all = g.elements();
  for (const auto& a : all) {
    CHECK((a + g.zero()) == a);
    CHECK((a + (-a)).is_zero());
    CHECK(a.times(6).is_zero());
    CHECK(a.times(0).is_zero());
    for (const auto& b : all) {
      CHECK((a + b) == (b + a));
      CHECK(((a - b) + b) == a);
    }
  }
}

TEST_CASE("element reduces residues") {
  const KGroup g = KGroup::parse("3");
  const std::int64_t r[] = {-1};
  CHECK(g.element(r).residues() == std::vector<std::int64_t>{2});
  const std::int64_t two[] = {1, 1};
  CHECK_THROWS_AS(g.element(two), GroupMismatch);
  CHECK(g.element(r).to_string() == "(2)");
}

TEST_CASE("split legality is the sum condition") {
  const KGroup g = KGroup::parse("2,3");
  const auto all = g.elements();
  for (const auto& p : all)
    for (const auto& a : all)
      for (const auto& b : all) {
        const std::vector<KClass> kids{a, b};
        CHECK(split_legal(p, kids) == ((a + b) == p));
      }
  // n + 1 copies of an order-n class sum back to it.
  const std::int64_t one[] = {1, 1};
  const KClass x = g.element(one);
  CHECK(split_legal(x, std::vector<KClass>(7, x)));
  CHECK_THROWS(split_legal(x, std::vector<KClass>{}));
  const KGroup h = KGroup::parse("2");
  CHECK_THROWS_AS(split_legal(x, std::vector<KClass>{h.zero()}), GroupMismatch);
}

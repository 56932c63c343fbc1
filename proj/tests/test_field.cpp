#include <doctest.h>

#include "p1bundles/field.hpp"
#include "p1bundles/rng.hpp"

using namespace p1b;

TEST_CASE("rational arithmetic is exact") {
  Field q = rationals();
  Scalar a = Scalar::parse("3/7", q);
  Scalar b = Scalar::parse("-2/5", q);
  CHECK((a + (-a)).is_zero());
  CHECK((a * a.inv()).is_one());
  CHECK((a + b).str() == "1/35");
  CHECK((a * b).str() == "-6/35");
  CHECK(Scalar::parse("4/6", q) == Scalar::parse("2/3", q));
}

TEST_CASE("prime field arithmetic") {
  Field f = prime_field(32003);
  Scalar a = Scalar::of_int(-1, f);
  CHECK(a.residue() == 32002);
  CHECK((a * a).is_one());
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Scalar x = rng.nonzero_scalar(f);
    CHECK((x * x.inv()).is_one());
    CHECK((x + (-x)).is_zero());
  }
  CHECK(Scalar::parse("1/2", f) * Scalar::of_int(2, f) == Scalar::one(f));
}

TEST_CASE("field validation and mixing") {
  CHECK_THROWS_AS(prime_field(32004), Error);
  CHECK_THROWS_AS(prime_field(1), Error);
  Scalar a = Scalar::of_int(1, rationals());
  Scalar b = Scalar::of_int(1, prime_field(5));
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(Scalar::of_int(1, prime_field(5)).residue() == 1 &&
                      (a * b).is_one(),
                  Error);
}

TEST_CASE("division by zero") {
  Field f = prime_field(5);
  CHECK_THROWS_AS(Scalar::zero(f).inv(), Error);
  CHECK_THROWS_AS(Scalar::parse("1/5", f), Error);
}

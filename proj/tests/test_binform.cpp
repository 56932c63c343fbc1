#include <doctest.h>

#include "p1bundles/binform.hpp"
#include "test_util.hpp"

using namespace p1b;

TEST_CASE("formal derivatives") {
  Field q = rationals();
  CHECK(mono(q, 2, 1).dt() == mono(q, 2, 0));
  Field f2 = prime_field(2);
  CHECK(mono(f2, 0, 2).dt().is_zero());
}

TEST_CASE("exact division") {
  Field q = rationals();
  BinForm f = mono(q, 3, 1) - mono(q, 2, 2);  // s^3 t - s^2 t^2
  BinForm quo = f.exact_div(mono(q, 1, 0));
  CHECK(quo == mono(q, 2, 1) - mono(q, 1, 2));
  CHECK_THROWS_AS(f.exact_div(mono(q, 0, 2)), Error);
  CHECK_THROWS_AS(f.exact_div(BinForm::zero(q)), Error);
}

TEST_CASE("products") {
  Field q = rationals();
  BinForm s = mono(q, 1, 0), t = mono(q, 0, 1);
  CHECK((s + t) * (s - t) == mono(q, 2, 0) - mono(q, 0, 2));
}

TEST_CASE("degree rules") {
  Field q = rationals();
  CHECK(!BinForm::zero(q).degree().has_value());
  CHECK((mono(q, 1, 0) + (-mono(q, 1, 0))).is_zero());
  CHECK_THROWS_AS(mono(q, 2, 0) + mono(q, 1, 0), Error);
  CHECK((mono(q, 2, 0) + BinForm::zero(q)) == mono(q, 2, 0));
}

TEST_CASE("Euler identity on random forms") {
  // s ds(f) + t dt(f) = e f, and = 0 when p | e
  for (std::uint64_t p : {0ull, 32003ull, 3ull}) {
    Field f = p ? prime_field(p) : rationals();
    Rng rng(42);
    BinForm s = mono(f, 1, 0), t = mono(f, 0, 1);
    for (int e = 1; e <= 7; ++e)
      for (int rep = 0; rep < 5; ++rep) {
        BinForm g = BinForm::random(f, e, rng);
        BinForm lhs_s = g.ds().is_zero() ? BinForm::zero(f) : s * g.ds();
        BinForm lhs_t = g.dt().is_zero() ? BinForm::zero(f) : t * g.dt();
        BinForm lhs = lhs_s.is_zero() ? lhs_t
                      : lhs_t.is_zero() ? lhs_s
                                        : lhs_s + lhs_t;
        BinForm rhs = g * Scalar::of_int(e, f);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("division inverts multiplication") {
  Field f = prime_field(32003);
  Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    BinForm a = BinForm::random(f, 1 + static_cast<int>(rng.below(5)), rng);
    BinForm b = BinForm::random(f, 1 + static_cast<int>(rng.below(5)), rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).exact_div(b) == a);
  }
}

TEST_CASE("gcd") {
  Field q = rationals();
  BinForm s = mono(q, 1, 0), t = mono(q, 0, 1);
  BinForm a = (s + t) * s * s;
  BinForm b = (s + t) * t;
  BinForm g = form_gcd(a, b);
  CHECK(g == (s + t).monic());
  CHECK(*form_gcd(s * s, t * t).degree() == 0);
  CHECK(form_gcd(BinForm::zero(q), b) == b.monic());
}

TEST_CASE("evaluation and composition") {
  Field f = prime_field(101);
  BinForm g = mono(f, 2, 1) + mono(f, 0, 3, 5);
  Scalar s0 = Scalar::of_int(3, f), t0 = Scalar::of_int(4, f);
  // g(3,4) = 9*4 + 5*64 = 356 = 53 mod 101
  CHECK(g.eval(s0, t0) == Scalar::of_int(356, f));
  CHECK_THROWS_AS(g.eval(Scalar::zero(f), Scalar::zero(f)), Error);
  // compose with the swap (s,t)->(t,s)
  BinForm h = g.compose(Scalar::zero(f), Scalar::one(f), Scalar::one(f),
                        Scalar::zero(f));
  CHECK(h == mono(f, 1, 2) + mono(f, 3, 0, 5));
}

TEST_CASE("multiplicities and roots") {
  Field q = rationals();
  BinForm s = mono(q, 1, 0), t = mono(q, 0, 1);
  BinForm g = s * s * t * (s - t);
  CHECK(g.s_multiplicity() == 2);
  CHECK(g.t_multiplicity() == 1);
  auto root = find_projective_root(s - t);
  REQUIRE(root.has_value());
  CHECK((s - t).eval(root->first, root->second).is_zero());
}

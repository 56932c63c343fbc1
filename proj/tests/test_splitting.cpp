#include <doctest.h>

#include "p1bundles/splitting.hpp"
#include "p1bundles/field.hpp"

using namespace p1b;

TEST_CASE("h0 of twists") {
  SplittingType v({-5, -5});
  CHECK(v.h0(7) == 6);
  CHECK(v.h0(4) == 0);
  CHECK(SplittingType({0}).h0(0) == 1);
}

TEST_CASE("oracle inference round-trips") {
  SplittingType v({5, 5, 6});
  SplittingType got =
      infer_splitting([&](int d) { return v.h0(d); }, v.rank());
  CHECK(got == v);
  SplittingType w({-7, -3, 0, 0, 4});
  CHECK(infer_splitting([&](int d) { return w.h0(d); }, w.rank()) == w);
}

TEST_CASE("worked product-profile inference") {
  // h0(3)=0, h0(4)=3, h0(5)=8, rank 5 pins [-5,-5,-4,-4,-4]; check the
  // frozen profile first, then the inference.
  SplittingType expected({-5, -5, -4, -4, -4});
  CHECK(expected.h0(3) == 0);
  CHECK(expected.h0(4) == 3);
  CHECK(expected.h0(5) == 8);
  SplittingType got =
      infer_splitting([&](int d) { return expected.h0(d); }, 5);
  CHECK(got == expected);
}

TEST_CASE("inconsistent oracles are rejected") {
  CHECK_THROWS_AS(infer_splitting([](int) { return 3; }, 2), Error);
  // decreasing first differences
  CHECK_THROWS_AS(infer_splitting(
                      [](int d) {
                        if (d < 0) return 0L;
                        return d == 0 ? 2L : 2L + d;
                      },
                      5),
                  Error);
}

TEST_CASE("dual twist predicates") {
  SplittingType v({-5, -5, -4, -4, -4});
  CHECK(v.dual() == SplittingType({4, 4, 4, 5, 5}));
  CHECK(v.dual().ample());
  CHECK(v.dual().balanced());
  CHECK(v.twist(5) == SplittingType({0, 0, 1, 1, 1}));
  CHECK(SplittingType({1, 1}).ample());
  SplittingType unb({0, 2});
  CHECK(!unb.ample());
  CHECK(!unb.balanced());
  CHECK(unb.globally_generated());
  CHECK(v.degree() == -22);
  CHECK(v.rank() == 5);
}

TEST_CASE("h0 dominance") {
  CHECK(SplittingType({0, 0}).h0_dominated_by(SplittingType({-1, 1})));
  CHECK(!SplittingType({-1, 1}).h0_dominated_by(SplittingType({0, 0})));
}

#include <doctest.h>

#include "p1bundles/curve.hpp"
#include "test_util.hpp"

using namespace p1b;

TEST_CASE("curve validation") {
  Field q = rationals();
  SUBCASE("twisted cubic") {
    CurveMap c = CurveMap::rational_normal(q, 3, 3);
    auto cert = validate_curve(c);
    CHECK(cert.basepoint_free);
    CHECK(cert.immersion);
  }
  SUBCASE("base point reported") {
    CurveMap c(q, {{mono(q, 2, 0), mono(q, 1, 1)}});  // (s^2, st), gcd = s
    auto cert = validate_curve(c);
    CHECK(!cert.basepoint_free);
    CHECK(cert.detail.find("(0:1)") != std::string::npos);
  }
  SUBCASE("char p curve is an immersion") {
    Field f3 = prime_field(3);
    int p = 3;
    CurveMap c(f3, {{mono(f3, p + 1, 0), mono(f3, p, 1), mono(f3, 1, p),
                     mono(f3, 0, p + 1)}});
    auto cert = validate_curve(c);
    CHECK(cert.basepoint_free);
    CHECK(cert.immersion);
  }
}

TEST_CASE("euler cotangent models") {
  Field q = rationals();
  SUBCASE("twisted cubic restricted cotangent") {
    SubbundleModel m = euler_cotangent_model(CurveMap::rational_normal(q, 3, 3));
    CHECK(m.inferred() == SplittingType::uniform(-4, 3));
  }
  SUBCASE("line in P1") {
    CurveMap line(q, {{mono(q, 1, 0), mono(q, 0, 1)}});
    SubbundleModel m = euler_cotangent_model(line);
    CHECK(m.inferred() == SplittingType({-2}));
  }
  SUBCASE("conic x conic in P2 x P2") {
    Field f = prime_field(32003);
    CurveMap c(f, {{mono(f, 2, 0), mono(f, 1, 1), mono(f, 0, 2)},
                   {mono(f, 2, 0), mono(f, 1, 1), mono(f, 0, 2)}});
    SubbundleModel m = euler_cotangent_model(c);
    CHECK(m.inferred().rank() == 4);
    CHECK(m.inferred().degree() == -12);
    for (int d = 2; d <= 7; ++d)
      CHECK(euler_rows_map(c).kernel_dim(d) == m.inferred().h0(d));
  }
}

TEST_CASE("conormal models of rational normal curves") {
  Field q = rationals();
  auto expected = [](int e, int n) {
    std::vector<int> v(e - 1, -e - 2);
    for (int i = 0; i < n - e; ++i) v.push_back(-e);
    return SplittingType(v);
  };
  SUBCASE("(3,3) -> [-5,-5]") {
    CHECK(conormal_pn_model(CurveMap::rational_normal(q, 3, 3)).inferred() ==
          SplittingType({-5, -5}));
  }
  SUBCASE("(4,4) -> [-6,-6,-6]") {
    CHECK(conormal_pn_model(CurveMap::rational_normal(q, 4, 4)).inferred() ==
          SplittingType({-6, -6, -6}));
  }
  SUBCASE("(3,5) -> [-5,-5,-3,-3]") {
    CHECK(conormal_pn_model(CurveMap::rational_normal(q, 3, 5)).inferred() ==
          SplittingType({-5, -5, -3, -3}));
  }
  SUBCASE("formula grid e <= 6, n <= 8 over F_p") {
    Field f = prime_field(32003);
    for (int e = 1; e <= 6; ++e)
      for (int n = std::max(2, e); n <= 8; ++n) {
        SubbundleModel m = conormal_pn_model(CurveMap::rational_normal(f, e, n));
        CHECK(m.inferred() == expected(e, n));
        CHECK(m.inferred().rank() == n - 1);
        CHECK(m.inferred().degree() == -(n + 1) * e + 2);
      }
  }
  SUBCASE("explicit basis lies in the model") {
    for (auto [e, n] : std::vector<std::pair<int, int>>{{3, 3}, {3, 5}, {4, 4}}) {
      SubbundleModel m = conormal_pn_model(CurveMap::rational_normal(q, e, n));
      for (int i = e + 1; i <= n; ++i)
        CHECK_NOTHROW(m.express(rnc_dx_section(q, e, n, i), e));
      for (int i = 0; i + 2 <= e; ++i)
        CHECK_NOTHROW(m.express(rnc_q_section(q, e, n, i), e + 2));
    }
  }
  SUBCASE("characteristic 2: containment still holds") {
    // the -2 coefficient in q_i vanishes mod 2; the splitting and the
    // membership check are unaffected
    Field f2 = prime_field(2);
    SubbundleModel m = conormal_pn_model(CurveMap::rational_normal(f2, 3, 4));
    CHECK(m.inferred() == SplittingType({-5, -5, -3}));
    CHECK_NOTHROW(m.express(rnc_q_section(f2, 3, 4, 0), 5));
    CHECK_NOTHROW(m.express(rnc_dx_section(f2, 3, 4, 4), 3));
  }
}

TEST_CASE("differential form") {
  Field q = rationals();
  SUBCASE("conormal sections map to zero") {
    CurveMap c = CurveMap::rational_normal(q, 3, 3);
    SubbundleModel m = conormal_pn_model(c);
    for (int l = 0; l < m.generator_count(); ++l)
      CHECK(differential_form(c, m.column(l), m.twists()[l]).is_zero());
  }
  SUBCASE("line trivialization") {
    CurveMap line(q, {{mono(q, 1, 0), mono(q, 0, 1)}});
    Section g{mono(q, 0, 1), mono(q, 1, 0, -1)};  // (t, -s)
    BinForm h = differential_form(line, g, 2);
    REQUIRE(!h.is_zero());
    CHECK(*h.degree() == 0);
  }
  SUBCASE("twisted cubic: cotangent sections at d=4 surject onto O(2)") {
    CurveMap c = CurveMap::rational_normal(q, 3, 3);
    SubbundleModel m = euler_cotangent_model(c);
    auto sections = m.section_basis(4);
    Matrix images(q, 3, static_cast<int>(sections.size()));
    for (size_t i = 0; i < sections.size(); ++i) {
      BinForm h = differential_form(c, sections[i], 4);
      for (int k = 0; k <= 2; ++k)
        images.at(k, static_cast<int>(i)) = h.coeff(k);
    }
    CHECK(images.rank() == 3);
  }
  SUBCASE("violating the Euler rows is rejected") {
    CurveMap c = CurveMap::rational_normal(q, 2, 2);
    Section bad{mono(q, 0, 0), BinForm::zero(q), BinForm::zero(q)};
    CHECK_THROWS_AS(differential_form(c, bad, 2), Error);
  }
}

#include <doctest.h>

#include "p1bundles/json_io.hpp"
#include "test_util.hpp"

using namespace p1b;

TEST_CASE("curve JSON round trip") {
  Field q = rationals();
  CurveMap c(q, {{mono(q, 2, 0), mono(q, 1, 1) + mono(q, 0, 2, -3),
                  BinForm::zero(q)},
                 {mono(q, 1, 0), mono(q, 0, 1)}});
  ojson j = curve_json(c);
  CurveMap back = curve_from_json(j, q);
  REQUIRE(back.block_count() == 2);
  for (int b = 0; b < 2; ++b)
    for (size_t i = 0; i < c.blocks()[b].size(); ++i)
      CHECK(back.blocks()[b][i] == c.blocks()[b][i]);
}

TEST_CASE("curve JSON accepts rational coefficient strings") {
  Field q = rationals();
  ojson j = ojson::parse(R"({"blocks": [[["1", "-2/3"], ["0", "1"]]]})");
  CurveMap c = curve_from_json(j, q);
  CHECK(c.blocks()[0][0].coeff(1) == Scalar::parse("-2/3", q));
  // the same file parses into a prime field by reduction
  Field f = prime_field(5);
  CurveMap cf = curve_from_json(j, f);
  CHECK(cf.blocks()[0][0].coeff(1) == Scalar::parse("-2/3", f));
}

TEST_CASE("certificate schema keys in stable order") {
  Certificate cert;
  cert.ambient_label = "X";
  cert.curve_kind = "rnc";
  cert.degrees = {DivisorClass{{3}}};
  cert.splitting = SplittingType({1, 1});
  ojson j = certificate_json(cert);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"ambient", "curve", "degrees",
                                         "gate", "splitting", "flags",
                                         "field", "trials", "seed"});
}

TEST_CASE("equation serialization carries multidegrees") {
  Field f = prime_field(32003);
  Ambient g24 = ambient_grassmannian(f, 2, 4);
  ojson eqs = equations_json(g24);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0]["multidegree"] == ojson::array({2}));
  CHECK(eqs[0]["terms"].size() == 3);
}

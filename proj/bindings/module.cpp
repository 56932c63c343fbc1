#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "p1bundles/json_io.hpp"
#include "p1bundles/verify.hpp"

namespace py = pybind11;
using namespace p1b;

namespace {

std::vector<int> entries_of(const SplittingType& s) { return s.entries(); }

Field make_field(std::uint64_t characteristic) {
  return field_of_char(characteristic);
}

struct CatalogPair {
  Ambient ambient;
  CurveMap curve;
};

CatalogPair catalog(const std::string& kind, const std::vector<int>& params,
                    std::uint64_t characteristic) {
  Field f = make_field(characteristic);
  if (kind == "projective") {
    int e = params.size() > 1 ? params[0] : params.at(0);
    int n = params.size() > 1 ? params[1] : params.at(0);
    return {ambient_projective(f, n), CurveMap::rational_normal(f, e, n)};
  }
  if (kind == "product")
    return {ambient_product(f, params), product_curve(f, params)};
  if (kind == "grassmannian" || kind == "flag") {
    std::vector<int> ks(params.begin(), params.end() - 1);
    FlagCurveData fc = flag_curve(f, ks, params.back());
    return {std::move(fc.ambient), std::move(fc.curve)};
  }
  if (kind == "wps") {
    std::vector<int> weights(params.begin(), params.end() - 1);
    auto b = wps_b_search(weights, params.back());
    if (!b) throw Error("invalid-b-sequence", "no valid b-sequence");
    auto wc = wps_curve(f, weights, params.back(), *b);
    return {std::move(wc.ambient.ambient), std::move(wc.curve)};
  }
  throw Error("usage", "unknown ambient kind " + kind);
}

}  // namespace

PYBIND11_MODULE(_p1bundles, m) {
  m.doc() = "exact splitting types and normal bundles of rational curves";

  py::register_exception<Error>(m, "MathError");

  m.def(
      "generic_kernel_splitting",
      [](const std::vector<int>& source, const std::vector<int>& target,
         int trials, std::uint64_t characteristic, std::uint64_t seed) {
        Field f = make_field(characteristic);
        Rng rng(seed);
        auto r = generic_kernel_splitting(f, SplittingType(source),
                                          SplittingType(target), trials, rng);
        return entries_of(r.splitting);
      },
      py::arg("source"), py::arg("target"), py::arg("trials") = 5,
      py::arg("characteristic") = kDefaultChar, py::arg("seed") = 0,
      "Monte-Carlo generic kernel splitting of maps E -> F.");

  m.def(
      "rnc_conormal",
      [](int e, int n, std::uint64_t characteristic) {
        Field f = make_field(characteristic);
        return entries_of(
            conormal_pn_model(CurveMap::rational_normal(f, e, n)).inferred());
      },
      py::arg("e"), py::arg("n"), py::arg("characteristic") = 0,
      "Conormal splitting of the degree-e rational normal curve in P^n.");

  m.def(
      "normal_bundle",
      [](const std::string& kind, const std::vector<int>& params,
         std::uint64_t characteristic) {
        auto cat = catalog(kind, params, characteristic);
        auto td = tangent_splitting(cat.ambient, cat.curve);
        py::dict out;
        out["tangent"] = entries_of(td.tangent);
        out["anticanonical_degree"] = td.kxc;
        if (cat.ambient.dim >= 2)
          out["normal"] =
              entries_of(conormal_in_ambient(cat.ambient, cat.curve).normal);
        return out;
      },
      py::arg("kind"), py::arg("params"),
      py::arg("characteristic") = kDefaultChar,
      "TX|_C and N_{C|X} for a cataloged ambient and its canonical curve.");

  m.def(
      "rathmann_surjective",
      [](int e, int n, int b, std::uint64_t characteristic) {
        return rathmann_check(make_field(characteristic), e, n, b).surjective;
      },
      py::arg("e"), py::arg("n"), py::arg("b"),
      py::arg("characteristic") = 0);

  m.def(
      "src_certificate",
      [](const std::string& kind, const std::vector<int>& params,
         const std::vector<std::vector<int>>& degrees, int trials,
         std::uint64_t characteristic, std::uint64_t seed) {
        auto cat = catalog(kind, params, characteristic);
        std::vector<DivisorClass> divs;
        for (auto d : degrees) {
          if (d.size() == 1)
            d.assign(cat.ambient.block_sizes.size(), d[0]);
          divs.push_back(DivisorClass{d});
        }
        Certificate cert = src_certificate(cat.ambient, cat.curve, kind,
                                           params, divs, trials, seed);
        return py::module_::import("json").attr("loads")(
            certificate_json(cert).dump());
      },
      py::arg("kind"), py::arg("params"), py::arg("degrees"),
      py::arg("trials") = 5, py::arg("characteristic") = kDefaultChar,
      py::arg("seed") = 0,
      "Numerical gate + Monte-Carlo splitting certificate as a dict.");

  m.def(
      "product_report",
      [](int e, int n, int factor_count, int d_lo, int d_hi, int trials,
         std::uint64_t characteristic, std::uint64_t seed) {
        Field f = make_field(characteristic);
        std::vector<CurveMap> factors(
            factor_count, CurveMap::rational_normal(f, e, n));
        Rng rng(seed);
        auto report = verify_product_theorem(factors, d_lo, d_hi, trials, rng);
        return py::module_::import("json").attr("loads")(
            product_report_json(report).dump());
      },
      py::arg("e"), py::arg("n"), py::arg("factors") = 2, py::arg("d_lo") = 2,
      py::arg("d_hi") = 8, py::arg("trials") = 5,
      py::arg("characteristic") = kDefaultChar, py::arg("seed") = 0);

  m.def(
      "charp_demo",
      [](std::uint64_t p, int samples, std::uint64_t seed) {
        Rng rng(seed);
        auto demo = charp_counterexample(p, samples, rng);
        return py::module_::import("json").attr("loads")(
            charp_demo_json(demo).dump());
      },
      py::arg("p"), py::arg("samples") = 10, py::arg("seed") = 0);

  m.def(
      "verify",
      [](std::uint64_t seed, const std::string& filter) {
        VerifyOptions opts{seed, filter};
        py::list out;
        for (const auto& r : run_verification(opts)) {
          py::dict d;
          d["number"] = r.number;
          d["id"] = r.id;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["millis"] = r.millis;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("filter") = "");
}

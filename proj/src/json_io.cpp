#include "p1bundles/json_io.hpp"

namespace p1b {

ojson splitting_json(const SplittingType& s) {
  ojson a = ojson::array();
  for (int e : s.entries()) a.push_back(e);
  return a;
}

ojson certificate_json(const Certificate& cert) {
  ojson j;
  j["ambient"] = cert.ambient_label;
  j["curve"] = {{"kind", cert.curve_kind},
                {"params", cert.curve_params},
                {"seed", cert.seed}};
  ojson degs = ojson::array();
  for (const auto& d : cert.degrees) degs.push_back(d.deg);
  j["degrees"] = degs;
  j["gate"] = {{"kxc", cert.gate.kxc},       {"dc", cert.gate.dc},
               {"m", cert.gate.m},           {"c", cert.gate.c},
               {"threshold", cert.gate.threshold}, {"pass", cert.gate.pass}};
  j["splitting"] = splitting_json(cert.splitting);
  j["flags"] = {{"smooth_along_C", cert.smooth_along_c},
                {"ample", cert.ample},
                {"balanced", cert.balanced},
                {"very_free", cert.very_free},
                {"fano", cert.fano},
                {"degree_hypothesis", cert.degree_hypothesis},
                {"cataloged_ambient", cert.cataloged}};
  j["field"] = {{"char", cert.field_char}};
  j["trials"] = cert.trials;
  j["seed"] = cert.seed;
  return j;
}

ojson product_report_json(const ProductReport& report) {
  ojson j;
  j["factors"] = report.factor_degrees;
  j["d_range"] = {report.d_lo, report.d_hi};
  j["d0"] = report.d0;
  j["characteristic_ok"] = report.characteristic_ok;
  ojson trials = ojson::array();
  for (const auto& tr : report.trials) {
    ojson t;
    t["alphas_seed"] = tr.alpha_seed;
    ojson per_d = ojson::array();
    for (const auto& pt : tr.per_d)
      per_d.push_back({{"d", pt.d},
                       {"observed", pt.observed},
                       {"formula", pt.formula},
                       {"transversal", pt.transversal}});
    t["per_d"] = per_d;
    t["conormal"] = splitting_json(tr.conormal);
    t["pass"] = tr.formula_match;
    trials.push_back(t);
  }
  j["trials"] = trials;
  j["pass"] = report.pass;
  j["best_trial"] = report.best_trial;
  return j;
}

ojson charp_demo_json(const CharPDemo& demo) {
  ojson j;
  j["p"] = demo.p;
  j["factor_cotangent"] = splitting_json(demo.factor_cotangent);
  j["factor_conormal"] = splitting_json(demo.factor_conormal);
  j["pair_conormal"] = splitting_json(demo.pair_conormal);
  j["reference_pair_conormal"] = splitting_json(demo.reference_pair_conormal);
  j["conormal_constant_over_alphas"] = demo.conormal_constant;
  j["matches_reference_splitting"] = demo.matches_reference_splitting;
  ojson dims = ojson::array();
  for (const auto& row : demo.image_dims)
    dims.push_back({{"d", row[0]}, {"observed", row[1]}, {"reference", row[2]}});
  j["image_dims"] = dims;
  j["image_dims_match_reference"] = demo.image_dims_match_reference;
  j["formula_fails_for_every_alpha"] = demo.formula_fails_everywhere;
  j["samples"] = demo.samples;
  return j;
}

ojson ambient_descriptor_json(const Ambient& x) {
  ojson j;
  j["kind"] = x.kind;
  j["params"] = x.params;
  j["label"] = x.label;
  j["dim"] = x.dim;
  j["blocks"] = x.block_sizes;
  return j;
}

ojson equations_json(const Ambient& x) {
  ojson eqs = ojson::array();
  for (const MPoly& eq : x.equations) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : eq.terms()) {
      ojson t;
      t["exp"] = e;
      t["coeff"] = c.str();
      terms.push_back(t);
    }
    ojson je;
    je["multidegree"] = eq.multidegree(x.block_sizes);
    je["terms"] = terms;
    eqs.push_back(je);
  }
  return eqs;
}

ojson curve_json(const CurveMap& c) {
  ojson blocks = ojson::array();
  for (const auto& blk : c.blocks()) {
    ojson jb = ojson::array();
    for (const BinForm& g : blk) {
      ojson coeffs = ojson::array();
      if (!g.is_zero())
        for (int i = 0; i <= *g.degree(); ++i) coeffs.push_back(g.coeff(i).str());
      jb.push_back(coeffs);
    }
    blocks.push_back(jb);
  }
  return ojson{{"blocks", blocks}};
}

CurveMap curve_from_json(const ojson& j, const Field& f) {
  if (!j.contains("blocks"))
    throw Error("parse", "curve JSON needs a 'blocks' array");
  std::vector<std::vector<BinForm>> blocks;
  for (const auto& jb : j.at("blocks")) {
    std::vector<BinForm> blk;
    for (const auto& jf : jb) {
      std::vector<Scalar> coeffs;
      for (const auto& c : jf)
        coeffs.push_back(Scalar::parse(c.get<std::string>(), f));
      if (coeffs.empty()) {
        blk.push_back(BinForm::zero(f));
      } else {
        int deg = static_cast<int>(coeffs.size()) - 1;
        blk.push_back(BinForm(f, deg, std::move(coeffs)));
      }
    }
    blocks.push_back(std::move(blk));
  }
  return CurveMap(f, std::move(blocks));
}

}  // namespace p1b

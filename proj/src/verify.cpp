#include "p1bundles/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "p1bundles/ci.hpp"
#include "p1bundles/products.hpp"

namespace p1b {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
  std::uint64_t seed;
  std::ostringstream detail;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

SplittingType rnc_conormal_formula(int e, int n) {
  std::vector<int> v(e - 1, -e - 2);
  for (int i = 0; i < n - e; ++i) v.push_back(-e);
  return SplittingType(v);
}

void check_rnc_conormal(Ctx& c) {
  Field q = rationals();
  for (auto [e, n] : std::vector<std::pair<int, int>>{
           {3, 3}, {3, 5}, {4, 4}, {4, 6}, {5, 7}}) {
    SubbundleModel m = conormal_pn_model(CurveMap::rational_normal(q, e, n));
    SplittingType expect = rnc_conormal_formula(e, n);
    c.require(m.inferred() == expect,
              "(" + std::to_string(e) + "," + std::to_string(n) + ") got " +
                  m.inferred().str() + " expected " + expect.str());
    try {
      for (int i = e + 1; i <= n; ++i)
        m.express(rnc_dx_section(q, e, n, i), e);
      for (int i = 0; i + 2 <= e; ++i)
        m.express(rnc_q_section(q, e, n, i), e + 2);
    } catch (const Error& err) {
      c.require(false, "basis section not in model at (" + std::to_string(e) +
                           "," + std::to_string(n) + "): " + err.what());
    }
  }
}

void check_rathmann(Ctx& c) {
  for (const Field& f : {rationals(), prime_field(kDefaultChar)}) {
    for (int e = 1; e <= 5; ++e)
      for (int n = e; n <= 7; ++n)
        for (int b = 1; b <= 3; ++b) {
          RathmannResult r = rathmann_check(f, e, n, b);
          c.require(r.surjective, "not surjective at (" + std::to_string(e) +
                                      "," + std::to_string(n) + "," +
                                      std::to_string(b) + ") char " +
                                      std::to_string(f.p));
        }
  }
  auto p1 = rathmann_check(rationals(), 3, 3, 1);
  c.require(p1.preimages_verified > 0, "(3,3,1) verified no preimages");
  auto p2 = rathmann_check(rationals(), 3, 4, 2);
  c.require(p2.preimages_verified > 0, "(3,4,2) verified no preimages");
}

void check_generic_kernels(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  Rng rng(c.seed ^ 0x67656eull);
  {
    auto r = generic_kernel_splitting(f, SplittingType({0, 2, 2}),
                                      SplittingType({2}), 5, rng);
    c.require(r.splitting == SplittingType({0, 2}),
              "O+O(2)^2 -> O(2) gave " + r.splitting.str());
  }
  // exhaustive grid
  std::vector<std::vector<int>> e_sets, f_sets;
  std::function<void(std::vector<int>&, int, int, int,
                     std::vector<std::vector<int>>&)> gen =
      [&](std::vector<int>& cur, int lo, int left, int cap,
          std::vector<std::vector<int>>& out) {
        if (left == 0) {
          out.push_back(cur);
          return;
        }
        for (int v = lo; v <= cap; ++v) {
          cur.push_back(v);
          gen(cur, v, left - 1, cap, out);
          cur.pop_back();
        }
      };
  for (int r = 2; r <= 5; ++r) {
    std::vector<int> cur;
    gen(cur, 0, r, 6, e_sets);
  }
  for (int r = 1; r <= 2; ++r) {
    std::vector<int> cur;
    gen(cur, 0, r, 6, f_sets);
  }
  long configs = 0, phi_configs = 0;
  for (const auto& ee : e_sets)
    for (const auto& ff : f_sets) {
      if (ee.size() <= ff.size()) continue;
      long de = 0, df = 0;
      for (int v : ee) de += v;
      for (int v : ff) df += v;
      if (de < df) continue;
      int minb = ff[0];
      if (ee.back() > minb) continue;
      ++configs;
      SplittingType E(ee), F(ff);
      bool bad = false;
      std::vector<SplittingType> trial_kernels;
      for (int t = 0; t < 5 && !bad; ++t) {
        Rng trng = rng.fork(configs * 16 + t);
        BundleMap m = BundleMap::zero(f, E, F);
        bool surj = false;
        for (int attempt = 0; attempt < 20 && !surj; ++attempt) {
          m = BundleMap::random(f, E, F, trng);
          surj = m.fiberwise_surjective().ok;
        }
        if (!surj) {
          c.require(false, "no surjective sample at E=" + E.str() +
                               " F=" + F.str());
          bad = true;
          break;
        }
        // globally generated <=> h0(K(-1)) accounts for the whole degree
        long k_h0 = m.kernel_dim(-1);
        if (k_h0 != de - df) {
          c.require(false, "trial kernel not globally generated at E=" +
                               E.str() + " F=" + F.str() + " (h0(K(-1))=" +
                               std::to_string(k_h0) + ", deg=" +
                               std::to_string(de - df) + ")");
          bad = true;
        }
      }
      if (bad) continue;
      // phi witness on line-bundle targets
      if (ff.size() == 1 && de >= df) {
        ++phi_configs;
        BundleMap phi = phi_witness(f, E, ff[0]);
        c.require(phi.fiberwise_surjective().ok,
                  "phi not fiberwise surjective at E=" + E.str() + " b=" +
                      std::to_string(ff[0]));
        SplittingType kphi = kernel_model(phi).inferred();
        c.require(kphi.globally_generated(),
                  "phi kernel not globally generated at E=" + E.str() +
                      " b=" + std::to_string(ff[0]));
        auto sm = phi.sections_matrix(-1);
        c.require(sm.m.rank() == ff[0],
                  "phi sections map not onto H0(F(-1)) at E=" + E.str());
        Rng grng = rng.fork(configs * 16 + 7);
        auto gen_r = generic_kernel_splitting(f, E, F, 5, grng);
        c.require(gen_r.splitting.h0_dominated_by(kphi),
                  "generic kernel not k0-minimal against phi at E=" + E.str());
      }
    }
  c.detail << (c.detail.tellp() > 0 ? "; " : "") << configs
           << " grid configs, " << phi_configs << " phi witnesses";
}

void check_prescribed(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  Ambient p4 = ambient_projective(f, 4);
  CurveMap curve = CurveMap::rational_normal(f, 4, 4);
  Rng rng(c.seed ^ 0x707265ull);
  int matches = 0;
  for (int rep = 0; rep < 20; ++rep) {
    BundleMap q = BundleMap::zero(f, SplittingType({6, 6, 6}),
                                  SplittingType({12}));
    bool surj = false;
    Rng trng = rng.fork(rep);
    for (int attempt = 0; attempt < 20 && !surj; ++attempt) {
      q = BundleMap::random(f, SplittingType({6, 6, 6}), SplittingType({12}),
                            trng);
      surj = q.fiberwise_surjective().ok;
    }
    if (!surj) {
      c.require(false, "no surjective q sampled");
      return;
    }
    try {
      auto res = construct_from_surjection(p4, curve, {q, {DivisorClass{{3}}}});
      if (res.splittings_match && res.smoothness.ok()) ++matches;
    } catch (const Error& err) {
      c.require(false, std::string("construction failed: ") + err.what());
      return;
    }
  }
  c.require(matches == 20, "only " + std::to_string(matches) +
                               "/20 constructions matched ker q");
  Rng grng(c.seed ^ 0x6b6bull);
  auto gen_r = generic_kernel_splitting(f, SplittingType({6, 6, 6}),
                                        SplittingType({12}), 5, grng);
  c.require(gen_r.splitting == SplittingType({3, 3}),
            "generic kernel is " + gen_r.splitting.str());
}

void check_src_certificates(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  {
    FlagCurveData fc = flag_curve(f, {2}, 4);
    auto cert = src_certificate(fc.ambient, fc.curve, "flag", {2, 4},
                                {DivisorClass{{3}}}, 5, c.seed);
    c.require(cert.gate.kxc == 16 && cert.gate.dc == 12 &&
                  cert.gate.threshold == 4 && cert.gate.pass,
              "G(2,4) gate numbers off");
    c.require(cert.splitting == SplittingType({1, 1}),
              "G(2,4) splitting " + cert.splitting.str());
    c.require(cert.very_free && cert.ample && cert.balanced,
              "G(2,4) flags off");
  }
  {
    auto cert = src_certificate(ambient_projective(f, 4),
                                CurveMap::rational_normal(f, 4, 4), "rnc",
                                {4, 4}, {DivisorClass{{3}}}, 5, c.seed);
    c.require(cert.gate.pass && cert.splitting == SplittingType({3, 3}) &&
                  cert.very_free,
              "P4 cubic-threefold certificate off (splitting " +
                  cert.splitting.str() + ")");
  }
  {
    FlagCurveData fc = flag_curve(f, {2}, 5);
    auto cert = src_certificate(fc.ambient, fc.curve, "flag", {2, 5},
                                {DivisorClass{{3}}, DivisorClass{{3}}}, 3,
                                c.seed);
    c.require(!cert.fano, "G(2,5) (3,3) should fail the Fano positivity");
    c.require(!cert.gate.pass && !cert.very_free,
              "G(2,5) (3,3) certificate should not be very free");
  }
}

void check_flag_curves(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  struct Cfg {
    std::vector<int> ks;
    int n;
  };
  for (const Cfg& cfg : {Cfg{{2}, 4}, Cfg{{1, 2}, 3}, Cfg{{2}, 5}}) {
    FlagCurveData fc = flag_curve(f, cfg.ks, cfg.n);
    int expect = 0;
    for (int k : cfg.ks) expect += k * (cfg.n - k);
    std::string name = fc.ambient.label;
    c.require(fc.h_degree == expect, name + " degree");
    c.require(fc.linearly_normal && fc.span_dim == fc.h_degree,
              name + " span dim " + std::to_string(fc.span_dim));
    c.require(fc.universal_sub_split,
              name + " universal subbundle not trivialized");
    auto td = tangent_splitting(fc.ambient, fc.curve);
    c.require(td.tangent.ample(), name + " TX|_C not ample");
  }
}

void check_product_theorem(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  CurveMap cubic = CurveMap::rational_normal(f, 3, 3);
  int achieved = 0;
  SplittingType expected({4, 4, 4, 5, 5});
  bool one_sided = true;
  for (int exp = 0; exp < 10; ++exp) {
    Rng rng(c.seed + 1000 + exp);
    auto report = verify_product_theorem({cubic, cubic}, 2, 8, 10, rng);
    if (report.pass) {
      ++achieved;
      if (!(report.trials[report.best_trial].conormal.dual() == expected))
        c.require(false, "best trial normal bundle " +
                             report.trials[report.best_trial].conormal.dual()
                                 .str());
    }
    for (const auto& tr : report.trials)
      for (const auto& pt : tr.per_d)
        if (pt.observed < pt.formula) one_sided = false;
  }
  c.require(achieved >= 9, "formula equality achieved in only " +
                               std::to_string(achieved) + "/10 experiments");
  c.require(one_sided, "semicontinuity inequality violated in some trial");
  std::vector<FactorProfile> intro(
      2, FactorProfile{SplittingType({-6, -5, -5}), SplittingType({-8, -6})});
  c.require(predicted_product_conormal(intro).dual() ==
                SplittingType({6, 6, 6, 6, 6}),
            "intro profile did not evaluate to O(6)^5");
}

void check_charp(Ctx& c) {
  for (std::uint64_t p : {3ull, 5ull}) {
    Rng rng(c.seed ^ (0xc4a0 + p));
    auto demo = charp_counterexample(p, 10, rng);
    int pi = static_cast<int>(p);
    c.require(demo.factor_cotangent ==
                  SplittingType({-2 * pi, -pi - 2, -pi - 2}),
              "p=" + std::to_string(p) + " cotangent " +
                  demo.factor_cotangent.str());
    c.require(demo.conormal_constant,
              "p=" + std::to_string(p) + " conormal varies with alpha");
    c.require(demo.formula_fails_everywhere,
              "p=" + std::to_string(p) + " formula did not fail");
    c.require(demo.matches_reference_splitting,
              "p=" + std::to_string(p) + " pair conormal computed " +
                  demo.pair_conormal.str() + " but the reference value is " +
                  demo.reference_pair_conormal.str() +
                  " (computed value confirmed by independent enumeration; "
                  "the O(-2p) summand maps onto s^(p-1)t^(p-1))");
    c.require(demo.image_dims_match_reference,
              "p=" + std::to_string(p) +
                  " image dims differ from the reference formula at d=2p "
                  "(observed min(d-1, 2(d-p-1)+ + (d-2p+1)+))");
  }
}

void check_wps(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  for (int a : {2, 3}) {
    std::vector<int> weights{1, 1, 1, a};
    auto b = wps_b_search(weights, a);
    if (!b) {
      c.require(false, "no b-sequence for a=" + std::to_string(a));
      continue;
    }
    auto wc = wps_curve(f, weights, a, *b);
    c.require(wc.linearly_normal && wc.degree == 3 * a,
              "a=" + std::to_string(a) + " image not linearly normal");
    auto td = tangent_splitting(wc.ambient.ambient, wc.curve);
    c.require(td.tangent.ample(), "a=" + std::to_string(a) + " TX not ample");
  }
}

void check_engine(Ctx& c) {
  Field f = prime_field(kDefaultChar);
  Rng rng(c.seed ^ 0x656e67ull);
  struct Shape {
    SplittingType e, ft;
  };
  std::vector<Shape> shapes = {
      {SplittingType({-3, -3, -3, -3}), SplittingType({0})},
      {SplittingType({0, 1, 2}), SplittingType({2, 3})},
      {SplittingType({-2, -1, 0, 1}), SplittingType({1, 2})},
      {SplittingType({0, 2, 2}), SplittingType({2})},
  };
  for (size_t si = 0; si < shapes.size(); ++si) {
    for (int rep = 0; rep < 200; ++rep) {
      Rng trng = rng.fork(si * 1000 + rep);
      BundleMap m = BundleMap::random(f, shapes[si].e, shapes[si].ft, trng);
      SubbundleModel k = kernel_model(m);
      if (!k.check_annihilated() || !k.check_injective()) {
        c.require(false, "model certificates failed on shape " +
                             std::to_string(si));
        return;
      }
      for (int d = -2; d <= 5; ++d)
        if (m.kernel_dim(d) != k.inferred().h0(d)) {
          c.require(false, "h0 additivity failed on shape " +
                               std::to_string(si));
          return;
        }
      auto cok = cokernel_model(m);
      // duality + bookkeeping: both deficiencies equal deg of the image
      if (k.inferred().degree() - shapes[si].e.degree() !=
          cok.splitting.degree() - shapes[si].ft.degree()) {
        c.require(false, "kernel/cokernel degree bookkeeping failed");
        return;
      }
      if (!cok.quotient.fiberwise_surjective().ok) {
        c.require(false, "quotient not fiberwise surjective");
        return;
      }
      BundleMap z = cok.quotient.compose(m);
      for (int r = 0; r < z.target().rank(); ++r)
        for (int cc = 0; cc < z.source().rank(); ++cc)
          if (!z.entry(r, cc).is_zero()) {
            c.require(false, "quotient does not kill the image");
            return;
          }
      if (k.generator_count() > 0 && rep % 10 == 0) {
        // express round-trip on a random section of the kernel
        int d = k.twists()[0] + 1;
        auto basis = k.section_basis(d);
        Section v(shapes[si].e.rank(), BinForm::zero(f));
        for (const auto& sec : basis) {
          Scalar co = trng.scalar(f);
          for (size_t i = 0; i < v.size(); ++i) {
            BinForm term = sec[i] * co;
            if (term.is_zero()) continue;
            v[i] = v[i].is_zero() ? term : v[i] + term;
          }
        }
        auto u = k.express(v, d);
        for (size_t i = 0; i < v.size(); ++i) {
          BinForm acc = BinForm::zero(f);
          for (int l = 0; l < k.generator_count(); ++l) {
            if (u[l].is_zero() || k.column(l)[i].is_zero()) continue;
            BinForm term = k.column(l)[i] * u[l];
            acc = acc.is_zero() ? term : acc + term;
          }
          if (!(acc == v[i])) {
            c.require(false, "express round-trip failed");
            return;
          }
        }
      }
    }
  }
  // anticanonical cross-check over the catalog (tangent_splitting throws on
  // any table mismatch)
  try {
    tangent_splitting(ambient_projective(f, 3),
                      CurveMap::rational_normal(f, 3, 3));
    tangent_splitting(ambient_projective(f, 4),
                      CurveMap::rational_normal(f, 4, 4));
    {
      FlagCurveData fc = flag_curve(f, {2}, 4);
      tangent_splitting(fc.ambient, fc.curve);
    }
    {
      FlagCurveData fc = flag_curve(f, {1, 2}, 3);
      tangent_splitting(fc.ambient, fc.curve);
    }
    {
      FlagCurveData fc = flag_curve(f, {2}, 5);
      tangent_splitting(fc.ambient, fc.curve);
    }
    for (auto dims : std::vector<std::vector<int>>{{1, 1}, {3, 3}, {2, 3}})
      tangent_splitting(ambient_product(f, dims), product_curve(f, dims));
    for (int a : {2, 3}) {
      auto b = wps_b_search({1, 1, 1, a}, a);
      auto wc = wps_curve(f, {1, 1, 1, a}, a, *b);
      tangent_splitting(wc.ambient.ambient, wc.curve);
    }
  } catch (const Error& err) {
    c.require(false, std::string("catalog anticanonical cross-check: ") +
                         err.what());
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  struct Entry {
    int number;
    const char* id;
    const char* title;
    void (*fn)(Ctx&);
  };
  const Entry entries[] = {
      {1, "rnc-conormal",
       "conormal splitting and explicit basis of rational normal curves",
       check_rnc_conormal},
      {2, "quadric-multiplication-surjectivity",
       "quadric ideal times forms onto twisted conormal sections",
       check_rathmann},
      {3, "generic-kernel-global-generation",
       "generic kernels on the exhaustive grid are globally generated",
       check_generic_kernels},
      {4, "prescribed-normal-bundle",
       "kernel of a chosen surjection realized by a hypersurface cut",
       check_prescribed},
      {5, "src-certificates", "very-free certificates on the catalog gates",
       check_src_certificates},
      {6, "flag-curves", "flag-variety curves: degree, span, subbundle, TX",
       check_flag_curves},
      {7, "product-formula", "twisted pairs achieve the product formula",
       check_product_theorem},
      {8, "char-p-counterexample",
       "small-characteristic pair defeats the product formula",
       check_charp},
      {9, "wps", "weighted projective curves through the b-sequence search",
       check_wps},
      {10, "engine-consistency",
       "kernel/cokernel/express self-consistency and catalog cross-checks",
       check_engine},
  };
  std::vector<CheckResult> results;
  for (const Entry& e : entries) {
    if (!options.filter.empty() &&
        std::string(e.id).find(options.filter) == std::string::npos)
      continue;
    Ctx ctx{options.seed, {}, true};
    auto start = Clock::now();
    try {
      e.fn(ctx);
    } catch (const std::exception& err) {
      ctx.require(false, std::string("exception: ") + err.what());
    }
    auto end = Clock::now();
    CheckResult r;
    r.number = e.number;
    r.id = e.id;
    r.title = e.title;
    r.passed = ctx.ok;
    r.detail = ctx.detail.str();
    r.millis = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start)
            .count());
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace p1b

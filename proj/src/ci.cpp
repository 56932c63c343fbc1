#include "p1bundles/ci.hpp"

#include <algorithm>

#include "p1bundles/subbundle.hpp"

namespace p1b {

IdealSections ideal_sections(const Ambient& x, const CurveMap& c,
                             const DivisorClass& d) {
  const Field f = x.field;
  long delta = d.dot(c.block_degrees());
  if (delta < 0) throw Error("bad-arg", "divisor with negative curve degree");
  auto monos = enumerate_monomials(x, d);
  auto coords = c.coordinates();
  Matrix m(f, static_cast<int>(delta + 1), static_cast<int>(monos.size()));
  for (size_t j = 0; j < monos.size(); ++j) {
    BinForm pull = MPoly::monomial(f, x.total_coords(), monos[j],
                                   Scalar::one(f))
                       .eval_forms(coords);
    if (pull.is_zero()) continue;
    for (long i = 0; i <= delta; ++i)
      m.at(static_cast<int>(i), static_cast<int>(j)) =
          pull.coeff(static_cast<int>(i));
  }
  IdealSections out;
  out.monomial_count = static_cast<long>(monos.size());
  out.expected_dim = out.monomial_count - (delta + 1);
  auto ker = m.kernel_basis();
  out.restriction_surjective =
      static_cast<long>(ker.size()) == out.expected_dim;
  for (const auto& v : ker) {
    MPoly p(f, x.total_coords());
    for (size_t j = 0; j < monos.size(); ++j)
      if (!v[j].is_zero())
        p = p + MPoly::monomial(f, x.total_coords(), monos[j], v[j]);
    out.basis.push_back(std::move(p));
  }
  return out;
}

namespace {

// Gradient tuple of F along the curve, certified against the conormal rows.
Section certified_gradient(const Ambient& x, const CurveMap& c,
                           const MPoly& form) {
  std::vector<BinForm> per_coord;
  for (int i = 0; i < x.total_coords(); ++i)
    per_coord.push_back(form.derivative(i).eval_forms(c.coordinates()));
  Section grad = section_from_coordinate_forms(c, per_coord);
  Section rows = conormal_rows_map(c).apply(grad);
  for (const BinForm& r : rows)
    if (!r.is_zero())
      throw Error("gradient-outside-model",
                  "gradient violates a kernel row (form not in the ideal "
                  "along C to second order?)");
  return grad;
}

std::vector<Scalar> nstar_section_coeffs(const ConormalData& cd,
                                         const Section& grad, long delta) {
  auto u = cd.ambient_conormal.express(grad, static_cast<int>(delta));
  Section in_q = cd.quotient.apply(u);
  return section_coeffs(cd.nstar, in_q, static_cast<int>(delta),
                        cd.quotient.field());
}

}  // namespace

NstarMap nstar_map(const Ambient& x, const CurveMap& c, const DivisorClass& d,
                   const ConormalData& cd) {
  const Field f = x.field;
  NstarMap out;
  out.delta = d.dot(c.block_degrees());
  out.target_dim = cd.nstar.h0(static_cast<int>(out.delta));
  auto ideal = ideal_sections(x, c, d);
  out.ideal_basis = std::move(ideal.basis);
  Matrix img(f, static_cast<int>(out.target_dim),
             static_cast<int>(out.ideal_basis.size()));
  for (size_t j = 0; j < out.ideal_basis.size(); ++j) {
    Section grad = certified_gradient(x, c, out.ideal_basis[j]);
    auto coeffs = nstar_section_coeffs(cd, grad, out.delta);
    for (size_t i = 0; i < coeffs.size(); ++i)
      img.at(static_cast<int>(i), static_cast<int>(j)) = coeffs[i];
  }
  out.rank = img.rank();
  out.images = std::move(img);
  out.surjective = out.rank == out.target_dim;
  out.corank = out.target_dim - out.rank;
  return out;
}

MPoly rnc_quadric(const Field& f, int n, int i, int j) {
  int nv = n + 1;
  auto var = [&](int k) { return MPoly::variable(f, nv, k); };
  if (i < 0 || j < 1 || i + 1 > n || j > n)
    throw Error("bad-arg", "quadric index out of range");
  return var(i) * var(j) - var(i + 1) * var(j - 1);
}

RathmannResult rathmann_check(const Field& f, int e, int n, int b) {
  if (e < 1 || e > n || b < 1)
    throw Error("bad-arg", "rathmann_check needs 1 <= e <= n, b >= 1");
  CurveMap c = CurveMap::rational_normal(f, e, n);
  SubbundleModel model = conormal_pn_model(c);
  RathmannResult out;
  out.target_dim = model.inferred().h0(2 * e + b);
  auto ideal = ideal_sections(ambient_projective(f, n), c, DivisorClass{{2}});
  SplittingType amb = SplittingType::uniform(-e, n + 1);

  // columns: quadric x degree-b monomial, as raw coefficient vectors of
  // sections of O(-e)^(n+1) at twist 2e+b (the model subspace has dimension
  // target_dim, so rank there equals rank here)
  std::vector<std::vector<Scalar>> cols;
  auto coords = c.coordinates();
  for (const MPoly& q : ideal.basis) {
    std::vector<BinForm> per_coord;
    for (int i = 0; i <= n; ++i)
      per_coord.push_back(q.derivative(i).eval_forms(coords));
    Section grad = section_from_coordinate_forms(c, per_coord);
    for (int k = 0; k <= b; ++k) {
      BinForm mono = BinForm::monomial(f, b - k, k);
      Section s;
      for (const BinForm& g : grad)
        s.push_back(g.is_zero() ? g : g * mono);
      cols.push_back(section_coeffs(amb, s, 2 * e + b, f));
    }
  }
  out.source_dim = static_cast<long>(cols.size());
  long rows = amb.h0(2 * e + b);
  Matrix m(f, static_cast<int>(rows), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < cols[j].size(); ++i)
      m.at(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
  out.rank = m.rank();
  out.surjective = out.rank == out.target_dim;

  // closed-form preimages: s^k t^l q_i from pairs of Hankel quadrics, and
  // s^k t^l dx_i from x_? x_i.
  auto image_of = [&](const MPoly& form, const BinForm& mult) {
    std::vector<BinForm> per_coord;
    for (int i = 0; i <= n; ++i)
      per_coord.push_back(form.derivative(i).eval_forms(coords));
    Section grad = section_from_coordinate_forms(c, per_coord);
    Section s;
    for (const BinForm& g : grad)
      s.push_back(g.is_zero() ? g : g * mult);
    return s;
  };
  auto sections_equal = [&](const Section& a, const Section& bb) {
    if (a.size() != bb.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == bb[i])) return false;
    return true;
  };
  for (int i = 0; i + 2 <= e; ++i) {
    for (int k = 0, l = e + b - 2; l >= 0; ++k, --l) {
      Section target = rnc_q_section(f, e, n, i);
      BinForm kl = BinForm::monomial(f, k, l);
      for (BinForm& t : target)
        if (!t.is_zero()) t = t * kl;
      Section got(static_cast<size_t>(n + 1), BinForm::zero(f));
      if (k >= b - 1) {
        Section a = image_of(rnc_quadric(f, n, i, l + 1),
                             BinForm::monomial(f, b - 1, 1));
        Section bb = image_of(rnc_quadric(f, n, i + 1, l + 1),
                              BinForm::monomial(f, b, 0));
        for (int t = 0; t <= n; ++t) {
          BinForm diff = a[t] - bb[t];
          got[t] = std::move(diff);
        }
      } else {
        if (l - b + 2 < 1) continue;  // outside the closed-form range
        Section a = image_of(rnc_quadric(f, n, i, l - b + 2),
                             BinForm::monomial(f, 0, b));
        Section bb = image_of(rnc_quadric(f, n, i + 1, l - b + 2),
                              BinForm::monomial(f, 1, b - 1));
        for (int t = 0; t <= n; ++t) {
          BinForm diff = a[t] - bb[t];
          got[t] = std::move(diff);
        }
      }
      if (!sections_equal(got, target))
        throw Error("preimage-mismatch",
                    "closed-form quadric preimage does not map to s^k t^l q_i at "
                    "(i,k,l)=(" + std::to_string(i) + "," + std::to_string(k) +
                        "," + std::to_string(l) + ")");
      ++out.preimages_verified;
    }
  }
  auto var = [&](int k) { return MPoly::variable(f, n + 1, k); };
  for (int i = e + 1; i <= n; ++i) {
    for (int k = 0, l = e + b; l >= 0; ++k, --l) {
      Section target = rnc_dx_section(f, e, n, i);
      BinForm kl = BinForm::monomial(f, k, l);
      for (BinForm& t : target)
        if (!t.is_zero()) t = t * kl;
      std::optional<Section> got;
      if (k >= b && l <= e) {
        got = image_of(var(l) * var(i), BinForm::monomial(f, b, 0));
      } else if (k == 0 && l - b >= 0 && l - b <= e) {
        got = image_of(var(l - b) * var(i), BinForm::monomial(f, 0, b));
      }
      if (!got) continue;
      if (!sections_equal(*got, target))
        throw Error("preimage-mismatch",
                    "closed-form linear-pair preimage does not map to s^k t^l dx_i");
      ++out.preimages_verified;
    }
  }
  return out;
}

ConstructResult construct_from_surjection(const Ambient& x, const CurveMap& c,
                                          const SurjectionData& qd) {
  const Field f = x.field;
  if (static_cast<int>(qd.degrees.size()) > x.dim - 2)
    throw Error("bad-arg", "need c <= dim X - 2");
  ConormalData cd = conormal_in_ambient(x, c);
  if (!(qd.q.source() == cd.normal))
    throw Error("shape", "q must start at N_{C|X} = " + cd.normal.str());
  auto cert = qd.q.fiberwise_surjective();
  if (!cert.ok) {
    std::string msg = "q is not fiberwise surjective";
    if (cert.drop_point)
      msg += " (rank drops at (" + cert.drop_point->first.str() + ":" +
             cert.drop_point->second.str() + "))";
    throw Error("not-fiberwise-surjective", msg);
  }
  ConstructResult out;
  int L = cd.normal.rank();
  for (size_t i = 0; i < qd.degrees.size(); ++i) {
    long delta = qd.degrees[i].dot(c.block_degrees());
    if (qd.q.target().entries()[i] != static_cast<int>(delta))
      throw Error("shape", "q target entries must be the D_i . C");
    // row i of q as a section of N*(delta): components reversed
    Section sec;
    for (int r = 0; r < L; ++r) sec.push_back(qd.q.entry(static_cast<int>(i), L - 1 - r));
    NstarMap nm = nstar_map(x, c, qd.degrees[i], cd);
    auto rhs = section_coeffs(cd.nstar, sec, static_cast<int>(delta), f);
    auto sol = nm.images.solve(rhs);
    if (!sol)
      throw Error("lift-infeasible",
                  "row " + std::to_string(i) +
                      " does not lift (N*-surjectivity corank " +
                      std::to_string(nm.corank) + ")");
    MPoly s(f, x.total_coords());
    for (size_t j = 0; j < nm.ideal_basis.size(); ++j)
      if (!(*sol)[j].is_zero()) s = s + nm.ideal_basis[j] * (*sol)[j];
    out.hypersurfaces.push_back(std::move(s));
  }
  out.y = cut_by(x, out.hypersurfaces, qd.degrees, x.label + " cap V(s)");
  out.smoothness = validate_along_curve(out.y, c);
  if (!out.smoothness.ok())
    throw Error("not-smooth-along-curve",
                "constructed intersection is singular along C: " +
                    out.smoothness.detail);
  out.normal_in_y = conormal_in_ambient(out.y, c).normal;
  out.kernel_of_q = kernel_model(qd.q).inferred();
  out.splittings_match = out.normal_in_y == out.kernel_of_q;
  return out;
}

GenericCiResult generic_ci_splitting(const Ambient& x, const CurveMap& c,
                                     const std::vector<DivisorClass>& degrees,
                                     int trials, Rng& rng) {
  const Field f = x.field;
  if (static_cast<int>(degrees.size()) > x.dim - 2)
    throw Error("bad-arg", "need c <= dim X - 2");
  ConormalData cd = conormal_in_ambient(x, c);
  std::vector<IdealSections> ideals;
  for (const auto& d : degrees) {
    ideals.push_back(ideal_sections(x, c, d));
    if (ideals.back().basis.empty())
      throw Error("degenerate-samples",
                  "no forms of multidegree " + d.str() + " contain the curve");
  }
  GenericCiResult out;
  for (int t = 0; t < trials; ++t) {
    Rng trial = rng.fork(t);
    std::vector<MPoly> hyps;
    for (const auto& ideal : ideals) {
      MPoly s(f, x.total_coords());
      for (const MPoly& b : ideal.basis) s = s + b * trial.scalar(f);
      if (s.is_zero()) s = ideal.basis.at(0);
      hyps.push_back(std::move(s));
    }
    Ambient y = cut_by(x, hyps, degrees, x.label + " sample");
    auto cert = validate_along_curve(y, c);
    if (!cert.ok()) continue;  // singular sample
    out.per_trial.push_back(conormal_in_ambient(y, c).normal);
    ++out.smooth_samples;
  }
  if (out.smooth_samples == 0)
    throw Error("degenerate-samples",
                "every sampled complete intersection is singular along C");
  auto min_oracle = [&](int d) {
    long best = out.per_trial[0].h0(d);
    for (const auto& s : out.per_trial) best = std::min(best, s.h0(d));
    return best;
  };
  out.splitting = infer_splitting(min_oracle, out.per_trial[0].rank());
  // Thm-2.1-style prediction through the generic kernel engine
  std::vector<int> target;
  for (const auto& d : degrees)
    target.push_back(static_cast<int>(d.dot(c.block_degrees())));
  Rng krng = rng.fork(0x6b71);
  out.predicted = generic_kernel_splitting(f, cd.normal, SplittingType(target),
                                           trials, krng)
                      .splitting;
  out.agree = out.splitting == out.predicted;
  return out;
}

Certificate src_certificate(const Ambient& x, const CurveMap& c,
                            const std::string& curve_kind,
                            const std::vector<int>& curve_params,
                            const std::vector<DivisorClass>& degrees,
                            int trials, std::uint64_t seed) {
  const Field f = x.field;
  Certificate cert;
  cert.ambient_label = x.label;
  cert.curve_kind = curve_kind;
  cert.curve_params = curve_params;
  cert.degrees = degrees;
  cert.field_char = f.p;
  cert.trials = trials;
  cert.seed = seed;
  cert.cataloged = x.cataloged;

  TangentData td = tangent_splitting(x, c);
  cert.gate.kxc = td.kxc;
  cert.gate.m = x.dim;
  cert.gate.c = static_cast<int>(degrees.size());
  cert.gate.threshold = x.dim - static_cast<long>(degrees.size()) + 1;
  cert.gate.dc = 0;
  for (const auto& d : degrees) cert.gate.dc += d.dot(c.block_degrees());
  cert.gate.pass = cert.gate.kxc - cert.gate.dc >= cert.gate.threshold;

  if (x.kind == "grassmannian") {
    // on G(k,n) with D_i = d_i H the gate is the degree-bound inequality
    // e (n - sum d_i) > k(n-k) - c; the two must agree
    int k = x.params[0], n = x.params[1];
    long e = c.total_degree();
    long sum_d = 0;
    for (const auto& d : degrees) sum_d += d.deg[0];
    bool remark = e * (n - sum_d) > static_cast<long>(k) * (n - k) -
                                        static_cast<long>(degrees.size());
    if (remark != cert.gate.pass)
      throw Error("gate-mismatch",
                  "degree-bound inequality disagrees with the numerical gate");
  }

  cert.fano = x.fano_after(degrees);
  cert.degree_hypothesis = true;
  for (const auto& d : degrees)
    for (int db : d.deg)
      if (db < std::max(x.gen_degree, 3)) cert.degree_hypothesis = false;

  Rng rng(seed);
  auto gcs = generic_ci_splitting(x, c, degrees, trials, rng);
  cert.splitting = gcs.splitting;
  cert.smooth_along_c = gcs.smooth_samples > 0;
  cert.ample = gcs.splitting.ample();
  cert.balanced = gcs.splitting.balanced();
  cert.very_free = cert.gate.pass && cert.ample && cert.smooth_along_c;
  return cert;
}

}  // namespace p1b

#pragma once

#include <json.hpp>

#include "p1bundles/ci.hpp"
#include "p1bundles/products.hpp"

namespace p1b {

// All reports use ordered_json so identical runs serialize byte-identically.
using ojson = nlohmann::ordered_json;

ojson splitting_json(const SplittingType& s);

// Certificate schema (stable key order):
// {ambient, curve:{kind,params,seed}, degrees:[[int,..]], gate:{kxc, dc, m,
//  c, threshold, pass}, splitting:[int,..], flags:{..}, field:{char},
//  trials, seed}
ojson certificate_json(const Certificate& cert);

// {factors, d_range, trials:[{alphas_seed, per_d:[...], pass}], pass}
ojson product_report_json(const ProductReport& report);

ojson charp_demo_json(const CharPDemo& demo);

ojson ambient_descriptor_json(const Ambient& x);
// equations as sparse exponent/coefficient maps, with multidegrees
ojson equations_json(const Ambient& x);

// Curve interchange format: {"blocks": [[form, ...], ...]} with each form a
// list of coefficient strings (s-descending), integers or "a/b".
ojson curve_json(const CurveMap& c);
CurveMap curve_from_json(const ojson& j, const Field& f);

}  // namespace p1b

#pragma once

// JSON forms of the library's values. Infinite numbers are written as the
// strings "inf" and "-inf"; the empty-set dimension as "-inf".

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "tame/boxset.hpp"
#include "tame/crofton.hpp"
#include "tame/measure.hpp"
#include "tame/sampler.hpp"
#include "tame/xpoly.hpp"

namespace tame {

using json = nlohmann::json;

inline json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw json::type_error::create(302, "expected a number, \"inf\" or \"-inf\", got \"" + s + "\"", &j);
  }
  return j.get<double>();
}

inline void to_json(json& j, const XReal& r) { j = real_to_json(r.value()); }
inline void from_json(const json& j, XReal& r) { r = XReal(real_from_json(j)); }

inline void to_json(json& j, const XPoly& p) {
  j = json::object();
  j["coeffs"] = json::array();
  for (const auto& c : p.coeffs()) j["coeffs"].push_back(real_to_json(c.value()));
}

inline void from_json(const json& j, XPoly& p) {
  std::vector<XReal> c;
  for (const auto& e : j.at("coeffs")) c.emplace_back(real_from_json(e));
  p = XPoly(std::move(c));
}

inline void to_json(json& j, const Interval& iv) {
  j = {{"lo", real_to_json(iv.lo())},
       {"hi", real_to_json(iv.hi())},
       {"lo_closed", iv.lo_closed()},
       {"hi_closed", iv.hi_closed()}};
}

inline Interval interval_from_json(const json& j) {
  return Interval(real_from_json(j.at("lo")), real_from_json(j.at("hi")), j.at("lo_closed").get<bool>(),
                  j.at("hi_closed").get<bool>());
}

inline void to_json(json& j, const BoxComplex& a) {
  j = json::object();
  j["dim"] = a.ambient_dim();
  j["cells"] = json::array();
  for (const auto& c : a.cells()) j["cells"].push_back({{"factors", c.factors}});
}

/// Reads the BoxComplex schema; the cells are canonicalized, so overlapping
/// input cells are accepted.
inline BoxComplex box_complex_from_json(const json& j) {
  const auto d = j.at("dim").get<std::size_t>();
  std::vector<Cell> cells;
  for (const auto& jc : j.at("cells")) {
    Cell c;
    for (const auto& jf : jc.at("factors")) c.factors.push_back(interval_from_json(jf));
    cells.push_back(std::move(c));
  }
  return canonicalize(d, cells);
}

inline json dimension_to_json(Dimension d) {
  if (d.is_minus_infinity()) return "-inf";
  return d.value();
}

inline void to_json(json& j, const MeasureResult& r) {
  j = {{"mu", r.mu}, {"dim", dimension_to_json(r.dim)}, {"in_Uf", r.in_Uf}, {"in_Ub", r.in_Ub}};
}

inline void to_json(json& j, const CroftonEstimate& e) {
  j = {{"index", e.index},
       {"estimate", e.estimate},
       {"std_error", e.std_error},
       {"n_samples", e.n_samples},
       {"seed", e.seed}};
}

inline void from_json(const json& j, CroftonEstimate& e) {
  e.index = j.at("index").get<std::size_t>();
  e.estimate = j.at("estimate").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.n_samples = j.at("n_samples").get<std::uint64_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
}

inline void to_json(json& j, const SetCount& s) {
  j = {{"count", s.count}, {"mu_at_N", s.mu_at_N}, {"discrepancy", s.discrepancy}};
}

inline void to_json(json& j, const SampleResult& s) {
  j = {{"N", s.N}, {"epsilon", s.epsilon}, {"points", s.points}, {"per_set", s.per_set}};
}

}  // namespace tame

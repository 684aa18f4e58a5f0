#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tame/boxset.hpp"
#include "tame/xpoly.hpp"

namespace tame {

/// chi + length * x. The Euler characteristic of an interval is
/// (#closed finite ends) - 1, so a point gives 1, an open segment -1 and a
/// half-open one 0. Unbounded intervals have infinite length.
inline XPoly mu_interval(const Interval& iv) {
  const double chi = (iv.lo_closed() ? 1.0 : 0.0) + (iv.hi_closed() ? 1.0 : 0.0) - 1.0;
  return XPoly{chi, iv.length()};
}

/// Product of the factor polynomials.
inline XPoly mu_cell(const Cell& c) {
  XPoly out{1.0};
  for (const auto& f : c.factors) out = out * mu_interval(f);
  return out;
}

struct MeasureResult {
  XPoly mu;
  Dimension dim;
  bool in_Uf = true;  // every coefficient finite
  bool in_Ub = true;  // set bounded
};

namespace detail {

using exact = boost::multiprecision::cpp_rational;

// Finite parts are summed in exact rational arithmetic and rounded once, so
// the coefficients depend only on the set and not on how it was cut into
// cells. Otherwise removing a point could perturb the top coefficient by an
// ulp and flip a lexicographic comparison.
struct ExactSum {
  std::vector<exact> finite;
  std::vector<XAccumulator> inf;

  void grow(std::size_t n) {
    if (finite.size() < n) {
      finite.resize(n);
      inf.resize(n);
    }
  }

  void add_cell(const Cell& c) {
    if (!c.bounded()) {
      const XPoly p = mu_cell(c);
      grow(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k].is_finite()) finite[k] += exact(p[k].value());
        else inf[k].add(p[k]);
      }
      return;
    }
    std::vector<exact> poly{exact(1)};
    for (const auto& f : c.factors) {
      const exact chi((f.lo_closed() ? 1 : 0) + (f.hi_closed() ? 1 : 0) - 1);
      const exact len = exact(f.hi()) - exact(f.lo());
      std::vector<exact> next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k] * chi;
        next[k + 1] += poly[k] * len;
      }
      poly = std::move(next);
    }
    grow(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) finite[k] += poly[k];
  }

  XPoly result() const {
    std::vector<XReal> out(finite.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      XAccumulator acc = inf[k];
      acc.finite = finite[k].convert_to<double>();
      out[k] = acc.result(k);
    }
    return XPoly(std::move(out));
  }
};

}  // namespace detail

/// Sum of mu_cell over a disjoint decomposition of the set. Abutting cells are
/// joined first, so an unbounded box yields its product value rather than a
/// sum of atom values with opposite infinities.
inline MeasureResult measure(const BoxComplex& a) {
  MeasureResult r;
  detail::ExactSum sum;
  for (const auto& c : merged_cells(a)) sum.add_cell(c);
  r.mu = sum.result();
  r.dim = dimension(a);
  r.in_Uf = r.mu.all_finite();
  r.in_Ub = a.bounded();
  return r;
}

inline XPoly mu(const BoxComplex& a) { return measure(a).mu; }

inline XReal euler_characteristic(const BoxComplex& a) { return mu(a)[0]; }

inline XReal intrinsic_volume(const BoxComplex& a, std::size_t i) { return mu(a)[i]; }

/// i-dimensional Hausdorff measure: zero above the dimension, the leading
/// coefficient at it, and +inf below it.
inline XReal hausdorff_measure(const BoxComplex& a, std::size_t i) {
  const auto d = dimension(a);
  if (d.is_minus_infinity() || i > d.value()) return XReal{};
  if (i < d.value()) return XReal::pos_inf();
  return mu(a)[i];
}

inline std::strong_ordering mu_compare(const BoxComplex& a, const BoxComplex& b) {
  return lex_compare(mu(a), mu(b));
}

}  // namespace tame

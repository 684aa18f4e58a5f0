#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tame/error.hpp"

namespace tame {

/// Shortest decimal text that reads back to the same double; "inf"/"-inf" for infinities.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// An extended real: a finite double, +inf or -inf. NaN is rejected.
class XReal {
 public:
  constexpr XReal() = default;
  XReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw std::invalid_argument("XReal cannot hold NaN");
  }

  static XReal pos_inf() { return XReal(std::numeric_limits<double>::infinity()); }
  static XReal neg_inf() { return XReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const noexcept { return std::isfinite(v_); }
  bool is_pos_inf() const noexcept { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const noexcept { return std::isinf(v_) && v_ < 0; }
  bool is_zero() const noexcept { return v_ == 0.0; }
  double value() const noexcept { return v_; }

  friend bool operator==(XReal a, XReal b) noexcept { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(XReal a, XReal b) noexcept {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  double v_ = 0.0;
};

inline std::string to_string(XReal r) { return format_real(r.value()); }

/// Polynomial in x with extended-real coefficients, stored lowest degree first
/// and trimmed so that the last stored coefficient is nonzero.
class XPoly {
 public:
  XPoly() = default;
  explicit XPoly(std::vector<XReal> coeffs) : c_(std::move(coeffs)) { trim(); }
  XPoly(std::initializer_list<double> coeffs) : c_(coeffs.begin(), coeffs.end()) { trim(); }

  static XPoly constant(XReal c) { return XPoly(std::vector<XReal>{c}); }
  static XPoly monomial(XReal c, std::size_t k) {
    std::vector<XReal> v(k + 1);
    v[k] = c;
    return XPoly(std::move(v));
  }

  const std::vector<XReal>& coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }
  bool is_zero() const noexcept { return c_.empty(); }

  /// Highest stored index; nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }

  /// Coefficient of x^i, zero past the degree.
  XReal operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : XReal{}; }

  bool all_finite() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](XReal r) { return r.is_finite(); });
  }

  friend bool operator==(const XPoly&, const XPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<XReal> c_;
};

namespace detail {

// Accumulates extended reals for one output index, refusing +inf + -inf.
struct XAccumulator {
  double finite = 0.0;
  bool pos_inf = false;
  bool neg_inf = false;

  void add(XReal r) {
    if (r.is_pos_inf()) pos_inf = true;
    else if (r.is_neg_inf()) neg_inf = true;
    else finite += r.value();
  }

  XReal result(std::size_t index) const {
    if (pos_inf && neg_inf) throw indeterminate_coefficient(index);
    if (pos_inf) return XReal::pos_inf();
    if (neg_inf) return XReal::neg_inf();
    return XReal(finite);
  }
};

// 0 * (+-inf) is 0; finite * inf carries the sign.
inline XReal times(XReal a, XReal b) {
  if (a.is_zero() || b.is_zero()) return XReal{};
  return XReal(a.value() * b.value());
}

}  // namespace detail

inline XPoly add(const XPoly& p, const XPoly& q) {
  const std::size_t n = std::max(p.size(), q.size());
  std::vector<XReal> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    detail::XAccumulator acc;
    acc.add(p[k]);
    acc.add(q[k]);
    out[k] = acc.result(k);
  }
  return XPoly(std::move(out));
}

inline XPoly mul(const XPoly& p, const XPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const std::size_t n = p.size() + q.size() - 1;
  std::vector<XReal> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    detail::XAccumulator acc;
    const std::size_t lo = k >= q.size() ? k - q.size() + 1 : 0;
    const std::size_t hi = std::min(k, p.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) acc.add(detail::times(p[i], q[k - i]));
    out[k] = acc.result(k);
  }
  return XPoly(std::move(out));
}

inline XPoly operator+(const XPoly& p, const XPoly& q) { return add(p, q); }
inline XPoly operator*(const XPoly& p, const XPoly& q) { return mul(p, q); }

/// Returns p(beta * x): coefficient i is multiplied by beta^i.
inline XPoly dilate(const XPoly& p, double beta) {
  std::vector<XReal> out(p.size());
  double f = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i, f *= beta) out[i] = detail::times(p[i], XReal(f));
  return XPoly(std::move(out));
}

/// Lexicographic order decided at the largest index where the coefficients differ.
inline std::strong_ordering lex_compare(const XPoly& p, const XPoly& q) {
  for (std::size_t k = std::max(p.size(), q.size()); k-- > 0;) {
    auto c = p[k] <=> q[k];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

inline const char* to_string(std::strong_ordering o) {
  if (o < 0) return "less";
  if (o > 0) return "greater";
  return "equal";
}

/// Unevaluated sum hi + lo produced by compensated Horner evaluation.
struct CompensatedValue {
  double hi = 0.0;
  double lo = 0.0;
  double value() const noexcept { return hi + lo; }
};

/// Compensated Horner scheme (error-free TwoSum/TwoProd transformations).
///
/// With u the unit roundoff and deg the degree, the rounded result r satisfies
///   |r - p(n)| <= u |p(n)| + gamma(2 deg)^2 * sum_i |c_i| n^i,
/// gamma(k) = k u / (1 - k u); i.e. it is as accurate as Horner in twice the
/// working precision. Integers n are converted to double, exact below 2^53.
inline CompensatedValue eval_compensated(const XPoly& p, std::uint64_t n) {
  if (!p.all_finite()) throw infinite_coefficient();
  if (p.is_zero()) return {};
  const double x = static_cast<double>(n);
  const auto& c = p.coeffs();
  double s = c.back().value();
  double err = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    const double prod = s * x;
    const double prod_err = std::fma(s, x, -prod);
    const double sum = prod + c[i].value();
    const double z = sum - prod;
    const double sum_err = (prod - (sum - z)) + (c[i].value() - z);
    s = sum;
    err = std::fma(err, x, prod_err + sum_err);
  }
  return {s, err};
}

inline XReal eval(const XPoly& p, std::uint64_t n) { return XReal(eval_compensated(p, n).value()); }

/// Distance from v to the nearest integer, in [0, 1/2].
inline double dist_to_nearest_integer(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("distance to nearest integer of a non-finite value");
  return std::abs(v - std::nearbyint(v));
}

/// Nearest-integer distance of p(n), keeping the low-order part of the
/// compensated evaluation so large values do not lose their fractional part.
inline double distance_at(const XPoly& p, std::uint64_t n) {
  const auto v = eval_compensated(p, n);
  const double frac = (v.hi - std::nearbyint(v.hi)) + v.lo;
  return dist_to_nearest_integer(frac);
}

/// Text form, e.g. "1 + 2x + 1x^2", "-1 + 1x", "8x + 8x^2", "inf*x^2".
inline std::string to_string(const XPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double c = p[i].value();
    if (c == 0.0) continue;
    std::string mag = format_real(std::abs(c));
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) mag = "-" + mag;
    out += mag;
    if (i == 0) continue;
    if (std::isinf(c)) out += "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace tame

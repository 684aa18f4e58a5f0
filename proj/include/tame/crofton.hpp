#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tame/boxset.hpp"
#include "tame/philox.hpp"

namespace tame {

/// Monte Carlo estimate of one intrinsic volume.
struct CroftonEstimate {
  std::size_t index = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(std::size_t n) {
  const double h = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

/// Total mass of the Grassmannian G(n, m) under the normalization
/// binom(n, m) * b_n / (b_m * b_{n-m}), b_i the unit-ball volume.
inline double grassmannian_norm(std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("grassmannian_norm: m > n");
  double binom = 1.0;
  for (std::size_t k = 1; k <= m; ++k) binom = binom * static_cast<double>(n - m + k) / static_cast<double>(k);
  return binom * unit_ball_volume(n) / (unit_ball_volume(m) * unit_ball_volume(n - m));
}

/// Orthogonal d x d matrix, row-major.
class Rotation {
 public:
  static Rotation identity(std::size_t d) {
    Rotation r(d);
    for (std::size_t i = 0; i < d; ++i) r.m_[i * d + i] = 1.0;
    return r;
  }

  /// Rotation by theta in the plane of axes i and j.
  static Rotation plane(std::size_t d, std::size_t i, std::size_t j, double theta) {
    if (i >= d || j >= d || i == j) throw std::invalid_argument("Rotation::plane: bad axes");
    Rotation r = identity(d);
    r.m_[i * d + i] = std::cos(theta);
    r.m_[i * d + j] = -std::sin(theta);
    r.m_[j * d + i] = std::sin(theta);
    r.m_[j * d + j] = std::cos(theta);
    return r;
  }

  Rotation operator*(const Rotation& o) const {
    if (o.d_ != d_) throw dimension_mismatch(d_, o.d_);
    Rotation r(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t k = 0; k < d_; ++k)
        for (std::size_t j = 0; j < d_; ++j) r.m_[i * d_ + j] += m_[i * d_ + k] * o.m_[k * d_ + j];
    return r;
  }

  std::size_t dim() const noexcept { return d_; }

  std::vector<double> apply(std::span<const double> v) const {
    std::vector<double> out(d_, 0.0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) out[i] += m_[i * d_ + j] * v[j];
    return out;
  }

 private:
  explicit Rotation(std::size_t d) : d_(d), m_(d * d, 0.0) {}
  std::size_t d_;
  std::vector<double> m_;
};

/// Intersection of A with the line {p + t u}, as disjoint maximal intervals in t.
inline std::vector<Interval> slice_line(const BoxComplex& a, std::span<const double> p, std::span<const double> u) {
  const std::size_t d = a.ambient_dim();
  if (p.size() != d) throw dimension_mismatch(d, p.size());
  if (u.size() != d) throw dimension_mismatch(d, u.size());
  double norm2 = 0.0;
  for (double x : u) norm2 += x * x;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) throw std::invalid_argument("slice_line: direction is not a unit vector");

  std::vector<Interval> pieces;
  for (const auto& cell : a.cells()) {
    std::optional<Interval> t = Interval::real_line();
    for (std::size_t j = 0; j < d && t; ++j) {
      const auto& f = cell.factors[j];
      if (u[j] == 0.0) {
        if (!f.contains(p[j])) t.reset();
        continue;
      }
      const double from = (f.lo() - p[j]) / u[j];
      const double to = (f.hi() - p[j]) / u[j];
      auto constraint = u[j] > 0 ? Interval::make(from, to, f.lo_closed(), f.hi_closed())
                                 : Interval::make(to, from, f.hi_closed(), f.lo_closed());
      t = constraint ? intersect(*t, *constraint) : std::nullopt;
    }
    if (t) pieces.push_back(*t);
  }
  return normalize_intervals(std::move(pieces));
}

/// Euler characteristic of a disjoint union of intervals.
inline long long slice_euler(std::span<const Interval> ivs) {
  long long chi = 0;
  for (const auto& iv : ivs) chi += (iv.lo_closed() ? 1 : 0) + (iv.hi_closed() ? 1 : 0) - 1;
  return chi;
}

struct CroftonOptions {
  unsigned threads = 1;
  /// Applied to the sampled line about the bounding-box centre; slicing A with
  /// the rotated line is slicing the inversely rotated set with the original one.
  std::optional<Rotation> frame;
};

namespace detail {

struct IntegerMoments {
  long long sum = 0;
  long long sum_sq = 0;
};

// Runs per-sample integer values over [0, n) split into contiguous chunks.
// Integer accumulation makes the result independent of the split.
template <class PerSample>
IntegerMoments accumulate_samples(std::uint64_t n, unsigned threads, PerSample per_sample) {
  threads = std::max(1u, threads);
  std::vector<IntegerMoments> parts(threads);
  auto run = [&](unsigned w) {
    const std::uint64_t lo = n * w / threads, hi = n * (w + 1) / threads;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const long long v = per_sample(i);
      parts[w].sum += v;
      parts[w].sum_sq += v * v;
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run, w);
  }
  IntegerMoments total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  return total;
}

inline double sample_std(const IntegerMoments& m, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(m.sum) / nn;
  const double var = (static_cast<double>(m.sum_sq) - nn * mean * mean) / (nn - 1.0);
  return std::sqrt(std::max(var, 0.0));
}

inline std::vector<std::pair<double, double>> require_bounded_box(const BoxComplex& a) {
  if (!a.bounded()) throw unbounded_set();
  auto bb = bounding_box(a);
  if (!bb) throw empty_set();
  return *bb;
}

}  // namespace detail

/// Top intrinsic volume by uniform point sampling of the closed bounding box.
inline CroftonEstimate estimate_volume(const BoxComplex& a, std::uint64_t n_samples, std::uint64_t seed,
                                       unsigned threads = 1) {
  if (n_samples == 0) throw std::invalid_argument("estimate_volume: n_samples must be positive");
  const auto bb = detail::require_bounded_box(a);
  const std::size_t d = a.ambient_dim();
  double box_volume = 1.0;
  for (const auto& [lo, hi] : bb) box_volume *= hi - lo;

  const auto moments = detail::accumulate_samples(n_samples, threads, [&](std::uint64_t i) -> long long {
    SampleStream rng(seed, i);
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = bb[j].first + (bb[j].second - bb[j].first) * rng.uniform();
    return contains_point(a, x) ? 1 : 0;
  });
  CroftonEstimate e;
  e.index = d;
  e.n_samples = n_samples;
  e.seed = seed;
  e.estimate = box_volume * static_cast<double>(moments.sum) / static_cast<double>(n_samples);
  e.std_error = box_volume * detail::sample_std(moments, n_samples) / std::sqrt(static_cast<double>(n_samples));
  return e;
}

/// Random line for the codimension-1 estimator: direction uniform on the
/// sphere, base point uniform on the (d-1)-ball of radius `radius` in the
/// orthogonal complement, centred at `centre`.
struct RandomLine {
  std::vector<double> point;
  std::vector<double> direction;
};

inline RandomLine draw_line(std::span<const double> centre, double radius, std::uint64_t seed, std::uint64_t index,
                            const std::optional<Rotation>& frame = std::nullopt) {
  const std::size_t d = centre.size();
  SampleStream rng(seed, index);
  std::vector<double> u(d);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (auto& x : u) {
      x = rng.gaussian();
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  for (auto& x : u) x /= norm;

  // Householder reflection swapping e_{d-1} and u; its first d-1 columns span u-perp.
  std::vector<double> v(u);
  v[d - 1] -= 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;
  auto basis = [&](std::size_t k, std::size_t i) {
    const double e = i == k ? 1.0 : 0.0;
    return vv == 0.0 ? e : e - 2.0 * v[i] * v[k] / vv;
  };

  std::vector<double> offset(d, 0.0);
  if (d > 1) {
    const std::size_t m = d - 1;
    std::vector<double> g(m);
    double gn = 0.0;
    while (gn == 0.0) {
      gn = 0.0;
      for (auto& x : g) {
        x = rng.gaussian();
        gn += x * x;
      }
      gn = std::sqrt(gn);
    }
    const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < d; ++i) offset[i] += r * g[k] / gn * basis(k, i);
  }

  if (frame) {
    offset = frame->apply(offset);
    u = frame->apply(u);
  }
  RandomLine line{std::vector<double>(d), std::move(u)};
  for (std::size_t i = 0; i < d; ++i) line.point[i] = centre[i] + offset[i];
  return line;
}

/// Codimension-1 intrinsic volume via the Crofton integral over random lines.
inline CroftonEstimate estimate_codim1(const BoxComplex& a, std::uint64_t n_samples, std::uint64_t seed,
                                       const CroftonOptions& options = {}) {
  if (n_samples == 0) throw std::invalid_argument("estimate_codim1: n_samples must be positive");
  const std::size_t d = a.ambient_dim();
  if (d == 0) throw dimension_mismatch("estimate_codim1 requires ambient dimension >= 1");
  if (options.frame && options.frame->dim() != d) throw dimension_mismatch(d, options.frame->dim());
  const auto bb = detail::require_bounded_box(a);

  std::vector<double> centre(d);
  double diag2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    centre[j] = 0.5 * (bb[j].first + bb[j].second);
    diag2 += (bb[j].second - bb[j].first) * (bb[j].second - bb[j].first);
  }
  const double radius = 0.5 * std::sqrt(diag2);
  const double perp_volume = unit_ball_volume(d - 1) * std::pow(radius, static_cast<double>(d - 1));
  const double factor = grassmannian_norm(d, 1) * perp_volume;

  const auto moments = detail::accumulate_samples(n_samples, options.threads, [&](std::uint64_t i) -> long long {
    const auto line = draw_line(centre, radius, seed, i, options.frame);
    return slice_euler(slice_line(a, line.point, line.direction));
  });
  CroftonEstimate e;
  e.index = d - 1;
  e.n_samples = n_samples;
  e.seed = seed;
  e.estimate = factor * static_cast<double>(moments.sum) / static_cast<double>(n_samples);
  e.std_error = factor * detail::sample_std(moments, n_samples) / std::sqrt(static_cast<double>(n_samples));
  return e;
}

}  // namespace tame

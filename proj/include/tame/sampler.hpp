#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/boxset.hpp"
#include "tame/measure.hpp"
#include "tame/xpoly.hpp"

namespace tame {

using Point = std::vector<double>;

struct Fraction {
  long long num = 0;
  long long den = 1;
};

/// Continued-fraction reconstruction: the first convergent p/q with
/// q <= max_den and |v - p/q| <= rel_tol * max(1, |v|), if any.
inline std::optional<Fraction> as_rational(double v, long long max_den = 1'000'000, double rel_tol = 1e-13) {
  if (!std::isfinite(v)) return std::nullopt;
  const long double target = v;
  const long double tol = static_cast<long double>(rel_tol) * std::max<long double>(1.0L, std::abs(target));
  long double x = target;
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(target - static_cast<long double>(h) / static_cast<long double>(k)) <= tol) return Fraction{h, k};
    const long double frac = x - std::floor(x);
    if (frac == 0.0L) return std::nullopt;
    x = 1.0L / frac;
    const long long a = static_cast<long long>(std::floor(x));
    if (a > max_den) return std::nullopt;
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_den) return std::nullopt;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

struct NearIntegerResult {
  std::uint64_t N = 0;
  std::vector<double> distances;  // ||p_i(N)|| re-evaluated at the returned N
  bool rational_shortcut = false;
};

namespace detail {

inline void check_search_input(std::span<const XPoly> polys, double epsilon, std::uint64_t n_start,
                               std::uint64_t n_max) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (n_start > n_max) throw std::invalid_argument("N_start exceeds N_max");
  for (const auto& p : polys) {
    if (!p.all_finite()) throw infinite_coefficient();
    const double c0 = p[0].value();
    if (std::abs(c0 - std::nearbyint(c0)) > 1e-9)
      throw std::invalid_argument("polynomial constant term " + format_real(c0) + " is not an integer");
  }
}

inline std::optional<std::uint64_t> common_denominator(std::span<const XPoly> polys) {
  std::uint64_t l = 1;
  for (const auto& p : polys)
    for (std::size_t i = 1; i < p.size(); ++i) {
      auto f = as_rational(p[i].value());
      if (!f) return std::nullopt;
      const auto den = static_cast<std::uint64_t>(f->den);
      l = l / std::gcd(l, den) * den;
      if (l > (std::uint64_t{1} << 53)) return std::nullopt;
    }
  return l;
}

}  // namespace detail

/// Smallest N in [n_start, n_max] at which every polynomial is within epsilon
/// of an integer and `extra` holds. When every coefficient is a rational with
/// denominator <= 1e6, the first admissible multiple of the lcm of the
/// denominators is returned instead; there every value is an exact integer.
inline NearIntegerResult find_near_integer_N(std::span<const XPoly> polys, double epsilon, std::uint64_t n_start,
                                             std::uint64_t n_max,
                                             const std::function<bool(std::uint64_t)>& extra = {}) {
  detail::check_search_input(polys, epsilon, n_start, n_max);
  auto distances = [&](std::uint64_t n) {
    std::vector<double> d;
    d.reserve(polys.size());
    for (const auto& p : polys) d.push_back(distance_at(p, n));
    return d;
  };
  auto accepts = [&](std::uint64_t n, double bound) {
    for (const auto& p : polys)
      if (!(distance_at(p, n) < bound)) return false;
    return !extra || extra(n);
  };

  if (auto l = detail::common_denominator(polys)) {
    std::uint64_t n = (n_start + *l - 1) / *l * *l;
    for (; n <= n_max; n += *l)
      if (accepts(n, std::min(epsilon, 1e-9))) return {n, distances(n), true};
  }
  for (std::uint64_t n = n_start; n <= n_max; ++n)
    if (accepts(n, epsilon)) return {n, distances(n), false};
  throw search_exhausted(n_max);
}

/// k distinct points on the diagonal of the cell at parameters j/(k+1).
/// Degenerate axes are pinned; an unbounded axis uses a unit segment next to
/// its finite end (or [0, 1] for the whole line).
inline std::vector<Point> pick_points_in_cell(const Cell& c, std::size_t k) {
  if (k == 0) return {};
  if (c.dim() == 0) {
    if (k > 1) throw cell_too_small();
    Point p;
    for (const auto& f : c.factors) p.push_back(f.lo());
    return {p};
  }
  std::vector<std::pair<double, double>> span;
  for (const auto& f : c.factors) {
    double lo = f.lo(), hi = f.hi();
    if (!std::isfinite(lo) && !std::isfinite(hi)) { lo = 0.0; hi = 1.0; }
    else if (!std::isfinite(hi)) hi = lo + 1.0;
    else if (!std::isfinite(lo)) lo = hi - 1.0;
    span.emplace_back(lo, hi);
  }
  std::vector<Point> out;
  out.reserve(k);
  const double denom = static_cast<double>(k + 1);
  for (std::size_t j = 1; j <= k; ++j) {
    const double t = static_cast<double>(j) / denom;
    Point p;
    for (const auto& [lo, hi] : span) p.push_back(lo == hi ? lo : lo + (hi - lo) * t);
    out.push_back(std::move(p));
  }
  return out;
}

struct SetCount {
  std::uint64_t count = 0;
  double mu_at_N = 0.0;
  double discrepancy = 0.0;
};

/// A finite point set whose counts track mu at the scale N = #(points in U),
/// U = [0,1) x {0}^(d-1).
struct SampleResult {
  std::vector<Point> points;
  std::uint64_t N = 0;
  std::vector<SetCount> per_set;
  double epsilon = 0.0;
};

struct SampleOptions {
  std::uint64_t N_start = 1;
  std::uint64_t N_max = 1'000'000;
  std::uint64_t max_points = 10'000'000;  // sample_too_large above this
};

/// [0,1) on the first axis, pinned to 0 on the others.
inline BoxComplex unit_segment(std::size_t d) {
  if (d == 0) throw dimension_mismatch("unit segment needs ambient dimension >= 1");
  std::vector<Interval> f{Interval::closed_open(0.0, 1.0)};
  for (std::size_t j = 1; j < d; ++j) f.push_back(Interval::point(0.0));
  return box(std::move(f));
}

namespace detail {

// One block of the partition generated by U and the input sets.
struct Region {
  bool in_unit = false;
  BoxComplex set;
  XPoly mu;
  bool finite = false;
};

inline std::vector<Region> partition_regions(std::size_t d, std::span<const BoxComplex> sets,
                                             std::span<const Point> forced) {
  const BoxComplex unit = unit_segment(d);
  std::vector<Cell> point_cells;
  for (const auto& p : forced) {
    Cell c;
    for (double x : p) c.factors.push_back(Interval::point(x));
    point_cells.push_back(std::move(c));
  }
  std::vector<Cell> all = unit.cells();
  for (const auto& s : sets) all.insert(all.end(), s.cells().begin(), s.cells().end());
  all.insert(all.end(), point_cells.begin(), point_cells.end());

  const Grid g = make_grid(d, {std::span<const Cell>(all)});
  const auto in_unit = covered_atoms(g, unit.cells());
  std::vector<std::vector<std::uint64_t>> in_set;
  for (const auto& s : sets) in_set.push_back(covered_atoms(g, s.cells()));

  std::map<std::vector<bool>, std::vector<std::uint64_t>> blocks;
  for (auto atom : covered_atoms(g, all)) {
    std::vector<bool> sig{std::binary_search(in_unit.begin(), in_unit.end(), atom)};
    for (const auto& e : in_set) sig.push_back(std::binary_search(e.begin(), e.end(), atom));
    blocks[sig].push_back(atom);
  }
  std::vector<Region> out;
  for (auto& [sig, atoms] : blocks) {
    Region r;
    r.in_unit = sig[0];
    r.set = from_atoms(g, atoms);
    r.mu = mu(r.set);
    r.finite = dimension(r.set) == Dimension(0);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::size_t count_in(const BoxComplex& s, std::span<const Point> pts) {
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return contains_point(s, p); }));
}

// Adds `need` new points of region r. Picks in distinct cells are distinct,
// so only the forced points can collide with them.
inline void pick_in_region(const Region& r, std::size_t need, std::vector<Point>& lambda,
                           const std::set<Point>& forced) {
  if (need == 0) return;
  const auto top = dimension(r.set).value();
  for (const auto& c : r.set.cells()) {
    if (c.dim() != top) continue;
    std::size_t inside = 0;
    for (const auto& p : forced)
      if (c.contains(p)) ++inside;
    for (auto& p : pick_points_in_cell(c, need + inside)) {
      if (need == 0) break;
      if (!c.contains(p)) throw construction_violation("picked point left its cell");
      if (!forced.count(p)) {
        lambda.push_back(std::move(p));
        --need;
      }
    }
    if (need == 0) return;
  }
  throw construction_violation("could not place enough points in a region");
}

}  // namespace detail

/// Builds a finite set lambda containing the forced points such that for every
/// input set A, |#(lambda n A) - mu_A(N)| < 1/m with N = #(lambda n U).
inline SampleResult build_sample(std::span<const BoxComplex> sets, std::span<const Point> forced_points,
                                 std::uint64_t m, const SampleOptions& options = {}) {
  if (sets.empty()) throw std::invalid_argument("build_sample needs at least one set");
  if (m == 0) throw std::invalid_argument("m must be a positive integer");
  const std::size_t d = sets.front().ambient_dim();
  for (const auto& s : sets) {
    if (s.ambient_dim() != d) throw dimension_mismatch(d, s.ambient_dim());
    if (!s.bounded()) throw unbounded_set();
  }
  for (const auto& p : forced_points)
    if (p.size() != d) throw dimension_mismatch(d, p.size());
  const double epsilon = 1.0 / static_cast<double>(m);

  std::vector<Point> forced;
  std::set<Point> taken;
  for (const auto& p : forced_points)
    if (taken.insert(p).second) forced.push_back(p);
  const std::set<Point> forced_set = taken;

  const auto regions = detail::partition_regions(d, sets, forced);
  std::size_t u = 0, w = 0;
  std::vector<Point> lambda = forced;
  for (const auto& r : regions) {
    (r.in_unit ? u : w) += 1;
    if (r.in_unit && r.finite)
      for (const auto& c : r.set.cells())
        for (auto& p : pick_points_in_cell(c, 1))
          if (taken.insert(p).second) lambda.push_back(std::move(p));
  }

  std::vector<XPoly> polys;
  for (const auto& r : regions) polys.push_back(r.mu);
  const double threshold = epsilon / (2.0 * static_cast<double>(std::max(u, w)));
  const std::size_t seeded = lambda.size();
  const double k = static_cast<double>(forced.size());
  auto extra = [&](std::uint64_t n) {
    if (n <= seeded) return false;
    for (const auto& p : polys)
      if (p.degree().value_or(0) > 0 && !(eval(p, n).value() > k + 1.0)) return false;
    return true;
  };
  const std::uint64_t N = find_near_integer_N(polys, threshold, options.N_start, options.N_max, extra).N;
  double total = static_cast<double>(forced.size());
  for (const auto& p : polys) total += eval(p, N).value();
  if (total > static_cast<double>(options.max_points)) throw sample_too_large(N, total, options.max_points);

  auto place = [&](const detail::Region& r) {
    if (r.finite) {
      for (const auto& c : r.set.cells())
        for (auto& p : pick_points_in_cell(c, 1))
          if (taken.insert(p).second) lambda.push_back(std::move(p));
      return;
    }
    const long long target = std::llround(eval(r.mu, N).value());
    // Regions are disjoint, so only forced and point-region picks can already lie in r.
    const std::vector<Point> seeded_points(taken.begin(), taken.end());
    const auto present = static_cast<long long>(detail::count_in(r.set, seeded_points));
    if (target < present) throw construction_violation("region already holds more points than its target");
    detail::pick_in_region(r, static_cast<std::size_t>(target - present), lambda, forced_set);
  };
  for (const auto& r : regions)
    if (r.in_unit) place(r);
  for (const auto& r : regions)
    if (!r.in_unit) place(r);

  SampleResult result;
  result.N = N;
  result.epsilon = epsilon;
  if (detail::count_in(unit_segment(d), lambda) != N) throw construction_violation("#(lambda n U) != N");
  for (const auto& s : sets) {
    SetCount sc;
    sc.count = detail::count_in(s, lambda);
    sc.mu_at_N = eval(mu(s), N).value();
    sc.discrepancy = std::abs(static_cast<double>(sc.count) - sc.mu_at_N);
    if (!(sc.discrepancy < epsilon)) throw construction_violation("discrepancy not below epsilon");
    result.per_set.push_back(sc);
  }
  result.points = std::move(lambda);
  return result;
}

struct HausdorffRatio {
  double ratio = 0.0;   // count / N^i
  double target = 0.0;  // H^i(A)
  double gap = 0.0;     // |ratio - target|
  double bound = 0.0;   // (sum_{j<i} |mu_j| N^j + epsilon) / N^i
  std::uint64_t N = 0;
  std::uint64_t count = 0;
};

/// Finite-scale check that #(lambda n A) / N^i approaches H^i(A) for i = dim A.
inline HausdorffRatio hausdorff_ratio_check(const BoxComplex& a, std::size_t i, std::uint64_t m,
                                            const SampleOptions& options = {}) {
  if (!a.bounded()) throw unbounded_set();
  const auto d = dimension(a);
  if (d.is_minus_infinity() || d.value() != i)
    throw dimension_mismatch("ratio check requires i = dim A (dim A = " + to_string(d) + ")");
  const BoxComplex sets[] = {a};
  const auto sample = build_sample(sets, {}, m, options);
  const XPoly p = mu(a);
  const double n = static_cast<double>(sample.N);
  const double scale = std::pow(n, static_cast<double>(i));
  HausdorffRatio r;
  r.N = sample.N;
  r.count = sample.per_set[0].count;
  r.ratio = static_cast<double>(r.count) / scale;
  r.target = hausdorff_measure(a, i).value();
  r.gap = std::abs(r.ratio - r.target);
  double lower = 0.0;
  for (std::size_t j = 0; j < i; ++j) lower += std::abs(p[j].value()) * std::pow(n, static_cast<double>(j));
  r.bound = (lower + sample.epsilon) / scale;
  return r;
}

}  // namespace tame

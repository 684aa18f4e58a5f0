#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tame/error.hpp"
#include "tame/xpoly.hpp"

namespace tame {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One-dimensional factor of a box. Always nonempty: a point has lo == hi
/// with both ends closed, and infinite ends are open.
class Interval {
 public:
  Interval(double lo, double hi, bool lo_closed, bool hi_closed)
      : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
    if (auto why = invalid_reason(lo, hi, lo_closed, hi_closed)) throw invalid_interval(*why);
  }

  /// Nullopt when the endpoints describe the empty set; throws on malformed input.
  static std::optional<Interval> make(double lo, double hi, bool lo_closed, bool hi_closed) {
    if (std::isnan(lo) || std::isnan(hi)) throw invalid_interval("interval endpoint is NaN");
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed)) || lo == kInf || hi == -kInf) return std::nullopt;
    return Interval(lo, hi, lo_closed && std::isfinite(lo), hi_closed && std::isfinite(hi));
  }

  static Interval point(double a) { return {a, a, true, true}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval closed_open(double a, double b) { return {a, b, true, false}; }
  static Interval open_closed(double a, double b) { return {a, b, false, true}; }
  static Interval real_line() { return {-kInf, kInf, false, false}; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool lo_closed() const noexcept { return lo_closed_; }
  bool hi_closed() const noexcept { return hi_closed_; }

  bool is_point() const noexcept { return lo_ == hi_; }
  bool bounded() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }
  double length() const noexcept { return hi_ - lo_; }

  bool contains(double x) const noexcept {
    const bool above = lo_ < x || (lo_closed_ && lo_ == x);
    const bool below = x < hi_ || (hi_closed_ && hi_ == x);
    return above && below;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend bool operator<(const Interval& a, const Interval& b) noexcept {
    return std::tuple(a.lo_, !a.lo_closed_, a.hi_, a.hi_closed_) <
           std::tuple(b.lo_, !b.lo_closed_, b.hi_, b.hi_closed_);
  }

 private:
  static std::optional<std::string> invalid_reason(double lo, double hi, bool lo_closed, bool hi_closed) {
    if (std::isnan(lo) || std::isnan(hi)) return "interval endpoint is NaN";
    if (lo > hi || lo == kInf || hi == -kInf) return "interval bounds out of order";
    if (lo == hi && !(lo_closed && hi_closed)) return "degenerate interval must be a closed point";
    if ((lo_closed && !std::isfinite(lo)) || (hi_closed && !std::isfinite(hi)))
      return "infinite endpoint cannot be closed";
    return std::nullopt;
  }

  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  double lo = a.lo(), hi = a.hi();
  bool lc = a.lo_closed(), hc = a.hi_closed();
  if (b.lo() > lo) { lo = b.lo(); lc = b.lo_closed(); }
  else if (b.lo() == lo) lc = lc && b.lo_closed();
  if (b.hi() < hi) { hi = b.hi(); hc = b.hi_closed(); }
  else if (b.hi() == hi) hc = hc && b.hi_closed();
  return Interval::make(lo, hi, lc, hc);
}

/// Interval notation: "[0,1)", "{2}", "(-inf,3]".
inline std::string to_string(const Interval& iv) {
  if (iv.is_point()) return "{" + format_real(iv.lo()) + "}";
  return std::string(iv.lo_closed() ? "[" : "(") + format_real(iv.lo()) + "," + format_real(iv.hi()) +
         (iv.hi_closed() ? "]" : ")");
}

/// Union of 1-D intervals as sorted, maximal, pairwise disjoint intervals.
inline std::vector<Interval> normalize_intervals(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end());
  std::vector<Interval> out;
  for (const auto& iv : ivs) {
    if (!out.empty()) {
      const auto& cur = out.back();
      const bool touches = iv.lo() < cur.hi() || (iv.lo() == cur.hi() && (cur.hi_closed() || iv.lo_closed()));
      if (touches) {
        double hi = cur.hi();
        bool hc = cur.hi_closed();
        if (iv.hi() > hi) { hi = iv.hi(); hc = iv.hi_closed(); }
        else if (iv.hi() == hi) hc = hc || iv.hi_closed();
        out.back() = Interval(cur.lo(), hi, cur.lo_closed(), hc);
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

/// Generalized box: product of one nonempty interval per axis.
struct Cell {
  std::vector<Interval> factors;

  std::size_t ambient_dim() const noexcept { return factors.size(); }

  /// Number of non-degenerate factors.
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(factors.begin(), factors.end(), [](const Interval& f) { return !f.is_point(); }));
  }

  bool bounded() const noexcept {
    return std::all_of(factors.begin(), factors.end(), [](const Interval& f) { return f.bounded(); });
  }

  bool contains(std::span<const double> x) const noexcept {
    if (x.size() != factors.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!factors[j].contains(x[j])) return false;
    return true;
  }

  friend bool operator==(const Cell&, const Cell&) = default;
  friend bool operator<(const Cell& a, const Cell& b) noexcept { return a.factors < b.factors; }
};

inline std::optional<Cell> intersect(const Cell& a, const Cell& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dimension_mismatch(a.ambient_dim(), b.ambient_dim());
  Cell out;
  for (std::size_t j = 0; j < a.factors.size(); ++j) {
    auto f = intersect(a.factors[j], b.factors[j]);
    if (!f) return std::nullopt;
    out.factors.push_back(*f);
  }
  return out;
}

inline std::string to_string(const Cell& c) {
  std::string out;
  for (std::size_t j = 0; j < c.factors.size(); ++j) {
    if (j) out += ",";
    out += to_string(c.factors[j]);
  }
  return out;
}

/// Dimension of a set; the empty set has dimension minus infinity.
class Dimension {
 public:
  Dimension() = default;  // minus infinity
  explicit Dimension(std::size_t d) : d_(d) {}
  static Dimension minus_infinity() { return {}; }

  bool is_minus_infinity() const noexcept { return !d_.has_value(); }
  std::size_t value() const { return d_.value(); }

  friend Dimension operator+(Dimension a, Dimension b) {
    if (a.is_minus_infinity() || b.is_minus_infinity()) return {};
    return Dimension(*a.d_ + *b.d_);
  }
  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  std::optional<std::size_t> d_;
};

inline std::string to_string(Dimension d) {
  return d.is_minus_infinity() ? "-inf" : std::to_string(d.value());
}

/// Finite disjoint union of cells in a fixed ambient dimension.
class BoxComplex {
 public:
  explicit BoxComplex(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }

  bool bounded() const noexcept {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.bounded(); });
  }

  /// Wraps cells that are already pairwise disjoint; no canonicalization.
  static BoxComplex from_disjoint_cells(std::size_t ambient_dim, std::vector<Cell> cells) {
    for (const auto& c : cells)
      if (c.ambient_dim() != ambient_dim) throw dimension_mismatch(ambient_dim, c.ambient_dim());
    BoxComplex out(ambient_dim);
    out.cells_ = std::move(cells);
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Cell> cells_;
};

inline std::string to_string(const BoxComplex& a) {
  if (a.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    if (i) out += " | ";
    out += to_string(a.cells()[i]);
  }
  return out;
}

namespace detail {

// Per-axis refinement: k sorted cut points give 2k+1 atoms, alternating
// open segments (even index) and cut points (odd index).
struct Grid {
  std::vector<std::vector<double>> cuts;

  std::size_t dim() const noexcept { return cuts.size(); }
  std::size_t atom_count(std::size_t axis) const noexcept { return 2 * cuts[axis].size() + 1; }

  Interval atom(std::size_t axis, std::size_t idx) const {
    const auto& c = cuts[axis];
    if (idx % 2 == 1) return Interval::point(c[idx / 2]);
    const std::size_t j = idx / 2;
    const double lo = j == 0 ? -kInf : c[j - 1];
    const double hi = j == c.size() ? kInf : c[j];
    return Interval::open(lo, hi);
  }

  // Inclusive range of atom indices covered by an interval whose finite
  // endpoints are cut points of this axis.
  std::pair<std::size_t, std::size_t> range(std::size_t axis, const Interval& iv) const {
    const auto& c = cuts[axis];
    auto pos = [&](double v) {
      return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), v) - c.begin());
    };
    std::size_t first = 0;
    if (std::isfinite(iv.lo())) first = 2 * pos(iv.lo()) + (iv.lo_closed() ? 1 : 2);
    std::size_t last = 2 * c.size();
    if (std::isfinite(iv.hi())) last = 2 * pos(iv.hi()) + (iv.hi_closed() ? 1 : 0);
    return {first, last};
  }

  std::uint64_t total_atoms() const {
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < dim(); ++j) {
      const std::uint64_t k = atom_count(j);
      if (n > (std::uint64_t{1} << 62) / k) throw error("grid refinement too large");
      n *= k;
    }
    return n;
  }

  // Mixed-radix linear index, axis 0 most significant.
  std::uint64_t linear(std::span<const std::size_t> idx) const {
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < dim(); ++j) n = n * atom_count(j) + idx[j];
    return n;
  }

  std::vector<std::size_t> unlinear(std::uint64_t n) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t j = dim(); j-- > 0;) {
      idx[j] = static_cast<std::size_t>(n % atom_count(j));
      n /= atom_count(j);
    }
    return idx;
  }

  Cell atom_cell(std::uint64_t n) const {
    Cell c;
    const auto idx = unlinear(n);
    for (std::size_t j = 0; j < dim(); ++j) c.factors.push_back(atom(j, idx[j]));
    return c;
  }
};

inline Grid make_grid(std::size_t dim, std::initializer_list<std::span<const Cell>> groups) {
  Grid g;
  g.cuts.resize(dim);
  for (auto cells : groups)
    for (const auto& c : cells) {
      if (c.ambient_dim() != dim) throw dimension_mismatch(dim, c.ambient_dim());
      for (std::size_t j = 0; j < dim; ++j) {
        const auto& f = c.factors[j];
        if (std::isfinite(f.lo())) g.cuts[j].push_back(f.lo());
        if (std::isfinite(f.hi())) g.cuts[j].push_back(f.hi());
      }
    }
  for (auto& axis : g.cuts) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  g.total_atoms();
  return g;
}

// Sorted linear indices of all atoms covered by the cells.
inline std::vector<std::uint64_t> covered_atoms(const Grid& g, std::span<const Cell> cells) {
  std::vector<std::uint64_t> out;
  const std::size_t d = g.dim();
  std::vector<std::size_t> first(d), last(d), idx(d);
  for (const auto& c : cells) {
    bool nonempty = true;
    for (std::size_t j = 0; j < d; ++j) {
      std::tie(first[j], last[j]) = g.range(j, c.factors[j]);
      nonempty = nonempty && first[j] <= last[j];
    }
    if (!nonempty) continue;
    idx = first;
    while (true) {
      out.push_back(g.linear(idx));
      std::size_t j = d;
      while (j > 0 && idx[j - 1] == last[j - 1]) {
        idx[j - 1] = first[j - 1];
        --j;
      }
      if (j == 0) break;
      ++idx[j - 1];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::uint64_t> all_atoms(const Grid& g) {
  std::vector<std::uint64_t> out(g.total_atoms());
  std::iota(out.begin(), out.end(), std::uint64_t{0});
  return out;
}

inline BoxComplex from_atoms(const Grid& grid, const std::vector<std::uint64_t>& atoms) {
  std::vector<Cell> cells;
  cells.reserve(atoms.size());
  for (auto n : atoms) cells.push_back(grid.atom_cell(n));
  return BoxComplex::from_disjoint_cells(grid.dim(), std::move(cells));
}

inline void require_same_dim(const BoxComplex& a, const BoxComplex& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dimension_mismatch(a.ambient_dim(), b.ambient_dim());
}

template <class SetOp>
BoxComplex combine(const BoxComplex& a, const BoxComplex& b, SetOp op) {
  require_same_dim(a, b);
  const Grid g = make_grid(a.ambient_dim(), {a.cells(), b.cells()});
  const auto ea = covered_atoms(g, a.cells());
  const auto eb = covered_atoms(g, b.cells());
  std::vector<std::uint64_t> out;
  op(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
  return from_atoms(g, out);
}

}  // namespace detail

/// Grid-atom decomposition of the union of possibly overlapping cells.
inline BoxComplex canonicalize(std::size_t ambient_dim, std::span<const Cell> raw) {
  const auto g = detail::make_grid(ambient_dim, {raw});
  return detail::from_atoms(g, detail::covered_atoms(g, raw));
}

inline BoxComplex canonicalize(std::size_t ambient_dim, const std::vector<Cell>& raw) {
  return canonicalize(ambient_dim, std::span<const Cell>(raw));
}

inline BoxComplex box(std::vector<Interval> factors) {
  const std::size_t d = factors.size();
  return canonicalize(d, std::vector<Cell>{Cell{std::move(factors)}});
}

inline BoxComplex unite(const BoxComplex& a, const BoxComplex& b) {
  return detail::combine(a, b, [](auto... args) { std::set_union(args...); });
}

inline BoxComplex intersect(const BoxComplex& a, const BoxComplex& b) {
  return detail::combine(a, b, [](auto... args) { std::set_intersection(args...); });
}

inline BoxComplex difference(const BoxComplex& a, const BoxComplex& b) {
  return detail::combine(a, b, [](auto... args) { std::set_difference(args...); });
}

/// Complement relative to R^d.
inline BoxComplex complement(const BoxComplex& a) {
  const auto g = detail::make_grid(a.ambient_dim(), {a.cells()});
  const auto in = detail::covered_atoms(g, a.cells());
  const auto all = detail::all_atoms(g);
  std::vector<std::uint64_t> out;
  std::set_difference(all.begin(), all.end(), in.begin(), in.end(), std::back_inserter(out));
  return detail::from_atoms(g, out);
}

inline BoxComplex cartesian_product(const BoxComplex& a, const BoxComplex& b) {
  std::vector<Cell> cells;
  cells.reserve(a.cells().size() * b.cells().size());
  for (const auto& ca : a.cells())
    for (const auto& cb : b.cells()) {
      Cell c = ca;
      c.factors.insert(c.factors.end(), cb.factors.begin(), cb.factors.end());
      cells.push_back(std::move(c));
    }
  return BoxComplex::from_disjoint_cells(a.ambient_dim() + b.ambient_dim(), std::move(cells));
}

namespace detail {
template <class F>
BoxComplex map_factors(const BoxComplex& a, F f) {
  std::vector<Cell> cells;
  cells.reserve(a.cells().size());
  for (const auto& c : a.cells()) {
    Cell out;
    for (std::size_t j = 0; j < c.factors.size(); ++j) out.factors.push_back(f(j, c.factors[j]));
    cells.push_back(std::move(out));
  }
  return BoxComplex::from_disjoint_cells(a.ambient_dim(), std::move(cells));
}
}  // namespace detail

inline BoxComplex translate(const BoxComplex& a, std::span<const double> v) {
  if (v.size() != a.ambient_dim()) throw dimension_mismatch(a.ambient_dim(), v.size());
  return detail::map_factors(a, [&](std::size_t j, const Interval& f) {
    return Interval(f.lo() + v[j], f.hi() + v[j], f.lo_closed(), f.hi_closed());
  });
}

inline BoxComplex scale(const BoxComplex& a, double beta) {
  if (!(beta > 0)) throw nonpositive_scale();
  if (!std::isfinite(beta)) throw std::invalid_argument("scale factor must be finite");
  return detail::map_factors(a, [&](std::size_t, const Interval& f) {
    return Interval(f.lo() * beta, f.hi() * beta, f.lo_closed(), f.hi_closed());
  });
}

/// Axis i of the result is axis sigma[i] of the input.
inline BoxComplex axis_permute(const BoxComplex& a, std::span<const std::size_t> sigma) {
  const std::size_t d = a.ambient_dim();
  if (sigma.size() != d) throw dimension_mismatch(d, sigma.size());
  std::vector<bool> seen(d, false);
  for (auto s : sigma) {
    if (s >= d || seen[s]) throw std::invalid_argument("axis_permute: not a permutation");
    seen[s] = true;
  }
  std::vector<Cell> cells;
  for (const auto& c : a.cells()) {
    Cell out;
    for (std::size_t i = 0; i < d; ++i) out.factors.push_back(c.factors[sigma[i]]);
    cells.push_back(std::move(out));
  }
  return BoxComplex::from_disjoint_cells(d, std::move(cells));
}

/// Mirror image x_axis -> -x_axis.
inline BoxComplex reflect(const BoxComplex& a, std::size_t axis) {
  if (axis >= a.ambient_dim()) throw dimension_mismatch("reflect: axis " + std::to_string(axis) + " out of range");
  return detail::map_factors(a, [&](std::size_t j, const Interval& f) {
    if (j != axis) return f;
    return Interval(-f.hi(), -f.lo(), f.hi_closed(), f.lo_closed());
  });
}

inline Dimension dimension(const BoxComplex& a) {
  Dimension d;
  for (const auto& c : a.cells())
    if (d.is_minus_infinity() || c.dim() > d.value()) d = Dimension(c.dim());
  return d;
}

inline bool contains_point(const BoxComplex& a, std::span<const double> x) {
  if (x.size() != a.ambient_dim()) throw dimension_mismatch(a.ambient_dim(), x.size());
  return std::any_of(a.cells().begin(), a.cells().end(), [&](const Cell& c) { return c.contains(x); });
}

inline bool is_subset(const BoxComplex& a, const BoxComplex& b) {
  detail::require_same_dim(a, b);
  const auto g = detail::make_grid(a.ambient_dim(), {a.cells(), b.cells()});
  const auto ea = detail::covered_atoms(g, a.cells());
  const auto eb = detail::covered_atoms(g, b.cells());
  return std::includes(eb.begin(), eb.end(), ea.begin(), ea.end());
}

inline bool set_equal(const BoxComplex& a, const BoxComplex& b) {
  detail::require_same_dim(a, b);
  const auto g = detail::make_grid(a.ambient_dim(), {a.cells(), b.cells()});
  return detail::covered_atoms(g, a.cells()) == detail::covered_atoms(g, b.cells());
}

/// Closed axis-aligned hull as per-axis [lo, hi]; nullopt for the empty set.
inline std::optional<std::vector<std::pair<double, double>>> bounding_box(const BoxComplex& a) {
  if (a.empty()) return std::nullopt;
  std::vector<std::pair<double, double>> bb(a.ambient_dim(), {kInf, -kInf});
  for (const auto& c : a.cells())
    for (std::size_t j = 0; j < c.factors.size(); ++j) {
      bb[j].first = std::min(bb[j].first, c.factors[j].lo());
      bb[j].second = std::max(bb[j].second, c.factors[j].hi());
    }
  return bb;
}

/// Coarsens the cell list by repeatedly joining cells that agree on all axes
/// but one and abut along that axis. Membership is unchanged.
inline std::vector<Cell> merged_cells(const BoxComplex& a) {
  std::vector<Cell> cells = a.cells();
  const std::size_t d = a.ambient_dim();
  bool changed = d > 0;
  while (changed) {
    changed = false;
    for (std::size_t axis = 0; axis < d; ++axis) {
      std::map<std::vector<Interval>, std::vector<Interval>> groups;
      for (auto& c : cells) {
        Interval along = c.factors[axis];
        c.factors.erase(c.factors.begin() + static_cast<std::ptrdiff_t>(axis));
        groups[std::move(c.factors)].push_back(along);
      }
      cells.clear();
      for (auto& [rest, along] : groups) {
        std::sort(along.begin(), along.end());
        std::vector<Interval> joined;
        for (const auto& iv : along) {
          if (!joined.empty() && joined.back().hi() == iv.lo() && joined.back().hi_closed() != iv.lo_closed()) {
            joined.back() = Interval(joined.back().lo(), iv.hi(), joined.back().lo_closed(), iv.hi_closed());
            changed = true;
          } else {
            joined.push_back(iv);
          }
        }
        for (const auto& iv : joined) {
          Cell c{rest};
          c.factors.insert(c.factors.begin() + static_cast<std::ptrdiff_t>(axis), iv);
          cells.push_back(std::move(c));
        }
      }
    }
  }
  return cells;
}

}  // namespace tame

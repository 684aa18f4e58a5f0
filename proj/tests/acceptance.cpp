// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dsl_corpus.hpp"
#include "support.hpp"
#include "tame/crofton.hpp"
#include "tame/dsl.hpp"
#include "tame/measure.hpp"
#include "tame/sampler.hpp"

using namespace tame;
using tame::testing::random_complex;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool coeffs_near(const XPoly& a, const XPoly& b, double rel) {
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double x = a[i].value(), y = b[i].value();
    if (x == y) continue;
    if (!(std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)}))) return false;
  }
  return true;
}

XPoly power(const XPoly& p, int n) {
  XPoly r{1.0};
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

BoxComplex cube(Interval iv, std::size_t d) { return box(std::vector<Interval>(d, iv)); }

BoxComplex seg(Interval iv) { return box({iv, Interval::point(0)}); }

BoxComplex square_ring() {
  return difference(cube(Interval::closed(0, 3), 2), cube(Interval::open(1, 2), 2));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome golden_mu() {
  std::ostringstream why;
  bool ok = coeffs_near(mu(box({Interval::closed_open(0, 1)})), XPoly({0, 1}), 1e-12);
  if (!ok) why << "mu([0,1)) ";
  for (int d = 1; d <= 3; ++d) {
    if (!coeffs_near(mu(cube(Interval::closed(0, 1), d)), power(XPoly({1, 1}), d), 1e-12)) {
      ok = false;
      why << "mu([0,1]^" << d << ") ";
    }
    if (euler_characteristic(cube(Interval::open(0, 1), d)).value() != (d % 2 ? -1.0 : 1.0)) {
      ok = false;
      why << "chi((0,1)^" << d << ") ";
    }
  }
  const XPoly ring = mu(square_ring());
  if (!coeffs_near(ring, XPoly({0, 8, 8}), 1e-12)) {
    ok = false;
    why << "ring " << to_string(ring);
  }
  return {ok, ok ? "mu([0,1)) = x, (1+x)^d for d <= 3, ring = 8x + 8x^2, chi((0,1)^d) = (-1)^d" : why.str()};
}

Outcome strict_monotonicity() {
  std::mt19937_64 rng(2024);
  int less = 0, total = 0;
  while (total < 500) {
    const std::size_t d = 1 + total % 3;
    const auto b = random_complex(rng, d);
    std::uniform_int_distribution<std::size_t> pick(0, b.cells().size() - 1);
    const auto a = difference(b, BoxComplex::from_disjoint_cells(d, {b.cells()[pick(rng)]}));
    if (!is_subset(a, b) || set_equal(a, b)) return {false, "construction did not give a proper subset"};
    ++total;
    if (mu_compare(a, b) == std::strong_ordering::less) ++less;
  }
  return {less == total, std::to_string(less) + "/" + std::to_string(total) + " pairs compare less"};
}

Outcome product_formula() {
  std::mt19937_64 rng(3033);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const auto a = random_complex(rng, 1 + i % 2), b = random_complex(rng, 1 + i % 3);
    if (coeffs_near(mu(cartesian_product(a, b)), mu(a) * mu(b), 1e-10)) ++ok;
  }
  return {ok == 200, std::to_string(ok) + "/200 pairs within 1e-10"};
}

Outcome valuation() {
  std::mt19937_64 rng(4044);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 1 + i % 3;
    const auto a = random_complex(rng, d), b = random_complex(rng, d);
    if (coeffs_near(mu(unite(a, b)) + mu(intersect(a, b)), mu(a) + mu(b), 1e-10)) ++ok;
  }
  return {ok == 200, std::to_string(ok) + "/200 pairs within 1e-10"};
}

Outcome crofton() {
  const auto t0 = Clock::now();
  CroftonOptions opts;
  opts.threads = 4;
  const auto sq = cube(Interval::closed(0, 1), 2);
  const auto c1 = estimate_codim1(sq, 1'000'000, 5001, opts);
  const auto vol = estimate_volume(square_ring(), 100'000, 5002, 4);
  CroftonOptions rotated = opts;
  rotated.frame = Rotation::plane(2, 0, 1, 0.6);
  const auto c1r = estimate_codim1(sq, 1'000'000, 5003, rotated);
  const double elapsed = seconds_since(t0);

  const bool a = std::abs(c1.estimate - 2.0) <= 4 * c1.std_error && c1.std_error < 0.02;
  const bool b = std::abs(vol.estimate - 8.0) <= 4 * vol.std_error;
  const bool c = std::abs(c1r.estimate - c1.estimate) <= 4 * std::hypot(c1.std_error, c1r.std_error);
  std::ostringstream s;
  s << "mu_1(square) ~ " << c1.estimate << " +- " << c1.std_error << ", ring area ~ " << vol.estimate << " +- "
    << vol.std_error << ", rotated ~ " << c1r.estimate << ", " << elapsed << " s";
  return {a && b && c && elapsed < 60.0, s.str()};
}

Outcome near_integer_search() {
  const std::vector<XPoly> irr{XPoly({0, std::sqrt(2.0)})};
  const auto r = find_near_integer_N(irr, 0.05, 1, 1'000'000);
  const bool a = r.N == 12 && std::abs(r.distances[0] - 0.0294) < 1e-4 &&
                 std::abs(dist_to_nearest_integer(12 * std::sqrt(2.0)) - r.distances[0]) < 1e-12;
  const std::vector<XPoly> rat{XPoly({0, 0.5}), XPoly({1, 1.0 / 3.0, 0.25})};
  const auto q = find_near_integer_N(rat, 0.05, 1, 1'000'000);
  bool b = q.rational_shortcut && q.N % 12 == 0;
  for (double d : q.distances) b = b && d < 1e-9;
  std::ostringstream s;
  s << "sqrt2: N = " << r.N << ", distance " << r.distances[0] << "; rational: N = " << q.N
    << (q.rational_shortcut ? " via lcm shortcut" : " by scan");
  return {a && b, s.str()};
}

Outcome finite_sample() {
  const auto t0 = Clock::now();
  const double r2 = std::sqrt(2.0);
  const std::vector<BoxComplex> sets{seg(Interval::closed(0, 2)), seg(Interval::closed_open(0, r2)),
                                     seg(Interval::closed_open(1, 3))};
  const std::vector<Point> forced{{5, 5}, {-1, 0}, {0.5, 0}};
  SampleResult r;
  try {
    r = build_sample(sets, forced, 100);
  } catch (const error& e) {
    return {false, e.what()};
  }
  auto count = [&](const BoxComplex& s) {
    return static_cast<std::uint64_t>(
        std::count_if(r.points.begin(), r.points.end(), [&](const Point& p) { return contains_point(s, p); }));
  };
  bool ok = count(unit_segment(2)) == r.N;
  double worst = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double disc = std::abs(static_cast<double>(count(sets[i])) - eval(mu(sets[i]), r.N).value());
    worst = std::max(worst, disc);
    ok = ok && disc < 0.01 && count(sets[i]) == r.per_set[i].count;
  }
  // Additivity on disjoint pieces of the family, and singleton counts.
  const auto left = seg(Interval::closed_open(0, r2)), right = seg(Interval::closed(r2, 2));
  ok = ok && count(left) + count(right) == count(sets[0]);
  const auto overlap = intersect(sets[0], sets[2]);
  ok = ok && count(overlap) + count(difference(sets[0], sets[2])) == count(sets[0]);
  for (const auto& p : forced) ok = ok && count(box({Interval::point(p[0]), Interval::point(p[1])})) == 1;
  const double elapsed = seconds_since(t0);
  std::ostringstream s;
  s << "N = " << r.N << ", |lambda| = " << r.points.size() << ", worst discrepancy " << worst << ", " << elapsed << " s";
  return {ok && elapsed < 10.0, s.str()};
}

Outcome hausdorff_ratio() {
  const auto a = seg(Interval::closed(0, 1));
  const auto small = hausdorff_ratio_check(a, 1, 100);
  SampleOptions later;
  later.N_start = 1000;
  const auto large = hausdorff_ratio_check(a, 1, 100, later);
  const bool ok = small.gap <= (1.0 + 0.01) / static_cast<double>(small.N) &&
                  large.gap <= (1.0 + 0.01) / static_cast<double>(large.N) && large.N > small.N &&
                  large.gap < small.gap;
  std::ostringstream s;
  s << "N = " << small.N << " gap " << small.gap << "; N = " << large.N << " gap " << large.gap;
  return {ok, s.str()};
}

Outcome parser() {
  int golden = 0, round = 0, errors = 0;
  const auto trees = tame::testing::golden_trees();
  for (const auto& g : trees)
    if (dsl::parse(g.source) == g.tree) ++golden;
  const auto& corpus = tame::testing::corpus();
  for (const auto& s : corpus) {
    const auto e = dsl::parse(s);
    if (dsl::parse(dsl::print(e)) == e) ++round;
  }
  const auto cases = tame::testing::error_positions();
  for (const auto& c : cases) {
    try {
      dsl::parse(c.source);
    } catch (const parse_error& e) {
      if (e.offset() == c.offset) ++errors;
    }
  }
  const bool ok = golden == static_cast<int>(trees.size()) && corpus.size() == 50 && round == 50 &&
                  errors == static_cast<int>(cases.size());
  std::ostringstream s;
  s << golden << "/" << trees.size() << " golden trees, " << round << "/" << corpus.size() << " round trips, " << errors
    << "/" << cases.size() << " error positions";
  return {ok, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact mu golden values", golden_mu},
      {"strict monotonicity", strict_monotonicity},
      {"product formula", product_formula},
      {"valuation identity", valuation},
      {"crofton validation", crofton},
      {"near-integer search", near_integer_search},
      {"finite sample construction", finite_sample},
      {"finite hausdorff ratio", hausdorff_ratio},
      {"parser", parser},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}

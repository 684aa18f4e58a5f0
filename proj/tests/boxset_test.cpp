#include "tame/boxset.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tame;
using tame::testing::random_complex;
using tame::testing::random_point;

namespace {

BoxComplex line(Interval iv) { return box({iv}); }
BoxComplex plane(Interval a, Interval b) { return box({a, b}); }

bool has(const BoxComplex& a, std::vector<double> x) { return contains_point(a, x); }

}  // namespace

TEST(Interval, RejectsMalformed) {
  EXPECT_THROW(Interval(1, 0, true, true), invalid_interval);
  EXPECT_THROW(Interval(1, 1, true, false), invalid_interval);
  EXPECT_THROW(Interval(-kInf, 0, true, true), invalid_interval);
  EXPECT_FALSE(Interval::make(1, 1, false, false).has_value());
  EXPECT_TRUE(Interval::make(1, 1, true, true).has_value());
}

TEST(Canonicalize, OverlapSplitsIntoAtoms) {
  const std::vector<Cell> raw{{{Interval::closed(0, 2)}}, {{Interval::closed(1, 3)}}};
  const auto a = canonicalize(1, raw);
  const std::vector<Cell> expect{{{Interval::point(0)}}, {{Interval::open(0, 1)}}, {{Interval::point(1)}},
                                 {{Interval::open(1, 2)}}, {{Interval::point(2)}}, {{Interval::open(2, 3)}},
                                 {{Interval::point(3)}}};
  EXPECT_EQ(a.cells(), expect);
  EXPECT_TRUE(set_equal(a, line(Interval::closed(0, 3))));
}

TEST(Canonicalize, ClosedSquareHasNineAtoms) {
  EXPECT_EQ(plane(Interval::closed(0, 1), Interval::closed(0, 1)).cells().size(), 9u);
}

TEST(Canonicalize, EmptyInput) {
  const auto a = canonicalize(2, std::vector<Cell>{});
  EXPECT_TRUE(a.empty());
  EXPECT_EQ(a.ambient_dim(), 2u);
}

TEST(Canonicalize, DimensionMismatch) {
  const std::vector<Cell> raw{{{Interval::closed(0, 1)}}};
  EXPECT_THROW(canonicalize(2, raw), dimension_mismatch);
}

TEST(Canonicalize, CellsArePairwiseDisjoint) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_complex(rng, 1 + trial % 3);
    const auto& cells = a.cells();
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j) EXPECT_FALSE(intersect(cells[i], cells[j]).has_value());
  }
}

TEST(BooleanOps, Examples) {
  EXPECT_TRUE(set_equal(difference(line(Interval::closed(0, 2)), line(Interval::closed(1, 2))),
                        line(Interval::closed_open(0, 1))));
  EXPECT_TRUE(set_equal(complement(line(Interval::open(0, kInf))), line(Interval::open_closed(-kInf, 0))));
  const auto face = intersect(plane(Interval::closed(0, 1), Interval::closed(0, 1)),
                              plane(Interval::closed(1, 2), Interval::closed(0, 1)));
  EXPECT_TRUE(set_equal(face, plane(Interval::point(1), Interval::closed(0, 1))));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-0.5, 2.5);
  for (int i = 0; i < 1000; ++i) {
    const double x = i % 3 == 0 ? 1.0 : coord(rng), y = coord(rng);
    EXPECT_EQ(has(face, {x, y}), x == 1.0 && y >= 0 && y <= 1);
  }
}

TEST(BooleanOps, DimensionMismatch) {
  EXPECT_THROW(unite(line(Interval::closed(0, 1)), plane(Interval::closed(0, 1), Interval::closed(0, 1))),
               dimension_mismatch);
}

TEST(BooleanOps, MembershipAgreesWithPointwiseLogic) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_complex(rng, d), b = random_complex(rng, d);
    const auto u = unite(a, b), i = intersect(a, b), df = difference(a, b), ca = complement(a);
    for (int k = 0; k < 1000; ++k) {
      const auto x = random_point(rng, d);
      const bool in_a = contains_point(a, x), in_b = contains_point(b, x);
      ASSERT_EQ(contains_point(u, x), in_a || in_b);
      ASSERT_EQ(contains_point(i, x), in_a && in_b);
      ASSERT_EQ(contains_point(df, x), in_a && !in_b);
      ASSERT_EQ(contains_point(ca, x), !in_a);
    }
  }
}

TEST(BooleanOps, AlgebraLaws) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_complex(rng, d), b = random_complex(rng, d);
    EXPECT_TRUE(set_equal(complement(unite(a, b)), intersect(complement(a), complement(b))));
    EXPECT_TRUE(set_equal(complement(intersect(a, b)), unite(complement(a), complement(b))));
    EXPECT_TRUE(set_equal(difference(a, b), intersect(a, complement(b))));
    EXPECT_TRUE(set_equal(unite(a, a), a));
    EXPECT_TRUE(set_equal(intersect(a, a), a));
    EXPECT_TRUE(set_equal(complement(complement(a)), a));
    EXPECT_EQ(is_subset(a, b) && is_subset(b, a), set_equal(a, b));
    EXPECT_TRUE(is_subset(intersect(a, b), a));
    EXPECT_TRUE(is_subset(a, unite(a, b)));
  }
}

TEST(Product, Examples) {
  const auto sq = cartesian_product(line(Interval::closed_open(0, 1)), line(Interval::closed_open(0, 1)));
  EXPECT_TRUE(set_equal(sq, plane(Interval::closed_open(0, 1), Interval::closed_open(0, 1))));
  EXPECT_TRUE(cartesian_product(BoxComplex(2), line(Interval::closed(0, 1))).empty());
  EXPECT_EQ(cartesian_product(BoxComplex(2), line(Interval::closed(0, 1))).ambient_dim(), 3u);

  const auto two_points = unite(line(Interval::point(0)), line(Interval::point(1)));
  const auto bars = cartesian_product(two_points, line(Interval::closed(0, 1)));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coord(-0.5, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const double x = i % 2 ? std::round(coord(rng)) : coord(rng), y = coord(rng);
    EXPECT_EQ(has(bars, {x, y}), (x == 0 || x == 1) && y >= 0 && y <= 1);
  }
}

TEST(Product, DimensionIsAdditive) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_complex(rng, 1 + trial % 2), b = random_complex(rng, 1 + trial % 3);
    EXPECT_EQ(dimension(cartesian_product(a, b)), dimension(a) + dimension(b));
  }
}

TEST(Motions, Examples) {
  EXPECT_TRUE(set_equal(scale(line(Interval::closed_open(0, 1)), 2), line(Interval::closed_open(0, 2))));
  const std::vector<double> v{1, 0};
  EXPECT_TRUE(set_equal(translate(plane(Interval::point(0), Interval::closed(0, 1)), v),
                        plane(Interval::point(1), Interval::closed(0, 1))));
  EXPECT_TRUE(set_equal(reflect(line(Interval::closed_open(0, 1)), 0), line(Interval::open_closed(-1, 0))));
  const std::vector<std::size_t> swap{1, 0};
  EXPECT_TRUE(set_equal(axis_permute(plane(Interval::point(3), Interval::open(0, 1)), swap),
                        plane(Interval::open(0, 1), Interval::point(3))));
}

TEST(Motions, Errors) {
  const auto a = line(Interval::closed(0, 1));
  EXPECT_THROW(scale(a, 0), nonpositive_scale);
  EXPECT_THROW(scale(a, -2), nonpositive_scale);
  const std::vector<double> v{1, 2};
  EXPECT_THROW(translate(a, v), dimension_mismatch);
  const std::vector<std::size_t> bad{0, 0};
  EXPECT_THROW(axis_permute(plane(Interval::closed(0, 1), Interval::closed(0, 1)), bad), std::invalid_argument);
  EXPECT_THROW(reflect(a, 1), dimension_mismatch);
}

TEST(Dimension, Examples) {
  const auto a = unite(plane(Interval::closed(0, 1), Interval::point(0)), plane(Interval::point(5), Interval::point(5)));
  EXPECT_EQ(dimension(a), Dimension(1));
  EXPECT_TRUE(dimension(BoxComplex(2)).is_minus_infinity());
  EXPECT_EQ(to_string(dimension(BoxComplex(2))), "-inf");
  EXPECT_EQ(dimension(plane(Interval::open(0, 1), Interval::open(0, 1))), Dimension(2));
}

TEST(Subset, Examples) {
  EXPECT_TRUE(is_subset(line(Interval::open(0, 1)), line(Interval::closed(0, 1))));
  EXPECT_FALSE(is_subset(line(Interval::closed(0, 1)), line(Interval::open(0, 1))));
  EXPECT_TRUE(set_equal(unite(line(Interval::closed_open(0, 1)), line(Interval::point(1))), line(Interval::closed(0, 1))));
}

TEST(Bounded, Flags) {
  EXPECT_TRUE(line(Interval::closed(0, 1)).bounded());
  EXPECT_FALSE(complement(line(Interval::closed(0, 1))).bounded());
  EXPECT_TRUE(BoxComplex(3).bounded());
}

TEST(NormalizeIntervals, JoinsTouchingPieces) {
  const auto out = normalize_intervals({Interval::point(2), Interval::open(1, 2), Interval::point(1),
                                        Interval::closed(3, 4), Interval::open(4, 5)});
  const std::vector<Interval> expect{Interval::closed(1, 2), Interval::closed_open(3, 5)};
  EXPECT_EQ(out, expect);
  const auto gap = normalize_intervals({Interval::open(0, 1), Interval::open(1, 2)});
  EXPECT_EQ(gap.size(), 2u);
}

TEST(MergedCells, PreservesMembership) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_complex(rng, d);
    const auto merged = BoxComplex::from_disjoint_cells(d, merged_cells(a));
    EXPECT_LE(merged.cells().size(), a.cells().size());
    EXPECT_TRUE(set_equal(merged, a));
  }
  EXPECT_EQ(merged_cells(plane(Interval::closed(0, 1), Interval::closed(0, 1))).size(), 1u);
}

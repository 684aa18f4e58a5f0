#include "tame/dsl.hpp"

#include <gtest/gtest.h>

#include "tame/measure.hpp"

#include "dsl_corpus.hpp"

using namespace tame;
using namespace tame::dsl;
using namespace tame::testing;

namespace {

parse_error parse_failure(std::string_view src) {
  try {
    parse(src);
  } catch (const parse_error& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << src;
  return parse_error(0, 0, 0, "");
}

}  // namespace

TEST(Parse, GoldenTrees) {
  for (const auto& g : golden_trees()) EXPECT_EQ(parse(g.source), g.tree) << g.source;
}

TEST(ParseError, TablePositions) {
  for (const auto& c : error_positions()) EXPECT_EQ(parse_failure(c.source).offset(), c.offset) << c.source;
}

TEST(Parse, Whitespace) { EXPECT_EQ(parse("  [ 0 , 1 ]  "), lit({Interval::closed(0, 1)})); }

TEST(Parse, Functions) {
  EXPECT_EQ(parse("scale([0,1), 2)"), node(K::scale, {lit({Interval::closed_open(0, 1)})}, {2}));
  EXPECT_EQ(parse("translate([0,1],[0,1], 1, -2)"),
            node(K::translate, {lit({Interval::closed(0, 1), Interval::closed(0, 1)})}, {1, -2}));
  EXPECT_EQ(parse("permute(A, 1, 0)"), node(K::permute, {ref("A")}, {1, 0}));
  // A name that merely starts like a function is a plain name.
  EXPECT_EQ(parse("scaled"), ref("scaled"));
  EXPECT_EQ(parse("xa"), ref("xa"));
}

TEST(Parse, ParenthesisedBoxVersusGroup) {
  EXPECT_EQ(parse("(0,1)"), lit({Interval::open(0, 1)}));
  EXPECT_EQ(parse("((0,1))"), lit({Interval::open(0, 1)}));
  EXPECT_EQ(parse("(A)"), ref("A"));
}

TEST(Parse, RoundTripCorpus) {
  ASSERT_EQ(corpus().size(), 50u);
  for (const auto& s : corpus()) {
    const auto e = parse(s);
    const auto printed = print(e);
    EXPECT_EQ(parse(printed), e) << s << " -> " << printed;
    EXPECT_EQ(print(parse(printed)), printed) << s;
  }
}

TEST(ParseError, LineColumnAndExpectation) {
  auto e = parse_failure("[0,");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 4u);
  EXPECT_NE(e.expected().find("NUMBER"), std::string::npos);
  EXPECT_NE(e.expected().find("\"-inf\""), std::string::npos);

  e = parse_failure("(A | B");
  EXPECT_EQ(e.expected(), "\")\"");

  e = parse_failure("[0,1]\n| [2,3]\n& ");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 3u);
}

TEST(Evaluate, Examples) {
  const auto two = evaluate(parse("[0,1] | [2,3]"));
  EXPECT_EQ(mu(two), XPoly({2, 2}));
  EXPECT_TRUE(set_equal(evaluate(parse("!((0,inf))")), box({Interval::open_closed(-kInf, 0)})));
  EXPECT_TRUE(set_equal(evaluate(parse("scale([0,1), 2)")), box({Interval::closed_open(0, 2)})));
  EXPECT_EQ(mu(evaluate(parse("[0,3],[0,3] \\ (1,2),(1,2)"))), XPoly({0, 8, 8}));
  EXPECT_EQ(mu(evaluate(parse("[0,1) x [0,1)"))), XPoly({0, 0, 1}));
  EXPECT_TRUE(set_equal(evaluate(parse("permute({3} x (0,1), 1, 0)")), box({Interval::open(0, 1), Interval::point(3)})));
  EXPECT_TRUE(set_equal(evaluate(parse("reflect([0,1), 0)")), box({Interval::open_closed(-1, 0)})));
  EXPECT_TRUE(set_equal(evaluate(parse("translate({0},[0,1], 1, 0)")), box({Interval::point(1), Interval::closed(0, 1)})));
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(evaluate(parse("[0,1] | [0,1],[0,1]")), dimension_mismatch);
  EXPECT_THROW(evaluate(parse("A")), unknown_name);
  EXPECT_THROW(evaluate(parse("scale([0,1], 0)")), nonpositive_scale);
  EXPECT_THROW(evaluate(parse("scale([0,1], 1, 2)")), std::invalid_argument);
  EXPECT_THROW(evaluate(parse("reflect([0,1], 0.5)")), std::invalid_argument);
  EXPECT_THROW(evaluate(parse("permute([0,1],[0,1], 0, 0)")), std::invalid_argument);
}

TEST(Definitions, ParseAndResolve) {
  const std::string text =
      "# the square ring\n"
      "ring = outer \\ inner   # out of order on purpose\n"
      "outer = [0,3],[0,3]\n"
      "\n"
      "inner = (1,2),(1,2)\n";
  const auto defs = parse_definitions(text);
  ASSERT_EQ(defs.size(), 3u);
  EXPECT_EQ(defs[0].name, "ring");
  const auto env = resolve(defs);
  EXPECT_EQ(mu(env.at("ring")), XPoly({0, 8, 8}));
  EXPECT_EQ(mu(evaluate(parse("ring | inner"), env)), XPoly({1, 6, 9}));
}

TEST(Definitions, Errors) {
  EXPECT_THROW(resolve(parse_definitions("a = b\nb = a\n")), cyclic_definition);
  EXPECT_THROW(resolve(parse_definitions("a = a | [0,1]\n")), cyclic_definition);
  EXPECT_THROW(resolve(parse_definitions("a = missing\n")), unknown_name);
  EXPECT_THROW(parse_definitions("a = [0,1]\na = [0,2]\n"), parse_error);
  EXPECT_THROW(parse_definitions("x = [0,1]\n"), parse_error);
  EXPECT_THROW(parse_definitions("scale = [0,1]\n"), parse_error);
  try {
    parse_definitions("a = [0,1]\nbad = [0,\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_EQ(e.offset(), 19u);
  }
  try {
    parse_definitions("a [0,1]\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_EQ(e.expected(), "\"=\"");
  }
}

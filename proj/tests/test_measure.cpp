#include <doctest.h>

#include <cmath>

#include "olspace/measure.hpp"
#include "olspace/sampling.hpp"

using namespace olspace;

namespace {

StepFunction demo_f() {
  // 1 on [0,1) u [5,6), 3 on [2,4)
  return StepFunction({{1.0, IntervalSet(std::vector<Interval>{{0, 1}, {5, 6}})},
                       {3.0, IntervalSet::single(2, 4)}});
}

}  // namespace

TEST_CASE("interval set merges touching parts and keeps measure") {
  IntervalSet s(std::vector<Interval>{{0, 1}, {1, 2}, {3, 4}});
  CHECK(s.parts().size() == 2);
  CHECK(s.measure() == doctest::Approx(3.0));
  CHECK_THROWS_AS(IntervalSet(std::vector<Interval>{{2, 2}}), invalid_input);
  CHECK_THROWS_AS(IntervalSet(std::vector<Interval>{{-1, 2}}), invalid_input);
}

TEST_CASE("infinite interval sets are domain descriptors") {
  IntervalSet s = IntervalSet::single(0.0, kInf);
  CHECK(!s.finite());
  CHECK(std::isinf(s.measure()));
  CHECK_THROWS_AS(StepFunction({{1.0, s}}), invalid_input);
}

TEST_CASE("distribution function on the worked example") {
  StepFunction f = demo_f();
  CHECK(distribution(f, 0.5) == doctest::Approx(4.0));
  CHECK(distribution(f, 2.0) == doctest::Approx(2.0));
  CHECK(distribution(f, 3.0) == 0.0);  // strict inequality
  CHECK(distribution(f, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("rearrangement sorts and cumulates") {
  DecreasingStep d = rearrange(demo_f());
  REQUIRE(d.values.size() == 2);
  CHECK(d.values[0] == 3.0);
  CHECK(d.values[1] == 1.0);
  CHECK(d.breakpoints[0] == doctest::Approx(2.0));
  CHECK(d.breakpoints[1] == doctest::Approx(4.0));

  // translation invariance
  StepFunction g({{2.0, IntervalSet::single(7, 10)}});
  DecreasingStep dg = rearrange(g);
  CHECK(dg.values[0] == 2.0);
  CHECK(dg.breakpoints[0] == doctest::Approx(3.0));
}

TEST_CASE("rearrangement is idempotent structurally") {
  StepFunction f = demo_f();
  StepFunction once = rearrange(f).as_step();
  DecreasingStep d1 = rearrange(once);
  DecreasingStep d2 = rearrange(d1.as_step());
  REQUIRE(d1.values == d2.values);
  REQUIRE(d1.breakpoints == d2.breakpoints);
}

TEST_CASE("equimeasurability") {
  StepFunction f = demo_f();
  CHECK(equimeasurable_check(f, rearrange(f).as_step()));
  StepFunction a({{1.0, IntervalSet::single(0, 1)}});
  StepFunction b({{1.0, IntervalSet::single(3, 4)}});
  StepFunction c({{2.0, IntervalSet::single(0, 1)}});
  CHECK(equimeasurable_check(a, b));
  CHECK(!equimeasurable_check(a, c));
}

TEST_CASE("1000 random dyadic step functions: exact equimeasurability and idempotence") {
  StepSampler sampler(kDefaultSeed, 1.0);
  for (int i = 0; i < 1000; ++i) {
    StepFunction f = sampler.sample_dyadic(i);
    StepFunction fstar = rearrange(f).as_step();
    CHECK(equimeasurable_check(f, fstar));
    DecreasingStep d1 = rearrange(f);
    DecreasingStep d2 = rearrange(fstar);
    CHECK(d1.values == d2.values);
    CHECK(d1.breakpoints == d2.breakpoints);
    // support measure = d_f(0+) = last breakpoint
    CHECK(distribution(f, 0.0) == d1.breakpoints.back());
    CHECK(f.support_measure() == d1.breakpoints.back());
  }
}

TEST_CASE("dilate maps supports affinely") {
  StepFunction f({{1.0, IntervalSet::single(0, 1)}});
  StepFunction id = dilate(f, 0.0, 1.0);
  CHECK(id.pieces()[0].support.parts()[0].lo == 0.0);
  CHECK(id.pieces()[0].support.parts()[0].hi == 1.0);

  StepFunction g({{2.0, IntervalSet::single(0, 0.5)}});
  StepFunction gd = dilate(g, 0.5, 0.5);
  CHECK(gd.pieces()[0].value == 2.0);
  CHECK(gd.pieces()[0].support.parts()[0].lo == doctest::Approx(0.5));
  CHECK(gd.pieces()[0].support.parts()[0].hi == doctest::Approx(0.75));

  StepFunction h = dilate(f, 0.25, 0.5);
  CHECK(h.pieces()[0].support.parts()[0].lo == doctest::Approx(0.25));
  CHECK(h.pieces()[0].support.parts()[0].hi == doctest::Approx(0.75));

  StepFunction outside({{1.0, IntervalSet::single(1.5, 2.0)}});
  CHECK_THROWS_AS(dilate(outside, 0.0, 0.5), invalid_input);
  CHECK_THROWS_AS(dilate(f, 1.0, 0.5), invalid_input);
  CHECK_THROWS_AS(dilate(f, 0.5, 0.75), invalid_input);
}

TEST_CASE("dilate scales measures by b and preserves values") {
  StepSampler sampler(7, 1.0);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = sampler.sample(i);
    double b = 0.25 + 0.5 * (i % 3) / 3.0;
    double a = 0.1;
    StepFunction g = dilate(f, a, b);
    CHECK(g.support_measure() == doctest::Approx(b * f.support_measure()).epsilon(1e-12));
    REQUIRE(g.pieces().size() == f.pieces().size());
    for (std::size_t j = 0; j < f.pieces().size(); ++j)
      CHECK(g.pieces()[j].value == f.pieces()[j].value);
  }
}

TEST_CASE("step_add refines overlapping supports") {
  StepFunction f({{1.0, IntervalSet::single(0, 2)}});
  StepFunction g({{2.0, IntervalSet::single(1, 3)}});
  StepFunction s = step_add(f, g);
  CHECK(distribution(s, 0.5) == doctest::Approx(3.0));
  CHECK(distribution(s, 1.5) == doctest::Approx(2.0));
  CHECK(distribution(s, 2.5) == doctest::Approx(1.0));  // value 3 on [1,2)
  CHECK(distribution(s, 3.0) == 0.0);
}

TEST_CASE("overlapping piece supports are rejected") {
  CHECK_THROWS_AS(StepFunction({{1.0, IntervalSet::single(0, 2)},
                                {2.0, IntervalSet::single(1, 3)}}),
                  invalid_input);
}

TEST_CASE("equal-value pieces merge at construction") {
  StepFunction f({{1.0, IntervalSet::single(0, 1)}, {1.0, IntervalSet::single(2, 3)}});
  CHECK(f.pieces().size() == 1);
  CHECK(f.pieces()[0].support.measure() == doctest::Approx(2.0));
}

TEST_CASE("carve walks interval sets left to right") {
  IntervalSet E(std::vector<Interval>{{0, 1}, {2, 3}});
  auto cut = carve(E, {0.5, 0.75, 0.25});
  CHECK(cut[0].measure() == doctest::Approx(0.5));
  CHECK(cut[1].measure() == doctest::Approx(0.75));
  CHECK(cut[1].parts().size() == 2);  // spans the gap
  CHECK(cut[2].measure() == doctest::Approx(0.25));
  CHECK_THROWS_AS(carve(E, {3.0}), invalid_input);
}

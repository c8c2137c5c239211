#include <doctest.h>

#include <cmath>

#include "olspace/sampling.hpp"
#include "olspace/space.hpp"

using namespace olspace;

namespace {

StepFunction demo_f() {
  return StepFunction({{1.0, IntervalSet(std::vector<Interval>{{0, 1}, {5, 6}})},
                       {3.0, IntervalSet::single(2, 4)}});
}

SpaceSpec lp(double p) { return SpaceSpec{kInf, OrliczFn::power(p), WeightFn::constant(1)}; }

double lp_norm(const StepFunction& f, double p) {
  DecreasingStep d = rearrange(f);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    acc += std::pow(d.values[j], p) * (d.breakpoints[j] - prev);
    prev = d.breakpoints[j];
  }
  return std::pow(acc, 1.0 / p);
}

double lorentz_norm(const StepFunction& f, double p, const WeightFn& w) {
  DecreasingStep d = rearrange(f);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    acc += std::pow(d.values[j], p) * (w.big_w(d.breakpoints[j]) - w.big_w(prev));
    prev = d.breakpoints[j];
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace

TEST_CASE("modular worked examples") {
  SpaceSpec s2 = lp(2);
  CHECK(modular(s2, demo_f()) == doctest::Approx(20.0));

  SpaceSpec s2w{kInf, OrliczFn::power(2), WeightFn::power(0.5)};
  CHECK(modular(s2w, demo_f()) == doctest::Approx(16.0 * std::sqrt(2.0) + 4.0));

  CHECK(modular(s2, StepFunction()) == 0.0);
  CHECK(std::isinf(modular({kInf, OrliczFn::exp_minus_one(), WeightFn::constant(1)},
                           StepFunction({{800.0, IntervalSet::single(0, 1)}}))));
}

TEST_CASE("supports beyond gamma are rejected") {
  SpaceSpec s{1.0, OrliczFn::power(2), WeightFn::constant(1)};
  CHECK_THROWS_AS(modular(s, demo_f()), invalid_input);
  // measure exactly gamma is fine
  CHECK(modular(s, StepFunction({{1.0, IntervalSet::single(0, 1)}})) == doctest::Approx(1.0));
}

TEST_CASE("luxemburg norm closed forms") {
  SpaceSpec s2 = lp(2);
  StepFunction f({{2.0, IntervalSet::single(0, 3)}});
  NormResult r = luxemburg_norm(s2, f);
  CHECK(r.value == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-10));
  CHECK(r.modular_at_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.hi - r.lo <= 1e-12 * r.value);

  // norm of the zero function is 0 by convention
  NormResult z = luxemburg_norm(s2, StepFunction());
  CHECK(z.value == 0.0);
  CHECK(z.iterations == 0);

  // p = 1 is the weighted Lorentz norm: integral of f* against w
  SpaceSpec s1w{kInf, OrliczFn::power(1), WeightFn::power(0.5)};
  StepFunction g = demo_f();
  DecreasingStep d = rearrange(g);
  double expect = 0.0, prev = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    expect += d.values[j] * (s1w.weight.big_w(d.breakpoints[j]) - s1w.weight.big_w(prev));
    prev = d.breakpoints[j];
  }
  CHECK(luxemburg_norm(s1w, g).value == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("indicator identity phi(1/||chi||) = 1/W(t)") {
  SpaceSpec s2 = lp(2);
  StepFunction chi({{1.0, IntervalSet::single(0, 4)}});
  NormResult r = luxemburg_norm(s2, chi);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s2.phi.eval(1.0 / r.value) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("norm oracles over random samples") {
  StepSampler sampler(kDefaultSeed, 1.0);
  WeightFn w = WeightFn::power(0.5);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    SpaceSpec s = lp(p);
    SpaceSpec sw{kInf, OrliczFn::power(p), w};
    for (int i = 0; i < 40; ++i) {
      StepFunction f = sampler.sample(i);
      CHECK(luxemburg_norm(s, f).value ==
            doctest::Approx(lp_norm(f, p)).epsilon(1e-9));
      CHECK(luxemburg_norm(sw, f).value ==
            doctest::Approx(lorentz_norm(f, p, w)).epsilon(1e-9));
    }
  }
}

TEST_CASE("norm axioms on random samples") {
  StepSampler sampler(kDefaultSeed ^ 0x55, 1.0);
  SpaceSpec spec{kInf, OrliczFn::power_log(2, 1), WeightFn::power(0.7)};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> cdist(0.01, 100.0);
  for (int i = 0; i < 60; ++i) {
    StepFunction f = sampler.sample(3 * i);
    StepFunction g = sampler.sample(3 * i + 1);
    double nf = luxemburg_norm(spec, f).value;
    double ng = luxemburg_norm(spec, g).value;

    // homogeneity
    double c = cdist(rng);
    CHECK(luxemburg_norm(spec, f.scaled(c)).value == doctest::Approx(c * nf).epsilon(1e-10));

    // triangle
    double nsum = luxemburg_norm(spec, step_add(f, g)).value;
    CHECK(nsum <= (nf + ng) * (1 + 1e-9) + 1e-12);

    // lattice monotonicity with g = f + h >= f
    CHECK(nf <= luxemburg_norm(spec, step_add(f, g)).value + 1e-12);

    // rearrangement invariance
    StepFunction shuffled = sampler.equimeasurable_shuffle(f, i);
    CHECK(luxemburg_norm(spec, shuffled).value == doctest::Approx(nf).epsilon(1e-10));

    // unit-modular identity
    CHECK(luxemburg_norm(spec, f).modular_at_value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("layer-cake bound at the norm") {
  StepSampler sampler(kDefaultSeed ^ 0x99, 1.0);
  SpaceSpec spec{kInf, OrliczFn::power(2), WeightFn::power(0.5)};
  for (int i = 0; i < 100; ++i) {
    StepFunction f = sampler.sample(i);
    double n = luxemburg_norm(spec, f).value;
    // W(d_f(lambda^-)) phi(lambda/||f||) <= 1 at every piece value
    for (const Piece& p : f.pieces()) {
      double w_level = spec.weight.big_w(distribution(f, p.value * (1 - 1e-12)));
      CHECK(w_level * spec.phi.eval(p.value / n) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("orthogonal subadditivity") {
  SpaceSpec s2 = lp(2);
  StepFunction f({{1.0, IntervalSet::single(0, 1)}});
  StepFunction g({{1.0, IntervalSet::single(1, 2)}});
  OrthSubaddReport rep = orth_subadd_check(s2, f, g);
  CHECK(rep.ok);
  CHECK(rep.rho_sum == doctest::Approx(rep.rho_f + rep.rho_g));

  SpaceSpec s2w{kInf, OrliczFn::power(2), WeightFn::power(0.5)};
  StepFunction a({{3.0, IntervalSet::single(0, 1)}});
  StepFunction b({{1.0, IntervalSet::single(1, 2)}});
  OrthSubaddReport rep2 = orth_subadd_check(s2w, a, b);
  CHECK(rep2.ok);
  CHECK(rep2.rho_sum < rep2.rho_f + rep2.rho_g);  // strict for this pair

  OrthSubaddReport rep3 = orth_subadd_check(s2, f, StepFunction());
  CHECK(rep3.ok);
  CHECK(rep3.rho_sum == doctest::Approx(rep3.rho_f));

  StepFunction overlap({{2.0, IntervalSet::single(0.5, 1.5)}});
  CHECK_THROWS_AS(orth_subadd_check(s2, f, overlap), invalid_input);
}

TEST_CASE("order continuity probe on finite step functions") {
  SpaceSpec s2 = lp(2);
  OrderContinuityProbe probe =
      order_continuity_probe(s2, demo_f(), {0.5, 1.0, 10.0, 1000.0}, 1e12);
  CHECK(probe.kind == OrderContinuityProbe::Kind::AllScalesFinite);
  CHECK(probe.modulars.size() == 4);

  OrderContinuityProbe empty = order_continuity_probe(s2, demo_f(), {}, 1e3);
  CHECK(empty.kind == OrderContinuityProbe::Kind::AllScalesFinite);

  // crossing the threshold classifies as divergence at the offending scale
  SpaceSpec se{kInf, OrliczFn::exp_minus_one(), WeightFn::constant(1)};
  StepFunction big({{5.0, IntervalSet::single(0, 1)}});
  OrderContinuityProbe diverge = order_continuity_probe(se, big, {1.0, 2.0}, 1e3);
  CHECK(diverge.kind == OrderContinuityProbe::Kind::DivergesAtScale);
  CHECK(diverge.scale == 2.0);
}

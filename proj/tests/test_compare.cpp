#include <doctest.h>

#include <cmath>

#include "olspace/compare.hpp"
#include "olspace/json_io.hpp"

using namespace olspace;

TEST_CASE("weight inclusion: dominated pair passes the sampled norm bound") {
  InclusionReport rep = inclusion_weight_check(OrliczFn::power(2), WeightFn::power(0.5),
                                               WeightFn::constant(1), 1.0, 50);
  CHECK(rep.verdict.status == VerdictStatus::Holds);
  CHECK(rep.constant_used == doctest::Approx(1.0));  // max(K, 1) with K ~ 1/2
  CHECK(rep.violations == 0);
  CHECK(rep.samples.size() == 50);
}

TEST_CASE("weight inclusion: reverse direction fails with indicator blowup") {
  InclusionReport rep = inclusion_weight_check(OrliczFn::power(2), WeightFn::constant(1),
                                               WeightFn::power(0.5), 1.0, 10);
  CHECK(rep.verdict.status == VerdictStatus::Fails);
  REQUIRE(rep.blowup.size() > 3);
  // ratio ||chi||_{w2} / ||chi||_{w1} grows without bound as t -> 0
  CHECK(rep.blowup.front()[3] < rep.blowup.back()[3]);
  CHECK(rep.blowup.back()[3] > 10.0);
}

TEST_CASE("weight inclusion: identical weights give K = 1 and zero violations") {
  InclusionReport rep = inclusion_weight_check(OrliczFn::power(1.5), WeightFn::constant(1),
                                               WeightFn::constant(1), 1.0, 30);
  CHECK(rep.verdict.status == VerdictStatus::Holds);
  CHECK(rep.constant_used == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(rep.violations == 0);
}

TEST_CASE("orlicz inclusion: at-infinity pair with per-sample constant") {
  InclusionReport rep = inclusion_orlicz_check(OrliczFn::power(2), OrliczFn::power(3),
                                               WeightFn::constant(1), 1.0, 50);
  CHECK(rep.verdict.status == VerdictStatus::Holds);
  CHECK(rep.violations == 0);
}

TEST_CASE("orlicz inclusion: identical functions give equal norms") {
  InclusionReport rep = inclusion_orlicz_check(OrliczFn::power(2), OrliczFn::power(2),
                                               WeightFn::power(0.5), kInf, 30);
  CHECK(rep.verdict.status == VerdictStatus::Holds);
  CHECK(rep.violations == 0);
  for (const SampleRow& row : rep.samples)
    CHECK(row.norm_target == doctest::Approx(row.norm_source).epsilon(1e-9));
}

TEST_CASE("orlicz inclusion: exp vs power fails the order check") {
  InclusionReport rep = inclusion_orlicz_check(OrliczFn::exp_minus_one(), OrliczFn::power(2),
                                               WeightFn::constant(1), 1.0, 5);
  CHECK(rep.verdict.status == VerdictStatus::Fails);
  CHECK(rep.samples.empty());
}

TEST_CASE("dss verdicts") {
  DssVerdict v = dss_check(OrliczFn::power(2), WeightFn::power(0.5), WeightFn::constant(1));
  CHECK(v.status == DssStatus::Dss);
  CHECK(v.hypothesis_ok);

  v = dss_check(OrliczFn::power(2), WeightFn::constant(1), WeightFn::constant(1));
  CHECK(v.status == DssStatus::NotDss);
  CHECK(v.c == doctest::Approx(1.0));

  v = dss_check(OrliczFn::power(2), WeightFn::constant(1), WeightFn::constant(2));
  CHECK(v.status == DssStatus::NotDss);
  CHECK(v.c == doctest::Approx(2.0));
}

TEST_CASE("dss counterexample sequence") {
  DssCounterexample c =
      dss_counterexample_sequence(OrliczFn::power(2), WeightFn::constant(1),
                                  WeightFn::power(0.5), 5, 1.0);
  CHECK(c.sizes.size() == 5);
  CHECK(c.violations == 0);
  CHECK(c.k_used >= 1.0);
  for (std::size_t i = 0; i < c.sizes.size(); ++i)
    CHECK(c.norms_w1[i] <= c.k_used * c.norms_w2[i] * (1 + 1e-8));

  // equal weights: equal norms, K = 1 + epsilon
  DssCounterexample eq = dss_counterexample_sequence(OrliczFn::power(2), WeightFn::constant(1),
                                                     WeightFn::constant(1), 5, 1.0);
  CHECK(eq.violations == 0);
  for (std::size_t i = 0; i < eq.sizes.size(); ++i)
    CHECK(eq.norms_w1[i] == doctest::Approx(eq.norms_w2[i]).epsilon(1e-9));

  CHECK_THROWS_AS(dss_counterexample_sequence(OrliczFn::power(2), WeightFn::power(0.5),
                                              WeightFn::constant(1), 5, 1.0),
                  invalid_input);
}

TEST_CASE("dominating weight closed forms") {
  // phi = u, w = 1, f = chi_[0,1): H(t) = t, integral of t^-1/2 over [0,1] = 2
  DominatingWeightResult r = dominating_weight(
      OrliczFn::power(1), WeightFn::constant(1),
      StepFunction({{1.0, IntervalSet::single(0, 1)}}), 1.0);
  CHECK(r.h_end == doctest::Approx(1.0));
  CHECK(r.modular_in_v == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.closed_form == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.ratio.kind == RatioVerdict::Kind::LimitZero);

  // phi = u^2, f = 2 chi_[0,1): H(t) = 4t, modular = 2 sqrt 4 = 4
  DominatingWeightResult r2 = dominating_weight(
      OrliczFn::power(2), WeightFn::constant(1),
      StepFunction({{2.0, IntervalSet::single(0, 1)}}), 1.0);
  CHECK(r2.modular_in_v == doctest::Approx(4.0).epsilon(1e-10));

  CHECK_THROWS_AS(dominating_weight(OrliczFn::power(1), WeightFn::constant(1), StepFunction(),
                                    1.0),
                  zero_function);
}

TEST_CASE("dominating weight ratio decays below sqrt(H)") {
  StepSampler sampler(kDefaultSeed ^ 0x31, 1.0);
  for (int i = 0; i < 10; ++i) {
    StepFunction f = sampler.sample(i);
    DominatingWeightResult r =
        dominating_weight(OrliczFn::power(2), WeightFn::power(0.8), f, 1.0);
    CHECK(r.modular_in_v == doctest::Approx(r.closed_form).epsilon(1e-8));
    // last 10 sampled decades decrease monotonically
    const auto& s = r.ratio.samples;
    for (std::size_t j = s.size() - 33; j + 1 < s.size(); ++j)
      CHECK(s[j + 1].second <= s[j].second * (1 + 1e-12));
  }
}

TEST_CASE("non-inclusion witness certificates") {
  WitnessBundle b = non_inclusion_witness(OrliczFn::exp_minus_one(), OrliczFn::power(2),
                                          WeightFn::constant(1), 1.0, 20, {1.0});
  REQUIRE(b.finite.size() == 1);
  CHECK(b.finite[0].value < 1.0);  // rho_{phi2}(f) < sum 2^-n < 1
  REQUIRE(b.divergent.size() == 1);
  CHECK(b.divergent[0].partial_sum >= 20 - 2);  // >= N - ceil(1/eps) - 1
  for (double t : b.divergent[0].terms) CHECK(t >= 1.0 - 1e-9);
  CHECK(verify_bundle(b).ok);

  WitnessBundle empty = non_inclusion_witness(OrliczFn::exp_minus_one(), OrliczFn::power(2),
                                              WeightFn::constant(1), 1.0, 0, {1.0});
  CHECK(empty.families.empty());
  CHECK(empty.finite.empty());
}

TEST_CASE("union closure through the norm inequality chain") {
  // with phi2 < phi1 the larger space absorbs sums: for random disjoint-ish
  // pairs the chain norm ||f+g||_{phi2,w} <= b (1+eps) ||f+g||_{phi1,w} holds
  OrliczFn phi1 = OrliczFn::power(3);
  OrliczFn phi2 = OrliczFn::power_log(2, 1);  // phi2 < phi1 globally with b = 1
  ConditionVerdict order = order_check(phi2, phi1, OrderRegime::Global);
  REQUIRE(order.status == VerdictStatus::Holds);
  double b = order.constants.at("b");
  WeightFn w = WeightFn::power(0.8);
  SpaceSpec s1{kInf, phi1, w};
  SpaceSpec s2{kInf, phi2, w};
  StepSampler sampler(kDefaultSeed ^ 0x77, 1.0);
  for (int i = 0; i < 25; ++i) {
    StepFunction sum = step_add(sampler.sample(2 * i), sampler.sample(2 * i + 1));
    double big = luxemburg_norm(s1, sum).value;
    double small = luxemburg_norm(s2, sum).value;
    CHECK(small <= b * big * (1 + 1e-8));
  }
}

TEST_CASE("shorthand generator specs") {
  CHECK(io::parse_orlicz_spec("power:2").family() == OrliczFn::Family::Power);
  CHECK(io::parse_orlicz_spec("powerlog:2,1").q() == 1.0);
  CHECK(io::parse_orlicz_spec("expm1").family() == OrliczFn::Family::ExpMinusOne);
  CHECK(io::parse_orlicz_spec("u^2").family() == OrliczFn::Family::Parsed);
  CHECK(io::parse_orlicz_spec(R"({"family":"power","p":3.0})").p() == 3.0);
  CHECK(io::parse_weight_spec("const:2").c() == 2.0);
  CHECK(io::parse_weight_spec("power:0.5").alpha() == 0.5);
  CHECK(io::parse_weight_spec("pcd:0.5,1:4,2,1").values().size() == 3);
  CHECK(io::parse_weight_spec("1/(1+t)").family() == WeightFn::Family::Parsed);
}

TEST_CASE("generator JSON round trips") {
  for (const OrliczFn& phi :
       {OrliczFn::power(2.5), OrliczFn::power_log(2, 1), OrliczFn::exp_minus_one(),
        OrliczFn::parsed("u^2*log(1+u)"), OrliczFn::spline({0, 1, 2}, {1.0, 3.0})}) {
    OrliczFn back = io::orlicz_from_json(io::to_json(phi));
    CHECK(back.family() == phi.family());
    for (double u : {0.5, 1.0, 7.0}) CHECK(back.eval(u) == phi.eval(u));
  }
  for (const WeightFn& w : {WeightFn::constant(2), WeightFn::power(0.6),
                            WeightFn::pcd({1.0}, {2.0, 1.0}), WeightFn::parsed("1/(1+t)")}) {
    WeightFn back = io::weight_from_json(io::to_json(w));
    for (double t : {0.5, 1.0, 7.0}) CHECK(back.big_w(t) == doctest::Approx(w.big_w(t)));
  }
  StepFunction f({{1.0, IntervalSet(std::vector<Interval>{{0, 1}, {5, 6}})},
                  {3.0, IntervalSet::single(2, 4)}});
  StepFunction back = io::step_from_json(io::to_json(f));
  CHECK(equimeasurable_check(f, back));
  CHECK(back.pieces().size() == f.pieces().size());
}

TEST_CASE("reports serialize to JSON") {
  InclusionReport rep = inclusion_weight_check(OrliczFn::power(2), WeightFn::power(0.5),
                                               WeightFn::constant(1), 1.0, 5);
  io::json j = io::to_json(rep);
  CHECK(j.at("violations").get<int>() == 0);
  CHECK(j.at("samples").size() == 5);
  std::string text = io::dump12(j);
  CHECK(text.find("\"condition\"") != std::string::npos);
}

#include <doctest.h>

#include <cmath>

#include "olspace/orlicz.hpp"

using namespace olspace;

namespace {

// convex piecewise-linear function whose unit steps multiply values by
// ratio^k: genuinely fails Delta_2 at infinity (the slope pattern continues
// geometrically past the last knot)
OrliczFn steep_spline(int knot_count = 42, double ratio = 2.2) {
  std::vector<double> knots{0.0}, slopes;
  std::vector<double> vals{0.0, 1.0};
  for (int k = 1; k < knot_count; ++k) vals.push_back(vals.back() * std::pow(ratio, k));
  for (int k = 1; k <= knot_count; ++k) knots.push_back(k);
  for (int k = 0; k < knot_count; ++k) slopes.push_back(vals[k + 1] - vals[k]);
  return OrliczFn::spline(knots, slopes);
}

}  // namespace

TEST_CASE("pointwise evaluation") {
  CHECK(OrliczFn::power(2).eval(3.0) == doctest::Approx(9.0));
  CHECK(OrliczFn::power(2).eval(0.0) == 0.0);
  CHECK(OrliczFn::exp_minus_one().eval(0.0) == 0.0);
  CHECK(OrliczFn::exp_minus_one().eval(1.0) == doctest::Approx(1.718281828).epsilon(1e-9));
  CHECK(std::isinf(OrliczFn::exp_minus_one().eval(1000.0)));  // +inf sentinel
  CHECK(OrliczFn::power_log(2, 1).eval(1.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("log_eval is stable where eval overflows") {
  OrliczFn e = OrliczFn::exp_minus_one();
  CHECK(e.log_eval(1000.0) == doctest::Approx(1000.0));
  CHECK(OrliczFn::power(3).log_eval(1e100) == doctest::Approx(300.0 * std::log(10.0)));
  OrliczFn s = steep_spline();
  CHECK(std::isfinite(s.log_eval(1e8)));
  CHECK(s.log_eval(1e8) > s.log_eval(1e7));
}

TEST_CASE("inverse") {
  CHECK(OrliczFn::power(2).inverse(9.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(OrliczFn::exp_minus_one().inverse(std::expm1(2.5)) ==
        doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("validation") {
  CHECK(validate(OrliczFn::power(2)).ok);
  CHECK(validate(OrliczFn::power_log(1, 2)).ok);
  CHECK(validate(OrliczFn::exp_minus_one()).ok);
  CHECK(validate(steep_spline()).ok);

  // concave parsed expression flagged at the midpoint test
  ValidationReport rep = validate(OrliczFn::parsed("u^0.5"));
  CHECK(!rep.ok);
  bool convexity = false;
  for (const auto& issue : rep.issues) convexity |= issue.kind == "convexity";
  CHECK(convexity);

  // decreasing slopes rejected at construction
  CHECK_THROWS_AS(OrliczFn::spline({0, 1, 2}, {2.0, 1.0}), invalid_input);
}

TEST_CASE("delta2 verdicts") {
  ConditionVerdict v = delta2_check(OrliczFn::power(2), Regime::Global);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.constants.at("K") == doctest::Approx(4.0).epsilon(1e-6));

  v = delta2_check(OrliczFn::power(1), Regime::Global);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.constants.at("K") == doctest::Approx(2.0).epsilon(1e-6));

  v = delta2_check(OrliczFn::exp_minus_one(), Regime::Infinity);
  CHECK(v.status == VerdictStatus::Fails);
  REQUIRE(!v.witness.empty());
  // ratio e^u + 1 crosses 1e6 near u = 13.8
  CHECK(v.witness[0] > 10.0);
  CHECK(v.witness[0] < 20.0);

  v = delta2_check(OrliczFn::exp_minus_one(), Regime::Zero);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.constants.at("K") > 2.0);
  CHECK(v.constants.at("K") < 4.0);

  CHECK(delta2_check(steep_spline(), Regime::Infinity).status == VerdictStatus::Fails);
  CHECK(delta2_check(steep_spline(), Regime::Zero).status == VerdictStatus::Holds);
}

TEST_CASE("delta2 via the (l, K) reformulation agrees") {
  for (Regime r : {Regime::Global, Regime::Infinity, Regime::Zero}) {
    CHECK(delta2_lk_check(OrliczFn::power(3), r).status == VerdictStatus::Holds);
  }
  ConditionVerdict v = delta2_lk_check(OrliczFn::power(3), Regime::Global);
  CHECK(v.constants.at("l") == doctest::Approx(1.1));
  CHECK(delta2_lk_check(OrliczFn::power(1), Regime::Global).status == VerdictStatus::Holds);
  CHECK(delta2_lk_check(OrliczFn::exp_minus_one(), Regime::Infinity).status ==
        VerdictStatus::Fails);
}

TEST_CASE("order_check") {
  ConditionVerdict v = order_check(OrliczFn::power(2), OrliczFn::power(2), OrderRegime::Global);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.constants.at("b") <= 1.0);
  CHECK(v.constants.at("u0") == 0.0);

  v = order_check(OrliczFn::power(2), OrliczFn::power(3), OrderRegime::AtInfinity);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.constants.at("u0") <= 10.0);  // onset reported within a decade of 1

  v = order_check(OrliczFn::power(3), OrliczFn::power(2), OrderRegime::Global);
  CHECK(v.status == VerdictStatus::Fails);
  CHECK(!v.witness.empty());

  // exp beats powers eventually but not globally without b adjustment
  v = order_check(OrliczFn::exp_minus_one(), OrliczFn::power(2), OrderRegime::AtInfinity);
  CHECK(v.status == VerdictStatus::Fails);

  v = order_check(OrliczFn::power_log(2, 1), OrliczFn::power(3), OrderRegime::Global);
  CHECK(v.status == VerdictStatus::Holds);
}

TEST_CASE("delta_phi_check") {
  ConditionVerdict v =
      delta_phi_check(OrliczFn::power(2), OrliczFn::power(3), Regime::Infinity);
  CHECK(v.status == VerdictStatus::Holds);

  // power targets: the zero condition holds iff q < p
  CHECK(delta_phi_check(OrliczFn::power(2), OrliczFn::power(1), Regime::Zero).status ==
        VerdictStatus::Holds);
  CHECK(delta_phi_check(OrliczFn::power(2), OrliczFn::power(1.5), Regime::Zero).status ==
        VerdictStatus::Holds);
  CHECK(delta_phi_check(OrliczFn::power(2), OrliczFn::power(2.5), Regime::Zero).status ==
        VerdictStatus::Fails);
  CHECK(delta_phi_check(OrliczFn::power(2), OrliczFn::power(2), Regime::Infinity).status ==
        VerdictStatus::Fails);
  CHECK(delta_phi_check(OrliczFn::power(2), OrliczFn::exp_minus_one(), Regime::Infinity)
            .status == VerdictStatus::Holds);
}

TEST_CASE("delta_phi implies the at-infinity order") {
  struct Pair {
    OrliczFn phi, psi;
  };
  Pair pairs[] = {{OrliczFn::power(2), OrliczFn::power(3)},
                  {OrliczFn::power(1), OrliczFn::power(2.5)},
                  {OrliczFn::power(2), OrliczFn::exp_minus_one()}};
  for (const Pair& p : pairs) {
    REQUIRE(delta_phi_check(p.phi, p.psi, Regime::Infinity).status == VerdictStatus::Holds);
    CHECK(order_check(p.phi, p.psi, OrderRegime::AtInfinity).status == VerdictStatus::Holds);
  }
}

TEST_CASE("holds-verdict constants survive a refined grid") {
  Grid fine = Grid{}.refined();
  ConditionVerdict v = delta2_check(OrliczFn::power(2), Regime::Global);
  double K = v.constants.at("K");
  for (double u : fine.nodes()) {
    OrliczFn phi = OrliczFn::power(2);
    CHECK(phi.log_eval(2 * u) <= std::log(K) + phi.log_eval(u) + 1e-9);
  }
}

TEST_CASE("delta_phi(inf) sequences") {
  OrliczFn phi = OrliczFn::power(2);
  IneqSequence s = find_delta_infty_sequence(phi, OrliczFn::power(4), 12);
  REQUIRE(s.values.size() == 12);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    // closed form: u_k = 2^{k/2} k^2 solves u^4 = 2^k k^4 u^2
    CHECK(s.values[i] >= std::pow(2.0, k / 2.0) * k * k * (1 - 1e-9));
    CHECK(s.residuals[i] >= -1e-12);
    if (i > 0) CHECK(s.values[i] > s.values[i - 1]);
  }
  IneqSequence lin = find_delta_infty_sequence(OrliczFn::power(1), OrliczFn::power(2), 8);
  for (std::size_t i = 0; i < lin.values.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    CHECK(lin.values[i] >= std::pow(2.0, k) * k * k * (1 - 1e-9));
  }
  CHECK(find_delta_infty_sequence(phi, OrliczFn::power(4), 0).values.empty());

  // re-verification from scratch
  OrliczFn target = OrliczFn::power(4);
  for (double r : reverify_sequence(s, phi, &target)) CHECK(r >= -1e-12);
}

TEST_CASE("delta_phi(0) sequences") {
  OrliczFn phi = OrliczFn::power(2);
  IneqSequence s = find_delta_zero_sequence(phi, OrliczFn::power(1), 12);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    // u/k >= 2^k k^2 u^2 forces u <= 2^-k k^-3
    CHECK(s.values[i] <= std::pow(2.0, -k) * std::pow(double(k), -3.0) * (1 + 1e-9));
    if (i > 0) CHECK(s.values[i] < s.values[i - 1]);
  }
  IneqSequence t = find_delta_zero_sequence(OrliczFn::power(3), OrliczFn::power(2), 8);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    CHECK(t.values[i] <=
          1.0 / (std::pow(2.0, k) * std::pow(double(k), 5.0)) * (1 + 1e-9));
  }
  CHECK(find_delta_zero_sequence(phi, OrliczFn::power(1), 0).values.empty());
  OrliczFn target = OrliczFn::power(1);
  for (double r : reverify_sequence(s, phi, &target)) CHECK(r >= -1e-12);
}

TEST_CASE("non-delta2 sequences") {
  IneqSequence s = find_non_delta2_sequence(OrliczFn::exp_minus_one(), 10);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    CHECK(s.residuals[i] > 0.0);  // strict
    if (i > 0) CHECK(s.values[i] > s.values[i - 1]);
  }
  // single-term case: any u_1 >= 1 satisfies e^{2u}-1 > 2(e^u-1)
  IneqSequence one = find_non_delta2_sequence(OrliczFn::exp_minus_one(), 1);
  CHECK(one.values.size() == 1);
  double u1 = one.values[0];
  CHECK(std::expm1(2 * u1) > 2 * std::expm1(u1));

  CHECK_THROWS_AS(find_non_delta2_sequence(OrliczFn::power(2), 5), search_exhausted);

  for (double r : reverify_sequence(s, OrliczFn::exp_minus_one(), nullptr)) CHECK(r > 0.0);
}

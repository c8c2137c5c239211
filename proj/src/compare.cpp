#include "olspace/compare.hpp"

#include <algorithm>
#include <cmath>

namespace olspace {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double indicator_norm_closed_form(const OrliczFn& phi, const WeightFn& w, double t) {
  // ||chi_{[0,t)}||_{phi,w} = 1 / phi^{-1}(1/W(t))
  return 1.0 / phi.inverse(1.0 / w.big_w(t));
}

double clamp_exp(double log_value) {
  if (std::isinf(log_value) && log_value > 0) return 1e300;
  return std::min(std::exp(std::min(log_value, 691.0)), 1e300);
}

}  // namespace

InclusionReport inclusion_weight_check(const OrliczFn& phi, const WeightFn& w1, const WeightFn& w2,
                                       double gamma, int n_samples, std::uint64_t seed) {
  InclusionReport rep;
  rep.direction = "Lambda(phi," + w1.describe() + ") -> Lambda(phi," + w2.describe() + ")";
  Regime reg = std::isinf(gamma) ? Regime::Global : Regime::Infinity;
  ConditionVerdict hyp = delta2_check(phi, reg);
  rep.verdict = dominance_check(w1, w2, std::isinf(gamma) ? 1e8 : gamma);
  if (hyp.status != VerdictStatus::Holds)
    rep.verdict.grid += " [warning: Delta_2 hypothesis on phi not grid-certified]";

  if (rep.verdict.status == VerdictStatus::Holds) {
    double K = rep.verdict.constants.at("K");
    rep.constant_used = std::max(K, 1.0);  // the embedding proof normalizes K above 1
    SpaceSpec s1{gamma, phi, w1};
    SpaceSpec s2{gamma, phi, w2};
    StepSampler sampler(seed, gamma);
    for (int i = 0; i < n_samples; ++i) {
      StepFunction f = sampler.sample(static_cast<std::uint64_t>(i));
      SampleRow row;
      row.norm_source = luxemburg_norm(s1, f).value;
      row.norm_target = luxemburg_norm(s2, f).value;
      row.bound = rep.constant_used * row.norm_source * (1.0 + 1e-8);
      row.violation = row.norm_target > row.bound;
      if (row.violation) ++rep.violations;
      rep.samples.push_back(row);
    }
  } else {
    // norm-ratio blowup along scaled indicators via the closed-form identity
    for (int j = 2; j <= 40; j += 2) {
      double t = std::ldexp(1.0, -j);
      if (t >= gamma) continue;
      double n1 = indicator_norm_closed_form(phi, w1, t);
      double n2 = indicator_norm_closed_form(phi, w2, t);
      rep.blowup.push_back({t, n1, n2, n2 / n1});
    }
  }
  return rep;
}

InclusionReport inclusion_orlicz_check(const OrliczFn& phi1, const OrliczFn& phi2,
                                       const WeightFn& w, double gamma, int n_samples,
                                       std::uint64_t seed) {
  InclusionReport rep;
  rep.direction =
      "Lambda(" + phi2.describe() + ",w) -> Lambda(" + phi1.describe() + ",w)";
  bool global = std::isinf(gamma);
  rep.verdict = order_check(phi1, phi2, global ? OrderRegime::Global : OrderRegime::AtInfinity);
  if (rep.verdict.status == VerdictStatus::Holds) {
    double b = rep.verdict.constants.at("b");
    double u0 = rep.verdict.constants.at("u0");
    rep.constant_used = b;
    SpaceSpec s1{gamma, phi1, w};
    SpaceSpec s2{gamma, phi2, w};
    StepSampler sampler(seed, gamma);
    for (int i = 0; i < n_samples; ++i) {
      StepFunction f = sampler.sample(static_cast<std::uint64_t>(i));
      SampleRow row;
      row.norm_source = luxemburg_norm(s2, f).value;  // source space Lambda_{phi2,w}
      row.norm_target = luxemburg_norm(s1, f).value;
      double constant = b;
      if (!global && u0 > 0.0) {
        // E = {t : f*(t) <= u0 b ||f||_2} = [gamma - m(E), gamma);
        // M = phi1(u0) (W(gamma) - W(gamma - m(E))) + 1
        double cross = distribution(f, u0 * b * row.norm_source);
        double M =
            phi1.eval(u0) * (w.big_w(gamma) - w.big_w(cross)) + 1.0;
        constant = M * b;
      }
      row.bound = constant * row.norm_source * (1.0 + 1e-8);
      row.violation = row.norm_target > row.bound;
      if (row.violation) ++rep.violations;
      rep.samples.push_back(row);
    }
  }
  return rep;
}

DssVerdict dss_check(const OrliczFn& phi, const WeightFn& w1, const WeightFn& w2) {
  DssVerdict v;
  v.hypothesis_ok = delta2_check(phi, Regime::Infinity).status == VerdictStatus::Holds;
  if (!v.hypothesis_ok) v.note = "Delta_2^inf hypothesis on phi not grid-certified";
  v.ratio = ratio_limit(w1, w2);
  switch (v.ratio.kind) {
    case RatioVerdict::Kind::LimitZero:
      v.status = DssStatus::Dss;
      break;
    case RatioVerdict::Kind::BoundedBelow:
      v.status = DssStatus::NotDss;
      v.c = v.ratio.c;
      break;
    case RatioVerdict::Kind::Inconclusive:
      v.status = DssStatus::Inconclusive;
      break;
  }
  return v;
}

DssCounterexample dss_counterexample_sequence(const OrliczFn& phi, const WeightFn& w1,
                                              const WeightFn& w2, int n, double t_budget) {
  RatioVerdict r = ratio_limit(w1, w2);
  if (r.kind == RatioVerdict::Kind::LimitZero)
    throw invalid_input("ratio limit is zero: no bounded-below counterexample exists");
  DssCounterexample out;
  // t_n = t_budget * 4^-n sum below the budget; K normalized above 1 as in
  // the indicator computation
  double sup_ratio = 0.0;
  for (int i = 1; i <= n; ++i) {
    double t = t_budget * std::pow(4.0, -i);
    out.sizes.push_back(t);
    sup_ratio = std::max(sup_ratio, w1.big_w(t) / w2.big_w(t));
  }
  out.k_used = std::max(1.0, sup_ratio) * (1.0 + 1e-9);
  SpaceSpec s1{1.0, phi, w1};
  SpaceSpec s2{1.0, phi, w2};
  double cursor = 0.0;
  for (int i = 0; i < n; ++i) {
    StepFunction f({Piece{1.0, IntervalSet::single(cursor, cursor + out.sizes[i])}});
    cursor += out.sizes[i] * (1.0 + 1e-6);
    double n1 = luxemburg_norm(s1, f).value;
    double n2 = luxemburg_norm(s2, f).value;
    out.norms_w1.push_back(n1);
    out.norms_w2.push_back(n2);
    if (n1 > out.k_used * n2 * (1.0 + 1e-8)) ++out.violations;
  }
  return out;
}

DominatingWeightResult dominating_weight(const OrliczFn& phi, const WeightFn& w,
                                         const StepFunction& f, double gamma) {
  if (f.zero()) throw zero_function("dominating_weight needs a nonzero f");
  (void)gamma;
  DominatingWeightResult out;
  DecreasingStep d = rearrange(f);
  out.support_measure = d.total_measure();

  // H(t) = int_0^t phi(f*) w, piecewise H = H_prev + phi(v_j)(W(t) - W(t_{j-1}))
  std::vector<double> phis(d.values.size());
  std::vector<double> H(d.values.size() + 1, 0.0);
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    phis[j] = phi.eval(d.values[j]);
    double W_lo = j == 0 ? 0.0 : w.big_w(d.breakpoints[j - 1]);
    H[j + 1] = H[j] + phis[j] * (w.big_w(d.breakpoints[j]) - W_lo);
  }
  out.h_end = H.back();
  out.h_at_breaks.assign(H.begin() + 1, H.end());
  out.closed_form = 2.0 * std::sqrt(out.h_end);

  // int phi(f*) g w with g = H^{-1/2}: each piece integrates H' H^{-1/2}
  // and telescopes to 2(sqrt H_j - sqrt H_{j-1})
  detail::Accumulator acc;
  for (std::size_t j = 0; j < d.values.size(); ++j)
    acc.add(2.0 * (std::sqrt(H[j + 1]) - std::sqrt(H[j])));
  out.modular_in_v = acc.total();

  // V(t) = int_0^t g w; within piece j: 2(sqrt H(t) - sqrt H_{j-1})/phi(v_j),
  // beyond the support: V(s) + H(s)^{-1/2} (W(t) - W(s))
  auto H_at = [&](double t) {
    std::size_t j = 0;
    while (j < d.breakpoints.size() && t > d.breakpoints[j]) ++j;
    if (j >= d.values.size()) return H.back();
    double W_lo = j == 0 ? 0.0 : w.big_w(d.breakpoints[j - 1]);
    return H[j] + phis[j] * (w.big_w(t) - W_lo);
  };
  auto V_at = [&](double t) {
    detail::Accumulator v;
    double prev_Hv = 0.0;
    for (std::size_t j = 0; j < d.values.size(); ++j) {
      double t_hi = std::min(t, d.breakpoints[j]);
      double Hj = H_at(t_hi);
      v.add(2.0 * (std::sqrt(Hj) - std::sqrt(prev_Hv)) / phis[j]);
      prev_Hv = H[j + 1];
      if (t <= d.breakpoints[j]) return v.total();
    }
    v.add((w.big_w(t) - w.big_w(d.total_measure())) / std::sqrt(H.back()));
    return v.total();
  };
  RatioVerdict rv;
  double min_ratio = kInf;
  for (int j = 0; j <= 60; ++j) {
    double t = std::ldexp(1.0, -j);
    double r = w.big_w(t) / V_at(t);
    rv.samples.emplace_back(t, r);
    min_ratio = std::min(min_ratio, r);
  }
  const std::size_t tail = 33;
  bool decreasing = true;
  for (std::size_t i = rv.samples.size() - tail; i + 1 < rv.samples.size(); ++i)
    if (!(rv.samples[i + 1].second <= rv.samples[i].second * (1.0 + 1e-12))) decreasing = false;
  if (decreasing && rv.samples.back().second < 1e-3)
    rv.kind = RatioVerdict::Kind::LimitZero;
  else
    rv.kind = RatioVerdict::Kind::Inconclusive;
  rv.c = min_ratio;
  out.ratio = rv;
  return out;
}

WitnessBundle non_inclusion_witness(const OrliczFn& phi1, const OrliczFn& phi2, const WeightFn& w,
                                    double gamma, int n_max,
                                    const std::vector<double>& epsilons) {
  WitnessBundle b;
  b.kind = BundleKind::NonInclusion;
  b.spec = SpaceSpec{gamma, phi2, w};
  b.depth_k = n_max;
  if (n_max == 0) return b;

  // a_n increasing with phi1(a_n) > 2^n phi2(n^2 a_n): the same inequality the
  // Delta_phi(inf) solver handles, with phi2 in the scaling role
  FamilyData fam;
  fam.target = phi1;
  fam.regime = Regime::Infinity;
  fam.seq = find_delta_infty_sequence(phi2, phi1, n_max, 1.0 + 1e-9);  // strict margin
  for (int nn = 1; nn <= n_max; ++nn)
    fam.masses.push_back(
        std::exp(-(nn * kLn2) - phi2.log_eval(nn * double(nn) * fam.seq.values[nn - 1])));
  detail::Accumulator total;
  for (double m : fam.masses) total.add(m);
  double t0 = w.big_w_inverse(total.total());
  if (!std::isinf(gamma) && t0 > gamma)
    throw mass_exceeds_budget(fam.masses.size() - 1, total.total(), w.big_w(gamma));
  fam.breakpoints = partition_by_mass(w, t0, fam.masses, PartitionDirection::Downward);

  // pieces [t_n, t_{n-1}) carry value n a_n; the function is its own
  // rearrangement
  std::vector<Piece> ps;
  for (int nn = 1; nn <= n_max; ++nn) {
    fam.pieces.push_back(IntervalSet::single(fam.breakpoints[nn], fam.breakpoints[nn - 1]));
    ps.push_back({nn * fam.seq.values[nn - 1], fam.pieces.back()});
  }
  b.witness = StepFunction(std::move(ps));
  fam.fn = b.witness;
  fam.norm = luxemburg_norm(b.spec, b.witness).value;

  FinitenessCertificate fc;
  fc.lambda = 1.0;
  fc.bound = 1.0;
  fc.raw_modular = modular(b.spec, b.witness);  // = sum phi2(n a_n) mass_n < sum 2^-n
  fc.value = fc.raw_modular;
  b.finite.push_back(fc);

  for (double eps : epsilons) {
    if (!(eps > 0.0)) continue;
    DivergenceCertificate dc;
    dc.family = 1;
    dc.epsilon = eps;
    dc.tail_start = static_cast<int>(std::floor(1.0 / eps)) + 1;  // smallest n with n*eps > 1
    detail::Accumulator sum;
    for (int nn = dc.tail_start; nn <= n_max; ++nn) {
      double term =
          clamp_exp(phi1.log_eval(fam.seq.values[nn - 1]) + std::log(fam.masses[nn - 1]));
      dc.terms.push_back(term);
      sum.add(term);
    }
    dc.partial_sum = sum.total();
    b.divergent.push_back(dc);
  }
  b.families.push_back(std::move(fam));
  return b;
}

}  // namespace olspace

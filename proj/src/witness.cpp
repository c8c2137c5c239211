#include "olspace/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace olspace {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kTermClamp = 1e300;

double pow2(int n) { return std::ldexp(1.0, n); }

double clamp_exp(double log_value) {
  if (std::isinf(log_value) && log_value > 0) return kTermClamp;
  return std::min(std::exp(std::min(log_value, 691.0)), kTermClamp);
}

double mass_log(const OrliczFn& phi, SeqKind kind, int k, double u, int series_index) {
  switch (kind) {
    case SeqKind::DeltaPhiInfty:
      return -(k * kLn2) - phi.log_eval(k * double(k) * u);
    case SeqKind::DeltaPhiZero:
      return -(k * kLn2) - phi.log_eval(k * u);
    case SeqKind::NonDelta2:
      return -((k + series_index) * kLn2) - phi.log_eval(u);
  }
  return 0.0;
}

std::vector<double> masses_from(const OrliczFn& phi, const IneqSequence& seq) {
  std::vector<double> m(seq.values.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::exp(mass_log(phi, seq.kind, static_cast<int>(i) + 1, seq.values[i],
                             seq.series_index));
    if (!(m[i] > 0.0))
      throw invalid_input("construction mass underflows double precision at k=" +
                          std::to_string(i + 1));
  }
  return m;
}

double mass_sum(const std::vector<double>& masses) {
  detail::Accumulator acc;
  for (double m : masses) acc.add(m);
  return acc.total();
}

struct BuiltFamily {
  OrliczFn target = OrliczFn::power(1.0);
  Regime regime = Regime::Infinity;
  IneqSequence seq;
  std::vector<double> masses;
  std::vector<double> breakpoints;
  std::vector<double> lengths;  // piece measures, index k-1
  std::vector<double> values;   // piece values of f_n
};

// Delta_phi(inf) family: masses exhaust min(budget, attainable sum). When the
// minimal-inequality masses overshoot the budget the inequality RHS is
// strengthened by a factor s >= 1 until the sums meet.
BuiltFamily build_infty_family(const OrliczFn& phi, const OrliczFn& phi_n, const WeightFn& w,
                               int K, double budget) {
  BuiltFamily fam;
  fam.target = phi_n;
  fam.regime = Regime::Infinity;
  fam.seq = find_delta_infty_sequence(phi, phi_n, K, 1.0);
  fam.masses = masses_from(phi, fam.seq);
  double S = mass_sum(fam.masses);
  if (S > budget) {
    double lo = 1.0, hi = 2.0;
    while (mass_sum(masses_from(phi, find_delta_infty_sequence(phi, phi_n, K, hi))) > budget) {
      hi *= hi;
      if (hi > 1e280) throw search_exhausted("budget scaling for Delta_phi(inf) family");
    }
    for (int i = 0; i < 100; ++i) {
      double mid = std::sqrt(lo * hi);
      IneqSequence cand = find_delta_infty_sequence(phi, phi_n, K, mid);
      double Sc = mass_sum(masses_from(phi, cand));
      (Sc > budget ? lo : hi) = mid;
      if (std::abs(Sc - budget) <= 1e-10 * budget) {
        hi = mid;
        break;
      }
    }
    fam.seq = find_delta_infty_sequence(phi, phi_n, K, hi);
    fam.masses = masses_from(phi, fam.seq);
    S = mass_sum(fam.masses);
  }
  double t_top = w.big_w_inverse(S);
  fam.breakpoints = partition_by_mass(w, t_top, fam.masses, PartitionDirection::Downward);
  for (int k = 1; k <= K; ++k) {
    fam.lengths.push_back(fam.breakpoints[k - 1] - fam.breakpoints[k]);
    fam.values.push_back(k * fam.seq.values[k - 1]);
  }
  return fam;
}

BuiltFamily build_zero_family(const OrliczFn& phi, const OrliczFn& phi_n, const WeightFn& w,
                              int K) {
  BuiltFamily fam;
  fam.target = phi_n;
  fam.regime = Regime::Zero;
  fam.seq = find_delta_zero_sequence(phi, phi_n, K, 1.0);
  fam.masses = masses_from(phi, fam.seq);
  fam.breakpoints = partition_by_mass(w, 0.0, fam.masses, PartitionDirection::Upward);
  for (int k = 1; k <= K; ++k) {
    fam.lengths.push_back(fam.breakpoints[k] - fam.breakpoints[k - 1]);
    fam.values.push_back(fam.seq.values[k - 1]);
  }
  return fam;
}

// Tiny pieces are placed nearest the origin of E: pieces are carved in
// ascending measure order across all families so extreme-scale intervals
// stay representable. Rearrangement invariance makes any layout with
// matching measures equivalent.
void place_families(std::vector<BuiltFamily>& fams, const IntervalSet& E,
                    std::vector<std::vector<IntervalSet>>& pieces_out) {
  struct Ref {
    std::size_t fam, k;
    double len;
  };
  std::vector<Ref> refs;
  for (std::size_t f = 0; f < fams.size(); ++f)
    for (std::size_t k = 0; k < fams[f].lengths.size(); ++k)
      refs.push_back({f, k, fams[f].lengths[k]});
  std::stable_sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) {
    if (a.len != b.len) return a.len < b.len;
    if (a.fam != b.fam) return a.fam < b.fam;
    return a.k < b.k;
  });
  std::vector<double> lens;
  lens.reserve(refs.size());
  for (const Ref& r : refs) lens.push_back(r.len);
  std::vector<IntervalSet> cut = carve(E, lens);
  pieces_out.assign(fams.size(), {});
  for (std::size_t f = 0; f < fams.size(); ++f)
    pieces_out[f].resize(fams[f].lengths.size());
  for (std::size_t i = 0; i < refs.size(); ++i)
    pieces_out[refs[i].fam][refs[i].k] = cut[i];
}

WitnessBundle assemble_spaceable(BundleKind kind, const SpaceSpec& spec,
                                 std::vector<BuiltFamily> fams, const IntervalSet& E, int K,
                                 const std::vector<double>& lambdas,
                                 const std::vector<double>& epsilons, double bound) {
  WitnessBundle b;
  b.kind = kind;
  b.spec = spec;
  b.depth_k = K;
  if (K == 0 || fams.empty()) return b;

  std::vector<std::vector<IntervalSet>> placed;
  place_families(fams, E, placed);

  std::vector<Piece> witness_pieces;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    FamilyData fd;
    fd.target = fams[f].target;
    fd.regime = fams[f].regime;
    fd.seq = fams[f].seq;
    fd.masses = fams[f].masses;
    fd.breakpoints = fams[f].breakpoints;
    fd.pieces = placed[f];
    std::vector<Piece> ps;
    for (std::size_t k = 0; k < fd.pieces.size(); ++k)
      ps.push_back({fams[f].values[k], fd.pieces[k]});
    fd.fn = StepFunction(ps);
    fd.norm = luxemburg_norm(spec, fd.fn).value;
    double weight = 1.0 / (pow2(static_cast<int>(f) + 1) * fd.norm);
    for (std::size_t k = 0; k < ps.size(); ++k)
      witness_pieces.push_back({fams[f].values[k] * weight, fd.pieces[k]});
    b.families.push_back(std::move(fd));
  }
  b.witness = StepFunction(std::move(witness_pieces));

  for (double lambda : lambdas) {
    FinitenessCertificate fc;
    fc.lambda = lambda;
    fc.bound = bound;
    detail::Accumulator value;
    for (std::size_t f = 0; f < b.families.size(); ++f) {
      const FamilyData& fd = b.families[f];
      int n = static_cast<int>(f) + 1;
      int k_n = std::max(1, static_cast<int>(std::floor(lambda / fd.norm)) + 1);
      fc.tail_starts.push_back(k_n);
      detail::Accumulator tail;
      for (int k = k_n + 1; k <= K; ++k) {
        double v = fd.regime == Regime::Infinity ? k * fd.seq.values[k - 1]
                                                 : fd.seq.values[k - 1];
        double term = spec.phi.eval(lambda * v / fd.norm) * fd.masses[k - 1];
        if (term > std::ldexp(1.0, -k) * (1.0 + 1e-9))
          throw invalid_input("finiteness tail term exceeds its geometric bound");
        tail.add(term);
      }
      value.add((static_cast<double>(k_n) / pow2(k_n) + tail.total()) / pow2(n));
    }
    fc.value = value.total();
    StepFunction scaled = b.witness.scaled(lambda);
    fc.raw_modular = modular(spec, scaled);
    b.finite.push_back(std::move(fc));
  }

  for (double eps : epsilons) {
    if (!(eps > 0.0)) continue;
    for (std::size_t f = 0; f < b.families.size(); ++f) {
      const FamilyData& fd = b.families[f];
      int n = static_cast<int>(f) + 1;
      DivergenceCertificate dc;
      dc.family = n;
      dc.epsilon = eps;
      double limit = pow2(n) * fd.norm / eps;
      int k0 = static_cast<int>(std::floor(limit)) + 1;
      dc.tail_start = k0;
      detail::Accumulator sum;
      for (int k = k0; k <= K; ++k) {
        double u = fd.seq.values[k - 1];
        double lhs_log = fd.regime == Regime::Infinity ? fd.target.log_eval(u)
                                                       : fd.target.log_eval(u / k);
        double term = clamp_exp(lhs_log + std::log(fd.masses[k - 1]));
        dc.terms.push_back(term);
        sum.add(term);
      }
      dc.partial_sum = sum.total();
      b.divergent.push_back(std::move(dc));
    }
  }
  return b;
}

std::pair<IntervalSet, IntervalSet> split_first(const IntervalSet& E, double measure) {
  std::vector<Interval> first, rest;
  double need = measure;
  for (const Interval& iv : E.parts()) {
    if (need <= 0.0) {
      rest.push_back(iv);
      continue;
    }
    double len = iv.length();
    if (len <= need) {
      first.push_back(iv);
      need -= len;
    } else {
      first.push_back({iv.lo, iv.lo + need});
      rest.push_back({iv.lo + need, iv.hi});
      need = 0.0;
    }
  }
  if (need > 1e-12 * measure) throw invalid_input("interval set too small for requested split");
  return {IntervalSet(std::move(first)), IntervalSet(std::move(rest))};
}

}  // namespace

WitnessBundle spaceable_witness_infty(const OrliczFn& phi, const std::vector<OrliczFn>& phis,
                                      const WeightFn& w, const IntervalSet& E, int K,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& epsilons) {
  if (!E.finite() || E.empty())
    throw invalid_input("Delta_phi(inf) construction needs 0 < m(E) < inf");
  for (const OrliczFn& pn : phis) {
    ConditionVerdict v = delta_phi_check(phi, pn, Regime::Infinity);
    if (v.status == VerdictStatus::Fails)
      throw invalid_input(pn.describe() + " fails the Delta_phi(inf) condition");
  }
  SpaceSpec spec{kInf, phi, w};
  std::vector<BuiltFamily> fams;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    double budget = w.big_w(E.measure() / pow2(static_cast<int>(i) + 1));
    fams.push_back(build_infty_family(phi, phis[i], w, K, budget));
  }
  return assemble_spaceable(BundleKind::SpaceableInfty, spec, std::move(fams), E, K, lambdas,
                            epsilons, 1.0);
}

WitnessBundle spaceable_witness_zero(const OrliczFn& phi, const std::vector<OrliczFn>& phis,
                                     const WeightFn& w, const IntervalSet& E, int K,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& epsilons) {
  if (E.finite()) throw invalid_input("Delta_phi(0) construction needs m(E) = inf");
  for (const OrliczFn& pn : phis) {
    ConditionVerdict v = delta_phi_check(phi, pn, Regime::Zero);
    if (v.status == VerdictStatus::Fails)
      throw invalid_input(pn.describe() + " fails the Delta_phi(0) condition");
  }
  SpaceSpec spec{kInf, phi, w};
  std::vector<BuiltFamily> fams;
  for (const OrliczFn& pn : phis) fams.push_back(build_zero_family(phi, pn, w, K));
  return assemble_spaceable(BundleKind::SpaceableZero, spec, std::move(fams), E, K, lambdas,
                            epsilons, 1.0);
}

WitnessBundle spaceable_witness_mixed(const OrliczFn& phi, const std::vector<TaggedOrlicz>& phis,
                                      const WeightFn& w, const IntervalSet& E, int K,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& epsilons, double f1_measure) {
  if (E.finite()) throw invalid_input("mixed construction needs m(E) = inf");
  auto [F1, F2] = split_first(E, f1_measure);
  std::vector<BuiltFamily> fams;
  int local_inf_index = 0;
  for (const TaggedOrlicz& t : phis) {
    if (t.regime == Regime::Infinity) {
      ++local_inf_index;
      double budget = w.big_w(f1_measure / pow2(local_inf_index));
      fams.push_back(build_infty_family(phi, t.fn, w, K, budget));
    } else {
      fams.push_back(build_zero_family(phi, t.fn, w, K));
    }
  }
  // place the finite-part pieces in F1 and the others in F2, preserving the
  // global family order for weights and certificates
  SpaceSpec spec{kInf, phi, w};
  WitnessBundle b;
  b.kind = BundleKind::SpaceableMixed;
  b.spec = spec;
  b.depth_k = K;
  b.meta["f1_measure"] = f1_measure;
  if (K == 0 || fams.empty()) return b;

  std::vector<BuiltFamily> inf_fams, zero_fams;
  std::vector<std::size_t> inf_idx, zero_idx;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (fams[i].regime == Regime::Infinity) {
      inf_idx.push_back(i);
      inf_fams.push_back(fams[i]);
    } else {
      zero_idx.push_back(i);
      zero_fams.push_back(fams[i]);
    }
  }
  std::vector<std::vector<IntervalSet>> placed(fams.size());
  std::vector<std::vector<IntervalSet>> tmp;
  if (!inf_fams.empty()) {
    place_families(inf_fams, F1, tmp);
    for (std::size_t j = 0; j < inf_idx.size(); ++j) placed[inf_idx[j]] = tmp[j];
  }
  if (!zero_fams.empty()) {
    place_families(zero_fams, F2, tmp);
    for (std::size_t j = 0; j < zero_idx.size(); ++j) placed[zero_idx[j]] = tmp[j];
  }

  WitnessBundle assembled;
  {
    // reuse the shared assembly on pre-placed pieces
    assembled.kind = BundleKind::SpaceableMixed;
    assembled.spec = spec;
    assembled.depth_k = K;
    assembled.meta["f1_measure"] = f1_measure;
    std::vector<Piece> witness_pieces;
    for (std::size_t f = 0; f < fams.size(); ++f) {
      FamilyData fd;
      fd.target = fams[f].target;
      fd.regime = fams[f].regime;
      fd.seq = fams[f].seq;
      fd.masses = fams[f].masses;
      fd.breakpoints = fams[f].breakpoints;
      fd.pieces = placed[f];
      std::vector<Piece> ps;
      for (std::size_t k = 0; k < fd.pieces.size(); ++k)
        ps.push_back({fams[f].values[k], fd.pieces[k]});
      fd.fn = StepFunction(ps);
      fd.norm = luxemburg_norm(spec, fd.fn).value;
      double weight = 1.0 / (pow2(static_cast<int>(f) + 1) * fd.norm);
      for (std::size_t k = 0; k < ps.size(); ++k)
        witness_pieces.push_back({fams[f].values[k] * weight, fd.pieces[k]});
      assembled.families.push_back(std::move(fd));
    }
    assembled.witness = StepFunction(std::move(witness_pieces));
  }

  for (double lambda : lambdas) {
    FinitenessCertificate fc;
    fc.lambda = lambda;
    fc.bound = 2.0;
    detail::Accumulator value;
    for (std::size_t f = 0; f < assembled.families.size(); ++f) {
      const FamilyData& fd = assembled.families[f];
      int n = static_cast<int>(f) + 1;
      int k_n = std::max(1, static_cast<int>(std::floor(lambda / fd.norm)) + 1);
      fc.tail_starts.push_back(k_n);
      detail::Accumulator tail;
      for (int k = k_n + 1; k <= K; ++k) {
        double v =
            fd.regime == Regime::Infinity ? k * fd.seq.values[k - 1] : fd.seq.values[k - 1];
        double term = spec.phi.eval(lambda * v / fd.norm) * fd.masses[k - 1];
        if (term > std::ldexp(1.0, -k) * (1.0 + 1e-9))
          throw invalid_input("finiteness tail term exceeds its geometric bound");
        tail.add(term);
      }
      value.add((static_cast<double>(k_n) / pow2(k_n) + tail.total()) / pow2(n));
    }
    fc.value = value.total();
    fc.raw_modular = modular(spec, assembled.witness.scaled(lambda));
    assembled.finite.push_back(std::move(fc));
  }
  for (double eps : epsilons) {
    if (!(eps > 0.0)) continue;
    for (std::size_t f = 0; f < assembled.families.size(); ++f) {
      const FamilyData& fd = assembled.families[f];
      int n = static_cast<int>(f) + 1;
      DivergenceCertificate dc;
      dc.family = n;
      dc.epsilon = eps;
      int k0 = static_cast<int>(std::floor(pow2(n) * fd.norm / eps)) + 1;
      dc.tail_start = k0;
      detail::Accumulator sum;
      for (int k = k0; k <= K; ++k) {
        double u = fd.seq.values[k - 1];
        double lhs_log = fd.regime == Regime::Infinity ? fd.target.log_eval(u)
                                                       : fd.target.log_eval(u / k);
        double term = clamp_exp(lhs_log + std::log(fd.masses[k - 1]));
        dc.terms.push_back(term);
        sum.add(term);
      }
      dc.partial_sum = sum.total();
      assembled.divergent.push_back(std::move(dc));
    }
  }
  return assembled;
}

namespace {

BuiltFamily build_non_oc_family(const OrliczFn& phi, const WeightFn& w, int K,
                                int series_index) {
  BuiltFamily fam;
  fam.target = phi;
  fam.regime = Regime::Infinity;
  fam.seq = find_non_delta2_sequence(phi, K, series_index);
  fam.masses = masses_from(phi, fam.seq);
  double t0 = w.big_w_inverse(mass_sum(fam.masses));
  fam.breakpoints = partition_by_mass(w, t0, fam.masses, PartitionDirection::Downward);
  for (int k = 1; k <= K; ++k) {
    fam.lengths.push_back(fam.breakpoints[k - 1] - fam.breakpoints[k]);
    fam.values.push_back(fam.seq.values[k - 1]);
  }
  return fam;
}

WitnessBundle assemble_non_oc(const SpaceSpec& spec, const BuiltFamily& built,
                              std::vector<IntervalSet> pieces, int K,
                              const std::vector<double>& epsilons, int series_index) {
  WitnessBundle b;
  b.kind = BundleKind::NonOrderContinuous;
  b.spec = spec;
  b.depth_k = K;
  b.meta["series_index"] = series_index;

  FamilyData fam;
  fam.target = built.target;
  fam.regime = built.regime;
  fam.seq = built.seq;
  fam.masses = built.masses;
  fam.breakpoints = built.breakpoints;
  fam.pieces = std::move(pieces);

  std::vector<Piece> ps;
  for (int k = 1; k <= K; ++k) ps.push_back({fam.seq.values[k - 1], fam.pieces[k - 1]});
  b.witness = StepFunction(ps);
  fam.fn = b.witness;
  fam.norm = luxemburg_norm(b.spec, b.witness).value;

  FinitenessCertificate fc;
  fc.lambda = 1.0;
  fc.bound = std::ldexp(1.0, -series_index);
  fc.raw_modular = modular(b.spec, b.witness);
  fc.value = fc.raw_modular;  // = 2^{-index} (1 - 2^{-K}) by the mass identity
  b.finite.push_back(fc);

  for (double eps : epsilons) {
    if (!(eps > 1.0)) continue;  // rho(f) <= bound already covers eps <= 1
    DivergenceCertificate dc;
    dc.family = 1;
    dc.epsilon = eps;
    dc.tail_start = static_cast<int>(std::floor(1.0 / (eps - 1.0))) + 1;
    detail::Accumulator sum;
    for (int k = dc.tail_start; k <= K; ++k) {
      double term = clamp_exp(b.spec.phi.log_eval(eps * fam.seq.values[k - 1]) +
                              std::log(fam.masses[k - 1]));
      dc.terms.push_back(term);
      sum.add(term);
    }
    dc.partial_sum = sum.total();
    b.divergent.push_back(std::move(dc));
  }
  b.families.push_back(std::move(fam));
  return b;
}

}  // namespace

WitnessBundle non_order_continuous_witness(const OrliczFn& phi, const WeightFn& w,
                                           const IntervalSet& E, int K,
                                           const std::vector<double>& epsilons,
                                           int series_index) {
  SpaceSpec spec{kInf, phi, w};
  if (K == 0) {
    WitnessBundle b;
    b.kind = BundleKind::NonOrderContinuous;
    b.spec = spec;
    b.meta["series_index"] = series_index;
    return b;
  }
  BuiltFamily fam = build_non_oc_family(phi, w, K, series_index);
  double S = mass_sum(fam.masses);
  if (E.finite() && S >= w.big_w(E.measure()))
    throw mass_exceeds_budget(fam.masses.size() - 1, S, w.big_w(E.measure()));
  std::vector<BuiltFamily> fams{fam};
  std::vector<std::vector<IntervalSet>> placed;
  place_families(fams, E, placed);
  return assemble_non_oc(spec, fam, std::move(placed[0]), K, epsilons, series_index);
}

std::vector<WitnessBundle> non_oc_stack(const OrliczFn& phi, const WeightFn& w,
                                        const IntervalSet& E, int K, int m,
                                        const std::vector<double>& epsilons) {
  SpaceSpec spec{kInf, phi, w};
  std::vector<BuiltFamily> fams;
  double total = 0.0;
  for (int n = 1; n <= m; ++n) {
    fams.push_back(build_non_oc_family(phi, w, K, n));
    total += mass_sum(fams.back().masses);
  }
  if (E.finite() && total >= w.big_w(E.measure()))
    throw mass_exceeds_budget(m - 1, total, w.big_w(E.measure()));
  std::vector<std::vector<IntervalSet>> placed;
  place_families(fams, E, placed);
  std::vector<WitnessBundle> out;
  for (int n = 1; n <= m; ++n)
    out.push_back(assemble_non_oc(spec, fams[n - 1], std::move(placed[n - 1]), K, epsilons, n));
  return out;
}

EllInftyReport ell_infty_isometry_check(const std::vector<WitnessBundle>& bundles,
                                        const std::vector<double>& x, double delta) {
  if (bundles.size() != x.size())
    throw invalid_input("coefficient count must match bundle count");
  if (!(delta > 0.0 && delta < 1.0)) throw invalid_input("delta must lie in (0,1)");
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].kind != BundleKind::NonOrderContinuous)
      throw invalid_input("ell_infty check expects non-order-continuous witnesses");
    for (std::size_t j = i + 1; j < bundles.size(); ++j)
      if (!bundles[i].witness.support().disjoint_from(bundles[j].witness.support()))
        throw invalid_input("witness supports overlap");
  }
  EllInftyReport rep;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > rep.max_abs) {
      rep.max_abs = std::abs(x[i]);
      arg = i;
    }
  if (rep.max_abs == 0.0) {
    rep.upper_ok = rep.lower_ok = true;
    return rep;
  }
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (const Piece& p : bundles[i].witness.pieces())
      pieces.push_back({std::abs(x[i]) * p.value, p.support});
  }
  StepFunction tx(std::move(pieces));
  const SpaceSpec& spec = bundles[arg].spec;
  rep.norm_tx = luxemburg_norm(spec, tx).value;
  rep.upper_bound = rep.max_abs * (1.0 + 1e-8);
  rep.upper_ok = rep.norm_tx <= rep.upper_bound;

  // lower bound: the modular of Tx/((1-delta) max|x|) dominates the modular
  // of f_{n*}/(1-delta), whose tail terms re-verify the strict inequality
  const FamilyData& fd = bundles[arg].families.at(0);
  double eps = 1.0 / (1.0 - delta);
  int k0 = static_cast<int>(std::floor(1.0 / (eps - 1.0))) + 1;
  detail::Accumulator probe;
  int K = bundles[arg].depth_k;
  for (int k = k0; k <= K; ++k)
    probe.add(clamp_exp(spec.phi.log_eval(eps * fd.seq.values[k - 1]) +
                        std::log(fd.masses[k - 1])));
  rep.probe_modular = probe.total();
  rep.lower_bound = (1.0 - delta) * rep.max_abs;
  rep.lower_ok = rep.probe_modular > 1.0;
  return rep;
}

BasicCheckReport disjoint_basic_check(const SpaceSpec& spec, const std::vector<StepFunction>& fs,
                                      int coeff_trials, std::uint64_t seed) {
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      if (!fs[i].support().disjoint_from(fs[j].support()))
        throw invalid_input("disjoint_basic_check requires pairwise disjoint supports");
  BasicCheckReport rep;
  rep.trials = coeff_trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int t = 0; t < coeff_trials; ++t) {
    std::vector<double> a(fs.size());
    for (double& ai : a) ai = coeff(rng);
    std::vector<double> norms;
    std::vector<Piece> acc;
    for (std::size_t r = 0; r < fs.size(); ++r) {
      if (std::abs(a[r]) > 1e-9)
        for (const Piece& p : fs[r].pieces()) acc.push_back({std::abs(a[r]) * p.value, p.support});
      norms.push_back(acc.empty() ? 0.0 : luxemburg_norm(spec, StepFunction(acc)).value);
    }
    double scale = norms.back();
    for (std::size_t s = 0; s + 1 < norms.size(); ++s) {
      ++rep.comparisons;
      double slack = norms[s] - norms[s + 1];
      rep.worst_slack = std::max(rep.worst_slack, slack);
      if (slack > 1e-9 * std::max(scale, 1.0)) ++rep.violations;
    }
  }
  return rep;
}

WitnessBundle strict_lorentz_witness(double p, const WeightFn& w, StrictSide side, int N, int K,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& epsilons) {
  if (side == StrictSide::Left && !(p > 1.0))
    throw invalid_input("left-strict witnesses need p > 1");
  if (side == StrictSide::Both && !(p > 1.0 && !std::isinf(p)))
    throw invalid_input("two-sided witnesses need p in (1, inf)");
  if (!(p >= 1.0) || std::isinf(p)) throw invalid_input("p must lie in [1, inf)");
  OrliczFn phi = OrliczFn::power(p);
  auto right_fn = [&](int n) { return OrliczFn::power(p + 1.0 / n); };
  auto left_fn = [&](int n) {
    int k0 = static_cast<int>(std::floor(1.0 / (p - 1.0))) + 1;
    return OrliczFn::power(p - 1.0 / (k0 + n - 1));
  };
  switch (side) {
    case StrictSide::Right: {
      std::vector<OrliczFn> phis;
      for (int n = 1; n <= N; ++n) phis.push_back(right_fn(n));
      return spaceable_witness_infty(phi, phis, w, IntervalSet::single(0.0, 1.0), K, lambdas,
                                     epsilons);
    }
    case StrictSide::Left: {
      std::vector<OrliczFn> phis;
      for (int n = 1; n <= N; ++n) phis.push_back(left_fn(n));
      return spaceable_witness_zero(phi, phis, w, IntervalSet::single(0.0, kInf), K, lambdas,
                                    epsilons);
    }
    case StrictSide::Both: {
      std::vector<TaggedOrlicz> phis;
      int half = std::max(1, N / 2);
      for (int n = 1; n <= half; ++n) {
        phis.push_back({right_fn(n), Regime::Infinity});
        phis.push_back({left_fn(n), Regime::Zero});
      }
      return spaceable_witness_mixed(phi, phis, w, IntervalSet::single(0.0, kInf), K, lambdas,
                                     epsilons, 1.0);
    }
  }
  throw invalid_input("unknown side");
}

DivergenceCertificate make_divergence(const WitnessBundle& b, int family, double epsilon) {
  if (family < 1 || family > static_cast<int>(b.families.size()))
    throw invalid_input("no such family in the bundle");
  const FamilyData& fd = b.families[family - 1];
  DivergenceCertificate dc;
  dc.family = family;
  dc.epsilon = epsilon;
  int K = b.depth_k;
  if (b.kind == BundleKind::NonOrderContinuous) {
    if (!(epsilon > 1.0)) return dc;  // no divergence claim at or below scale 1
    dc.tail_start = static_cast<int>(std::floor(1.0 / (epsilon - 1.0))) + 1;
  } else if (b.kind == BundleKind::NonInclusion) {
    dc.tail_start = static_cast<int>(std::floor(1.0 / epsilon)) + 1;
  } else {
    dc.tail_start =
        static_cast<int>(std::floor(pow2(family) * fd.norm / epsilon)) + 1;
  }
  detail::Accumulator sum;
  for (int k = dc.tail_start; k <= K; ++k) {
    double lhs_log;
    if (b.kind == BundleKind::NonOrderContinuous)
      lhs_log = b.spec.phi.log_eval(epsilon * fd.seq.values[k - 1]);
    else if (b.kind == BundleKind::NonInclusion)
      lhs_log = fd.target.log_eval(fd.seq.values[k - 1]);
    else
      lhs_log = fd.regime == Regime::Infinity ? fd.target.log_eval(fd.seq.values[k - 1])
                                              : fd.target.log_eval(fd.seq.values[k - 1] / k);
    double term = clamp_exp(lhs_log + std::log(fd.masses[k - 1]));
    dc.terms.push_back(term);
    sum.add(term);
  }
  dc.partial_sum = sum.total();
  return dc;
}

OrderContinuityProbe order_continuity_probe(const WitnessBundle& b,
                                            const std::vector<double>& scales,
                                            double divergence_threshold) {
  OrderContinuityProbe probe;
  for (double eps : scales) {
    if (!(eps > 0.0)) throw invalid_input("probe scales must be positive");
    double best = 0.0;
    for (int n = 1; n <= static_cast<int>(b.families.size()); ++n)
      best = std::max(best, make_divergence(b, n, eps).partial_sum);
    probe.modulars.emplace_back(eps, best);
    if (best >= divergence_threshold) {
      probe.kind = OrderContinuityProbe::Kind::DivergesAtScale;
      probe.scale = eps;
      probe.partial_sum = best;
      return probe;
    }
  }
  probe.kind = OrderContinuityProbe::Kind::AllScalesFinite;
  return probe;
}

namespace {

void check_rel(VerifyReport& rep, const std::string& what, double got, double expected,
               double tol) {
  double scale = std::max({std::abs(expected), std::abs(got), 1e-300});
  if (std::abs(got - expected) > tol * scale)
    rep.failures.push_back(what + ": recomputed " + std::to_string(got) + " vs stored " +
                           std::to_string(expected));
}

}  // namespace

VerifyReport verify_bundle(const WitnessBundle& b, double tol) {
  VerifyReport rep;
  int K = b.depth_k;

  for (std::size_t f = 0; f < b.families.size(); ++f) {
    const FamilyData& fd = b.families[f];
    std::string tag = "family " + std::to_string(f + 1);
    // the non-inclusion sequence is a delta_phi(inf) sequence with phi2 in
    // the scaling role, so the generic re-verification covers every kind
    std::vector<double> residuals = reverify_sequence(
        fd.seq, b.spec.phi, fd.seq.kind == SeqKind::NonDelta2 ? nullptr : &fd.target);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      if (residuals[i] < -1e-9)
        rep.failures.push_back(tag + ": inequality residual negative at k=" +
                               std::to_string(i + 1));
      if (i < fd.seq.residuals.size() &&
          std::abs(residuals[i] - fd.seq.residuals[i]) >
              tol * (1.0 + std::abs(residuals[i])))
        rep.failures.push_back(tag + ": stored residual drifts at k=" + std::to_string(i + 1));
    }

    for (std::size_t i = 0; i < fd.masses.size(); ++i) {
      int k = static_cast<int>(i) + 1;
      double expected = std::exp(
          mass_log(b.spec.phi, fd.seq.kind, k, fd.seq.values[i], fd.seq.series_index));
      check_rel(rep, tag + " mass k=" + std::to_string(k), expected, fd.masses[i], tol);
    }

    // re-derive breakpoints from the masses
    try {
      std::vector<double> breaks;
      if (fd.seq.kind == SeqKind::DeltaPhiZero) {
        breaks = partition_by_mass(b.spec.weight, 0.0, fd.masses, PartitionDirection::Upward);
      } else {
        double S = mass_sum(fd.masses);
        breaks = partition_by_mass(b.spec.weight, b.spec.weight.big_w_inverse(S), fd.masses,
                                   PartitionDirection::Downward);
      }
      if (breaks.size() != fd.breakpoints.size()) {
        rep.failures.push_back(tag + ": breakpoint count mismatch");
      } else {
        for (std::size_t i = 0; i < breaks.size(); ++i)
          check_rel(rep, tag + " breakpoint " + std::to_string(i), breaks[i], fd.breakpoints[i],
                    1e-6);
      }
    } catch (const error& e) {
      rep.failures.push_back(tag + ": breakpoint re-derivation failed: " + e.what());
    }

    // piece measures match the breakpoint gaps
    for (std::size_t i = 0; i < fd.pieces.size(); ++i) {
      double gap = fd.seq.kind == SeqKind::DeltaPhiZero
                       ? fd.breakpoints[i + 1] - fd.breakpoints[i]
                       : fd.breakpoints[i] - fd.breakpoints[i + 1];
      check_rel(rep, tag + " piece measure k=" + std::to_string(i + 1), fd.pieces[i].measure(),
                gap, tol);
    }
    for (std::size_t i = 0; i < fd.pieces.size(); ++i)
      for (std::size_t j = i + 1; j < fd.pieces.size(); ++j)
        if (!fd.pieces[i].disjoint_from(fd.pieces[j]))
          rep.failures.push_back(tag + ": partition pieces overlap");

    double norm = luxemburg_norm(b.spec, fd.fn).value;
    check_rel(rep, tag + " norm", norm, fd.norm, tol);
  }

  // witness reconstruction from sequences + partitions + norms
  if (!b.families.empty()) {
    std::vector<Piece> expect;
    for (std::size_t f = 0; f < b.families.size(); ++f) {
      const FamilyData& fd = b.families[f];
      for (std::size_t k = 0; k < fd.pieces.size(); ++k) {
        double v;
        if (b.kind == BundleKind::NonOrderContinuous) {
          v = fd.seq.values[k];
        } else if (b.kind == BundleKind::NonInclusion) {
          v = (k + 1.0) * fd.seq.values[k];
        } else {
          double base = fd.regime == Regime::Infinity ? (k + 1.0) * fd.seq.values[k]
                                                      : fd.seq.values[k];
          v = base / (std::ldexp(1.0, static_cast<int>(f) + 1) * fd.norm);
        }
        expect.push_back({v, fd.pieces[k]});
      }
    }
    StepFunction rebuilt(expect);
    if (rebuilt.pieces().size() != b.witness.pieces().size()) {
      rep.failures.push_back("witness piece count mismatch");
    } else {
      for (std::size_t i = 0; i < rebuilt.pieces().size(); ++i) {
        check_rel(rep, "witness value " + std::to_string(i), rebuilt.pieces()[i].value,
                  b.witness.pieces()[i].value, 1e-12);
        check_rel(rep, "witness piece measure " + std::to_string(i),
                  rebuilt.pieces()[i].support.measure(), b.witness.pieces()[i].support.measure(),
                  1e-12);
      }
    }
  }

  // certificates
  for (const FinitenessCertificate& fc : b.finite) {
    double value;
    if (b.kind == BundleKind::NonOrderContinuous || b.kind == BundleKind::NonInclusion) {
      value = modular(b.spec, b.witness.scaled(fc.lambda));
    } else {
      detail::Accumulator acc;
      for (std::size_t f = 0; f < b.families.size(); ++f) {
        const FamilyData& fd = b.families[f];
        int n = static_cast<int>(f) + 1;
        int k_n = std::max(1, static_cast<int>(std::floor(fc.lambda / fd.norm)) + 1);
        detail::Accumulator tail;
        for (int k = k_n + 1; k <= K; ++k) {
          double v = fd.regime == Regime::Infinity ? k * fd.seq.values[k - 1]
                                                   : fd.seq.values[k - 1];
          double term = b.spec.phi.eval(fc.lambda * v / fd.norm) * fd.masses[k - 1];
          if (term > std::ldexp(1.0, -k) * (1.0 + 1e-9))
            rep.failures.push_back("finiteness tail term above geometric bound at k=" +
                                   std::to_string(k));
          tail.add(term);
        }
        acc.add((static_cast<double>(k_n) / std::ldexp(1.0, k_n) + tail.total()) /
                std::ldexp(1.0, n));
      }
      value = acc.total();
    }
    check_rel(rep, "finiteness certificate at lambda=" + std::to_string(fc.lambda), value,
              fc.value, tol);
    if (fc.value > fc.bound + 1e-8)
      rep.failures.push_back("finiteness certificate exceeds its bound");
  }

  for (const DivergenceCertificate& dc : b.divergent) {
    if (dc.family < 1 || dc.family > static_cast<int>(b.families.size())) {
      rep.failures.push_back("divergence certificate references a missing family");
      continue;
    }
    const FamilyData& fd = b.families[dc.family - 1];
    detail::Accumulator sum;
    std::size_t idx = 0;
    for (int k = dc.tail_start; k <= K; ++k, ++idx) {
      double lhs_log;
      if (b.kind == BundleKind::NonOrderContinuous) {
        lhs_log = b.spec.phi.log_eval(dc.epsilon * fd.seq.values[k - 1]);
      } else if (b.kind == BundleKind::NonInclusion) {
        lhs_log = fd.target.log_eval(fd.seq.values[k - 1]);
      } else {
        lhs_log = fd.regime == Regime::Infinity
                      ? fd.target.log_eval(fd.seq.values[k - 1])
                      : fd.target.log_eval(fd.seq.values[k - 1] / k);
      }
      double term = clamp_exp(lhs_log + std::log(fd.masses[k - 1]));
      if (idx >= dc.terms.size()) {
        rep.failures.push_back("divergence certificate term count mismatch");
        break;
      }
      check_rel(rep, "divergence term k=" + std::to_string(k), term, dc.terms[idx], tol);
      if (dc.terms[idx] < 1.0 - 1e-9)
        rep.failures.push_back("divergence term below 1 at k=" + std::to_string(k));
      sum.add(term);
    }
    check_rel(rep, "divergence partial sum", sum.total(), dc.partial_sum, tol);
  }

  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace olspace

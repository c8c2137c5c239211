#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "olspace/measure.hpp"
#include "olspace/orlicz.hpp"
#include "olspace/sampling.hpp"
#include "olspace/space.hpp"
#include "olspace/weights.hpp"

namespace olspace {

enum class BundleKind {
  SpaceableInfty,
  SpaceableZero,
  SpaceableMixed,
  NonOrderContinuous,
  NonInclusion,
};

/// Order-continuity certificate for a truncation: the geometric-split
/// estimate of rho(lambda * f) evaluated on the stored construction. The head
/// (k <= k_n) contributes its majorant k_n/2^{k_n}; every tail term is
/// recomputed from the stored sequences and masses and individually bounded
/// by 2^{-k}. The total is provably <= the stated bound.
struct FinitenessCertificate {
  double lambda = 1.0;
  double value = 0.0;            // chain estimate, or raw modular for NonOC/NonInclusion
  double bound = 1.0;
  std::vector<int> tail_starts;  // per-family k_n(lambda)
  double raw_modular = 0.0;      // honest rho(lambda * witness), +inf allowed
};

/// Tail of the modular under the escape family: every term recomputes the
/// defining inequality (LHS * mass >= 1) and the partial sum grows linearly
/// in the number of verified terms.
struct DivergenceCertificate {
  int family = 0;       // 1-based n
  double epsilon = 0.0;
  int tail_start = 0;   // k0: terms run over k in (k0, K]
  std::vector<double> terms;  // each >= 1 - 1e-9, clamped at 1e300
  double partial_sum = 0.0;
};

struct FamilyData {
  OrliczFn target = OrliczFn::power(1.0);  // phi_n (unused marker for NonDelta2 kinds)
  Regime regime = Regime::Infinity;        // tag for mixed constructions
  IneqSequence seq;
  std::vector<double> masses;       // Delta-W of the level pieces, mass_k = 2^{-k}/phi(...)
  std::vector<double> breakpoints;  // partition breakpoints in W-space terms
  std::vector<IntervalSet> pieces;  // E_{n,k}
  double norm = 0.0;                // ||f_n||
  StepFunction fn;
};

struct WitnessBundle {
  BundleKind kind = BundleKind::SpaceableInfty;
  SpaceSpec spec;
  std::vector<FamilyData> families;
  int depth_k = 0;
  StepFunction witness;  // truncated f = sum_n f_n / (2^n ||f_n||)
  std::vector<FinitenessCertificate> finite;
  std::vector<DivergenceCertificate> divergent;
  std::map<std::string, double> meta;
};

/// Escape witness from union Lambda_{phi_n,w} under the Delta_phi(inf)
/// condition, built on a finite-measure interval set E.
WitnessBundle spaceable_witness_infty(const OrliczFn& phi, const std::vector<OrliczFn>& phis,
                                      const WeightFn& w, const IntervalSet& E, int K,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& epsilons);

/// Mirror construction under Delta_phi(0) on [0, inf) (E must have infinite
/// measure; gamma < inf is rejected).
WitnessBundle spaceable_witness_zero(const OrliczFn& phi, const std::vector<OrliczFn>& phis,
                                     const WeightFn& w, const IntervalSet& E, int K,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& epsilons);

struct TaggedOrlicz {
  OrliczFn fn;
  Regime regime;  // Infinity or Zero
};

/// Mixed family: Infinity-tagged functions build on the finite part F1 of E,
/// Zero-tagged on the infinite remainder; chain bound 2.
WitnessBundle spaceable_witness_mixed(const OrliczFn& phi, const std::vector<TaggedOrlicz>& phis,
                                      const WeightFn& w, const IntervalSet& E, int K,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& epsilons, double f1_measure = 1.0);

/// f = sum u_k chi with phi((1+1/k)u_k) > 2^(k+index) phi(u_k) and masses
/// 2^{-k-index}/phi(u_k): rho(f) = 2^{-index}(1 - 2^{-K}) yet rho(eps f)
/// diverges for every eps > 1. series_index > 0 produces the small-modular
/// copies used by the ell_infty stack.
WitnessBundle non_order_continuous_witness(const OrliczFn& phi, const WeightFn& w,
                                           const IntervalSet& E, int K,
                                           const std::vector<double>& epsilons,
                                           int series_index = 0);

/// m disjoint non-order-continuous witnesses with series indices 1..m, all
/// carved jointly from E in ascending measure order (the deep pieces of every
/// copy must sit near the origin to stay representable).
std::vector<WitnessBundle> non_oc_stack(const OrliczFn& phi, const WeightFn& w,
                                        const IntervalSet& E, int K, int m,
                                        const std::vector<double>& epsilons);

struct EllInftyReport {
  double max_abs = 0.0;
  double norm_tx = 0.0;
  double upper_bound = 0.0;   // max|x| * (1 + 1e-8)
  double lower_bound = 0.0;   // (1 - delta) * max|x|
  double probe_modular = 0.0; // certificate partial sum at scale 1/((1-delta) max|x|)
  bool upper_ok = false;
  bool lower_ok = false;
};

/// Tx = sum x_n f_n over disjoint non-order-continuous witnesses; verifies
/// the norm bracket (1-delta) max|x| <= ||Tx|| <= max|x| (1+1e-8).
EllInftyReport ell_infty_isometry_check(const std::vector<WitnessBundle>& bundles,
                                        const std::vector<double>& x, double delta);

struct BasicCheckReport {
  int trials = 0;
  int comparisons = 0;
  int violations = 0;
  double worst_slack = 0.0;  // max over comparisons of ||partial_s|| - ||partial_r||
};

/// Disjoint-support basic-sequence inequality with constant C = 1:
/// partial-sum norms are nondecreasing in the number of terms.
BasicCheckReport disjoint_basic_check(const SpaceSpec& spec,
                                      const std::vector<StepFunction>& fs, int coeff_trials,
                                      std::uint64_t seed = kDefaultSeed);

enum class StrictSide { Left, Right, Both };

/// Lorentz strict-integrability witnesses: phi = u^p against the family
/// u^(p -/+ 1/n), dispatched to the spaceable constructors.
WitnessBundle strict_lorentz_witness(double p, const WeightFn& w, StrictSide side, int N, int K,
                                     const std::vector<double>& lambdas,
                                     const std::vector<double>& epsilons);

/// Divergence certificate for an arbitrary scale, recomputed from the stored
/// construction (the bundle's own certificates cover only the scales it was
/// built with).
DivergenceCertificate make_divergence(const WitnessBundle& bundle, int family, double epsilon);

/// Bundle view of the order-continuity probe: classifies DivergesAtScale as
/// soon as any family's certificate partial sum reaches the threshold.
OrderContinuityProbe order_continuity_probe(const WitnessBundle& bundle,
                                            const std::vector<double>& scales,
                                            double divergence_threshold);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-derives sequences, masses, partitions, norms, the witness and both
/// certificate families from the bundle's stored data and diffs everything
/// against the stored values at the given relative tolerance.
VerifyReport verify_bundle(const WitnessBundle& bundle, double tol = 1e-9);

}  // namespace olspace

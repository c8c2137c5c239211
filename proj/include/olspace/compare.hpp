#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "olspace/sampling.hpp"
#include "olspace/space.hpp"
#include "olspace/witness.hpp"

namespace olspace {

struct SampleRow {
  double norm_source = 0.0;
  double norm_target = 0.0;
  double bound = 0.0;
  bool violation = false;
};

struct InclusionReport {
  std::string direction;
  ConditionVerdict verdict;
  double constant_used = 0.0;  // norm-inequality constant (max(K,1), or b)
  std::vector<SampleRow> samples;
  int violations = 0;
  // indicator family exhibiting norm-ratio blowup when the condition fails:
  // rows (t, ||chi||_source, ||chi||_target, ratio)
  std::vector<std::array<double, 4>> blowup;
};

/// W2 <= K W1 on (0, gamma] iff Lambda_{phi,w1} embeds in Lambda_{phi,w2}
/// with norm constant max(K, 1). The Delta_2 hypothesis on phi is checked
/// and flagged (not enforced).
InclusionReport inclusion_weight_check(const OrliczFn& phi, const WeightFn& w1, const WeightFn& w2,
                                       double gamma, int n_samples,
                                       std::uint64_t seed = kDefaultSeed);

/// phi1 < phi2 (Global for gamma = inf, AtInfinity otherwise) iff
/// Lambda_{phi2,w} embeds in Lambda_{phi1,w}. The AtInfinity case uses the
/// per-sample constant M*b with M = phi1(u0) (W(gamma) - W(gamma - m(E))) + 1.
InclusionReport inclusion_orlicz_check(const OrliczFn& phi1, const OrliczFn& phi2,
                                       const WeightFn& w, double gamma, int n_samples,
                                       std::uint64_t seed = kDefaultSeed);

/// f = sum n a_n chi with phi1(a_n) > 2^n phi2(n^2 a_n): lies in
/// Lambda_{phi2,w} (modular < 1) but escapes Lambda_{phi1,w}.
WitnessBundle non_inclusion_witness(const OrliczFn& phi1, const OrliczFn& phi2, const WeightFn& w,
                                    double gamma, int n_max,
                                    const std::vector<double>& epsilons);

enum class DssStatus { Dss, NotDss, Inconclusive };

struct DssVerdict {
  DssStatus status = DssStatus::Inconclusive;
  double c = 0.0;  // lower ratio bound when NotDss
  RatioVerdict ratio;
  bool hypothesis_ok = false;  // Delta_2^inf on phi
  std::string note;
};

/// DSS of the inclusion Lambda_{phi,w1}[0,1] -> Lambda_{phi,w2}[0,1]
/// iff lim_{t->0} W2/W1 = 0. Fixed to gamma = 1.
DssVerdict dss_check(const OrliczFn& phi, const WeightFn& w1, const WeightFn& w2);

struct DssCounterexample {
  double k_used = 0.0;
  std::vector<double> sizes;    // t_n
  std::vector<double> norms_w1;
  std::vector<double> norms_w2;
  int violations = 0;
};

/// Disjoint indicator sequence with ||f_n||_{w1} <= K ||f_n||_{w2}; only
/// meaningful when ratio_limit is BoundedBelow.
DssCounterexample dss_counterexample_sequence(const OrliczFn& phi, const WeightFn& w1,
                                              const WeightFn& w2, int n, double t_budget);

struct DominatingWeightResult {
  double support_measure = 0.0;
  double h_end = 0.0;            // H(s) = rho_{phi,w}(f)
  double modular_in_v = 0.0;     // int phi(f*) g w, piecewise closed form
  double closed_form = 0.0;      // 2 sqrt(H(s))
  RatioVerdict ratio;            // samples of W/V at t = 2^-j
  std::vector<double> h_at_breaks;
};

/// g = H^{-1/2} with H(t) = int_0^t phi(f*) w; v = g w dominates w
/// (W/V -> 0) while int phi(f*) v = 2 sqrt(H(s)) stays finite.
DominatingWeightResult dominating_weight(const OrliczFn& phi, const WeightFn& w,
                                         const StepFunction& f, double gamma);

}  // namespace olspace

#pragma once

#include <vector>

#include "olspace/measure.hpp"
#include "olspace/orlicz.hpp"
#include "olspace/weights.hpp"

namespace olspace {

/// The Orlicz-Lorentz space Lambda_{phi,w} on [0, gamma).
struct SpaceSpec {
  double gamma = kInf;
  OrliczFn phi = OrliczFn::power(1.0);
  WeightFn weight = WeightFn::constant(1.0);
};

/// rho_{phi,w}(f) = int phi(f*) w = sum_j phi(v_j) (W(t_j) - W(t_{j-1})).
/// Overflow in phi propagates as the +inf sentinel (a divergence statement).
double modular(const SpaceSpec& spec, const StepFunction& f);

struct NormResult {
  double value = 0.0;             // hi end of the final bracket
  double lo = 0.0, hi = 0.0;      // final root bracket
  double modular_at_value = 0.0;  // rho(f/value), in [1-1e-9, 1] for nonzero f
  int iterations = 0;
};

/// Luxemburg norm inf{eps > 0 : rho(f/eps) <= 1}; the zero function has norm
/// 0 by convention and skips root-finding.
NormResult luxemburg_norm(const SpaceSpec& spec, const StepFunction& f);

struct OrthSubaddReport {
  double rho_f = 0.0, rho_g = 0.0, rho_sum = 0.0;
  bool ok = false;
};

/// Checks rho(f+g) <= rho(f) + rho(g) + 1e-9*scale for disjoint supports.
OrthSubaddReport orth_subadd_check(const SpaceSpec& spec, const StepFunction& f,
                                   const StepFunction& g);

struct OrderContinuityProbe {
  enum class Kind { AllScalesFinite, DivergesAtScale };
  Kind kind = Kind::AllScalesFinite;
  double scale = 0.0;        // diverging scale, when applicable
  double partial_sum = 0.0;  // certificate partial sum at that scale
  std::vector<std::pair<double, double>> modulars;  // (scale, rho(scale*f))
};

/// Finite step functions always classify AllScalesFinite; the computed
/// modulars at each scale are returned for inspection. Witness bundles carry
/// their own divergence certificates (see the witness module).
OrderContinuityProbe order_continuity_probe(const SpaceSpec& spec, const StepFunction& f,
                                            const std::vector<double>& scales,
                                            double divergence_threshold);

}  // namespace olspace

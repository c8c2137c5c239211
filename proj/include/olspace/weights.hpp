#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "olspace/errors.hpp"
#include "olspace/expr.hpp"
#include "olspace/orlicz.hpp"

namespace olspace {

/// Decreasing positive locally-integrable weight w with antiderivative
/// W(t) = int_0^t w. Built-in families have closed-form W and W^{-1};
/// parsed weights use adaptive quadrature over a cached cumulative grid.
class WeightFn {
 public:
  enum class Family { Constant, Power, Pcd, Parsed };

  static WeightFn constant(double c);                 // w = c
  static WeightFn power(double alpha);                // w = t^(alpha-1), alpha in (0,1]
  static WeightFn pcd(std::vector<double> breaks, std::vector<double> values);
  static WeightFn parsed(const std::string& src);     // variable t

  double w(double t) const;
  double big_w(double t) const;
  double big_w_inverse(double target) const;

  Family family() const { return family_; }
  double c() const { return c_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& source() const { return src_; }
  std::string describe() const;

 private:
  Family family_ = Family::Constant;
  double c_ = 1.0;
  double alpha_ = 1.0;
  std::vector<double> breaks_, values_, cum_;  // pcd data
  std::string src_;
  expr::AstPtr ast_;

  struct Cache {
    std::vector<double> t, W;
  };
  std::shared_ptr<const Cache> cache_;  // parsed only

  double quad(double a, double b) const;  // adaptive Simpson of parsed w
  void build_cache();
};

struct WeightValidation {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Positivity and monotonicity on a sampled grid; local integrability near 0;
/// for gamma = inf the divergence of W is only heuristically checkable and is
/// reported as a warning.
WeightValidation validate_weight(const WeightFn& w, double gamma);

enum class PartitionDirection { Downward, Upward };

/// Downward: breakpoints t_0 = t_top > t_1 > ... > t_K with
///   W(t_{k-1}) - W(t_k) = masses[k-1]; requires sum(masses) <= W(t_top).
/// Upward: 0 = t_0 < t_1 < ... < t_K with W(t_k) - W(t_{k-1}) = masses[k-1].
/// Remaining W-mass is tracked through backward tail sums so that deep
/// breakpoints keep full relative accuracy.
std::vector<double> partition_by_mass(const WeightFn& w, double t_top,
                                      const std::vector<double>& masses,
                                      PartitionDirection dir);

struct RatioVerdict {
  enum class Kind { LimitZero, BoundedBelow, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double c = 0.0;  // BoundedBelow: inf over samples
  std::vector<std::pair<double, double>> samples;  // (t, W2(t)/W1(t)) at t = 2^-j
};

/// Behaviour of W2(t)/W1(t) as t -> 0+, sampled down to t = 2^-60.
RatioVerdict ratio_limit(const WeightFn& w1, const WeightFn& w2);

/// sup of W2/W1 over a log grid in (0, t_max]; Holds carries
/// K = sup * (1 + 1e-6).
ConditionVerdict dominance_check(const WeightFn& w1, const WeightFn& w2, double t_max);

}  // namespace olspace

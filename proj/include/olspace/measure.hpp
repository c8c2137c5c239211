#pragma once

#include <limits>
#include <vector>

#include "olspace/errors.hpp"

namespace olspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open interval [lo, hi), lo >= 0, lo < hi. hi may be +inf only for
/// domain descriptors; step-function supports are always finite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Ordered union of pairwise-disjoint half-open intervals. Touching
/// intervals are merged at construction, so adjacent parts always have a gap.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);
  static IntervalSet single(double lo, double hi);

  const std::vector<Interval>& parts() const { return parts_; }
  double measure() const { return measure_; }
  bool empty() const { return parts_.empty(); }
  bool finite() const { return measure_ != kInf; }
  double lo() const;
  double hi() const;

  bool disjoint_from(const IntervalSet& other) const;
  static IntervalSet unite(const IntervalSet& a, const IntervalSet& b);

 private:
  std::vector<Interval> parts_;
  double measure_ = 0.0;
};

struct Piece {
  double value = 0.0;       // strictly positive
  IntervalSet support;      // finite measure
};

/// Finite nonnegative simple function sum(value_i * chi_{E_i}). Canonical
/// form: pieces sorted by value descending, equal values merged, supports
/// pairwise disjoint.
class StepFunction {
 public:
  StepFunction() = default;  // the zero function
  explicit StepFunction(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool zero() const { return pieces_.empty(); }
  double support_measure() const;
  double max_value() const { return pieces_.empty() ? 0.0 : pieces_.front().value; }
  IntervalSet support() const;
  StepFunction scaled(double c) const;  // c > 0

 private:
  std::vector<Piece> pieces_;  // value descending
};

/// Right-continuous nonincreasing step function on [0, t_m):
/// value values[j] on [breakpoints[j-1], breakpoints[j]), breakpoints[−1]=0.
struct DecreasingStep {
  std::vector<double> values;       // strictly decreasing, positive
  std::vector<double> measures;     // measures of the level pieces
  std::vector<double> breakpoints;  // cumulative sums of measures

  StepFunction as_step() const;
  double total_measure() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }
};

/// d_f(lambda) = m({ |f| > lambda }).
double distribution(const StepFunction& f, double lambda);

/// Decreasing rearrangement f*.
DecreasingStep rearrange(const StepFunction& f);

/// Exact equality of distribution functions on the merged value set and at 0.
bool equimeasurable_check(const StepFunction& f, const StepFunction& g);

/// (T_{a,b} f)(t) = f((t-a)/b) restricted to (a, a+b]; f must live in [0,1].
StepFunction dilate(const StepFunction& f, double a, double b);

/// Pointwise sum of two step functions (supports may overlap).
StepFunction step_add(const StepFunction& f, const StepFunction& g);

/// Cut consecutive chunks with the given lengths out of E, left to right.
/// Throws invalid_input if E is exhausted or a cut degenerates in double
/// precision (lo == hi).
std::vector<IntervalSet> carve(const IntervalSet& E, const std::vector<double>& lengths);

namespace detail {
/// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};
}  // namespace detail

}  // namespace olspace

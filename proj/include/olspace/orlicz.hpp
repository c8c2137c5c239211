#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "olspace/errors.hpp"
#include "olspace/expr.hpp"

namespace olspace {

/// Log-spaced sampling grid used by the numerical condition checkers.
struct Grid {
  double lo = 1e-8;
  double hi = 1e8;
  int points = 256;

  std::vector<double> nodes() const;
  Grid refined() const;  // double density, extend one decade each side
  std::string describe() const;
};

/// Orlicz function: convex, phi(0)=0, strictly increasing, unbounded.
class OrliczFn {
 public:
  enum class Family { Power, PowerLog, ExpMinusOne, Spline, Parsed };

  static OrliczFn power(double p);                    // u^p, p >= 1
  static OrliczFn power_log(double p, double q);      // u^p * log(1+u)^q
  static OrliczFn exp_minus_one();                    // e^u - 1
  static OrliczFn spline(std::vector<double> knots, std::vector<double> slopes);
  static OrliczFn parsed(const std::string& src);     // variable u

  /// phi(u); overflow is reported as the +inf sentinel.
  double eval(double u) const;
  /// log(phi(u)); -inf at u = 0. Stable for large u where eval overflows.
  double log_eval(double u) const;
  /// phi^{-1}(y), y > 0 finite, by monotone bisection.
  double inverse(double y) const;

  Family family() const { return family_; }
  double p() const { return p_; }
  double q() const { return q_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& slopes() const { return slopes_; }
  const std::string& source() const { return src_; }
  std::string describe() const;

 private:
  Family family_ = Family::Power;
  double p_ = 1.0, q_ = 0.0;
  std::vector<double> knots_, slopes_, knot_values_;
  // beyond the last knot the slope pattern continues geometrically: segments
  // of length ext_len_ whose slopes grow by ext_ratio_ (ratio of the last two
  // given slopes); a single-slope spline extends linearly
  double ext_ratio_ = 1.0, ext_len_ = 1.0;
  std::string src_;
  expr::AstPtr ast_;
};

struct ValidationIssue {
  std::string kind;  // "zero", "monotonicity", "convexity", "bounded", "domain"
  double u = 0.0;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  std::string grid;
};

/// Numerical enforcement of the Orlicz-function definition on a grid.
ValidationReport validate(const OrliczFn& phi, const Grid& grid = {});

enum class VerdictStatus { Holds, Fails, Inconclusive };

/// Grid-certified decision; Inconclusive is a first-class outcome.
struct ConditionVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::map<std::string, double> constants;  // K, l, b, u0 as applicable
  std::vector<double> witness;              // violating u-values, when Fails
  std::string grid;
};

enum class Regime { Zero, Infinity, Global };
enum class OrderRegime { Global, AtInfinity };

/// Does sup phi(2u)/phi(u) stay finite over the regime window?
ConditionVerdict delta2_check(const OrliczFn& phi, Regime regime, Grid grid = {});

/// Same conclusion through the equivalent (l, K) formulation, l in a small
/// ladder above 1.
ConditionVerdict delta2_lk_check(const OrliczFn& phi, Regime regime, Grid grid = {});

/// phi <= psi(b*) ordering: Global means for all u, AtInfinity means for
/// u >= u0. Searches b over {2^j : j = -20..20}.
ConditionVerdict order_check(const OrliczFn& phi, const OrliczFn& psi, OrderRegime regime,
                             Grid grid = {});

/// For EVERY b the inequality phi(u) <= psi(bu) must hold eventually
/// (Infinity: for u >= u0(b); Zero: for u <= u0(b)).
ConditionVerdict delta_phi_check(const OrliczFn& phi, const OrliczFn& psi, Regime regime,
                                 Grid grid = {});

enum class SeqKind { DeltaPhiInfty, DeltaPhiZero, NonDelta2 };

/// Solutions u_k of the per-index growth inequalities used by the witness
/// constructions. residuals[k] = log of LHS/RHS >= 0 at u_k.
struct IneqSequence {
  SeqKind kind = SeqKind::DeltaPhiInfty;
  std::vector<double> values;
  std::vector<double> residuals;
  double rhs_scale = 1.0;   // extra factor s >= 1 multiplied into the RHS
  int series_index = 0;     // NonDelta2 only: RHS threshold 2^(k+index)
};

/// Increasing u_k with phi_n(u_k) >= rhs_scale * 2^k * phi(k^2 u_k).
IneqSequence find_delta_infty_sequence(const OrliczFn& phi, const OrliczFn& phi_n, int k_max,
                                       double rhs_scale = 1.0);

/// Decreasing u_k -> 0 with phi_n(u_k/k) >= rhs_scale * 2^k * phi(k u_k).
IneqSequence find_delta_zero_sequence(const OrliczFn& phi, const OrliczFn& phi_n, int k_max,
                                      double rhs_scale = 1.0);

/// Increasing u_k with phi((1+1/k) u_k) > 2^(k+series_index) * phi(u_k).
IneqSequence find_non_delta2_sequence(const OrliczFn& phi, int k_max, int series_index = 0);

/// Re-evaluate the defining inequality of a stored sequence from scratch.
/// Returns the per-k log residuals.
std::vector<double> reverify_sequence(const IneqSequence& seq, const OrliczFn& phi,
                                      const OrliczFn* phi_n);

}  // namespace olspace

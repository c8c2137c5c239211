#include "olspace/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "olspace/measure.hpp"

namespace olspace {

WeightFn WeightFn::constant(double c) {
  if (!(c > 0.0) || std::isinf(c)) throw invalid_input("constant weight requires c > 0");
  WeightFn f;
  f.family_ = Family::Constant;
  f.c_ = c;
  return f;
}

WeightFn WeightFn::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw invalid_input("power weight requires alpha in (0,1]");
  WeightFn f;
  f.family_ = Family::Power;
  f.alpha_ = alpha;
  return f;
}

WeightFn WeightFn::pcd(std::vector<double> breaks, std::vector<double> values) {
  if (values.size() != breaks.size() + 1)
    throw invalid_input("pcd weight needs one more value than breakpoints");
  double prev_b = 0.0;
  for (double b : breaks) {
    if (!(b > prev_b)) throw invalid_input("pcd breakpoints must be increasing and positive");
    prev_b = b;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw invalid_input("pcd values must be positive");
    if (i > 0 && values[i] > values[i - 1]) throw invalid_input("pcd values must be decreasing");
  }
  WeightFn f;
  f.family_ = Family::Pcd;
  f.breaks_ = std::move(breaks);
  f.values_ = std::move(values);
  f.cum_.assign(f.breaks_.size() + 1, 0.0);
  double lo = 0.0;
  for (std::size_t i = 0; i < f.breaks_.size(); ++i) {
    f.cum_[i + 1] = f.cum_[i] + f.values_[i] * (f.breaks_[i] - lo);
    lo = f.breaks_[i];
  }
  return f;
}

WeightFn WeightFn::parsed(const std::string& src) {
  WeightFn f;
  f.family_ = Family::Parsed;
  f.src_ = src;
  f.ast_ = expr::parse(src);
  for (const std::string& v : expr::free_variables(*f.ast_))
    if (v != "t") throw invalid_input("weight expression may only use variable t, got " + v);
  f.build_cache();
  return f;
}

double WeightFn::w(double t) const {
  if (!(t > 0.0)) throw invalid_input("weights are evaluated at t > 0");
  switch (family_) {
    case Family::Constant:
      return c_;
    case Family::Power:
      return std::pow(t, alpha_ - 1.0);
    case Family::Pcd: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      return values_[it - breaks_.begin()];
    }
    case Family::Parsed:
      return expr::eval_ast(*ast_, "t", t);
  }
  return 0.0;
}

namespace {

// adaptive Simpson with absolute/relative control
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double WeightFn::quad(double a, double b) const {
  // substitute t = s^m near zero so endpoint singularities t^(alpha-1) with
  // small alpha stay bounded
  if (a == 0.0) {
    double beta = 0.0;  // local exponent of w near 0
    double w1 = w(1e-10), w2 = w(1e-8);
    if (w1 > 0 && w2 > 0) beta = (std::log(w2) - std::log(w1)) / (std::log(1e-8) - std::log(1e-10));
    if (beta <= -1.0 + 1e-6) throw non_integrable("w grows like t^" + std::to_string(beta));
    int m = beta < 0 ? std::min(64, std::max(4, static_cast<int>(std::ceil(1.5 / (1.0 + beta)))))
                     : 1;
    auto g = [&](double s) {
      double t = std::pow(s, m);
      return t == 0.0 ? 0.0 : w(t) * m * std::pow(s, m - 1);
    };
    double shi = std::pow(b, 1.0 / m);
    return adaptive_simpson(g, 0.0, shi, 1e-12 * std::max(1.0, b * w(b)));
  }
  auto g = [&](double t) { return w(t); };
  return adaptive_simpson(g, a, b, 1e-12 * std::max(1e-300, (b - a) * w(b)));
}

void WeightFn::build_cache() {
  auto cache = std::make_shared<Cache>();
  const int n = 1024;
  cache->t.resize(n + 1);
  cache->W.resize(n + 1);
  cache->t[0] = 0.0;
  cache->W[0] = 0.0;
  double llo = std::log10(1e-12), lhi = std::log10(1e9);
  for (int i = 1; i <= n; ++i)
    cache->t[i] = std::pow(10.0, llo + (lhi - llo) * (i - 1) / (n - 1));
  for (int i = 1; i <= n; ++i)
    cache->W[i] = cache->W[i - 1] + quad(cache->t[i - 1], cache->t[i]);
  if (!(cache->W[n] > 0.0) || std::isnan(cache->W[n]))
    throw non_integrable("cumulative weight did not evaluate to a positive value");
  cache_ = cache;
}

double WeightFn::big_w(double t) const {
  if (!(t >= 0.0)) throw invalid_input("W is evaluated at t >= 0");
  if (t == 0.0) return 0.0;
  switch (family_) {
    case Family::Constant:
      return c_ * t;
    case Family::Power:
      return std::pow(t, alpha_) / alpha_;
    case Family::Pcd: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      std::size_t seg = it - breaks_.begin();
      double lo = seg == 0 ? 0.0 : breaks_[seg - 1];
      return cum_[seg] + values_[seg] * (t - lo);
    }
    case Family::Parsed: {
      const Cache& c = *cache_;
      auto it = std::upper_bound(c.t.begin(), c.t.end(), t);
      std::size_t i = (it - c.t.begin()) - 1;
      if (i + 1 >= c.t.size()) return c.W.back() + quad(c.t.back(), t);
      return c.W[i] + quad(c.t[i], t);
    }
  }
  return 0.0;
}

double WeightFn::big_w_inverse(double target) const {
  if (!(target >= 0.0)) throw invalid_input("W^{-1} needs target >= 0");
  if (target == 0.0) return 0.0;
  switch (family_) {
    case Family::Constant:
      return target / c_;
    case Family::Power:
      return std::pow(alpha_ * target, 1.0 / alpha_);
    case Family::Pcd: {
      auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
      std::size_t seg = std::min<std::size_t>(it - cum_.begin(), cum_.size() - 1);
      if (seg > 0) --seg;
      while (seg + 1 < cum_.size() && cum_[seg + 1] < target) ++seg;
      double lo = seg == 0 ? 0.0 : breaks_[seg - 1];
      return lo + (target - cum_[seg]) / values_[seg];
    }
    case Family::Parsed: {
      double lo = 0.0, hi = 1.0;
      int guard = 0;
      while (big_w(hi) < target) {
        hi *= 2.0;
        if (++guard > 1200) throw search_exhausted("W^{-1} bracket");
      }
      double flo = 0.0;
      for (int i = 0; i < 200; ++i) {
        double mid = lo == 0.0 ? hi / 2.0 : std::sqrt(lo * hi);
        double fm = big_w(mid);
        if (fm < target) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (hi - lo <= 1e-14 * hi) break;
      }
      (void)flo;
      return hi;
    }
  }
  return 0.0;
}

std::string WeightFn::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Constant: os << "const " << c_; break;
    case Family::Power: os << "t^" << (alpha_ - 1.0); break;
    case Family::Pcd: os << "piecewise constant, " << values_.size() << " levels"; break;
    case Family::Parsed: os << "expr:" << src_; break;
  }
  return os.str();
}

WeightValidation validate_weight(const WeightFn& w, double gamma) {
  WeightValidation rep;
  double prev = kInf;
  for (int j = -40; j <= 8; ++j) {
    double t = std::pow(2.0, j);
    if (t >= gamma) break;
    double v;
    try {
      v = w.w(t);
    } catch (const error& e) {
      rep.ok = false;
      rep.errors.push_back(std::string("evaluation failed at t=") + std::to_string(t) + ": " +
                           e.what());
      continue;
    }
    if (!(v > 0.0)) {
      rep.ok = false;
      rep.errors.push_back("weight not positive at t=" + std::to_string(t));
    }
    if (v > prev * (1.0 + 1e-9)) {
      rep.ok = false;
      rep.errors.push_back("weight not nonincreasing at t=" + std::to_string(t));
    }
    prev = v;
  }
  try {
    double W1 = w.big_w(std::min(1.0, gamma / 2.0));
    if (!(W1 > 0.0) || std::isinf(W1)) {
      rep.ok = false;
      rep.errors.push_back("W not finite/positive near the origin");
    }
  } catch (const non_integrable& e) {
    rep.ok = false;
    rep.errors.push_back(e.what());
  }
  if (std::isinf(gamma)) {
    double prev_W = 0.0;
    bool grows = true;
    for (int j = 1; j <= 8; ++j) {
      double W = w.big_w(std::pow(10.0, j));
      if (W < prev_W * 1.5) grows = false;
      prev_W = W;
    }
    if (!grows)
      rep.warnings.push_back("W(10^j) appears to stabilize; W(inf)=inf is assumed but not "
                             "certified for this weight");
  }
  return rep;
}

std::vector<double> partition_by_mass(const WeightFn& w, double t_top,
                                      const std::vector<double>& masses,
                                      PartitionDirection dir) {
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (!(masses[i] > 0.0)) throw invalid_input("masses must be positive");

  if (dir == PartitionDirection::Upward) {
    std::vector<double> t{0.0};
    detail::Accumulator cum;
    for (double m : masses) {
      cum.add(m);
      t.push_back(w.big_w_inverse(cum.total()));
    }
    return t;
  }

  double budget = w.big_w(t_top);
  // backward tail sums keep deep targets accurate
  std::vector<double> tails(masses.size() + 1, 0.0);
  for (std::size_t i = masses.size(); i-- > 0;) tails[i] = tails[i + 1] + masses[i];
  if (tails[0] > budget * (1.0 + 1e-9)) {
    detail::Accumulator cum;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      cum.add(masses[i]);
      if (cum.total() > budget * (1.0 + 1e-9))
        throw mass_exceeds_budget(i, cum.total(), budget);
    }
  }
  double base = budget - tails[0];
  if (base <= 1e-9 * budget) base = 0.0;  // masses exhaust the budget
  std::vector<double> t{t_top};
  for (std::size_t k = 1; k <= masses.size(); ++k) {
    double target = base + tails[k];
    double tk = target <= 0.0 ? 0.0 : w.big_w_inverse(target);
    if (!(tk < t.back()))
      throw invalid_input("partition breakpoints degenerate at index " + std::to_string(k));
    t.push_back(tk);
  }
  return t;
}

RatioVerdict ratio_limit(const WeightFn& w1, const WeightFn& w2) {
  RatioVerdict v;
  double min_ratio = kInf;
  for (int j = 0; j <= 60; ++j) {
    double t = std::ldexp(1.0, -j);
    double r = w2.big_w(t) / w1.big_w(t);
    v.samples.emplace_back(t, r);
    min_ratio = std::min(min_ratio, r);
  }
  const std::size_t tail = 33;  // roughly the last 10 decades of 2^-j samples
  bool decreasing = true;
  for (std::size_t i = v.samples.size() - tail; i + 1 < v.samples.size(); ++i)
    if (!(v.samples[i + 1].second <= v.samples[i].second * (1.0 + 1e-12))) decreasing = false;
  bool strictly = v.samples.back().second < v.samples[v.samples.size() - tail].second * 0.999;
  if (decreasing && strictly && v.samples.back().second < 1e-3) {
    v.kind = RatioVerdict::Kind::LimitZero;
  } else if (min_ratio > 1e-6 && !strictly) {
    v.kind = RatioVerdict::Kind::BoundedBelow;
    v.c = min_ratio;
  } else {
    v.kind = RatioVerdict::Kind::Inconclusive;
  }
  return v;
}

ConditionVerdict dominance_check(const WeightFn& w1, const WeightFn& w2, double t_max) {
  ConditionVerdict v;
  Grid g{1e-14, t_max, 256};
  v.grid = g.describe();
  double sup = 0.0, arg = 0.0, prev_sup = -1.0;
  for (int round = 0; round < 4; ++round) {
    sup = 0.0;
    for (double t : g.nodes()) {
      if (t > t_max) break;
      double r = w2.big_w(t) / w1.big_w(t);
      if (r > sup) {
        sup = r;
        arg = t;
      }
    }
    if (std::isinf(sup)) break;
    if (prev_sup > 0.0 && std::abs(sup - prev_sup) < 1e-3 * prev_sup) {
      v.status = VerdictStatus::Holds;
      v.constants["K"] = sup * (1.0 + 1e-6);
      return v;
    }
    prev_sup = sup;
    g.lo /= 100.0;
    g.points *= 2;
  }
  v.status = VerdictStatus::Fails;
  v.witness.push_back(arg);
  v.constants["sup_seen"] = sup;
  return v;
}

}  // namespace olspace

#include "olspace/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace olspace {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const Interval& iv : parts) {
    if (!(iv.lo >= 0.0)) throw invalid_input("interval lo must be >= 0");
    if (!(iv.lo < iv.hi)) throw invalid_input("degenerate or reversed interval");
    if (std::isinf(iv.lo)) throw invalid_input("interval lo must be finite");
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
  detail::Accumulator acc;
  bool infinite = false;
  for (const Interval& iv : parts_) {
    if (std::isinf(iv.hi)) infinite = true;
    else acc.add(iv.length());
  }
  measure_ = infinite ? kInf : acc.total();
}

IntervalSet IntervalSet::single(double lo, double hi) {
  return IntervalSet(std::vector<Interval>{{lo, hi}});
}

double IntervalSet::lo() const {
  if (parts_.empty()) throw invalid_input("empty interval set has no lo");
  return parts_.front().lo;
}

double IntervalSet::hi() const {
  if (parts_.empty()) throw invalid_input("empty interval set has no hi");
  return parts_.back().hi;
}

bool IntervalSet::disjoint_from(const IntervalSet& other) const {
  auto a = parts_.begin();
  auto b = other.parts_.begin();
  while (a != parts_.end() && b != other.parts_.end()) {
    if (a->hi <= b->lo) {
      ++a;
    } else if (b->hi <= a->lo) {
      ++b;
    } else {
      return false;
    }
  }
  return true;
}

IntervalSet IntervalSet::unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.parts_;
  all.insert(all.end(), b.parts_.begin(), b.parts_.end());
  return IntervalSet(std::move(all));
}

StepFunction::StepFunction(std::vector<Piece> pieces) {
  // merge equal-value pieces so structural equality is meaningful
  std::map<double, std::vector<Interval>> by_value;
  for (Piece& p : pieces) {
    if (!(p.value > 0.0) || std::isinf(p.value) || std::isnan(p.value))
      throw invalid_input("piece values must be positive finite");
    if (p.support.empty()) continue;
    auto& dst = by_value[p.value];
    dst.insert(dst.end(), p.support.parts().begin(), p.support.parts().end());
  }
  for (auto& [v, ivs] : by_value) {
    Piece p;
    p.value = v;
    p.support = IntervalSet(std::move(ivs));
    if (!p.support.finite()) throw invalid_input("step function support must have finite measure");
    pieces_.push_back(std::move(p));
  }
  std::reverse(pieces_.begin(), pieces_.end());  // value descending
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!pieces_[i].support.disjoint_from(pieces_[j].support))
        throw invalid_input("piece supports must be pairwise disjoint");
}

double StepFunction::support_measure() const {
  detail::Accumulator acc;
  for (const Piece& p : pieces_) acc.add(p.support.measure());
  return acc.total();
}

IntervalSet StepFunction::support() const {
  IntervalSet s;
  for (const Piece& p : pieces_) s = IntervalSet::unite(s, p.support);
  return s;
}

StepFunction StepFunction::scaled(double c) const {
  if (!(c > 0.0) || std::isinf(c)) throw invalid_input("scale factor must be positive finite");
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps) p.value *= c;
  return StepFunction(std::move(ps));
}

StepFunction DecreasingStep::as_step() const {
  std::vector<Piece> ps;
  double lo = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    ps.push_back({values[j], IntervalSet::single(lo, breakpoints[j])});
    lo = breakpoints[j];
  }
  return StepFunction(std::move(ps));
}

double distribution(const StepFunction& f, double lambda) {
  if (!(lambda >= 0.0)) throw invalid_input("distribution requires lambda >= 0");
  detail::Accumulator acc;
  for (const Piece& p : f.pieces()) {
    if (p.value > lambda) acc.add(p.support.measure());
  }
  return acc.total();
}

DecreasingStep rearrange(const StepFunction& f) {
  DecreasingStep d;
  detail::Accumulator cum;
  for (const Piece& p : f.pieces()) {  // already value descending
    d.values.push_back(p.value);
    d.measures.push_back(p.support.measure());
    cum.add(p.support.measure());
    d.breakpoints.push_back(cum.total());
  }
  return d;
}

bool equimeasurable_check(const StepFunction& f, const StepFunction& g) {
  std::set<double> lambdas{0.0};
  for (const Piece& p : f.pieces()) lambdas.insert(p.value);
  for (const Piece& p : g.pieces()) lambdas.insert(p.value);
  for (double l : lambdas) {
    if (distribution(f, l) != distribution(g, l)) return false;
  }
  return true;
}

StepFunction dilate(const StepFunction& f, double a, double b) {
  if (!(a >= 0.0 && a < 1.0)) throw invalid_input("dilate requires a in [0,1)");
  if (!(b > 0.0 && b <= 1.0 - a)) throw invalid_input("dilate requires b in (0, 1-a]");
  std::vector<Piece> ps;
  for (const Piece& p : f.pieces()) {
    std::vector<Interval> ivs;
    for (const Interval& iv : p.support.parts()) {
      if (iv.lo < 0.0 || iv.hi > 1.0) throw invalid_input("dilate requires support inside [0,1]");
      ivs.push_back({a + b * iv.lo, a + b * iv.hi});
    }
    ps.push_back({p.value, IntervalSet(std::move(ivs))});
  }
  return StepFunction(std::move(ps));
}

StepFunction step_add(const StepFunction& f, const StepFunction& g) {
  struct Seg {
    double lo, hi, v;
  };
  auto flatten = [](const StepFunction& h) {
    std::vector<Seg> out;
    for (const Piece& p : h.pieces())
      for (const Interval& iv : p.support.parts()) out.push_back({iv.lo, iv.hi, p.value});
    std::sort(out.begin(), out.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    return out;
  };
  std::vector<Seg> fs = flatten(f), gs = flatten(g);
  std::set<double> cuts;
  for (const Seg& s : fs) { cuts.insert(s.lo); cuts.insert(s.hi); }
  for (const Seg& s : gs) { cuts.insert(s.lo); cuts.insert(s.hi); }
  auto value_at = [](const std::vector<Seg>& segs, double lo, double hi) {
    for (const Seg& s : segs)
      if (s.lo <= lo && hi <= s.hi) return s.v;
    return 0.0;
  };
  std::map<double, std::vector<Interval>> by_value;
  double prev = 0.0;
  bool have_prev = false;
  for (double c : cuts) {
    if (have_prev && c > prev) {
      double v = value_at(fs, prev, c) + value_at(gs, prev, c);
      if (v > 0.0) by_value[v].push_back({prev, c});
    }
    prev = c;
    have_prev = true;
  }
  std::vector<Piece> ps;
  for (auto& [v, ivs] : by_value) ps.push_back({v, IntervalSet(std::move(ivs))});
  return StepFunction(std::move(ps));
}

std::vector<IntervalSet> carve(const IntervalSet& E, const std::vector<double>& lengths) {
  std::vector<IntervalSet> out;
  std::size_t part = 0;
  double cursor = E.empty() ? 0.0 : E.parts().front().lo;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    double need = lengths[i];
    if (!(need > 0.0)) throw invalid_input("carve lengths must be positive");
    std::vector<Interval> got;
    while (need > 0.0) {
      if (part >= E.parts().size())
        throw invalid_input("carve: interval set exhausted at piece " + std::to_string(i));
      const Interval& iv = E.parts()[part];
      if (cursor < iv.lo) cursor = iv.lo;
      double avail = iv.hi - cursor;
      if (avail <= 0.0) {
        ++part;
        continue;
      }
      double take = std::min(avail, need);
      double hi = cursor + take;
      if (!(hi > cursor))
        throw invalid_input("carve: piece " + std::to_string(i) +
                            " degenerates at this position in double precision");
      got.push_back({cursor, hi});
      need -= take;
      if (take == avail && need > 0.0) {
        ++part;
        cursor = part < E.parts().size() ? E.parts()[part].lo : cursor;
      } else {
        cursor = hi;
      }
    }
    out.emplace_back(std::move(got));
  }
  return out;
}

}  // namespace olspace

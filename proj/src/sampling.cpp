#include "olspace/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace olspace {

namespace {

std::vector<double> distinct_log_uniform(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  std::set<double> vals;
  while (static_cast<int>(vals.size()) < n) vals.insert(std::exp(dist(rng)));
  return {vals.begin(), vals.end()};
}

}  // namespace

StepFunction StepSampler::sample(std::uint64_t index) {
  auto rng = rng_for(index);
  double span = std::min(gamma_, 1.0);
  std::uniform_int_distribution<int> npieces(1, 8);
  int m = npieces(rng);
  // 2m sorted cut points give m disjoint intervals
  std::uniform_real_distribution<double> cut(0.0, span);
  std::vector<double> cuts;
  while (static_cast<int>(cuts.size()) < 2 * m) {
    double c = cut(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values = distinct_log_uniform(rng, m, 1e-3, 1e3);
  std::shuffle(values.begin(), values.end(), rng);
  std::vector<Piece> ps;
  for (int i = 0; i < m; ++i)
    ps.push_back({values[i], IntervalSet::single(cuts[2 * i], cuts[2 * i + 1])});
  return StepFunction(std::move(ps));
}

StepFunction StepSampler::sample_dyadic(std::uint64_t index) {
  auto rng = rng_for(index);
  const double unit = std::ldexp(1.0, -20);
  const std::int64_t cells = static_cast<std::int64_t>(std::min(gamma_, 1.0) / unit);
  std::uniform_int_distribution<int> npieces(1, 8);
  int m = npieces(rng);
  std::uniform_int_distribution<std::int64_t> cell(0, cells);
  std::set<std::int64_t> cut_set;
  while (static_cast<int>(cut_set.size()) < 2 * m) cut_set.insert(cell(rng));
  std::vector<std::int64_t> cuts(cut_set.begin(), cut_set.end());
  std::vector<double> values = distinct_log_uniform(rng, m, 1e-3, 1e3);
  std::vector<Piece> ps;
  for (int i = 0; i < m; ++i)
    ps.push_back({values[i],
                  IntervalSet::single(cuts[2 * i] * unit, cuts[2 * i + 1] * unit)});
  return StepFunction(std::move(ps));
}

StepFunction StepSampler::equimeasurable_shuffle(const StepFunction& f, std::uint64_t index) {
  auto rng = rng_for(index ^ 0xABCDEFull);
  const double unit = std::ldexp(1.0, -20);
  double span = std::min(gamma_, 1.0);
  double total = f.support_measure();
  std::int64_t slack =
      std::max<std::int64_t>(0, static_cast<std::int64_t>((span - total) / unit) - 1);
  std::vector<std::size_t> order(f.pieces().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<std::int64_t> gap(0, slack / (order.size() + 1));
  std::vector<Piece> ps;
  double cursor = 0.0;
  for (std::size_t i : order) {
    const Piece& p = f.pieces()[i];
    double len = p.support.measure();
    cursor += gap(rng) * unit;
    ps.push_back({p.value, IntervalSet::single(cursor, cursor + len)});
    cursor += len;
  }
  return StepFunction(std::move(ps));
}

}  // namespace olspace

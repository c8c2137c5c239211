#include "olspace/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace olspace::io {

namespace {

json number(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return json(x);
}

double number_from(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw invalid_input("expected a number, got string '" + s + "'");
  }
  return j.get<double>();
}

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<double> vec_from(const json& j) {
  std::vector<double> out;
  for (const json& x : j) out.push_back(number_from(x));
  return out;
}

}  // namespace

json to_json(const IntervalSet& s) {
  json a = json::array();
  for (const Interval& iv : s.parts()) a.push_back(json::array({iv.lo, number(iv.hi)}));
  return a;
}

IntervalSet interval_set_from_json(const json& j) {
  std::vector<Interval> parts;
  for (const json& iv : j) parts.push_back({number_from(iv.at(0)), number_from(iv.at(1))});
  return IntervalSet(std::move(parts));
}

json to_json(const StepFunction& f) {
  json pieces = json::array();
  for (const Piece& p : f.pieces()) {
    json jp;
    jp["value"] = p.value;
    jp["intervals"] = to_json(p.support);
    pieces.push_back(std::move(jp));
  }
  json out;
  out["pieces"] = std::move(pieces);
  return out;
}

StepFunction step_from_json(const json& j) {
  std::vector<Piece> ps;
  for (const json& jp : j.at("pieces"))
    ps.push_back({jp.at("value").get<double>(), interval_set_from_json(jp.at("intervals"))});
  return StepFunction(std::move(ps));
}

json to_json(const DecreasingStep& d) {
  json out;
  out["values"] = vec(d.values);
  out["breakpoints"] = vec(d.breakpoints);
  return out;
}

json to_json(const OrliczFn& phi) {
  json out;
  switch (phi.family()) {
    case OrliczFn::Family::Power:
      out["family"] = "power";
      out["p"] = phi.p();
      break;
    case OrliczFn::Family::PowerLog:
      out["family"] = "powerlog";
      out["p"] = phi.p();
      out["q"] = phi.q();
      break;
    case OrliczFn::Family::ExpMinusOne:
      out["family"] = "expm1";
      break;
    case OrliczFn::Family::Spline:
      out["family"] = "spline";
      out["knots"] = vec(phi.knots());
      out["slopes"] = vec(phi.slopes());
      break;
    case OrliczFn::Family::Parsed:
      out["family"] = "expr";
      out["src"] = phi.source();
      break;
  }
  return out;
}

OrliczFn orlicz_from_json(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  if (fam == "power") return OrliczFn::power(j.at("p").get<double>());
  if (fam == "powerlog") return OrliczFn::power_log(j.at("p").get<double>(), j.at("q").get<double>());
  if (fam == "expm1") return OrliczFn::exp_minus_one();
  if (fam == "spline") return OrliczFn::spline(vec_from(j.at("knots")), vec_from(j.at("slopes")));
  if (fam == "expr") return OrliczFn::parsed(j.at("src").get<std::string>());
  throw invalid_input("unknown Orlicz family '" + fam + "'");
}

json to_json(const WeightFn& w) {
  json out;
  switch (w.family()) {
    case WeightFn::Family::Constant:
      out["family"] = "constant";
      out["c"] = w.c();
      break;
    case WeightFn::Family::Power:
      out["family"] = "power";
      out["alpha"] = w.alpha();
      break;
    case WeightFn::Family::Pcd:
      out["family"] = "pcd";
      out["breaks"] = vec(w.breaks());
      out["values"] = vec(w.values());
      break;
    case WeightFn::Family::Parsed:
      out["family"] = "expr";
      out["src"] = w.source();
      break;
  }
  return out;
}

WeightFn weight_from_json(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  if (fam == "constant") return WeightFn::constant(j.at("c").get<double>());
  if (fam == "power") return WeightFn::power(j.at("alpha").get<double>());
  if (fam == "pcd") return WeightFn::pcd(vec_from(j.at("breaks")), vec_from(j.at("values")));
  if (fam == "expr") return WeightFn::parsed(j.at("src").get<std::string>());
  throw invalid_input("unknown weight family '" + fam + "'");
}

json to_json(const SpaceSpec& spec) {
  json out;
  out["gamma"] = number(spec.gamma);
  out["phi"] = to_json(spec.phi);
  out["w"] = to_json(spec.weight);
  return out;
}

SpaceSpec spec_from_json(const json& j) {
  return SpaceSpec{number_from(j.at("gamma")), orlicz_from_json(j.at("phi")),
                   weight_from_json(j.at("w"))};
}

json to_json(const NormResult& r) {
  json out;
  out["value"] = r.value;
  out["modular_at_value"] = r.modular_at_value;
  out["bracket"] = json::array({r.lo, r.hi});
  out["iterations"] = r.iterations;
  return out;
}

json to_json(const ConditionVerdict& v) {
  json out;
  out["status"] = v.status == VerdictStatus::Holds   ? "holds"
                  : v.status == VerdictStatus::Fails ? "fails"
                                                     : "inconclusive";
  json c;
  for (const auto& [k, val] : v.constants) c[k] = number(val);
  out["constants"] = std::move(c);
  out["witness"] = vec(v.witness);
  out["grid"] = v.grid;
  return out;
}

json to_json(const RatioVerdict& v) {
  json out;
  out["kind"] = v.kind == RatioVerdict::Kind::LimitZero      ? "limit_zero"
                : v.kind == RatioVerdict::Kind::BoundedBelow ? "bounded_below"
                                                             : "inconclusive";
  if (v.kind == RatioVerdict::Kind::BoundedBelow) out["c"] = v.c;
  json samples = json::array();
  for (const auto& [t, r] : v.samples) samples.push_back(json::array({t, number(r)}));
  out["samples"] = std::move(samples);
  return out;
}

json to_json(const InclusionReport& r) {
  json out;
  out["direction"] = r.direction;
  out["condition"] = to_json(r.verdict);
  out["constant_used"] = r.constant_used;
  json samples = json::array();
  for (const SampleRow& row : r.samples) {
    json jr;
    jr["norm_source"] = row.norm_source;
    jr["norm_target"] = row.norm_target;
    jr["bound"] = row.bound;
    jr["violation"] = row.violation;
    samples.push_back(std::move(jr));
  }
  out["samples"] = std::move(samples);
  out["violations"] = r.violations;
  if (!r.blowup.empty()) {
    json blow = json::array();
    for (const auto& row : r.blowup)
      blow.push_back(json::array({row[0], row[1], row[2], row[3]}));
    out["blowup"] = std::move(blow);
  }
  return out;
}

json to_json(const DssVerdict& v) {
  json out;
  out["verdict"] = v.status == DssStatus::Dss      ? "DSS"
                   : v.status == DssStatus::NotDss ? "NotDSS"
                                                   : "Inconclusive";
  if (v.status == DssStatus::NotDss) out["c"] = v.c;
  out["hypothesis_delta2_inf"] = v.hypothesis_ok;
  if (!v.note.empty()) out["note"] = v.note;
  json samples = json::array();
  for (const auto& [t, r] : v.ratio.samples) samples.push_back(json::array({t, number(r)}));
  out["ratio_samples"] = std::move(samples);
  return out;
}

json to_json(const DssCounterexample& c) {
  json out;
  out["K"] = c.k_used;
  out["sizes"] = vec(c.sizes);
  out["norms_w1"] = vec(c.norms_w1);
  out["norms_w2"] = vec(c.norms_w2);
  out["violations"] = c.violations;
  return out;
}

json to_json(const DominatingWeightResult& r) {
  json out;
  out["kind"] = "dominating-weight";
  out["support_measure"] = r.support_measure;
  out["h_end"] = r.h_end;
  out["modular_in_v"] = r.modular_in_v;
  out["closed_form"] = r.closed_form;
  out["h_at_breaks"] = vec(r.h_at_breaks);
  out["ratio"] = to_json(r.ratio);
  return out;
}

json dominating_weight_record(const OrliczFn& phi, const WeightFn& w, const StepFunction& f,
                              double gamma, const DominatingWeightResult& r) {
  json out = to_json(r);
  out["phi"] = to_json(phi);
  out["w"] = to_json(w);
  out["f"] = to_json(f);
  out["gamma"] = number(gamma);
  return out;
}

DomVerify verify_dominating_weight(const json& record) {
  DomVerify rep;
  DominatingWeightResult fresh = dominating_weight(
      orlicz_from_json(record.at("phi")), weight_from_json(record.at("w")),
      step_from_json(record.at("f")), number_from(record.at("gamma")));
  auto check = [&](const char* field, double got, double expected) {
    double scale = std::max({std::abs(expected), std::abs(got), 1e-300});
    if (std::abs(got - expected) > 1e-9 * scale)
      rep.failures.push_back(std::string(field) + ": recomputed " + std::to_string(got) +
                             " vs stored " + std::to_string(expected));
  };
  check("h_end", fresh.h_end, number_from(record.at("h_end")));
  check("modular_in_v", fresh.modular_in_v, number_from(record.at("modular_in_v")));
  check("closed_form", fresh.closed_form, number_from(record.at("closed_form")));
  if (std::abs(fresh.modular_in_v - fresh.closed_form) >
      1e-8 * std::max(1.0, fresh.closed_form))
    rep.failures.push_back("modular_in_v drifts from 2 sqrt(H)");
  if (number_from(record.at("modular_in_v")) >
      2.0 * std::sqrt(number_from(record.at("h_end"))) + 1e-8)
    rep.failures.push_back("stored modular exceeds the closed-form bound");
  const json& samples = record.at("ratio").at("samples");
  std::size_t i = 0;
  for (const auto& [t, ratio] : fresh.ratio.samples) {
    (void)t;
    if (i >= samples.size()) {
      rep.failures.push_back("ratio sample count mismatch");
      break;
    }
    check("ratio sample", ratio, number_from(samples[i].at(1)));
    ++i;
  }
  if (fresh.ratio.kind != RatioVerdict::Kind::LimitZero)
    rep.failures.push_back("W/V ratio did not certify a zero limit");
  rep.ok = rep.failures.empty();
  return rep;
}

json to_json(const EllInftyReport& r) {
  json out;
  out["max_abs"] = r.max_abs;
  out["norm_tx"] = r.norm_tx;
  out["upper_bound"] = r.upper_bound;
  out["lower_bound"] = r.lower_bound;
  out["probe_modular"] = number(r.probe_modular);
  out["upper_ok"] = r.upper_ok;
  out["lower_ok"] = r.lower_ok;
  return out;
}

namespace {

const char* kind_name(BundleKind k) {
  switch (k) {
    case BundleKind::SpaceableInfty: return "spaceable-inf";
    case BundleKind::SpaceableZero: return "spaceable-zero";
    case BundleKind::SpaceableMixed: return "spaceable-mixed";
    case BundleKind::NonOrderContinuous: return "non-oc";
    case BundleKind::NonInclusion: return "non-inclusion";
  }
  return "?";
}

BundleKind kind_from(const std::string& s) {
  if (s == "spaceable-inf") return BundleKind::SpaceableInfty;
  if (s == "spaceable-zero") return BundleKind::SpaceableZero;
  if (s == "spaceable-mixed") return BundleKind::SpaceableMixed;
  if (s == "non-oc") return BundleKind::NonOrderContinuous;
  if (s == "non-inclusion") return BundleKind::NonInclusion;
  throw invalid_input("unknown bundle kind '" + s + "'");
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Zero: return "zero";
    case Regime::Infinity: return "infinity";
    case Regime::Global: return "global";
  }
  return "?";
}

Regime regime_from(const std::string& s) {
  if (s == "zero") return Regime::Zero;
  if (s == "infinity") return Regime::Infinity;
  if (s == "global") return Regime::Global;
  throw invalid_input("unknown regime '" + s + "'");
}

const char* seq_kind_name(SeqKind k) {
  switch (k) {
    case SeqKind::DeltaPhiInfty: return "delta-phi-inf";
    case SeqKind::DeltaPhiZero: return "delta-phi-zero";
    case SeqKind::NonDelta2: return "non-delta2";
  }
  return "?";
}

SeqKind seq_kind_from(const std::string& s) {
  if (s == "delta-phi-inf") return SeqKind::DeltaPhiInfty;
  if (s == "delta-phi-zero") return SeqKind::DeltaPhiZero;
  if (s == "non-delta2") return SeqKind::NonDelta2;
  throw invalid_input("unknown sequence kind '" + s + "'");
}

}  // namespace

json to_json(const WitnessBundle& b) {
  json out;
  out["kind"] = kind_name(b.kind);
  out["spec"] = to_json(b.spec);
  out["truncation"] = json::array({static_cast<int>(b.families.size()), b.depth_k});
  json fams = json::array();
  for (const FamilyData& fd : b.families) {
    json jf;
    jf["target"] = to_json(fd.target);
    jf["regime"] = regime_name(fd.regime);
    json seq;
    seq["kind"] = seq_kind_name(fd.seq.kind);
    seq["values"] = vec(fd.seq.values);
    seq["residuals"] = vec(fd.seq.residuals);
    seq["rhs_scale"] = fd.seq.rhs_scale;
    seq["series_index"] = fd.seq.series_index;
    jf["sequence"] = std::move(seq);
    jf["masses"] = vec(fd.masses);
    jf["breakpoints"] = vec(fd.breakpoints);
    json parts = json::array();
    for (const IntervalSet& s : fd.pieces) parts.push_back(to_json(s));
    jf["partition"] = std::move(parts);
    jf["norm"] = fd.norm;
    fams.push_back(std::move(jf));
  }
  out["families"] = std::move(fams);
  out["witness"] = to_json(b.witness);
  json finite = json::array();
  for (const FinitenessCertificate& fc : b.finite) {
    json jc;
    jc["lambda"] = fc.lambda;
    jc["value"] = number(fc.value);
    jc["bound"] = fc.bound;
    jc["tail_starts"] = fc.tail_starts;
    jc["raw_modular"] = number(fc.raw_modular);
    finite.push_back(std::move(jc));
  }
  json divergent = json::array();
  for (const DivergenceCertificate& dc : b.divergent) {
    json jc;
    jc["family"] = dc.family;
    jc["epsilon"] = dc.epsilon;
    jc["tail_start"] = dc.tail_start;
    jc["terms"] = vec(dc.terms);
    jc["partial_sum"] = number(dc.partial_sum);
    divergent.push_back(std::move(jc));
  }
  out["certificates"] = json{{"finite", std::move(finite)}, {"divergent", std::move(divergent)}};
  json meta;
  for (const auto& [k, v] : b.meta) meta[k] = number(v);
  out["meta"] = std::move(meta);
  return out;
}

WitnessBundle bundle_from_json(const json& j) {
  WitnessBundle b;
  b.kind = kind_from(j.at("kind").get<std::string>());
  b.spec = spec_from_json(j.at("spec"));
  b.depth_k = j.at("truncation").at(1).get<int>();
  for (const json& jf : j.at("families")) {
    FamilyData fd;
    fd.target = orlicz_from_json(jf.at("target"));
    fd.regime = regime_from(jf.at("regime").get<std::string>());
    const json& seq = jf.at("sequence");
    fd.seq.kind = seq_kind_from(seq.at("kind").get<std::string>());
    fd.seq.values = vec_from(seq.at("values"));
    fd.seq.residuals = vec_from(seq.at("residuals"));
    fd.seq.rhs_scale = seq.at("rhs_scale").get<double>();
    fd.seq.series_index = seq.at("series_index").get<int>();
    fd.masses = vec_from(jf.at("masses"));
    fd.breakpoints = vec_from(jf.at("breakpoints"));
    for (const json& part : jf.at("partition"))
      fd.pieces.push_back(interval_set_from_json(part));
    fd.norm = jf.at("norm").get<double>();
    // rebuild f_n from the stored sequence and partition
    std::vector<Piece> ps;
    for (std::size_t k = 0; k < fd.pieces.size(); ++k) {
      double v;
      if (b.kind == BundleKind::NonInclusion)
        v = (k + 1.0) * fd.seq.values[k];
      else if (fd.regime == Regime::Infinity && fd.seq.kind == SeqKind::DeltaPhiInfty)
        v = (k + 1.0) * fd.seq.values[k];
      else
        v = fd.seq.values[k];
      ps.push_back({v, fd.pieces[k]});
    }
    fd.fn = StepFunction(std::move(ps));
    b.families.push_back(std::move(fd));
  }
  b.witness = step_from_json(j.at("witness"));
  for (const json& jc : j.at("certificates").at("finite")) {
    FinitenessCertificate fc;
    fc.lambda = jc.at("lambda").get<double>();
    fc.value = number_from(jc.at("value"));
    fc.bound = jc.at("bound").get<double>();
    fc.tail_starts = jc.at("tail_starts").get<std::vector<int>>();
    fc.raw_modular = number_from(jc.at("raw_modular"));
    b.finite.push_back(std::move(fc));
  }
  for (const json& jc : j.at("certificates").at("divergent")) {
    DivergenceCertificate dc;
    dc.family = jc.at("family").get<int>();
    dc.epsilon = jc.at("epsilon").get<double>();
    dc.tail_start = jc.at("tail_start").get<int>();
    dc.terms = vec_from(jc.at("terms"));
    dc.partial_sum = number_from(jc.at("partial_sum"));
    b.divergent.push_back(std::move(dc));
  }
  if (j.contains("meta"))
    for (auto it = j.at("meta").begin(); it != j.at("meta").end(); ++it)
      b.meta[it.key()] = number_from(it.value());
  return b;
}

namespace {

void dump12_impl(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
      out += buf;
      return;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const json& x : j) {
        if (!first) out += ',';
        first = false;
        dump12_impl(x, out);
      }
      out += ']';
      return;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump12_impl(it.value(), out);
      }
      out += '}';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump12(const json& j) {
  std::string out;
  dump12_impl(j, out);
  return out;
}

OrliczFn parse_orlicz_spec(const std::string& text) {
  if (!text.empty() && text.front() == '{') return orlicz_from_json(json::parse(text));
  if (text.rfind("power:", 0) == 0) return OrliczFn::power(std::stod(text.substr(6)));
  if (text.rfind("powerlog:", 0) == 0) {
    std::string rest = text.substr(9);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw invalid_input("powerlog:p,q expected");
    return OrliczFn::power_log(std::stod(rest.substr(0, comma)),
                               std::stod(rest.substr(comma + 1)));
  }
  if (text == "expm1") return OrliczFn::exp_minus_one();
  if (text.rfind("expr:", 0) == 0) return OrliczFn::parsed(text.substr(5));
  return OrliczFn::parsed(text);  // bare expression string
}

WeightFn parse_weight_spec(const std::string& text) {
  if (!text.empty() && text.front() == '{') return weight_from_json(json::parse(text));
  if (text.rfind("const:", 0) == 0) return WeightFn::constant(std::stod(text.substr(6)));
  if (text.rfind("power:", 0) == 0) return WeightFn::power(std::stod(text.substr(6)));
  if (text.rfind("pcd:", 0) == 0) {
    // pcd:b1,b2,...:v1,v2,...
    std::string rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw invalid_input("pcd:breaks:values expected");
    auto parse_list = [](const std::string& s) {
      std::vector<double> out;
      std::istringstream is(s);
      std::string item;
      while (std::getline(is, item, ',')) out.push_back(std::stod(item));
      return out;
    };
    return WeightFn::pcd(parse_list(rest.substr(0, colon)), parse_list(rest.substr(colon + 1)));
  }
  if (text.rfind("expr:", 0) == 0) return WeightFn::parsed(text.substr(5));
  return WeightFn::parsed(text);
}

}  // namespace olspace::io

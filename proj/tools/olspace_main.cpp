#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "olspace/compare.hpp"
#include "olspace/json_io.hpp"
#include "olspace/measure.hpp"
#include "olspace/space.hpp"
#include "olspace/witness.hpp"

namespace {

using olspace::io::json;

double parse_gamma(const std::string& s) {
  if (s == "inf" || s == "infinity") return olspace::kInf;
  return std::stod(s);
}

olspace::IntervalSet parse_interval_set(const std::string& s) {
  if (!s.empty() && s.front() == '[') return olspace::io::interval_set_from_json(json::parse(s));
  auto comma = s.find(',');
  if (comma == std::string::npos) throw olspace::invalid_input("expected lo,hi or JSON intervals");
  double lo = std::stod(s.substr(0, comma));
  std::string hi_s = s.substr(comma + 1);
  double hi = hi_s == "inf" ? olspace::kInf : std::stod(hi_s);
  return olspace::IntervalSet::single(lo, hi);
}

olspace::StepFunction load_step(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw olspace::invalid_input("cannot open step-function file " + path);
  json j;
  in >> j;
  return olspace::io::step_from_json(j);
}

void emit(const json& j, const std::string& out_path, bool lossless) {
  std::string text = lossless ? j.dump(2) : olspace::io::dump12(j);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw olspace::invalid_input("cannot open output file " + out_path);
    out << text << "\n";
  }
}

std::uint64_t resolve_seed(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("OLSPACE_SEED")) return std::strtoull(env, nullptr, 0);
  return olspace::kDefaultSeed;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"olspace: rearrangement calculus, Luxemburg norms and witness "
               "constructions for Orlicz-Lorentz spaces"};
  app.require_subcommand(1);

  std::uint64_t seed = olspace::kDefaultSeed;
  bool seed_given = false;
  double tol = 1e-9;
  int jobs = 1;
  app.add_option("--seed", seed, "sampler seed")->each([&](const std::string&) { seed_given = true; });
  app.add_option("--tol", tol, "verification tolerance override");
  app.add_option("--jobs", jobs, "worker hint (execution is deterministic regardless)");

  std::string phi_s = "power:2", psi_s = "power:2", phi2_s = "power:2";
  std::string w_s = "const:1", w2_s = "const:1";
  std::string gamma_s = "inf", f_path, out_path, e_s = "0,1", regime_s = "global";
  std::vector<std::string> phis_s;
  int K = 40, N = 4, samples = 100, index = 0;
  std::string lambdas_s = "0.5,1,2,4", epsilons_s = "1,2";

  // rearrange
  auto* cmd_re = app.add_subcommand("rearrange", "decreasing rearrangement of a step function");
  cmd_re->add_option("--f", f_path, "step function JSON file")->required();
  cmd_re->add_option("--out", out_path);
  cmd_re->callback([&] {
    emit(olspace::io::to_json(olspace::rearrange(load_step(f_path))), out_path, false);
  });

  // norm / modular
  for (const char* name : {"norm", "modular"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) + " of a step function");
    cmd->add_option("--phi", phi_s, "Orlicz function spec");
    cmd->add_option("--w", w_s, "weight spec");
    cmd->add_option("--gamma", gamma_s, "domain end (number or inf)");
    cmd->add_option("--f", f_path, "step function JSON file")->required();
    cmd->add_option("--out", out_path);
    bool is_norm = std::string(name) == "norm";
    cmd->callback([&, is_norm] {
      olspace::SpaceSpec spec{parse_gamma(gamma_s), olspace::io::parse_orlicz_spec(phi_s),
                              olspace::io::parse_weight_spec(w_s)};
      olspace::StepFunction f = load_step(f_path);
      if (is_norm) {
        emit(olspace::io::to_json(olspace::luxemburg_norm(spec, f)), out_path, false);
      } else {
        json j;
        double m = olspace::modular(spec, f);
        j["modular"] = std::isinf(m) ? json("inf") : json(m);
        emit(j, out_path, false);
      }
    });
  }

  // check group
  auto* cmd_check = app.add_subcommand("check", "growth / order / inclusion / DSS verdicts");
  cmd_check->require_subcommand(1);
  {
    auto* c = cmd_check->add_subcommand("delta2", "Delta_2 condition");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--regime", regime_s, "zero|inf|global");
    c->add_option("--out", out_path);
    c->callback([&] {
      olspace::Regime r = regime_s == "zero"  ? olspace::Regime::Zero
                          : regime_s == "inf" ? olspace::Regime::Infinity
                                              : olspace::Regime::Global;
      emit(olspace::io::to_json(
               olspace::delta2_check(olspace::io::parse_orlicz_spec(phi_s), r)),
           out_path, false);
    });
  }
  {
    auto* c = cmd_check->add_subcommand("order", "phi < psi ordering");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--psi", psi_s)->required();
    c->add_option("--regime", regime_s, "global|at-inf");
    c->add_option("--out", out_path);
    c->callback([&] {
      auto r = regime_s == "at-inf" ? olspace::OrderRegime::AtInfinity
                                    : olspace::OrderRegime::Global;
      emit(olspace::io::to_json(olspace::order_check(olspace::io::parse_orlicz_spec(phi_s),
                                                     olspace::io::parse_orlicz_spec(psi_s), r)),
           out_path, false);
    });
  }
  {
    auto* c = cmd_check->add_subcommand("delta-phi", "Delta_phi(0)/Delta_phi(inf) condition");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--psi", psi_s)->required();
    c->add_option("--regime", regime_s, "zero|inf");
    c->add_option("--out", out_path);
    c->callback([&] {
      auto r = regime_s == "zero" ? olspace::Regime::Zero : olspace::Regime::Infinity;
      emit(olspace::io::to_json(olspace::delta_phi_check(olspace::io::parse_orlicz_spec(phi_s),
                                                         olspace::io::parse_orlicz_spec(psi_s),
                                                         r)),
           out_path, false);
    });
  }
  {
    auto* c = cmd_check->add_subcommand("inclusion-w", "weight-inclusion theorem");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--w1", w_s)->required();
    c->add_option("--w2", w2_s)->required();
    c->add_option("--gamma", gamma_s);
    c->add_option("--samples", samples);
    c->add_option("--out", out_path);
    c->callback([&] {
      emit(olspace::io::to_json(olspace::inclusion_weight_check(
               olspace::io::parse_orlicz_spec(phi_s), olspace::io::parse_weight_spec(w_s),
               olspace::io::parse_weight_spec(w2_s), parse_gamma(gamma_s), samples,
               resolve_seed(seed, seed_given))),
           out_path, false);
    });
  }
  {
    auto* c = cmd_check->add_subcommand("inclusion-phi", "Orlicz-inclusion theorem");
    c->add_option("--phi1", phi_s)->required();
    c->add_option("--phi2", phi2_s)->required();
    c->add_option("--w", w_s);
    c->add_option("--gamma", gamma_s);
    c->add_option("--samples", samples);
    c->add_option("--out", out_path);
    c->callback([&] {
      emit(olspace::io::to_json(olspace::inclusion_orlicz_check(
               olspace::io::parse_orlicz_spec(phi_s), olspace::io::parse_orlicz_spec(phi2_s),
               olspace::io::parse_weight_spec(w_s), parse_gamma(gamma_s), samples,
               resolve_seed(seed, seed_given))),
           out_path, false);
    });
  }
  {
    auto* c = cmd_check->add_subcommand("dss", "disjoint strict singularity of the inclusion");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--w1", w_s)->required();
    c->add_option("--w2", w2_s)->required();
    c->add_option("--out", out_path);
    c->callback([&] {
      auto phi = olspace::io::parse_orlicz_spec(phi_s);
      auto w1 = olspace::io::parse_weight_spec(w_s);
      auto w2 = olspace::io::parse_weight_spec(w2_s);
      olspace::DssVerdict v = olspace::dss_check(phi, w1, w2);
      json j = olspace::io::to_json(v);
      if (v.status == olspace::DssStatus::NotDss)
        j["counterexample"] =
            olspace::io::to_json(olspace::dss_counterexample_sequence(phi, w1, w2, 5, 1.0));
      emit(j, out_path, false);
    });
  }

  // witness group
  auto* cmd_wit = app.add_subcommand("witness", "constructive witnesses with certificates");
  cmd_wit->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--w", w_s);
    c->add_option("--K", K);
    c->add_option("--lambdas", lambdas_s);
    c->add_option("--epsilons", epsilons_s);
    c->add_option("--out", out_path);
  };
  {
    auto* c = cmd_wit->add_subcommand("spaceable-inf", "escape witness under Delta_phi(inf)");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--phis", phis_s, "target families")->required();
    c->add_option("--E", e_s, "finite-measure interval set");
    add_common(c);
    c->callback([&] {
      std::vector<olspace::OrliczFn> phis;
      for (const std::string& s : phis_s) phis.push_back(olspace::io::parse_orlicz_spec(s));
      auto b = olspace::spaceable_witness_infty(
          olspace::io::parse_orlicz_spec(phi_s), phis, olspace::io::parse_weight_spec(w_s),
          parse_interval_set(e_s), K, parse_list(lambdas_s), parse_list(epsilons_s));
      emit(olspace::io::to_json(b), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("spaceable-zero", "escape witness under Delta_phi(0)");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--phis", phis_s, "target families")->required();
    c->add_option("--E", e_s, "infinite-measure interval set, e.g. 0,inf")->required();
    add_common(c);
    c->callback([&] {
      std::vector<olspace::OrliczFn> phis;
      for (const std::string& s : phis_s) phis.push_back(olspace::io::parse_orlicz_spec(s));
      auto b = olspace::spaceable_witness_zero(
          olspace::io::parse_orlicz_spec(phi_s), phis, olspace::io::parse_weight_spec(w_s),
          parse_interval_set(e_s), K, parse_list(lambdas_s), parse_list(epsilons_s));
      emit(olspace::io::to_json(b), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("spaceable-mixed",
                                      "mixed regimes: tag families as spec@inf or spec@zero");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--phis", phis_s, "tagged families, e.g. power:4@inf power:1@zero")->required();
    c->add_option("--E", e_s, "infinite-measure interval set, e.g. 0,inf")->required();
    add_common(c);
    c->callback([&] {
      std::vector<olspace::TaggedOrlicz> phis;
      for (const std::string& s : phis_s) {
        auto at = s.rfind('@');
        if (at == std::string::npos)
          throw olspace::invalid_input("mixed family needs an @inf or @zero tag: " + s);
        olspace::Regime r = s.substr(at + 1) == "zero" ? olspace::Regime::Zero
                                                       : olspace::Regime::Infinity;
        phis.push_back({olspace::io::parse_orlicz_spec(s.substr(0, at)), r});
      }
      auto b = olspace::spaceable_witness_mixed(
          olspace::io::parse_orlicz_spec(phi_s), phis, olspace::io::parse_weight_spec(w_s),
          parse_interval_set(e_s), K, parse_list(lambdas_s), parse_list(epsilons_s));
      emit(olspace::io::to_json(b), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("non-oc", "non-order-continuous witness (phi not Delta_2)");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--E", e_s);
    c->add_option("--index", index, "series index: modular sums to 2^-index");
    add_common(c);
    c->callback([&] {
      auto b = olspace::non_order_continuous_witness(
          olspace::io::parse_orlicz_spec(phi_s), olspace::io::parse_weight_spec(w_s),
          parse_interval_set(e_s), K, parse_list(epsilons_s), index);
      emit(olspace::io::to_json(b), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("non-inclusion",
                                      "f in Lambda_{phi2,w} escaping Lambda_{phi1,w}");
    c->add_option("--phi1", phi_s)->required();
    c->add_option("--phi2", phi2_s)->required();
    c->add_option("--gamma", gamma_s);
    c->add_option("--N", N, "sequence depth");
    add_common(c);
    c->callback([&] {
      auto b = olspace::non_inclusion_witness(
          olspace::io::parse_orlicz_spec(phi_s), olspace::io::parse_orlicz_spec(phi2_s),
          olspace::io::parse_weight_spec(w_s), parse_gamma(gamma_s), N, parse_list(epsilons_s));
      emit(olspace::io::to_json(b), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("dominating-weight",
                                      "v = g w with w << v and finite modular");
    c->add_option("--phi", phi_s)->required();
    c->add_option("--w", w_s);
    c->add_option("--f", f_path)->required();
    c->add_option("--gamma", gamma_s);
    c->add_option("--out", out_path);
    c->callback([&] {
      auto phi = olspace::io::parse_orlicz_spec(phi_s);
      auto w = olspace::io::parse_weight_spec(w_s);
      auto f = load_step(f_path);
      double gamma = parse_gamma(gamma_s);
      auto r = olspace::dominating_weight(phi, w, f, gamma);
      emit(olspace::io::dominating_weight_record(phi, w, f, gamma, r), out_path, true);
    });
  }
  {
    auto* c = cmd_wit->add_subcommand("lorentz-strict",
                                      "strictly p-integrable witnesses in Lambda_{p,w}");
    double p = 2.0;
    static std::string side_s = "both";
    c->add_option("--p", p)->required();
    c->add_option("--side", side_s, "left|right|both");
    c->add_option("--N", N, "families per construction");
    add_common(c);
    c->callback([&] {
      olspace::StrictSide side = side_s == "left"    ? olspace::StrictSide::Left
                                 : side_s == "right" ? olspace::StrictSide::Right
                                                     : olspace::StrictSide::Both;
      auto b = olspace::strict_lorentz_witness(p, olspace::io::parse_weight_spec(w_s), side, N, K,
                                               parse_list(lambdas_s), parse_list(epsilons_s));
      emit(olspace::io::to_json(b), out_path, true);
    });
  }

  // verify
  std::string bundle_path;
  auto* cmd_verify = app.add_subcommand("verify", "recompute a bundle's certificates and diff");
  cmd_verify->add_option("bundle", bundle_path, "bundle JSON file")->required();

  // export-curve
  auto* cmd_curve = app.add_subcommand("export-curve", "CSV of W-ratio or modular curves");
  {
    cmd_curve->add_option("--w1", w_s);
    cmd_curve->add_option("--w2", w2_s);
    cmd_curve->add_option("--phi", phi_s);
    cmd_curve->add_option("--w", w_s);
    cmd_curve->add_option("--f", f_path);
    cmd_curve->add_option("--gamma", gamma_s);
    cmd_curve->add_option("--points", samples);
  }

  try {
    app.parse(argc, argv);
    if (cmd_verify->parsed()) {
      std::ifstream in(bundle_path);
      if (!in) throw olspace::invalid_input("cannot open bundle " + bundle_path);
      json j;
      in >> j;
      if (j.contains("kind") && j.at("kind") == "dominating-weight") {
        olspace::io::DomVerify rep = olspace::io::verify_dominating_weight(j);
        json out;
        out["ok"] = rep.ok;
        out["failures"] = rep.failures;
        std::cout << olspace::io::dump12(out) << "\n";
        return rep.ok ? 0 : 1;
      }
      olspace::WitnessBundle b = olspace::io::bundle_from_json(j);
      olspace::VerifyReport rep = olspace::verify_bundle(b, tol);
      json out;
      out["ok"] = rep.ok;
      out["failures"] = rep.failures;
      std::cout << olspace::io::dump12(out) << "\n";
      return rep.ok ? 0 : 1;
    }
    if (cmd_curve->parsed()) {
      if (!f_path.empty()) {
        olspace::SpaceSpec spec{parse_gamma(gamma_s), olspace::io::parse_orlicz_spec(phi_s),
                                olspace::io::parse_weight_spec(w_s)};
        olspace::StepFunction f = load_step(f_path);
        std::printf("epsilon,modular\n");
        for (int i = 0; i < samples; ++i) {
          double eps = std::pow(10.0, -2.0 + 4.0 * i / std::max(1, samples - 1));
          double m = olspace::modular(spec, f.scaled(1.0 / eps));
          std::printf("%.12g,%.12g\n", eps, m);
        }
      } else {
        auto w1 = olspace::io::parse_weight_spec(w_s);
        auto w2 = olspace::io::parse_weight_spec(w2_s);
        std::printf("t,W1,W2,ratio\n");
        for (int i = 0; i < samples; ++i) {
          double t = std::pow(2.0, -60.0 * i / std::max(1, samples - 1));
          double W1 = w1.big_w(t), W2 = w2.big_w(t);
          std::printf("%.12g,%.12g,%.12g,%.12g\n", t, W1, W2, W2 / W1);
        }
      }
      return 0;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const olspace::error& e) {
    json err;
    err["error"] = e.what();
    std::cerr << olspace::io::dump12(err) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
    return 3;
  }
  return 0;
}

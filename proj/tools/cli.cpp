#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "helmholtz/comparison.hpp"
#include "helmholtz/errors.hpp"
#include "helmholtz/execution.hpp"
#include "helmholtz/oracle_suite.hpp"
#include "helmholtz/radial_solver.hpp"
#include "helmholtz/reverse.hpp"
#include "helmholtz/special_functions.hpp"
#include "helmholtz/three_ball.hpp"
#include "helmholtz/version.hpp"
#include "svg_plot.hpp"

namespace helmholtz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

struct Common {
  std::string out = "helmholtz_out";
  bool serial = false;
  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_flag("--serial", c.serial, "Run sweeps on the serial reference path");
}

json config_of(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (opt->get_expected_min() == 0) {
      cfg[name] = "false";
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

// -- subcommands -------------------------------------------------------------

struct RadialArgs {
  double kappa = 0.0;
  double m = 0.0;
  double rho_max = 0.0;
  double rtol = 1e-10;
};

int cmd_radial(const RadialArgs& a, const fs::path& dir, std::ostream& out) {
  double rho_max = a.rho_max;
  if (rho_max <= 0.0) {
    rho_max = 4.0 * a.m + 20.0;
    if (a.kappa > 0) rho_max = std::min(rho_max, 0.999 * M_PI / std::sqrt(a.kappa));
  }
  Tolerances tol;
  tol.rtol = a.rtol;
  const RadialProfile profile = integrate_radial(CurvatureContext::normalized(a.kappa), a.m, rho_max, tol);
  {
    std::ofstream f(dir / "radial.csv", std::ios::binary);
    write_profile_csv(f, profile);
  }

  Series s{"log|L|", {}, {}};
  for (std::size_t i = 0; i < profile.nodes().size(); ++i) {
    s.x.push_back(profile.nodes()[i].rho);
    s.y.push_back(profile.node_value(i).L.log_abs());
  }
  write_file(dir / "radial.svg", svg_line_plot("radial profile, m = " + g17(a.m) + ", kappa = " + g17(a.kappa), "rho",
                                               "log |L|", {s}));

  json summary{{"kappa", a.kappa},           {"m", a.m},
               {"rho_max", rho_max},         {"nodes", profile.nodes().size()},
               {"extrema", profile.extrema().size()}, {"zeros", profile.zeros().size()},
               {"handoff", profile.handoff()}};
  int verdict = kPass;
  if (a.kappa == 0.0) {
    // Relative error where J is monotone, relative to the local amplitude past it.
    const BesselTrajectory bessel(a.m, rho_max);
    double worst = 0.0;
    for (std::size_t i = 0; i < profile.nodes().size(); ++i) {
      const double x = profile.nodes()[i].rho;
      if (x <= 0.0) continue;
      const BesselValue j = bessel.at(x);
      const ScaledValue diff = (profile.node_value(i).L - j.J).abs();
      const ScaledValue ref = x <= a.m ? j.J.abs()
                                       : ScaledValue::from_double(std::hypot(j.J.to_double(), j.dJ.to_double()));
      worst = std::max(worst, (diff / ref).to_double());
    }
    summary["max_scaled_deviation_from_bessel"] = worst;
    if (!(worst <= 1e-8)) verdict = kFail;
  }
  write_file(dir / "radial_summary.json", summary.dump(2) + "\n");
  out << "radial: " << profile.nodes().size() << " nodes, " << profile.extrema().size() << " extrema, "
      << profile.zeros().size() << " zeros";
  if (summary.contains("max_scaled_deviation_from_bessel"))
    out << ", max deviation from J_m " << g17(summary["max_scaled_deviation_from_bessel"].get<double>());
  out << '\n';
  return verdict;
}

int cmd_bessel_zero(const std::string& range, const fs::path& dir, std::ostream& out) {
  const auto ls = parse_range(range);
  std::ostringstream csv;
  csv << "l,bracket_lo,bracket_hi,j_l,inside\n";
  Series zeros{"(j_l - l) / l^(1/3)", {}, {}, true};
  Series upper{"bracket end pi + 1", {}, {}};
  int outside = 0;
  for (double l : ls) {
    const ZeroBracket b = first_zero_bracket(l);
    const double j = first_zero(l);
    const bool inside = j > b.lo && j <= b.hi;
    if (!inside) ++outside;
    csv << g17(l) << ',' << g17(b.lo) << ',' << g17(b.hi) << ',' << g17(j) << ',' << (inside ? 1 : 0) << '\n';
    if (l > 0) {
      zeros.x.push_back(l);
      zeros.y.push_back((j - l) / std::cbrt(l));
      upper.x.push_back(l);
      upper.y.push_back(M_PI + 1.0);
    }
  }
  write_file(dir / "bessel_zero.csv", csv.str());
  write_file(dir / "bessel_zero.svg", svg_line_plot("first zeros of J_l", "l", "(j_l - l) / l^(1/3)", {zeros, upper}));
  out << "bessel-zero: " << ls.size() - outside << "/" << ls.size() << " zeros inside their brackets\n";
  return outside == 0 ? kPass : kFail;
}

struct ThreeBallArgs {
  double K = 0.0;
  double alpha = 1.0;
  double r = 0.3;
  std::string kr = "20:200:20";
  std::string policy = "paper_rule";
  std::string pipeline = "radial";
};

int cmd_three_ball(const ThreeBallArgs& a, Exec exec, const fs::path& dir, std::ostream& out) {
  std::vector<double> ks;
  for (double kr : parse_range(a.kr)) ks.push_back(kr / a.r);
  const Pipeline pipe = a.pipeline == "bessel" ? Pipeline::bessel : Pipeline::radial;
  if (a.pipeline != "bessel" && a.pipeline != "radial") throw std::invalid_argument("pipeline must be radial or bessel");
  const GrowthFit fit = growth_fit(a.K, a.r, a.alpha, ks, parse_policy(a.policy), exec, pipe);
  {
    std::ofstream f(dir / "three_ball.csv", std::ios::binary);
    write_growth_csv(f, fit, a.K, a.r);
  }
  Series pts{"log lower bound", {}, {}, true};
  Series line{"least-squares fit", {}, {}};
  for (const auto& s : fit.samples) {
    pts.x.push_back(s.kr);
    pts.y.push_back(s.log_bound);
    line.x.push_back(s.kr);
    line.y.push_back(fit.intercept + fit.slope * s.kr);
  }
  write_file(dir / "three_ball.svg",
             svg_line_plot("three-ball lower bound, K = " + g17(a.K) + ", " + a.policy, "kr", "log C", {pts, line}));
  const json summary{{"K", a.K},
                     {"r", a.r},
                     {"alpha", a.alpha},
                     {"policy", a.policy},
                     {"pipeline", a.pipeline},
                     {"slope", fit.slope},
                     {"slope_per_alpha", fit.slope_per_alpha()},
                     {"intercept", fit.intercept},
                     {"r_squared", fit.r_squared},
                     {"euclidean_predicted_slope", euclidean_predicted_slope()}};
  write_file(dir / "three_ball_summary.json", summary.dump(2) + "\n");
  out << "three-ball: slope " << g17(fit.slope) << ", intercept " << g17(fit.intercept) << ", R^2 "
      << g17(fit.r_squared) << '\n';
  return fit.slope > 0.0 ? kPass : kFail;
}

struct ReverseArgs {
  double K = 0.0;
  double r = 1.0;
  double R1 = 2.0;
  std::string k = "1..60";
  bool h1 = false;
};

int cmd_reverse(const ReverseArgs& a, Exec exec, const fs::path& dir, std::ostream& out) {
  ReverseOptions opts;
  opts.with_h1 = a.h1;
  opts.exec = exec;
  const KSweep sweep = k_sweep(a.K, a.r, a.R1, parse_range(a.k), opts);
  json j = to_json(sweep);
  j["spread"] = sweep.spread();
  if (a.h1) {
    auto& h = j["C_hat_h1"] = json::array();
    for (const auto& rep : sweep.reports) h.push_back(rep.C_hat_h1.to_double());
  }
  write_file(dir / "reverse.json", j.dump(2) + "\n");
  Series s{"C_hat", {}, {}, true};
  for (const auto& rep : sweep.reports) {
    s.x.push_back(rep.k);
    s.y.push_back(rep.C_hat.to_double());
  }
  write_file(dir / "reverse.svg", svg_line_plot("reverse constant, K = " + g17(a.K), "k", "C_hat", {s}));
  const bool ok = sweep.all_certified() && sweep.spread() <= 10.0;
  out << "reverse: max/median " << g17(sweep.spread()) << ", certified " << (sweep.all_certified() ? "yes" : "no")
      << '\n';
  return ok ? kPass : kFail;
}

struct CaccioppoliArgs {
  double K = 0.0;
  double m = 0.0;
  double k = 5.0;
  double r = 1.0;
  double R = 2.0;
  double eps = 0.2;
};

int cmd_caccioppoli(const CaccioppoliArgs& a, const fs::path& dir, std::ostream& out) {
  const CaccioppoliReport rep = caccioppoli_check(CurvatureContext(a.K, a.k), a.m, a.r, a.R, a.eps);
  const json j{{"c_upper", rep.c_upper},
               {"c_lower", rep.c_lower},
               {"upper", to_json(rep.upper)},
               {"lower", to_json(rep.lower)},
               {"verdict", rep.verdict() ? "pass" : "fail"}};
  write_file(dir / "caccioppoli.json", j.dump(2) + "\n");
  out << "caccioppoli: C_upper " << g17(rep.c_upper) << ", C_lower " << g17(rep.c_lower) << '\n';
  return rep.verdict() ? kPass : kFail;
}

struct OracleArgs {
  std::string theorem = "all";
  int count = 100;
  std::uint64_t seed = 1;
};

int cmd_oracle(const OracleArgs& a, const fs::path& dir, std::ostream& out) {
  std::vector<Theorem> which;
  if (a.theorem == "all") which = {Theorem::sturm, Theorem::picone, Theorem::sonin};
  else which = {parse_theorem(a.theorem)};
  json j;
  bool ok = true;
  for (std::size_t i = 0; i < which.size(); ++i) {
    // Distinct streams per theorem so "all" and a single theorem agree.
    const OracleOutcome o = run_oracle_instances(which[i], a.count, a.seed + static_cast<std::uint64_t>(which[i]));
    json reps = json::array();
    for (const auto& r : o.reports) reps.push_back(to_json(r));
    j[to_string(which[i])] = {{"instances", o.instances}, {"passed", o.passed}, {"reports", reps}};
    ok = ok && o.passed == o.instances;
    out << "oracle " << to_string(which[i]) << ": " << o.passed << "/" << o.instances << " pass\n";
  }
  json inj = json::array();
  for (const auto& i : run_injected_violations()) {
    if (a.theorem != "all" && to_string(i.theorem) != a.theorem) continue;
    inj.push_back({{"theorem", to_string(i.theorem)}, {"expected", i.expected}, {"raised", i.raised}});
    ok = ok && i.ok();
    out << "oracle injected " << i.expected << ": " << (i.ok() ? "rejected" : "NOT rejected (" + i.raised + ")")
        << '\n';
  }
  j["injected"] = inj;
  write_file(dir / "oracle.json", j.dump(2) + "\n");
  return ok ? kPass : kFail;
}

struct EquatorArgs {
  std::string n = "2..30";
  double r = 2.0;
  double R1 = 2.6;
};

int cmd_equator(const EquatorArgs& a, Exec exec, const fs::path& dir, std::ostream& out) {
  std::vector<int> ns;
  for (double v : parse_range(a.n)) {
    if (v != std::floor(v)) throw std::invalid_argument("--n takes integers");
    ns.push_back(static_cast<int>(v));
  }
  const auto rows = equator_counterexample(ns, a.r, a.R1, exec);
  std::ostringstream csv;
  csv << "n,k,log_ratio\n";
  std::vector<double> xs, ys;
  bool increasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << rows[i].n << ',' << g17(rows[i].k) << ',' << g17(rows[i].ratio.log_abs()) << '\n';
    xs.push_back(rows[i].n);
    ys.push_back(rows[i].ratio.log_abs());
    if (i > 0 && !(rows[i].ratio > rows[i - 1].ratio)) increasing = false;
  }
  write_file(dir / "equator.csv", csv.str());
  write_file(dir / "equator.svg",
             svg_line_plot("ball-to-annulus mass ratio on the unit sphere", "n", "log ratio", {{"log ratio", xs, ys, true}}));
  double r2 = 0.0;
  if (xs.size() >= 2) r2 = least_squares(xs, ys).r_squared;
  out << "equator: ratio " << (increasing ? "increasing" : "not increasing") << ", log-linear R^2 " << g17(r2) << '\n';
  return increasing && r2 >= 0.98 ? kPass : kFail;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad number '" + s + "' in range '" + text + "'");
    return v;
  };
  std::vector<double> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const double a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (a != std::floor(a) || b != std::floor(b) || b < a) throw std::invalid_argument("range 'a..b' needs integers a <= b");
    for (double v = a; v <= b; v += 1.0) out.push_back(v);
    return out;
  }
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("range 'a:b:c' needs three fields");
    const double a = number(parts[0]), b = number(parts[1]), c = number(parts[2]);
    if (!(c > 0) || b < a) throw std::invalid_argument("range 'a:b:c' needs a <= b and c > 0");
    // Index-based so the values do not accumulate rounding.
    const auto n = static_cast<long>(std::floor((b - a) / c + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * c);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();

  CLI::App app{"Radial Helmholtz solutions on constant-curvature surfaces: three-ball and reverse-inequality experiments",
               "helmholtz_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Common common;

  RadialArgs radial;
  auto* s_radial = app.add_subcommand("radial", "Integrate one radial profile L_{kappa,m}; writes radial.csv");
  s_radial->add_option("--kappa", radial.kappa, "Normalized curvature kappa = K / k^2")->capture_default_str();
  s_radial->add_option("--m", radial.m, "Angular order m >= 0")->required();
  s_radial->add_option("--rho-max", radial.rho_max, "End of the profile in rho = k r (default 4m + 20)");
  s_radial->add_option("--rtol", radial.rtol, "Integrator relative tolerance")->capture_default_str();
  add_common(s_radial, common);

  std::string bessel_range = "1..100";
  auto* s_bz = app.add_subcommand("bessel-zero", "First zeros of J_l against their brackets; writes bessel_zero.csv");
  s_bz->add_option("--l", bessel_range, "Orders: a..b, a:b:step or a list")->capture_default_str();
  add_common(s_bz, common);

  ThreeBallArgs tb;
  auto* s_tb = app.add_subcommand("three-ball", "Growth sweep of the three-ball lower bound; writes three_ball.csv");
  s_tb->add_option("--kappa", tb.K, "Curvature K of the surface (k runs as kr / r)")->capture_default_str();
  s_tb->add_option("--alpha", tb.alpha, "Interpolation exponent in (0, 1]")->capture_default_str();
  s_tb->add_option("--r", tb.r, "Physical radius r")->capture_default_str();
  s_tb->add_option("--kr", tb.kr, "Values of kr: a:b:step, a..b or a list")->capture_default_str();
  s_tb->add_option("--policy", tb.policy, "paper_rule or free_search")
      ->check(CLI::IsMember({"paper_rule", "free_search"}))
      ->capture_default_str();
  s_tb->add_option("--pipeline", tb.pipeline, "radial or bessel (bessel needs K = 0)")
      ->check(CLI::IsMember({"radial", "bessel"}))
      ->capture_default_str();
  add_common(s_tb, common);

  ReverseArgs rv;
  auto* s_rv = app.add_subcommand("reverse", "k-sweep of the reverse three-ball constant; writes reverse.json");
  s_rv->add_option("--kappa", rv.K, "Curvature K of the surface")->capture_default_str();
  s_rv->add_option("--r", rv.r, "Inner radius r")->capture_default_str();
  s_rv->add_option("--R1", rv.R1, "Outer radius R1")->capture_default_str();
  s_rv->add_option("--k", rv.k, "Wave numbers: a..b, a:b:step or a list")->capture_default_str();
  s_rv->add_flag("--h1", rv.h1, "Also compute the H^1 version of the constant");
  add_common(s_rv, common);

  CaccioppoliArgs cc;
  auto* s_cc = app.add_subcommand("caccioppoli", "Realized constants in Caccioppoli's inequality; writes caccioppoli.json");
  s_cc->add_option("--kappa", cc.K, "Curvature K of the surface")->capture_default_str();
  s_cc->add_option("--m", cc.m, "Angular order")->capture_default_str();
  s_cc->add_option("--k", cc.k, "Wave number")->capture_default_str();
  s_cc->add_option("--r", cc.r, "Inner radius of the annulus")->capture_default_str();
  s_cc->add_option("--R", cc.R, "Outer radius of the annulus")->capture_default_str();
  s_cc->add_option("--eps", cc.eps, "Collar width epsilon")->capture_default_str();
  add_common(s_cc, common);

  OracleArgs oc;
  auto* s_oc = app.add_subcommand("oracle", "Randomized comparison-theorem instances; writes oracle.json");
  s_oc->add_option("--theorem", oc.theorem, "sturm, picone, sonin or all")
      ->check(CLI::IsMember({"all", "sturm", "picone", "sonin"}))
      ->capture_default_str();
  s_oc->add_option("--count", oc.count, "Instances per theorem")->check(CLI::PositiveNumber)->capture_default_str();
  s_oc->add_option("--seed", oc.seed, "Random seed")->capture_default_str();
  add_common(s_oc, common);

  EquatorArgs eq;
  auto* s_eq = app.add_subcommand("equator", "Mass ratio of sphere modes concentrating on the equator; writes equator.csv");
  s_eq->add_option("--n", eq.n, "Degrees n: a..b or a list")->capture_default_str();
  s_eq->add_option("--r", eq.r, "Ball radius (between pi/2 and R1)")->capture_default_str();
  s_eq->add_option("--R1", eq.R1, "Outer annulus radius (below pi)")->capture_default_str();
  add_common(s_eq, common);

  std::string manifest_path;
  std::string replay_out;
  auto* s_rp = app.add_subcommand("replay", "Re-run the command recorded in a manifest.json");
  s_rp->add_option("manifest", manifest_path, "Path to manifest.json")->required();
  s_rp->add_option("--out", replay_out, "Override the output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == s_rp) {
    std::ifstream f(manifest_path);
    if (!f) {
      err << "error: cannot read " << manifest_path << '\n';
      return kUsage;
    }
    json manifest;
    try {
      manifest = json::parse(f);
    } catch (const json::exception& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
    auto replay_args = manifest.at("argv").get<std::vector<std::string>>();
    if (!replay_out.empty()) {
      std::vector<std::string> kept;
      for (std::size_t i = 0; i < replay_args.size(); ++i) {
        if (replay_args[i] == "--out") {
          ++i;
          continue;
        }
        if (replay_args[i].rfind("--out=", 0) == 0) continue;
        kept.push_back(replay_args[i]);
      }
      replay_args = std::move(kept);
      replay_args.push_back("--out");
      replay_args.push_back(replay_out);
    }
    return run(replay_args, out, err);
  }

  try {
    const fs::path dir(common.out);
    fs::create_directories(dir);
    const json manifest{{"tool", "helmholtz_lab"},
                        {"version", kVersion},
                        {"subcommand", sub->get_name()},
                        {"argv", args},
                        {"config", config_of(sub)}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    const Exec exec = common.exec();
    if (sub == s_radial) return cmd_radial(radial, dir, out);
    if (sub == s_bz) return cmd_bessel_zero(bessel_range, dir, out);
    if (sub == s_tb) return cmd_three_ball(tb, exec, dir, out);
    if (sub == s_rv) return cmd_reverse(rv, exec, dir, out);
    if (sub == s_cc) return cmd_caccioppoli(cc, dir, out);
    if (sub == s_oc) return cmd_oracle(oc, dir, out);
    if (sub == s_eq) return cmd_equator(eq, exec, dir, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace helmholtz::cli

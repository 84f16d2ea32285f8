#include "sturmkit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "sturmkit/error.hpp"
#include "sturmkit/export.hpp"
#include "sturmkit/format.hpp"
#include "sturmkit/oscillate.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/properties.hpp"
#include "sturmkit/propagate.hpp"
#include "sturmkit/sct.hpp"
#include "sturmkit/theorem1.hpp"
#include "sturmkit/zero_motion.hpp"

namespace sturmkit::cli {

namespace {

using nlohmann::json;

struct Params {
  const RunConfig& cfg;

  bool has(const std::string& name) const { return cfg.parameters.count(name) > 0; }

  const std::string& raw(const std::string& name) const {
    auto it = cfg.parameters.find(name);
    if (it == cfg.parameters.end() || it->second.empty()) throw UsageError("--" + name, "flag is required");
    return it->second.back();
  }

  double real(const std::string& name) const {
    try {
      return evaluate_constant(raw(name));
    } catch (const SpecError& e) {
      throw UsageError("--" + name, std::string("not a number: ") + e.what());
    }
  }

  double real_or(const std::string& name, double fallback) const { return has(name) ? real(name) : fallback; }

  std::vector<double> reals(const std::string& name) const {
    std::vector<double> xs;
    auto it = cfg.parameters.find(name);
    if (it == cfg.parameters.end()) return xs;
    for (const std::string& s : it->second) {
      try {
        xs.push_back(evaluate_constant(s));
      } catch (const SpecError& e) {
        throw UsageError("--" + name, std::string("not a number: ") + e.what());
      }
    }
    return xs;
  }

  std::pair<double, double> pair(const std::string& name) const {
    const std::string& s = raw(name);
    const auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
      throw UsageError("--" + name, "expected two comma-separated values, got '" + s + "'");
    try {
      return {evaluate_constant(s.substr(0, comma)), evaluate_constant(s.substr(comma + 1))};
    } catch (const SpecError& e) {
      throw UsageError("--" + name, std::string("not a number: ") + e.what());
    }
  }

  std::size_t count(const std::string& name, std::size_t fallback, std::size_t minimum) const {
    if (!has(name)) return fallback;
    const std::string& s = raw(name);
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
      n = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError("--" + name, "expected a non-negative integer, got '" + s + "'");
    if (n < minimum) throw UsageError("--" + name, "must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(n);
  }

  double tol() const {
    const double t = real_or("tol", kDefaultTol);
    if (!(t > 0.0) || t >= 1.0) throw UsageError("--tol", "must lie in (0, 1)");
    return t;
  }

  Interval interval(const std::string& name, const Interval& fallback) const {
    if (!has(name)) return fallback;
    const auto [a, b] = pair(name);
    if (!(a < b)) throw UsageError("--" + name, "need a < b");
    return Interval(a, b);
  }

  PiecewisePotential potential(const std::string& name) const {
    const std::string& path = raw(name);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("--" + name, "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_potential_spec(buf.str());
    } catch (const SpecError& e) {
      std::string where;
      if (e.position() != std::string::npos) where = " (byte " + std::to_string(e.position()) + ")";
      throw UsageError("--" + name, path + where + ": " + e.what());
    } catch (const DomainError& e) {
      throw UsageError("--" + name, path + ": " + e.what());
    }
  }

  std::string choice(const std::string& name, std::initializer_list<const char*> allowed) const {
    const std::string& s = raw(name);
    std::string list;
    for (const char* a : allowed) {
      if (s == a) return s;
      list += list.empty() ? a : std::string("|") + a;
    }
    throw UsageError("--" + name, "expected one of " + list + ", got '" + s + "'");
  }
};

void require_inside(const PiecewisePotential& q, const Interval& I, const std::string& flag) {
  if (!q.domain().contains(I))
    throw UsageError(flag, "interval [" + format_real(I.a) + ", " + format_real(I.b) + "] leaves the potential's domain");
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Nested objects become dotted columns, arrays indexed ones.
void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& row) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), row);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), row);
  } else {
    row.emplace_back(prefix, csv_cell(v));
  }
}

void write_report_csv(std::ostream& out, const std::vector<json>& reports) {
  for (std::size_t r = 0; r < reports.size(); ++r) {
    std::vector<std::pair<std::string, std::string>> row;
    flatten(reports[r], "", row);
    if (r == 0) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].first;
      out << '\n';
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].second;
    out << '\n';
  }
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

Format format_of(const RunConfig& cfg, Format natural) { return cfg.format.value_or(natural); }

int expect_check(const Params& p, const std::string& actual, std::initializer_list<const char*> allowed) {
  if (!p.has("expect")) return kExitOk;
  const std::string want = p.choice("expect", allowed);
  if (want == actual) return kExitOk;
  std::cerr << "finding: expected " << want << ", got " << actual << '\n';
  return kExitFinding;
}

IVP make_ivp(const Params& p, const PiecewisePotential& q, double from) {
  const auto [v0, dv0] = p.pair("ic");
  if (!q.domain().contains(from)) throw UsageError("--from", "initial point outside the potential's domain");
  if (v0 == 0.0 && dv0 == 0.0) throw UsageError("--ic", "initial data must be nontrivial");
  return IVP(q, from, v0, dv0);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const PiecewisePotential q = p.potential("potential");
  const double from = p.real_or("from", q.a());
  const double to = p.real_or("to", q.b());
  const double tol = p.tol();
  const std::size_t samples = p.count("samples", 1001, 2);
  const IVP ivp = make_ivp(p, q, from);
  if (!(to > from) || to > q.b()) throw UsageError("--to", "need from < to ≤ b");

  const Trajectory traj = sample_solution(ivp, to, samples, tol);
  if (format_of(cfg, Format::csv) == Format::csv) {
    write_trajectory_csv(out, traj);
  } else {
    json t = json::array(), v = json::array(), dv = json::array();
    for (const State& s : traj.samples) {
      t.push_back(s.t);
      v.push_back(s.v);
      dv.push_back(s.dv);
    }
    write_json(out, {{"method", traj.method == Method::exact ? "exact" : "numeric"},
                     {"accuracy", traj.accuracy},
                     {"t", t},
                     {"v", v},
                     {"dv", dv}});
  }
  return kExitOk;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const PiecewisePotential q = p.potential("potential");
  const Interval I = p.interval("interval", q.domain());
  require_inside(q, I, "--interval");
  const double from = p.real_or("from", I.a);
  if (from > I.a) throw UsageError("--from", "initial point must not lie after the interval start");
  const double tol = p.tol();
  const bool closed = !p.has("open");
  const IVP ivp = make_ivp(p, q, from);

  const ZeroSet zs = locate_zeros(ivp, I, closed, tol);
  if (format_of(cfg, Format::csv) == Format::csv)
    write_zeroset_csv(out, zs);
  else
    write_json(out, zs);
  return kExitOk;
}

int cmd_disconjugate(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const PiecewisePotential q = p.potential("potential");
  const Interval I = p.interval("interval", q.domain());
  require_inside(q, I, "--interval");
  const double tol = p.tol();

  const std::optional<double> conj = first_conjugate_point(q, I.a, I.b, tol);
  std::optional<double> witness;
  if (!conj) witness = zero_free_direction(q, I, tol);
  json j = {{"a", I.a},
            {"b", I.b},
            {"disconjugate", !conj.has_value()},
            {"conjugate_point", conj ? json(*conj) : json(nullptr)},
            {"witness_theta", witness ? json(*witness) : json(nullptr)}};
  if (format_of(cfg, Format::json) == Format::csv)
    write_report_csv(out, {j});
  else
    write_json(out, j);
  return expect_check(p, conj ? "false" : "true", {"true", "false"});
}

int cmd_sct(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const PiecewisePotential q1 = p.potential("q1");
  const PiecewisePotential q2 = p.potential("q2");
  if (!(q1.domain() == q2.domain())) throw UsageError("--q2", "q1 and q2 must share a domain");
  std::optional<Interval> I;
  if (p.has("interval")) {
    I = p.interval("interval", q1.domain());
    require_inside(q1, *I, "--interval");
  }
  const double tol = p.tol();

  const SctVerdict v = sct_verdict(q1, q2, I, tol);
  if (format_of(cfg, Format::json) == Format::csv)
    write_report_csv(out, {json(v)});
  else
    write_json(out, v);
  return expect_check(p, to_string(v.outcome), {"holds", "fails", "not-applicable"});
}

int cmd_converse(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const double eps = p.real("epsilon");
  if (!(eps > 0.0 && eps < std::numbers::pi)) throw UsageError("--epsilon", "must lie in (0, pi)");
  const ConverseReport r = converse_counterexample(eps, p.tol());
  if (format_of(cfg, Format::json) == Format::csv)
    write_report_csv(out, {json(r)});
  else
    write_json(out, r);
  return kExitOk;
}

int cmd_theorem1(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const std::vector<double> eps = p.reals("epsilon");
  if (eps.empty()) throw UsageError("--epsilon", "flag is required");
  for (double e : eps)
    if (!(e > 0.0 && e < 1.0)) throw UsageError("--epsilon", "must lie in (0, 1), got " + format_real(e));
  const bool find = p.has("find-lambda");
  if (find && p.has("lambda")) throw UsageError("--lambda", "cannot be combined with --find-lambda");
  const double lambda = p.real_or("lambda", 0.0);
  if (!std::isfinite(lambda)) throw UsageError("--lambda", "must be finite");

  std::vector<json> reports;
  bool all_zero_free = true;
  for (double e : eps) {
    double lam = lambda;
    double threshold = 0.0;
    if (find) {
      threshold = find_lambda_threshold(e);
      lam = threshold + 1.0;
    }
    const Theorem1Report r = verify_theorem1(e, lam);
    json j = r;
    if (find) j["lambda_threshold"] = threshold;
    all_zero_free = all_zero_free && r.zero_free;
    reports.push_back(std::move(j));
  }
  if (format_of(cfg, Format::json) == Format::csv) {
    out << "epsilon,lambda,c1,c2,min_v,zero_free\n";
    for (const json& r : reports)
      out << csv_cell(r["epsilon"]) << ',' << csv_cell(r["lambda"]) << ',' << csv_cell(r["c1"]) << ','
          << csv_cell(r["c2"]) << ',' << csv_cell(r["min_v"]) << ',' << csv_cell(r["zero_free"]) << '\n';
  } else {
    write_json(out, reports.size() == 1 ? reports.front() : json(reports));
  }
  return expect_check(p, all_zero_free ? "zero-free" : "has-zeros", {"zero-free", "has-zeros"});
}

int cmd_track_zero(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const PiecewisePotential q = p.potential("potential");
  const double from = p.real("lambda-from");
  const double to = p.real("lambda-to");
  if (!(from < to)) throw UsageError("--lambda-to", "need lambda-from < lambda-to");
  const std::size_t steps = p.count("steps", 100, 2);
  const std::size_t index = p.count("index", 0, 0);
  const double tol = p.tol();

  const ZeroTrack track = track_zero(q, from, to, steps, index, tol);
  if (format_of(cfg, Format::csv) == Format::csv)
    write_zerotrack_csv(out, track);
  else
    write_json(out, track);
  return kExitOk;
}

int cmd_epsilon0(const RunConfig& cfg, std::ostream& out) {
  const double e0 = epsilon0();
  if (!cfg.format)
    out << format_real(e0) << '\n';
  else if (*cfg.format == Format::csv)
    out << "epsilon0\n" << format_real(e0) << '\n';
  else
    write_json(out, {{"epsilon0", e0}});
  return kExitOk;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const std::string kind = p.choice("kind", {"theorem1", "delta", "large-M"});
  if (kind == "theorem1") {
    const double eps = p.real("epsilon");
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--epsilon", "must lie in (0, 1)");
    out << serialize_potential_spec(build_theorem1_q2(eps)) << '\n';
  } else if (kind == "delta") {
    const double eps = p.real("epsilon");
    if (!(eps > 0.0 && eps < std::numbers::pi)) throw UsageError("--epsilon", "must lie in (0, pi)");
    const DeltaConstruction c = build_delta_construction(eps);
    std::cerr << "delta = " << format_real(c.delta) << '\n';
    out << serialize_potential_spec(c.q2) << '\n';
  } else {
    const PiecewisePotential q1 = p.potential("q1");
    const Interval J = p.interval("interval", q1.domain());
    require_inside(q1, J, "--interval");
    const LargeMConstruction c = build_large_M_construction(q1, J);
    std::cerr << "M = " << format_real(c.M) << '\n';
    out << serialize_potential_spec(c.q2) << '\n';
  }
  return kExitOk;
}

int cmd_property_sweep(const RunConfig& cfg, std::ostream& out) {
  const Params p{cfg};
  const std::size_t count = p.count("count", 50, 1);
  const std::vector<PropertyResult> results = run_property_sweep(cfg.seed, count);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.failed;

  if (format_of(cfg, Format::json) == Format::csv) {
    out << "suite,passed,failed\n";
    for (const auto& r : results) out << r.name << ',' << r.passed << ',' << r.failed << '\n';
  } else {
    write_json(out, {{"seed", cfg.seed}, {"count", count}, {"suites", results}, {"failed", failed}});
  }
  if (p.has("fatal") && failed > 0) {
    std::cerr << "finding: " << failed << " property case(s) failed\n";
    return kExitFinding;
  }
  return kExitOk;
}

// Attaches a flag whose values land in cfg.parameters[name].
CLI::Option* param(CLI::App* sub, RunConfig& cfg, const std::string& name, const std::string& desc,
                   bool repeatable = false) {
  auto* opt = sub->add_option_function<std::vector<std::string>>(
      "--" + name, [&cfg, name](const std::vector<std::string>& vs) { cfg.parameters[name] = vs; }, desc);
  if (!repeatable) opt->expected(1);
  return opt;
}

CLI::Option* flag(CLI::App* sub, RunConfig& cfg, const std::string& name, const std::string& desc) {
  return sub->add_flag_callback("--" + name, [&cfg, name] { cfg.parameters[name] = {"true"}; }, desc);
}

void common(CLI::App* sub, std::string& format, std::string& output) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", output, "Output path (default: stdout)");
}

struct Subcommand {
  CLI::App* app;
  Command command;
};

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::solve: return cmd_solve(cfg, out);
    case Command::zeros: return cmd_zeros(cfg, out);
    case Command::disconjugate: return cmd_disconjugate(cfg, out);
    case Command::sct: return cmd_sct(cfg, out);
    case Command::converse: return cmd_converse(cfg, out);
    case Command::theorem1: return cmd_theorem1(cfg, out);
    case Command::track_zero: return cmd_track_zero(cfg, out);
    case Command::epsilon0: return cmd_epsilon0(cfg, out);
    case Command::construct: return cmd_construct(cfg, out);
    case Command::property_sweep: return cmd_property_sweep(cfg, out);
  }
  throw InternalError("unknown command");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillation and comparison experiments for v'' + q(t) v = 0", "sturmkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format, output;
  std::vector<Subcommand> subs;

  auto add = [&](const char* name, Command c, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    common(sub, format, output);
    subs.push_back({sub, c});
    return sub;
  };
  auto solve_flags = [&](CLI::App* sub) {
    param(sub, cfg, "potential", "Potential spec file (JSON)");
    param(sub, cfg, "ic", "Initial data v0,dv0");
    param(sub, cfg, "from", "Initial point (default: a)");
    param(sub, cfg, "tol", "Integration tolerance (default 1e-10)");
  };

  CLI::App* solve = add("solve", Command::solve, "Propagate a solution and sample it");
  solve_flags(solve);
  param(solve, cfg, "to", "End point (default: b)");
  param(solve, cfg, "samples", "Number of grid points (default 1001)");

  CLI::App* zeros = add("zeros", Command::zeros, "Locate the zeros of a solution");
  solve_flags(zeros);
  param(zeros, cfg, "interval", "Interval a,b (default: the domain)");
  flag(zeros, cfg, "open", "Exclude zeros at the interval ends");

  CLI::App* disc = add("disconjugate", Command::disconjugate, "Disconjugacy test with conjugate point");
  param(disc, cfg, "potential", "Potential spec file (JSON)");
  param(disc, cfg, "interval", "Interval a,b (default: the domain)");
  param(disc, cfg, "tol", "Integration tolerance");
  param(disc, cfg, "expect", "Exit 1 unless disconjugacy is true|false");

  CLI::App* sct = add("sct", Command::sct, "Comparison verdict for a pair of potentials");
  param(sct, cfg, "q1", "Potential spec for q1");
  param(sct, cfg, "q2", "Potential spec for q2");
  param(sct, cfg, "interval", "Interval a,b (default: first consecutive zeros of q1's solution)");
  param(sct, cfg, "tol", "Integration tolerance");
  param(sct, cfg, "expect", "Exit 1 unless the outcome is holds|fails|not-applicable");

  CLI::App* conv = add("converse", Command::converse, "Counterexample constructions to the converse");
  param(conv, cfg, "epsilon", "Subinterval length, J = [0, epsilon]");
  param(conv, cfg, "tol", "Integration tolerance");

  CLI::App* th1 = add("theorem1", Command::theorem1, "Zero-free solution for q2 = 1 on [0, pi-eps), (1-eps)^2 after");
  param(th1, cfg, "epsilon", "Tail length in (0, 1); repeatable", true);
  param(th1, cfg, "lambda", "Initial slope (default 0)");
  flag(th1, cfg, "find-lambda", "Use lambda = threshold + 1");
  param(th1, cfg, "expect", "Exit 1 unless every solution is zero-free|has-zeros");

  CLI::App* track = add("track-zero", Command::track_zero, "Follow a zero of v(t; lambda) with v(a)=1, v'(a)=lambda");
  param(track, cfg, "potential", "Potential spec file (JSON)");
  param(track, cfg, "lambda-from", "First lambda");
  param(track, cfg, "lambda-to", "Last lambda");
  param(track, cfg, "steps", "Grid intervals (default 100)");
  param(track, cfg, "index", "Which zero, counted from 0 (default 0)");
  param(track, cfg, "tol", "Integration tolerance");

  add("epsilon0", Command::epsilon0, "Root of sin x = x^2 in (0.5, 1.5)");

  CLI::App* cons = add("construct", Command::construct, "Write a potential spec for a construction");
  param(cons, cfg, "kind", "theorem1|delta|large-M");
  param(cons, cfg, "epsilon", "Construction parameter (theorem1, delta)");
  param(cons, cfg, "q1", "Potential spec for q1 (large-M)");
  param(cons, cfg, "interval", "Subinterval J (large-M)");

  CLI::App* sweep = add("property-sweep", Command::property_sweep, "Randomized invariant suites");
  sweep->add_option("--seed", cfg.seed, "RNG seed (default 0)");
  param(sweep, cfg, "count", "Cases per suite (default 50)");
  flag(sweep, cfg, "fatal", "Exit 1 if any case fails");

  auto synopsis = [&]() -> std::string {
    for (const auto& s : subs)
      if (s.app->parsed()) return s.app->help();
    return app.help();
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << synopsis();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << synopsis();
    return kExitUsage;
  }

  for (const auto& s : subs)
    if (s.app->parsed()) cfg.command = s.command;
  if (!format.empty()) cfg.format = format == "csv" ? Format::csv : Format::json;
  if (!output.empty()) cfg.output = output;

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = execute(cfg, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.flag() << ": " << e.what() << "\n\n" << synopsis();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << synopsis();
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumeric;
  }

  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) {
      err << "error: --out: cannot write '" << *cfg.output << "'\n";
      return kExitUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace sturmkit::cli

#include "hartogs/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hartogs/curvature.hpp"
#include "hartogs/error.hpp"
#include "hartogs/geodesic.hpp"
#include "hartogs/hyperbolic.hpp"
#include "hartogs/profile.hpp"
#include "hartogs/sampling.hpp"

namespace hartogs {

namespace {

using json = nlohmann::json;

struct Settings {
  std::string command;
  std::string F;
  std::string b = "inf";
  int n = 2;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  std::string config;
  std::vector<double> dir{1.0, 1.0};
  double length = 10.0;
  int grid = 0;  // 0: command default
  int samples = 100;
  bool relax_monotone = false;
  bool no_timing = false;
  bool trace = false;
};

// Thrown for anything the user has to fix; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using OptionMap = std::map<std::string, CLI::Option*>;

void add_common(CLI::App* sub, Settings& s, OptionMap& opts) {
  opts["F"] = sub->add_option("--F", s.F, "profile expression in t, e.g. \"1 - t\"");
  opts["b"] = sub->add_option("--b", s.b, "domain bound for |z0|^2: a positive real or inf");
  opts["n"] = sub->add_option("--n", s.n, "complex dimension (>= 2)");
  opts["seed"] = sub->add_option("--seed", s.seed, "random seed");
  opts["tol"] = sub->add_option("--tol", s.tol, "tolerance (meaning depends on the command)");
  opts["out"] = sub->add_option("--out", s.out, "write the report to this file");
  opts["format"] = sub->add_option("--format", s.format, "json or csv")
                       ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", s.config, "JSON file with the same keys as the flags");
  opts["relax_monotone"] =
      sub->add_flag("--relax-monotone", s.relax_monotone, "do not require F' <= 0");
  opts["no_timing"] =
      sub->add_flag("--no-timing", s.no_timing, "report wall_time_s as null (byte-stable output)");
}

double parse_bound(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kInf;
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InputError("--b: not a real number or inf: " + text);
  return v;
}

template <class T>
void take(const json& cfg, const char* key, T& target, const OptionMap& opts) {
  if (!cfg.contains(key)) return;
  const auto it = opts.find(key);
  if (it != opts.end() && it->second->count() > 0) return;  // the flag wins
  try {
    target = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config key '") + key + "': " + e.what());
  }
}

void merge_config(Settings& s, const OptionMap& opts) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw InputError("cannot open config file " + s.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config file " + s.config + ": " + e.what());
  }
  if (!cfg.is_object()) throw InputError("config file must hold a JSON object");
  static const std::vector<std::string> known = {
      "F",    "b",      "n",    "seed",    "tol",            "out",       "format",
      "dir",  "length", "grid", "samples", "relax_monotone", "no_timing", "trace"};
  for (const auto& [key, value] : cfg.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InputError("unknown config key '" + key + "'");

  take(cfg, "F", s.F, opts);
  if (cfg.contains("b") && !(opts.count("b") && opts.at("b")->count() > 0)) {
    const json& b = cfg["b"];
    if (b.is_number())
      s.b = b.dump();
    else if (b.is_string())
      s.b = b.get<std::string>();
    else
      throw InputError("config key 'b' must be a number or \"inf\"");
  }
  take(cfg, "n", s.n, opts);
  take(cfg, "seed", s.seed, opts);
  if (cfg.contains("tol") && !(opts.at("tol")->count() > 0)) {
    if (!cfg["tol"].is_number()) throw InputError("config key 'tol' must be a number");
    s.tol = cfg["tol"].get<double>();
  }
  take(cfg, "out", s.out, opts);
  take(cfg, "format", s.format, opts);
  take(cfg, "dir", s.dir, opts);
  take(cfg, "length", s.length, opts);
  take(cfg, "grid", s.grid, opts);
  take(cfg, "samples", s.samples, opts);
  take(cfg, "relax_monotone", s.relax_monotone, opts);
  take(cfg, "no_timing", s.no_timing, opts);
  take(cfg, "trace", s.trace, opts);
  if (s.format != "json" && s.format != "csv") throw InputError("format must be json or csv");
}

json real_or_marker(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json config_echo(const Settings& s) {
  json c;
  c["F"] = s.F;
  c["b"] = s.b;
  c["n"] = s.n;
  c["seed"] = s.seed;
  c["tol"] = s.tol ? json(*s.tol) : json(nullptr);
  c["format"] = s.format;
  c["relax_monotone"] = s.relax_monotone;
  if (s.command == "curvature") c["samples"] = s.samples;
  if (s.command == "geodesic") {
    c["dir"] = s.dir;
    c["length"] = s.length;
  }
  if (s.command == "validate" || s.command == "einstein" || s.command == "classify")
    c["grid"] = s.grid;
  return c;
}

std::string caret_line(std::size_t position) { return std::string(position, ' ') + "^"; }

Profile make_profile(const Settings& s) {
  if (s.F.empty()) throw InputError("--F is required");
  if (s.n < 2) throw InputError("--n must be at least 2");
  const double b = parse_bound(s.b);
  if (!(b > 0.0)) throw InputError("--b must be positive");
  ProfileOptions opt;
  opt.require_nonincreasing = !s.relax_monotone;
  return Profile::parse(s.F, b, s.n, opt);
}

std::size_t grid_or(const Settings& s, std::size_t fallback) {
  if (s.grid < 0 || s.grid == 1) throw InputError("--grid must be at least 2");
  return s.grid == 0 ? fallback : static_cast<std::size_t>(s.grid);
}

double tol_or(const Settings& s, double fallback) {
  const double t = s.tol.value_or(fallback);
  if (!(t > 0.0)) throw InputError("--tol must be positive");
  return t;
}

json points_json(const std::vector<double>& ts) {
  constexpr std::size_t kListed = 16;
  json j;
  j["count"] = ts.size();
  json first = json::array();
  for (std::size_t k = 0; k < std::min(ts.size(), kListed); ++k) first.push_back(ts[k]);
  j["t"] = first;
  return j;
}

// Commands return the result object and the exit code.
struct Outcome {
  json result;
  int code = kExitPass;
  std::string csv;  // geodesic trace when the format is csv
};

void require_admissible(const Profile& p) {
  const ValidationReport v = validate(p);
  if (!v.valid)
    throw InputError("profile is not admissible on [0, b) (run `validate` for details)");
}

Outcome cmd_validate(const Settings& s, const Profile& p) {
  const ValidationReport v = validate(p, grid_or(s, 1024));
  Outcome o;
  json& r = o.result;
  r["valid"] = v.valid;
  r["grid_size"] = v.grid_size;
  r["t_max"] = v.t_max;
  json violations = json::array();
  if (!v.f_nonpositive.empty()) violations.push_back("F <= 0");
  if (!v.f1_positive.empty()) violations.push_back("F' > 0");
  if (!v.kcond_nonnegative.empty()) violations.push_back("(tF'/F)' >= 0");
  if (!v.failures.empty()) violations.push_back("evaluation failure");
  r["violations"] = violations;
  r["f_nonpositive"] = points_json(v.f_nonpositive);
  r["f1_positive"] = points_json(v.f1_positive);
  r["kcond_nonnegative"] = points_json(v.kcond_nonnegative);
  json failures = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(v.failures.size(), 16); ++k)
    failures.push_back({{"t", v.failures[k].t}, {"what", v.failures[k].what}});
  r["evaluation_failures"] = {{"count", v.failures.size()}, {"first", failures}};
  o.code = v.valid ? kExitPass : kExitBreach;
  return o;
}

Outcome cmd_curvature(const Settings& s, const Profile& p) {
  require_admissible(p);
  if (s.samples < 1) throw InputError("--samples must be positive");
  const double tol = tol_or(s, 1e-6);
  std::mt19937_64 rng(s.seed);
  double worst = 0.0;
  double sum = 0.0;
  SlicePoint worst_at;
  for (int k = 0; k < s.samples; ++k) {
    const SlicePoint sp = random_slice_point(p, rng);
    const double K = gauss_curvature_slice(p, sp);
    sum += K;
    if (!(std::abs(K + 0.5) <= worst)) {
      worst = std::abs(K + 0.5);
      worst_at = sp;
    }
  }
  Outcome o;
  o.result["samples"] = s.samples;
  o.result["mean_curvature"] = sum / s.samples;
  o.result["max_deviation_from_minus_half"] = real_or_marker(worst);
  o.result["worst_point"] = {worst_at.u, worst_at.v};
  o.result["tol"] = tol;
  o.result["pass"] = worst < tol;
  o.code = worst < tol ? kExitPass : kExitBreach;
  return o;
}

std::string csv_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string_view stop_name(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::BoundaryHit: return "boundary";
    case StopReason::StepUnderflow: return "step_underflow";
    case StopReason::PrecisionLoss: return "precision_loss";
  }
  return "completed";
}

Outcome cmd_geodesic(const Settings& s, const Profile& p) {
  require_admissible(p);
  if (!(s.length > 0.0)) throw InputError("--length must be positive");
  StepControl ctl;
  ctl.atol = tol_or(s, ctl.atol);
  ctl.rtol = 10.0 * ctl.atol;

  std::array<double, 2> dir{};
  json reduction;
  if (s.dir.size() == 2) {
    dir = {s.dir[0], s.dir[1]};
  } else if (s.dir.size() == 2 * static_cast<std::size_t>(p.n())) {
    std::vector<cplx> w;
    for (std::size_t k = 0; k < s.dir.size(); k += 2) w.emplace_back(s.dir[k], s.dir[k + 1]);
    const SliceReduction red = reduce_to_slice(w);
    dir = red.dir;
    reduction = {{"slice_direction", {dir[0], dir[1]}}, {"theta", red.isometry.theta}};
  } else {
    throw InputError("--dir takes 2 reals (slice) or 2n reals (re/im pairs of a direction in C^n)");
  }
  if (dir[0] == 0.0 && dir[1] == 0.0) throw InputError("--dir must be nonzero");

  const GeodesicTrace tr = integrate_geodesic(p, {0.0, 0.0}, dir, s.length, ctl);
  const SelfIntersectionReport si = tr.samples.size() >= 4
                                        ? self_intersection_check(tr)
                                        : SelfIntersectionReport{true, 0.0, 0.0, 0, 0};
  // distance of the trace from the initial line through the origin
  const double norm = std::hypot(dir[0], dir[1]);
  double line_dev = 0.0;
  for (const auto& smp : tr.samples)
    line_dev = std::max(line_dev, std::abs(smp.point.u * dir[1] - smp.point.v * dir[0]) / norm);

  Outcome o;
  json& r = o.result;
  r["stop_reason"] = stop_name(tr.stop);
  r["boundary_hit"] = tr.stop == StopReason::BoundaryHit;
  r["length_reached"] = tr.length();
  r["samples"] = tr.samples.size();
  r["rejected_steps"] = tr.rejected_steps;
  r["max_energy_drift"] = tr.max_energy_drift();
  r["max_line_deviation"] = line_dev;
  r["end_point"] = {tr.samples.back().point.u, tr.samples.back().point.v};
  r["self_intersection"] = {{"pass", si.pass},
                            {"min_segment_distance", si.min_distance},
                            {"min_ratio", si.min_ratio}};
  if (!reduction.is_null()) r["reduction"] = reduction;
  if (s.trace && s.format == "json") {
    json rows = json::array();
    for (const auto& smp : tr.samples)
      rows.push_back({smp.s, smp.point.u, smp.point.v, smp.du, smp.dv, smp.energy});
    r["trace"] = {{"columns", {"s", "u", "v", "du", "dv", "energy"}}, {"rows", rows}};
  }
  if (s.format == "csv") {
    std::ostringstream csv;
    csv << "s,u,v,du,dv,energy\n";
    for (const auto& smp : tr.samples)
      csv << csv_real(smp.s) << ',' << csv_real(smp.point.u) << ',' << csv_real(smp.point.v) << ','
          << csv_real(smp.du) << ',' << csv_real(smp.dv) << ',' << csv_real(smp.energy) << '\n';
    o.csv = csv.str();
  }
  o.code = si.pass ? kExitPass : kExitBreach;
  return o;
}

json completeness_json(const CompletenessReport& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["integral_value"] = real_or_marker(c.integral_value);
  j["error"] = c.error;
  j["quadrature_intervals"] = c.quadrature_intervals;
  json ladder = json::array();
  for (const auto& t : c.ladder) ladder.push_back({{"u", t.u}, {"integrand", t.integrand}, {"mass", t.mass}});
  j["ladder"] = ladder;
  j["decay"] = c.decay;
  j["note"] = c.note;
  return j;
}

Outcome cmd_completeness(const Settings&, const Profile& p) {
  require_admissible(p);
  const CompletenessReport c = completeness(p);
  Outcome o;
  o.result = completeness_json(c);
  o.code = c.verdict == Verdict::Unknown ? kExitInconclusive : kExitPass;
  return o;
}

json einstein_json(const EinsteinReport& e) {
  return {{"is_einstein", e.is_einstein},
          {"mean_J", e.mean_J},
          {"max_relative_variation", e.max_relative_variation},
          {"grid_size", e.grid_size}};
}

Outcome cmd_einstein(const Settings& s, const Profile& p) {
  require_admissible(p);
  Outcome o;
  o.result = einstein_json(einstein_check(p, grid_or(s, 64)));
  return o;
}

Outcome cmd_classify(const Settings& s, const Profile& p) {
  require_admissible(p);
  const std::size_t grid = grid_or(s, 64);
  const ClassificationResult c = classify_profile(p, grid);
  json params;
  switch (c.family) {
    case ProfileClass::Hyperbolic: params = {{"c1", c.c1}, {"c2", c.c2}}; break;
    case ProfileClass::Spring: params = {{"c", c.c1}, {"k", c.c2}}; break;
    case ProfileClass::PowerPosCurv:
    case ProfileClass::PowerNegCurv: params = {{"c1", c.c1}, {"c2", c.c2}, {"K0", c.K0}}; break;
    case ProfileClass::Generic: params = json::object(); break;
  }
  const CompletenessReport comp = completeness(p);
  Outcome o;
  json& r = o.result;
  r["family"] = to_string(c.family);
  r["parameters"] = params;
  r["fit_residual"] = c.fit_residual;
  r["completeness"] = {{"verdict", to_string(comp.verdict)},
                       {"integral_value", real_or_marker(comp.integral_value)},
                       {"note", comp.note}};
  r["einstein"] = einstein_json(einstein_check(p, grid));
  o.code = comp.verdict == Verdict::Unknown ? kExitInconclusive : kExitPass;
  return o;
}

int emit(const Settings& s, const Outcome& o, const json& report, std::ostream& out,
         std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  const bool csv = s.format == "csv";
  if (s.out.empty()) {
    out << (csv ? o.csv : text);
    return o.code;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << s.out << "\n";
    return kExitInput;
  }
  file << (csv ? o.csv : text);
  // with a CSV trace on disk the JSON summary still goes to the console
  if (csv) out << text;
  return o.code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemannian geometry of Hartogs domains |z0|^2 < b, |z|^2 < F(|z0|^2)",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Settings s;
  std::map<std::string, OptionMap> opts;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, s, opts[name]);
    return sub;
  };
  CLI::App* validate_cmd = add("validate", "certify positivity, monotonicity and pseudoconvexity");
  CLI::App* curvature_cmd = add("curvature", "Gaussian curvature of the slice at random points");
  CLI::App* geodesic_cmd = add("geodesic", "integrate a geodesic from the origin");
  add("completeness", "decide geodesic completeness from the tail integral");
  CLI::App* classify_cmd = add("classify", "profile family, completeness and Einstein dossier");
  CLI::App* einstein_cmd = add("einstein", "constancy of the Monge-Ampere determinant");

  for (CLI::App* sub : {validate_cmd, classify_cmd, einstein_cmd})
    opts[sub->get_name()]["grid"] = sub->add_option("--grid", s.grid, "grid size");
  opts["curvature"]["samples"] =
      curvature_cmd->add_option("--samples", s.samples, "number of random points");
  opts["geodesic"]["dir"] =
      geodesic_cmd->add_option("--dir", s.dir, "initial direction: u v, or re/im pairs in C^n")
          ->expected(2, 64)
          ->delimiter(',');
  opts["geodesic"]["length"] = geodesic_cmd->add_option("--length", s.length, "arc length");
  opts["geodesic"]["trace"] =
      geodesic_cmd->add_flag("--trace", s.trace, "embed the sampled trace in the JSON report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  s.command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    merge_config(s, opts[s.command]);
    if (s.format == "csv" && s.command != "geodesic")
      throw InputError("--format csv is only available for geodesic traces");
    const Profile p = make_profile(s);

    Outcome o;
    if (s.command == "validate") o = cmd_validate(s, p);
    else if (s.command == "curvature") o = cmd_curvature(s, p);
    else if (s.command == "geodesic") o = cmd_geodesic(s, p);
    else if (s.command == "completeness") o = cmd_completeness(s, p);
    else if (s.command == "classify") o = cmd_classify(s, p);
    else o = cmd_einstein(s, p);

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json report;
    report["tool"] = kToolName;
    report["version"] = kToolVersion;
    report["command"] = s.command;
    report["config"] = config_echo(s);
    report["profile"] = {{"expression", p.source()}, {"b", real_or_marker(p.b())}, {"n", p.n()}};
    report["seed"] = s.seed;
    report["wall_time_s"] = s.no_timing ? json(nullptr) : json(elapsed);
    report["result"] = o.result;
    report["exit_code"] = o.code;
    return emit(s, o, report, out, err);
  } catch (const ParseError& e) {
    err << "error: cannot parse profile: " << e.what() << "\n  " << s.F << "\n  "
        << caret_line(e.position()) << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBreach;
  }
}

}  // namespace hartogs

#include "lgv/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgv/emit.hpp"
#include "lgv/errors.hpp"
#include "lgv/functionals.hpp"
#include "lgv/nsit.hpp"
#include "lgv/reproduce.hpp"
#include "lgv/search.hpp"

namespace lgv {
namespace {

using ordered_json = nlohmann::ordered_json;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<SpecFamily> family_of(const std::string& name) {
  if (name == "K") return SpecFamily::StandardK;
  if (name == "K3var") return SpecFamily::VariantK3;
  if (name == "L3var") return SpecFamily::VariantL3;
  return std::nullopt;
}

const char* family_name(SpecFamily fam) {
  switch (fam) {
    case SpecFamily::StandardK: return "K";
    case SpecFamily::VariantK3: return "K3var";
    case SpecFamily::VariantL3: return "L3var";
  }
  return "?";
}

FunctionalSpec build_family(SpecFamily fam, int n) {
  switch (fam) {
    case SpecFamily::StandardK: return FunctionalSpec::standard_K(n);
    case SpecFamily::VariantK3: return FunctionalSpec::variant_K3(n);
    case SpecFamily::VariantL3: return FunctionalSpec::variant_L3(n);
  }
  throw usage_error("unknown spec family");
}

// --spec accepts explicit term syntax ("+[1,2]+[2,3]-[1,3]"), a family
// shortcut with slot count ("K:3", "K3var:4", "L3var:6"), or a bare family
// name when the slot count comes from --n or an n sweep.
struct SpecArgument {
  std::optional<SpecFamily> family;
  std::optional<int> shortcut_n;
  std::optional<FunctionalSpec> literal;
};

SpecArgument parse_spec_argument(const std::string& text) {
  SpecArgument out;
  if (text.find('[') != std::string::npos) {
    try {
      out.literal = parse_spec(text);
    } catch (const contract_error& e) {
      throw usage_error(std::string("bad --spec: ") + e.what());
    }
    return out;
  }
  std::string name = text;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    std::string tail = text.substr(colon + 1);
    size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tail.size() || tail.empty() || n < 2) {
      throw usage_error("bad slot count in --spec shortcut: " + text);
    }
    out.shortcut_n = n;
  }
  out.family = family_of(name);
  if (!out.family) throw usage_error("unrecognized --spec: " + text);
  return out;
}

FunctionalSpec resolve_spec(const SpecArgument& arg, std::optional<int> n_flag) {
  if (arg.literal) {
    if (n_flag) {
      if (*n_flag < arg.literal->n) {
        throw usage_error("--n is below the largest slot index in --spec");
      }
      return FunctionalSpec(*n_flag, arg.literal->terms);
    }
    return *arg.literal;
  }
  if (arg.shortcut_n && n_flag && *arg.shortcut_n != *n_flag) {
    throw usage_error("--n conflicts with the --spec shortcut slot count");
  }
  std::optional<int> n = arg.shortcut_n ? arg.shortcut_n : n_flag;
  if (!n) throw usage_error("--spec shortcut needs a slot count (family:n or --n)");
  return build_family(*arg.family, *n);
}

std::vector<double> parse_coupling_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < token.size() &&
           std::isspace(static_cast<unsigned char>(token[used]))) {
      ++used;
    }
    if (used != token.size() || token.empty()) {
      throw usage_error("bad coupling value in --g: '" + token + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw usage_error("--g needs at least one value");
  return out;
}

// One value broadcasts to every interval; otherwise the count must match.
std::vector<double> fit_couplings(std::vector<double> gs, int n) {
  size_t want = static_cast<size_t>(n - 1);
  if (gs.size() == 1 && want > 1) return std::vector<double>(want, gs[0]);
  if (gs.size() != want) {
    throw usage_error("--g needs 1 value or " + std::to_string(want) +
                      " values for " + std::to_string(n) + " slots");
  }
  return gs;
}

// Ordered record emitted either as a JSON object or a one-row CSV table.
struct Record {
  ordered_json j = ordered_json::object();
  std::vector<std::string> keys;
  std::vector<std::string> cells;

  void add(const std::string& k, const std::string& v) {
    j[k] = v;
    keys.push_back(k);
    cells.push_back(v);
  }
  void add_number(const std::string& k, double v) { add(k, format_number(v)); }
  void add_int(const std::string& k, long long v) {
    j[k] = v;
    keys.push_back(k);
    cells.push_back(std::to_string(v));
  }
  void add_bool(const std::string& k, bool v) {
    j[k] = v;
    keys.push_back(k);
    cells.push_back(v ? "true" : "false");
  }
  void add_numbers(const std::string& k, const std::vector<double>& vs) {
    ordered_json arr = ordered_json::array();
    std::string joined;
    for (size_t i = 0; i < vs.size(); ++i) {
      std::string s = format_number(vs[i]);
      arr.push_back(s);
      if (i) joined += ',';
      joined += s;
    }
    j[k] = arr;
    keys.push_back(k);
    cells.push_back(joined);
  }

  std::string render(Format fmt) const {
    if (fmt == Format::csv) return csv_table(keys, {cells});
    return j.dump(2) + "\n";
  }
};

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw resource_error("cannot open --out path " + out_path);
  f << text;
}

Format parse_format(const std::string& name) {
  return name == "csv" ? Format::csv : Format::json;
}

struct RangeSpec {
  double lo, hi;
  double third;  // point count, or step for slot-count sweeps
};

RangeSpec parse_range(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ':')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) {
      throw usage_error("bad --range component: '" + part + "'");
    }
    vals.push_back(v);
  }
  if (vals.size() != 3) throw usage_error("--range must be lo:hi:count (or lo:hi:step for axis n)");
  return {vals[0], vals[1], vals[2]};
}

void add_bound_fields(Record& rec, const FunctionalSpec& spec, double value,
                      bool with_value_flag) {
  rec.add_int("algebraic_max", spec.term_count());
  if (spec.n <= MAX_ENUM_N) {
    BoundPair b = macrorealist_bound(spec);
    rec.add_number("macrorealist_min", b.macrorealist_min);
    rec.add_number("macrorealist_max", b.macrorealist_max);
    if (with_value_flag) rec.add_bool("violated", value > b.macrorealist_max);
  } else {
    // Enumeration is capped; above it the bounds are not certified here.
    rec.add("macrorealist_min", "n/a");
    rec.add("macrorealist_max", "n/a");
    if (with_value_flag) rec.add("violated", "n/a");
  }
}

struct CommonFlags {
  std::string spec_text;
  std::string g_text;
  double theta = 0.0;
  double phi = 0.0;
  int n = 0;  // 0 means unset
  std::string format = "json";
  std::string out;
};

std::optional<int> n_opt(const CommonFlags& c) {
  if (c.n == 0) return std::nullopt;
  if (c.n < 2) throw usage_error("--n must be at least 2");
  return c.n;
}

int cmd_eval(const CommonFlags& c) {
  FunctionalSpec spec = resolve_spec(parse_spec_argument(c.spec_text), n_opt(c));
  Schedule sched(fit_couplings(parse_coupling_list(c.g_text), spec.n));
  Mat2 rho = density_from_pure(PureState(c.theta, c.phi));
  double value = eval_separate(spec, rho, sched);

  Record rec;
  rec.add("command", "eval");
  rec.add("spec", format_spec(spec));
  rec.add_int("n", spec.n);
  rec.add_numbers("couplings", sched.couplings);
  rec.add_number("theta", c.theta);
  rec.add_number("phi", c.phi);
  rec.add_number("value", value);
  add_bound_fields(rec, spec, value, true);
  write_output(rec.render(parse_format(c.format)), c.out);
  return 0;
}

int cmd_bounds(const CommonFlags& c) {
  FunctionalSpec spec = resolve_spec(parse_spec_argument(c.spec_text), n_opt(c));
  BoundPair b = macrorealist_bound(spec);
  Record rec;
  rec.add("command", "bounds");
  rec.add("spec", format_spec(spec));
  rec.add_int("n", spec.n);
  rec.add_int("terms", spec.term_count());
  rec.add_number("macrorealist_min", b.macrorealist_min);
  rec.add_number("macrorealist_max", b.macrorealist_max);
  rec.add_number("algebraic_max", b.algebraic_max);
  write_output(rec.render(parse_format(c.format)), c.out);
  return 0;
}

int cmd_nsit(const CommonFlags& c) {
  Schedule sched(fit_couplings(parse_coupling_list(c.g_text), 3));
  Mat2 rho = density_from_pure(PureState(c.theta, c.phi));
  DisturbanceReport rep = disturbance_report(rho, sched);
  ViolationCondition std_cond = violation_condition_standard(rho, sched);
  ViolationCondition var_cond = violation_condition_variant(rho, sched);

  Record rec;
  rec.add("command", "nsit");
  rec.add_numbers("couplings", sched.couplings);
  rec.add_number("theta", c.theta);
  rec.add_number("phi", c.phi);
  const char* pair_keys[4] = {"pp", "pm", "mp", "mm"};
  for (int i = 0; i < 4; ++i) rec.add_number(std::string("d1_") + pair_keys[i], rep.d1[i]);
  for (int i = 0; i < 4; ++i) rec.add_number(std::string("d2_") + pair_keys[i], rep.d2[i]);
  for (int i = 0; i < 4; ++i) rec.add_number(std::string("d3_") + pair_keys[i], rep.d3[i]);
  rec.add_number("d12_p", rep.d12[0]);
  rec.add_number("d12_m", rep.d12[1]);
  rec.add_number("alpha", rep.alpha);
  rec.add_number("beta", rep.beta);
  rec.add_number("gamma", rep.gamma);
  rec.add_number("standard_lhs", std_cond.lhs);
  rec.add_number("standard_threshold", std_cond.threshold);
  rec.add_bool("standard_violated", std_cond.violated);
  rec.add_number("variant_lhs", var_cond.lhs);
  rec.add_number("variant_threshold", var_cond.threshold);
  rec.add_bool("variant_violated", var_cond.violated);
  rec.add_number("decomposition_residual", decomposition_check_standard(rho, sched));
  write_output(rec.render(parse_format(c.format)), c.out);
  return 0;
}

int cmd_optimize(const CommonFlags& c, bool unequal, int grid, int /*seed*/) {
  FunctionalSpec spec = resolve_spec(parse_spec_argument(c.spec_text), n_opt(c));
  SearchConfig cfg;
  cfg.equal_couplings = !unequal;
  if (grid > 0) {
    cfg.grid_g = grid;
    cfg.grid_theta = grid;
    cfg.grid_phi = grid;
  }
  ViolationReport rep = optimize(spec, cfg);

  Record rec;
  rec.add("command", "optimize");
  rec.add("spec", format_spec(spec));
  rec.add_int("n", spec.n);
  rec.add_bool("equal_couplings", cfg.equal_couplings);
  rec.add_number("best_value", rep.best_value);
  rec.add_numbers("best_couplings", rep.best_couplings);
  rec.add_number("best_theta", rep.best_theta);
  rec.add_number("best_phi", rep.best_phi);
  rec.add_number("macrorealist_max", rep.macrorealist_max);
  rec.add_number("algebraic_max", rep.algebraic_max);
  rec.add_number("margin", rep.margin);
  rec.add_bool("violated", rep.best_value > rep.macrorealist_max);
  write_output(rec.render(parse_format(c.format)), c.out);
  return 0;
}

int cmd_sweep(const CommonFlags& c, const std::string& axis_name,
              const std::string& range_text) {
  SpecArgument arg = parse_spec_argument(c.spec_text);
  RangeSpec range = parse_range(range_text);

  SweepAxis axis;
  if (axis_name == "g") {
    axis = SweepAxis::g;
  } else if (axis_name == "theta") {
    axis = SweepAxis::theta;
  } else if (axis_name == "phi") {
    axis = SweepAxis::phi;
  } else if (axis_name == "n") {
    axis = SweepAxis::n;
  } else {
    throw usage_error("--axis must be one of g, theta, phi, n");
  }

  std::vector<SweepPoint> points;
  std::string spec_label;
  Record rec;
  rec.add("command", "sweep");
  if (axis == SweepAxis::n) {
    if (!arg.family || arg.shortcut_n || arg.literal) {
      throw usage_error("axis n sweeps take a bare family --spec (K, K3var, L3var)");
    }
    int lo = static_cast<int>(range.lo);
    int hi = static_cast<int>(range.hi);
    int step = static_cast<int>(range.third);
    if (lo != range.lo || hi != range.hi || step != range.third || step < 1) {
      throw usage_error("axis n needs an integer --range lo:hi:step");
    }
    spec_label = family_name(*arg.family);
    rec.add("spec", spec_label);
    rec.add("axis", "n");
    rec.add("coupling_rule", "pi/(2n)");
    rec.add_number("theta", c.theta);
    rec.add_number("phi", c.phi);
    points = sweep_n(*arg.family, lo, hi, step, c.theta, c.phi);
  } else {
    FunctionalSpec spec = resolve_spec(arg, n_opt(c));
    int count = static_cast<int>(range.third);
    if (count != range.third || count < 2) {
      throw usage_error("--range needs an integer point count of at least 2");
    }
    double g_fixed = 0.0;
    if (!c.g_text.empty()) {
      std::vector<double> gs = parse_coupling_list(c.g_text);
      if (gs.size() != 1) throw usage_error("sweep takes a single --g value");
      g_fixed = gs[0];
    }
    rec.add("spec", format_spec(spec));
    rec.add("axis", axis_name);
    rec.add_number("g", g_fixed);
    rec.add_number("theta", c.theta);
    rec.add_number("phi", c.phi);
    points = sweep(spec, axis, range.lo, range.hi, count, g_fixed, c.theta, c.phi);
  }

  Format fmt = parse_format(c.format);
  if (fmt == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (const SweepPoint& p : points) {
      rows.push_back({format_number(p.x), format_number(p.value)});
    }
    write_output(csv_table({axis_name, "value"}, rows), c.out);
  } else {
    ordered_json arr = ordered_json::array();
    for (const SweepPoint& p : points) {
      ordered_json pt = ordered_json::object();
      pt["x"] = format_number(p.x);
      pt["value"] = format_number(p.value);
      arr.push_back(pt);
    }
    rec.j["points"] = arr;
    write_output(rec.j.dump(2) + "\n", c.out);
  }
  return 0;
}

int cmd_reproduce(const CommonFlags& c) {
  std::string out_dir = c.out.empty() ? "reproduce_out" : c.out;
  Format fmt = parse_format(c.format);
  ReproduceResult res = run_reproduce(out_dir, fmt);

  Record rec;
  rec.add("command", "reproduce");
  rec.add("out", out_dir);
  rec.add_int("rows", static_cast<long long>(res.rows.size()));
  rec.add_int("pass", res.pass_count);
  rec.add_int("discrepancy", res.discrepancy_count);
  rec.add_int("fail", res.fail_count);
  rec.add_bool("ok", res.fail_count == 0);
  std::cout << rec.render(fmt);
  if (res.fail_count > 0) throw consistency_error("reproduce manifest has failing rows");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"n-time sequential-measurement statistics of a driven two-level system"};
  app.require_subcommand(1);

  CommonFlags c;
  bool unequal = false;
  int grid = 0;
  int seed = 0;
  std::string axis_name;
  std::string range_text;

  auto add_common = [&](CLI::App* sub, bool with_state) {
    sub->add_option("--format", c.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Write output to this path (reproduce: directory)");
    if (with_state) {
      sub->add_option("--theta", c.theta, "State polar angle, in [0, pi]");
      sub->add_option("--phi", c.phi, "State relative phase, in [0, 2pi]");
    }
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a functional at one parameter point");
  eval->add_option("--spec", c.spec_text, "Functional: term syntax or shortcut")->required();
  eval->add_option("--g", c.g_text, "Couplings, comma list; one value broadcasts")->required();
  eval->add_option("--n", c.n, "Slot count for bare family shortcuts");
  add_common(eval, true);

  CLI::App* bounds = app.add_subcommand("bounds", "Enumerate macrorealist and algebraic bounds");
  bounds->add_option("--spec", c.spec_text, "Functional: term syntax or shortcut")->required();
  bounds->add_option("--n", c.n, "Slot count for bare family shortcuts");
  add_common(bounds, false);

  CLI::App* nsit = app.add_subcommand("nsit", "Three-slot disturbance report");
  nsit->add_option("--g", c.g_text, "Couplings, comma list; one value broadcasts")->required();
  add_common(nsit, true);

  CLI::App* opt = app.add_subcommand("optimize", "Search for the maximal quantum value");
  opt->add_option("--spec", c.spec_text, "Functional: term syntax or shortcut")->required();
  opt->add_option("--n", c.n, "Slot count for bare family shortcuts");
  opt->add_flag("--unequal", unequal, "Let every coupling interval vary independently");
  opt->add_option("--grid", grid, "Coarse grid density per axis (default 48/32/24)");
  opt->add_option("--seed", seed, "Reserved; the search is deterministic");
  add_common(opt, false);

  CLI::App* swp = app.add_subcommand("sweep", "Tabulate a functional along one axis");
  swp->add_option("--spec", c.spec_text, "Functional: term syntax, shortcut, or bare family")
      ->required();
  swp->add_option("--axis", axis_name, "Swept axis: g, theta, phi, or n")->required();
  swp->add_option("--range", range_text, "lo:hi:count (axis n: lo:hi:step)")->required();
  swp->add_option("--g", c.g_text, "Fixed coupling for state-axis sweeps");
  swp->add_option("--n", c.n, "Slot count for bare family shortcuts");
  add_common(swp, true);

  CLI::App* rep = app.add_subcommand("reproduce", "Write the full reference bundle");
  add_common(rep, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(eval)) return cmd_eval(c);
    if (app.got_subcommand(bounds)) return cmd_bounds(c);
    if (app.got_subcommand(nsit)) return cmd_nsit(c);
    if (app.got_subcommand(opt)) return cmd_optimize(c, unequal, grid, seed);
    if (app.got_subcommand(swp)) return cmd_sweep(c, axis_name, range_text);
    if (app.got_subcommand(rep)) return cmd_reproduce(c);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const consistency_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace lgv

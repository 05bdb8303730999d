#include "lgv/reproduce.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>

#include "lgv/errors.hpp"
#include "lgv/functionals.hpp"
#include "lgv/nsit.hpp"
#include "lgv/search.hpp"

namespace lgv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Platform-independent uniform draws: top 53 bits of the engine word.
struct DrawSource {
  std::mt19937_64 rng;
  explicit DrawSource(uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  }
};

double eval_point(const FunctionalSpec& spec, double g, double theta, double phi) {
  return eval_separate(spec, density_from_pure(PureState(theta, phi)),
                       Schedule::equal(spec.n, g));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw consistency_error("cannot write " + path.string());
  out << content;
}

struct Rows {
  ReproduceResult result;

  void add(const std::string& key, const std::string& value, const std::string& expected,
           bool ok, const std::string& note = "") {
    result.rows.push_back({key, value, expected, ok ? "pass" : "fail", note});
    (ok ? result.pass_count : result.fail_count)++;
  }

  // Reference-value comparisons: a miss is a recorded discrepancy, not a failure.
  void add_reference(const std::string& key, const std::string& value,
                     const std::string& expected, bool ok, const std::string& note = "") {
    result.rows.push_back({key, value, expected, ok ? "pass" : "discrepancy", note});
    (ok ? result.pass_count : result.discrepancy_count)++;
  }
};

bool monotone_increasing_from(const std::vector<SweepPoint>& pts, double from_x) {
  const SweepPoint* prev = nullptr;
  for (const auto& p : pts) {
    if (p.x < from_x) continue;
    if (prev && p.value <= prev->value) return false;
    prev = &p;
  }
  return true;
}

}  // namespace

ReproduceResult run_reproduce(const std::filesystem::path& out_dir, Format format) {
  std::filesystem::create_directories(out_dir);
  Rows rows;
  SearchConfig cfg;

  FunctionalSpec k3_std = FunctionalSpec::standard_K(3);
  FunctionalSpec k3_var3 = FunctionalSpec::variant_K3(3);
  FunctionalSpec k3_var4 = FunctionalSpec::variant_K3(4);
  FunctionalSpec l3_var4 = FunctionalSpec::variant_L3(4);

  // Standard three-slot maximum.
  ViolationReport opt_std = optimize(k3_std, cfg);
  rows.add("k3_standard_max", format_number(opt_std.best_value), "1.5",
           std::abs(opt_std.best_value - 1.5) <= 1e-6);
  double g_star = opt_std.best_couplings[0];
  double g_dist = std::min(std::abs(g_star - kPi / 6), std::abs(g_star - 5 * kPi / 6));
  rows.add("k3_standard_max_coupling", format_number(g_star), "pi/6 or 5pi/6",
           g_dist <= 1e-5);

  // n cos(pi/n) table.
  std::vector<std::vector<std::string>> kn_rows;
  double kn_worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    double v = eval_point(FunctionalSpec::standard_K(n), kPi / (2.0 * n), 0.0, 0.0);
    double want = n * std::cos(kPi / n);
    kn_worst = std::max(kn_worst, std::abs(v - want));
    kn_rows.push_back({std::to_string(n), format_number(v), format_number(want),
                       format_number(v - want)});
  }
  write_file(out_dir / "kn_table.csv", csv_table({"n", "value", "expected", "delta"}, kn_rows));
  rows.add("kn_cosine_table_max_delta", format_number(kn_worst), "<= 1e-9",
           kn_worst <= 1e-9);

  // Variant maxima and quoted reference points.
  ViolationReport opt_v3 = optimize(k3_var3, cfg);
  rows.add("k3_variant3_max", format_number(opt_v3.best_value), ">= 1.90",
           opt_v3.best_value >= 1.90);
  double v3_ref = eval_point(k3_var3, 1.72, 2.04, kPi / 2);
  double v3_ref_mirror = eval_point(k3_var3, 1.72, 2.04, 3 * kPi / 2);
  rows.add_reference("k3_variant3_reference_point", format_number(v3_ref), "1.93 +- 0.02",
                     std::abs(v3_ref - 1.93) <= 0.02,
                     "mirrored-phase value " + format_number(v3_ref_mirror) +
                         "; search maximum matches the reference figure instead");

  SearchConfig unequal_cfg = cfg;
  unequal_cfg.equal_couplings = false;
  ViolationReport opt_v3u = optimize(k3_var3, unequal_cfg);
  rows.add("k3_variant3_max_unequal", format_number(opt_v3u.best_value), ">= 1.99",
           opt_v3u.best_value >= 1.99);

  ViolationReport opt_v4 = optimize(k3_var4, cfg);
  rows.add("k3_variant4_max", format_number(opt_v4.best_value), ">= 2.10",
           opt_v4.best_value >= 2.10);
  double v4_ref = eval_point(k3_var4, 1.24, 1.90, kPi / 2);
  double v4_ref_mirror = eval_point(k3_var4, 1.24, 1.90, 3 * kPi / 2);
  rows.add_reference("k3_variant4_reference_point", format_number(v4_ref), "2.12 +- 0.02",
                     std::abs(v4_ref - 2.12) <= 0.02,
                     "mirrored-phase value " + format_number(v4_ref_mirror));

  ViolationReport opt_l4 = optimize(l3_var4, cfg);
  rows.add("l3_variant4_max", format_number(opt_l4.best_value), ">= 2.00",
           opt_l4.best_value >= 2.00);
  double l4_ref = eval_point(l3_var4, 0.42, 0.21, kPi / 2);
  double l4_ref_mirror = eval_point(l3_var4, 0.42, 0.21, 3 * kPi / 2);
  rows.add_reference("l3_variant4_reference_point", format_number(l4_ref), "2.03 +- 0.02",
                     std::abs(l4_ref - 2.03) <= 0.02,
                     "mirrored-phase value " + format_number(l4_ref_mirror));

  rows.add("ordering_chain",
           format_number(opt_v4.best_value) + " > " + format_number(opt_v3.best_value) +
               " > 1.5",
           "four-slot variant > three-slot variant > standard max",
           opt_v4.best_value > opt_v3.best_value && opt_v3.best_value > 1.5);

  // Closed forms evaluated verbatim against the simulation at the quoted points.
  struct RefCmp {
    const char* key;
    ClosedForm family;
    int n;
    double g, theta;
  };
  for (const RefCmp& rc : {RefCmp{"closed_form_k3_var3_reference_delta",
                                  ClosedForm::K3Var3, 3, 1.72, 2.04},
                           RefCmp{"closed_form_k3_var4_reference_delta",
                                  ClosedForm::K3Var4, 4, 1.24, 1.90},
                           RefCmp{"closed_form_l3_var4_reference_delta",
                                  ClosedForm::L3Var4, 4, 0.42, 0.21}}) {
    ClosedFormComparison cmp = compare_closed_form(rc.family, rc.n, rc.g, rc.theta, kPi / 2);
    rows.add_reference(rc.key, format_number(cmp.delta), "|delta| <= 1e-6",
                       std::abs(cmp.delta) <= 1e-6,
                       "printed form kept verbatim; simulation is ground truth");
  }

  // No-signaling diagnostics over a seeded batch.
  DrawSource draws(20260817);
  double d3_worst = 0.0, std_id_worst = 0.0, var_id_worst = 0.0, decomp_worst = 0.0;
  int biconditional_ok = 0;
  const int kDraws = 200;
  for (int i = 0; i < kDraws; ++i) {
    Schedule sched({draws.uniform(0, kPi), draws.uniform(0, kPi)});
    PureState state(draws.uniform(0, kPi), draws.uniform(0, 2 * kPi));
    Mat2 rho = density_from_pure(state);
    DisturbanceReport rep = disturbance_report(rho, sched);
    for (double d : rep.d3) d3_worst = std::max(d3_worst, std::abs(d));
    double k3_all = eval_all_measured(k3_std, rho, sched);
    std_id_worst = std::max(std_id_worst, std::abs(k3_all - (1 - 4 * rep.alpha)));
    double v3_all = eval_all_measured(k3_var3, rho, sched);
    var_id_worst = std::max(var_id_worst, std::abs(v3_all - (1 - 4 * rep.beta)));
    decomp_worst = std::max(decomp_worst, decomposition_check_standard(rho, sched));
    ViolationCondition cond = violation_condition_variant(rho, sched);
    double value = eval_separate(k3_var3, rho, sched);
    if ((value > 1.0) == (cond.lhs > cond.threshold)) ++biconditional_ok;
  }
  rows.add("nsit_d3_max_abs", format_number(d3_worst), "<= 1e-12", d3_worst <= 1e-12);
  rows.add("nsit_standard_identity_residual", format_number(std_id_worst), "<= 1e-12",
           std_id_worst <= 1e-12);
  rows.add("nsit_variant_identity_residual", format_number(var_id_worst), "<= 1e-12",
           var_id_worst <= 1e-12);
  rows.add("nsit_decomposition_residual", format_number(decomp_worst), "<= 1e-10",
           decomp_worst <= 1e-10);
  rows.add("nsit_variant_biconditional", std::to_string(biconditional_ok) + "/200",
           "200/200", biconditional_ok == kDraws);

  // Coupling slice of the two three-slot functionals at the quoted state.
  const int kFigPoints = 601;
  std::vector<SweepPoint> fig1_std =
      sweep(k3_std, SweepAxis::g, 0.0, kPi, kFigPoints, 0.0, 2.04, kPi / 2);
  std::vector<SweepPoint> fig1_var =
      sweep(k3_var3, SweepAxis::g, 0.0, kPi, kFigPoints, 0.0, 2.04, kPi / 2);
  std::vector<std::vector<std::string>> fig1_rows;
  size_t std_arg = 0, var_arg = 0;
  for (size_t i = 0; i < fig1_std.size(); ++i) {
    if (fig1_std[i].value > fig1_std[std_arg].value) std_arg = i;
    if (fig1_var[i].value > fig1_var[var_arg].value) var_arg = i;
    fig1_rows.push_back({format_number(fig1_std[i].x), format_number(fig1_std[i].value),
                         format_number(fig1_var[i].value)});
  }
  write_file(out_dir / "fig1.csv",
             csv_table({"g", "k3_standard", "k3_variant3"}, fig1_rows));
  rows.add("fig1_standard_curve_max", format_number(fig1_std[std_arg].value), "1.5",
           std::abs(fig1_std[std_arg].value - 1.5) <= 1e-6);

  // Refine the variant slice maximum within one grid step to cross-check the curve.
  double step = kPi / (kFigPoints - 1);
  double lo = std::max(0.0, fig1_var[var_arg].x - step);
  double hi = std::min(kPi, fig1_var[var_arg].x + step);
  double refined = fig1_var[var_arg].value;
  for (int i = 0; i < 200; ++i) {
    double m1 = lo + (hi - lo) * (1 - 0.61803398874989484820);
    double m2 = lo + (hi - lo) * 0.61803398874989484820;
    double f1 = eval_point(k3_var3, m1, 2.04, kPi / 2);
    double f2 = eval_point(k3_var3, m2, 2.04, kPi / 2);
    refined = std::max({refined, f1, f2});
    if (f1 < f2) lo = m1; else hi = m2;
  }
  rows.add("fig1_variant3_curve_max", format_number(fig1_var[var_arg].value),
           format_number(refined) + " +- 1e-3",
           std::abs(fig1_var[var_arg].value - refined) <= 1e-3,
           "grid maximum vs refined slice maximum at the same state");
  rows.add_reference("fig1_variant3_curve_vs_reference", format_number(refined),
                     "1.93 +- 0.02", std::abs(refined - 1.93) <= 0.02,
                     "slice pinned at theta=2.04, phi=pi/2; the full search "
                     "reaches the reference figure at a different state");

  // Slot-count curves at theta = 0.
  std::vector<SweepPoint> l3_odd = sweep_n(SpecFamily::VariantL3, 3, 201, 2, 0.0, kPi / 2);
  std::vector<SweepPoint> l3_even = sweep_n(SpecFamily::VariantL3, 4, 200, 2, 0.0, kPi / 2);
  std::vector<SweepPoint> k3_var_n = sweep_n(SpecFamily::VariantK3, 7, 200, 1, 0.0, kPi / 2);
  auto to_rows = [](const std::vector<SweepPoint>& pts) {
    std::vector<std::vector<std::string>> out;
    for (const auto& p : pts) {
      out.push_back({format_number(p.x), format_number(p.value)});
    }
    return out;
  };
  write_file(out_dir / "fig2_l3_odd.csv", csv_table({"n", "value"}, to_rows(l3_odd)));
  write_file(out_dir / "fig2_l3_even.csv", csv_table({"n", "value"}, to_rows(l3_even)));

  double n101 = 0.0;
  for (const auto& p : l3_odd) {
    if (p.x == 101.0) n101 = p.value;
  }
  double n101_closed = closed_form(ClosedForm::L3OddN, 101, kPi / 202, 0.0, kPi / 2);
  rows.add("l3_odd_n101", format_number(n101), format_number(n101_closed) + " +- 1e-9",
           std::abs(n101 - n101_closed) <= 1e-9);
  double n200 = k3_var_n.back().value;
  rows.add("k3_variant_n200", format_number(n200), ">= 2.97", n200 >= 2.97);

  rows.add("fig2_l3_odd_monotone_from_7", monotone_increasing_from(l3_odd, 7) ? "true" : "false",
           "true", monotone_increasing_from(l3_odd, 7));
  rows.add("fig2_l3_even_monotone_from_7",
           monotone_increasing_from(l3_even, 7) ? "true" : "false", "true",
           monotone_increasing_from(l3_even, 7));
  rows.add("k3_variant_monotone_from_7",
           monotone_increasing_from(k3_var_n, 7) ? "true" : "false", "true",
           monotone_increasing_from(k3_var_n, 7));
  double seq_max = 0.0;
  for (const auto* seq : {&l3_odd, &l3_even, &k3_var_n}) {
    for (const auto& p : *seq) seq_max = std::max(seq_max, p.value);
  }
  rows.add("sequences_bounded_by_3", format_number(seq_max), "<= 3", seq_max <= 3.0 + 1e-12);

  // Manifest last, so every row is in.
  if (format == Format::csv) {
    std::vector<std::vector<std::string>> mrows;
    for (const ManifestRow& r : rows.result.rows) {
      mrows.push_back({r.key, r.value, r.expected, r.status, r.note});
    }
    write_file(out_dir / "manifest.csv",
               csv_table({"key", "value", "expected", "status", "note"}, mrows));
  } else {
    std::string out = "[\n";
    for (size_t i = 0; i < rows.result.rows.size(); ++i) {
      const ManifestRow& r = rows.result.rows[i];
      auto esc = [](const std::string& s) {
        std::string e;
        for (char c : s) {
          if (c == '"' || c == '\\') e += '\\';
          e += c;
        }
        return e;
      };
      out += "  {\"key\": \"" + esc(r.key) + "\", \"value\": \"" + esc(r.value) +
             "\", \"expected\": \"" + esc(r.expected) + "\", \"status\": \"" +
             esc(r.status) + "\", \"note\": \"" + esc(r.note) + "\"}";
      out += (i + 1 < rows.result.rows.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    write_file(out_dir / "manifest.json", out);
  }
  return rows.result;
}

}  // namespace lgv

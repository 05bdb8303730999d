#include "lgv/search.hpp"

#include <algorithm>
#include <cmath>

#include "lgv/errors.hpp"

namespace lgv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvPhi = 0.61803398874989484820;
// Cells evaluated in one coarse grid, all axes combined.
constexpr long kGridBudget = 2000000;

struct Axis {
  double lo;
  double hi;
};

struct Objective {
  const FunctionalSpec& spec;
  bool equal;

  int coupling_axes() const { return equal ? 1 : spec.n - 1; }

  double operator()(const std::vector<double>& x) const {
    Schedule sched = equal
        ? Schedule::equal(spec.n, x[0])
        : Schedule(std::vector<double>(x.begin(), x.begin() + spec.n - 1));
    size_t k = static_cast<size_t>(coupling_axes());
    Mat2 rho = density_from_pure(PureState(x[k], x[k + 1]));
    return eval_separate(spec, rho, sched);
  }
};

std::vector<double> linspace(const Axis& ax, int count) {
  std::vector<double> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<size_t>(i)] = ax.lo + (ax.hi - ax.lo) * i / (count - 1);
  }
  return v;
}

struct Seed {
  double value;
  std::vector<double> x;
};

// Keep the best `cap` cells; strict improvement only, so grid order breaks ties.
void offer(std::vector<Seed>& top, size_t cap, double value, const std::vector<double>& x) {
  if (top.size() < cap) {
    top.push_back({value, x});
    std::sort(top.begin(), top.end(),
              [](const Seed& a, const Seed& b) { return a.value > b.value; });
    return;
  }
  if (value > top.back().value) {
    top.back() = {value, x};
    std::sort(top.begin(), top.end(),
              [](const Seed& a, const Seed& b) { return a.value > b.value; });
  }
}

double golden_axis(const Objective& f, std::vector<double>& x, size_t axis, double lo,
                   double hi, int iters, double incumbent) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  auto eval_at = [&](double v) {
    x[axis] = v;
    return f(x);
  };
  double f1 = eval_at(x1);
  double f2 = eval_at(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = eval_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = eval_at(x1);
    }
  }
  double best_x = f1 > f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  if (best_f > incumbent) {
    x[axis] = best_x;
    return best_f;
  }
  return incumbent;  // caller restores x[axis]
}

}  // namespace

void SearchConfig::validate() const {
  if (grid_g < 8 || grid_theta < 8 || grid_phi < 8) {
    throw contract_error("grid density below 8 per axis");
  }
  if (refine_iterations < 1 || refine_passes < 1 || top_seeds < 1) {
    throw contract_error("refinement settings must be positive");
  }
  if (!(tolerance > 0.0)) throw contract_error("tolerance must be positive");
}

ViolationReport optimize(const FunctionalSpec& spec, const SearchConfig& cfg) {
  cfg.validate();
  Objective f{spec, cfg.equal_couplings};
  int k = f.coupling_axes();

  std::vector<Axis> axes(static_cast<size_t>(k), Axis{0.0, kPi});
  axes.push_back({0.0, kPi});        // theta
  axes.push_back({0.0, 2.0 * kPi});  // phi

  // Coarse grid. Coupling axes share one density, shrunk so the full grid
  // stays within budget; above five coupling axes the seeding grid treats the
  // couplings as equal and the refinement explores them independently.
  std::vector<Seed> top;
  std::vector<double> init_half(axes.size());
  bool seeded_equal = !cfg.equal_couplings && k > 5;
  if (seeded_equal) {
    for (size_t i = 0; i < axes.size(); ++i) init_half[i] = (axes[i].hi - axes[i].lo) / 8;
    std::vector<double> gs = linspace(axes[0], cfg.grid_g);
    std::vector<double> ts = linspace(axes[static_cast<size_t>(k)], cfg.grid_theta);
    std::vector<double> ps = linspace(axes[static_cast<size_t>(k) + 1], cfg.grid_phi);
    for (double g : gs) {
      for (double t : ts) {
        for (double p : ps) {
          std::vector<double> x(static_cast<size_t>(k), g);
          x.push_back(t);
          x.push_back(p);
          offer(top, static_cast<size_t>(cfg.top_seeds), f(x), x);
        }
      }
    }
  } else {
    int density = cfg.grid_g;
    if (!cfg.equal_couplings) {
      long per_state = static_cast<long>(cfg.grid_theta) * cfg.grid_phi;
      double room = std::pow(static_cast<double>(kGridBudget) / per_state, 1.0 / k);
      density = std::min(density, std::max(8, static_cast<int>(room)));
    }
    std::vector<int> counts(static_cast<size_t>(k), density);
    counts.push_back(cfg.grid_theta);
    counts.push_back(cfg.grid_phi);
    std::vector<std::vector<double>> grids;
    for (size_t i = 0; i < axes.size(); ++i) {
      grids.push_back(linspace(axes[i], counts[i]));
      init_half[i] = (axes[i].hi - axes[i].lo) / (counts[i] - 1);
    }

    std::vector<size_t> idx(axes.size(), 0);
    std::vector<double> x(axes.size());
    while (true) {
      for (size_t i = 0; i < axes.size(); ++i) x[i] = grids[i][idx[i]];
      offer(top, static_cast<size_t>(cfg.top_seeds), f(x), x);
      size_t i = 0;
      while (i < axes.size() && ++idx[i] == grids[i].size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == axes.size()) break;
    }
  }

  // Coordinate golden-section refinement from each seed.
  Seed best = top.front();
  for (Seed& seed : top) {
    std::vector<double> halves = init_half;
    double current = seed.value;
    std::vector<double> x = seed.x;
    for (int pass = 0; pass < cfg.refine_passes; ++pass) {
      double before = current;
      for (size_t i = 0; i < axes.size(); ++i) {
        double lo = std::max(axes[i].lo, x[i] - halves[i]);
        double hi = std::min(axes[i].hi, x[i] + halves[i]);
        double keep = x[i];
        double improved = golden_axis(f, x, i, lo, hi, cfg.refine_iterations, current);
        if (improved > current) {
          current = improved;
        } else {
          x[i] = keep;
        }
        halves[i] *= 0.5;
      }
      if (current - before < cfg.tolerance) break;
    }
    if (current > best.value) best = {current, x};
  }

  BoundPair bounds = macrorealist_bound(spec);
  if (best.value > bounds.algebraic_max + 1e-9) {
    throw consistency_error("search exceeded the algebraic maximum");
  }

  ViolationReport report;
  report.best_value = best.value;
  report.best_couplings.assign(best.x.begin(), best.x.begin() + k);
  report.best_theta = best.x[static_cast<size_t>(k)];
  report.best_phi = best.x[static_cast<size_t>(k) + 1];
  report.macrorealist_max = bounds.macrorealist_max;
  report.algebraic_max = bounds.algebraic_max;
  report.margin = best.value - bounds.macrorealist_max;
  return report;
}

std::vector<SweepPoint> sweep(const FunctionalSpec& spec, SweepAxis axis, double lo,
                              double hi, int count, double g, double theta, double phi) {
  if (axis == SweepAxis::n) {
    throw contract_error("slot-count sweeps go through sweep_n");
  }
  if (count < 2) throw contract_error("sweep needs at least two points");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw contract_error("bad sweep range");
  }
  std::vector<SweepPoint> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    double x = lo + (hi - lo) * i / (count - 1);
    double cur_g = axis == SweepAxis::g ? x : g;
    double cur_t = axis == SweepAxis::theta ? x : theta;
    double cur_p = axis == SweepAxis::phi ? x : phi;
    Mat2 rho = density_from_pure(PureState(cur_t, cur_p));
    out.push_back({x, eval_separate(spec, rho, Schedule::equal(spec.n, cur_g))});
  }
  return out;
}

std::vector<SweepPoint> sweep_n(SpecFamily family, int n_lo, int n_hi, int step,
                                double theta, double phi) {
  if (n_lo < 3 || n_hi < n_lo || step < 1) throw contract_error("bad slot-count range");
  Mat2 rho = density_from_pure(PureState(theta, phi));
  std::vector<SweepPoint> out;
  for (int n = n_lo; n <= n_hi; n += step) {
    FunctionalSpec spec = [&] {
      switch (family) {
        case SpecFamily::StandardK: return FunctionalSpec::standard_K(n);
        case SpecFamily::VariantK3: return FunctionalSpec::variant_K3(n);
        case SpecFamily::VariantL3: return FunctionalSpec::variant_L3(n);
      }
      throw contract_error("unknown functional family");
    }();
    Schedule sched = Schedule::equal(n, kPi / (2.0 * n));
    out.push_back({static_cast<double>(n), eval_separate(spec, rho, sched)});
  }
  return out;
}

std::vector<AsymptoticRow> asymptotic_table(ClosedForm family,
                                            const std::vector<int>& n_list,
                                            double theta, double phi) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    double g = kPi / (2.0 * n);
    ClosedFormComparison cmp = compare_closed_form(family, n, g, theta, phi);
    rows.push_back({n, cmp.closed, cmp.simulated, cmp.delta});
  }
  return rows;
}

}  // namespace lgv

#pragma once

#include <vector>

#include "lgv/functionals.hpp"

namespace lgv {

// Deterministic search settings: coarse grid, then coordinate golden-section
// refinement seeded from the best grid cells. All defaults reproduce bit-for-bit.
struct SearchConfig {
  int grid_g = 48;
  int grid_theta = 32;
  int grid_phi = 24;
  int refine_iterations = 80;  // golden-section steps per axis visit
  int refine_passes = 16;      // coordinate cycles per seed
  int top_seeds = 10;
  double tolerance = 1e-12;    // stop a seed once a full pass improves less
  bool equal_couplings = true;

  void validate() const;
};

struct ViolationReport {
  double best_value;
  std::vector<double> best_couplings;
  double best_theta;
  double best_phi;
  double macrorealist_max;
  double algebraic_max;
  double margin;  // best_value - macrorealist_max
};

// Maximize eval_separate over pure states and coupling schedules.
// Couplings live in [0, pi] (the correlators are pi-periodic per coupling),
// theta in [0, pi], phi in [0, 2pi].
ViolationReport optimize(const FunctionalSpec& spec, const SearchConfig& cfg);

enum class SweepAxis { g, theta, phi, n };

struct SweepPoint {
  double x;
  double value;
};

// One-dimensional slice at equal couplings; the swept axis ignores its fixed value.
std::vector<SweepPoint> sweep(const FunctionalSpec& spec, SweepAxis axis, double lo,
                              double hi, int count, double g, double theta, double phi);

enum class SpecFamily { StandardK, VariantK3, VariantL3 };

// Slot-count sweep with g = pi/(2n) at each point.
std::vector<SweepPoint> sweep_n(SpecFamily family, int n_lo, int n_hi, int step,
                                double theta, double phi);

struct AsymptoticRow {
  int n;
  double closed;
  double simulated;
  double difference;
};

// Closed form vs simulation per n at g = pi/(2n).
std::vector<AsymptoticRow> asymptotic_table(ClosedForm family,
                                            const std::vector<int>& n_list,
                                            double theta, double phi);

}  // namespace lgv

#pragma once

#include <array>

#include "lgv/qubit.hpp"

namespace lgv {

// Index into a 4-entry disturbance map keyed by two outcomes.
int pair_index(int ma, int mb);
// Index into a 2-entry map keyed by one outcome.
int solo_index(int m);

// No-signaling-in-time diagnostics for a three-slot schedule. Each map entry
// is P(outcomes | reduced run) - marginalized three-measurement probability.
struct DisturbanceReport {
  std::array<double, 4> d1;   // keyed (m2, m3): omit measurement 1
  std::array<double, 4> d2;   // keyed (m1, m3): omit measurement 2
  std::array<double, 4> d3;   // keyed (m1, m2): omit measurement 3 (always 0)
  std::array<double, 2> d12;  // keyed (m3): omit measurements 1 and 2
  double alpha;               // P(+,-,+) + P(-,+,-)
  double beta;                // P(+,-,+) + P(-,+,+)
  double gamma;               // (1 - all-measured n-slot variant value)/4
};

std::array<double, 4> disturbance_D1(const Mat2& rho, const Schedule& sched);
std::array<double, 4> disturbance_D2(const Mat2& rho, const Schedule& sched);
std::array<double, 4> disturbance_D3(const Mat2& rho, const Schedule& sched);
std::array<double, 2> disturbance_D12(const Mat2& rho, const Schedule& sched);

double alpha_statistic(const Mat2& rho, const Schedule& sched);
double beta_statistic(const Mat2& rho, const Schedule& sched);
// (1 - eval_all_measured(variant_K3(n)))/4 for the schedule's n.
double gamma_statistic(const Mat2& rho, const Schedule& sched);

DisturbanceReport disturbance_report(const Mat2& rho, const Schedule& sched);

// Residual of the exact decomposition
// K3 - (K3)_123 = sum_{m2=m3} D1 - sum_{m1=m3} D2 - sum_{m2!=m3} D1 + sum_{m1!=m3} D2.
double decomposition_check_standard(const Mat2& rho, const Schedule& sched);

struct ViolationCondition {
  double lhs;
  double threshold;
  bool violated;  // the corresponding functional exceeds 1 in separate runs
};

// Standard three-slot condition: lhs = sum_{m2=m3} D1 - sum_{m1=m3} D2,
// threshold 2*alpha; lhs > threshold iff K3 > 1.
ViolationCondition violation_condition_standard(const Mat2& rho, const Schedule& sched);

// Variant three-slot condition: lhs = -sum_{m3} m3*D12(m3) = 2*D12(-),
// threshold 4*beta; lhs > threshold iff K^3_3 > 1.
ViolationCondition violation_condition_variant(const Mat2& rho, const Schedule& sched);

// D_{1..final-1}(m_final): final-slot-only run minus the marginalized full run,
// for schedules of any n >= 3. Entries keyed by m_final via solo_index.
std::array<double, 2> disturbance_general(const Mat2& rho, const Schedule& sched,
                                          int final_index);

}  // namespace lgv

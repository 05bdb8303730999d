#pragma once

#include <vector>

#include "lgv/qubit.hpp"

namespace lgv {

// Joint distributions over more than MAX_ENUM_N slots are refused.
inline constexpr int MAX_ENUM_N = 24;

// Strictly increasing 1-based slot indices of the measurements actually performed.
struct MeasurementSet {
  explicit MeasurementSet(std::vector<int> performed_);
  static MeasurementSet all(int n);

  int size() const { return static_cast<int>(performed.size()); }

  std::vector<int> performed;
};

// One +-1 outcome per performed measurement, in time order.
struct OutcomeString {
  explicit OutcomeString(std::vector<int> outcomes_);

  std::vector<int> outcomes;
};

// P(outcomes | rho, performed set) via the projective collapse chain
// Tr[Pi_k ... Pi_1 rho Pi_1 ... Pi_k]. Clamped to [0,1]; an excursion beyond
// 1e-9 outside that range raises consistency_error.
double joint_probability(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set, const OutcomeString& outs);

// All 2^k probabilities of joint_probability in one collapse-tree walk.
// Index bit j (LSB = first performed measurement): 0 -> outcome +1, 1 -> -1.
std::vector<double> joint_distribution(const Mat2& rho, const Schedule& sched,
                                       const MeasurementSet& set);

// <M_{i1} ... M_{ik}>_seq as the explicit outcome sum
// sum_m m_1*...*m_k * joint_probability. Reference implementation.
double correlator_oracle(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set);

// Same correlator through the nested-anticommutator reduction
// (1/2^{k-1}) Tr[rho {M_{i1}, {M_{i2}, ... {M_{i,k-1}, M_{ik}} ...}}].
double correlator_nested(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set);

}  // namespace lgv

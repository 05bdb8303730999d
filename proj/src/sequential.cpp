#include "lgv/sequential.hpp"

#include <cmath>
#include <string>

#include "lgv/errors.hpp"

namespace lgv {

namespace {

void check_set_against(const MeasurementSet& set, const Schedule& sched) {
  if (set.performed.back() > sched.n()) {
    throw contract_error("measurement set exceeds schedule slots");
  }
}

void check_density(const Mat2& rho) {
  if (!rho.is_density(1e-9)) throw contract_error("rho is not a density operator");
}

double finish_probability(double p, double imag) {
  if (std::abs(imag) > 1e-10) {
    throw consistency_error("probability has non-real trace");
  }
  if (p < -1e-9 || p > 1.0 + 1e-9) {
    throw consistency_error("probability outside [0,1] beyond tolerance: " +
                            std::to_string(p));
  }
  return std::min(std::max(p, 0.0), 1.0);
}

// Depth-first collapse over outcome branches; fills 2^k leaves.
void walk(const Mat2& state, const std::vector<Mat2>& plus, const std::vector<Mat2>& minus,
          size_t depth, size_t index, std::vector<double>& out) {
  if (depth == plus.size()) {
    cplx t = state.trace();
    out[index] = finish_probability(t.real(), t.imag());
    return;
  }
  size_t bit = size_t{1} << depth;
  walk(plus[depth] * state * plus[depth], plus, minus, depth + 1, index, out);
  walk(minus[depth] * state * minus[depth], plus, minus, depth + 1, index | bit, out);
}

}  // namespace

MeasurementSet::MeasurementSet(std::vector<int> performed_) : performed(std::move(performed_)) {
  if (performed.empty()) throw contract_error("measurement set must be non-empty");
  int prev = 0;
  for (int i : performed) {
    if (i <= prev) throw contract_error("measurement set must be strictly increasing");
    prev = i;
  }
}

MeasurementSet MeasurementSet::all(int n) {
  if (n < 1) throw contract_error("measurement count must be positive");
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  return MeasurementSet(std::move(v));
}

OutcomeString::OutcomeString(std::vector<int> outcomes_) : outcomes(std::move(outcomes_)) {
  for (int m : outcomes) {
    if (m != 1 && m != -1) throw contract_error("outcomes must be +1 or -1");
  }
}

double joint_probability(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set, const OutcomeString& outs) {
  check_set_against(set, sched);
  check_density(rho);
  if (outs.outcomes.size() != set.performed.size()) {
    throw contract_error("outcome string length does not match measurement set");
  }
  Mat2 state = rho;
  for (size_t j = 0; j < set.performed.size(); ++j) {
    Mat2 p = projector(heisenberg_observable(set.performed[j], sched), outs.outcomes[j]);
    state = p * state * p;
  }
  cplx t = state.trace();
  return finish_probability(t.real(), t.imag());
}

std::vector<double> joint_distribution(const Mat2& rho, const Schedule& sched,
                                       const MeasurementSet& set) {
  check_set_against(set, sched);
  check_density(rho);
  if (set.size() > MAX_ENUM_N) {
    throw resource_error("joint distribution enumeration capped at " +
                         std::to_string(MAX_ENUM_N) + " measurements");
  }
  std::vector<Mat2> plus, minus;
  plus.reserve(set.performed.size());
  minus.reserve(set.performed.size());
  for (int i : set.performed) {
    Mat2 obs = heisenberg_observable(i, sched);
    plus.push_back(projector(obs, +1));
    minus.push_back(projector(obs, -1));
  }
  std::vector<double> out(size_t{1} << set.size(), 0.0);
  walk(rho, plus, minus, 0, 0, out);
  return out;
}

double correlator_oracle(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set) {
  if (set.size() > MAX_ENUM_N) {
    throw resource_error("correlator enumeration capped at " +
                         std::to_string(MAX_ENUM_N) + " measurements");
  }
  size_t total = size_t{1} << set.size();
  double acc = 0.0;
  std::vector<int> outs(set.performed.size(), +1);
  for (size_t word = 0; word < total; ++word) {
    int parity = 1;
    for (size_t j = 0; j < outs.size(); ++j) {
      outs[j] = ((word >> j) & 1u) ? -1 : +1;
      parity *= outs[j];
    }
    acc += parity * joint_probability(rho, sched, set, OutcomeString(outs));
  }
  return acc;
}

double correlator_nested(const Mat2& rho, const Schedule& sched,
                         const MeasurementSet& set) {
  check_set_against(set, sched);
  check_density(rho);
  Mat2 acc = heisenberg_observable(set.performed.back(), sched);
  for (int j = set.size() - 2; j >= 0; --j) {
    Mat2 m = heisenberg_observable(set.performed[static_cast<size_t>(j)], sched);
    acc = 0.5 * anticommutator(m, acc);
  }
  return (rho * acc).trace().real();
}

}  // namespace lgv

#include "lgv/nsit.hpp"

#include <string>

#include "lgv/errors.hpp"
#include "lgv/functionals.hpp"
#include "lgv/sequential.hpp"

namespace lgv {

namespace {

void require_three(const Schedule& sched) {
  if (sched.n() != 3) throw contract_error("disturbance map needs a three-slot schedule");
}

// Full three-slot joint; word bit j is slot j+1, set bit means outcome -1.
std::vector<double> full3(const Mat2& rho, const Schedule& sched) {
  return joint_distribution(rho, sched, MeasurementSet::all(3));
}

int bit_of(int m) { return m < 0 ? 1 : 0; }

}  // namespace

int pair_index(int ma, int mb) { return 2 * bit_of(ma) + bit_of(mb); }

int solo_index(int m) { return bit_of(m); }

std::array<double, 4> disturbance_D1(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::vector<double> full = full3(rho, sched);
  std::array<double, 4> out{};
  for (int m2 : {+1, -1}) {
    for (int m3 : {+1, -1}) {
      double reduced = joint_probability(rho, sched, MeasurementSet({2, 3}),
                                         OutcomeString({m2, m3}));
      double marg = 0.0;
      for (int m1 : {+1, -1}) {
        marg += full[static_cast<size_t>(bit_of(m1) | bit_of(m2) << 1 | bit_of(m3) << 2)];
      }
      out[static_cast<size_t>(pair_index(m2, m3))] = reduced - marg;
    }
  }
  return out;
}

std::array<double, 4> disturbance_D2(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::vector<double> full = full3(rho, sched);
  std::array<double, 4> out{};
  for (int m1 : {+1, -1}) {
    for (int m3 : {+1, -1}) {
      double reduced = joint_probability(rho, sched, MeasurementSet({1, 3}),
                                         OutcomeString({m1, m3}));
      double marg = 0.0;
      for (int m2 : {+1, -1}) {
        marg += full[static_cast<size_t>(bit_of(m1) | bit_of(m2) << 1 | bit_of(m3) << 2)];
      }
      out[static_cast<size_t>(pair_index(m1, m3))] = reduced - marg;
    }
  }
  return out;
}

std::array<double, 4> disturbance_D3(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::vector<double> full = full3(rho, sched);
  std::array<double, 4> out{};
  for (int m1 : {+1, -1}) {
    for (int m2 : {+1, -1}) {
      double reduced = joint_probability(rho, sched, MeasurementSet({1, 2}),
                                         OutcomeString({m1, m2}));
      double marg = 0.0;
      for (int m3 : {+1, -1}) {
        marg += full[static_cast<size_t>(bit_of(m1) | bit_of(m2) << 1 | bit_of(m3) << 2)];
      }
      out[static_cast<size_t>(pair_index(m1, m2))] = reduced - marg;
    }
  }
  return out;
}

std::array<double, 2> disturbance_D12(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  return disturbance_general(rho, sched, 3);
}

double alpha_statistic(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::vector<double> full = full3(rho, sched);
  // (+,-,+) is word 0b010, (-,+,-) is word 0b101.
  return full[2] + full[5];
}

double beta_statistic(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::vector<double> full = full3(rho, sched);
  // (+,-,+) is word 0b010, (-,+,+) is word 0b001.
  return full[2] + full[1];
}

double gamma_statistic(const Mat2& rho, const Schedule& sched) {
  if (sched.n() < 3) throw contract_error("gamma needs at least three slots");
  double all = eval_all_measured(FunctionalSpec::variant_K3(sched.n()), rho, sched);
  return 0.25 * (1.0 - all);
}

DisturbanceReport disturbance_report(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  DisturbanceReport r;
  r.d1 = disturbance_D1(rho, sched);
  r.d2 = disturbance_D2(rho, sched);
  r.d3 = disturbance_D3(rho, sched);
  r.d12 = disturbance_D12(rho, sched);
  r.alpha = alpha_statistic(rho, sched);
  r.beta = beta_statistic(rho, sched);
  r.gamma = gamma_statistic(rho, sched);
  return r;
}

double decomposition_check_standard(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  FunctionalSpec k3 = FunctionalSpec::standard_K(3);
  double lhs = eval_separate(k3, rho, sched) - eval_all_measured(k3, rho, sched);
  std::array<double, 4> d1 = disturbance_D1(rho, sched);
  std::array<double, 4> d2 = disturbance_D2(rho, sched);
  double rhs = 0.0;
  for (int ma : {+1, -1}) {
    for (int mb : {+1, -1}) {
      double w = (ma == mb) ? 1.0 : -1.0;
      rhs += w * d1[static_cast<size_t>(pair_index(ma, mb))];
      rhs -= w * d2[static_cast<size_t>(pair_index(ma, mb))];
    }
  }
  return std::abs(lhs - rhs);
}

ViolationCondition violation_condition_standard(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::array<double, 4> d1 = disturbance_D1(rho, sched);
  std::array<double, 4> d2 = disturbance_D2(rho, sched);
  double lhs = 0.0;
  for (int m : {+1, -1}) {
    lhs += d1[static_cast<size_t>(pair_index(m, m))];
    lhs -= d2[static_cast<size_t>(pair_index(m, m))];
  }
  double threshold = 2.0 * alpha_statistic(rho, sched);
  double value = eval_separate(FunctionalSpec::standard_K(3), rho, sched);
  return {lhs, threshold, value > 1.0};
}

ViolationCondition violation_condition_variant(const Mat2& rho, const Schedule& sched) {
  require_three(sched);
  std::array<double, 2> d12 = disturbance_D12(rho, sched);
  // -sum_m3 m3*D12(m3); the two entries cancel pairwise so this is 2*D12(-).
  double lhs = d12[static_cast<size_t>(solo_index(-1))] -
               d12[static_cast<size_t>(solo_index(+1))];
  double threshold = 4.0 * beta_statistic(rho, sched);
  double value = eval_separate(FunctionalSpec::variant_K3(3), rho, sched);
  return {lhs, threshold, value > 1.0};
}

std::array<double, 2> disturbance_general(const Mat2& rho, const Schedule& sched,
                                          int final_index) {
  int n = sched.n();
  if (n < 3) throw contract_error("general disturbance needs at least three slots");
  if (final_index != n) {
    throw contract_error("general disturbance is defined for the final slot");
  }
  if (n > MAX_ENUM_N) {
    throw resource_error("general disturbance enumeration capped at " +
                         std::to_string(MAX_ENUM_N) + " slots");
  }
  std::vector<double> full = joint_distribution(rho, sched, MeasurementSet::all(n));
  std::array<double, 2> marg{};
  size_t final_bit = size_t{1} << (n - 1);
  for (size_t word = 0; word < full.size(); ++word) {
    marg[(word & final_bit) ? 1 : 0] += full[word];
  }
  std::array<double, 2> out{};
  for (int m : {+1, -1}) {
    double solo = joint_probability(rho, sched, MeasurementSet({n}), OutcomeString({m}));
    out[static_cast<size_t>(solo_index(m))] = solo - marg[static_cast<size_t>(solo_index(m))];
  }
  return out;
}

}  // namespace lgv

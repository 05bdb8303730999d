#include <doctest.h>

#include <cmath>

#include "lgv/errors.hpp"
#include "lgv/functionals.hpp"
#include "lgv/nsit.hpp"
#include "support.hpp"

using namespace lgv;
using testsupport::Draws;
using testsupport::kPi;

TEST_CASE("outcome indexers") {
  CHECK(pair_index(+1, +1) == 0);
  CHECK(pair_index(+1, -1) == 1);
  CHECK(pair_index(-1, +1) == 2);
  CHECK(pair_index(-1, -1) == 3);
  CHECK(solo_index(+1) == 0);
  CHECK(solo_index(-1) == 1);
}

TEST_CASE("zero coupling leaves no disturbance") {
  Mat2 rho = density_from_pure(PureState(0.6, 1.1));
  Schedule s = Schedule::equal(3, 0.0);
  DisturbanceReport rep = disturbance_report(rho, s);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(rep.d1[i]) < 1e-12);
    CHECK(std::abs(rep.d2[i]) < 1e-12);
    CHECK(std::abs(rep.d3[i]) < 1e-12);
  }
  CHECK(std::abs(rep.d12[0]) < 1e-12);
  CHECK(std::abs(rep.d12[1]) < 1e-12);
  CHECK(std::abs(rep.alpha) < 1e-12);
  CHECK(std::abs(rep.beta) < 1e-12);
  CHECK(std::abs(rep.gamma) < 1e-12);
}

TEST_CASE("the last measurement never signals backwards") {
  Draws d(41);
  for (int t = 0; t < 50; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s = d.schedule(3);
    auto d3 = disturbance_D3(rho, s);
    for (double v : d3) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("fully measured functionals reduce to flip statistics") {
  // all-measured standard value = 1 - 4 alpha; all-measured variant = 1 - 4 beta
  Draws d(42);
  FunctionalSpec k3 = FunctionalSpec::standard_K(3);
  FunctionalSpec v3 = FunctionalSpec::variant_K3(3);
  for (int t = 0; t < 50; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s = d.schedule(3);
    DisturbanceReport rep = disturbance_report(rho, s);
    CHECK(std::abs(eval_all_measured(k3, rho, s) - (1 - 4 * rep.alpha)) < 1e-12);
    CHECK(std::abs(eval_all_measured(v3, rho, s) - (1 - 4 * rep.beta)) < 1e-12);
    CHECK(rep.alpha >= -1e-15);
    CHECK(rep.beta >= -1e-15);
    CHECK(std::abs(rep.gamma - (1 - eval_all_measured(v3, rho, s)) / 4) < 1e-12);
  }
}

TEST_CASE("separate-vs-joint decomposition closes exactly") {
  Draws d(43);
  for (int t = 0; t < 50; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s = d.schedule(3);
    CHECK(decomposition_check_standard(rho, s) < 1e-10);
  }
}

TEST_CASE("violation conditions are biconditional") {
  Draws d(44);
  FunctionalSpec k3 = FunctionalSpec::standard_K(3);
  FunctionalSpec v3 = FunctionalSpec::variant_K3(3);
  int std_violations = 0, var_violations = 0;
  for (int t = 0; t < 100; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s = d.schedule(3);
    ViolationCondition cs = violation_condition_standard(rho, s);
    ViolationCondition cv = violation_condition_variant(rho, s);
    CHECK(cs.violated == (eval_separate(k3, rho, s) > 1.0));
    CHECK(cv.violated == (eval_separate(v3, rho, s) > 1.0));
    CHECK(cs.violated == (cs.lhs > cs.threshold));
    CHECK(cv.violated == (cv.lhs > cv.threshold));
    std_violations += cs.violated;
    var_violations += cv.violated;
  }
  CHECK(std_violations > 0);  // random draws do hit violating regions
  CHECK(var_violations > 0);
}

TEST_CASE("variant condition reads off the two-step disturbance") {
  // lhs = -sum_m m * D12(m) = 2 D12(-) since the two entries cancel
  Draws d(45);
  for (int t = 0; t < 50; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s = d.schedule(3);
    auto d12 = disturbance_D12(rho, s);
    CHECK(std::abs(d12[0] + d12[1]) < 1e-13);  // entries sum to zero
    ViolationCondition cv = violation_condition_variant(rho, s);
    CHECK(std::abs(cv.lhs - 2 * d12[1]) < 1e-13);
    CHECK(std::abs(cv.threshold - 4 * beta_statistic(rho, s)) < 1e-13);
  }
}

TEST_CASE("general final-slot disturbance") {
  Draws d(46);
  for (int t = 0; t < 20; ++t) {
    Mat2 rho = density_from_pure(d.state());
    Schedule s3 = d.schedule(3);
    auto direct = disturbance_D12(rho, s3);
    auto general = disturbance_general(rho, s3, 3);
    CHECK(std::abs(direct[0] - general[0]) < 1e-14);
    CHECK(std::abs(direct[1] - general[1]) < 1e-14);

    Schedule s5 = d.schedule(5);
    auto wide = disturbance_general(rho, s5, 5);
    CHECK(std::abs(wide[0] + wide[1]) < 1e-13);
  }
  Mat2 rho = density_from_pure(PureState(0.5, 0.5));
  CHECK_THROWS_AS(disturbance_general(rho, Schedule::equal(4, 0.3), 3), contract_error);
  CHECK_THROWS_AS(disturbance_report(rho, Schedule::equal(4, 0.3)), contract_error);
}

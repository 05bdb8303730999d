#include <doctest.h>

#include <cmath>

#include "lgv/errors.hpp"
#include "lgv/search.hpp"
#include "support.hpp"

using namespace lgv;
using testsupport::kPi;

TEST_CASE("config validation") {
  SearchConfig cfg;
  cfg.grid_g = 7;
  CHECK_THROWS_AS(cfg.validate(), contract_error);
  cfg = SearchConfig{};
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), contract_error);
  cfg = SearchConfig{};
  cfg.top_seeds = 0;
  CHECK_THROWS_AS(cfg.validate(), contract_error);
  CHECK_NOTHROW(SearchConfig{}.validate());
}

TEST_CASE("standard three-slot search lands on the known ceiling") {
  ViolationReport rep = optimize(FunctionalSpec::standard_K(3), SearchConfig{});
  CHECK(std::abs(rep.best_value - 1.5) < 1e-6);
  REQUIRE(rep.best_couplings.size() == 1);  // equal couplings report one value
  double g = rep.best_couplings[0];
  double dist = std::min(std::abs(g - kPi / 6), std::abs(g - 5 * kPi / 6));
  CHECK(dist < 1e-5);
  CHECK(rep.macrorealist_max == doctest::Approx(1.0));
  CHECK(rep.algebraic_max == doctest::Approx(3.0));
  CHECK(rep.margin == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("search is deterministic") {
  ViolationReport a = optimize(FunctionalSpec::variant_K3(3), SearchConfig{});
  ViolationReport b = optimize(FunctionalSpec::variant_K3(3), SearchConfig{});
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_theta == b.best_theta);
  CHECK(a.best_phi == b.best_phi);
  CHECK(a.best_couplings == b.best_couplings);
  CHECK(a.best_value > 1.90);
  CHECK(a.best_value <= 3.0);
}

TEST_CASE("independent couplings reach the two-slot ceiling") {
  SearchConfig cfg;
  cfg.equal_couplings = false;
  cfg.grid_g = 24;
  cfg.grid_theta = 16;
  cfg.grid_phi = 16;
  ViolationReport rep = optimize(FunctionalSpec::variant_K3(3), cfg);
  REQUIRE(rep.best_couplings.size() == 2);
  CHECK(rep.best_value >= 1.99);
  CHECK(rep.best_value <= 2.0 + 1e-9);
}

TEST_CASE("sweep tabulates the requested axis") {
  FunctionalSpec k3 = FunctionalSpec::standard_K(3);
  auto pts = sweep(k3, SweepAxis::g, 0.0, kPi, 7, 0.0, 0.3, 0.4);
  REQUIRE(pts.size() == 7);
  CHECK(pts.front().x == doctest::Approx(0.0));
  CHECK(pts.back().x == doctest::Approx(kPi));
  for (const auto& p : pts) {
    double direct = eval_separate(k3, density_from_pure(PureState(0.3, 0.4)),
                                  Schedule::equal(3, p.x));
    CHECK(std::abs(p.value - direct) < 1e-12);
  }

  auto tpts = sweep(k3, SweepAxis::theta, 0.0, kPi, 5, kPi / 6, 0.0, 0.0);
  for (const auto& p : tpts) {
    CHECK(std::abs(p.value - 1.5) < 1e-12);  // state independent
  }

  CHECK_THROWS_AS(sweep(k3, SweepAxis::n, 3, 9, 4, 0, 0, 0), contract_error);
  CHECK_THROWS_AS(sweep(k3, SweepAxis::g, 0, 1, 1, 0, 0, 0), contract_error);
}

TEST_CASE("slot-count sweep follows the shrinking-coupling rule") {
  auto pts = sweep_n(SpecFamily::VariantL3, 3, 9, 2, 0.0, kPi / 2);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].x == doctest::Approx(3));
  CHECK(pts[3].x == doctest::Approx(9));
  // n = 5 at g = pi/10: 2 cos^2(pi/5) + cos(pi/5)
  CHECK(std::abs(pts[1].value - 2.118033988749895) < 1e-12);
  for (const auto& p : pts) {
    int n = static_cast<int>(p.x);
    double direct = eval_separate(FunctionalSpec::variant_L3(n),
                                  density_from_pure(PureState(0.0, kPi / 2)),
                                  Schedule::equal(n, kPi / (2 * n)));
    CHECK(std::abs(p.value - direct) < 1e-12);
  }
  CHECK_THROWS_AS(sweep_n(SpecFamily::VariantL3, 2, 9, 2, 0.0, 0.0), contract_error);
  CHECK_THROWS_AS(sweep_n(SpecFamily::VariantL3, 3, 9, 0, 0.0, 0.0), contract_error);
}

TEST_CASE("asymptotic rows compare printed forms against runs") {
  auto rows = asymptotic_table(ClosedForm::L3OddN, {3, 5, 7, 9}, 0.0, kPi / 2);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(std::abs(r.difference) < 1e-10);  // exact family
    CHECK(r.simulated <= 3.0);
  }
  auto k3rows = asymptotic_table(ClosedForm::K3OddN, {5, 7}, 0.0, kPi / 2);
  for (const auto& r : k3rows) CHECK(std::abs(r.difference) < 1e-10);
}

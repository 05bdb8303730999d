#include <doctest.h>

#include <cmath>

#include "lgv/errors.hpp"
#include "lgv/functionals.hpp"
#include "support.hpp"

using namespace lgv;
using testsupport::Draws;
using testsupport::kPi;

TEST_CASE("builders and text round trip") {
  CHECK(format_spec(FunctionalSpec::standard_K(3)) == "+[1,2] +[2,3] -[1,3]");
  CHECK(format_spec(FunctionalSpec::standard_K(4)) == "+[1,2] +[2,3] +[3,4] -[1,4]");
  CHECK(format_spec(FunctionalSpec::variant_K3(3)) == "+[1,2,3] +[1,2] -[3]");
  CHECK(format_spec(FunctionalSpec::variant_K3(4)) == "+[1,2,3,4] +[1,2,3] -[4]");
  CHECK(format_spec(FunctionalSpec::variant_L3(4)) == "+[1,2,3] +[2,3,4] -[1,4]");
  CHECK(format_spec(FunctionalSpec::variant_L3(3)) == "+[1,2] +[2,3] -[1,3]");
  CHECK(format_spec(FunctionalSpec::three_time_variant(1, 2, 3)) ==
        "+[1,2,3] +[1,2] -[3]");
  CHECK(format_spec(FunctionalSpec::K3_4()) == format_spec(FunctionalSpec::variant_K3(4)));
  CHECK(format_spec(FunctionalSpec::L3_4()) == format_spec(FunctionalSpec::variant_L3(4)));

  for (const char* text : {"+[1,2] +[2,3] -[1,3]", "+[1,2]+[2,3]-[1,3]",
                           "  +[ 1 , 2 ]  + [2,3] - [1,3] "}) {
    FunctionalSpec spec = parse_spec(text);
    CHECK(spec.n == 3);
    CHECK(format_spec(spec) == "+[1,2] +[2,3] -[1,3]");
  }
  FunctionalSpec v = parse_spec("+[1,2,3]+[1,2]-[3]");
  CHECK(format_spec(v) == format_spec(FunctionalSpec::variant_K3(3)));

  CHECK_THROWS_AS(parse_spec(""), contract_error);
  CHECK_THROWS_AS(parse_spec("[1,2]"), contract_error);
  CHECK_THROWS_AS(parse_spec("+[]"), contract_error);
  CHECK_THROWS_AS(parse_spec("+[2,1]"), contract_error);
  CHECK_THROWS_AS(parse_spec("+[1,2] junk"), contract_error);
  CHECK_THROWS_AS(parse_spec("+[0,1]"), contract_error);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(FunctionalSpec(3, {{+1, {1, 4}}}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec(3, {{+2, {1, 2}}}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec(3, {{+1, {}}}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec(3, {{+1, {2, 2}}}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec(3, std::vector<Term>{}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec(1, {{+1, {1}}}), contract_error);
  CHECK_THROWS_AS(FunctionalSpec::standard_K(2), contract_error);
  CHECK_THROWS_AS(FunctionalSpec::variant_K3(2), contract_error);
  CHECK_THROWS_AS(FunctionalSpec::variant_L3(2), contract_error);
}

TEST_CASE("separate-run evaluation hits the known standard maximum") {
  FunctionalSpec k3 = FunctionalSpec::standard_K(3);
  Draws d(31);
  for (int t = 0; t < 20; ++t) {
    Mat2 rho = density_from_pure(d.state());
    double v = eval_separate(k3, rho, Schedule::equal(3, kPi / 6));
    CHECK(std::abs(v - 1.5) < 1e-12);  // state independent
  }
  CHECK_THROWS_AS(eval_separate(k3, density_from_pure(PureState(0.3, 0.3)),
                                Schedule::equal(4, 0.2)),
                  contract_error);
}

TEST_CASE("zero coupling turns the value into a sign sum") {
  Mat2 rho = density_from_pure(PureState(0.0, 0.0));
  Schedule s = Schedule::equal(3, 0.0);
  CHECK(std::abs(eval_separate(FunctionalSpec::variant_K3(3), rho, s) - 1.0) < 1e-12);
  CHECK(std::abs(eval_separate(FunctionalSpec::standard_K(3), rho, s) - 1.0) < 1e-12);
  CHECK(std::abs(eval_all_measured(FunctionalSpec::variant_K3(3), rho, s) - 1.0) < 1e-12);
}

TEST_CASE("separate and all-measured statistics differ under collapse") {
  Mat2 rho = density_from_pure(PureState(0.47276722, kPi / 2));
  Schedule s = Schedule::equal(3, 0.3983600269);
  FunctionalSpec v3 = FunctionalSpec::variant_K3(3);
  double sep = eval_separate(v3, rho, s);
  double all = eval_all_measured(v3, rho, s);
  CHECK(sep > 1.9);        // the violation lives in separate runs
  CHECK(all <= 1.0 + 1e-12);  // fully measured runs obey the bound
  CHECK(std::abs(sep - all) > 0.1);
}

TEST_CASE("enumerated bounds") {
  BoundPair k3 = macrorealist_bound(FunctionalSpec::standard_K(3));
  CHECK(k3.macrorealist_max == doctest::Approx(1.0));
  CHECK(k3.macrorealist_min == doctest::Approx(-3.0));
  CHECK(k3.algebraic_max == doctest::Approx(3.0));

  BoundPair k4 = macrorealist_bound(FunctionalSpec::standard_K(4));
  CHECK(k4.macrorealist_max == doctest::Approx(2.0));
  CHECK(k4.macrorealist_min == doctest::Approx(-2.0));

  for (int n = 3; n <= 10; ++n) {
    BoundPair a = macrorealist_bound(FunctionalSpec::variant_K3(n));
    BoundPair b = macrorealist_bound(FunctionalSpec::variant_L3(n));
    CHECK(a.macrorealist_max == doctest::Approx(1.0));
    CHECK(b.macrorealist_max == doctest::Approx(1.0));
    CHECK(a.algebraic_max == doctest::Approx(3.0));
    CHECK(b.algebraic_max == doctest::Approx(3.0));
  }

  CHECK_THROWS_AS(macrorealist_bound(FunctionalSpec::variant_K3(MAX_ENUM_N + 1)),
                  resource_error);
}

TEST_CASE("standard three-slot closed form is exact") {
  Draws d(32);
  for (int t = 0; t < 50; ++t) {
    double g = d.uniform(0, kPi);
    PureState st = d.state();
    ClosedFormComparison cmp = compare_closed_form(ClosedForm::K3Std, 3, g, st.theta, st.phi);
    CHECK(std::abs(cmp.delta) < 1e-12);
    CHECK(std::abs(cmp.closed - (2 * std::cos(2 * g) - std::cos(4 * g))) < 1e-12);
  }
}

TEST_CASE("printed three-slot variant form is inconsistent at zero coupling") {
  // at g = 0 the true value is the sign sum 1 for every state; the printed
  // expression degenerates to 2 cos(2 theta), so it is kept verbatim and
  // reported against the simulation instead of trusted
  Draws d(33);
  for (int t = 0; t < 20; ++t) {
    PureState st = d.state();
    ClosedFormComparison cmp =
        compare_closed_form(ClosedForm::K3Var3, 3, 0.0, st.theta, st.phi);
    CHECK(std::abs(cmp.simulated - 1.0) < 1e-12);
    CHECK(std::abs(cmp.closed - 2 * std::cos(2 * st.theta)) < 1e-12);
  }
}

TEST_CASE("printed two-triple form carries a mirrored phase") {
  Draws d(34);
  for (int t = 0; t < 50; ++t) {
    double g = d.uniform(0, kPi);
    PureState st = d.state();
    double closed = closed_form(ClosedForm::L3Var4, 4, g, st.theta, st.phi);
    double mirrored = eval_separate(FunctionalSpec::variant_L3(4),
                                    density_from_pure(PureState(st.theta, 2 * kPi - st.phi)),
                                    Schedule::equal(4, g));
    CHECK(std::abs(closed - mirrored) < 1e-10);
  }
}

TEST_CASE("printed four-slot variant form disagrees with the simulation") {
  // the printed expression carries sin(theta) where the dynamics demand
  // sin(2 theta); at theta = pi/2 the two differ by sin(6g) even after the
  // mirrored-phase correction
  double g = 1.0, theta = kPi / 2;
  double closed = closed_form(ClosedForm::K3Var4, 4, g, theta, kPi / 2);
  double sim = eval_separate(FunctionalSpec::variant_K3(4),
                             density_from_pure(PureState(theta, 3 * kPi / 2)),
                             Schedule::equal(4, g));
  CHECK(std::abs(closed - sim) > 0.1);
  CHECK(std::abs(std::abs(closed - sim) - std::abs(std::sin(6 * g))) < 1e-9);
}

TEST_CASE("slot-count closed forms on the z axis") {
  // at theta = 0 the printed n-slot forms match the simulation, except the
  // even two-block form, which drops a sin(2 theta) sin(phi) factor
  Draws d(35);
  struct Row { ClosedForm family; int n; };
  for (Row r : {Row{ClosedForm::K3EvenN, 6}, Row{ClosedForm::K3OddN, 7},
                Row{ClosedForm::L3OddN, 7}, Row{ClosedForm::K3EvenN, 12},
                Row{ClosedForm::K3OddN, 11}, Row{ClosedForm::L3OddN, 13}}) {
    for (int t = 0; t < 10; ++t) {
      double g = d.uniform(0, kPi);
      ClosedFormComparison cmp = compare_closed_form(r.family, r.n, g, 0.0, kPi / 2);
      CHECK(std::abs(cmp.delta) < 1e-10);
    }
  }

  // odd two-block functionals have only state-independent terms: the printed
  // form is exact at every state
  for (int t = 0; t < 10; ++t) {
    double g = d.uniform(0, kPi);
    PureState st = d.state();
    ClosedFormComparison cmp = compare_closed_form(ClosedForm::L3OddN, 9, g,
                                                   st.theta, st.phi);
    CHECK(std::abs(cmp.delta) < 1e-10);
  }

  // even two-block form: the dropped factor surfaces as cos^{n/2-1}(2g) sin(2g)
  for (int t = 0; t < 10; ++t) {
    double g = d.uniform(0, kPi);
    ClosedFormComparison cmp = compare_closed_form(ClosedForm::L3EvenN, 6, g, 0.0, kPi / 2);
    double head = std::pow(std::cos(2 * g), 2);
    CHECK(std::abs(cmp.delta - head * std::sin(2 * g)) < 1e-10);
  }

  CHECK_THROWS_AS(closed_form(ClosedForm::K3EvenN, 7, 0.1, 0.0, 0.0), contract_error);
  CHECK_THROWS_AS(closed_form(ClosedForm::L3OddN, 8, 0.1, 0.0, 0.0), contract_error);
}

TEST_CASE("closed form names") {
  CHECK(std::string(closed_form_name(ClosedForm::K3Std)) == "k3_std");
  CHECK(std::string(closed_form_name(ClosedForm::L3OddN)) == "l3_odd_n");
}

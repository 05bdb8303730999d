#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lgv/qubit.hpp"
#include "lgv/sequential.hpp"

namespace lgv {

// One signed correlator term: sign * <product of M_i over indices>.
struct Term {
  int sign;                  // +1 or -1
  std::vector<int> indices;  // non-empty, strictly increasing, 1-based
};

// Signed sum of sequential correlators over n measurement slots.
struct FunctionalSpec {
  FunctionalSpec(int n_, std::vector<Term> terms_);

  // K_n = <M1M2> + ... + <M_{n-1}M_n> - <M1Mn>, n >= 3.
  static FunctionalSpec standard_K(int n);
  // K^3_n = <M1...Mn> + <M1...M_{n-1}> - <Mn>, n >= 3.
  static FunctionalSpec variant_K3(int n);
  // L^3_n = <M1...M_{n-1}> + <M2...Mn> - <M1Mn>, n >= 3.
  static FunctionalSpec variant_L3(int n);
  // <M1M2M3> + <MiMj> - <Mk> on three slots, i < j.
  static FunctionalSpec three_time_variant(int i, int j, int k);
  static FunctionalSpec K3_4();
  static FunctionalSpec L3_4();

  int term_count() const { return static_cast<int>(terms.size()); }

  int n;
  std::vector<Term> terms;
};

// Macrorealist extrema over deterministic +-1 assignments plus the trivial
// term-count bound.
struct BoundPair {
  double macrorealist_min;
  double macrorealist_max;
  double algebraic_max;
};

// Each correlator from its own run (only that term's slots measured).
double eval_separate(const FunctionalSpec& spec, const Mat2& rho, const Schedule& sched);

// Every slot measured in one run; terms are marginals of the full joint.
double eval_all_measured(const FunctionalSpec& spec, const Mat2& rho, const Schedule& sched);

// Exhaustive 2^n enumeration; resource_error above MAX_ENUM_N.
BoundPair macrorealist_bound(const FunctionalSpec& spec);

// Printed closed-form expressions for the named families, evaluated verbatim.
// The simulation is the ground truth; where the two disagree the gap is
// surfaced through compare_closed_form, never patched.
enum class ClosedForm {
  K3Std,    // 2cos2g - cos4g
  K3Var3,   // three-slot variant
  K3Var4,   // four-slot variant
  L3Var4,   // four-slot two-triple variant
  K3EvenN,  // n-slot variant, even n
  K3OddN,   // n-slot variant, odd n
  L3EvenN,  // n-slot two-block variant, even n
  L3OddN,   // n-slot two-block variant, odd n
};

const char* closed_form_name(ClosedForm family);

double closed_form(ClosedForm family, int n, double g, double theta, double phi);

struct ClosedFormComparison {
  double closed;
  double simulated;
  double delta;  // closed - simulated
};

// Closed form vs eval_separate of the matching functional at equal couplings.
ClosedFormComparison compare_closed_form(ClosedForm family, int n, double g,
                                         double theta, double phi);

// Canonical text form, e.g. "+[1,2,3] +[1,2] -[3]".
std::string format_spec(const FunctionalSpec& spec);
FunctionalSpec parse_spec(std::string_view text);

}  // namespace lgv

#include "lgv/functionals.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <string>

#include "lgv/errors.hpp"

namespace lgv {

namespace {

void check_angles(double g, double theta, double phi) {
  if (!std::isfinite(g)) throw contract_error("coupling must be finite");
  PureState probe(theta, phi);  // range checks
  (void)probe;
}

int require_parity(ClosedForm family, int n) {
  bool want_even = family == ClosedForm::K3EvenN || family == ClosedForm::L3EvenN;
  bool want_odd = family == ClosedForm::K3OddN || family == ClosedForm::L3OddN;
  if (want_even && (n < 4 || n % 2 != 0)) {
    throw contract_error("family needs even n >= 4");
  }
  if (want_odd && (n < 3 || n % 2 != 1)) {
    throw contract_error("family needs odd n >= 3");
  }
  return n;
}

std::vector<int> range_indices(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

uint32_t term_mask(const Term& t) {
  uint32_t m = 0;
  for (int i : t.indices) m |= uint32_t{1} << (i - 1);
  return m;
}

}  // namespace

FunctionalSpec::FunctionalSpec(int n_, std::vector<Term> terms_)
    : n(n_), terms(std::move(terms_)) {
  if (n < 2) throw contract_error("functional needs at least two slots");
  if (terms.empty()) throw contract_error("functional needs at least one term");
  for (const Term& t : terms) {
    if (t.sign != 1 && t.sign != -1) throw contract_error("term sign must be +1 or -1");
    if (t.indices.empty()) throw contract_error("term subset must be non-empty");
    int prev = 0;
    for (int i : t.indices) {
      if (i <= prev) throw contract_error("term subset must be strictly increasing");
      if (i > n) throw contract_error("term subset exceeds slot count");
      prev = i;
    }
  }
}

FunctionalSpec FunctionalSpec::standard_K(int n) {
  if (n < 3) throw contract_error("standard functional needs n >= 3");
  std::vector<Term> t;
  for (int i = 1; i < n; ++i) t.push_back({+1, {i, i + 1}});
  t.push_back({-1, {1, n}});
  return FunctionalSpec(n, std::move(t));
}

FunctionalSpec FunctionalSpec::variant_K3(int n) {
  if (n < 3) throw contract_error("variant functional needs n >= 3");
  std::vector<Term> t;
  t.push_back({+1, range_indices(1, n)});
  t.push_back({+1, range_indices(1, n - 1)});
  t.push_back({-1, {n}});
  return FunctionalSpec(n, std::move(t));
}

FunctionalSpec FunctionalSpec::variant_L3(int n) {
  if (n < 3) throw contract_error("variant functional needs n >= 3");
  std::vector<Term> t;
  t.push_back({+1, range_indices(1, n - 1)});
  t.push_back({+1, range_indices(2, n)});
  t.push_back({-1, {1, n}});
  return FunctionalSpec(n, std::move(t));
}

FunctionalSpec FunctionalSpec::three_time_variant(int i, int j, int k) {
  if (i < 1 || j > 3 || i >= j || k < 1 || k > 3) {
    throw contract_error("three-slot variant needs 1 <= i < j <= 3 and k in 1..3");
  }
  std::vector<Term> t;
  t.push_back({+1, {1, 2, 3}});
  t.push_back({+1, {i, j}});
  t.push_back({-1, {k}});
  return FunctionalSpec(3, std::move(t));
}

FunctionalSpec FunctionalSpec::K3_4() { return variant_K3(4); }

FunctionalSpec FunctionalSpec::L3_4() { return variant_L3(4); }

double eval_separate(const FunctionalSpec& spec, const Mat2& rho, const Schedule& sched) {
  if (sched.n() != spec.n) throw contract_error("schedule does not match functional slots");
  double acc = 0.0;
  for (const Term& t : spec.terms) {
    acc += t.sign * correlator_nested(rho, sched, MeasurementSet(t.indices));
  }
  return acc;
}

double eval_all_measured(const FunctionalSpec& spec, const Mat2& rho, const Schedule& sched) {
  if (sched.n() != spec.n) throw contract_error("schedule does not match functional slots");
  if (spec.n > MAX_ENUM_N) {
    throw resource_error("all-measured evaluation capped at " +
                         std::to_string(MAX_ENUM_N) + " slots");
  }
  std::vector<double> dist = joint_distribution(rho, sched, MeasurementSet::all(spec.n));
  double acc = 0.0;
  for (const Term& t : spec.terms) {
    uint32_t mask = term_mask(t);
    double corr = 0.0;
    for (size_t word = 0; word < dist.size(); ++word) {
      int parity = std::popcount(static_cast<uint32_t>(word) & mask) & 1;
      corr += (1 - 2 * parity) * dist[word];
    }
    acc += t.sign * corr;
  }
  return acc;
}

BoundPair macrorealist_bound(const FunctionalSpec& spec) {
  if (spec.n > MAX_ENUM_N) {
    throw resource_error("deterministic-assignment enumeration capped at " +
                         std::to_string(MAX_ENUM_N) + " slots");
  }
  std::vector<uint32_t> masks;
  masks.reserve(spec.terms.size());
  for (const Term& t : spec.terms) masks.push_back(term_mask(t));
  double lo = 0.0, hi = 0.0;
  size_t total = size_t{1} << spec.n;
  for (size_t word = 0; word < total; ++word) {
    double v = 0.0;
    for (size_t t = 0; t < masks.size(); ++t) {
      int parity = std::popcount(static_cast<uint32_t>(word) & masks[t]) & 1;
      v += spec.terms[t].sign * (1 - 2 * parity);
    }
    if (word == 0) {
      lo = hi = v;
    } else {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  return {lo, hi, static_cast<double>(spec.terms.size())};
}

const char* closed_form_name(ClosedForm family) {
  switch (family) {
    case ClosedForm::K3Std: return "k3_std";
    case ClosedForm::K3Var3: return "k3_var3";
    case ClosedForm::K3Var4: return "k3_var4";
    case ClosedForm::L3Var4: return "l3_var4";
    case ClosedForm::K3EvenN: return "k3_even_n";
    case ClosedForm::K3OddN: return "k3_odd_n";
    case ClosedForm::L3EvenN: return "l3_even_n";
    case ClosedForm::L3OddN: return "l3_odd_n";
  }
  return "unknown";
}

double closed_form(ClosedForm family, int n, double g, double theta, double phi) {
  check_angles(g, theta, phi);
  double c2g = std::cos(2 * g), s2g = std::sin(2 * g);
  double c2t = std::cos(2 * theta), s2t = std::sin(2 * theta);
  double sp = std::sin(phi);
  switch (family) {
    case ClosedForm::K3Std:
      if (n != 3) throw contract_error("family is fixed at n=3");
      return 2 * c2g - std::cos(4 * g);
    case ClosedForm::K3Var3: {
      if (n != 3) throw contract_error("family is fixed at n=3");
      double cg2 = std::cos(g) * std::cos(g);
      return c2g * (4 * cg2 * c2t) + std::sin(4 * g) * s2t * sp - 2 * cg2 * c2t;
    }
    case ClosedForm::K3Var4: {
      if (n != 4) throw contract_error("family is fixed at n=4");
      return 0.5 * (1 + std::cos(4 * g) + 8 * c2g * s2g * s2g * c2t -
                    2 * std::sin(6 * g) * std::sin(theta) * sp);
    }
    case ClosedForm::L3Var4: {
      if (n != 4) throw contract_error("family is fixed at n=4");
      double cg2 = std::cos(g) * std::cos(g);
      return 2 * cg2 * c2g * c2t - std::cos(6 * g) + 0.5 * std::sin(4 * g) * s2t * sp;
    }
    case ClosedForm::K3EvenN: {
      require_parity(family, n);
      double tail = std::cos(2 * (n - 1) * g) * c2t + std::sin(2 * (n - 1) * g) * s2t * sp;
      return std::pow(c2g, n / 2) + std::pow(c2g, n / 2 - 1) - tail;
    }
    case ClosedForm::K3OddN: {
      require_parity(family, n);
      double head = std::pow(c2g, (n - 1) / 2);
      double tail = std::cos(2 * (n - 1) * g) * c2t + std::sin(2 * (n - 1) * g) * s2t * sp;
      return head * c2t + head - tail;
    }
    case ClosedForm::L3EvenN: {
      require_parity(family, n);
      double head = std::pow(c2g, n / 2 - 1);
      return head * c2t + head * (c2g * c2t + s2g) - std::cos(2 * (n - 1) * g);
    }
    case ClosedForm::L3OddN: {
      require_parity(family, n);
      return 2 * std::pow(c2g, (n - 1) / 2) - std::cos(2 * (n - 1) * g);
    }
  }
  throw contract_error("unknown closed-form family");
}

ClosedFormComparison compare_closed_form(ClosedForm family, int n, double g,
                                         double theta, double phi) {
  FunctionalSpec spec = [&] {
    switch (family) {
      case ClosedForm::K3Std: return FunctionalSpec::standard_K(3);
      case ClosedForm::K3Var3: return FunctionalSpec::variant_K3(3);
      case ClosedForm::K3Var4: return FunctionalSpec::variant_K3(4);
      case ClosedForm::L3Var4: return FunctionalSpec::variant_L3(4);
      case ClosedForm::K3EvenN:
      case ClosedForm::K3OddN: return FunctionalSpec::variant_K3(require_parity(family, n));
      case ClosedForm::L3EvenN:
      case ClosedForm::L3OddN: return FunctionalSpec::variant_L3(require_parity(family, n));
    }
    throw contract_error("unknown closed-form family");
  }();
  double closed = closed_form(family, spec.n, g, theta, phi);
  double simulated = eval_separate(spec, density_from_pure(PureState(theta, phi)),
                                   Schedule::equal(spec.n, g));
  return {closed, simulated, closed - simulated};
}

std::string format_spec(const FunctionalSpec& spec) {
  std::string out;
  for (size_t t = 0; t < spec.terms.size(); ++t) {
    if (t > 0) out += ' ';
    out += spec.terms[t].sign > 0 ? '+' : '-';
    out += '[';
    for (size_t j = 0; j < spec.terms[t].indices.size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(spec.terms[t].indices[j]);
    }
    out += ']';
  }
  return out;
}

FunctionalSpec parse_spec(std::string_view text) {
  std::vector<Term> terms;
  size_t pos = 0;
  int max_index = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    int sign;
    if (text[pos] == '+') {
      sign = +1;
    } else if (text[pos] == '-') {
      sign = -1;
    } else {
      throw contract_error("expected '+' or '-' at position " + std::to_string(pos));
    }
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != '[') {
      throw contract_error("expected '[' after sign");
    }
    ++pos;
    std::vector<int> indices;
    while (true) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw contract_error("expected slot index");
      int value = 0;
      for (size_t j = start; j < pos; ++j) {
        value = value * 10 + (text[j] - '0');
        if (value > 1000000) throw contract_error("slot index too large");
      }
      indices.push_back(value);
      max_index = std::max(max_index, value);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      throw contract_error("expected ',' or ']' in subset");
    }
    terms.push_back({sign, std::move(indices)});
    skip_ws();
  }
  if (terms.empty()) throw contract_error("empty functional text");
  return FunctionalSpec(std::max(max_index, 2), std::move(terms));
}

}  // namespace lgv

#include "lgv/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgv/errors.hpp"

namespace lgv {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw contract_error(std::string(what) + " must be finite");
  }
}
}  // namespace

Mat2 Mat2::zero() { return Mat2{}; }

Mat2 Mat2::identity() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  return m;
}

Mat2 Mat2::pauli_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Mat2 Mat2::pauli_y() {
  Mat2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

Mat2 Mat2::pauli_z() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Mat2 Mat2::adjoint() const {
  Mat2 r;
  r(0, 0) = std::conj((*this)(0, 0));
  r(0, 1) = std::conj((*this)(1, 0));
  r(1, 0) = std::conj((*this)(0, 1));
  r(1, 1) = std::conj((*this)(1, 1));
  return r;
}

cplx Mat2::trace() const { return a[0] + a[3]; }

double Mat2::max_abs_diff(const Mat2& other) const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(a[i] - other.a[i]));
  }
  return worst;
}

bool Mat2::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

bool Mat2::is_unitary(double tol) const {
  return (adjoint() * (*this)).max_abs_diff(identity()) <= tol;
}

bool Mat2::is_involution(double tol) const {
  return is_hermitian(tol) && ((*this) * (*this)).max_abs_diff(identity()) <= tol;
}

bool Mat2::is_density(double tol) const {
  if (!is_hermitian(tol)) return false;
  if (std::abs(trace() - cplx(1.0, 0.0)) > tol) return false;
  auto ev = eigenvalues_hermitian();
  return ev[1] >= -tol;
}

std::array<double, 2> Mat2::eigenvalues_hermitian() const {
  double mean = 0.5 * ((*this)(0, 0).real() + (*this)(1, 1).real());
  double half = 0.5 * ((*this)(0, 0).real() - (*this)(1, 1).real());
  double rad = std::sqrt(half * half + std::norm((*this)(0, 1)));
  return {mean + rad, mean - rad};
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  r(0, 0) = x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0);
  r(0, 1) = x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1);
  r(1, 0) = x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0);
  r(1, 1) = x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1);
  return r;
}

Mat2 operator*(cplx s, const Mat2& x) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.a[i] = s * x.a[i];
  return r;
}

Mat2 operator*(double s, const Mat2& x) { return cplx(s, 0.0) * x; }

Mat2 anticommutator(const Mat2& x, const Mat2& y) { return x * y + y * x; }

PureState::PureState(double theta_, double phi_) : theta(theta_), phi(phi_) {
  require_finite(theta, "theta");
  require_finite(phi, "phi");
  if (theta < 0.0 || theta > kPi) {
    throw contract_error("theta outside [0, pi]");
  }
  if (phi < 0.0 || phi > 2.0 * kPi) {
    throw contract_error("phi outside [0, 2pi]");
  }
}

Schedule::Schedule(std::vector<double> couplings_) : couplings(std::move(couplings_)) {
  if (couplings.empty()) {
    throw contract_error("schedule needs at least one coupling (two slots)");
  }
  for (double g : couplings) require_finite(g, "coupling");
}

Schedule Schedule::equal(int n, double g) {
  if (n < 2) throw contract_error("schedule needs at least two slots");
  require_finite(g, "coupling");
  return Schedule(std::vector<double>(static_cast<size_t>(n - 1), g));
}

double Schedule::cumulative_angle(int i) const {
  if (i < 1 || i > n()) throw contract_error("slot index outside schedule");
  double G = 0.0;
  for (int j = 0; j < i - 1; ++j) G += couplings[static_cast<size_t>(j)];
  return G;
}

Mat2 density_from_pure(const PureState& s) {
  cplx a0 = std::cos(s.theta);
  cplx a1 = std::exp(cplx(0.0, -s.phi)) * std::sin(s.theta);
  Mat2 rho;
  rho(0, 0) = a0 * std::conj(a0);
  rho(0, 1) = a0 * std::conj(a1);
  rho(1, 0) = a1 * std::conj(a0);
  rho(1, 1) = a1 * std::conj(a1);
  return rho;
}

Mat2 evolution(double g) {
  require_finite(g, "coupling");
  Mat2 u = Mat2::identity();
  u(0, 0) = u(1, 1) = std::cos(g);
  u(0, 1) = u(1, 0) = cplx(0.0, -std::sin(g));
  return u;
}

Mat2 heisenberg_observable(int i, const Schedule& sched) {
  return heisenberg_observable(i, sched, Mat2::pauli_z());
}

Mat2 heisenberg_observable(int i, const Schedule& sched, const Mat2& base) {
  if (!base.is_involution(1e-12)) {
    throw contract_error("observable base must be a Hermitian involution");
  }
  Mat2 u = evolution(sched.cumulative_angle(i));
  return u.adjoint() * base * u;
}

Mat2 projector(const Mat2& obs, int outcome) {
  if (outcome != 1 && outcome != -1) throw contract_error("outcome must be +1 or -1");
  if (!obs.is_involution(1e-12)) {
    throw contract_error("projector needs a Hermitian involution");
  }
  return 0.5 * (Mat2::identity() + static_cast<double>(outcome) * obs);
}

}  // namespace lgv

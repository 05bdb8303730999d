#pragma once

#include <array>
#include <complex>
#include <vector>

namespace lgv {

using cplx = std::complex<double>;

// 2x2 complex matrix, row major. Everything the two-level model needs is
// closed-form at this size, so the algebra is spelled out by hand.
struct Mat2 {
  std::array<cplx, 4> a{};

  cplx& operator()(int r, int c) { return a[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return a[2 * r + c]; }

  static Mat2 zero();
  static Mat2 identity();
  static Mat2 pauli_x();
  static Mat2 pauli_y();
  static Mat2 pauli_z();

  Mat2 adjoint() const;
  cplx trace() const;

  double max_abs_diff(const Mat2& other) const;
  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  // Hermitian with M*M = I within tol.
  bool is_involution(double tol) const;
  // Hermitian, unit trace, eigenvalues >= -tol.
  bool is_density(double tol) const;
  // Eigenvalues of a Hermitian matrix, descending.
  std::array<double, 2> eigenvalues_hermitian() const;
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, const Mat2& x);
Mat2 operator*(double s, const Mat2& x);
Mat2 anticommutator(const Mat2& x, const Mat2& y);

// |psi> = cos(theta)|0> + exp(-i phi) sin(theta)|1>, theta in [0,pi], phi in [0,2pi].
struct PureState {
  double theta;
  double phi;
  PureState(double theta_, double phi_);
};

// Rotation angles between the n measurement slots; couplings[j] acts between
// slot j+1 and slot j+2 (1-based slots). Accumulated angle G_i drives the
// Heisenberg observable at slot i.
struct Schedule {
  explicit Schedule(std::vector<double> couplings_);
  static Schedule equal(int n, double g);

  int n() const { return static_cast<int>(couplings.size()) + 1; }
  // G_i = sum of couplings before slot i; G_1 = 0. i is 1-based.
  double cumulative_angle(int i) const;

  std::vector<double> couplings;
};

Mat2 density_from_pure(const PureState& s);

// exp(-i g sigma_x) = cos(g) I - i sin(g) sigma_x.
Mat2 evolution(double g);

// M_i = U(G_i)^dag base U(G_i); base defaults to sigma_z and must be a
// Hermitian involution.
Mat2 heisenberg_observable(int i, const Schedule& sched);
Mat2 heisenberg_observable(int i, const Schedule& sched, const Mat2& base);

// (I + outcome*obs)/2 for outcome in {+1,-1}; obs must be a Hermitian involution.
Mat2 projector(const Mat2& obs, int outcome);

}  // namespace lgv

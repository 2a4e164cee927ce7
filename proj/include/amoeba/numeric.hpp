#pragma once

// Dense complex numerics: univariate root finding (Aberth-Ehrlich), LU
// determinants and solves, Sylvester resultants by evaluation/interpolation
// on circles, and the unit-torus reflection g -> g*.

#include <complex>
#include <span>
#include <vector>

#include "amoeba/laurent.hpp"

namespace amoeba {

/// Dense univariate polynomial, coefficients in ascending degree.
struct UniPoly {
  std::vector<Complex> coeffs;

  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> c) : coeffs(std::move(c)) {}

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator()(Complex t) const;
  Complex derivative_at(Complex t) const;
  double max_modulus() const;

  /// Removes leading coefficients with modulus <= rel × max modulus.
  UniPoly trimmed(double rel = 1e-13) const;
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
  double radius = 0.0;
};

struct RootResult {
  std::vector<RootCluster> clusters;
  std::vector<Complex> raw;  // unclustered approximations, one per root
  bool converged = true;
  double max_residual = 0.0;  // max |p(center)| / Σ|a_k||center|^k
  int iterations = 0;
};

/// All roots of p (degree >= 1 after trimming). Exact zero roots are split
/// off before iteration. Never throws on slow convergence; check `converged`.
RootResult roots(const UniPoly& p);

/// Row-major dense complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int r, int c) { return data_[r * cols_ + c]; }
  Complex operator()(int r, int c) const { return data_[r * cols_ + c]; }

  static Matrix identity(int n);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// LU with partial pivoting.
Complex det(Matrix m);

/// Solves A x = b; throws SingularMatrix when a pivot is below 1e-12 × the
/// row scale.
std::vector<Complex> solve_linear(Matrix a, std::span<const Complex> b);

/// Numerical rank by Gaussian elimination with full pivoting.
int rank(Matrix m, double rel_tol = 1e-10);

/// Dense bivariate polynomial Σ c[i2][i1] t1^i1 t2^i2, viewed as a
/// polynomial in t2 with coefficients that are polynomials in t1.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(int deg1, int deg2)
      : deg1_(deg1), deg2_(deg2), c_((deg1 + 1) * (deg2 + 1)) {}

  /// From a two-variable Laurent polynomial with non-negative exponents.
  static BiPoly from_laurent(const LaurentPoly& f);

  int deg1() const { return deg1_; }
  int deg2() const { return deg2_; }
  Complex& at(int i1, int i2) { return c_[i2 * (deg1_ + 1) + i1]; }
  Complex at(int i1, int i2) const { return c_[i2 * (deg1_ + 1) + i1]; }

  Complex operator()(Complex t1, Complex t2) const;
  /// Coefficient polynomial of t2^k, as a polynomial in t1.
  UniPoly coefficient_in_t2(int k) const;
  /// The univariate polynomial in t2 obtained by fixing t1.
  UniPoly at_t1(Complex t1) const;
  /// The univariate polynomial in t1 obtained by fixing t2.
  UniPoly at_t2(Complex t2) const;
  double max_modulus() const;

 private:
  int deg1_ = -1;
  int deg2_ = -1;
  std::vector<Complex> c_;
};

/// Sylvester determinant of two univariate polynomials (formal degrees).
Complex sylvester_det(const UniPoly& g, const UniPoly& h);

struct ResultantOptions {
  double trim_rel = 1e-10;
  double zero_rel = 1e-12;
};

/// Res_{t2}(g, h) as a polynomial in t1, by evaluating Sylvester
/// determinants at roots of unity (radius 1, falling back to 0.7 / 1.3 when
/// an independent check node disagrees) and inverse DFT. Throws
/// IdenticallyZero when every sampled determinant vanishes.
UniPoly sylvester_resultant(const BiPoly& g, const BiPoly& h,
                            const ResultantOptions& opts = {});

/// g*(t) = t^d · conj(g)(1/t). On the unit circle / torus g and g* vanish
/// together. Requires d >= deg g componentwise.
UniPoly conj_reciprocal(const UniPoly& g, int d);
BiPoly conj_reciprocal(const BiPoly& g, int d1, int d2);
LaurentPoly conj_reciprocal(const LaurentPoly& g, const Exponent& d);

}  // namespace amoeba

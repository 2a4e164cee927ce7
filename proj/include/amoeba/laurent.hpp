#pragma once

// Sparse complex Laurent polynomials in n variables.
//
// Coefficients are double-precision complex numbers and exponents signed
// 32-bit integers. All operations are pure; a LaurentPoly is immutable once
// it has been handed to a solver and can be shared freely between threads.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace amoeba {

using Complex = std::complex<double>;
using Exponent = std::vector<std::int32_t>;

/// Exponents with absolute value above this are rejected.
inline constexpr std::int64_t kMaxExponent = 1'000'000;

/// Relative pruning threshold applied after arithmetic.
inline constexpr double kPruneRelative = 1e-14;

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Complex>;

  explicit LaurentPoly(int nvars = 2);

  static LaurentPoly constant(int nvars, Complex c);
  static LaurentPoly monomial(Complex c, Exponent e);
  /// The coordinate function z_j (0-based j).
  static LaurentPoly variable(int nvars, int j);

  int nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(const Exponent& e) const;

  /// Adds c·z^e. Exactly cancelling terms are removed; no relative pruning.
  void add_term(const Exponent& e, Complex c);

  /// Drops coefficients with modulus below rel × (max modulus).
  LaurentPoly pruned(double rel = kPruneRelative) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  LaurentPoly scaled(Complex c) const;

  /// Multiplies by z^beta.
  LaurentPoly shifted(const Exponent& beta) const;

  /// Componentwise minimum / maximum exponent. Zero vector for empty input.
  Exponent min_exponent() const;
  Exponent max_exponent() const;

  /// Total degree after clearing denominators, i.e. max |alpha - min|_1.
  int cleared_degree() const;

  /// Largest coefficient modulus (0 for the empty polynomial).
  double max_modulus() const;

  bool depends_on(int j) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  int nvars_;
  TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b);

/// z^k for integer k, by repeated squaring.
Complex ipow(Complex z, std::int64_t k);

/// Σ b_α z^α with compensated summation. Throws ZeroCoordinate when some
/// z_j = 0 meets a negative exponent.
Complex eval(const LaurentPoly& f, std::span<const Complex> z);

/// ∂f/∂z_j for 0-based j.
LaurentPoly partial(const LaurentPoly& f, int j);

/// z_j · ∂f/∂z_j, the j-th component of the logarithmic Gauss map numerator.
LaurentPoly log_gauss_numerator(const LaurentPoly& f, int j);

// ---------------------------------------------------------------------------
// Realification

/// Real polynomial in x_1..x_n, y_1..y_n. Exponent vectors have length 2n,
/// the x block first.
struct RealPoly {
  int nvars = 0;  // n, not 2n
  std::map<std::vector<int>, double> terms;

  double eval(std::span<const double> x, std::span<const double> y) const;
};

struct RealPolyPair {
  RealPoly re;
  RealPoly im;
};

/// Splits f(x + iy) into real and imaginary parts. Requires non-negative
/// exponents (clear denominators first); throws NegativeExponent otherwise.
RealPolyPair realify(const LaurentPoly& f);

// ---------------------------------------------------------------------------
// Fibers

/// f restricted to the fiber over w in torus coordinates t_j = e^{iφ_j}:
/// poly = e^{-log_scale} Σ b_α e^{<α,w>} t^α with max coefficient modulus 1.
struct FiberPoly {
  LaurentPoly poly;
  double log_scale = 0.0;
};

FiberPoly fiber_restrict(const LaurentPoly& f, std::span<const double> w);

// ---------------------------------------------------------------------------
// Newton polytope (n = 2)

struct NewtonPolytope {
  std::vector<std::array<int, 2>> vertices;  // counterclockwise
  long long normalized_volume = 0;          // 2 × area
};

NewtonPolytope newton_polytope(const LaurentPoly& f);

}  // namespace amoeba

#pragma once

// Exact membership on a single fiber for two-variable Laurent polynomials.
//
// The fiber over w is the torus {Log|z| = w}. Its intersection with V(f) is
// found by eliminating t2 from g and its unit-torus reflection g*, where g is
// f restricted to the fiber. Each intersection point is tagged critical when
// the logarithmic Gauss image (z1 f_1 : z2 f_2) is real.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "amoeba/laurent.hpp"

namespace amoeba {

using Point2 = std::array<double, 2>;

struct FiberOptions {
  /// Resultant roots with ||t1| - 1| below this are followed up.
  double candidate_tol = 1e-3;
  /// Polished solutions must satisfy |g| <= residual_tol (g normalized).
  double residual_tol = 1e-7;
  /// Score threshold for criticality.
  double critical_tol = 1e-6;
  /// Solutions closer than this in wrapped max-norm on φ are merged.
  double merge_tol = 1e-5;
};

struct FiberSolution {
  Point2 phi{};                 // [0, 2π)²
  std::array<Complex, 2> t{};   // e^{iφ}
  int multiplicity = 1;
  bool critical = false;
  double score = 0.0;
};

struct Criticality {
  bool critical = false;
  double score = 0.0;
  /// Both Gauss components vanish (singular point of V(f)).
  bool singular = false;
  std::array<Complex, 2> gamma{};
};

/// γ_j = z_j ∂_j f(z); score = |Im(γ1 conj γ2)| / max(|γ1||γ2|, floor).
Criticality is_critical(const LaurentPoly& f, std::span<const Complex> z,
                        double tol = 1e-6);

/// All points of V(f) on the fiber over w, sorted by φ. Throws
/// DegenerateFiber when the fiber meets V(f) in a curve.
std::vector<FiberSolution> fiber_solutions(const LaurentPoly& f, Point2 w,
                                           const FiberOptions& opts = {});

enum class PointTag { Complement, Interior, ContourInterior, Boundary, Degenerate };

const char* to_string(PointTag tag);

struct PointClass {
  PointTag tag = PointTag::Complement;
  std::vector<FiberSolution> solutions;
  /// Set on Boundary when several distinct critical solutions meet, so the
  /// contour may be singular at w.
  bool caveat = false;
};

PointClass classify(const LaurentPoly& f, Point2 w, const FiberOptions& opts = {});

/// j-th coordinate (0-based) of the order of the complement component
/// containing w, by counting roots of a univariate slice inside the disc
/// |z_j| < e^{w_j}. Throws InconsistentOrder when three slices disagree.
int order_component(const LaurentPoly& f, Point2 w, int j);

std::array<int, 2> order(const LaurentPoly& f, Point2 w);

/// The exponent whose monomial dominates the sum of all others at w.
std::optional<Exponent> lopsided(const LaurentPoly& f, std::span<const double> w);

}  // namespace amoeba

#pragma once

// Contour of a two-variable amoeba: Log-images of points of V(f) whose
// logarithmic Gauss image (γ1 : γ2) is real. For a direction angle θ the
// critical points with (γ1 : γ2) = (sin θ : cos θ) solve
//
//   f = 0,   sin θ · γ2 − cos θ · γ1 = 0,
//
// a zero-dimensional system solved by eliminating z2.

#include <array>
#include <vector>

#include "amoeba/fiber.hpp"
#include "amoeba/laurent.hpp"

namespace amoeba {

struct ContourPoint {
  Point2 w{};
  double theta = 0.0;  // [0, π); direction (cos θ : sin θ)
  std::array<Complex, 2> z{};
};

struct SliceResult {
  double theta = 0.0;
  std::vector<ContourPoint> points;  // one per distinct solution in (C*)²
  /// False when the elimination saw multiple roots or solutions that could
  /// not be matched one-to-one; the count may then differ from the volume.
  bool generic = true;
};

/// Throws DegenerateSlice when both equations share a component.
SliceResult contour_slice(const LaurentPoly& f, double theta);

struct ContourTrace {
  std::vector<ContourPoint> points;  // deduplicated on (w, θ)
  std::vector<double> degenerate_thetas;
  std::vector<double> nongeneric_thetas;
};

/// Union of slices at θ_k = πk / n_slices.
ContourTrace trace_contour(const LaurentPoly& f, int n_slices);

struct ContourPartition {
  std::vector<ContourPoint> boundary;  // tag Boundary, with or without caveat
  std::vector<ContourPoint> inner;     // tag ContourInterior
  std::vector<ContourPoint> degenerate;
  /// Points the fiber test did not confirm as contour points (tag Interior
  /// or Complement at the rounded w).
  std::vector<ContourPoint> unconfirmed;
  /// Tag of each input point, in input order.
  std::vector<PointTag> tags;
};

ContourPartition classify_contour(const LaurentPoly& f,
                                  const std::vector<ContourPoint>& points,
                                  const FiberOptions& opts = {});

}  // namespace amoeba

#pragma once

// Rasters over a rectangular window in log space. Each cell is evaluated at
// its center by an exact fiber query:
//   Betti value   number of distinct points of V(f) on the fiber (-1 when
//                 the fiber is degenerate),
//   tag           the four-way classification,
//   lopsided      whether one monomial dominates.
// Cell walls of the Betti raster approximate the contour.

#include <array>
#include <cmath>
#include <vector>

#include "amoeba/fiber.hpp"
#include "amoeba/laurent.hpp"

namespace amoeba {

inline constexpr int kDegenerateCell = -1;

struct Window {
  Point2 lo{-2.0, -2.0};
  Point2 hi{2.0, 2.0};
};

template <class T>
struct Raster {
  Window window;
  int nx = 0;
  int ny = 0;
  std::vector<T> cells;  // row-major, row j = y index from window.lo

  Raster() = default;
  Raster(Window w, int nx_, int ny_, T fill = T{})
      : window(w), nx(nx_), ny(ny_), cells(static_cast<std::size_t>(nx_) * ny_, fill) {}

  T& at(int i, int j) { return cells[static_cast<std::size_t>(j) * nx + i]; }
  const T& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i]; }

  Point2 center(int i, int j) const {
    return {window.lo[0] + (i + 0.5) * cell_width(),
            window.lo[1] + (j + 0.5) * cell_height()};
  }
  double cell_width() const { return (window.hi[0] - window.lo[0]) / nx; }
  double cell_height() const { return (window.hi[1] - window.lo[1]) / ny; }
  double cell_diagonal() const { return std::hypot(cell_width(), cell_height()); }
};

struct RasterPass {
  Raster<int> betti;
  Raster<PointTag> tags;
};

/// Betti values and tags from one fiber query per cell. Throws
/// InvalidArgument unless nx, ny >= 2 and the window is non-empty.
RasterPass raster_pass(const LaurentPoly& f, Window window, int nx, int ny,
                       const FiberOptions& opts = {});

Raster<int> betti_grid(const LaurentPoly& f, Window window, int nx, int ny,
                       const FiberOptions& opts = {});

Raster<PointTag> classification_grid(const LaurentPoly& f, Window window, int nx, int ny,
                                     const FiberOptions& opts = {});

Raster<int> lopsided_grid(const LaurentPoly& f, Window window, int nx, int ny);

using Cell = std::array<int, 2>;

struct CellWalls {
  /// Cells with a 4-neighbor of a different finite value.
  std::vector<Cell> contour;
  /// Cells on either side of a zero / non-zero transition.
  std::vector<Cell> zero;
};

CellWalls cell_walls(const Raster<int>& betti);

/// 4·d² with d the total degree after clearing denominators.
long long betti_bound(const LaurentPoly& f);

}  // namespace amoeba

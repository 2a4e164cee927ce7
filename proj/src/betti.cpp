#include "amoeba/betti.hpp"

#include <cmath>

#include "amoeba/errors.hpp"
#include "amoeba/parallel.hpp"

namespace amoeba {

namespace {

void check_grid(Window window, int nx, int ny) {
  if (nx < 2 || ny < 2) {
    throw Error(ErrorCode::InvalidArgument, "raster resolution must be at least 2x2");
  }
  if (!(window.hi[0] > window.lo[0]) || !(window.hi[1] > window.lo[1])) {
    throw Error(ErrorCode::InvalidArgument, "raster window is empty");
  }
}

}  // namespace

RasterPass raster_pass(const LaurentPoly& f, Window window, int nx, int ny,
                       const FiberOptions& opts) {
  check_grid(window, nx, ny);
  RasterPass out{Raster<int>(window, nx, ny, 0),
                 Raster<PointTag>(window, nx, ny, PointTag::Complement)};
  parallel_for(out.betti.cells.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % nx);
    const int j = static_cast<int>(k / nx);
    const PointClass pc = classify(f, out.betti.center(i, j), opts);
    out.tags.cells[k] = pc.tag;
    out.betti.cells[k] = pc.tag == PointTag::Degenerate
                             ? kDegenerateCell
                             : static_cast<int>(pc.solutions.size());
  });
  return out;
}

Raster<int> betti_grid(const LaurentPoly& f, Window window, int nx, int ny,
                       const FiberOptions& opts) {
  return raster_pass(f, window, nx, ny, opts).betti;
}

Raster<PointTag> classification_grid(const LaurentPoly& f, Window window, int nx, int ny,
                                     const FiberOptions& opts) {
  return raster_pass(f, window, nx, ny, opts).tags;
}

Raster<int> lopsided_grid(const LaurentPoly& f, Window window, int nx, int ny) {
  check_grid(window, nx, ny);
  Raster<int> out(window, nx, ny, 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point2 w = out.center(i, j);
      out.at(i, j) = lopsided(f, w).has_value() ? 1 : 0;
    }
  }
  return out;
}

CellWalls cell_walls(const Raster<int>& r) {
  CellWalls out;
  static constexpr std::array<Cell, 4> kNeighbors{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const int v = r.at(i, j);
      if (v == kDegenerateCell) continue;
      bool wall = false, zero_wall = false;
      for (const auto& d : kNeighbors) {
        const int a = i + d[0], b = j + d[1];
        if (a < 0 || b < 0 || a >= r.nx || b >= r.ny) continue;
        const int u = r.at(a, b);
        if (u == kDegenerateCell) continue;
        if (u != v) wall = true;
        if ((u == 0) != (v == 0)) zero_wall = true;
      }
      if (wall) out.contour.push_back({i, j});
      if (zero_wall) out.zero.push_back({i, j});
    }
  }
  return out;
}

long long betti_bound(const LaurentPoly& f) {
  const long long d = f.cleared_degree();
  return 4 * d * d;
}

}  // namespace amoeba

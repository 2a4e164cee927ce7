#include "amoeba/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

#include "amoeba/errors.hpp"
#include "amoeba/numeric.hpp"
#include "amoeba/parallel.hpp"

namespace amoeba {

namespace {

constexpr double kMinModulus = 1e-12;
constexpr double kMaxModulus = 1e12;

double term_scale(const LaurentPoly& p, std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s += std::abs(c * ipow(z[0], e[0]) * ipow(z[1], e[1]));
  return s;
}

bool in_torus_range(Complex z) {
  const double m = std::abs(z);
  return m > kMinModulus && m < kMaxModulus;
}

// F = z^{-lo} f and H = z^{-lo}(sin θ γ2 − cos θ γ1), both polynomials.
struct SliceSystem {
  LaurentPoly F;
  LaurentPoly H;
  LaurentPoly F1, F2, H1, H2;
  int degree = 0;

  SliceSystem(const LaurentPoly& f, double theta) : F(2), H(2), F1(2), F2(2), H1(2), H2(2) {
    const Exponent lo = f.min_exponent();
    const Exponent shift{-lo[0], -lo[1]};
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    LaurentPoly h(2);
    for (const auto& [e, b] : f.terms()) {
      const double k = s * e[1] - c * e[0];
      if (std::fabs(k) <= 1e-12 * (std::abs(e[0]) + std::abs(e[1]))) continue;
      h.add_term(e, k * b);
    }
    F = f.shifted(shift);
    H = h.pruned().shifted(shift);
    F1 = partial(F, 0);
    F2 = partial(F, 1);
    H1 = partial(H, 0);
    H2 = partial(H, 1);
    degree = f.cleared_degree();
  }

  double tolerance(std::span<const Complex> z) const {
    return 1e-9 * term_scale(F, z) * (1.0 + degree);
  }

  // Complex Newton on (F, H).
  void polish(std::array<Complex, 2>& z, int steps) const {
    for (int it = 0; it < steps; ++it) {
      const Complex f = eval(F, z);
      const Complex h = eval(H, z);
      const Complex a = eval(F1, z), b = eval(F2, z);
      const Complex c = eval(H1, z), d = eval(H2, z);
      const Complex det = a * d - b * c;
      if (std::abs(det) == 0.0) return;
      const Complex dz1 = (d * f - b * h) / det;
      const Complex dz2 = (a * h - c * f) / det;
      if (!std::isfinite(std::abs(dz1)) || !std::isfinite(std::abs(dz2))) return;
      z[0] -= dz1;
      z[1] -= dz2;
      if (std::abs(dz1) + std::abs(dz2) < 1e-15 * (std::abs(z[0]) + std::abs(z[1]))) return;
    }
  }

  double residual(std::span<const Complex> z) const {
    return std::abs(eval(F, z)) + std::abs(eval(H, z));
  }

  bool accepts(std::span<const Complex> z) const {
    const double tol = tolerance(z);
    return std::abs(eval(F, z)) <= tol && std::abs(eval(H, z)) <= tol;
  }
};

// Drops low-order coefficients that are zero to working precision; those
// roots sit at z1 = 0, outside the torus.
UniPoly strip_zero_roots(const UniPoly& p) {
  UniPoly q = p.trimmed(1e-10);
  const double cut = 1e-10 * q.max_modulus();
  std::size_t k = 0;
  while (k < q.coeffs.size() && std::abs(q.coeffs[k]) <= cut) ++k;
  q.coeffs.erase(q.coeffs.begin(), q.coeffs.begin() + static_cast<std::ptrdiff_t>(k));
  return q;
}

}  // namespace

SliceResult contour_slice(const LaurentPoly& f, double theta) {
  if (f.nvars() != 2) {
    throw Error(ErrorCode::InvalidArgument, "contour needs two variables");
  }
  if (!f.depends_on(0) || !f.depends_on(1)) {
    throw Error(ErrorCode::InvalidArgument, "contour needs a polynomial in both variables");
  }
  SliceResult out;
  out.theta = theta;
  const SliceSystem sys(f, theta);
  if (sys.H.empty()) {
    throw Error(ErrorCode::DegenerateSlice, "every point of the curve has this Gauss direction");
  }
  const BiPoly fb = BiPoly::from_laurent(sys.F);
  const BiPoly hb = BiPoly::from_laurent(sys.H);

  UniPoly res;
  const bool by_resultant = hb.deg2() >= 1;
  if (by_resultant) {
    try {
      res = sylvester_resultant(fb, hb);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IdenticallyZero) throw;
      throw Error(ErrorCode::DegenerateSlice, "curve and slice equation share a component");
    }
  } else {
    res = hb.coefficient_in_t2(0);
  }
  res = strip_zero_roots(res);
  if (res.degree() < 1) return out;

  for (const auto& cl : roots(res).clusters) {
    if (!in_torus_range(cl.center)) continue;
    if (cl.multiplicity > 1) out.generic = false;
    const UniPoly back = fb.at_t1(cl.center).trimmed();
    if (back.degree() < 1) continue;
    int accepted = 0;
    for (const auto& c2 : roots(back).clusters) {
      if (!in_torus_range(c2.center)) continue;
      std::array<Complex, 2> z{cl.center, c2.center};
      // Other branches of F(z1, .) = 0 miss the second equation entirely.
      if (std::abs(eval(sys.H, z)) > 1e-3 * term_scale(sys.F, z) * (1.0 + sys.degree)) continue;
      sys.polish(z, 5);
      if (!in_torus_range(z[0]) || !in_torus_range(z[1]) || !sys.accepts(z)) continue;
      const auto dup = std::find_if(out.points.begin(), out.points.end(), [&](const ContourPoint& p) {
        return std::abs(p.z[0] - z[0]) < 1e-8 * (1.0 + std::abs(z[0])) &&
               std::abs(p.z[1] - z[1]) < 1e-8 * (1.0 + std::abs(z[1]));
      });
      if (dup != out.points.end()) {
        out.generic = false;
        if (sys.residual(z) < sys.residual(dup->z)) {
          dup->z = z;
          dup->w = {std::log(std::abs(z[0])), std::log(std::abs(z[1]))};
        }
        continue;
      }
      if (c2.multiplicity > 1) out.generic = false;
      ++accepted;
      out.points.push_back({{std::log(std::abs(z[0])), std::log(std::abs(z[1]))}, theta, z});
    }
    if (by_resultant && accepted > 1) out.generic = false;
  }
  std::sort(out.points.begin(), out.points.end(), [](const ContourPoint& a, const ContourPoint& b) {
    return std::tie(a.w[0], a.w[1]) < std::tie(b.w[0], b.w[1]);
  });
  return out;
}

ContourTrace trace_contour(const LaurentPoly& f, int n_slices) {
  if (n_slices < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one slice");
  }
  struct Slot {
    SliceResult result;
    bool degenerate = false;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n_slices));
  parallel_for(slots.size(), [&](std::size_t k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / n_slices;
    try {
      slots[k].result = contour_slice(f, theta);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateSlice) throw;
      slots[k].degenerate = true;
      slots[k].result.theta = theta;
    }
  });

  ContourTrace out;
  std::set<std::tuple<long long, long long, std::size_t>> seen;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto& slot = slots[k];
    if (slot.degenerate) {
      out.degenerate_thetas.push_back(slot.result.theta);
      continue;
    }
    if (!slot.result.generic) out.nongeneric_thetas.push_back(slot.result.theta);
    for (const auto& p : slot.result.points) {
      const auto key = std::make_tuple(std::llround(p.w[0] * 1e9), std::llround(p.w[1] * 1e9), k);
      if (!seen.insert(key).second) continue;
      if (!is_critical(f, p.z).critical) continue;
      out.points.push_back(p);
    }
  }
  return out;
}

ContourPartition classify_contour(const LaurentPoly& f,
                                  const std::vector<ContourPoint>& points,
                                  const FiberOptions& opts) {
  std::vector<PointTag> tags(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    tags[i] = classify(f, points[i].w, opts).tag;
  });
  ContourPartition out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    switch (tags[i]) {
      case PointTag::Boundary: out.boundary.push_back(points[i]); break;
      case PointTag::ContourInterior: out.inner.push_back(points[i]); break;
      case PointTag::Degenerate: out.degenerate.push_back(points[i]); break;
      default: out.unconfirmed.push_back(points[i]); break;
    }
  }
  out.tags = std::move(tags);
  return out;
}

}  // namespace amoeba

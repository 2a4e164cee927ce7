#include "amoeba/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "amoeba/errors.hpp"
#include "amoeba/numeric.hpp"

namespace amoeba {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGaussFloor = 1e-12;
// A component this much smaller than the other is zero to working precision,
// which makes the direction real.
constexpr double kRatioFloor = 1e-6;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double angle_distance(double a, double b) {
  const double d = std::fabs(wrap_angle(a - b));
  return std::min(d, kTwoPi - d);
}

double phi_distance(const Point2& a, const Point2& b) {
  return std::max(angle_distance(a[0], b[0]), angle_distance(a[1], b[1]));
}

Criticality score_gamma(Complex g1, Complex g2, double scale, double tol) {
  Criticality c;
  c.gamma = {g1, g2};
  const double n2 = std::norm(g1) + std::norm(g2);
  if (std::sqrt(n2) < kGaussFloor * scale) {
    c.singular = true;
    c.critical = true;
    c.score = 0.0;
    return c;
  }
  const double num = std::fabs((g1 * std::conj(g2)).imag());
  const double den = std::max(std::abs(g1) * std::abs(g2), kRatioFloor * n2);
  c.score = num / den;
  c.critical = c.score < tol;
  return c;
}

// g and its Gauss components at a torus point, for a two-variable Laurent
// polynomial written in torus coordinates.
struct TorusValue {
  Complex g;
  Complex gamma1;
  Complex gamma2;
  double scale = 0.0;
};

class TorusPoly {
 public:
  explicit TorusPoly(const LaurentPoly& g) {
    for (const auto& [e, c] : g.terms()) terms_.push_back({{e[0], e[1]}, c});
  }

  TorusValue operator()(const Point2& phi) const {
    TorusValue v;
    for (const auto& [a, c] : terms_) {
      const Complex m = c * std::polar(1.0, a[0] * phi[0] + a[1] * phi[1]);
      v.g += m;
      v.gamma1 += static_cast<double>(a[0]) * m;
      v.gamma2 += static_cast<double>(a[1]) * m;
      v.scale += std::abs(c);
    }
    return v;
  }

 private:
  std::vector<std::pair<std::array<int, 2>, Complex>> terms_;
};

// Damped Gauss-Newton on (Re g, Im g) as a map R² → R². ∂g/∂φ_j = i γ_j.
struct Polished {
  Point2 phi;
  double residual;
};

Polished polish(const TorusPoly& g, Point2 phi) {
  TorusValue v = g(phi);
  double r = std::abs(v.g);
  double mu = 0.0;
  for (int it = 0; it < 100 && r > 0.0; ++it) {
    const double a11 = -v.gamma1.imag(), a12 = -v.gamma2.imag();
    const double a21 = v.gamma1.real(), a22 = v.gamma2.real();
    const double f1 = v.g.real(), f2 = v.g.imag();
    const double n11 = a11 * a11 + a21 * a21;
    const double n12 = a11 * a12 + a21 * a22;
    const double n22 = a12 * a12 + a22 * a22;
    const double r1 = -(a11 * f1 + a21 * f2);
    const double r2 = -(a12 * f1 + a22 * f2);
    const double trace = n11 + n22;
    if (trace == 0.0) break;
    bool improved = false;
    Point2 step{};
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double lam = std::max(mu, 1e-15) * trace;
      const double m11 = n11 + lam, m22 = n22 + lam;
      const double det = m11 * m22 - n12 * n12;
      if (det <= 0.0) {
        mu = std::max(mu * 10.0, 1e-12);
        continue;
      }
      step = {(m22 * r1 - n12 * r2) / det, (m11 * r2 - n12 * r1) / det};
      const Point2 trial{phi[0] + step[0], phi[1] + step[1]};
      const TorusValue tv = g(trial);
      const double tr = std::abs(tv.g);
      if (tr < r) {
        phi = trial;
        v = tv;
        r = tr;
        mu *= 0.1;
        improved = true;
        break;
      }
      mu = std::max(mu * 10.0, 1e-12);
    }
    if (!improved) break;
    if (std::max(std::fabs(step[0]), std::fabs(step[1])) < 1e-15) break;
  }
  return {{wrap_angle(phi[0]), wrap_angle(phi[1])}, r};
}

struct Candidate {
  Point2 phi;
  int multiplicity;
};

void throw_if_circle_roots(const LaurentPoly& g, int var) {
  const int lo = g.min_exponent()[var];
  UniPoly p;
  p.coeffs.assign(g.max_exponent()[var] - lo + 1, Complex{});
  for (const auto& [e, c] : g.terms()) p.coeffs[e[var] - lo] += c;
  const UniPoly q = p.trimmed();
  if (q.degree() < 1) return;
  for (const auto& c : roots(q).clusters) {
    if (std::fabs(std::abs(c.center) - 1.0) < 1e-9) {
      throw Error(ErrorCode::DegenerateFiber,
                  "fiber meets the variety in a circle (polynomial depends on one variable)");
    }
  }
}

}  // namespace

const char* to_string(PointTag tag) {
  switch (tag) {
    case PointTag::Complement: return "Complement";
    case PointTag::Interior: return "Interior";
    case PointTag::ContourInterior: return "ContourInterior";
    case PointTag::Boundary: return "Boundary";
    case PointTag::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

Criticality is_critical(const LaurentPoly& f, std::span<const Complex> z, double tol) {
  if (f.nvars() != 2 || z.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "criticality test needs two variables");
  }
  Complex g1{}, g2{};
  double scale = 0.0;
  for (const auto& [e, c] : f.terms()) {
    const Complex m = c * ipow(z[0], e[0]) * ipow(z[1], e[1]);
    g1 += static_cast<double>(e[0]) * m;
    g2 += static_cast<double>(e[1]) * m;
    scale += std::abs(m);
  }
  return score_gamma(g1, g2, scale, tol);
}

std::vector<FiberSolution> fiber_solutions(const LaurentPoly& f, Point2 w,
                                           const FiberOptions& opts) {
  if (f.nvars() != 2) {
    throw Error(ErrorCode::InvalidArgument, "fiber solving needs two variables");
  }
  const FiberPoly fp = fiber_restrict(f, w);
  const LaurentPoly& g = fp.poly;
  if (g.size() <= 1) return {};

  const Exponent lo = g.min_exponent();
  const BiPoly gb = BiPoly::from_laurent(g.shifted({-lo[0], -lo[1]}));
  const int d1 = gb.deg1();
  const int d2 = gb.deg2();
  if (d1 == 0 || d2 == 0) {
    throw_if_circle_roots(g, d1 == 0 ? 1 : 0);
    return {};
  }

  UniPoly res;
  try {
    res = sylvester_resultant(gb, conj_reciprocal(gb, d1, d2));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IdenticallyZero) throw;
    throw Error(ErrorCode::DegenerateFiber,
                "fiber function shares a component with its reflection");
  }
  if (res.degree() < 1) return {};

  const TorusPoly torus(g);
  std::vector<Candidate> cands;
  const RootResult rr = roots(res);
  if (!rr.converged) {
    throw Error(ErrorCode::NoConvergence, "root finder did not converge on the fiber resultant");
  }
  for (const auto& cl : rr.clusters) {
    const double m1 = std::abs(cl.center);
    if (m1 == 0.0 || std::fabs(m1 - 1.0) > opts.candidate_tol) continue;
    const Complex t1 = cl.center / m1;
    const UniPoly h = gb.at_t1(t1).trimmed();
    if (h.degree() < 1) continue;
    std::vector<Point2> found;
    for (const auto& c2 : roots(h).clusters) {
      const double m2 = std::abs(c2.center);
      if (m2 == 0.0 || std::fabs(m2 - 1.0) > opts.candidate_tol) continue;
      const Point2 start{wrap_angle(std::arg(t1)), wrap_angle(std::arg(c2.center))};
      const Polished p = polish(torus, start);
      if (p.residual > opts.residual_tol) continue;
      if (phi_distance(p.phi, start) > 0.05) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Point2& q) {
        return phi_distance(q, p.phi) < opts.merge_tol;
      });
      if (!dup) found.push_back(p.phi);
    }
    const int k = static_cast<int>(found.size());
    for (const auto& phi : found) {
      cands.push_back({phi, std::max(1, cl.multiplicity / k)});
    }
  }

  // Merge duplicates reached from different resultant clusters.
  std::vector<Candidate> merged;
  for (const auto& c : cands) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Candidate& m) {
      return phi_distance(m.phi, c.phi) < opts.merge_tol;
    });
    if (it == merged.end()) {
      merged.push_back(c);
    } else {
      it->multiplicity += c.multiplicity;
    }
  }

  std::vector<FiberSolution> out;
  out.reserve(merged.size());
  for (const auto& c : merged) {
    FiberSolution s;
    s.phi = c.phi;
    s.t = {std::polar(1.0, c.phi[0]), std::polar(1.0, c.phi[1])};
    s.multiplicity = c.multiplicity;
    const TorusValue v = torus(c.phi);
    const Criticality crit = score_gamma(v.gamma1, v.gamma2, v.scale, opts.critical_tol);
    s.score = crit.score;
    s.critical = s.multiplicity >= 2 || crit.critical;
    out.push_back(s);
  }
  // rounded keys so that points sharing an angle keep a stable order
  auto key = [](const FiberSolution& s) {
    return std::make_tuple(std::llround(s.phi[0] * 1e9), std::llround(s.phi[1] * 1e9), s.phi[0], s.phi[1]);
  };
  std::sort(out.begin(), out.end(), [&](const FiberSolution& a, const FiberSolution& b) { return key(a) < key(b); });
  return out;
}

PointClass classify(const LaurentPoly& f, Point2 w, const FiberOptions& opts) {
  PointClass pc;
  try {
    pc.solutions = fiber_solutions(f, w, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateFiber) throw;
    pc.tag = PointTag::Degenerate;
    return pc;
  }
  const auto n_crit = std::count_if(pc.solutions.begin(), pc.solutions.end(),
                                    [](const FiberSolution& s) { return s.critical; });
  const auto n = static_cast<std::ptrdiff_t>(pc.solutions.size());
  if (n == 0) {
    pc.tag = PointTag::Complement;
  } else if (n_crit == n) {
    pc.tag = PointTag::Boundary;
    pc.caveat = n_crit >= 2;
  } else if (n_crit > 0) {
    pc.tag = PointTag::ContourInterior;
  } else {
    pc.tag = PointTag::Interior;
  }
  return pc;
}

int order_component(const LaurentPoly& f, Point2 w, int j) {
  if (f.nvars() != 2 || j < 0 || j > 1) {
    throw Error(ErrorCode::InvalidArgument, "order needs two variables and j in {0,1}");
  }
  const LaurentPoly g = fiber_restrict(f, w).poly;
  const int k = 1 - j;
  const int lo = g.min_exponent()[j];
  const int hi = g.max_exponent()[j];
  static constexpr std::array<double, 3> kThetas{0.7853981633974483, 2.2, 4.4};
  int agreed = 0;
  for (std::size_t s = 0; s < kThetas.size(); ++s) {
    UniPoly p;
    p.coeffs.assign(hi - lo + 1, Complex{});
    for (const auto& [e, c] : g.terms()) {
      p.coeffs[e[j] - lo] += c * std::polar(1.0, e[k] * kThetas[s]);
    }
    const UniPoly q = p.trimmed();
    if (q.degree() < 0) {
      throw Error(ErrorCode::InconsistentOrder, "slice polynomial vanishes identically");
    }
    int inside = 0;
    if (q.degree() >= 1) {
      for (const auto& c : roots(q).clusters) {
        const double m = std::abs(c.center);
        if (std::fabs(m - 1.0) < 1e-9) {
          throw Error(ErrorCode::InconsistentOrder,
                      "slice root on the fiber circle; point is not in the complement");
        }
        if (m < 1.0) inside += c.multiplicity;
      }
    }
    const int value = inside + lo;
    if (s == 0) {
      agreed = value;
    } else if (value != agreed) {
      throw Error(ErrorCode::InconsistentOrder,
                  "order differs between slices; point is too close to the amoeba");
    }
  }
  return agreed;
}

std::array<int, 2> order(const LaurentPoly& f, Point2 w) {
  return {order_component(f, w, 0), order_component(f, w, 1)};
}

std::optional<Exponent> lopsided(const LaurentPoly& f, std::span<const double> w) {
  if (f.empty() || static_cast<int>(w.size()) != f.nvars()) return std::nullopt;
  std::vector<double> logs;
  logs.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    double l = std::log(std::abs(c));
    for (int j = 0; j < f.nvars(); ++j) l += e[j] * w[j];
    logs.push_back(l);
  }
  const auto top = std::max_element(logs.begin(), logs.end());
  double rest = 0.0;
  for (auto it = logs.begin(); it != logs.end(); ++it) {
    if (it != top) rest += std::exp(*it - *top);
  }
  if (!(rest < 1.0)) return std::nullopt;
  auto term = f.terms().begin();
  std::advance(term, top - logs.begin());
  return term->first;
}

}  // namespace amoeba

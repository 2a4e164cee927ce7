#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/expr_parser.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/numeric.hpp"

using namespace amoeba;

namespace {

LaurentPoly P(const char* text) { return parse_poly(text, 2); }

const double kHalf = std::log(0.5);
constexpr double kPi = std::numbers::pi;

LaurentPoly dart(double c) {
  LaurentPoly f = P("-2*z1^2 - 2*z1*z2^2 + 1.5*i*z1^-1*z2^-1");
  f.add_term({0, 0}, c);
  return f;
}

LaurentPoly cubic(double c) {
  LaurentPoly f = P("z1^3 + z2^3 + 1");
  f.add_term({1, 1}, c);
  return f;
}

bool uses_both(const LaurentPoly& f) { return f.depends_on(0) && f.depends_on(1); }

double fiber_residual(const LaurentPoly& f, Point2 w, const FiberSolution& s) {
  const oracle::FiberFunction F(f, w);
  Complex g, d1, d2;
  F.eval(s.phi, g, d1, d2);
  return std::abs(g);
}

}  // namespace

TEST_CASE("linear fiber through a boundary point") {
  const auto sols = fiber_solutions(P("1 + z1 + z2"), {kHalf, kHalf});
  REQUIRE(sols.size() == 1);
  // a double root, located to about the square root of machine precision
  CHECK(std::fabs(sols[0].phi[0] - kPi) < 1e-7);
  CHECK(std::fabs(sols[0].phi[1] - kPi) < 1e-7);
  CHECK(sols[0].critical);
}

TEST_CASE("three-term dart polynomial: regular crossing and empty fiber") {
  CHECK(fiber_solutions(dart(-4.9), {0, 0}).empty());
  const auto sols = fiber_solutions(dart(-1.2), {0, 0});
  REQUIRE(!sols.empty());
  CHECK(std::any_of(sols.begin(), sols.end(), [](const FiberSolution& s) { return !s.critical; }));
  CHECK(classify(dart(-1.2), {0, 0}).tag == PointTag::Interior);
  CHECK(classify(dart(-4.9), {0, 0}).tag == PointTag::Complement);
}

TEST_CASE("criticality of explicit points") {
  // real point of a real curve
  const LaurentPoly h = P("z1^3 + z2^3 - 4*z1*z2 + 1");
  const RootResult r = roots(UniPoly({1.125, -2.0, 0.0, 1.0}));  // z1 = 0.5
  bool checked = false;
  for (const auto& c : r.clusters) {
    if (std::fabs(c.center.imag()) > 1e-12) continue;
    const Complex z[2] = {0.5, c.center.real()};
    const Criticality k = is_critical(h, z);
    CHECK(k.critical);
    CHECK(k.score < 1e-12);
    checked = true;
  }
  CHECK(checked);

  const Complex mid[2] = {-0.5, -0.5};
  CHECK(is_critical(P("1 + z1 + z2"), mid).critical);

  const double b = std::sqrt(0.36 - 0.25);
  const Complex off[2] = {Complex(-0.5, b), Complex(-0.5, -b)};
  const Criticality k = is_critical(P("1 + z1 + z2"), off);
  CHECK_FALSE(k.critical);
  CHECK(k.score > 0.1);

  // singular point of z1 z2 - z1 - z2 + 1 = (z1 - 1)(z2 - 1)
  const Complex node[2] = {1.0, 1.0};
  const Criticality s = is_critical(P("z1*z2 - z1 - z2 + 1"), node);
  CHECK(s.singular);
  CHECK(s.critical);
}

TEST_CASE("classification of the cubic family at the origin") {
  const PointClass island = classify(cubic(1.3), {0, 0});
  CHECK(island.tag == PointTag::Complement);
  CHECK(island.solutions.empty());
  CHECK(order(cubic(1.3), {0, 0}) == std::array<int, 2>{1, 1});

  CHECK(classify(P("1 + z1 + z2"), {kHalf, kHalf}).tag == PointTag::Boundary);
}

TEST_CASE("cubic with parameter 1: every fiber point over the origin is critical") {
  // Nine fiber points, each with a real logarithmic Gauss image, so the
  // origin is an isolated point where the contour pinches (tag Boundary with
  // the singular-contour caveat), confirmed independently by the sweep.
  const LaurentPoly f = cubic(1.0);
  const auto sweep = oracle::torus_sweep(f, {0, 0});
  CHECK(sweep.size() == 9);
  for (const auto& phi : sweep) {
    const Complex z[2] = {std::polar(1.0, phi[0]), std::polar(1.0, phi[1])};
    Complex g1 = 0.0, g2 = 0.0;
    for (const auto& [e, c] : f.terms()) {
      const Complex m = c * std::pow(z[0], e[0]) * std::pow(z[1], e[1]);
      g1 += double(e[0]) * m;
      g2 += double(e[1]) * m;
    }
    // tangential zeros: the sweep pins them only to about 1e-6
    CHECK(std::fabs((g1 * std::conj(g2)).imag()) < 1e-5 * std::abs(g1) * std::abs(g2));
  }
  const PointClass pc = classify(f, {0, 0});
  CHECK(pc.solutions.size() == 9);
  CHECK(pc.tag == PointTag::Boundary);
  CHECK(pc.caveat);
  // a nearby point is an ordinary interior point
  CHECK(classify(f, {0.05, -0.02}).tag == PointTag::Interior);
}

TEST_CASE("order of complement components") {
  CHECK(order(P("1 + z1 + z2"), {-10, -10}) == std::array<int, 2>{0, 0});
  CHECK(order(P("1 + z1 + z2"), {10, 0}) == std::array<int, 2>{1, 0});
  CHECK(order(P("1 + z1 + z2"), {0, 10}) == std::array<int, 2>{0, 1});
  CHECK(order(P("z1^-1 + 3 + z2"), {-5, -5}) == std::array<int, 2>{-1, 0});
  try {
    order(P("1 + z1 + z2"), {0, 0});
    FAIL("expected InconsistentOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentOrder);
  }
}

TEST_CASE("lopsided certificates") {
  const double deep[2] = {-10, -10};
  CHECK(lopsided(P("1 + z1 + z2"), deep) == Exponent{0, 0});
  const double origin[2] = {0, 0};
  CHECK_FALSE(lopsided(cubic(1.3), origin).has_value());
  const double tie[2] = {kHalf, kHalf};
  CHECK_FALSE(lopsided(P("1 + z1 + z2"), tie).has_value());
  const double far[2] = {3, 0};
  CHECK(lopsided(P("1 + z1 + z2"), far) == Exponent{1, 0});
}

TEST_CASE("degenerate fibers") {
  CHECK(classify(P("1 + z1"), {0, 0}).tag == PointTag::Degenerate);
  CHECK(classify(P("1 + z1"), {1, 0}).tag == PointTag::Complement);
  // f and its reflection share the factor z1 - z2 on the torus
  CHECK(classify(P("z1 - z2"), {0, 0}).tag == PointTag::Degenerate);
  CHECK(classify(P("z1 - z2"), {0.5, 0}).tag == PointTag::Complement);
}

TEST_CASE("solutions satisfy the fiber invariants") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uw(-1.0, 1.0);
  int nonempty = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, 4, 5, false, 1);
    if (!uses_both(f)) continue;
    const Point2 w{uw(rng), uw(rng)};
    const auto sols = fiber_solutions(f, w);
    nonempty += !sols.empty();
    CHECK(static_cast<long long>(sols.size()) <= 4LL * f.cleared_degree() * f.cleared_degree());
    for (const auto& s : sols) {
      CHECK(std::fabs(std::abs(s.t[0]) - 1) < 1e-7);
      CHECK(std::fabs(std::abs(s.t[1]) - 1) < 1e-7);
      CHECK(s.phi[0] >= 0);
      CHECK(s.phi[0] < oracle::kTwoPi);
      CHECK(s.phi[1] >= 0);
      CHECK(s.phi[1] < oracle::kTwoPi);
      CHECK(fiber_residual(f, w, s) <= 1e-7);
      CHECK(s.multiplicity >= 1);
      if (s.multiplicity == 1) CHECK(s.critical == (s.score < 1e-6));
    }
  }
  CHECK(nonempty > 10);
}

TEST_CASE("membership agrees with the torus sweep") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uw(-1.5, 1.5);
  int tested = 0, members = 0;
  while (tested < 40) {
    const LaurentPoly f = oracle::random_poly(rng, 4, std::uniform_int_distribution<int>(3, 7)(rng));
    if (!uses_both(f)) continue;
    const Point2 w{uw(rng), uw(rng)};
    const bool fast = !fiber_solutions(f, w).empty();
    const bool slow = !oracle::torus_sweep(f, w).empty();
    CHECK_MESSAGE(fast == slow, format_poly(f) << " at " << w[0] << "," << w[1]);
    members += slow;
    ++tested;
  }
  CHECK(members > 5);
  CHECK(members < 35);
}

TEST_CASE("real coefficients give conjugation-symmetric fibers") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> uw(-1.0, 1.0);
  int seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, 4, 5, true);
    if (!uses_both(f)) continue;
    const auto sols = fiber_solutions(f, {uw(rng), uw(rng)});
    seen += !sols.empty();
    for (const auto& s : sols) {
      const Point2 mirror{oracle::wrap(-s.phi[0]), oracle::wrap(-s.phi[1])};
      const bool matched = std::any_of(sols.begin(), sols.end(), [&](const FiberSolution& o) {
        return oracle::angle_gap(o.phi[0], mirror[0]) < 1e-7 && oracle::angle_gap(o.phi[1], mirror[1]) < 1e-7;
      });
      CHECK(matched);
    }
  }
  CHECK(seen > 5);
}

TEST_CASE("multiplying by a monomial leaves the fiber unchanged") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> uw(-1.0, 1.0);
  std::uniform_int_distribution<int> sh(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, 3, 5);
    if (!uses_both(f)) continue;
    const Point2 w{uw(rng), uw(rng)};
    const auto a = fiber_solutions(f, w);
    const auto b = fiber_solutions(f.shifted({sh(rng), sh(rng)}), w);
    REQUIRE(a.size() == b.size());
    for (const auto& s : a) {
      CHECK(std::any_of(b.begin(), b.end(), [&](const FiberSolution& t) {
        return oracle::angle_gap(s.phi[0], t.phi[0]) < 1e-7 && oracle::angle_gap(s.phi[1], t.phi[1]) < 1e-7;
      }));
    }
  }
}

TEST_CASE("lopsided points are complement points of the dominant order") {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> uw(-3.0, 3.0);
  int certified = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, 4, 4, false, 1);
    if (!uses_both(f)) continue;
    const Point2 w{uw(rng), uw(rng)};
    const auto a = lopsided(f, w);
    if (!a) continue;
    ++certified;
    CHECK(classify(f, w).tag == PointTag::Complement);
    const auto o = order(f, w);
    CHECK(o[0] == (*a)[0]);
    CHECK(o[1] == (*a)[1]);
  }
  CHECK(certified > 50);
}

TEST_CASE("tags follow the critical counts") {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> uw(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, 3, 5, trial % 2 == 0);
    if (!uses_both(f)) continue;
    const PointClass pc = classify(f, {uw(rng), uw(rng)});
    const auto crit = std::count_if(pc.solutions.begin(), pc.solutions.end(),
                                    [](const FiberSolution& s) { return s.critical; });
    const auto n = static_cast<long>(pc.solutions.size());
    switch (pc.tag) {
      case PointTag::Complement: CHECK(n == 0); break;
      case PointTag::Boundary: CHECK(crit == n); CHECK(n > 0); break;
      case PointTag::ContourInterior: CHECK(crit > 0); CHECK(crit < n); break;
      case PointTag::Interior: CHECK(crit == 0); CHECK(n > 0); break;
      case PointTag::Degenerate: break;
    }
    if (pc.tag != PointTag::Boundary) CHECK_FALSE(pc.caveat);
  }
}

TEST_CASE("the critical threshold is configurable") {
  FiberOptions loose;
  loose.critical_tol = 10.0;  // every score is below this
  const PointClass pc = classify(dart(-1.2), {0, 0}, loose);
  CHECK(pc.tag == PointTag::Boundary);
}

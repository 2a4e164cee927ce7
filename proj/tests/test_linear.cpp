#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/expr_parser.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/linear.hpp"

using namespace amoeba;

namespace {

LaurentPoly P(const char* text) { return parse_poly(text, 2); }

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

Complex gauss_c(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

LinearSystem random_system(std::mt19937_64& rng, int n) {
  std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n));
  for (auto& r : rows) {
    for (auto& x : r) x = gauss_c(rng);
  }
  return LinearSystem::from_rows(rows);
}

// Which boundary equality holds for 1 + Σ b_k z_k at |z| = |v|:
// 0 for Σ r_k = 1, j for r_j = 1 + Σ_{k≠j} r_k; -1 if none within tol.
int equality_index(const LaurentPoly& g, const std::vector<Complex>& v, double tol, double* gap = nullptr) {
  const LinearForm lf = linear_form(g);
  std::vector<double> r;
  double sum = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    r.push_back(std::abs(lf.coeffs[k] / lf.constant) * std::abs(v[k]));
    sum += r.back();
  }
  double best = std::fabs(sum - 1);
  int idx = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double d = std::fabs(r[j] - (1 + sum - r[j]));
    if (d < best) {
      best = d;
      idx = static_cast<int>(j) + 1;
    }
  }
  if (gap) *gap = best;
  return best <= tol ? idx : -1;
}

}  // namespace

TEST_CASE("closed-form linear classification") {
  const LaurentPoly f = P("1 + z1 + z2");
  const double half[2] = {std::log(0.5), std::log(0.5)};
  CHECK(linear_classify(f, half).tag == PointTag::Boundary);
  const double zero[2] = {0, 0};
  CHECK(linear_classify(f, zero).tag == PointTag::Interior);
  const double right[2] = {2, 0};
  const LinearClass c = linear_classify(f, right);
  CHECK(c.tag == PointTag::Complement);
  CHECK(c.dominant == 1);
  const double low[2] = {-3, -3};
  CHECK(linear_classify(f, low).dominant == 0);
  CHECK(error_of([&] { linear_classify(P("1 + z1^2"), zero); }) == ErrorCode::NotLinear);
  CHECK(error_of([&] { linear_classify(P("z1 + z2"), zero); }) == ErrorCode::NotLinear);
}

TEST_CASE("linear form extraction") {
  const LinearForm lf = linear_form(P("2 + (1+i)*z2 - 3*z1"));
  CHECK(lf.constant == Complex(2, 0));
  CHECK(lf.coeffs == std::vector<Complex>{-3.0, Complex(1, 1)});
  CHECK(error_of([&] { linear_form(P("1 + z1*z2")); }) == ErrorCode::NotLinear);
}

TEST_CASE("basis of a stochastic system") {
  const AmoebaBasis b = amoeba_basis(LinearSystem::from_rows({{0.3, 0.7}, {0.6, 0.4}}));
  REQUIRE(b.polys.size() == 3);
  const LaurentPoly expect[3] = {P("1 + 0.5*z1 + 0.5*z2"), P("1 + 2*z1 - z2"), P("1 - z1 + 2*z2")};
  for (int j = 0; j < 3; ++j) {
    const LinearForm got = linear_form(b.polys[j]);
    const LinearForm want = linear_form(expect[j]);
    CHECK(std::abs(got.constant - want.constant) < 1e-9);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(got.coeffs[k] - want.coeffs[k]) < 1e-9);
  }
  CHECK(std::abs(b.witness[0] + 1.0) < 1e-12);
  CHECK(std::abs(b.witness[1] + 1.0) < 1e-12);

  const BasisReport rep = verify_basis(b, 10000);
  CHECK(rep.ok());
  CHECK(rep.samples_checked == 10000);
  CHECK(rep.failures.empty());

  // dropping any element leaves uncertified points
  for (int drop = 0; drop < 3; ++drop) {
    AmoebaBasis t = b;
    t.polys.erase(t.polys.begin() + drop);
    CHECK_FALSE(verify_basis(t, 10000).axiom1);
  }

  // a perturbed coefficient no longer vanishes at the witness
  AmoebaBasis p = b;
  p.polys[1].add_term({1, 0}, 0.1);
  const BasisReport bad = verify_basis(p, 1000);
  CHECK_FALSE(bad.axiom1);
  CHECK(bad.max_residual > 0.05);
  REQUIRE(!bad.failures.empty());
  CHECK(bad.failures.front().axiom == 1);
}

TEST_CASE("basis construction errors") {
  CHECK(error_of([] { amoeba_basis(LinearSystem::from_rows({{2.0}})); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { amoeba_basis(LinearSystem::from_rows({{1.0, 2.0}, {2.0, 4.0}})); }) ==
        ErrorCode::SingularSystem);
  CHECK(error_of([] { amoeba_basis(LinearSystem::from_rows({{1.0, 5.0}, {1.0, 7.0}})); }) ==
        ErrorCode::ZeroCoordinateSolution);
}

TEST_CASE("random systems give bases with the engineered contact indices") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const AmoebaBasis b = amoeba_basis(random_system(rng, n));
    REQUIRE(static_cast<int>(b.polys.size()) == n + 1);
    for (int j = 0; j <= n; ++j) {
      CHECK(std::abs(eval(b.polys[j], b.witness)) < 1e-9);
      double gap = 0;
      CHECK(equality_index(b.polys[j], b.witness, 1e-9, &gap) == j);
      CHECK(gap < 1e-9);
    }
    const BasisReport rep = verify_basis(b, 2000, 2.0, 1000 + trial);
    CHECK(rep.ok());
  }
}

TEST_CASE("rescaling the common zero translates the contact point") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const LinearSystem sys = random_system(rng, 3);
    const double lambda = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
    LinearSystem scaled = sys;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) scaled.a(r, c) = sys.a(r, c) / lambda;
    }
    const AmoebaBasis a = amoeba_basis(sys);
    const AmoebaBasis b = amoeba_basis(scaled);
    std::vector<double> wb(3);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::log(std::abs(b.witness[k])) - std::log(std::abs(a.witness[k])) ==
            doctest::Approx(std::log(lambda)).epsilon(1e-9));
      wb[k] = std::log(std::abs(a.witness[k])) + std::log(lambda);
    }
    for (const auto& g : b.polys) CHECK(linear_classify(g, wb).tag == PointTag::Boundary);
  }
}

TEST_CASE("closed form agrees with the fiber test") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> uw(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly f = LaurentPoly::constant(2, gauss_c(rng));
    f.add_term({1, 0}, gauss_c(rng));
    f.add_term({0, 1}, gauss_c(rng));
    const Point2 w{uw(rng), uw(rng)};
    const PointTag closed = linear_classify(f, w).tag;
    const PointTag fiber = classify(f, w).tag;
    CHECK_MESSAGE(closed == fiber, format_poly(f) << " at " << w[0] << "," << w[1]);
  }
}

#include "amoeba/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "amoeba/errors.hpp"

namespace amoeba {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAberthIterations = 500;

// p(z), p'(z) and Σ|a_k||z|^k by Horner.
struct HornerResult {
  Complex value;
  Complex deriv;
  double bound;
};

HornerResult horner(std::span<const Complex> a, Complex z) {
  Complex v = a.back();
  Complex d{};
  double b = std::abs(a.back());
  const double az = std::abs(z);
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    d = d * z + v;
    v = v * z + a[i];
    b = b * az + std::abs(a[i]);
  }
  return {v, d, b};
}

// Newton correction p(z)/p'(z) evaluated stably for any |z|, and whether
// |p(z)| is already within the rounding error of its evaluation.
struct NewtonStep {
  Complex ratio;
  bool at_noise_floor = false;
};

NewtonStep newton_step(std::span<const Complex> a, std::span<const Complex> rev,
                       Complex z) {
  const int n = static_cast<int>(a.size()) - 1;
  const double floor_factor = 4.0 * (n + 1) * kEps;
  if (std::abs(z) <= 1.0) {
    const auto h = horner(a, z);
    if (std::abs(h.value) <= floor_factor * h.bound) {
      return {h.deriv == Complex{} ? Complex{} : h.value / h.deriv, true};
    }
    if (h.deriv == Complex{}) return {Complex(1e-3 * (1.0 + std::abs(z))), false};
    return {h.value / h.deriv, false};
  }
  const Complex y = 1.0 / z;
  const auto h = horner(rev, y);
  const bool floor = std::abs(h.value) <= floor_factor * h.bound;
  const Complex denom = static_cast<double>(n) - y * h.deriv / h.value;
  if (h.value == Complex{} || denom == Complex{}) return {Complex{}, true};
  return {z / denom, floor};
}

std::vector<Complex> initial_guesses(std::span<const Complex> a) {
  const int n = static_cast<int>(a.size()) - 1;
  // Upper convex hull of (k, log|a_k|) gives the root radii.
  std::vector<int> hull;
  std::vector<double> la(a.size());
  for (int k = 0; k <= n; ++k) {
    la[k] = a[k] == Complex{} ? -std::numeric_limits<double>::infinity()
                              : std::log(std::abs(a[k]));
  }
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(la[k])) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      // Remove j if it lies on or below segment i-k.
      if ((la[j] - la[i]) * (k - i) <= (la[k] - la[i]) * (j - i)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  z.reserve(n);
  constexpr double sigma = 0.7;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = hull[h];
    const int j = hull[h + 1];
    const int m = j - i;
    const double r = std::exp((la[i] - la[j]) / m);
    for (int q = 0; q < m; ++q) {
      const double ang = two_pi * q / m + two_pi * i / n + sigma;
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------

Complex UniPoly::operator()(Complex t) const {
  if (coeffs.empty()) return {};
  return horner(coeffs, t).value;
}

Complex UniPoly::derivative_at(Complex t) const {
  if (coeffs.empty()) return {};
  return horner(coeffs, t).deriv;
}

double UniPoly::max_modulus() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

UniPoly UniPoly::trimmed(double rel) const {
  UniPoly out = *this;
  const double cut = rel * max_modulus();
  while (!out.coeffs.empty() &&
         (std::abs(out.coeffs.back()) <= cut || out.coeffs.back() == Complex{})) {
    out.coeffs.pop_back();
  }
  return out;
}

RootResult roots(const UniPoly& p_in) {
  const UniPoly p = p_in.trimmed();
  if (p.degree() < 1) {
    throw Error(ErrorCode::InvalidArgument, "root finding needs degree >= 1");
  }
  RootResult result;

  std::size_t zeros = 0;
  while (zeros < p.coeffs.size() && p.coeffs[zeros] == Complex{}) ++zeros;
  std::vector<Complex> a(p.coeffs.begin() + zeros, p.coeffs.end());
  const int n = static_cast<int>(a.size()) - 1;

  std::vector<Complex> z;
  if (n == 1) {
    z.push_back(-a[0] / a[1]);
  } else if (n > 1) {
    std::vector<Complex> rev(a.rbegin(), a.rend());
    z = initial_guesses(a);
    std::vector<char> done(n, 0);
    int it = 0;
    for (; it < kMaxAberthIterations; ++it) {
      bool all_done = true;
      for (int k = 0; k < n; ++k) {
        if (done[k]) continue;
        const auto step = newton_step(a, rev, z[k]);
        if (step.at_noise_floor) {
          done[k] = 1;
          continue;
        }
        Complex s{};
        for (int j = 0; j < n; ++j) {
          if (j != k) s += 1.0 / (z[k] - z[j]);
        }
        const Complex corr = step.ratio / (1.0 - step.ratio * s);
        z[k] -= corr;
        if (std::abs(corr) < 1e-12 * (1.0 + std::abs(z[k]))) {
          done[k] = 1;
        } else {
          all_done = false;
        }
      }
      if (all_done) break;
    }
    result.iterations = it;
    result.converged =
        std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
  }

  // Cluster by proximity (union-find).
  std::vector<int> parent(z.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double r =
          std::max(1e-8, 1e-6 * std::max(std::abs(z[i]), std::abs(z[j])));
      if (std::abs(z[i] - z[j]) < r) parent[find(int(j))] = find(int(i));
    }
  }
  std::vector<std::vector<int>> groups(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) groups[find(int(i))].push_back(int(i));
  for (const auto& g : groups) {
    if (g.empty()) continue;
    Complex c{};
    for (int i : g) c += z[i];
    c /= static_cast<double>(g.size());
    double rad = 0.0;
    for (int i : g) rad = std::max(rad, std::abs(z[i] - c));
    result.clusters.push_back({c, static_cast<int>(g.size()), rad});
  }
  if (zeros > 0) {
    result.clusters.push_back({Complex{}, static_cast<int>(zeros), 0.0});
    z.insert(z.end(), zeros, Complex{});
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const RootCluster& x, const RootCluster& y) {
              if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
              return x.center.imag() < y.center.imag();
            });
  for (const auto& c : result.clusters) {
    const auto h = horner(p.coeffs, c.center);
    if (h.bound > 0) result.max_residual = std::max(result.max_residual, std::abs(h.value) / h.bound);
  }
  result.raw = std::move(z);
  return result;
}

// ---------------------------------------------------------------------------

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Complex det(Matrix m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  }
  const int n = m.rows();
  if (n == 0) return 1.0;
  Complex d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(m(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(m(r, k)) > best) {
        best = std::abs(m(r, k));
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int c = k; c < n; ++c) std::swap(m(k, c), m(piv, c));
      d = -d;
    }
    const Complex pk = m(k, k);
    d *= pk;
    for (int r = k + 1; r < n; ++r) {
      const Complex f = m(r, k) / pk;
      if (f == Complex{}) continue;
      for (int c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return d;
}

std::vector<Complex> solve_linear(Matrix a, std::span<const Complex> b_in) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b_in.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "solve_linear dimension mismatch");
  }
  std::vector<Complex> b(b_in.begin(), b_in.end());
  std::vector<double> scale(n, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) scale[r] = std::max(scale[r], std::abs(a(r, c)));
  }
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > best) {
        best = std::abs(a(r, k));
        piv = r;
      }
    }
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(b[k], b[piv]);
      std::swap(scale[k], scale[piv]);
    }
    if (best <= 1e-12 * scale[k] || best == 0.0) {
      throw Error(ErrorCode::SingularMatrix, "matrix is singular to working precision");
    }
    for (int r = k + 1; r < n; ++r) {
      const Complex f = a(r, k) / a(k, k);
      if (f == Complex{}) continue;
      for (int c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<Complex> x(n);
  for (int k = n - 1; k >= 0; --k) {
    Complex s = b[k];
    for (int c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

int rank(Matrix m, double rel_tol) {
  const int rows = m.rows();
  const int cols = m.cols();
  double top = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) top = std::max(top, std::abs(m(r, c)));
  }
  if (top == 0.0) return 0;
  int rk = 0;
  for (int k = 0; k < std::min(rows, cols); ++k) {
    int pr = k, pc = k;
    double best = 0.0;
    for (int r = k; r < rows; ++r) {
      for (int c = k; c < cols; ++c) {
        if (std::abs(m(r, c)) > best) {
          best = std::abs(m(r, c));
          pr = r;
          pc = c;
        }
      }
    }
    if (best <= rel_tol * top) break;
    for (int c = 0; c < cols; ++c) std::swap(m(k, c), m(pr, c));
    for (int r = 0; r < rows; ++r) std::swap(m(r, k), m(r, pc));
    for (int r = k + 1; r < rows; ++r) {
      const Complex f = m(r, k) / m(k, k);
      for (int c = k; c < cols; ++c) m(r, c) -= f * m(k, c);
    }
    ++rk;
  }
  return rk;
}

// ---------------------------------------------------------------------------

BiPoly BiPoly::from_laurent(const LaurentPoly& f) {
  if (f.nvars() != 2) {
    throw Error(ErrorCode::InvalidArgument, "bivariate conversion needs two variables");
  }
  const Exponent lo = f.min_exponent();
  if (!f.empty() && (lo[0] < 0 || lo[1] < 0)) {
    throw Error(ErrorCode::NegativeExponent, "bivariate conversion needs non-negative exponents");
  }
  const Exponent hi = f.max_exponent();
  BiPoly out(hi[0], hi[1]);
  for (const auto& [e, c] : f.terms()) out.at(e[0], e[1]) = c;
  return out;
}

Complex BiPoly::operator()(Complex t1, Complex t2) const {
  return at_t1(t1)(t2);
}

UniPoly BiPoly::coefficient_in_t2(int k) const {
  UniPoly out;
  out.coeffs.resize(deg1_ + 1);
  for (int i = 0; i <= deg1_; ++i) out.coeffs[i] = at(i, k);
  return out;
}

UniPoly BiPoly::at_t1(Complex t1) const {
  UniPoly out;
  out.coeffs.resize(deg2_ + 1);
  for (int k = 0; k <= deg2_; ++k) {
    Complex v{};
    for (int i = deg1_; i >= 0; --i) v = v * t1 + at(i, k);
    out.coeffs[k] = v;
  }
  return out;
}

UniPoly BiPoly::at_t2(Complex t2) const {
  UniPoly out;
  out.coeffs.resize(deg1_ + 1);
  for (int i = 0; i <= deg1_; ++i) {
    Complex v{};
    for (int k = deg2_; k >= 0; --k) v = v * t2 + at(i, k);
    out.coeffs[i] = v;
  }
  return out;
}

double BiPoly::max_modulus() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

namespace {

Matrix sylvester_matrix(const UniPoly& g, const UniPoly& h) {
  const int m = g.degree();
  const int l = h.degree();
  Matrix s(m + l, m + l);
  for (int r = 0; r < l; ++r) {
    for (int k = 0; k <= m; ++k) s(r, r + (m - k)) = g.coeffs[k];
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= l; ++k) s(l + r, r + (l - k)) = h.coeffs[k];
  }
  return s;
}

double hadamard_bound(const Matrix& s) {
  double logb = 0.0;
  for (int r = 0; r < s.rows(); ++r) {
    double n2 = 0.0;
    for (int c = 0; c < s.cols(); ++c) n2 += std::norm(s(r, c));
    if (n2 == 0.0) return 0.0;
    logb += 0.5 * std::log(n2);
  }
  return std::exp(logb);
}

}  // namespace

Complex sylvester_det(const UniPoly& g, const UniPoly& h) {
  if (g.degree() < 0 || h.degree() < 0) return 0.0;
  return det(sylvester_matrix(g, h));
}

UniPoly sylvester_resultant(const BiPoly& g, const BiPoly& h,
                            const ResultantOptions& opts) {
  const int m = g.deg2();
  const int l = h.deg2();
  if (m < 1 || l < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "resultant needs positive degree in the eliminated variable");
  }
  const int bound = l * g.deg1() + m * h.deg1();
  const int nodes = bound + 1;
  const double two_pi = 2.0 * std::numbers::pi;

  struct Attempt {
    UniPoly poly;
    bool verified = false;
  };
  auto attempt = [&](double rho) {
    std::vector<Complex> vals(nodes);
    double scale = 0.0;
    double top = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const Complex t = std::polar(rho, two_pi * k / nodes);
      const Matrix s = sylvester_matrix(g.at_t1(t), h.at_t1(t));
      scale = std::max(scale, hadamard_bound(s));
      vals[k] = det(s);
      top = std::max(top, std::abs(vals[k]));
    }
    if (top <= opts.zero_rel * scale) {
      throw Error(ErrorCode::IdenticallyZero,
                  "resultant vanishes identically (common component)");
    }
    UniPoly r;
    r.coeffs.resize(nodes);
    for (int j = 0; j < nodes; ++j) {
      Complex acc{};
      for (int k = 0; k < nodes; ++k) {
        const long long jk = (static_cast<long long>(j) * k) % nodes;
        acc += vals[k] * std::polar(1.0, -two_pi * static_cast<double>(jk) / nodes);
      }
      r.coeffs[j] = acc / (static_cast<double>(nodes) * std::pow(rho, j));
    }
    // Independent check node halfway between two interpolation nodes.
    const Complex tc = std::polar(rho, std::numbers::pi / nodes);
    const Matrix sc = sylvester_matrix(g.at_t1(tc), h.at_t1(tc));
    const double err = std::abs(det(sc) - r(tc));
    const double ref = std::max(hadamard_bound(sc), scale);
    Attempt a{r.trimmed(opts.trim_rel), err <= 1e-8 * ref};
    return a;
  };

  Attempt first = attempt(1.0);
  if (first.verified) return first.poly;
  for (double rho : {0.7, 1.3}) {
    Attempt a = attempt(rho);
    if (a.verified) return a.poly;
  }
  return first.poly;
}

UniPoly conj_reciprocal(const UniPoly& g, int d) {
  if (g.degree() > d) {
    throw Error(ErrorCode::InvalidArgument, "reflection degree below polynomial degree");
  }
  UniPoly out;
  out.coeffs.assign(d + 1, Complex{});
  for (int k = 0; k <= g.degree(); ++k) out.coeffs[d - k] = std::conj(g.coeffs[k]);
  return out;
}

BiPoly conj_reciprocal(const BiPoly& g, int d1, int d2) {
  if (g.deg1() > d1 || g.deg2() > d2) {
    throw Error(ErrorCode::InvalidArgument, "reflection degree below polynomial degree");
  }
  BiPoly out(d1, d2);
  for (int i2 = 0; i2 <= g.deg2(); ++i2) {
    for (int i1 = 0; i1 <= g.deg1(); ++i1) {
      out.at(d1 - i1, d2 - i2) = std::conj(g.at(i1, i2));
    }
  }
  return out;
}

LaurentPoly conj_reciprocal(const LaurentPoly& g, const Exponent& d) {
  LaurentPoly out(g.nvars());
  Exponent e(g.nvars());
  for (const auto& [a, c] : g.terms()) {
    for (int j = 0; j < g.nvars(); ++j) e[j] = d[j] - a[j];
    out.add_term(e, std::conj(c));
  }
  return out;
}

}  // namespace amoeba

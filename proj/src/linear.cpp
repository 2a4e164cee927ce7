#include "amoeba/linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "amoeba/errors.hpp"

namespace amoeba {

namespace {

constexpr double kEqualityTol = 1e-9;
constexpr double kResidualTol = 1e-9;

std::string format_point(std::span<const double> w) {
  std::string s = "(";
  char buf[32];
  for (std::size_t j = 0; j < w.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.6g", w[j]);
    if (j) s += ", ";
    s += buf;
  }
  return s + ")";
}

bool in_amoeba(const LaurentPoly& g, std::span<const double> w) {
  return linear_classify(g, w).tag != PointTag::Complement;
}

// Search directions around Log|v| for the minimality witnesses.
std::vector<std::vector<double>> probe_directions(int n) {
  std::vector<std::vector<double>> dirs;
  dirs.push_back(std::vector<double>(n, -1.0));
  for (int j = 0; j < n; ++j) {
    std::vector<double> d(n, 0.0);
    d[j] = 1.0;
    dirs.push_back(d);
  }
  if (n == 2) {
    for (int k = 0; k < 72; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 72;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < 256; ++k) {
      std::vector<double> d(n);
      for (auto& x : d) x = gauss(rng);
      dirs.push_back(d);
    }
  }
  return dirs;
}

}  // namespace

LinearForm linear_form(const LaurentPoly& f) {
  const int n = f.nvars();
  LinearForm out{Complex{}, std::vector<Complex>(n, Complex{})};
  for (const auto& [e, c] : f.terms()) {
    int ones = 0, at = -1;
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      if (e[j] == 1) {
        ++ones;
        at = j;
      } else if (e[j] != 0) {
        ok = false;
      }
    }
    if (!ok || ones > 1) throw Error(ErrorCode::NotLinear, "polynomial is not linear");
    if (ones == 0) {
      out.constant = c;
    } else {
      out.coeffs[at] = c;
    }
  }
  return out;
}

LinearClass linear_classify(const LaurentPoly& f, std::span<const double> w) {
  const LinearForm lf = linear_form(f);
  if (lf.constant == Complex{}) {
    throw Error(ErrorCode::NotLinear, "linear polynomial needs a nonzero constant term");
  }
  if (static_cast<int>(w.size()) != f.nvars()) {
    throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  }
  const double b0 = std::abs(lf.constant);
  std::vector<double> r(lf.coeffs.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    r[j] = std::abs(lf.coeffs[j]) / b0 * std::exp(w[j]);
    sum += r[j];
  }
  const double tol = kEqualityTol * (1.0 + sum);
  LinearClass out;
  if (std::fabs(sum - 1.0) <= tol) {
    out.tag = PointTag::Boundary;
    return out;
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double others = 1.0 + sum - r[j];
    if (std::fabs(r[j] - others) <= tol) {
      out.tag = PointTag::Boundary;
      return out;
    }
  }
  if (sum < 1.0) {
    out.tag = PointTag::Complement;
    out.dominant = 0;
    return out;
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] > 1.0 + sum - r[j]) {
      out.tag = PointTag::Complement;
      out.dominant = static_cast<int>(j) + 1;
      return out;
    }
  }
  out.tag = PointTag::Interior;
  return out;
}

LinearSystem LinearSystem::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const int n = static_cast<int>(rows.size());
  LinearSystem sys{Matrix(n, n)};
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(rows[j].size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "linear system must be square");
    }
    for (int k = 0; k < n; ++k) sys.a(j, k) = rows[j][k];
  }
  return sys;
}

AmoebaBasis amoeba_basis(const LinearSystem& sys) {
  const int n = sys.size();
  if (n < 2 || sys.a.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "amoeba basis needs a square system with n >= 2");
  }
  const std::vector<Complex> rhs(n, Complex(-1.0));
  std::vector<Complex> v;
  try {
    v = solve_linear(sys.a, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularSystem, "linear system does not have full rank");
  }
  double norm1 = 0.0;
  for (const auto& x : v) norm1 += std::abs(x);
  for (const auto& x : v) {
    if (std::abs(x) <= 1e-12 * norm1) {
      throw Error(ErrorCode::ZeroCoordinateSolution, "common zero has a vanishing coordinate");
    }
  }

  std::vector<Complex> phase(n);
  for (int k = 0; k < n; ++k) phase[k] = std::polar(1.0, -std::arg(v[k]));

  auto unit = [n](int k) {
    Exponent e(n, 0);
    e[k] = 1;
    return e;
  };
  AmoebaBasis out;
  out.witness = v;
  LaurentPoly g0 = LaurentPoly::constant(n, 1.0);
  for (int k = 0; k < n; ++k) g0.add_term(unit(k), -phase[k] / norm1);
  out.polys.push_back(std::move(g0));
  for (int j = 0; j < n; ++j) {
    LaurentPoly g = LaurentPoly::constant(n, 1.0);
    for (int k = 0; k < n; ++k) {
      if (k == j) {
        g.add_term(unit(k), -(1.0 + norm1 - std::abs(v[j])) / v[j]);
      } else {
        g.add_term(unit(k), phase[k]);
      }
    }
    out.polys.push_back(std::move(g));
  }
  return out;
}

BasisReport verify_basis(const AmoebaBasis& basis, int samples, double box,
                         std::uint64_t seed) {
  BasisReport rep;
  const auto& v = basis.witness;
  const int n = static_cast<int>(v.size());
  std::vector<double> center(n);
  for (int k = 0; k < n; ++k) center[k] = std::log(std::abs(v[k]));

  for (const auto& g : basis.polys) {
    rep.max_residual = std::max(rep.max_residual, std::abs(eval(g, v)));
  }

  // Axiom 1: Log|v| lies in every amoeba, and every other point is cut out.
  if (rep.max_residual > kResidualTol) {
    rep.axiom1 = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "basis polynomial does not vanish at the witness (|g| = %.3g)",
                  rep.max_residual);
    rep.failures.push_back({1, buf, center});
  }
  for (std::size_t j = 0; j < basis.polys.size(); ++j) {
    if (!in_amoeba(basis.polys[j], center)) {
      rep.axiom1 = false;
      rep.failures.push_back(
          {1, "Log|v| is outside the amoeba of g_" + std::to_string(j), center});
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-box, box);
  std::vector<double> w(n);
  for (int s = 0; s < samples; ++s) {
    double dist = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = offset(rng);
      w[k] = center[k] + d;
      dist = std::max(dist, std::fabs(d));
    }
    if (dist < 1e-12) continue;
    ++rep.samples_checked;
    const bool cut = std::any_of(basis.polys.begin(), basis.polys.end(),
                                 [&](const LaurentPoly& g) { return !in_amoeba(g, w); });
    if (!cut) {
      if (rep.axiom1) {
        rep.failures.push_back(
            {1, "sample " + format_point(w) + " lies in every amoeba", w});
      }
      rep.axiom1 = false;
    }
  }

  // Axiom 2: each g_i removes points the others keep.
  const auto dirs = probe_directions(n);
  for (std::size_t i = 0; i < basis.polys.size(); ++i) {
    bool found = false;
    for (double eps : {1e-3, 1e-2, 1e-1, 0.5}) {
      for (const auto& d : dirs) {
        for (int k = 0; k < n; ++k) w[k] = center[k] + eps * d[k];
        if (in_amoeba(basis.polys[i], w)) continue;
        bool kept = true;
        for (std::size_t j = 0; j < basis.polys.size() && kept; ++j) {
          if (j != i) kept = in_amoeba(basis.polys[j], w);
        }
        if (kept) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      rep.axiom2 = false;
      rep.failures.push_back(
          {2, "g_" + std::to_string(i) + " is redundant: no point is cut out by it alone", center});
    }
  }

  // Axiom 3: the polynomials generate the ideal of v, i.e. they vanish at v
  // and their linear parts have rank n.
  Matrix lin(static_cast<int>(basis.polys.size()), n);
  for (std::size_t j = 0; j < basis.polys.size(); ++j) {
    const LinearForm lf = linear_form(basis.polys[j]);
    for (int k = 0; k < n; ++k) lin(static_cast<int>(j), k) = lf.coeffs[k];
  }
  const int rk = rank(lin);
  if (rk != n || rep.max_residual > kResidualTol) {
    rep.axiom3 = false;
    rep.failures.push_back({3,
                            "generated ideal differs from the ideal of v (rank " +
                                std::to_string(rk) + " of " + std::to_string(n) + ")",
                            center});
  }
  return rep;
}

}  // namespace amoeba

#include "amoeba/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::DegenerateFiber: return "DegenerateFiber";
    case ErrorCode::DegenerateSlice: return "DegenerateSlice";
    case ErrorCode::InconsistentOrder: return "InconsistentOrder";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ZeroCoordinateSolution: return "ZeroCoordinateSolution";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

void check_exponent(const Exponent& e, int nvars) {
  if (static_cast<int>(e.size()) != nvars) {
    throw Error(ErrorCode::InvalidArgument,
                "exponent vector has length " + std::to_string(e.size()) +
                    ", expected " + std::to_string(nvars));
  }
  for (auto a : e) {
    if (std::abs(static_cast<std::int64_t>(a)) > kMaxExponent) {
      throw Error(ErrorCode::DegreeOutOfRange,
                  "exponent " + std::to_string(a) + " exceeds supported range");
    }
  }
}

// Neumaier summation on one real component.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) {
    throw Error(ErrorCode::InvalidArgument, "nvars must be at least 1");
  }
}

LaurentPoly LaurentPoly::constant(int nvars, Complex c) {
  LaurentPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(Complex c, Exponent e) {
  LaurentPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int j) {
  if (j < 0 || j >= nvars) {
    throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  }
  Exponent e(nvars, 0);
  e[j] = 1;
  return monomial(1.0, e);
}

Complex LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

void LaurentPoly::add_term(const Exponent& e, Complex c) {
  check_exponent(e, nvars_);
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

double LaurentPoly::max_modulus() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

LaurentPoly LaurentPoly::pruned(double rel) const {
  LaurentPoly out(nvars_);
  const double cut = rel * max_modulus();
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) >= cut && c != Complex{}) out.terms_.emplace(e, c);
  }
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.nvars_ != nvars_) {
    throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  *this = pruned();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  return *this += -o;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (o.nvars_ != nvars_) {
    throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  }
  LaurentPoly out(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int j = 0; j < nvars_; ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  }
  *this = out.pruned();
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPoly LaurentPoly::scaled(Complex s) const {
  LaurentPoly out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * s);
  return out;
}

LaurentPoly LaurentPoly::shifted(const Exponent& beta) const {
  check_exponent(beta, nvars_);
  LaurentPoly out(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, c] : terms_) {
    for (int j = 0; j < nvars_; ++j) e[j] = ea[j] + beta[j];
    out.add_term(e, c);
  }
  return out;
}

Exponent LaurentPoly::min_exponent() const {
  if (terms_.empty()) return Exponent(nvars_, 0);
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < nvars_; ++j) m[j] = std::min(m[j], e[j]);
  }
  return m;
}

Exponent LaurentPoly::max_exponent() const {
  if (terms_.empty()) return Exponent(nvars_, 0);
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < nvars_; ++j) m[j] = std::max(m[j], e[j]);
  }
  return m;
}

int LaurentPoly::cleared_degree() const {
  const Exponent lo = min_exponent();
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int j = 0; j < nvars_; ++j) s += e[j] - lo[j];
    d = std::max(d, s);
  }
  return d;
}

bool LaurentPoly::depends_on(int j) const {
  if (terms_.empty()) return false;
  const auto first = terms_.begin()->first[j];
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first[j] != first; });
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }

Complex ipow(Complex z, std::int64_t k) {
  if (k < 0) return Complex(1.0) / ipow(z, -k);
  Complex result(1.0);
  Complex base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Complex eval(const LaurentPoly& f, std::span<const Complex> z) {
  const int n = f.nvars();
  if (static_cast<int>(z.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  }
  CompensatedSum re, im;
  for (const auto& [e, c] : f.terms()) {
    Complex m = c;
    for (int j = 0; j < n; ++j) {
      if (e[j] == 0) continue;
      if (z[j] == Complex{} && e[j] < 0) {
        throw Error(ErrorCode::ZeroCoordinate,
                    "z" + std::to_string(j + 1) +
                        " = 0 with a negative exponent");
      }
      m *= ipow(z[j], e[j]);
    }
    re.add(m.real());
    im.add(m.imag());
  }
  return {re.value(), im.value()};
}

LaurentPoly partial(const LaurentPoly& f, int j) {
  if (j < 0 || j >= f.nvars()) {
    throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  }
  LaurentPoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[j] == 0) continue;
    Exponent d = e;
    d[j] -= 1;
    out.add_term(d, c * static_cast<double>(e[j]));
  }
  return out;
}

LaurentPoly log_gauss_numerator(const LaurentPoly& f, int j) {
  if (j < 0 || j >= f.nvars()) {
    throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  }
  LaurentPoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[j] == 0) continue;
    out.add_term(e, c * static_cast<double>(e[j]));
  }
  return out;
}

// ---------------------------------------------------------------------------

double RealPoly::eval(std::span<const double> x, std::span<const double> y) const {
  CompensatedSum s;
  for (const auto& [e, c] : terms) {
    double m = c;
    for (int j = 0; j < nvars; ++j) {
      for (int k = 0; k < e[j]; ++k) m *= x[j];
      for (int k = 0; k < e[nvars + j]; ++k) m *= y[j];
    }
    s.add(m);
  }
  return s.value();
}

RealPolyPair realify(const LaurentPoly& f) {
  const int n = f.nvars();
  std::map<std::vector<int>, Complex> acc;
  for (const auto& [e, c] : f.terms()) {
    for (auto a : e) {
      if (a < 0) {
        throw Error(ErrorCode::NegativeExponent,
                    "realify requires non-negative exponents");
      }
    }
    // Expand Π_j (x_j + i y_j)^{a_j} one variable at a time.
    std::map<std::vector<int>, Complex> partial_terms{{std::vector<int>(2 * n, 0), c}};
    for (int j = 0; j < n; ++j) {
      const int a = e[j];
      if (a == 0) continue;
      std::map<std::vector<int>, Complex> next;
      double binom = 1.0;
      for (int k = 0; k <= a; ++k) {
        static const Complex ipows[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const Complex factor = binom * ipows[k % 4];
        for (const auto& [pe, pc] : partial_terms) {
          auto ne = pe;
          ne[j] += a - k;
          ne[n + j] += k;
          next[ne] += pc * factor;
        }
        binom = binom * (a - k) / (k + 1);
      }
      partial_terms = std::move(next);
    }
    for (const auto& [pe, pc] : partial_terms) acc[pe] += pc;
  }
  RealPolyPair out;
  out.re.nvars = n;
  out.im.nvars = n;
  for (const auto& [e, c] : acc) {
    if (c.real() != 0.0) out.re.terms[e] = c.real();
    if (c.imag() != 0.0) out.im.terms[e] = c.imag();
  }
  return out;
}

// ---------------------------------------------------------------------------

FiberPoly fiber_restrict(const LaurentPoly& f, std::span<const double> w) {
  const int n = f.nvars();
  if (static_cast<int>(w.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  }
  std::vector<double> logs;
  logs.reserve(f.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [e, c] : f.terms()) {
    double l = std::log(std::abs(c));
    for (int j = 0; j < n; ++j) l += e[j] * w[j];
    if (!std::isfinite(l)) {
      throw Error(ErrorCode::Overflow, "coefficient scaling is not representable");
    }
    logs.push_back(l);
    top = std::max(top, l);
  }
  FiberPoly out{LaurentPoly(n), f.empty() ? 0.0 : top};
  std::size_t k = 0;
  for (const auto& [e, c] : f.terms()) {
    const double mag = std::exp(logs[k++] - top);
    if (mag < std::numeric_limits<double>::min()) {
      throw Error(ErrorCode::Overflow,
                  "coefficient underflows after fiber normalization");
    }
    out.poly.add_term(e, (c / std::abs(c)) * mag);
  }
  return out;
}

// ---------------------------------------------------------------------------

NewtonPolytope newton_polytope(const LaurentPoly& f) {
  if (f.nvars() != 2) {
    throw Error(ErrorCode::InvalidArgument, "Newton polytope requires two variables");
  }
  using P = std::array<long long, 2>;
  std::vector<P> pts;
  for (const auto& [e, c] : f.terms()) pts.push_back({e[0], e[1]});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  NewtonPolytope out;
  if (pts.size() <= 2) {
    for (const auto& p : pts) out.vertices.push_back({int(p[0]), int(p[1])});
    return out;
  }
  auto cross = [](const P& o, const P& a, const P& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  long long twice_area = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    twice_area += a[0] * b[1] - a[1] * b[0];
  }
  for (const auto& p : hull) out.vertices.push_back({int(p[0]), int(p[1])});
  out.normalized_volume = std::llabs(twice_area);
  return out;
}

}  // namespace amoeba

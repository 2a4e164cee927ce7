#pragma once

// Linear polynomials 1 + Σ b_j z_j: closed-form amoeba membership, and the
// amoeba basis of a full-rank linear system, i.e. n + 1 linear polynomials
// whose amoebas meet exactly in Log|v| for the common zero v.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amoeba/fiber.hpp"
#include "amoeba/laurent.hpp"
#include "amoeba/numeric.hpp"

namespace amoeba {

/// c0 + Σ c_j z_j. Throws NotLinear for any other support.
struct LinearForm {
  Complex constant;
  std::vector<Complex> coeffs;
};

LinearForm linear_form(const LaurentPoly& f);

struct LinearClass {
  PointTag tag = PointTag::Interior;
  /// For Complement: index of the dominating term, 0 for the constant and
  /// j for z_j. -1 otherwise.
  int dominant = -1;
};

/// Exact classification with r_j = |b_j / b_0| e^{w_j}; equalities are
/// detected to 1e-9 relative.
LinearClass linear_classify(const LaurentPoly& f, std::span<const double> w);

/// Equations 1 + Σ_k a(j, k) z_k = 0, j = 1..n.
struct LinearSystem {
  Matrix a;

  static LinearSystem from_rows(const std::vector<std::vector<Complex>>& rows);
  int size() const { return a.rows(); }
};

struct AmoebaBasis {
  std::vector<LaurentPoly> polys;  // g_0 .. g_n
  std::vector<Complex> witness;    // the common zero v
};

/// Throws SingularSystem or ZeroCoordinateSolution; requires n >= 2.
AmoebaBasis amoeba_basis(const LinearSystem& sys);

struct AxiomFailure {
  int axiom = 0;
  std::string message;
  std::vector<double> witness;
};

struct BasisReport {
  bool axiom1 = true;
  bool axiom2 = true;
  bool axiom3 = true;
  int samples_checked = 0;
  double max_residual = 0.0;  // max |g_j(v)|
  std::vector<AxiomFailure> failures;

  bool ok() const { return axiom1 && axiom2 && axiom3; }
};

/// Checks the basis axioms: (1) intersection of the amoebas is Log|v|,
/// by sampling `samples` points in the box Log|v| ± box; (2) no element is
/// redundant; (3) the polynomials generate the ideal of v.
BasisReport verify_basis(const AmoebaBasis& basis, int samples, double box = 2.0,
                         std::uint64_t seed = 0x5eedULL);

}  // namespace amoeba

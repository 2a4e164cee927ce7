#pragma once

// Command surface of the `amoeba` tool and its export formats.
//
// Exit codes: 0 success, 1 usage error, 2 parse error, 3 degenerate input,
// 4 numeric non-convergence.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amoeba/betti.hpp"
#include "amoeba/contour.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/laurent.hpp"

namespace amoeba {

enum class Command { Member, Classify, Order, Lopsided, Fiber, Contour, Boundary, Betti, Raster, Basis };

const char* to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

struct Job {
  Command command = Command::Classify;
  std::string poly;
  std::vector<double> point;    // w, or |z| when point_is_abs
  bool point_is_abs = false;
  Window window;
  int nx = 81;
  int ny = 81;
  int slices = 360;
  FiberOptions fiber;
  std::string linear;           // "a11,a12;a21,a22"
  int samples = 10000;
  double box = 2.0;
  std::string out_path;         // CSV or PPM; empty = standard output for CSV
  std::string svg_path;
};

/// Runs one job. Results go to `out`, diagnostics to `err`.
int run(const Job& job, std::ostream& out, std::ostream& err);

// Helpers shared with the command-line front end and tests.

/// Comma-separated doubles.
std::vector<double> parse_number_list(std::string_view text);
/// Rows separated by ';', entries by ','. Entries are constant expressions
/// in the polynomial syntax, so complex values like "(1+2i)" are accepted.
std::vector<std::vector<Complex>> parse_matrix(std::string_view text);

/// Rounds to 12 significant digits (the fixed output precision).
double round12(double v);
std::string format12(double v);

/// Coefficients rounded to 12 significant digits relative to their modulus.
LaurentPoly rounded(const LaurentPoly& f);

// Exports.
struct Rgb {
  unsigned char r, g, b;
};

Rgb betti_color(int value);
Rgb tag_color(PointTag tag);

std::string betti_ppm(const Raster<int>& r);
std::string betti_svg(const Raster<int>& r);
std::string tag_ppm(const Raster<PointTag>& r);
std::string tag_svg(const Raster<PointTag>& r);

std::string contour_csv(const std::vector<ContourPoint>& points, const std::vector<std::string>& classes);

std::string classification_json(Point2 w, const PointClass& pc, const LaurentPoly& f, bool membership_only);

}  // namespace amoeba

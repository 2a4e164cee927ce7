// amoeba: exact amoeba queries for two-variable Laurent polynomials.
//
//   amoeba classify --poly "z1^3 + z2^3 + 1.3*z1*z2 + 1" --point 0,0
//   amoeba betti --poly "..." --window -2,-2,2,2 --res 81,81 --out b.ppm
//   amoeba basis --linear "0.3,0.7;0.6,0.4"

#include <iostream>

#include "CLI11.hpp"
#include "amoeba/cli_io.hpp"
#include "amoeba/errors.hpp"

namespace {

struct Flags {
  std::string point;
  std::string window;
  std::string res;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace amoeba;
  CLI::App app{"Exact amoebas of two-variable Laurent polynomials"};
  app.require_subcommand(1);

  Job job;
  Flags flags;

  struct Spec {
    Command cmd;
    const char* help;
  };
  const Spec specs[] = {
      {Command::Member, "Is the point in the amoeba? (JSON)"},
      {Command::Classify, "Complement / Interior / ContourInterior / Boundary (JSON)"},
      {Command::Order, "Order of the complement component containing the point (JSON)"},
      {Command::Lopsided, "Dominant monomial at the point, if any (JSON)"},
      {Command::Fiber, "All points of V(f) on the fiber over the point (JSON)"},
      {Command::Contour, "Trace the contour (CSV w1,w2,theta,class)"},
      {Command::Boundary, "Trace the contour and split boundary from inner contour (CSV)"},
      {Command::Betti, "Betti raster over a window (PPM/SVG, JSON summary)"},
      {Command::Raster, "Classification raster over a window (PPM/SVG, JSON summary)"},
      {Command::Basis, "Amoeba basis of a linear system (text report)"},
  };

  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(to_string(s.cmd), s.help);
    sub->callback([&job, cmd = s.cmd] { job.command = cmd; });
    switch (s.cmd) {
      case Command::Basis:
        sub->add_option("--linear", job.linear, "Rows 'a11,a12;a21,a22' of 1 + sum a_jk z_k")->required();
        sub->add_option("--samples", job.samples, "Axiom 1 sample count")->check(CLI::PositiveNumber);
        sub->add_option("--box", job.box, "Half-width of the sample box")->check(CLI::PositiveNumber);
        continue;
      default:
        break;
    }
    sub->add_option("--poly", job.poly, "Polynomial, e.g. \"z1^3 + z2^3 + z1*z2 + 1\"")->required();
    sub->add_option("--critical-tol", job.fiber.critical_tol, "Criticality score threshold")
        ->check(CLI::PositiveNumber);
    switch (s.cmd) {
      case Command::Member:
      case Command::Classify:
      case Command::Order:
      case Command::Lopsided:
      case Command::Fiber:
        sub->add_option("--point", flags.point, "w1,w2 (log coordinates)")->required();
        sub->add_flag("--abs", job.point_is_abs, "Read --point as |z1|,|z2|");
        break;
      case Command::Contour:
      case Command::Boundary:
        sub->add_option("--slices", job.slices, "Number of direction slices")->check(CLI::PositiveNumber);
        sub->add_option("--out", job.out_path, "CSV output file (default: stdout)");
        break;
      case Command::Betti:
      case Command::Raster:
        sub->add_option("--window", flags.window, "w1min,w2min,w1max,w2max");
        sub->add_option("--res", flags.res, "nx,ny");
        sub->add_option("--out", job.out_path, "PPM output file");
        sub->add_option("--svg", job.svg_path, "SVG output file");
        break;
      default:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!flags.point.empty()) job.point = parse_number_list(flags.point);
    if (!flags.window.empty()) {
      const auto v = parse_number_list(flags.window);
      if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "--window needs four numbers");
      job.window = {{v[0], v[1]}, {v[2], v[3]}};
    }
    if (!flags.res.empty()) {
      const auto v = parse_number_list(flags.res);
      if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "--res needs two integers");
      job.nx = static_cast<int>(v[0]);
      job.ny = static_cast<int>(v[1]);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return run(job, std::cout, std::cerr);
}

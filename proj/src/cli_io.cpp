#include "amoeba/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/expr_parser.hpp"
#include "amoeba/linear.hpp"

namespace amoeba {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::array<Rgb, 12> kPalette{{
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40},
    {148, 103, 189}, {140, 86, 75}, {23, 190, 207}, {188, 189, 34},
    {127, 127, 127}, {0, 0, 128}, {128, 0, 0}, {0, 100, 0},
}};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

Json number(double v) { return round12(v); }

Json point_json(std::span<const double> w) {
  Json a = Json::array();
  for (double x : w) a.push_back(number(x));
  return a;
}

Json solution_json(const FiberSolution& s, bool with_t) {
  Json j;
  j["phi"] = {number(s.phi[0]), number(s.phi[1])};
  if (with_t) {
    j["t"] = {{number(s.t[0].real()), number(s.t[0].imag())},
              {number(s.t[1].real()), number(s.t[1].imag())}};
  }
  j["multiplicity"] = s.multiplicity;
  j["critical"] = s.critical;
  j["score"] = number(s.score);
  return j;
}

template <class T, class ColorFn>
std::string to_ppm(const Raster<T>& r, ColorFn color) {
  std::string out = "P6\n" + std::to_string(r.nx) + " " + std::to_string(r.ny) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(r.nx) * r.ny * 3);
  for (int j = r.ny - 1; j >= 0; --j) {
    for (int i = 0; i < r.nx; ++i) {
      const Rgb c = color(r.at(i, j));
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  return out;
}

template <class T, class ColorFn>
std::string to_svg(const Raster<T>& r, ColorFn color) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << r.nx * 4
    << "\" height=\"" << r.ny * 4 << "\" viewBox=\"0 0 " << r.nx << ' ' << r.ny
    << "\" shape-rendering=\"crispEdges\">\n";
  char fill[8];
  for (int j = r.ny - 1; j >= 0; --j) {
    for (int i = 0; i < r.nx; ++i) {
      const Rgb c = color(r.at(i, j));
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", c.r, c.g, c.b);
      s << "<rect x=\"" << i << "\" y=\"" << (r.ny - 1 - j)
        << "\" width=\"1\" height=\"1\" fill=\"" << fill << "\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing " + path);
}

Point2 job_point(const Job& job) {
  if (job.point.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "--point needs two comma-separated coordinates");
  }
  Point2 w{job.point[0], job.point[1]};
  if (job.point_is_abs) {
    for (auto& x : w) {
      if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "--abs coordinates must be positive");
      x = std::log(x);
    }
  }
  return w;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::EmptyInput:
      return 2;
    case ErrorCode::DegenerateFiber:
    case ErrorCode::DegenerateSlice:
    case ErrorCode::IdenticallyZero:
    case ErrorCode::SingularSystem:
    case ErrorCode::SingularMatrix:
    case ErrorCode::ZeroCoordinateSolution:
    case ErrorCode::InconsistentOrder:
      return 3;
    case ErrorCode::NoConvergence:
    case ErrorCode::Overflow:
      return 4;
    default:
      return 1;
  }
}

std::string complex_text(Complex c) {
  if (c.imag() == 0.0) return format12(c.real());
  return "(" + format12(c.real()) + (c.imag() < 0 ? "-" : "+") + format12(std::fabs(c.imag())) + "*i)";
}

void write_csv(const Job& job, std::ostream& out, const std::string& csv) {
  if (job.out_path.empty()) {
    out << csv;
  } else {
    write_file(job.out_path, csv);
  }
}

int run_job(const Job& job, std::ostream& out, std::ostream& err) {
  if (job.command == Command::Basis) {
    const auto rows = parse_matrix(job.linear);
    const AmoebaBasis basis = amoeba_basis(LinearSystem::from_rows(rows));
    const BasisReport rep = verify_basis(basis, job.samples, job.box);
    for (std::size_t j = 0; j < basis.polys.size(); ++j) {
      out << 'g' << j << " = " << format_poly(rounded(basis.polys[j])) << '\n';
    }
    out << "witness = (";
    for (std::size_t k = 0; k < basis.witness.size(); ++k) {
      if (k) out << ", ";
      const Complex v = basis.witness[k];
      out << complex_text({round12(v.real()), std::fabs(v.imag()) < 1e-12 * std::abs(v) ? 0.0 : round12(v.imag())});
    }
    out << ")\n";
    out << "axiom1: " << (rep.axiom1 ? "pass" : "fail") << " (" << rep.samples_checked << " samples)\n";
    out << "axiom2: " << (rep.axiom2 ? "pass" : "fail") << '\n';
    out << "axiom3: " << (rep.axiom3 ? "pass" : "fail") << '\n';
    for (const auto& f : rep.failures) out << "failure axiom" << f.axiom << ": " << f.message << '\n';
    return 0;
  }

  const LaurentPoly f = parse_poly(job.poly, 2);
  switch (job.command) {
    case Command::Member:
    case Command::Classify: {
      const Point2 w = job_point(job);
      const PointClass pc = classify(f, w, job.fiber);
      out << classification_json(w, pc, f, job.command == Command::Member) << '\n';
      return pc.tag == PointTag::Degenerate ? 3 : 0;
    }
    case Command::Order: {
      const Point2 w = job_point(job);
      const auto o = order(f, w);
      Json j;
      j["point"] = point_json(w);
      j["order"] = {o[0], o[1]};
      out << j.dump() << '\n';
      return 0;
    }
    case Command::Lopsided: {
      const Point2 w = job_point(job);
      const auto a = lopsided(f, w);
      Json j;
      j["point"] = point_json(w);
      j["lopsided"] = a.has_value();
      j["exponent"] = a ? Json(*a) : Json(nullptr);
      out << j.dump() << '\n';
      return 0;
    }
    case Command::Fiber: {
      const Point2 w = job_point(job);
      const auto sols = fiber_solutions(f, w, job.fiber);
      Json j;
      j["point"] = point_json(w);
      Json arr = Json::array();
      for (const auto& s : sols) arr.push_back(solution_json(s, true));
      j["solutions"] = std::move(arr);
      out << j.dump() << '\n';
      return 0;
    }
    case Command::Contour:
    case Command::Boundary: {
      const ContourTrace tr = trace_contour(f, job.slices);
      std::vector<std::string> classes(tr.points.size(), "contour");
      if (job.command == Command::Boundary) {
        const ContourPartition part = classify_contour(f, tr.points, job.fiber);
        for (std::size_t i = 0; i < classes.size(); ++i) {
          switch (part.tags[i]) {
            case PointTag::Boundary: classes[i] = "boundary"; break;
            case PointTag::ContourInterior: classes[i] = "inner"; break;
            case PointTag::Degenerate: classes[i] = "degenerate"; break;
            default: classes[i] = "unconfirmed"; break;
          }
        }
      }
      write_csv(job, out, contour_csv(tr.points, classes));
      if (!tr.degenerate_thetas.empty()) {
        err << "note: " << tr.degenerate_thetas.size() << " degenerate slice(s) skipped\n";
      }
      return 0;
    }
    case Command::Betti:
    case Command::Raster: {
      const RasterPass rp = raster_pass(f, job.window, job.nx, job.ny, job.fiber);
      Json j;
      j["window"] = {number(job.window.lo[0]), number(job.window.lo[1]),
                     number(job.window.hi[0]), number(job.window.hi[1])};
      j["resolution"] = {job.nx, job.ny};
      if (job.command == Command::Betti) {
        std::map<int, int> hist;
        for (int v : rp.betti.cells) ++hist[v];
        Json values = Json::object();
        for (const auto& [v, n] : hist) values[std::to_string(v)] = n;
        const CellWalls walls = cell_walls(rp.betti);
        j["values"] = std::move(values);
        j["bound"] = betti_bound(f);
        j["walls"] = walls.contour.size();
        j["zero_walls"] = walls.zero.size();
        if (!job.out_path.empty()) write_file(job.out_path, betti_ppm(rp.betti));
        if (!job.svg_path.empty()) write_file(job.svg_path, betti_svg(rp.betti));
      } else {
        std::map<int, int> hist;
        for (PointTag t : rp.tags.cells) ++hist[static_cast<int>(t)];
        Json tags = Json::object();
        for (const auto& [t, n] : hist) tags[to_string(static_cast<PointTag>(t))] = n;
        j["tags"] = std::move(tags);
        if (!job.out_path.empty()) write_file(job.out_path, tag_ppm(rp.tags));
        if (!job.svg_path.empty()) write_file(job.svg_path, tag_svg(rp.tags));
      }
      out << j.dump() << '\n';
      return 0;
    }
    case Command::Basis:
      break;
  }
  return 1;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Member: return "member";
    case Command::Classify: return "classify";
    case Command::Order: return "order";
    case Command::Lopsided: return "lopsided";
    case Command::Fiber: return "fiber";
    case Command::Contour: return "contour";
    case Command::Boundary: return "boundary";
    case Command::Betti: return "betti";
    case Command::Raster: return "raster";
    case Command::Basis: return "basis";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::Member, Command::Classify, Command::Order, Command::Lopsided,
                    Command::Fiber, Command::Contour, Command::Boundary, Command::Betti,
                    Command::Raster, Command::Basis}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw ParseError(ErrorCode::SyntaxError, "malformed number '" + item + "'",
                       {pos, comma == std::string_view::npos ? text.size() : comma});
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::vector<Complex>> parse_matrix(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t pos = 0;
  while (true) {
    const auto semi = text.find(';', pos);
    const std::string_view row =
        text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
    std::vector<Complex> entries;
    std::size_t p = 0;
    while (true) {
      const auto comma = row.find(',', p);
      const std::string_view item =
          row.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p);
      LaurentPoly c;
      try {
        c = parse_poly(item, 1);
      } catch (const ParseError& e) {
        const std::size_t base = pos + p;
        throw ParseError(e.code(), e.what(), {base + e.span().begin, base + e.span().end});
      }
      if (c.size() > 1 || (c.size() == 1 && c.terms().begin()->first[0] != 0)) {
        throw ParseError(ErrorCode::SyntaxError, "matrix entries must be constants",
                         {pos + p, pos + p + item.size()});
      }
      entries.push_back(c.coefficient({0}));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    rows.push_back(std::move(entries));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return rows;
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

LaurentPoly rounded(const LaurentPoly& f) {
  LaurentPoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    const double m = std::abs(c);
    const double re = std::fabs(c.real()) < 1e-12 * m ? 0.0 : round12(c.real());
    const double im = std::fabs(c.imag()) < 1e-12 * m ? 0.0 : round12(c.imag());
    out.add_term(e, {re, im});
  }
  return out;
}

Rgb betti_color(int value) {
  if (value == 0) return {255, 255, 255};
  if (value < 0) return {255, 0, 255};
  return kPalette[static_cast<std::size_t>(value - 1) % kPalette.size()];
}

Rgb tag_color(PointTag tag) {
  switch (tag) {
    case PointTag::Complement: return {255, 255, 255};
    case PointTag::Interior: return {70, 130, 180};
    case PointTag::ContourInterior: return {25, 25, 112};
    case PointTag::Boundary: return {255, 165, 0};
    case PointTag::Degenerate: return {255, 0, 255};
  }
  return {0, 0, 0};
}

std::string betti_ppm(const Raster<int>& r) { return to_ppm(r, betti_color); }
std::string betti_svg(const Raster<int>& r) { return to_svg(r, betti_color); }
std::string tag_ppm(const Raster<PointTag>& r) { return to_ppm(r, tag_color); }
std::string tag_svg(const Raster<PointTag>& r) { return to_svg(r, tag_color); }

std::string contour_csv(const std::vector<ContourPoint>& points,
                        const std::vector<std::string>& classes) {
  std::string out = "w1,w2,theta,class\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out += format12(p.w[0]) + ',' + format12(p.w[1]) + ',' + format12(p.theta) + ',' +
           (i < classes.size() ? classes[i] : std::string("contour")) + '\n';
  }
  return out;
}

std::string classification_json(Point2 w, const PointClass& pc, const LaurentPoly& f,
                                bool membership_only) {
  Json j;
  j["point"] = point_json(w);
  if (membership_only) j["member"] = pc.tag != PointTag::Complement;
  j["tag"] = to_string(pc.tag);
  if (!membership_only) j["caveat"] = pc.caveat;
  Json sols = Json::array();
  for (const auto& s : pc.solutions) sols.push_back(solution_json(s, false));
  j["solutions"] = std::move(sols);
  if (!membership_only && pc.tag == PointTag::Complement) {
    try {
      const auto o = order(f, w);
      j["order"] = {o[0], o[1]};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InconsistentOrder) throw;
      j["order"] = nullptr;
    }
    const auto a = lopsided(f, w);
    j["lopsided"] = a ? Json(*a) : Json(nullptr);
  }
  return j.dump();
}

int run(const Job& job, std::ostream& out, std::ostream& err) {
  try {
    for (double t : {job.fiber.critical_tol, job.fiber.residual_tol, job.fiber.candidate_tol,
                     job.fiber.merge_tol, job.box}) {
      if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    }
    return run_job(job, out, err);
  } catch (const ParseError& e) {
    const std::string& text = job.command == Command::Basis ? job.linear : job.poly;
    err << "error: " << e.what() << '\n';
    err << "  " << text << '\n';
    const std::size_t b = std::min(e.span().begin, text.size());
    const std::size_t n = std::max<std::size_t>(1, e.span().end - e.span().begin);
    err << "  " << std::string(b, ' ') << std::string(n, '^') << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace amoeba

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "amoeba/cli_io.hpp"
#include "amoeba/expr_parser.hpp"

using namespace amoeba;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_job(const Job& job) {
  std::ostringstream out, err;
  const int code = run(job, out, err);
  return {code, out.str(), err.str()};
}

Job point_job(Command cmd, const char* poly, double w1, double w2) {
  Job j;
  j.command = cmd;
  j.poly = poly;
  j.point = {w1, w2};
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("command names") {
  for (auto c : {Command::Member, Command::Classify, Command::Order, Command::Lopsided, Command::Fiber,
                 Command::Contour, Command::Boundary, Command::Betti, Command::Raster, Command::Basis}) {
    CHECK(parse_command(to_string(c)) == c);
  }
  CHECK_FALSE(parse_command("draw").has_value());
}

TEST_CASE("classify prints one JSON object") {
  const Outcome o = run_job(point_job(Command::Classify, "z1^3 + z2^3 + 1.3*z1*z2 + 1", 0, 0));
  REQUIRE(o.code == 0);
  const Json j = Json::parse(o.out);
  CHECK(j["tag"] == "Complement");
  CHECK(j["order"] == Json::array({1, 1}));
  CHECK(j["point"] == Json::array({0.0, 0.0}));
  CHECK(j["solutions"].empty());
  CHECK(j["lopsided"].is_null());
  CHECK(j["caveat"] == false);
}

TEST_CASE("member and fiber outputs re-parse") {
  const Outcome m = run_job(point_job(Command::Member, "1 + z1 + z2", 0, 0));
  REQUIRE(m.code == 0);
  const Json jm = Json::parse(m.out);
  CHECK(jm["member"] == true);
  CHECK(jm["tag"] == "Interior");
  REQUIRE(jm["solutions"].size() == 2);
  for (const auto& s : jm["solutions"]) {
    CHECK(s["phi"].size() == 2);
    CHECK(s["multiplicity"] == 1);
    CHECK(s["critical"] == false);
    CHECK(s["score"].get<double>() >= 0);
    for (double a : s["phi"]) {
      CHECK(a >= 0);
      CHECK(a < 6.283185307179587);
    }
  }

  const Outcome f = run_job(point_job(Command::Fiber, "1 + z1 + z2", std::log(0.5), std::log(0.5)));
  REQUIRE(f.code == 0);
  const Json jf = Json::parse(f.out);
  REQUIRE(jf["solutions"].size() == 1);
  CHECK(jf["solutions"][0]["t"][0][0].get<double>() == doctest::Approx(-1.0));
  CHECK(jf["solutions"][0]["critical"] == true);
}

TEST_CASE("absolute-value points are logged") {
  Job j = point_job(Command::Classify, "1 + z1 + z2", 0.5, 0.5);
  j.point_is_abs = true;
  const Json out = Json::parse(run_job(j).out);
  CHECK(out["tag"] == "Boundary");
  CHECK(out["point"][0].get<double>() == doctest::Approx(std::log(0.5)));
  j.point = {-1.0, 0.5};
  CHECK(run_job(j).code == 1);
}

TEST_CASE("order and lopsided commands") {
  const Json o = Json::parse(run_job(point_job(Command::Order, "1 + z1 + z2", 10, 0)).out);
  CHECK(o["order"] == Json::array({1, 0}));
  const Json l = Json::parse(run_job(point_job(Command::Lopsided, "1 + z1 + z2", -10, -10)).out);
  CHECK(l["lopsided"] == true);
  CHECK(l["exponent"] == Json::array({0, 0}));
  const Json n = Json::parse(run_job(point_job(Command::Lopsided, "1 + z1 + z2", 0, 0)).out);
  CHECK(n["lopsided"] == false);
  CHECK(n["exponent"].is_null());
}

TEST_CASE("exit codes") {
  const Outcome parse = run_job(point_job(Command::Classify, "z1z2 + 1", 0, 0));
  CHECK(parse.code == 2);
  CHECK(parse.err.find('^') != std::string::npos);
  CHECK(parse.out.empty());

  CHECK(run_job(point_job(Command::Classify, "1 + z1", 0, 0)).code == 3);
  CHECK(run_job(point_job(Command::Order, "1 + z1 + z2", 0, 0)).code == 3);

  Job basis;
  basis.command = Command::Basis;
  basis.linear = "1,2;2,4";
  CHECK(run_job(basis).code == 3);

  Job bad_tol = point_job(Command::Classify, "1 + z1 + z2", 0, 0);
  bad_tol.fiber.critical_tol = -1;
  CHECK(run_job(bad_tol).code == 1);

  Job short_point = point_job(Command::Classify, "1 + z1 + z2", 0, 0);
  short_point.point = {0};
  CHECK(run_job(short_point).code == 1);
}

TEST_CASE("contour CSV re-parses") {
  Job j;
  j.command = Command::Boundary;
  j.poly = "1 + z1 + z2";
  j.slices = 30;
  const Outcome o = run_job(j);
  REQUIRE(o.code == 0);
  const auto lines = split(o.out, '\n');
  REQUIRE(lines.size() > 3);
  CHECK(lines.front() == "w1,w2,theta,class");
  CHECK(lines.back().empty());
  for (std::size_t k = 1; k + 1 < lines.size(); ++k) {
    const auto cols = split(lines[k], ',');
    REQUIRE(cols.size() == 4);
    const double w1 = std::stod(cols[0]), w2 = std::stod(cols[1]), th = std::stod(cols[2]);
    CHECK(std::isfinite(w1));
    CHECK(std::isfinite(w2));
    CHECK(th >= 0);
    CHECK(th < 3.1415926536);
    CHECK(cols[3] == "boundary");
  }
}

TEST_CASE("raster exports") {
  const std::string ppm = "test_cli_io_betti.ppm";
  const std::string svg = "test_cli_io_betti.svg";
  Job j;
  j.command = Command::Betti;
  j.poly = "1 + z1 + z2";
  j.window = {{-3, -3}, {3, 3}};
  j.nx = 6;
  j.ny = 4;
  j.out_path = ppm;
  j.svg_path = svg;
  const Outcome o = run_job(j);
  REQUIRE(o.code == 0);
  const Json summary = Json::parse(o.out);
  CHECK(summary["resolution"] == Json::array({6, 4}));
  CHECK(summary["bound"] == 4);
  int cells = 0;
  for (auto& [k, v] : summary["values"].items()) cells += v.get<int>();
  CHECK(cells == 24);

  const std::string img = slurp(ppm);
  const std::string header = "P6\n6 4\n255\n";
  REQUIRE(img.size() == header.size() + 6 * 4 * 3);
  CHECK(img.substr(0, header.size()) == header);
  // top-left pixel is the cell with minimal w1 and maximal w2: in the amoeba
  // of 1 + z1 + z2 at (-2.5, 2.25)? 1 + e^-2.5 < e^2.25, so complement, white.
  CHECK(static_cast<unsigned char>(img[header.size()]) == 255);
  const std::string s = slurp(svg);
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("version=\"1.1\"") != std::string::npos);
  std::remove(ppm.c_str());
  std::remove(svg.c_str());
}

TEST_CASE("colors") {
  const Rgb white = betti_color(0);
  CHECK((white.r == 255 && white.g == 255 && white.b == 255));
  const Rgb magenta = betti_color(-1);
  CHECK((magenta.r == 255 && magenta.g == 0 && magenta.b == 255));
  const Rgb a = betti_color(2), b = betti_color(6);
  CHECK_FALSE((a.r == b.r && a.g == b.g && a.b == b.b));
  const Rgb c = tag_color(PointTag::Complement);
  CHECK((c.r == 255 && c.g == 255 && c.b == 255));
}

TEST_CASE("basis report") {
  Job j;
  j.command = Command::Basis;
  j.linear = "0.3,0.7;0.6,0.4";
  j.samples = 2000;
  const Outcome o = run_job(j);
  REQUIRE(o.code == 0);
  CHECK(o.out.find("g0 = 1 + 0.5*z2 + 0.5*z1\n") != std::string::npos);
  CHECK(o.out.find("g1 = 1 - z2 + 2*z1\n") != std::string::npos);
  CHECK(o.out.find("g2 = 1 + 2*z2 - z1\n") != std::string::npos);
  CHECK(o.out.find("witness = (-1, -1)") != std::string::npos);
  CHECK(o.out.find("axiom1: pass") != std::string::npos);
  CHECK(o.out.find("axiom2: pass") != std::string::npos);
  CHECK(o.out.find("axiom3: pass") != std::string::npos);
  // the printed polynomials are in the input syntax
  const auto pos = o.out.find("g1 = ") + 5;
  const std::string g1 = o.out.substr(pos, o.out.find('\n', pos) - pos);
  CHECK(parse_poly(g1, 2) == parse_poly("1 + 2*z1 - z2", 2));
}

TEST_CASE("identical jobs give identical bytes") {
  const Job j = point_job(Command::Classify, "z1^3 + z2^3 + z1*z2 + 1", 0.1, -0.3);
  CHECK(run_job(j).out == run_job(j).out);
  Job c;
  c.command = Command::Contour;
  c.poly = "z1^3 + z2^3 + z1*z2 + 1";
  c.slices = 20;
  CHECK(run_job(c).out == run_job(c).out);
}

TEST_CASE("number and matrix helpers") {
  CHECK(parse_number_list("1, -2.5,3e1") == std::vector<double>{1, -2.5, 30});
  CHECK_THROWS(parse_number_list("1,,2"));
  CHECK_THROWS(parse_number_list("abc"));
  const auto m = parse_matrix("0.3,0.7; (1+2i), -1");
  REQUIRE(m.size() == 2);
  CHECK(m[1][0] == Complex(1, 2));
  CHECK(m[1][1] == Complex(-1, 0));
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(format12(1.0 / 3.0) == "0.333333333333");
  CHECK(format12(-0.0) == "0");
}

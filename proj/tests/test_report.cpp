#include "icrack/config.hpp"
#include "icrack/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace icrack;

namespace {
RunConfig small() {
  RunConfig c;
  c.name = "small";
  c.numerics.order = 8;
  c.output.samples = 21;
  return c;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}
}  // namespace

TEST_CASE("boundary-field CSV covers both arcs") {
  const RunResult r = run_case(small());
  std::ostringstream out;
  write_boundary_fields_csv(out, r);
  const std::string text = out.str();
  CHECK(text.starts_with("arc,s,x,y,sigma_n_plus_0,tau_n_plus_0,sigma_n_minus,tau_n_minus,"));
  CHECK(text.find("re_g0_prime,im_g0_prime") != std::string::npos);
  CHECK(count_lines(text) == 1 + 2 * 21);
  CHECK(boundary_field_columns().size() == 20);
}

TEST_CASE("outputs are deterministic") {
  const RunResult a = run_case(small());
  const RunResult b = run_case(small());
  CHECK(densities_json(a) == densities_json(b));
  CHECK(summary_json(a) == summary_json(b));
  std::ostringstream x, y;
  write_boundary_fields_csv(x, a);
  write_boundary_fields_csv(y, b);
  CHECK(x.str() == y.str());
}

TEST_CASE("densities JSON lists eight blocks with Taylor coefficients") {
  const RunResult r = run_case(small());
  const auto j = nlohmann::json::parse(densities_json(r));
  CHECK(j["order"] == 8);
  CHECK(j["full_coefficients"] == 16 * 8 + 23);
  REQUIRE(j["blocks"].size() == 8);
  CHECK(j["blocks"][0]["density"] == "q0");
  CHECK(j["blocks"][0]["taylor_re"].size() == 10);
  CHECK(j["blocks"][6]["taylor_re"].size() == 9);
  CHECK(j["residual_report"].contains("condition_estimate"));
}

TEST_CASE("summary carries the opening, tip fits and a note") {
  const RunResult r = run_case(small());
  const auto j = nlohmann::json::parse(summary_json(r, "reference curves not regenerated"));
  CHECK(j["max_crack_opening"].get<double>() > 0.0);
  CHECK(j["tip_fits"].size() == 2);
  CHECK(j["note"] == "reference curves not regenerated");
}

TEST_CASE("zero load gives all-zero fields") {
  RunConfig c = small();
  c.load = {0.0, 0.0, 0.0};
  const RunResult r = run_case(c);
  CHECK(r.max_crack_opening == 0.0);
  for (const BoundarySample& b : crack_face_fields(r.solution.densities, r.setup, 5).samples) {
    const auto row = boundary_field_row(r.solution.densities, b, 0);
    for (std::size_t k = 4; k < row.size(); ++k) CHECK(row[k] == 0.0);
  }
}

TEST_CASE("g0 curve difference of a solution with itself is zero") {
  const RunResult r = run_case(small());
  const auto [re, im] = g0_curve_difference(r.solution.densities, r.solution.densities);
  CHECK(re == 0.0);
  CHECK(im == 0.0);
}

#include "icrack/report.hpp"

#include "icrack/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace icrack {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
  out << "\n";
}

void write_header(std::ostream& out, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

template <class F>
void write_stream(const std::filesystem::path& path, F&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
}

Json report_json(const ResidualReport& r) {
  Json res = Json::object();
  for (const auto& [k, v] : r.max_row_residual) res[k] = v;
  return {{"rows", r.rows},
          {"columns", r.columns},
          {"rank", r.rank},
          {"condition_estimate", r.condition_estimate},
          {"max_residual", r.max_residual},
          {"max_row_residual", std::move(res)},
          {"special_material_case", r.special_material_case},
          {"quadrature_converged", r.quadrature_converged},
          {"quadrature_change", r.quadrature_change}};
}

Json tips_json(const std::array<TipFit, 2>& tips) {
  Json out = Json::array();
  for (const TipFit& t : tips) {
    out.push_back({{"tip_s", t.tip_s},
                   {"normal_exponent", t.normal_exponent},
                   {"shear_exponent", t.shear_exponent},
                   {"shear_log_intercept", t.shear_log_intercept},
                   {"shear_log_slope", t.shear_log_slope},
                   {"shear_log_residual", t.shear_log_residual}});
  }
  return out;
}

}  // namespace

RunResult run_case(const RunConfig& config) {
  ProblemSetup setup = config.problem();
  LinearSystem system = assemble(setup, config.numerics);
  Solution solution = solve(system, setup, config.numerics);
  const double opening = max_crack_opening(solution.densities, setup);
  const auto tips = tip_fits(solution.densities, setup);
  ValidationReport validation =
      validate_solution(solution.densities, setup, system.quadrature_panels);
  return RunResult{config,   std::move(setup),      std::move(system), std::move(solution),
                   std::move(validation), opening, tips};
}

const std::vector<std::string>& boundary_field_columns() {
  static const std::vector<std::string> cols{
      "arc",           "s",
      "x",             "y",
      "sigma_n_plus_0", "tau_n_plus_0",
      "sigma_n_minus", "tau_n_minus",
      "ut_prime_plus_0", "un_prime_plus_0",
      "ut_prime_minus", "un_prime_minus",
      "re_g0_prime",   "im_g0_prime",
      "re_q0",         "im_q0",
      "re_g_prime",    "im_g_prime",
      "re_q",          "im_q"};
  return cols;
}

std::vector<double> boundary_field_row(const DensitySet& d, const BoundarySample& b, int arc) {
  const Complex lp = b.local_dudt_plus();
  const Complex lm = b.local_dudt_minus();
  const Complex g0 = d.eval_on_arc(Density::g0p, arc, b.s);
  const Complex q0 = d.eval_on_arc(Density::q0, arc, b.s);
  const Complex g = d.eval_on_arc(Density::gp, arc, b.s);
  const Complex q = d.eval_on_arc(Density::q, arc, b.s);
  return {static_cast<double>(arc), b.s, 0.0, 0.0,
          b.stress_plus.real(), b.stress_plus.imag(), b.stress_minus.real(), b.stress_minus.imag(),
          lp.real(), lp.imag(), lm.real(), lm.imag(),
          g0.real(), g0.imag(), q0.real(), q0.imag(), g.real(), g.imag(), q.real(), q.imag()};
}

void write_boundary_fields_csv(std::ostream& out, const RunResult& r) {
  write_header(out, boundary_field_columns());
  const DensitySet& d = r.solution.densities;
  const int n = r.config.output.samples;
  for (int arc = 0; arc < 2; ++arc) {
    const BoundaryField f = arc == 0 ? crack_face_fields(d, r.setup, n)
                                     : interface_fields(d, r.setup, n);
    for (const BoundarySample& b : f.samples) {
      std::vector<double> row = boundary_field_row(d, b, arc);
      const Complex p = r.setup.contour.point(b.s);
      row[2] = p.real();
      row[3] = p.imag();
      write_row(out, row);
    }
  }
}

void write_deformed_csv(std::ostream& out, const RunResult& r) {
  write_header(out, {"s", "x_undeformed", "y_undeformed", "x_deformed_inclusion",
                     "y_deformed_inclusion", "x_deformed_matrix", "y_deformed_matrix"});
  for (const DeformedPoint& p :
       deformed_boundary(r.solution.densities, r.setup, r.config.output.deformation_scale)) {
    write_row(out, {p.s, p.undeformed.real(), p.undeformed.imag(), p.inclusion.real(),
                    p.inclusion.imag(), p.matrix.real(), p.matrix.imag()});
  }
}

std::string densities_json(const RunResult& r) {
  const DensitySet& d = r.solution.densities;
  Json blocks = Json::array();
  for (int j = 0; j < DensitySet::kBlocks; ++j) {
    const Density which = static_cast<Density>(j % 4);
    const Arc& arc = d.arc(j / 4);
    blocks.push_back({{"index", j + 1},
                      {"density", std::string(density_name(which))},
                      {"arc", j < 4 ? "crack" : "bonded"},
                      {"centre", arc.centre()},
                      {"taylor_re", d.taylor_re(j)},
                      {"taylor_im", d.taylor_im(j)},
                      {"legendre_re", d.legendre_re(j)},
                      {"legendre_im", d.legendre_im(j)}});
  }
  Json j{{"name", r.config.name},
         {"order", d.order()},
         {"l0", d.l0()},
         {"l", d.length()},
         {"full_coefficients", r.system.full_columns},
         {"free_coefficients", r.system.free_columns()},
         {"blocks", std::move(blocks)},
         {"residual_report", report_json(r.solution.report)}};
  return j.dump(2) + "\n";
}

std::string summary_json(const RunResult& r, const std::string& note) {
  Json j{{"name", r.config.name},
         {"order", r.config.numerics.order},
         {"oversampling", r.config.numerics.oversampling},
         {"max_crack_opening", r.max_crack_opening},
         {"tip_fits", tips_json(r.tips)},
         {"condition_estimate", r.solution.report.condition_estimate},
         {"max_residual", r.solution.report.max_residual},
         {"special_material_case", r.solution.report.special_material_case},
         {"quadrature_panels", r.system.quadrature_panels},
         {"quadrature_converged", r.system.quadrature_converged},
         {"validation_passed", r.validation.passed()}};
  if (!note.empty()) j["note"] = note;
  return j.dump(2) + "\n";
}

void write_run_outputs(const RunResult& r, const std::filesystem::path& dir,
                       const std::string& note) {
  std::filesystem::create_directories(dir);
  write_file(dir / "densities.json", densities_json(r));
  write_stream(dir / "boundary_fields.csv", [&](std::ostream& o) { write_boundary_fields_csv(o, r); });
  write_file(dir / "validation.json", r.validation.to_json() + "\n");
  write_file(dir / "summary.json", summary_json(r, note));
  write_stream(dir / "deformed_boundary.csv", [&](std::ostream& o) { write_deformed_csv(o, r); });
}

std::pair<double, double> g0_curve_difference(const DensitySet& a, const DensitySet& reference,
                                              double fraction, int samples) {
  const double l0 = reference.l0();
  const double lo = 0.5 * (1.0 - fraction) * l0;
  double amp_re = 0.0, amp_im = 0.0, diff_re = 0.0, diff_im = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = lo + fraction * l0 * i / (samples - 1);
    const Complex x = a.eval_on_arc(Density::g0p, 0, s);
    const Complex y = reference.eval_on_arc(Density::g0p, 0, s);
    amp_re = std::max(amp_re, std::abs(y.real()));
    amp_im = std::max(amp_im, std::abs(y.imag()));
    diff_re = std::max(diff_re, std::abs(x.real() - y.real()));
    diff_im = std::max(diff_im, std::abs(x.imag() - y.imag()));
  }
  return {amp_re > 0.0 ? diff_re / amp_re : diff_re, amp_im > 0.0 ? diff_im / amp_im : diff_im};
}

namespace {

// One CSV with column s and, per run, the chosen boundary-field columns of one arc.
void combined_csv(const std::filesystem::path& path, const std::vector<RunResult>& runs,
                  const Scenario& sc, int arc, const std::vector<std::string>& columns) {
  const auto& all = boundary_field_columns();
  std::vector<std::size_t> idx;
  for (const std::string& c : columns) {
    idx.push_back(static_cast<std::size_t>(std::find(all.begin(), all.end(), c) - all.begin()));
  }
  std::vector<BoundaryField> fields;
  for (const RunResult& r : runs) {
    const int n = r.config.output.samples;
    fields.push_back(arc == 0 ? crack_face_fields(r.solution.densities, r.setup, n)
                              : interface_fields(r.solution.densities, r.setup, n));
  }
  write_stream(path, [&](std::ostream& out) {
    std::vector<std::string> header{"s"};
    for (const ScenarioRun& run : sc.runs) {
      for (const std::string& c : columns) header.push_back(c + "_" + run.label);
    }
    write_header(out, header);
    for (std::size_t i = 0; i < fields.front().samples.size(); ++i) {
      std::vector<double> row{fields.front().samples[i].s};
      for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto values = boundary_field_row(runs[k].solution.densities, fields[k].samples[i], arc);
        for (std::size_t j : idx) row.push_back(values[j]);
      }
      write_row(out, row);
    }
  });
}

}  // namespace

void write_scenario_outputs(const Scenario& sc, const std::vector<RunResult>& runs,
                            const std::filesystem::path& dir) {
  if (runs.size() != sc.runs.size()) throw InvalidArgument("one result per scenario run expected");
  std::filesystem::create_directories(dir);
  Json meta{{"scenario", sc.name}, {"description", sc.description}};
  if (!sc.note.empty()) meta["note"] = sc.note;
  Json list = Json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    list.push_back({{"label", sc.runs[k].label},
                    {"max_crack_opening", runs[k].max_crack_opening},
                    {"validation_passed", runs[k].validation.passed()}});
  }
  meta["runs"] = std::move(list);

  const std::vector<std::string> stress{"sigma_n_plus_0", "sigma_n_minus"};
  const std::vector<std::string> shear{"tau_n_plus_0", "tau_n_minus"};
  const std::vector<std::string> ut{"ut_prime_plus_0", "ut_prime_minus"};
  const std::vector<std::string> un{"un_prime_plus_0", "un_prime_minus"};
  if (sc.name == "fig1") {
    combined_csv(dir / "g0_prime.csv", runs, sc, 0, {"re_g0_prime", "im_g0_prime"});
    Json conv = Json::array();
    for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
      const auto [re, im] =
          g0_curve_difference(runs[k].solution.densities, runs.back().solution.densities);
      conv.push_back({{"label", sc.runs[k].label}, {"reference", sc.runs.back().label},
                      {"re_g0_prime", re}, {"im_g0_prime", im}});
    }
    meta["convergence"] = std::move(conv);
  } else if (sc.name == "fig2") {
    combined_csv(dir / "crack_sigma_n.csv", runs, sc, 0, stress);
    combined_csv(dir / "crack_tau_n.csv", runs, sc, 0, shear);
    combined_csv(dir / "interface_sigma_n.csv", runs, sc, 1, stress);
    combined_csv(dir / "interface_tau_n.csv", runs, sc, 1, shear);
  } else if (sc.name == "fig3") {
    combined_csv(dir / "crack_ut_prime.csv", runs, sc, 0, ut);
    combined_csv(dir / "crack_un_prime.csv", runs, sc, 0, un);
    combined_csv(dir / "interface_ut_prime.csv", runs, sc, 1, ut);
    combined_csv(dir / "interface_un_prime.csv", runs, sc, 1, un);
  } else if (sc.name == "fig4") {
    std::vector<std::string> cols = ut;
    cols.insert(cols.end(), un.begin(), un.end());
    combined_csv(dir / "crack_displacement_derivatives.csv", runs, sc, 0, cols);
  } else if (sc.name == "fig5") {
    for (std::size_t k = 0; k < runs.size(); ++k) {
      write_stream(dir / ("deformed_" + sc.runs[k].label + ".csv"),
                   [&](std::ostream& o) { write_deformed_csv(o, runs[k]); });
    }
  } else if (sc.name == "fig5a") {
    combined_csv(dir / "interface_stresses.csv", runs, sc, 1, {"sigma_n_plus_0", "tau_n_plus_0"});
  } else if (sc.name == "fig6") {
    write_stream(dir / "max_crack_opening.csv", [&](std::ostream& out) {
      write_header(out, {"alpha_rad", "gamma0", "max_crack_opening"});
      for (const RunResult& r : runs) {
        write_row(out, {r.config.load.alpha, r.config.surface.gamma_plus, r.max_crack_opening});
      }
    });
  }
  write_file(dir / "scenario.json", meta.dump(2) + "\n");
}

}  // namespace icrack

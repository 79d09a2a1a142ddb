#include "icrack/config.hpp"

#include "icrack/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace icrack {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"run", {"name"}},
      {"contour",
       {"shape", "radius", "semi_axis_a", "semi_axis_b", "table_file", "crack_start_rad",
        "crack_end_rad"}},
      {"matrix", {"mu_gpa", "nu", "plane"}},
      {"inclusion", {"mu_gpa", "nu", "plane"}},
      {"surface_tension", {"gamma_plus", "gamma_minus", "gamma_interface"}},
      {"load", {"sigma1_mpa", "sigma2_mpa", "alpha_rad"}},
      {"tractions",
       {"kind", "pressure_mpa", "f1_re_mpa", "f1_im_mpa", "f2_re_mpa", "f2_im_mpa",
        "table_file"}},
      {"numerics",
       {"order", "oversampling", "tip_inset", "rank_tolerance", "zero_mode", "refinement_steps",
        "exact_side_conditions", "single_valuedness_rows", "nodes_per_panel", "panels_per_arc",
        "adaptive", "adaptive_tolerance", "max_doublings"}},
      {"output", {"directory", "deformation_scale", "samples"}},
  };
  return s;
}

// Typed access to one section; every read names the key in its error message.
class Section {
public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

  std::string text(const std::string& key, std::string fallback) const {
    return has(key) ? tree_->get<std::string>(key) : fallback;
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const std::string v = trim(tree_->get<std::string>(key));
    double out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(key, "expected a finite number, got '" + v + "'");
    }
    return out;
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string v = trim(tree_->get<std::string>(key));
    int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      fail(key, "expected an integer, got '" + v + "'");
    }
    return out;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = trim(tree_->get<std::string>(key));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + what);
  }

  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  }

private:
  const pt::ptree* tree_;
  std::string name_;
};

Section section(const pt::ptree& root, const std::string& name) {
  const auto it = root.find(name);
  return {it == root.not_found() ? nullptr : &it->second, name};
}

PlaneMode parse_plane(const Section& s) {
  const std::string v = s.text("plane", "stress");
  if (v == "stress") return PlaneMode::stress;
  if (v == "strain") return PlaneMode::strain;
  s.fail("plane", "expected stress or strain, got '" + v + "'");
}

Material parse_material(const Section& s, const Material& fallback) {
  return {s.number("mu_gpa", fallback.shear_modulus), s.number("nu", fallback.poisson),
          parse_plane(s)};
}

std::filesystem::path resolve(const std::string& file, const std::filesystem::path& base) {
  if (file.empty()) return {};
  const std::filesystem::path p(file);
  return p.is_absolute() || base.empty() ? p : base / p;
}

// Whitespace or comma separated numeric rows; '#' starts a comment.
std::vector<std::vector<double>> read_table(const std::filesystem::path& path, std::size_t cols) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(line);
    std::vector<double> row;
    double v{};
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (row.size() != cols || !ls.eof()) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected " +
                        std::to_string(cols) + " numbers");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string zero_mode_name(ZeroModeConstraint m) {
  return m == ZeroModeConstraint::eliminate ? "eliminate" : "residual_rows";
}

}  // namespace

Contour ContourSpec::build() const {
  if (shape == "circle") return circular_contour(radius, crack_start_rad, crack_end_rad);
  if (shape == "ellipse") {
    return elliptic_contour(semi_axis_a, semi_axis_b, crack_start_rad, crack_end_rad);
  }
  if (shape == "table") {
    std::vector<Complex> pts;
    for (const auto& r : read_table(table_file, 2)) pts.emplace_back(r[0], r[1]);
    return sampled_contour(pts, crack_start_rad, crack_end_rad);
  }
  throw ConfigError("[contour] shape: expected circle, ellipse or table, got '" + shape + "'");
}

CrackTractions TractionSpec::build() const {
  if (kind == "zero") return CrackTractions::zero();
  if (kind == "pressure") return CrackTractions::pressure(pressure_mpa);
  if (kind == "constant") return CrackTractions::constant(f1_mpa, f2_mpa);
  if (kind == "table") {
    std::vector<double> s;
    std::vector<Complex> f1, f2;
    for (const auto& r : read_table(table_file, 5)) {
      s.push_back(r[0]);
      f1.emplace_back(r[1], r[2]);
      f2.emplace_back(r[3], r[4]);
    }
    return CrackTractions::table(std::move(s), std::move(f1), std::move(f2));
  }
  throw ConfigError("[tractions] kind: expected zero, pressure, constant or table, got '" + kind +
                    "'");
}

ProblemSetup RunConfig::problem() const {
  try {
    ProblemSetup p{contour.build(), matrix, inclusion, surface, load, tractions.build()};
    p.validate();
    numerics.validate();
    return p;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

std::string RunConfig::to_ini() const {
  std::ostringstream os;
  auto material = [&](const char* name, const Material& m) {
    os << "\n[" << name << "]\nmu_gpa = " << format(m.shear_modulus)
       << "\nnu = " << format(m.poisson)
       << "\nplane = " << (m.mode == PlaneMode::stress ? "stress" : "strain") << "\n";
  };
  os << "[run]\nname = " << name << "\n";
  os << "\n[contour]\nshape = " << contour.shape << "\nradius = " << format(contour.radius)
     << "\nsemi_axis_a = " << format(contour.semi_axis_a)
     << "\nsemi_axis_b = " << format(contour.semi_axis_b);
  if (!contour.table_file.empty()) os << "\ntable_file = " << contour.table_file.string();
  os << "\ncrack_start_rad = " << format(contour.crack_start_rad)
     << "\ncrack_end_rad = " << format(contour.crack_end_rad) << "\n";
  material("matrix", matrix);
  material("inclusion", inclusion);
  os << "\n[surface_tension]\ngamma_plus = " << format(surface.gamma_plus)
     << "\ngamma_minus = " << format(surface.gamma_minus)
     << "\ngamma_interface = " << format(surface.gamma_interface) << "\n";
  os << "\n[load]\nsigma1_mpa = " << format(load.sigma1) << "\nsigma2_mpa = " << format(load.sigma2)
     << "\nalpha_rad = " << format(load.alpha) << "\n";
  os << "\n[tractions]\nkind = " << tractions.kind
     << "\npressure_mpa = " << format(tractions.pressure_mpa)
     << "\nf1_re_mpa = " << format(tractions.f1_mpa.real())
     << "\nf1_im_mpa = " << format(tractions.f1_mpa.imag())
     << "\nf2_re_mpa = " << format(tractions.f2_mpa.real())
     << "\nf2_im_mpa = " << format(tractions.f2_mpa.imag());
  if (!tractions.table_file.empty()) os << "\ntable_file = " << tractions.table_file.string();
  os << "\n";
  const SolverOptions& n = numerics;
  os << "\n[numerics]\norder = " << n.order << "\noversampling = " << n.oversampling;
  if (n.tip_inset) os << "\ntip_inset = " << format(*n.tip_inset);
  os << "\nrank_tolerance = " << format(n.rank_tolerance)
     << "\nzero_mode = " << zero_mode_name(n.zero_mode)
     << "\nrefinement_steps = " << n.refinement_steps
     << "\nexact_side_conditions = " << (n.exact_side_conditions ? "true" : "false")
     << "\nsingle_valuedness_rows = " << (n.single_valuedness_rows ? "true" : "false")
     << "\nnodes_per_panel = " << n.quadrature.nodes_per_panel
     << "\npanels_per_arc = " << n.quadrature.panels_per_arc
     << "\nadaptive = " << (n.quadrature.adaptive ? "true" : "false")
     << "\nadaptive_tolerance = " << format(n.quadrature.adaptive_tolerance)
     << "\nmax_doublings = " << n.quadrature.max_doublings << "\n";
  os << "\n[output]\n";
  if (!output.directory.empty()) os << "directory = " << output.directory.string() << "\n";
  os << "deformation_scale = " << format(output.deformation_scale)
     << "\nsamples = " << output.samples << "\n";
  return os.str();
}

RunConfig parse_config(std::istream& in, const std::string& source_name,
                       const std::filesystem::path& base_dir) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [sec, body] : root) {
    const auto it = schema().find(sec);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError(source_name + ": key '" + sec + "' outside a section");
      throw ConfigError(source_name + ": unknown section [" + sec + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError(source_name + ": unknown key '" + key + "' in [" + sec + "]");
      }
    }
  }

  RunConfig c;
  c.name = section(root, "run").text("name", c.name);

  const Section ct = section(root, "contour");
  c.contour.shape = ct.text("shape", c.contour.shape);
  c.contour.radius = ct.number("radius", c.contour.radius);
  c.contour.semi_axis_a = ct.number("semi_axis_a", c.contour.semi_axis_a);
  c.contour.semi_axis_b = ct.number("semi_axis_b", c.contour.semi_axis_b);
  c.contour.table_file = resolve(ct.text("table_file", ""), base_dir);
  c.contour.crack_start_rad = ct.number("crack_start_rad", c.contour.crack_start_rad);
  c.contour.crack_end_rad = ct.number("crack_end_rad", c.contour.crack_end_rad);

  c.matrix = parse_material(section(root, "matrix"), c.matrix);
  c.inclusion = parse_material(section(root, "inclusion"), c.inclusion);

  const Section st = section(root, "surface_tension");
  c.surface.gamma_plus = st.number("gamma_plus", c.surface.gamma_plus);
  c.surface.gamma_minus = st.number("gamma_minus", c.surface.gamma_minus);
  c.surface.gamma_interface = st.number("gamma_interface", c.surface.gamma_interface);

  const Section ld = section(root, "load");
  c.load.sigma1 = ld.number("sigma1_mpa", c.load.sigma1);
  c.load.sigma2 = ld.number("sigma2_mpa", c.load.sigma2);
  c.load.alpha = ld.number("alpha_rad", c.load.alpha);

  const Section tr = section(root, "tractions");
  c.tractions.kind = tr.text("kind", c.tractions.kind);
  c.tractions.pressure_mpa = tr.number("pressure_mpa", 0.0);
  c.tractions.f1_mpa = {tr.number("f1_re_mpa", 0.0), tr.number("f1_im_mpa", 0.0)};
  c.tractions.f2_mpa = {tr.number("f2_re_mpa", 0.0), tr.number("f2_im_mpa", 0.0)};
  c.tractions.table_file = resolve(tr.text("table_file", ""), base_dir);

  const Section nm = section(root, "numerics");
  SolverOptions& n = c.numerics;
  n.order = nm.integer("order", n.order);
  n.oversampling = nm.integer("oversampling", n.oversampling);
  if (nm.has("tip_inset")) n.tip_inset = nm.number("tip_inset", 0.0);
  n.rank_tolerance = nm.number("rank_tolerance", n.rank_tolerance);
  const std::string zm = nm.text("zero_mode", zero_mode_name(n.zero_mode));
  if (zm == "residual_rows") {
    n.zero_mode = ZeroModeConstraint::residual_rows;
  } else if (zm == "eliminate") {
    n.zero_mode = ZeroModeConstraint::eliminate;
  } else {
    nm.fail("zero_mode", "expected residual_rows or eliminate, got '" + zm + "'");
  }
  n.refinement_steps = nm.integer("refinement_steps", n.refinement_steps);
  n.exact_side_conditions = nm.flag("exact_side_conditions", n.exact_side_conditions);
  n.single_valuedness_rows = nm.flag("single_valuedness_rows", n.single_valuedness_rows);
  n.quadrature.nodes_per_panel = nm.integer("nodes_per_panel", n.quadrature.nodes_per_panel);
  n.quadrature.panels_per_arc = nm.integer("panels_per_arc", n.quadrature.panels_per_arc);
  n.quadrature.adaptive = nm.flag("adaptive", n.quadrature.adaptive);
  n.quadrature.adaptive_tolerance =
      nm.number("adaptive_tolerance", n.quadrature.adaptive_tolerance);
  n.quadrature.max_doublings = nm.integer("max_doublings", n.quadrature.max_doublings);

  const Section out = section(root, "output");
  c.output.directory = resolve(out.text("directory", ""), base_dir);
  c.output.deformation_scale = out.number("deformation_scale", c.output.deformation_scale);
  c.output.samples = out.integer("samples", c.output.samples);
  if (c.output.samples < 2) out.fail("samples", "must be at least 2");

  c.problem();  // validates every invariant
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  return parse_config(in, path.string(), path.parent_path());
}

SolverOptions preset_numerics() { return SolverOptions{}; }

std::vector<std::string> scenario_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig5a", "fig6"};
}

namespace {

constexpr double kPi = std::numbers::pi;

RunConfig base(const std::string& name) {
  RunConfig c;
  c.name = name;
  c.numerics = preset_numerics();
  return c;
}

std::string label(const std::string& key, double v) {
  std::ostringstream os;
  os << key << "_" << v;
  return os.str();
}

}  // namespace

Scenario make_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "fig1") {
    s.description = "Re g0' and Im g0' on the crack for N = 16, 24, 30";
    for (int n : {16, 24, 30}) {
      RunConfig c = base(name);
      c.numerics.order = n;
      s.runs.push_back({"N_" + std::to_string(n), c});
    }
  } else if (name == "fig2" || name == "fig3") {
    s.description = name == "fig2" ? "crack and interface stresses for gamma = 0.1, 0.5, 1.0"
                                   : "displacement derivatives for gamma = 0.1, 0.5, 1.0";
    for (double g : {0.1, 0.5, 1.0}) {
      RunConfig c = base(name);
      c.surface = {g, g, 0.0};
      s.runs.push_back({label("gamma", g), c});
    }
  } else if (name == "fig4") {
    s.description = "identical phases, surface tension on the crack with and without interface "
                    "tension";
    s.note = "external reference curves are not regenerated; the case without any surface "
             "tension lies outside the model (gamma+ and gamma- must be positive)";
    for (double gi : {0.05, 0.0}) {
      RunConfig c = base(name);
      c.matrix = {40.0, 0.25};
      c.inclusion = {40.0, 0.25};
      c.surface = {0.01, 0.01, gi};
      s.runs.push_back({label("gamma_interface", gi), c});
    }
  } else if (name == "fig5") {
    s.description = "deformed boundary for horizontal and vertical stretching, scale 2";
    for (double a : {0.0, kPi / 2.0}) {
      RunConfig c = base(name);
      c.surface = {0.1, 0.1, 0.05};
      c.load.alpha = a;
      c.output.deformation_scale = 2.0;
      s.runs.push_back({a == 0.0 ? "horizontal" : "vertical", c});
    }
  } else if (name == "fig5a") {
    s.description = "glass inclusion in epoxy, crack over polar angles [-pi/6, pi/6]";
    s.note = "external reference curves are not regenerated";
    RunConfig c = base(name);
    c.contour.crack_start_rad = -kPi / 6.0;
    c.contour.crack_end_rad = kPi / 6.0;
    c.inclusion = {44.2, 0.22};
    c.matrix = {2.39, 0.35};
    c.surface = {1e-4, 1e-4, 0.0};
    c.load.alpha = kPi / 6.0;
    s.runs.push_back({"glass_epoxy", c});
  } else if (name == "fig6") {
    s.description = "maximal crack opening against gamma0 for alpha = 0, pi/4, pi/2";
    const std::vector<std::pair<std::string, double>> angles{
        {"0", 0.0}, {"pi_4", kPi / 4.0}, {"pi_2", kPi / 2.0}};
    for (const auto& [tag, a] : angles) {
      for (double g : {0.1, 0.5, 1.0}) {
        RunConfig c = base(name);
        c.surface = {g, g, 0.0};
        c.load.alpha = a;
        s.runs.push_back({"alpha_" + tag + "_" + label("gamma0", g), c});
      }
    }
  } else {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }
  for (ScenarioRun& run : s.runs) run.config.name = name + "_" + run.label;
  return s;
}

}  // namespace icrack

#include "sgfem/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "sgfem/io.hpp"

namespace sgfem {

using nlohmann::json;

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string msg = "configuration invalid:";
  for (const auto& p : problems) msg += "\n  - " + p;
  return msg;
}

// Per-material raw inputs; realized parameters derive from these plus the
// random input at a sample point.
struct ConcreteConfig {
  double f_c_prime = 0;
  double eps_c1 = 0;
  double eps_c_lim = 0;
  double nu = 0.2;
  double alpha_E = 0.8;
  double E_c0 = 21500.0;
  std::optional<double> f_ctm;    // default 0.3*f_c_prime^(2/3)
  std::optional<double> eps_cr;   // default: strain at the tensile peak
  std::optional<double> eps_tu;   // default: 10*f_ctm/E_ci
  std::optional<double> beta_constant;
};

struct SteelConfig {
  double E_s = 0;
  double f_y = 0;
  double E_sh = 0;
  double eps_su = 0;
  double rho_x = 0;
  double rho_y = 0;
};

struct MaterialConfig {
  bool linear = false;
  double E = 0, nu = 0;            // linear
  ConcreteConfig concrete;         // reinforced concrete
  SteelConfig steel;
};

constexpr double kPeakTensileStrain = 1.5e-4;

ConcreteParams build_concrete(const ConcreteConfig& c, double alpha,
                              double f_c_prime) {
  ConcreteParams p;
  p.f_c_prime = f_c_prime;
  p.f_cm = f_c_prime + 8.0;
  p.eps_c1 = c.eps_c1;
  p.eps_c_lim = c.eps_c_lim;
  p.nu_c = c.nu;
  p.E_c1 = p.f_cm / p.eps_c1;
  p.E_ci = c.E_c0 * alpha * std::cbrt(p.f_cm / 10.0);
  p.f_ctm = c.f_ctm ? *c.f_ctm : 0.3 * std::pow(f_c_prime, 2.0 / 3.0);
  p.eps_cr = c.eps_cr ? *c.eps_cr : kPeakTensileStrain;
  p.eps_tu = c.eps_tu ? *c.eps_tu : 10.0 * p.f_ctm / p.E_ci;
  if (c.beta_constant) p.shear.constant = *c.beta_constant;
  p.validate();
  return p;
}

SteelParams build_steel(const SteelConfig& s) {
  SteelParams p;
  p.E_s = s.E_s;
  p.f_y = s.f_y;
  p.E_sh = s.E_sh;
  p.eps_sy = s.E_s > 0 ? s.f_y / s.E_s : 0.0;
  p.eps_su = s.eps_su;
  p.rho_x = s.rho_x;
  p.rho_y = s.rho_y;
  p.validate();
  return p;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  RunConfig parse() {
    json root;
    try {
      root = json::parse(text_);
    } catch (const std::exception& e) {
      problems_.push_back(std::string("not valid JSON: ") + e.what());
      throw ConfigError(std::move(problems_));
    }
    RunConfig cfg;
    cfg.config_text = text_;

    check_keys(root, "", {"mesh", "materials", "random_input", "load_program",
                          "methods", "gpc", "quadrature", "solver", "mc",
                          "observables", "statistics", "output"});

    std::vector<MaterialConfig> materials = parse_materials(root);
    parse_mesh(root, cfg, materials);
    parse_random_input(root, cfg, materials);
    parse_load_program(root, cfg);
    parse_methods(root, cfg);
    parse_gpc(root, cfg);
    parse_solver(root, cfg);
    parse_mc(root, cfg);
    parse_observables(root, cfg);
    parse_statistics(root, cfg);
    if (root.contains("output")) {
      const json& out = root["output"];
      check_keys(out, "output", {"dir"});
      cfg.output_dir = str(out, "output", "dir", "out");
    }

    if (!problems_.empty()) throw ConfigError(std::move(problems_));

    finalize_model(cfg, materials);
    if (!problems_.empty()) throw ConfigError(std::move(problems_));
    return cfg;
  }

 private:
  void problem(const std::string& msg) { problems_.push_back(msg); }

  void check_keys(const json& obj, const std::string& where,
                  std::set<std::string> allowed) {
    if (!obj.is_object()) {
      problem(where.empty() ? "top level must be an object"
                            : where + " must be an object");
      return;
    }
    for (const auto& item : obj.items())
      if (!allowed.count(item.key()))
        problem((where.empty() ? "top level" : where) + ": unknown key '" +
                item.key() + "'");
  }

  bool has(const json& obj, const char* key) const {
    return obj.is_object() && obj.contains(key);
  }

  double num(const json& obj, const std::string& where, const char* key,
             std::optional<double> fallback = std::nullopt) {
    if (!has(obj, key)) {
      if (fallback) return *fallback;
      problem(where + ": missing required field '" + std::string(key) + "'");
      return 0.0;
    }
    if (!obj[key].is_number()) {
      problem(where + ": field '" + std::string(key) + "' must be a number");
      return 0.0;
    }
    return obj[key].get<double>();
  }

  int integer(const json& obj, const std::string& where, const char* key,
              std::optional<int> fallback = std::nullopt) {
    if (!has(obj, key)) {
      if (fallback) return *fallback;
      problem(where + ": missing required field '" + std::string(key) + "'");
      return 0;
    }
    if (!obj[key].is_number_integer()) {
      problem(where + ": field '" + std::string(key) + "' must be an integer");
      return 0;
    }
    return obj[key].get<int>();
  }

  std::string str(const json& obj, const std::string& where, const char* key,
                  std::optional<std::string> fallback = std::nullopt) {
    if (!has(obj, key)) {
      if (fallback) return *fallback;
      problem(where + ": missing required field '" + std::string(key) + "'");
      return "";
    }
    if (!obj[key].is_string()) {
      problem(where + ": field '" + std::string(key) + "' must be a string");
      return "";
    }
    return obj[key].get<std::string>();
  }

  std::vector<MaterialConfig> parse_materials(const json& root) {
    std::vector<MaterialConfig> out;
    if (!has(root, "materials")) {
      problem("missing required block 'materials'");
      return out;
    }
    const json& arr = root["materials"];
    if (!arr.is_array() || arr.empty()) {
      problem("materials: must be a nonempty array");
      return out;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "materials[" + std::to_string(i + 1) + "]";
      const json& m = arr[i];
      MaterialConfig mc;
      const std::string type = str(m, where, "type");
      if (type == "linear_elastic") {
        check_keys(m, where, {"type", "E", "nu"});
        mc.linear = true;
        mc.E = num(m, where, "E");
        mc.nu = num(m, where, "nu");
        if (mc.E <= 0) problem(where + ": E must be positive");
      } else if (type == "reinforced_concrete") {
        check_keys(m, where, {"type", "concrete", "steel"});
        if (!has(m, "concrete")) {
          problem(where + ": missing 'concrete' block");
        } else {
          const json& c = m["concrete"];
          const std::string cw = where + ".concrete";
          check_keys(c, cw,
                     {"f_c_prime", "eps_c1", "eps_c_lim", "nu", "alpha_E",
                      "E_c0", "f_ctm", "eps_cr", "eps_tu", "beta_constant"});
          mc.concrete.f_c_prime = num(c, cw, "f_c_prime");
          mc.concrete.eps_c1 = num(c, cw, "eps_c1");
          mc.concrete.eps_c_lim = num(c, cw, "eps_c_lim");
          mc.concrete.nu = num(c, cw, "nu", 0.2);
          mc.concrete.alpha_E = num(c, cw, "alpha_E", 0.8);
          mc.concrete.E_c0 = num(c, cw, "E_c0", 21500.0);
          if (has(c, "f_ctm")) mc.concrete.f_ctm = num(c, cw, "f_ctm");
          if (has(c, "eps_cr")) mc.concrete.eps_cr = num(c, cw, "eps_cr");
          if (has(c, "eps_tu")) mc.concrete.eps_tu = num(c, cw, "eps_tu");
          if (has(c, "beta_constant"))
            mc.concrete.beta_constant = num(c, cw, "beta_constant");
        }
        if (!has(m, "steel")) {
          problem(where + ": missing 'steel' block");
        } else {
          const json& s = m["steel"];
          const std::string sw = where + ".steel";
          check_keys(s, sw, {"E_s", "f_y", "E_sh", "eps_su", "rho_x", "rho_y"});
          mc.steel.E_s = num(s, sw, "E_s");
          mc.steel.f_y = num(s, sw, "f_y");
          mc.steel.E_sh = num(s, sw, "E_sh");
          mc.steel.eps_su = num(s, sw, "eps_su");
          mc.steel.rho_x = num(s, sw, "rho_x");
          mc.steel.rho_y = num(s, sw, "rho_y");
        }
      } else if (!type.empty()) {
        problem(where + ": unknown material type '" + type + "'");
      }
      out.push_back(mc);
    }
    return out;
  }

  void parse_mesh(const json& root, RunConfig& cfg,
                  const std::vector<MaterialConfig>& materials) {
    if (!has(root, "mesh")) {
      problem("missing required block 'mesh'");
      return;
    }
    const json& m = root["mesh"];
    check_keys(m, "mesh",
               {"nodes", "elements", "thickness", "material", "rows",
                "constraints", "loads"});
    Mesh& mesh = cfg.model.mesh;

    if (!has(m, "nodes") || !m["nodes"].is_array() || m["nodes"].size() < 4) {
      problem("mesh.nodes: must be an array of at least 4 [x,y] pairs");
      return;
    }
    const auto& nodes = m["nodes"];
    mesh.nodes.resize(static_cast<Eigen::Index>(nodes.size()), 2);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_array() || nodes[i].size() != 2 ||
          !nodes[i][0].is_number() || !nodes[i][1].is_number()) {
        problem("mesh.nodes[" + std::to_string(i + 1) +
                "]: must be [x, y] numbers");
        return;
      }
      mesh.nodes(static_cast<Eigen::Index>(i), 0) = nodes[i][0].get<double>();
      mesh.nodes(static_cast<Eigen::Index>(i), 1) = nodes[i][1].get<double>();
    }

    if (!has(m, "elements") || !m["elements"].is_array() ||
        m["elements"].empty()) {
      problem("mesh.elements: must be a nonempty array of 4-node tuples");
      return;
    }
    const auto& elems = m["elements"];
    const int n_nodes = mesh.n_nodes();
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (!elems[e].is_array() || elems[e].size() != 4) {
        problem("mesh.elements[" + std::to_string(e + 1) +
                "]: must have 4 node ids");
        return;
      }
      std::array<int, 4> conn;
      for (int a = 0; a < 4; ++a) {
        if (!elems[e][a].is_number_integer()) {
          problem("mesh.elements[" + std::to_string(e + 1) +
                  "]: node ids must be integers");
          return;
        }
        const int id = elems[e][a].get<int>();
        if (id < 1 || id > n_nodes) {
          problem("mesh.elements[" + std::to_string(e + 1) + "]: node id " +
                  std::to_string(id) + " out of range");
          return;
        }
        conn[a] = id - 1;
      }
      mesh.elements.push_back(conn);
    }
    const int n_elem = mesh.n_elements();

    // thickness: scalar or per element
    if (!has(m, "thickness")) {
      problem("mesh.thickness: required (scalar mm or per-element array)");
    } else if (m["thickness"].is_number()) {
      mesh.thickness.assign(n_elem, m["thickness"].get<double>());
    } else if (m["thickness"].is_array() &&
               m["thickness"].size() == static_cast<std::size_t>(n_elem)) {
      for (const auto& t : m["thickness"])
        mesh.thickness.push_back(t.get<double>());
    } else {
      problem("mesh.thickness: must be a number or an array of length " +
              std::to_string(n_elem));
    }
    for (double t : mesh.thickness)
      if (t <= 0) {
        problem("mesh.thickness: values must be positive");
        break;
      }

    // material assignment: scalar or per element, 1-based config ids
    element_material_.assign(n_elem, 0);
    if (!has(m, "material")) {
      if (materials.size() != 1)
        problem("mesh.material: required when several materials are defined");
    } else if (m["material"].is_number_integer()) {
      element_material_.assign(n_elem, m["material"].get<int>() - 1);
    } else if (m["material"].is_array() &&
               m["material"].size() == static_cast<std::size_t>(n_elem)) {
      for (std::size_t e = 0; e < m["material"].size(); ++e)
        element_material_[e] = m["material"][e].get<int>() - 1;
    } else {
      problem("mesh.material: must be an id or an array of length " +
              std::to_string(n_elem));
    }
    for (int id : element_material_)
      if (id < 0 || id >= static_cast<int>(materials.size())) {
        problem("mesh.material: id out of range");
        break;
      }

    if (has(m, "rows")) {
      const json& rows = m["rows"];
      if (rows.is_string() && rows.get<std::string>() == "auto") {
        // derived in finalize()
      } else if (rows.is_array() &&
                 rows.size() == static_cast<std::size_t>(n_elem)) {
        for (const auto& r : rows) mesh.row_index.push_back(r.get<int>());
      } else {
        problem("mesh.rows: must be \"auto\" or an array of length " +
                std::to_string(n_elem));
      }
    }

    if (has(m, "constraints")) {
      for (const auto& c : m["constraints"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
            !c[1].is_string()) {
          problem("mesh.constraints: entries must be [node, \"x\"|\"y\"|\"xy\"]");
          break;
        }
        const int node = c[0].get<int>();
        const std::string comp = c[1].get<std::string>();
        if (node < 1 || node > n_nodes) {
          problem("mesh.constraints: node " + std::to_string(node) +
                  " out of range");
          continue;
        }
        if (comp == "x" || comp == "xy")
          mesh.constrained_dofs.push_back(2 * (node - 1));
        if (comp == "y" || comp == "xy")
          mesh.constrained_dofs.push_back(2 * (node - 1) + 1);
        if (comp != "x" && comp != "y" && comp != "xy")
          problem("mesh.constraints: component must be x, y or xy");
      }
    } else {
      problem("mesh.constraints: required");
    }

    cfg.model.program.load_pattern = Eigen::VectorXd::Zero(2 * n_nodes);
    if (has(m, "loads")) {
      for (const auto& l : m["loads"]) {
        if (!l.is_array() || l.size() != 3 || !l[0].is_number_integer() ||
            !l[1].is_string() || !l[2].is_number()) {
          problem("mesh.loads: entries must be [node, \"x\"|\"y\", value]");
          break;
        }
        const int node = l[0].get<int>();
        const std::string comp = l[1].get<std::string>();
        if (node < 1 || node > n_nodes) {
          problem("mesh.loads: node " + std::to_string(node) + " out of range");
          continue;
        }
        if (comp != "x" && comp != "y") {
          problem("mesh.loads: component must be x or y");
          continue;
        }
        const int dof = 2 * (node - 1) + (comp == "y" ? 1 : 0);
        cfg.model.program.load_pattern[dof] += l[2].get<double>();
      }
    } else {
      problem("mesh.loads: required");
    }
  }

  void parse_random_input(const json& root, RunConfig& cfg,
                          const std::vector<MaterialConfig>& materials) {
    if (!has(root, "random_input")) return;
    const json& r = root["random_input"];
    check_keys(r, "random_input",
               {"target", "mean", "cov", "E_c0", "row_profile"});
    RandomInputSpec spec;
    const std::string target = str(r, "random_input", "target");
    if (target == "alpha_E") {
      spec.target = RandomTarget::AlphaE;
    } else if (target == "f_c_prime") {
      spec.target = RandomTarget::FcPrime;
    } else if (!target.empty()) {
      problem("random_input.target: must be 'alpha_E' or 'f_c_prime'");
    }
    spec.mean = num(r, "random_input", "mean");
    spec.cov = num(r, "random_input", "cov");
    spec.E_c0 = num(r, "random_input", "E_c0", 21500.0);
    if (spec.cov < 0) problem("random_input.cov: must be nonnegative");
    if (has(r, "row_profile")) {
      if (spec.target != RandomTarget::FcPrime)
        problem("random_input.row_profile: only valid for target f_c_prime");
      const json& prof = r["row_profile"];
      check_keys(prof, "random_input.row_profile",
                 {"bottom_mean", "top_mean"});
      RowProfile rp;
      rp.bottom_mean = num(prof, "random_input.row_profile", "bottom_mean");
      rp.top_mean = num(prof, "random_input.row_profile", "top_mean");
      spec.profile = rp;
    }
    bool any_concrete = std::any_of(materials.begin(), materials.end(),
                                    [](const auto& m) { return !m.linear; });
    if (!any_concrete)
      problem("random_input: requires at least one reinforced_concrete material");
    cfg.random_input = spec;
  }

  void parse_load_program(const json& root, RunConfig& cfg) {
    if (!has(root, "load_program")) {
      problem("missing required block 'load_program'");
      return;
    }
    const json& lp = root["load_program"];
    check_keys(lp, "load_program",
               {"increments", "scale", "tol_u", "max_steps"});
    const int n = integer(lp, "load_program", "increments");
    if (n < 1) {
      problem("load_program.increments: must be >= 1");
      return;
    }
    if (!has(lp, "scale") ||
        (lp["scale"].is_string() && lp["scale"].get<std::string>() == "equal")) {
      cfg.model.program.scale_factors = LoadProgram::equal_scales(n);
    } else if (lp["scale"].is_array() &&
               lp["scale"].size() == static_cast<std::size_t>(n)) {
      for (const auto& s : lp["scale"])
        cfg.model.program.scale_factors.push_back(s.get<double>());
    } else {
      problem("load_program.scale: must be \"equal\" or an array of length " +
              std::to_string(n));
    }
    cfg.model.program.tol_u = num(lp, "load_program", "tol_u", 1e-6);
    cfg.model.program.max_steps = integer(lp, "load_program", "max_steps", 60);
    if (cfg.model.program.tol_u <= 0)
      problem("load_program.tol_u: must be positive");
  }

  void parse_methods(const json& root, RunConfig& cfg) {
    if (!has(root, "methods") || !root["methods"].is_array() ||
        root["methods"].empty()) {
      problem("methods: must be a nonempty array from {det, mc, sc, sg}");
      return;
    }
    std::set<std::string> requested;
    for (const auto& m : root["methods"]) {
      if (!m.is_string()) {
        problem("methods: entries must be strings");
        return;
      }
      const std::string name = m.get<std::string>();
      if (name != "det" && name != "mc" && name != "sc" && name != "sg") {
        problem("methods: unknown method '" + name + "'");
        continue;
      }
      requested.insert(name);
    }
    for (const char* name : {"det", "mc", "sc", "sg"})
      if (requested.count(name)) cfg.methods.push_back(name);
  }

  void parse_gpc(const json& root, RunConfig& cfg) {
    const bool spectral = has(root, "methods") && root["methods"].is_array() &&
                          std::any_of(root["methods"].begin(),
                                      root["methods"].end(), [](const json& m) {
                                        return m.is_string() &&
                                               (m == "sc" || m == "sg");
                                      });
    if (has(root, "gpc")) {
      const json& g = root["gpc"];
      check_keys(g, "gpc", {"degree"});
      cfg.gpc_degree = integer(g, "gpc", "degree");
      if (spectral && cfg.gpc_degree < 1)
        problem("gpc.degree: must be >= 1 for sc/sg");
    } else if (spectral) {
      problem("gpc: block required for sc/sg methods");
    }
    if (has(root, "quadrature")) {
      const json& q = root["quadrature"];
      check_keys(q, "quadrature", {"sparse_level"});
      cfg.sparse_level = integer(q, "quadrature", "sparse_level");
      if (cfg.sparse_level < 0) problem("quadrature.sparse_level: must be >= 0");
    } else if (spectral) {
      problem("quadrature.sparse_level: required for sc/sg methods");
    }
  }

  void parse_solver(const json& root, RunConfig& cfg) {
    if (!has(root, "solver")) return;
    const json& s = root["solver"];
    check_keys(s, "solver", {"preconditioner", "tol", "max_iter"});
    const std::string p = str(s, "solver", "preconditioner", "ahgs");
    if (p == "none")
      cfg.solver.preconditioner = SgPreconditionerKind::None;
    else if (p == "mb")
      cfg.solver.preconditioner = SgPreconditionerKind::MeanBased;
    else if (p == "ahgs")
      cfg.solver.preconditioner = SgPreconditionerKind::HierarchicalGs;
    else
      problem("solver.preconditioner: must be none, mb or ahgs");
    cfg.solver.tol = num(s, "solver", "tol", 1e-8);
    cfg.solver.max_iter = integer(s, "solver", "max_iter", 2000);
    if (cfg.solver.tol <= 0) problem("solver.tol: must be positive");
  }

  void parse_mc(const json& root, RunConfig& cfg) {
    if (!has(root, "mc")) return;
    const json& m = root["mc"];
    check_keys(m, "mc", {"samples", "seed"});
    cfg.mc.samples = integer(m, "mc", "samples", 10000);
    if (cfg.mc.samples < 1) problem("mc.samples: must be >= 1");
    if (has(m, "seed")) {
      if (!m["seed"].is_number_unsigned() && !m["seed"].is_number_integer())
        problem("mc.seed: must be an integer");
      else
        cfg.mc.seed = m["seed"].get<std::uint64_t>();
    }
  }

  void parse_observables(const json& root, RunConfig& cfg) {
    if (!has(root, "observables")) {
      problem("missing required block 'observables'");
      return;
    }
    const json& o = root["observables"];
    check_keys(o, "observables", {"dofs", "ect_probe_element"});
    if (has(o, "dofs")) {
      for (const auto& d : o["dofs"]) {
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() ||
            !d[1].is_string()) {
          problem("observables.dofs: entries must be [node, \"x\"|\"y\"]");
          break;
        }
        const int node = d[0].get<int>();
        const std::string comp = d[1].get<std::string>();
        if (comp != "x" && comp != "y") {
          problem("observables.dofs: component must be x or y");
          continue;
        }
        cfg.observables.dofs.push_back(2 * (node - 1) + (comp == "y" ? 1 : 0));
        cfg.observables.names.push_back("u_n" + std::to_string(node) + "_" +
                                        comp);
      }
    }
    if (has(o, "ect_probe_element")) {
      cfg.observables.ect_probe_element =
          integer(o, "observables", "ect_probe_element") - 1;
      cfg.observables.names.push_back(
          "ect_e" + std::to_string(*cfg.observables.ect_probe_element + 1));
    }
    if (cfg.observables.count() == 0)
      problem("observables: at least one dof or probe required");
  }

  void parse_statistics(const json& root, RunConfig& cfg) {
    if (!has(root, "statistics")) return;
    const json& s = root["statistics"];
    check_keys(s, "statistics",
               {"exceedance_multipliers", "pdf_increments", "pdf_samples"});
    if (has(s, "exceedance_multipliers")) {
      cfg.statistics.exceedance_multipliers.clear();
      for (const auto& k : s["exceedance_multipliers"])
        cfg.statistics.exceedance_multipliers.push_back(k.get<double>());
    }
    if (has(s, "pdf_increments"))
      for (const auto& k : s["pdf_increments"])
        cfg.statistics.pdf_increments.push_back(k.get<int>());
    cfg.statistics.pdf_samples = integer(s, "statistics", "pdf_samples", 100000);
    if (cfg.statistics.pdf_samples < 100)
      problem("statistics.pdf_samples: must be >= 100");
  }

  // Bind the realization closure and run structural mesh checks.
  void finalize_model(RunConfig& cfg, std::vector<MaterialConfig> materials) {
    Mesh& mesh = cfg.model.mesh;
    mesh.material_id.resize(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e) mesh.material_id[e] = e;
    try {
      mesh.finalize();
    } catch (const std::exception& e) {
      problem(e.what());
      return;
    }

    for (int dof : cfg.observables.dofs)
      if (dof < 0 || dof >= mesh.n_dof())
        problem("observables: dof out of range");
    if (cfg.observables.ect_probe_element &&
        (*cfg.observables.ect_probe_element < 0 ||
         *cfg.observables.ect_probe_element >= mesh.n_elements()))
      problem("observables.ect_probe_element: out of range");
    for (int inc : cfg.statistics.pdf_increments)
      if (inc < 1 || inc > cfg.model.program.n_increments())
        problem("statistics.pdf_increments: increment out of range");

    cfg.model.n_random = 1;
    const auto element_material = element_material_;
    const auto spec = cfg.random_input;
    const int n_rows = mesh.n_rows_of_elements();
    const std::vector<int> rows = mesh.row_index;

    cfg.model.realize = [materials = std::move(materials), element_material,
                         spec, rows,
                         n_rows](const Eigen::VectorXd& xi) -> MaterialTable {
      MaterialTable table;
      table.reserve(element_material.size());
      for (std::size_t e = 0; e < element_material.size(); ++e) {
        const MaterialConfig& mc = materials[element_material[e]];
        if (mc.linear) {
          table.push_back(LinearElastic{mc.E, mc.nu});
          continue;
        }
        double alpha = mc.concrete.alpha_E;
        double f_c_prime = mc.concrete.f_c_prime;
        if (spec) {
          if (spec->target == RandomTarget::AlphaE) {
            alpha = spec->realize(spec->mean, xi[0]);
          } else {
            const double mean_local = spec->row_mean(rows[e], n_rows);
            f_c_prime = spec->realize(mean_local, xi[0]);
          }
        }
        RcMaterial rc;
        rc.concrete = build_concrete(mc.concrete, alpha, f_c_prime);
        rc.steel = build_steel(mc.steel);
        table.push_back(rc);
      }
      return table;
    };

    // materials must realize cleanly at the support centre and endpoints
    for (double xi : {-1.0, 0.0, 1.0}) {
      try {
        cfg.model.realize(Eigen::VectorXd::Constant(1, xi));
      } catch (const std::exception& e) {
        problem("materials do not realize at xi=" + format_double(xi) + ": " +
                e.what());
        break;
      }
    }
  }

  const std::string& text_;
  std::vector<std::string> problems_;
  std::vector<int> element_material_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

bool RunConfig::has_method(const std::string& m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

RunConfig parse_config(const std::string& text) {
  return Parser(text).parse();
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path));
}

}  // namespace sgfem

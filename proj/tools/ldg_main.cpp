// Command-line entry point: time-dependent simulations, the convergence
// study, and mesh inspection, driven by a key-value config file.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldg/convergence.hpp"
#include "ldg/exprlang.hpp"
#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"
#include "ldg/system.hpp"
#include "ldg/vtkout.hpp"

namespace {

struct RunConfig {
  std::string mesh_source = "square";  // "square" or a .mesh file path
  double h_max = 0.125;
  int p = 2;
  double t_end = 1.0;
  int num_steps = 1;
  double eta = 1.0;
  bool stationary = false;
  std::set<int> dirichlet_ids, neumann_ids;
  std::map<std::string, std::string> exprs;  // d, f, c_d, g_n, c0
  std::string output = "ldg";
  int output_every = 1;
  std::string builtin;  // optional builtin problem name
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::set<int> parse_id_list(const std::string& s) {
  std::set<int> ids;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) ids.insert(std::stoi(item));
  }
  return ids;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[' && s.back() == ']') continue;  // sections are cosmetic
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = unquote(trim(s.substr(eq + 1)));
    if (key == "mesh") cfg.mesh_source = val;
    else if (key == "h_max") cfg.h_max = std::stod(val);
    else if (key == "p") cfg.p = std::stoi(val);
    else if (key == "t_end") cfg.t_end = std::stod(val);
    else if (key == "num_steps") cfg.num_steps = std::stoi(val);
    else if (key == "eta") cfg.eta = std::stod(val);
    else if (key == "stationary") cfg.stationary = (val == "true" || val == "1");
    else if (key == "dirichlet") cfg.dirichlet_ids = parse_id_list(val);
    else if (key == "neumann") cfg.neumann_ids = parse_id_list(val);
    else if (key == "output") cfg.output = val;
    else if (key == "output_every") cfg.output_every = std::stoi(val);
    else if (key == "problem") cfg.builtin = val;
    else if (key == "d" || key == "f" || key == "c_d" || key == "g_n" || key == "c0")
      cfg.exprs[key] = val;
    else
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.p < 0 || cfg.p > 4)
    throw std::runtime_error("Polynomial order must be zero to four");
  if (cfg.h_max <= 0.0) throw std::runtime_error("h_max must be positive");
  if (cfg.num_steps < 1) throw std::runtime_error("num_steps must be at least 1");
  if (cfg.eta <= 0.0) throw std::runtime_error("eta must be positive");
}

ldg::Mesh build_mesh(const RunConfig& cfg) {
  if (cfg.mesh_source == "square") return ldg::domain_square(cfg.h_max);
  return ldg::read_mesh_medit(cfg.mesh_source);
}

// Builtin demonstration problem matching the reference toolbox defaults:
// a time-dependent run with a piecewise-constant diffusion coefficient.
void apply_builtin_main(RunConfig& cfg) {
  cfg.mesh_source = "square";
  cfg.h_max = 1.0 / 8.0;
  cfg.p = 2;
  cfg.t_end = M_PI;
  cfg.num_steps = 20;
  cfg.eta = 1.0;
  cfg.stationary = false;
  cfg.neumann_ids = {1, 3};
  cfg.dirichlet_ids = {2, 4};
  cfg.exprs["c0"] = "sin(x1)*cos(x2)";
  cfg.exprs["d"] = "(x1<3/4&&x1>1/4&&x2<3/4&&x2>1/4)+0.01";
  cfg.exprs["f"] = "0.1*t";
  cfg.exprs["c_d"] = "sin(2*pi*x2+t)";
  cfg.exprs["g_n"] = "x2";
}

ldg::ProblemSpec make_spec(const RunConfig& cfg) {
  if (cfg.builtin == "paper-convergence") {
    // The manufactured verification problem; stationary by construction.
    ldg::ProblemSpec spec = ldg::ManufacturedProblem().spec();
    spec.eta = cfg.eta;
    spec.t_end = cfg.t_end;
    spec.num_steps = cfg.num_steps;
    return spec;
  }
  ldg::ProblemSpec spec;
  auto expr_of = [&](const std::string& key, const std::string& fallback) {
    auto it = cfg.exprs.find(key);
    const std::string text = (it != cfg.exprs.end()) ? it->second : fallback;
    try {
      return ldg::Expr::parse(text).as_function();
    } catch (const ldg::ExprError& err) {
      throw std::runtime_error("in expression for '" + key + "': " + err.what());
    }
  };
  spec.d = expr_of("d", "1");
  spec.f = expr_of("f", "0");
  spec.c_d = expr_of("c_d", "0");
  spec.g_n = expr_of("g_n", "0");
  spec.c0 = expr_of("c0", "0");
  spec.eta = cfg.eta;
  spec.t_end = cfg.t_end;
  spec.num_steps = cfg.num_steps;
  spec.stationary = cfg.stationary;
  for (int id : cfg.dirichlet_ids) spec.boundary[id] = ldg::Bc::kDirichlet;
  for (int id : cfg.neumann_ids) spec.boundary[id] = ldg::Bc::kNeumann;
  return spec;
}

std::string join_path(const std::string& dir, const std::string& base) {
  if (dir.empty()) return base;
  return dir + "/" + base;
}

int cmd_simulate(const RunConfig& cfg, const std::string& output_dir, bool quiet) {
  validate(cfg);
  ldg::Mesh mesh = build_mesh(cfg);
  ldg::PolynomialOrder order(cfg.p);
  ldg::RefTensors rt = ldg::build_ref_tensors(order.n_local);
  ldg::ProblemSpec spec = make_spec(cfg);
  ldg::LdgSystem sys(mesh, spec, rt);
  const std::string basename = join_path(output_dir, cfg.output);

  const auto wall_start = std::chrono::steady_clock::now();
  if (cfg.stationary) {
    auto [c, z1, z2] = sys.solve_stationary();
    ldg::write_vtu({&mesh, ldg::to_lagrange(c), "c", basename, 0});
    if (!quiet) std::cout << "stationary solve done, wrote " << basename << ".0.vtu\n";
    return 0;
  }

  ldg::SystemState state = sys.initial_state();
  const int kn = sys.block_dim();
  ldg::DofMatrix c0 =
      ldg::unvec_dof(state.y.segment(2 * kn, kn), mesh.num_t, order.n_local);
  ldg::write_vtu({&mesh, ldg::to_lagrange(c0), "c", basename, 0});

  const double dt = cfg.t_end / cfg.num_steps;
  for (int step = 1; step <= cfg.num_steps; ++step) {
    const auto t0 = std::chrono::steady_clock::now();
    state = sys.euler_step(state, dt);
    if (!state.y.allFinite())
      throw std::runtime_error("non-finite values after step " + std::to_string(step));
    if (step % cfg.output_every == 0) {
      ldg::DofMatrix c =
          ldg::unvec_dof(state.y.segment(2 * kn, kn), mesh.num_t, order.n_local);
      ldg::write_vtu({&mesh, ldg::to_lagrange(c), "c", basename, step});
    }
    if (!quiet) {
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      std::cout << "step " << step << "/" << cfg.num_steps << "  t = " << state.t
                << "  (" << ms << " ms)\n";
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     wall_start)
                           .count();
  std::cout << "simulate: " << cfg.num_steps << " steps to t_end = " << cfg.t_end
            << " in " << total << " s\n";
  return 0;
}

int cmd_convergence(int levels, const std::vector<int>& orders,
                    const std::string& output_dir, bool quiet) {
  for (int p : orders)
    if (p < 0 || p > 4) throw std::runtime_error("Polynomial order must be zero to four");
  std::vector<ldg::ConvergenceRow> rows = ldg::run_convergence(orders, levels);
  const std::string csv_path = join_path(output_dir, "convergence.csv");
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  csv << ldg::convergence_csv(rows);
  if (!quiet) std::cout << ldg::convergence_table(rows) << "\nwrote " << csv_path << "\n";
  return 0;
}

int cmd_mesh_info(const RunConfig& cfg, const std::string& output_dir, bool quiet) {
  ldg::Mesh mesh = build_mesh(cfg);
  std::cout << ldg::dump_mesh_report(mesh);
  if (!cfg.output.empty() && !quiet) {
    ldg::PolynomialOrder order(std::min(cfg.p, 1));
    ldg::RefTensors rt = ldg::build_ref_tensors(order.n_local);
    ldg::DofMatrix flat = ldg::project(
        mesh, [](double, double, double) { return 1.0; }, 0.0, 1, rt);
    ldg::write_vtu(
        {&mesh, ldg::to_lagrange(flat), "mesh", join_path(output_dir, cfg.output), 0});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discontinuous Galerkin diffusion solver"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  bool quiet = false;
  int levels = 4;
  std::string orders_arg = "0,1,2,3,4";

  app.add_option("--output-dir", output_dir, "Directory prefix for output files");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  auto* sim = app.add_subcommand("simulate", "Run a time-dependent simulation");
  sim->fallthrough();
  sim->add_option("--config", config_path, "Config file")->required();

  auto* conv = app.add_subcommand("convergence", "Run the built-in convergence study");
  conv->fallthrough();
  conv->add_option("--config", config_path, "Config file (optional)");
  conv->add_option("--levels", levels, "Finest refinement level (j = 0..levels)");
  conv->add_option("--orders", orders_arg, "Comma-separated polynomial orders");

  auto* info = app.add_subcommand("mesh-info", "Print mesh statistics");
  info->fallthrough();
  info->add_option("--config", config_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (const char* threads = std::getenv("LDG_THREADS")) {
    // Single solver thread today; the cap still bounds any library-internal
    // parallelism.
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (cfg.builtin == "paper-main") apply_builtin_main(cfg);
    else if (cfg.builtin == "paper-convergence") cfg.stationary = true;
    else if (!cfg.builtin.empty() && cfg.builtin != "paper-convergence")
      throw std::runtime_error("unknown builtin problem '" + cfg.builtin + "'");

    if (sim->parsed()) return cmd_simulate(cfg, output_dir, quiet);
    if (conv->parsed()) {
      std::vector<int> orders;
      for (int id : parse_id_list(orders_arg)) orders.push_back(id);
      return cmd_convergence(levels, orders, output_dir, quiet);
    }
    if (info->parsed()) return cmd_mesh_info(cfg, output_dir, quiet);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

#include "conevol/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "conevol/errors.hpp"
#include "conevol/inverse.hpp"
#include "conevol/io.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/semialg.hpp"

namespace conevol::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Context {
  const RunConfig& cfg;
  Tolerances tol;
  InputDocument doc;
  bool has_doc = false;

  CanonicalInput canonical() const {
    Eigen::VectorXd b = doc.b ? *doc.b : Eigen::VectorXd::Zero(doc.normals.cols());
    return canonicalize(doc.normals, b, tol);
  }
  NormalMatrix normals() const { return canonical().normals; }
  Eigen::VectorXd b() const {
    if (!doc.b) throw Error(ErrorCode::InvalidInput, "input has no \"b\"");
    return canonical().b;
  }
  Eigen::VectorXd gamma() const {
    if (!cfg.gamma.empty()) {
      Eigen::VectorXd g = parse_vector(cfg.gamma, "--gamma");
      if (g.size() != doc.normals.cols()) {
        throw Error(ErrorCode::InvalidInput, "--gamma has " + std::to_string(g.size()) +
                                                 " entries, expected " +
                                                 std::to_string(doc.normals.cols()));
      }
      return g;
    }
    if (!doc.gamma) throw Error(ErrorCode::InvalidInput, "no gamma given (input \"gamma\" or --gamma)");
    return *doc.gamma;
  }
};

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

std::string csv_b_header(Eigen::Index m) {
  std::string h;
  for (Eigen::Index i = 0; i < m; ++i) h += ",b" + std::to_string(i + 1);
  return h;
}

std::string csv_values(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += "," + fmt(v(i));
  return s;
}

int cmd_cone_volume(const Context& c, std::ostream& out) {
  const CanonicalInput in = c.canonical();
  if (!c.doc.b) throw Error(ErrorCode::InvalidInput, "input has no \"b\"");
  const HPolytope p = build_polytope(in.normals, in.b, c.tol);
  if (c.cfg.format == "csv") {
    const Eigen::VectorXd g = cone_volume_vector(p).gamma;
    out << "index,b,facet_measure,gamma\n";
    for (int i = 0; i < p.size(); ++i) {
      out << i << "," << fmt(in.b(i)) << "," << fmt(p.facet_measures()(i)) << "," << fmt(g(i))
          << "\n";
    }
    return kExitOk;
  }
  emit(to_json(p), out);
  return kExitOk;
}

int cmd_pscc(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  const MatroidData d = analyze_matroid(u);
  Json j = to_json(d);
  j["pscc"] = to_json(build_pscc(u, d));
  emit(j, out);
  return kExitOk;
}

int cmd_scc_check(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  const MatroidData d = analyze_matroid(u);
  const Eigen::VectorXd g = c.gamma();
  const SccVerdict v = scc_check(u, d, g);
  const SccVerdict oracle = brute_force_scc(u, g);
  Json j = to_json(d);
  j["gamma"] = to_json(g);
  j["verdict"] = to_json(v);
  j["oracle_agrees"] = v.kind == oracle.kind && v.violations == oracle.violations;
  emit(j, out);
  return kExitOk;
}

int cmd_typecones(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  const auto types = sample_type_cones(u, c.cfg.trials, c.cfg.seed, c.tol);
  if (c.cfg.format == "csv") {
    out << "type_id,full_facet,hits,first_trial" << csv_b_header(u.size()) << "\n";
    for (const auto& t : types) {
      out << t.type_id << "," << (t.full_facet ? 1 : 0) << "," << t.hits << "," << t.first_trial
          << csv_values(t.b) << "\n";
    }
    return kExitOk;
  }
  Json j;
  j["trials"] = c.cfg.trials;
  j["seed"] = c.cfg.seed;
  j["coverage"] = "at least " + std::to_string(types.size()) + " types";
  Json arr = Json::array();
  for (const auto& t : types) {
    Json o = to_json(t);
    Json rows = Json::array();
    for (const auto& r : local_type_cone(u, t.b, c.tol)) rows.push_back(to_json(r));
    o["cone_rows"] = rows;
    arr.push_back(o);
  }
  j["types"] = arr;
  if (u.dim() == 2) {
    const PlanarFan fan = order_ccw(u);
    j["ccw_order"] = fan.ordering;
    j["all_edges_type_cone"] = to_json(planar_type_cone(fan));
  }
  emit(j, out);
  return kExitOk;
}

int cmd_emit_system(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  Eigen::VectorXd b;
  if (c.doc.b) {
    b = c.b();
  } else {
    const auto full = filter_full_facet_types(sample_type_cones(u, c.cfg.trials, c.cfg.seed, c.tol));
    if (full.empty()) throw Error(ErrorCode::Internal, "no full-facet type found");
    b = full.front().b;
  }
  BuildOptions opts;
  opts.seed = c.cfg.seed;
  opts.tol = c.tol;
  const SemialgSystem s = build_system(u, b, opts);
  if (c.cfg.smtlib) {
    out << to_smtlib(s);
    return kExitOk;
  }
  emit(to_json(s), out);
  return kExitOk;
}

int cmd_solve_inverse(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  SolveOptions opts;
  opts.starts = c.cfg.starts;
  opts.seed = c.cfg.seed;
  opts.residual_tol = c.cfg.tol_residual;
  opts.tol = c.tol;
  const Eigen::VectorXd g = c.gamma();
  const SolutionFamily fam = solve_inverse(u, g, opts);
  if (c.cfg.format == "csv") {
    out << "solution,residual,rank_defect" << csv_b_header(u.size()) << "\n";
    for (std::size_t k = 0; k < fam.solutions.size(); ++k) {
      const auto& s = fam.solutions[k];
      out << k << "," << fmt(s.residual) << "," << s.rank_defect << csv_values(s.b) << "\n";
    }
    return kExitOk;
  }
  Json j;
  j["gamma"] = to_json(g);
  j["seed"] = c.cfg.seed;
  j["starts"] = c.cfg.starts;
  const Json body = to_json(fam);
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit(j, out);
  return kExitOk;
}

std::string branch_name(TrapezoidBranch b) {
  switch (b) {
    case TrapezoidBranch::SumBelow: return "A";
    case TrapezoidBranch::SqrtBound: return "B";
    case TrapezoidBranch::None: break;
  }
  return "";
}

int cmd_membership(const Context& c, std::ostream& out) {
  const NormalMatrix u = c.normals();
  const TrapezoidLabeling lab = trapezoid_labeling(u);
  const Eigen::VectorXd g = c.gamma();
  const auto labeled = relabel(lab, g);
  const TrapezoidBranch br = trapezoid_branch(labeled, c.cfg.allow_zero);
  Json j;
  j["labels"] = lab.labels;
  j["gamma_labeled"] = labeled;
  j["member"] = br != TrapezoidBranch::None;
  j["subset"] = br == TrapezoidBranch::None ? Json(nullptr) : Json(branch_name(br));
  emit(j, out);
  return kExitOk;
}

int cmd_figure1(const Context& c, std::ostream& out) {
  std::mt19937_64 rng(c.cfg.seed);
  std::exponential_distribution<double> expo(1.0);
  out << "gamma1,gamma3,gamma2,subset\n";
  for (int k = 0; k < c.cfg.samples; ++k) {
    std::array<double, 4> g{};
    double s = 0.0;
    for (auto& x : g) s += (x = expo(rng));
    for (auto& x : g) x /= s;
    g[3] = 1.0 - (g[0] + g[1] + g[2]);
    if (!(g[3] > 0.0)) continue;
    const TrapezoidBranch br = trapezoid_branch(g);
    if (br == TrapezoidBranch::None) continue;
    out << fmt(g[0]) << "," << fmt(g[2]) << "," << fmt(g[1]) << "," << branch_name(br) << "\n";
  }
  return kExitOk;
}

int cmd_paper_suite(std::ostream& out) {
  const auto rows = example_suite();
  std::size_t w_mod = 6, w_name = 7;
  for (const auto& r : rows) {
    w_mod = std::max(w_mod, r.module.size());
    w_name = std::max(w_name, r.name.size());
  }
  int passed = 0;
  char line[1024];
  std::snprintf(line, sizeof line, "%-*s  %-*s  %-6s  %s\n", static_cast<int>(w_mod), "module",
                static_cast<int>(w_name), "example", "result", "detail");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*s  %-*s  %-6s  %s\n", static_cast<int>(w_mod),
                  r.module.c_str(), static_cast<int>(w_name), r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.detail.c_str());
    out << line;
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << rows.size() << " examples reproduced\n";
  return kExitOk;
}

bool needs_input(const std::string& cmd) {
  return cmd != "figure1-data" && cmd != "paper-suite";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string command = cfg.command == "typecone" ? "typecones" : cfg.command;
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    err << "error: cli.InvalidInput: unknown command '" << cfg.command << "'\n";
    return kExitValidation;
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    err << "error: cli.InvalidInput: --format must be json or csv\n";
    return kExitValidation;
  }
  std::ofstream file;
  std::ostream* sink = &out;
  std::ostringstream buffer;
  if (!cfg.output.empty()) sink = &buffer;

  Context ctx{cfg, Tolerances{}, {}, false};
  ctx.tol.incidence = cfg.tol_incidence;
  ctx.tol.residual = cfg.tol_residual;
  int code = kExitOk;
  try {
    if (needs_input(command)) {
      if (cfg.input.empty()) throw Error(ErrorCode::InvalidInput, "--input is required for " + command);
      ctx.doc = read_input_file(cfg.input);
      ctx.has_doc = true;
    }
    if (command == "cone-volume") code = cmd_cone_volume(ctx, *sink);
    else if (command == "pscc") code = cmd_pscc(ctx, *sink);
    else if (command == "scc-check") code = cmd_scc_check(ctx, *sink);
    else if (command == "typecones") code = cmd_typecones(ctx, *sink);
    else if (command == "emit-system") code = cmd_emit_system(ctx, *sink);
    else if (command == "solve-inverse") code = cmd_solve_inverse(ctx, *sink);
    else if (command == "membership-trapezoid") code = cmd_membership(ctx, *sink);
    else if (command == "figure1-data") code = cmd_figure1(ctx, *sink);
    else code = cmd_paper_suite(*sink);
  } catch (const NoConvergenceError& e) {
    err << "error: " << e.qualified_code() << ": " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.qualified_code() << ": " << e.what() << "\n";
    return e.code() == ErrorCode::Internal ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cli.InvalidInput: cannot write " << cfg.output << "\n";
      return kExitValidation;
    }
    file << buffer.str();
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Cone-volume vectors, subspace concentration polytopes and type cones"};
  app.add_option("command", cfg.command, "cone-volume | pscc | scc-check | typecones | emit-system | "
                                         "solve-inverse | membership-trapezoid | figure1-data | "
                                         "paper-suite")
      ->required();
  app.add_option("--input", cfg.input, "input JSON file");
  app.add_option("--output", cfg.output, "output file (default stdout)");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--tol-incidence", cfg.tol_incidence, "incidence tolerance")->capture_default_str();
  app.add_option("--tol-residual", cfg.tol_residual, "inverse residual tolerance")
      ->capture_default_str();
  app.add_option("--starts", cfg.starts, "inverse solver multistarts")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "cone-volume vector as a JSON array");
  app.add_flag("--json", "JSON output (default)");
  app.add_flag("--smtlib", cfg.smtlib, "emit-system: SMT-LIB text instead of JSON");
  app.add_flag("--allow-zero", cfg.allow_zero, "membership-trapezoid: accept zero entries");
  app.add_option("--trials", cfg.trials, "type-cone sampling trials")->capture_default_str();
  app.add_option("--samples", cfg.samples, "figure1-data samples")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: cli.InvalidInput: " << e.what() << "\n";
    return kExitValidation;
  }
  if (cfg.starts < 1 || cfg.trials < 1 || cfg.samples < 0) {
    err << "error: cli.InvalidInput: --starts and --trials must be positive\n";
    return kExitValidation;
  }
  return run(cfg, out, err);
}

}  // namespace conevol::cli

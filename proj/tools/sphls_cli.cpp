// Command-line front end for the sphls shared library. Talks to the
// library exclusively through the C API in sphls.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphls.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct cli_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(sphls_status status, const std::string& context) {
  if (status != SPHLS_OK)
    throw cli_error(context + ": " + sphls_last_error());
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using points_ptr = std::unique_ptr<sphls_points, decltype(&sphls_points_free)>;
using rule_ptr = std::unique_ptr<sphls_rule, decltype(&sphls_rule_free)>;
using basis_ptr = std::unique_ptr<sphls_basis, decltype(&sphls_basis_free)>;
using approx_ptr = std::unique_ptr<sphls_approx, decltype(&sphls_approx_free)>;

points_ptr make_spiral(size_t count) {
  sphls_points* p = nullptr;
  check(sphls_points_spiral(count, &p), "spiral generation");
  return {p, &sphls_points_free};
}

points_ptr load_points(const std::string& path) {
  sphls_points* p = nullptr;
  check(sphls_points_load(path.c_str(), &p), "loading " + path);
  return {p, &sphls_points_free};
}

rule_ptr solve_rule(const sphls_points* ps, int exactness) {
  sphls_rule* r = nullptr;
  check(sphls_rule_solve(ps, exactness, &r),
        "solving weights for exactness " + std::to_string(exactness));
  return {r, &sphls_rule_free};
}

basis_ptr build_basis(const sphls_points* ps, int degree) {
  sphls_basis* b = nullptr;
  check(sphls_basis_build(ps, degree, &b),
        "building basis of degree " + std::to_string(degree));
  return {b, &sphls_basis_free};
}

std::vector<double> sample_fn(const std::string& fn, const sphls_points* ps) {
  std::vector<double> samples(sphls_points_count(ps));
  check(sphls_testfn_evaluate(fn.c_str(), ps, samples.data()), "evaluating " + fn);
  return samples;
}

// Atomic write: temp file in the target directory, then rename.
class csv_writer {
 public:
  explicit csv_writer(std::string path) : path_(std::move(path)) {
    if (path_.empty() || path_ == "-") {
      out_ = &std::cout;
      return;
    }
    tmp_ = path_ + ".tmp";
    file_.open(tmp_, std::ios::binary);
    if (!file_) throw cli_error("cannot open " + tmp_ + " for writing");
    out_ = &file_;
  }

  ~csv_writer() {
    if (!committed_ && !tmp_.empty()) {
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

  std::ostream& out() { return *out_; }

  void commit() {
    if (tmp_.empty()) return;
    file_.flush();
    if (!file_) throw cli_error("write failed: " + tmp_);
    file_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
  bool committed_ = false;
};

// ---- subcommand state ----

struct PointsGenArgs {
  std::string kind = "spiral";
  size_t count = 0;
  std::string out;
};

struct PointsStatsArgs {
  std::string in;
  int eval_factor = 16;
  std::string out;
};

struct QuadArgs {
  std::string points;
  int exactness = 0;
  std::string out;
};

struct FitArgs {
  std::string op;
  std::string points;
  std::string weights;
  std::string fn = "f2";
  int degree = 0;
  double theta = 0.0;
  std::string out;
  std::string report;
  int eval_factor = 4;
};

struct ExperimentArgs {
  std::string id;
  std::vector<int> n_values;
  std::vector<double> thetas;
  std::string source = "spiral";
  std::string points_file;
  std::string fn = "f2";
  int eval_factor = 4;
  double mask = 0.1;
  unsigned long long seed = 0;
  std::string out;
};

int run_points_gen(const PointsGenArgs& a) {
  if (a.kind != "spiral") throw cli_error("unknown point kind: " + a.kind);
  auto ps = make_spiral(a.count);
  check(sphls_points_save(ps.get(), a.out.c_str()), "saving " + a.out);
  return 0;
}

int run_points_stats(const PointsStatsArgs& a) {
  auto ps = load_points(a.in);
  const size_t n = sphls_points_count(ps.get());
  auto eval = make_spiral(n * static_cast<size_t>(a.eval_factor));
  double sep = 0, mesh = 0, ratio = 0;
  check(sphls_mesh_report(ps.get(), eval.get(), &sep, &mesh, &ratio), "mesh report");
  csv_writer w(a.out);
  w.out() << "# source=" << a.in << " eval_factor=" << a.eval_factor << "\n";
  w.out() << "count,separation,mesh_norm_estimate,mesh_ratio,eval_count\n";
  w.out() << n << ',' << fmt17(sep) << ',' << fmt17(mesh) << ',' << fmt17(ratio) << ','
          << sphls_points_count(eval.get()) << "\n";
  w.commit();
  return 0;
}

int run_quad(const QuadArgs& a) {
  auto ps = load_points(a.points);
  auto rule = solve_rule(ps.get(), a.exactness);
  check(sphls_rule_save(rule.get(), a.out.c_str()), "saving " + a.out);
  std::cerr << "exactness " << a.exactness << " residual "
            << fmt17(sphls_rule_residual(rule.get())) << " on "
            << sphls_rule_count(rule.get()) << " nodes\n";
  return 0;
}

approx_ptr fit_dispatch(const FitArgs& a, const sphls_points* ps,
                        const std::vector<double>& samples) {
  sphls_approx* out = nullptr;
  if (a.op == "ls") {
    auto basis = build_basis(ps, a.degree);
    check(sphls_fit_ls(basis.get(), samples.data(), samples.size(), &out), "ls fit");
  } else if (a.op == "vp") {
    check(sphls_fit_vp(ps, samples.data(), samples.size(), a.degree, a.theta, &out),
          "vp fit");
  } else if (a.op == "hyper" || a.op == "fhyper") {
    rule_ptr rule{nullptr, &sphls_rule_free};
    sphls_rule* r = nullptr;
    check(sphls_rule_load(a.weights.c_str(), &r), "loading " + a.weights);
    rule.reset(r);
    if (a.op == "hyper")
      check(sphls_fit_hyper(rule.get(), samples.data(), samples.size(), a.degree, &out),
            "hyper fit");
    else
      check(sphls_fit_fhyper(rule.get(), samples.data(), samples.size(), a.degree, a.theta,
                             &out),
            "fhyper fit");
  } else {
    throw cli_error("unknown operator: " + a.op);
  }
  return {out, &sphls_approx_free};
}

int run_fit(const FitArgs& a) {
  auto ps = load_points(a.points);
  const auto samples = sample_fn(a.fn, ps.get());
  auto approx = fit_dispatch(a, ps.get(), samples);
  check(sphls_approx_save(approx.get(), a.out.c_str()), "saving " + a.out);

  auto eval = make_spiral(sphls_points_count(ps.get()) * static_cast<size_t>(a.eval_factor));
  double sup = 0, masked = 0;
  check(sphls_sup_error(approx.get(), a.fn.c_str(), eval.get(), -1.0, &sup, &masked),
        "sup error");
  csv_writer w(a.report);
  w.out() << "op,fn,degree,theta,nodes,eval_count,sup_error\n";
  w.out() << a.op << ',' << a.fn << ',' << a.degree << ',' << fmt17(a.theta) << ','
          << sphls_points_count(ps.get()) << ',' << sphls_points_count(eval.get()) << ','
          << fmt17(sup) << "\n";
  w.commit();
  return 0;
}

points_ptr experiment_nodes(const ExperimentArgs& a, size_t count) {
  if (a.source == "spiral") return make_spiral(count);
  if (a.source == "file") {
    if (a.points_file.empty()) throw cli_error("--points is required with --source file");
    return load_points(a.points_file);
  }
  throw cli_error("unknown point source: " + a.source);
}

int run_experiment(const ExperimentArgs& a) {
  csv_writer w(a.out);
  auto& out = w.out();
  out << "# experiment=" << a.id << " source=" << a.source << " seed=" << a.seed << "\n";

  if (a.id == "fig-lebesgue") {
    // LS vs hyperinterpolation constants on exactness-2n node sets
    // (twice dim P_2n so the solved weights stay positive).
    out << "n,operator,nodes,eval_count,lebesgue_constant\n";
    for (int n : a.n_values) {
      const size_t count = 2 * static_cast<size_t>(2 * n + 1) * (2 * n + 1);
      auto nodes = experiment_nodes(a, count);
      auto eval = make_spiral(sphls_points_count(nodes.get()) *
                              static_cast<size_t>(a.eval_factor));
      auto basis = build_basis(nodes.get(), n);
      sphls_lebesgue_report rep{};
      check(sphls_lebesgue_ls(basis.get(), eval.get(), &rep), "LS Lebesgue constant");
      out << n << ",LS," << sphls_points_count(nodes.get()) << ',' << rep.eval_count << ','
          << fmt17(rep.constant) << "\n";
      auto rule = solve_rule(nodes.get(), 2 * n);
      check(sphls_lebesgue_hyper(rule.get(), n, eval.get(), &rep),
            "HYPER Lebesgue constant");
      out << n << ",HYPER," << sphls_points_count(nodes.get()) << ',' << rep.eval_count
          << ',' << fmt17(rep.constant) << "\n";
    }
  } else if (a.id == "fig-vp") {
    // vdVP means vs filtered hyperinterpolation on exactness-4n node sets
    // (twice dim P_4n so the solved weights stay positive).
    out << "n,theta,operator,nodes,eval_count,lebesgue_constant\n";
    for (int n : a.n_values) {
      const size_t count = 2 * static_cast<size_t>(4 * n + 1) * (4 * n + 1);
      auto nodes = experiment_nodes(a, count);
      auto eval = make_spiral(sphls_points_count(nodes.get()) *
                              static_cast<size_t>(a.eval_factor));
      auto rule = solve_rule(nodes.get(), 4 * n);
      for (double theta : a.thetas) {
        const int m = static_cast<int>(std::floor(theta * n));
        auto basis = build_basis(nodes.get(), n + m);
        sphls_lebesgue_report rep{};
        check(sphls_lebesgue_vp(basis.get(), n, theta, eval.get(), &rep),
              "VP Lebesgue constant");
        out << n << ',' << fmt17(theta) << ",VP_LS," << sphls_points_count(nodes.get())
            << ',' << rep.eval_count << ',' << fmt17(rep.constant) << "\n";
        check(sphls_lebesgue_fhyper(rule.get(), n, theta, eval.get(), &rep),
              "FHYPER Lebesgue constant");
        out << n << ',' << fmt17(theta) << ",FHYPER," << sphls_points_count(nodes.get())
            << ',' << rep.eval_count << ',' << fmt17(rep.constant) << "\n";
      }
    }
  } else if (a.id == "fig-gibbs") {
    // Error of the vdVP mean around the cone edge of f2 for several theta.
    out << "n,theta,fn,nodes,eval_count,sup_error,masked_sup_error,mask_radius\n";
    for (int n : a.n_values) {
      const size_t count = static_cast<size_t>(4 * n + 1) * (4 * n + 1);
      auto nodes = experiment_nodes(a, count);
      const auto samples = sample_fn(a.fn, nodes.get());
      auto eval = make_spiral(sphls_points_count(nodes.get()) *
                              static_cast<size_t>(a.eval_factor));
      for (double theta : a.thetas) {
        sphls_approx* raw = nullptr;
        check(sphls_fit_vp(nodes.get(), samples.data(), samples.size(), n, theta, &raw),
              "vp fit");
        approx_ptr approx{raw, &sphls_approx_free};
        double sup = 0, masked = 0;
        check(sphls_sup_error(approx.get(), a.fn.c_str(), eval.get(), a.mask, &sup, &masked),
              "sup error");
        out << n << ',' << fmt17(theta) << ',' << a.fn << ','
            << sphls_points_count(nodes.get()) << ',' << sphls_points_count(eval.get())
            << ',' << fmt17(sup) << ',' << fmt17(masked) << ',' << fmt17(a.mask) << "\n";
      }
    }
  } else if (a.id == "fig-mesh") {
    // Separation / mesh norm / mesh ratio across N = (n+1)^2 node sets.
    out << "n,nodes,eval_count,separation,mesh_norm_estimate,mesh_ratio\n";
    for (int n : a.n_values) {
      const size_t count = static_cast<size_t>(n + 1) * (n + 1);
      auto nodes = experiment_nodes(a, count);
      auto eval = make_spiral(sphls_points_count(nodes.get()) *
                              static_cast<size_t>(a.eval_factor));
      double sep = 0, mesh = 0, ratio = 0;
      check(sphls_mesh_report(nodes.get(), eval.get(), &sep, &mesh, &ratio), "mesh report");
      out << n << ',' << sphls_points_count(nodes.get()) << ','
          << sphls_points_count(eval.get()) << ',' << fmt17(sep) << ',' << fmt17(mesh)
          << ',' << fmt17(ratio) << "\n";
    }
  } else {
    std::cerr << "unknown experiment id: " << a.id
              << " (valid: fig-lebesgue, fig-vp, fig-gibbs, fig-mesh)\n";
    return kExitUsage;
  }
  w.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sphls: polynomial approximation on the sphere from scattered samples.\n"
      "Spiral node sets are the default source; externally computed extremal\n"
      "point sets can be supplied as files. Desk-scale degrees (n up to ~40)\n"
      "are the intended range."};
  app.require_subcommand(1);

  PointsGenArgs gen_args;
  PointsStatsArgs stats_args;
  QuadArgs quad_args;
  FitArgs fit_args;
  ExperimentArgs exp_args;

  auto* points = app.add_subcommand("points", "generate or inspect point sets");
  points->require_subcommand(1);
  auto* gen = points->add_subcommand("gen", "generate a point set file");
  gen->add_option("--kind", gen_args.kind, "point set kind (spiral)");
  gen->add_option("--count", gen_args.count, "number of points")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_args.out, "output points file")->required();

  auto* stats = points->add_subcommand("stats", "separation / mesh-norm report");
  stats->add_option("--in", stats_args.in, "input points file")->required();
  stats->add_option("--eval-factor", stats_args.eval_factor,
                    "evaluation grid size as a multiple of the node count")
      ->check(CLI::PositiveNumber);
  stats->add_option("--out", stats_args.out, "CSV output (default stdout)");

  auto* quad = app.add_subcommand("quad", "quadrature weights");
  quad->require_subcommand(1);
  auto* solve = quad->add_subcommand("solve", "solve positive weights of a target exactness");
  solve->add_option("--points", quad_args.points, "input points file")->required();
  solve->add_option("--exactness", quad_args.exactness, "target exactness degree")
      ->required()
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", quad_args.out, "output weights file")->required();

  auto* fit = app.add_subcommand("fit", "fit an approximant to a test function");
  fit->add_option("--op", fit_args.op, "ls | vp | hyper | fhyper")
      ->required()
      ->check(CLI::IsMember({"ls", "vp", "hyper", "fhyper"}));
  fit->add_option("--points", fit_args.points, "node points file")->required();
  fit->add_option("--weights", fit_args.weights, "weights file (hyper/fhyper)");
  fit->add_option("--fn", fit_args.fn, "test function: f1 | fcone | f2");
  fit->add_option("--degree", fit_args.degree, "approximation degree n")
      ->required()
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--theta", fit_args.theta, "vdVP parameter in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  fit->add_option("--out", fit_args.out, "output approximant file")->required();
  fit->add_option("--report", fit_args.report, "CSV report path (default stdout)");
  fit->add_option("--eval-factor", fit_args.eval_factor, "error grid multiple")
      ->check(CLI::PositiveNumber);
  fit->callback([&] {
    if ((fit_args.op == "hyper" || fit_args.op == "fhyper") && fit_args.weights.empty())
      throw CLI::RequiredError("--weights (for " + fit_args.op + ")");
  });

  auto* exp = app.add_subcommand(
      "experiment", "reproduce a study: fig-lebesgue | fig-vp | fig-gibbs | fig-mesh");
  exp->add_option("id", exp_args.id, "experiment id")->required();
  exp->add_option("--n", exp_args.n_values, "degree list")->delimiter(',');
  exp->add_option("--theta", exp_args.thetas, "theta list")->delimiter(',');
  exp->add_option("--source", exp_args.source, "spiral | file");
  exp->add_option("--points", exp_args.points_file, "points file when --source file");
  exp->add_option("--fn", exp_args.fn, "test function for fig-gibbs");
  exp->add_option("--eval-factor", exp_args.eval_factor, "evaluation grid multiple")
      ->check(CLI::PositiveNumber);
  exp->add_option("--mask", exp_args.mask, "mask radius for fig-gibbs");
  exp->add_option("--seed", exp_args.seed, "seed recorded in CSV metadata");
  exp->add_option("--out", exp_args.out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_points_gen(gen_args);
    if (stats->parsed()) return run_points_stats(stats_args);
    if (solve->parsed()) return run_quad(quad_args);
    if (fit->parsed()) return run_fit(fit_args);
    if (exp->parsed()) {
      if (exp_args.n_values.empty()) {
        if (exp_args.id == "fig-mesh") exp_args.n_values = {10, 20, 30, 40, 50};
        else if (exp_args.id == "fig-gibbs") exp_args.n_values = {20};
        else exp_args.n_values = {5, 10, 15, 20};
      }
      if (exp_args.thetas.empty()) {
        if (exp_args.id == "fig-gibbs") exp_args.thetas = {0.0, 0.1, 0.2};
        else exp_args.thetas = {0.1, 0.3, 0.5, 1.0};
      }
      if (exp_args.id == "fig-mesh" && exp->count("--eval-factor") == 0)
        exp_args.eval_factor = 16;
      return run_experiment(exp_args);
    }
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

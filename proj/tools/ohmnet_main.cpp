#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ohmnet/generators.hpp"
#include "ohmnet/jacobi.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/report.hpp"
#include "ohmnet/selfcheck.hpp"
#include "ohmnet/spectral.hpp"
#include "ohmnet/suite.hpp"
#include "ohmnet/tokens.hpp"

namespace {

namespace fs = std::filesystem;
using ohmnet::WeightedGraph;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBoundViolation = 3;

struct GraphSource {
  std::string file;
  std::string family;
  ohmnet::gen::FamilyParams params;
};

void add_graph_flags(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("--graph", src.file, "edge-list graph file");
  cmd->add_option("--family", src.family,
                  "generator family: path cycle complete grid barbell random");
  cmd->add_option("--n", src.params.n, "node-count parameter");
  cmd->add_option("--n2", src.params.n2,
                  "second size parameter (barbell bridge, grid columns)");
  cmd->add_option("--w", src.params.w, "uniform edge weight");
  cmd->add_option("--p", src.params.edge_prob,
                  "random family edge probability");
  cmd->add_option("--wmin", src.params.wmin, "random family minimum weight");
  cmd->add_option("--wmax", src.params.wmax, "random family maximum weight");
}

WeightedGraph resolve_graph(const GraphSource& src, uint64_t seed) {
  if (!src.file.empty() && !src.family.empty())
    ohmnet::fail(ohmnet::ErrorCode::InvalidParams,
                 "--graph and --family are mutually exclusive");
  if (!src.file.empty()) return ohmnet::load_graph_file(src.file);
  if (!src.family.empty()) {
    auto params = src.params;
    params.seed = seed;
    return ohmnet::gen::from_family(src.family, params);
  }
  ohmnet::fail(ohmnet::ErrorCode::InvalidParams,
               "one of --graph or --family is required");
}

fs::path prepare_out(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    ohmnet::fail(ohmnet::ErrorCode::IoError, "cannot write " + path.string());
  f << content;
}

int exit_code_for(const ohmnet::Error& e) {
  return e.code() == ohmnet::ErrorCode::BoundViolation ? kExitBoundViolation
                                                       : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized electrical-flow estimation toolkit"};
  app.require_subcommand(1);

  GraphSource src;
  std::string out_dir;
  int rounds = 300;
  int64_t inject_rate = 500;
  double damping = 1.0;
  uint64_t seed = 0;
  int reps = 16;
  double stop_tol = 1e-12;
  bool inject_fault = false;

  auto* cmd_generate =
      app.add_subcommand("generate", "write a generated graph file");
  add_graph_flags(cmd_generate, src);
  cmd_generate->add_option("--seed", seed, "generator seed");
  cmd_generate->add_option("--out", out_dir, "output directory");

  auto* cmd_oracle =
      app.add_subcommand("oracle", "exact grounded potentials and flows");
  add_graph_flags(cmd_oracle, src);
  cmd_oracle->add_option("--seed", seed, "generator seed");
  cmd_oracle->add_option("--out", out_dir, "output directory");

  auto* cmd_jacobi =
      app.add_subcommand("jacobi", "synchronous potential-exchange rounds");
  add_graph_flags(cmd_jacobi, src);
  cmd_jacobi->add_option("--seed", seed, "generator seed");
  cmd_jacobi->add_option("--rounds", rounds, "round budget");
  cmd_jacobi->add_option("--beta", damping, "damping factor in (0,1]");
  cmd_jacobi->add_option("--stop-tol", stop_tol,
                         "successive-delta stop tolerance");
  cmd_jacobi->add_option("--out", out_dir, "output directory");

  auto* cmd_tokens =
      app.add_subcommand("tokens", "random token diffusion rounds");
  add_graph_flags(cmd_tokens, src);
  cmd_tokens->add_option("--rounds", rounds, "round budget");
  cmd_tokens->add_option("--K", inject_rate, "tokens injected per round");
  cmd_tokens->add_option("--seed", seed, "master seed (required)")->required();
  cmd_tokens->add_option("--reps", reps, "independent replications");
  cmd_tokens->add_option("--out", out_dir, "output directory");

  auto* cmd_spectral = app.add_subcommand(
      "spectral", "spectral and cut quantities with bound checks");
  add_graph_flags(cmd_spectral, src);
  cmd_spectral->add_option("--seed", seed, "generator seed");
  cmd_spectral->add_option("--out", out_dir, "output directory");

  auto* cmd_compare = app.add_subcommand(
      "compare", "run everything on one graph and cross-check");
  add_graph_flags(cmd_compare, src);
  cmd_compare->add_option("--rounds", rounds, "round budget");
  cmd_compare->add_option("--K", inject_rate, "tokens injected per round");
  cmd_compare->add_option("--seed", seed, "master seed (required)")
      ->required();
  cmd_compare->add_option("--beta", damping, "damping factor in (0,1]");
  cmd_compare->add_option("--reps", reps, "independent replications");
  cmd_compare->add_option("--stop-tol", stop_tol,
                          "successive-delta stop tolerance");
  cmd_compare->add_option("--out", out_dir, "output directory");

  auto* cmd_selfcheck = app.add_subcommand(
      "selfcheck", "run the invariant suite on the built-in graphs");
  cmd_selfcheck
      ->add_flag("--inject-fault", inject_fault,
                 "corrupt one operator entry to prove detection")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_generate->parsed()) {
      if (src.family.empty())
        ohmnet::fail(ohmnet::ErrorCode::InvalidParams,
                     "generate needs --family");
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      const fs::path path = dir / (src.family + ".graph");
      write_file(path, ohmnet::serialize_graph(g));
      std::cout << path.string() << "\n";
      return kExitOk;
    }

    if (cmd_oracle->parsed()) {
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      write_file(dir / "oracle.json",
                 ohmnet::report::oracle_json(g).dump(2) + "\n");
      std::cout << (dir / "oracle.json").string() << "\n";
      return kExitOk;
    }

    if (cmd_jacobi->parsed()) {
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      const Eigen::VectorXd p = ohmnet::solve_grounded(g);
      const double rho = ohmnet::spectral::rho_star(g);
      const auto run = ohmnet::jacobi::run(
          g, rounds, damping, Eigen::VectorXd::Zero(g.n()), stop_tol);
      std::ostringstream csv;
      ohmnet::jacobi::write_trajectory_csv(csv, g, run, p, rho);
      write_file(dir / "jacobi.csv", csv.str());

      const auto& last = run.trajectory.back();
      ohmnet::report::json j;
      j["beta"] = damping;
      j["rounds_run"] = last.round;
      j["converged"] = run.converged;
      j["messages"] = last.messages_sent;
      j["residual_inf"] = ohmnet::residual_inf(g, last.potentials);
      j["final_err_perp"] =
          ohmnet::jacobi::error_decomposition(p, last.potentials)
              .e_perp.norm();
      j["rho_star"] = rho;
      write_file(dir / "jacobi.json", j.dump(2) + "\n");
      std::cout << (dir / "jacobi.csv").string() << "\n";
      return kExitOk;
    }

    if (cmd_tokens->parsed()) {
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      const auto summary = ohmnet::tokens::run(g, inject_rate, rounds, seed,
                                               reps, /*record=*/true);
      std::ostringstream csv;
      ohmnet::tokens::write_csv(csv, g, summary);
      write_file(dir / "tokens.csv", csv.str());

      ohmnet::report::json j;
      j["K"] = inject_rate;
      j["rounds"] = rounds;
      j["reps"] = reps;
      j["seed"] = seed;
      std::vector<double> mean(g.n()), var(g.n());
      for (int u = 0; u < g.n(); ++u) {
        mean[u] = summary.mean_at(rounds, u);
        var[u] = summary.var_at(rounds, u);
      }
      j["est_mean_final"] = mean;
      j["est_var_final"] = var;
      j["rate_bound_final"] = ohmnet::tokens::rate_bound(g, rounds);
      const auto tcb = ohmnet::tokens::token_count_bound(g, inject_rate);
      j["count_stationary_exact"] = tcb.stationary_exact;
      j["count_upper"] = tcb.upper;
      write_file(dir / "tokens.json", j.dump(2) + "\n");
      std::cout << (dir / "tokens.csv").string() << "\n";
      return kExitOk;
    }

    if (cmd_spectral->parsed()) {
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      const auto report = ohmnet::spectral::spectral_report(g);
      write_file(dir / "spectral.json",
                 ohmnet::report::spectral_json(report).dump(2) + "\n");
      std::cout << (dir / "spectral.json").string() << "\n";
      if (!report.all_hold()) {
        std::cerr << "bound check failed\n";
        return kExitBoundViolation;
      }
      return kExitOk;
    }

    if (cmd_compare->parsed()) {
      const WeightedGraph g = resolve_graph(src, seed);
      const fs::path dir = prepare_out(out_dir);
      ohmnet::report::CompareConfig cfg;
      cfg.rounds = rounds;
      cfg.inject_rate = inject_rate;
      cfg.damping = damping;
      cfg.seed = seed;
      cfg.reps = reps;
      cfg.stop_tol = stop_tol;
      const auto result = ohmnet::report::run_compare(g, cfg);
      write_file(dir / "report.json", result.report.dump(2) + "\n");
      write_file(dir / "jacobi.csv", result.jacobi_csv);
      write_file(dir / "tokens.csv", result.tokens_csv);
      std::cout << (dir / "report.json").string() << "\n";
      if (!result.all_pass) {
        for (const auto& [name, c] : result.report["checks"].items())
          if (!c["holds"].get<bool>())
            std::cerr << "check failed: " << name << "\n";
        return kExitBoundViolation;
      }
      return kExitOk;
    }

    if (cmd_selfcheck->parsed()) {
      const auto result = ohmnet::selfcheck(inject_fault, &std::cout);
      if (result.passed()) {
        std::cout << "PASS (" << result.checks_run << " checks)\n";
        return kExitOk;
      }
      std::cout << "FAIL " << result.failures.front() << " ["
                << result.failures.size() << " of " << result.checks_run
                << " checks failed]\n";
      return kExitBoundViolation;
    }
  } catch (const ohmnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

// saddleflow: integrate, certify and probe primal-dual dynamics from the command line.

#include "saddleflow/errors.hpp"
#include "saddleflow/scenarios.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace saddleflow;

struct CommonFlags {
  std::string scheme = "euler";
  double h = 1e-3;
  double T = 50.0;
  double kkt_tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out = "out";

  IntegratorConfig config() const {
    IntegratorConfig cfg;
    cfg.scheme = parse_scheme(scheme);
    cfg.step = h;
    cfg.horizon = T;
    cfg.stop_kkt_tol = kkt_tol;
    return cfg;
  }
};

void add_integration_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scheme", f.scheme, "Integration scheme: euler or rk4")
      ->capture_default_str();
  cmd->add_option("--h", f.h, "Step size")->capture_default_str();
  cmd->add_option("--T", f.T, "Time horizon")->capture_default_str();
  cmd->add_option("--kkt-tol", f.kkt_tol, "Stop when the KKT residual drops below (0 disables)")
      ->capture_default_str();
}

int report(const ScenarioResult& result) {
  std::cout << to_json(result).dump(2) << '\n';
  for (const auto& w : result.warnings) {
    std::cerr << (w.rfind("warning: ", 0) == 0 ? "" : "warning: ") << w << '\n';
  }
  std::cerr << result.scenario_name << ": " << (result.pass ? "PASS" : "FAIL");
  if (!result.diagnostic.empty()) std::cerr << " (" << result.diagnostic << ")";
  std::cerr << '\n';
  return result.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual saddle-point dynamics: integration, certification, experiments"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h

  CommonFlags run_flags;
  std::string run_problem;
  std::string x0_text;
  std::string lambda0_text;
  std::optional<std::string> gains_text;
  auto* run = app.add_subcommand("run", "Integrate the dynamics from an initial point");
  run->add_option("--problem", run_problem, "Problem JSON file")->required();
  run->add_option("--x0", x0_text, "Initial x, comma separated")->required();
  run->add_option("--lambda0", lambda0_text, "Initial lambda, comma separated (>= 0)");
  run->add_option("--gains", gains_text, "Diagonal gains: K1 entries then K2 entries");
  run->add_option("--seed", run_flags.seed, "Seed recorded in the summary")->capture_default_str();
  run->add_option("--out", run_flags.out, "Output directory")->capture_default_str();
  add_integration_flags(run, run_flags);

  std::string certify_problem;
  std::size_t samples = 10000;
  std::uint64_t certify_seed = 0;
  std::optional<std::string> saddle_from;
  std::optional<std::string> certify_out;
  auto* certify = app.add_subcommand("certify", "Sweep the Lyapunov and projection identities");
  certify->add_option("--problem", certify_problem, "Problem JSON file")->required();
  certify->add_option("--samples", samples, "Number of sampled points")->capture_default_str();
  certify->add_option("--seed", certify_seed, "Sampling seed")->capture_default_str();
  certify->add_option("--saddle", saddle_from, "summary.json from `run` giving the reference saddle");
  certify->add_option("--out", certify_out, "Directory for summary.json");

  CommonFlags cex_flags;
  auto* cex = app.add_subcommand("counterexample",
                                 "Find two nearby starts with different mode-switch structure");
  cex->add_option("--out", cex_flags.out, "Output directory")->capture_default_str();
  cex->add_option("--scheme", cex_flags.scheme, "Integration scheme: euler or rk4")
      ->capture_default_str();
  cex->add_option("--h", cex_flags.h, "Step size")->capture_default_str();
  cex->add_option("--T", cex_flags.T, "Time horizon")->capture_default_str();

  CommonFlags cont_flags;
  cont_flags.T = 10.0;
  std::string cont_problem;
  std::string p0_text = "0.5,0.5";
  std::string direction_text = "-0.1,-0.1";
  int k_max = 8;
  auto* cont = app.add_subcommand("continuity", "Sweep perturbations of the initial condition");
  cont->add_option("--problem", cont_problem, "Problem JSON file")->required();
  cont->add_option("--p0", p0_text, "Base point (x then lambda), comma separated")
      ->capture_default_str();
  cont->add_option("--direction", direction_text, "Perturbation direction")->capture_default_str();
  cont->add_option("--k-max", k_max, "Deepest level; perturbations are 2^-k * direction")
      ->capture_default_str();
  cont->add_option("--out", cont_flags.out, "Output directory")->capture_default_str();
  add_integration_flags(cont, cont_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kExitUsage;
  try {
    if (*run) {
      RunOptions opt;
      opt.problem = run_problem;
      opt.x0 = parse_number_list(x0_text);
      opt.lambda0 = parse_number_list(lambda0_text);
      opt.config = run_flags.config();
      if (gains_text) opt.gains = parse_number_list(*gains_text);
      opt.seed = run_flags.seed;
      opt.out_dir = run_flags.out;
      code = report(cmd_run(opt));
    } else if (*certify) {
      CertifyOptions opt;
      opt.problem = certify_problem;
      opt.samples = samples;
      opt.seed = certify_seed;
      if (saddle_from) opt.saddle_from = *saddle_from;
      if (certify_out) opt.out_dir = *certify_out;
      code = report(cmd_certify(opt));
    } else if (*cex) {
      CounterexampleOptions opt;
      opt.horizon = cex_flags.T;
      opt.config = cex_flags.config();
      opt.out_dir = cex_flags.out;
      code = report(cmd_counterexample(opt));
    } else if (*cont) {
      ContinuityOptions opt;
      opt.problem = cont_problem;
      opt.p0 = parse_number_list(p0_text);
      opt.direction = parse_number_list(direction_text);
      opt.k_max = k_max;
      opt.horizon = cont_flags.T;
      opt.config = cont_flags.config();
      opt.out_dir = cont_flags.out;
      code = report(cmd_continuity(opt));
    }
  } catch (const IntegrationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const ExperimentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const Error& e) {
    // Parse, usage, domain, dimension and validation problems.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cerr << "elapsed: " << elapsed << " s\n";
  return code;
}

// Batch front end: configuration-driven experiments over the biorthogonal
// spectral engine, plus the cross-module verification suite.

#include "nhfc/config.hpp"
#include "nhfc/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace nhfc;

namespace {

struct CommonArgs {
  std::string config;
  std::string out = ".";
  uint64_t seed = 1;
};

SymbolTable model_symbol(const ModelProblem& p, int M, int N) {
  return tabulate_symbol(p, M, N, [&](const std::array<double, 3>& x, const EigenIndex& xi) {
    return eigenvalue(p, xi) + 2.0 + std::sin(2.0 * kPi * x[0]);
  });
}

int cmd_verify(const CommonArgs& args) {
  const Config cfg = parse_config(args.config);
  const ModelProblem p = problem_from_config(cfg);
  const int M = cfg.get_int("grid", "M", 1024);
  const int N = cfg.get_int("grid", "N", 64);
  const auto checks = run_verify(p, M, N, args.seed);
  const nlohmann::json j = verify_report_json(p, M, N, args.seed, checks);
  fs::create_directories(args.out);
  std::ofstream os(fs::path(args.out) / "verify.json");
  os << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return j["all_pass"].get<bool>() ? 0 : 1;
}

int cmd_run(const std::string& task, const CommonArgs& args) {
  const Config cfg = parse_config(args.config);
  const ModelProblem p = problem_from_config(cfg);
  const int M = cfg.get_int("grid", "M", 256);
  const int N = cfg.get_int("grid", "N", 32);
  fs::create_directories(args.out);
  const fs::path out(args.out);
  std::mt19937_64 rng(args.seed);

  if (task == "transform") {
    GridFunction f = cfg.has("experiment", "input")
                         ? read_grid_function(cfg.require("experiment", "input"))
                         : sample_u(p, M, EigenIndex::make1(cfg.get_int("experiment", "mode", 3)));
    write_coeffs(forward_l(f, N), (out / "coefficients.txt").string());
    return 0;
  }
  if (task == "convolve") {
    GridFunction f = cfg.has("experiment", "input_f")
                         ? read_grid_function(cfg.require("experiment", "input_f"))
                         : random_band(p, M, N, rng, 1.0);
    GridFunction g = cfg.has("experiment", "input_g")
                         ? read_grid_function(cfg.require("experiment", "input_g"))
                         : random_band(p, M, N, rng, 1.0);
    write_grid_function(conv_spectral(f, g, N), (out / "convolution.txt").string());
    if (p.kind == ProblemKind::Oh1D)
      write_grid_function(conv_integral_oh1(f, g), (out / "convolution_integral.txt").string());
    return 0;
  }
  if (task == "quantize") {
    SymbolTable a = cfg.has("experiment", "symbol")
                        ? read_symbol(cfg.require("experiment", "symbol"))
                        : model_symbol(p, M, N);
    GridFunction f = cfg.has("experiment", "input")
                         ? read_grid_function(cfg.require("experiment", "input"))
                         : random_band(p, a.M, a.N, rng, 1.0);
    write_grid_function(op_apply(a, f), (out / "op_apply.txt").string());
    return 0;
  }
  if (task == "compose") {
    const int nterms = cfg.get_int("experiment", "nterms", 2);
    SymbolTable a, b;
    if (cfg.has("experiment", "symbol_a")) {
      a = read_symbol(cfg.require("experiment", "symbol_a"));
      b = read_symbol(cfg.require("experiment", "symbol_b"));
    } else {
      a = make_multiplier(p, M, N, [&](const EigenIndex& xi) { return eigenvalue(p, xi); });
      b = tabulate_symbol(p, M, N, [&](const std::array<double, 3>& x, const EigenIndex&) {
        return std::exp(Complex(0.0, 2.0 * kPi * x[0]));
      });
    }
    write_symbol(compose(a, b, nterms), (out / "composed_symbol.txt").string());
    return 0;
  }
  if (task == "parametrix") {
    const int nterms = cfg.get_int("experiment", "nterms", 3);
    const double mu = cfg.get_double("experiment", "mu", 1.0);
    SymbolTable a = cfg.has("experiment", "symbol")
                        ? read_symbol(cfg.require("experiment", "symbol"))
                        : model_symbol(p, M, N);
    write_symbol(parametrix(a, mu, nterms), (out / "parametrix_symbol.txt").string());
    return 0;
  }
  if (task == "solve") {
    const int nterms = cfg.get_int("experiment", "nterms", 3);
    const double mu = cfg.get_double("experiment", "mu", 1.0);
    const int iters = cfg.get_int("experiment", "refine_iters", 8);
    const SymbolTable a = cfg.has("experiment", "symbol")
                              ? read_symbol(cfg.require("experiment", "symbol"))
                              : model_symbol(p, M, N);
    GridFunction f;
    double relerr = -1.0;
    if (cfg.has("experiment", "input")) {
      f = read_grid_function(cfg.require("experiment", "input"));
      const SolveReport rep = elliptic_solve(a, f, mu, nterms, iters);
      write_grid_function(rep.u, (out / "solution.txt").string());
      std::vector<std::vector<double>> rows;
      for (size_t i = 0; i < rep.residuals.size(); ++i)
        rows.push_back({static_cast<double>(i), rep.residuals[i]});
      write_csv((out / "residuals.csv").string(), {"iter", "residual"}, rows);
      return 0;
    }
    const GridFunction ustar = random_band(p, a.M, std::min(a.N / 4, 8), rng, 1.0);
    f = op_apply(a, ustar);
    const SolveReport rep = elliptic_solve(a, f, mu, nterms, iters);
    relerr = std::sqrt((rep.u.values - ustar.values).squaredNorm() /
                       ustar.values.squaredNorm());
    write_grid_function(rep.u, (out / "solution.txt").string());
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < rep.residuals.size(); ++i)
      rows.push_back({static_cast<double>(i), rep.residuals[i]});
    write_csv((out / "residuals.csv").string(), {"iter", "residual"}, rows);
    std::ofstream rf(out / "solve_report.txt");
    rf << "relative_error " << fmt17(relerr) << "\n"
       << "final_residual " << fmt17(rep.final_residual) << "\n";
    return 0;
  }
  if (task == "tables") {
    // transform accuracy vs truncation
    {
      std::vector<std::vector<double>> rows;
      const GridFunction f = random_band(p, M, std::min(N, 8), rng, 2.0);
      for (int n = std::min(N, 8); n <= N; n *= 2) {
        const GridFunction r = inverse_l(forward_l(f, n), M);
        rows.push_back({static_cast<double>(n),
                        (r.values - f.values).cwiseAbs().maxCoeff()});
        if (n == N) break;
      }
      write_csv((out / "error_vs_N.csv").string(), {"N", "sup_error"}, rows);
    }
    if (p.d == 1) {
      // kernel decay shells of a smoothing multiplier
      const int Nk = std::min(N, 64), Mk = std::max(M, 4 * (Nk + 1));
      const SymbolTable sm = make_multiplier(p, Mk, Nk, [&](const EigenIndex& xi) {
        return std::pow(angle_weight(p, xi), -4.0);
      });
      const KernelDecayReport kr = kernel_decay_report(sm);
      write_csv((out / "kernel_decay.csv").string(),
                {"diag_peak", "offdiag_sup", "offdiag_frac", "fitted_exponent"},
                {{kr.diag_peak, kr.offdiag_sup, kr.offdiag_frac, kr.fitted_exponent}});
      // parametrix remainder slopes
      const ModelProblem p1 = ModelProblem::oh1d(1.0);
      const SymbolTable a = model_symbol(p1, std::min(M, 128), std::min(N, 32));
      std::vector<std::vector<double>> rows;
      for (int nt = 2; nt <= 4; ++nt) {
        const SymbolTable B = parametrix(a, 1.0, nt);
        const SymbolTable r = compose(B, restrict_window(a, B.N), nt);
        std::vector<double> xs, ys;
        for (int ring = 3; ring <= r.N - 2; ++ring) {
          double sup = 0.0;
          for (int sgn : {-1, 1}) {
            const long c = box_pos(EigenIndex::make1(sgn * ring), r.N);
            sup = std::max(sup,
                           (r.values.col(c) - VectorXcd::Ones(r.rows())).cwiseAbs().maxCoeff());
          }
          xs.push_back(std::log(angle_weight(p1, EigenIndex::make1(ring))));
          ys.push_back(std::log(std::max(sup, 1e-300)));
        }
        rows.push_back({static_cast<double>(nt), fit_slope(xs, ys)});
      }
      write_csv((out / "remainder_slopes.csv").string(), {"nterms", "slope"}, rows);
    }
    return 0;
  }
  std::cerr << "unknown run task: " << task << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral engine for a biorthogonal Fourier calculus"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config, "configuration file (key = value sections)")
        ->required();
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--seed", args.seed, "seed for random ensembles");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite, emit a JSON report");
  add_common(verify);

  CLI::App* run = app.add_subcommand(
      "run", "run one experiment: transform|convolve|quantize|compose|parametrix|solve|tables");
  std::string task;
  run->add_option("task", task, "experiment name")->required();
  add_common(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_verify(args);
    return cmd_run(task, args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

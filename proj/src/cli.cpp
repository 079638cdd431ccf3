#include "qta/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qta/analysis.hpp"
#include "qta/linalg.hpp"
#include "qta/protocol.hpp"
#include "qta/states.hpp"
#include "qta/teleport.hpp"

namespace qta::cli {

namespace {

constexpr double kRoundTol = 1e-12;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Format { csv, human };

struct Row {
  std::vector<std::string> cells;
};

// CSV: comma separator, \n endings. Human: two-space separator.
void print_table(std::ostream& out, Format format,
                 const std::vector<std::string>& header,
                 const std::vector<Row>& rows) {
  const char* sep = format == Format::csv ? "," : "  ";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? sep : "") << header[i];
  }
  out << "\n";
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      out << (i ? sep : "") << row.cells[i];
    }
    out << "\n";
  }
}

// Grid size chosen so accumulated step error cannot drop the endpoint.
int grid_count(double lo, double hi, double step) {
  if (step <= 0.0 || hi < lo) return 0;
  return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

struct ClassifyArgs {
  double alpha = 0.0;
};

int cmd_classify(const ClassifyArgs& args, Format format, std::ostream& out) {
  states::AlphaParam alpha(args.alpha);
  const analysis::EntanglementClass cls = analysis::classify_sigma_alpha(alpha);
  const analysis::PptReport report =
      analysis::ppt_report(states::sigma_alpha(alpha));
  const double residual = analysis::decomposition_residual(alpha);

  print_table(out, format,
              {"alpha", "class", "ppt_min_eig", "decomposition_residual"},
              {Row{{fmt(args.alpha), analysis::to_string(cls),
                    fmt(report.min_eigenvalue), fmt(residual)}}});
  return kExitOk;
}

struct RoundArgs {
  double fidelity = 0.0;
  double alpha = 0.0;
};

int cmd_round(const RoundArgs& args, Format format, std::ostream& out,
              std::ostream& err) {
  states::FidelityParam f(args.fidelity);
  states::AlphaParam alpha(args.alpha);

  const protocol::RoundOutcome outcome =
      protocol::activation_round(states::rho_free(f), states::sigma_alpha(alpha));
  const double p_closed = protocol::predicted_probability(f, alpha);
  const double f_closed = protocol::predicted_fidelity(f, alpha);
  const double f_sim =
      linalg::overlap(states::max_entangled(3), outcome.post_state);

  // The post-selected state must stay inside the rho_free family, with the
  // predicted fidelity; f_closed = 1 (alpha = 5) is the pure limit point.
  linalg::ComplexMatrix expected =
      Complex{f_closed, 0.0} * linalg::projector(states::max_entangled(3)) +
      Complex{1.0 - f_closed, 0.0} * states::sigma_plus().matrix();
  double diff = linalg::max_abs_diff(outcome.post_state.matrix(), expected);
  diff = std::max(diff, std::abs(outcome.p_success - p_closed));
  diff = std::max(diff, std::abs(f_sim - f_closed));

  print_table(out, format,
              {"F", "alpha", "p_sim", "p_closed", "F_sim", "F_closed",
               "max_abs_diff"},
              {Row{{fmt(args.fidelity), fmt(args.alpha), fmt(outcome.p_success),
                    fmt(p_closed), fmt(f_sim), fmt(f_closed), fmt(diff)}}});
  if (diff > kRoundTol) {
    err << "error: simulation deviates from the closed forms by " << fmt(diff)
        << "\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

struct IterateArgs {
  double fidelity = 0.0;
  double alpha = 0.0;
  double target = 0.0;
  int max_rounds = 100;
  std::string mode = "closed-form";
};

int cmd_iterate(const IterateArgs& args, Format format, std::ostream& out,
                std::ostream& err) {
  states::FidelityParam f(args.fidelity);
  states::AlphaParam alpha(args.alpha);
  const protocol::IterationMode mode =
      args.mode == "full-simulation" ? protocol::IterationMode::full_simulation
                                     : protocol::IterationMode::closed_form;

  const protocol::IterationResult result =
      protocol::iterate(f, alpha, args.target, args.max_rounds, mode);

  const double p0 = result.rows.front().p_round;
  std::vector<Row> rows;
  for (const protocol::IterationRow& r : result.rows) {
    rows.push_back(Row{{std::to_string(r.n), fmt(r.fidelity), fmt(r.p_round),
                        fmt(r.cumulative_p), fmt(std::pow(p0, r.n))}});
  }
  print_table(out, format, {"n", "F_n", "p_n", "cum_p", "p0_pow_n"}, rows);

  if (!result.converged) {
    err << "non-convergence: fidelity " << fmt(args.target)
        << " not reached within " << args.max_rounds << " rounds\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

struct TeleportArgs {
  std::string state;
  double fidelity = 0.5;
  bool fidelity_set = false;
  double alpha = 4.0;
  bool alpha_set = false;
  int samples = 10000;
  std::uint64_t seed = 1;
};

int cmd_teleport(const TeleportArgs& args, Format format, std::ostream& out) {
  linalg::DensityMatrix channel = [&]() {
    if (args.state == "psi-plus") {
      return linalg::DensityMatrix(
          linalg::projector(states::max_entangled(3)), {3, 3});
    }
    if (args.state == "rho-free") {
      if (!args.fidelity_set) {
        throw std::invalid_argument("--state rho-free requires --fidelity");
      }
      return states::rho_free(states::FidelityParam(args.fidelity));
    }
    if (args.state == "sigma-alpha") {
      if (!args.alpha_set) {
        throw std::invalid_argument("--state sigma-alpha requires --alpha");
      }
      return states::sigma_alpha(states::AlphaParam(args.alpha));
    }
    throw std::invalid_argument("unknown state selector: " + args.state);
  }();

  const teleport::TransferFidelityEstimate estimate =
      teleport::average_transfer_fidelity(channel, args.samples, args.seed);
  print_table(out, format, {"state", "mean", "std_error", "n_samples", "seed"},
              {Row{{args.state, fmt(estimate.mean), fmt(estimate.std_error),
                    std::to_string(estimate.n_samples),
                    std::to_string(estimate.seed)}}});
  return kExitOk;
}

struct SweepArgs {
  double alpha_min = 2.0;
  double alpha_max = 5.0;
  double alpha_step = 0.25;
  double f_min = 0.05;
  double f_max = 0.95;
  double f_step = 0.05;
};

int cmd_sweep(const SweepArgs& args, Format format, std::ostream& out,
              std::ostream& err) {
  const int n_alpha = grid_count(args.alpha_min, args.alpha_max, args.alpha_step);
  const int n_f = grid_count(args.f_min, args.f_max, args.f_step);
  if (n_alpha == 0 || n_f == 0) {
    err << "error: empty parameter grid\n";
    return kExitInvalidInput;
  }

  std::vector<Row> rows;
  for (int i = 0; i < n_f; ++i) {
    const double fv = args.f_min + i * args.f_step;
    states::FidelityParam f(fv);
    const double witness = analysis::projection_witness(states::rho_free(f));
    for (int j = 0; j < n_alpha; ++j) {
      const double av = args.alpha_min + j * args.alpha_step;
      states::AlphaParam alpha(av);
      const analysis::EntanglementClass cls =
          analysis::classify_sigma_alpha(alpha);
      const analysis::PptReport report =
          analysis::ppt_report(states::sigma_alpha(alpha));
      rows.push_back(Row{{fmt(fv), fmt(av), analysis::to_string(cls),
                          fmt(report.min_eigenvalue),
                          fmt(protocol::predicted_probability(f, alpha)),
                          fmt(protocol::predicted_fidelity(f, alpha)),
                          fmt(witness)}});
    }
  }
  print_table(out, format,
              {"F", "alpha", "class", "ppt_min_eig", "p", "F_prime", "witness"},
              rows);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Two-qutrit entanglement activation simulator"};
  app.require_subcommand(1);

  std::string format_name = "csv";
  auto add_format = [&format_name](CLI::App* cmd) {
    cmd->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "human"}));
  };

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "Entanglement region and PPT spectrum of sigma_alpha");
  classify->add_option("--alpha", classify_args.alpha, "Family parameter")
      ->required();
  add_format(classify);

  RoundArgs round_args;
  CLI::App* round = app.add_subcommand(
      "round", "One simulated post-selection round against the closed forms");
  round->add_option("--fidelity", round_args.fidelity, "Source fidelity F")
      ->required();
  round->add_option("--alpha", round_args.alpha, "Target family parameter")
      ->required();
  add_format(round);

  IterateArgs iterate_args;
  CLI::App* iterate = app.add_subcommand(
      "iterate", "Repeat rounds until a target fidelity is reached");
  iterate->add_option("--fidelity", iterate_args.fidelity, "Initial fidelity")
      ->required();
  iterate->add_option("--alpha", iterate_args.alpha, "Target family parameter")
      ->required();
  iterate->add_option("--target", iterate_args.target, "Fidelity to reach")
      ->required();
  iterate->add_option("--max-rounds", iterate_args.max_rounds,
                      "Round limit (default 100)");
  iterate->add_option("--mode", iterate_args.mode, "closed-form or full-simulation")
      ->check(CLI::IsMember({"closed-form", "full-simulation"}));
  add_format(iterate);

  TeleportArgs teleport_args;
  CLI::App* teleport_cmd = app.add_subcommand(
      "teleport", "Monte Carlo transfer fidelity through a channel state");
  teleport_cmd
      ->add_option("--state", teleport_args.state,
                   "psi-plus, rho-free or sigma-alpha")
      ->required();
  teleport_cmd->add_option("--fidelity", teleport_args.fidelity,
                           "Fidelity for rho-free");
  teleport_cmd->add_option("--alpha", teleport_args.alpha,
                           "Parameter for sigma-alpha");
  teleport_cmd->add_option("--samples", teleport_args.samples,
                           "Sample count (default 10000)")
      ->check(CLI::PositiveNumber);
  teleport_cmd->add_option("--seed", teleport_args.seed, "RNG seed (default 1)");
  add_format(teleport_cmd);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Classification, closed forms and witness over an (F, alpha) grid");
  sweep->add_option("--alpha-min", sweep_args.alpha_min, "default 2.0");
  sweep->add_option("--alpha-max", sweep_args.alpha_max, "default 5.0");
  sweep->add_option("--alpha-step", sweep_args.alpha_step, "default 0.25");
  sweep->add_option("--f-min", sweep_args.f_min, "default 0.05");
  sweep->add_option("--f-max", sweep_args.f_max, "default 0.95");
  sweep->add_option("--f-step", sweep_args.f_step, "default 0.05");
  add_format(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  teleport_args.fidelity_set = teleport_cmd->count("--fidelity") > 0;
  teleport_args.alpha_set = teleport_cmd->count("--alpha") > 0;
  const Format format = format_name == "human" ? Format::human : Format::csv;

  try {
    if (classify->parsed()) return cmd_classify(classify_args, format, out);
    if (round->parsed()) return cmd_round(round_args, format, out, err);
    if (iterate->parsed()) return cmd_iterate(iterate_args, format, out, err);
    if (teleport_cmd->parsed()) return cmd_teleport(teleport_args, format, out);
    if (sweep->parsed()) return cmd_sweep(sweep_args, format, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const protocol::no_convergence_error& e) {
    err << "non-convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariantViolation;
  }
  return kExitInvalidInput;
}

}  // namespace qta::cli

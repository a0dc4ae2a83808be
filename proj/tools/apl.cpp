// apl: command-line front end for the accessibility and NK experiments.
//
// Exit status: 0 on success, 1 when a validation fails or a run errors
// out, 2 on bad usage.

#include <omp.h>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "apl/analytic.hpp"
#include "apl/emit.hpp"
#include "apl/harness.hpp"
#include "apl/hypercube.hpp"
#include "apl/oracle.hpp"

namespace {

using namespace apl;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_usage = 2;

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "-";
  emit::Format format = emit::Format::csv;
};

std::string big_to_string(analytic::BigCount v) {
  if (v == 0) return "0";
  std::string digits;
  while (v > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return digits;
}

int cmd_constants(const Globals& g, double beta, double eps, int N) {
  const auto c = analytic::make_constants(beta, eps);
  std::string json = "{\n";
  const auto field = [&](const char* name, double v, bool last = false) {
    json += std::string("  \"") + name + "\": " + emit::format_real(v) + (last ? "\n" : ",\n");
  };
  field("beta", c.beta);
  field("x0", c.x0);
  field("f_prime_x0", c.f_prime_x0);
  field("alpha", c.alpha);
  field("gamma", c.gamma);
  field("epsilon", c.epsilon);
  field("epsilon1", c.epsilon1);
  field("epsilon2", c.epsilon2);
  field("epsilon3", c.epsilon3);
  field("epsilon4", c.epsilon4);
  if (N > 0) {
    field("delta", c.delta);
    json += "  \"N\": " + std::to_string(N) + ",\n";
    field("x_c", analytic::critical_x(N, beta), true);
  } else {
    field("delta", c.delta, true);
  }
  json += "}\n";
  emit::write_output(g.out, json);
  return exit_ok;
}

int cmd_series(const Globals& g, int N, int ell_max) {
  emit::Table t{{"n", "N", "ell", "count"}, {}};
  for (int n = 0; n <= N; ++n)
    for (int ell = 0; ell <= ell_max; ++ell)
      t.rows.push_back({std::to_string(n), std::to_string(N), std::to_string(ell),
                        big_to_string(analytic::m_coefficient_wide(n, N, ell))});
  emit::write_output(g.out, emit::render(t, g.format));
  return exit_ok;
}

int cmd_trial(const Globals& g, int N, int n, double x) {
  const hypercube::LazyField field(N, n, x, g.seed);
  hypercube::SearchScratch scratch;
  const auto r = hypercube::is_accessible(field, scratch, true);
  std::string json = "{\n  \"N\": " + std::to_string(N) + ",\n  \"n\": " + std::to_string(n) +
                     ",\n  \"x\": " + emit::format_real(x) + ",\n  \"seed\": " +
                     std::to_string(g.seed) + ",\n  \"accessible\": " +
                     (r.accessible ? "true" : "false") + ",\n  \"visited_count\": " +
                     std::to_string(r.visited_count) + ",\n  \"path_witness\": ";
  if (r.path_witness) {
    json += "[";
    for (std::size_t i = 0; i < r.path_witness->size(); ++i)
      json += (i ? ", " : "") + std::to_string((*r.path_witness)[i].bits);
    json += "]";
  } else {
    json += "null";
  }
  json += "\n}\n";
  emit::write_output(g.out, json);
  return exit_ok;
}

int cmd_oracle(const Globals& g, bool inject_fault) {
  const auto report = oracle::run_oracle_validation({inject_fault});
  std::string text;
  for (const auto& c : report.checks)
    text += std::string(c.passed ? "PASS  " : "FAIL  ") + c.name + ": " + c.detail + "\n";
  emit::write_output(g.out, text);
  return report.all_passed() ? exit_ok : exit_validation;
}

int cmd_seqmodel(const Globals& g, int N, double beta, double x, std::uint64_t trials,
                 double eps, sequence::GoodnessMode mode) {
  const auto rows = harness::run_seqmodel(N, beta, x, trials, eps, mode, g.seed, g.threads);
  emit::write_output(g.out, emit::render(emit::seqmodel_table(rows), g.format));
  return exit_ok;
}

int emit_sweep(const Globals& g, const harness::ExperimentPlan& plan) {
  try {
    const auto result = harness::run_transition_sweep(plan);
    emit::write_output(g.out, emit::render(result, g.format));
    return exit_ok;
  } catch (const harness::SweepError& e) {
    emit::write_output(g.out, emit::render(e.partial(), g.format));
    std::cerr << "apl: sweep aborted: " << e.what() << "\n";
    return exit_validation;
  }
}

int cmd_window(const Globals& g, const std::vector<int>& Ns, double beta, double delta,
               std::uint64_t trials, bool timing) {
  const auto w =
      harness::run_critical_window(Ns, beta, delta, trials, g.seed, g.threads, timing);
  emit::write_output(g.out, emit::render(w.sweep, g.format));
  std::cerr << "all estimates strictly inside (0,1): " << (w.all_inside ? "yes" : "no") << "\n";
  return exit_ok;
}

int cmd_nk(const Globals& g, int N, int K, int seeds, harness::NkMode mode) {
  const auto rows = harness::run_nk(N, K, seeds, mode, g.seed, g.threads);
  emit::write_output(g.out, emit::render(emit::nk_table(rows), g.format));
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accessibility percolation and NK landscape experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style key = value file; command-line flags win");

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  auto* threads_opt =
      app.add_option("--threads", g.threads, "Worker threads (0: OpenMP default; env APL_THREADS)")
          ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  const std::map<std::string, emit::Format> formats{{"csv", emit::Format::csv},
                                                     {"json", emit::Format::json}};
  app.add_option("--format", g.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  double beta = 1.0;
  double eps = 0.05;
  int N = 0;

  auto* constants = app.add_subcommand("constants", "Threshold constants as JSON");
  constants->add_option("--beta", beta, "Odd fraction n/N")->capture_default_str();
  constants->add_option("--eps", eps, "Tolerance epsilon")->capture_default_str();
  constants->add_option("--N", N, "Dimension for x_c(N)");

  int series_N = 4;
  int ell_max = 8;
  auto* series = app.add_subcommand("series", "Exact path counts M(n, l) as a table");
  series->add_option("--N", series_N, "Dimension")->check(CLI::Range(1, 64))->capture_default_str();
  series->add_option("--ell-max", ell_max, "Largest length")
      ->check(CLI::Range(0, 200))
      ->capture_default_str();

  int trial_N = 10;
  int trial_n = 0;
  double trial_x = 0.9;
  auto* trial = app.add_subcommand("trial", "One sampled field, accessibility as JSON");
  trial->add_option("--N", trial_N, "Dimension")->capture_default_str();
  trial->add_option("--n", trial_n, "Target distance (default N)");
  trial->add_option("--x", trial_x, "Gap X(w)")->capture_default_str();

  bool inject_fault = false;
  auto* oracle_cmd = app.add_subcommand("oracle-validate", "Cross-checks with exact answers");
  oracle_cmd->add_flag("--inject-parity-fault", inject_fault,
                       "Corrupt the enumeration to exercise the checker");

  int seq_N = 100;
  double seq_x = 0.0;
  std::uint64_t seq_trials = 1000;
  sequence::GoodnessMode seq_mode = sequence::GoodnessMode::antipodal;
  const std::map<std::string, sequence::GoodnessMode> modes{
      {"antipodal", sequence::GoodnessMode::antipodal},
      {"general", sequence::GoodnessMode::general}};
  auto* seqmodel = app.add_subcommand("seqmodel", "Continuous-model paths and goodness");
  seqmodel->add_option("--beta", beta, "Odd fraction n/N")->capture_default_str();
  seqmodel->add_option("--n", seq_N, "Dimension")->capture_default_str();
  seqmodel->add_option("--x", seq_x, "Gap (default x0)");
  seqmodel->add_option("--trials", seq_trials, "Paths to draw")->capture_default_str();
  seqmodel->add_option("--eps", eps, "Tolerance epsilon")->capture_default_str();
  seqmodel->add_option("--mode", seq_mode, "Goodness clauses")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  std::vector<int> Ns{10, 12, 14};
  std::vector<double> offsets{-0.1, 0.0, 0.1};
  std::uint64_t trials = 1000;
  bool no_timing = false;
  harness::OffsetMode offset_mode = harness::OffsetMode::absolute;
  const std::map<std::string, harness::OffsetMode> offset_modes{
      {"absolute", harness::OffsetMode::absolute}, {"scaled", harness::OffsetMode::scaled}};
  auto* sweep = app.add_subcommand("sweep", "Accessibility over an (N, x) grid");
  sweep->add_option("--N", Ns, "Dimensions")->delimiter(',')->capture_default_str();
  sweep->add_option("--beta", beta, "Odd fraction n/N")->capture_default_str();
  sweep->add_option("--offsets", offsets, "x offsets from x_c(N)")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--offset-mode", offset_mode, "absolute: x_c + o; scaled: x_c + o/N")
      ->transform(CLI::CheckedTransformer(offset_modes, CLI::ignore_case));
  sweep->add_option("--trials", trials, "Fields per cell")->capture_default_str();
  sweep->add_flag("--no-timing", no_timing, "Write wall_time as 0 for byte-stable files");

  double delta = 1.0;
  auto* window = app.add_subcommand("window", "Estimates at x_c(N) -/+ Delta/N");
  window->add_option("--N", Ns, "Dimensions")->delimiter(',')->capture_default_str();
  window->add_option("--beta", beta, "Odd fraction n/N")->capture_default_str();
  window->add_option("--delta", delta, "Window half-width Delta")->capture_default_str();
  window->add_option("--trials", trials, "Fields per cell")->capture_default_str();
  window->add_flag("--no-timing", no_timing, "Write wall_time as 0 for byte-stable files");

  int nk_N = 12;
  int nk_K = 2;
  int nk_seeds = 10;
  harness::NkMode nk_mode = harness::NkMode::exhaustive;
  const std::map<std::string, harness::NkMode> nk_modes{{"exhaustive", harness::NkMode::exhaustive},
                                                       {"greedy", harness::NkMode::greedy},
                                                       {"walk", harness::NkMode::walk},
                                                       {"iidcheck", harness::NkMode::iidcheck}};
  auto* nk_cmd = app.add_subcommand("nk", "NK landscape maxima");
  nk_cmd->add_option("--n", nk_N, "Genome length N")->capture_default_str();
  nk_cmd->add_option("--k", nk_K, "Window length K")->capture_default_str();
  nk_cmd->add_option("--seeds", nk_seeds, "Landscape replicas")->capture_default_str();
  nk_cmd->add_option("--mode", nk_mode, "exhaustive, greedy, walk or iidcheck")
      ->transform(CLI::CheckedTransformer(nk_modes, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  // Read by hand: CLI11 silently drops environment values that fail validation.
  if (threads_opt->count() == 0) {
    if (const char* env = std::getenv("APL_THREADS"); env && *env) {
      const std::string_view text(env);
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), g.threads);
      if (ec != std::errc{} || end != text.data() + text.size() || g.threads < 0) {
        std::cerr << "APL_THREADS must be a nonnegative integer, got '" << text << "'\n";
        return exit_usage;
      }
    }
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*constants) return cmd_constants(g, beta, eps, N);
    if (*series) return cmd_series(g, series_N, ell_max);
    if (*trial) return cmd_trial(g, trial_N, trial_n > 0 ? trial_n : trial_N, trial_x);
    if (*oracle_cmd) return cmd_oracle(g, inject_fault);
    if (*seqmodel) {
      const double x = seq_x > 0.0 ? seq_x : analytic::solve_x0(beta);
      return cmd_seqmodel(g, seq_N, beta, x, seq_trials, eps, seq_mode);
    }
    if (*sweep) {
      harness::ExperimentPlan plan;
      plan.N_list = Ns;
      plan.beta = beta;
      plan.offsets = offsets;
      plan.offset_mode = offset_mode;
      plan.trials = trials;
      plan.master_seed = g.seed;
      plan.thread_count = g.threads;
      plan.record_time = !no_timing;
      return emit_sweep(g, plan);
    }
    if (*window) return cmd_window(g, Ns, beta, delta, trials, !no_timing);
    if (*nk_cmd) return cmd_nk(g, nk_N, nk_K, nk_seeds, nk_mode);
  } catch (const std::domain_error& e) {
    std::cerr << "apl: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "apl: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::length_error& e) {
    std::cerr << "apl: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "apl: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_usage;
}

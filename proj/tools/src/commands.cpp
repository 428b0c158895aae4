// Copyright 2026 The ucal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "components.hpp"
#include "ucal/engine.hpp"
#include "ucal/minimax.hpp"

namespace ucal::cli {
namespace {

constexpr double kBoundTolerance = 1e-12;
constexpr double kAgreementTolerance = 1e-8;

void check_run_options(const RunOptions& o) {
  if (o.num_outcomes < 2) throw UsageError("--K must be at least 2");
  if (o.horizon < 1) throw UsageError("--T must be at least 1");
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.losses.empty()) throw UsageError("at least one --loss is required");
}

struct Experiment {
  ForecasterSpec forecaster;
  Adversary adversary;
  std::vector<ProperLoss> losses;
};

Experiment resolve(const RunOptions& o) {
  Experiment ex{parse_forecaster(o.forecaster, o.num_outcomes),
                parse_adversary(o.adversary, o.num_outcomes),
                parse_losses(o.losses, o.num_outcomes)};
  return ex;
}

void check_sequence_length(const Adversary& adv, std::int64_t horizon) {
  if (adv.kind() == AdversaryKind::kFixed &&
      static_cast<std::int64_t>(adv.sequence_length()) < horizon) {
    throw UsageError("outcome file has " + std::to_string(adv.sequence_length()) +
                     " rounds but T = " + std::to_string(horizon));
  }
}

// Rows ordered by (trial, loss).
void append_rows(const RunOptions& o, const Experiment& ex, std::int64_t horizon,
                 const CalibrationEstimate& est, std::vector<RegretRow>& rows) {
  const std::string forecaster = ex.forecaster.name();
  const std::string adversary = ex.adversary.name();
  for (int trial = 0; trial < est.trials; ++trial) {
    for (std::size_t j = 0; j < est.loss_ids.size(); ++j) {
      rows.push_back({o.experiment, forecaster, adversary, est.loss_ids[j], o.num_outcomes,
                      horizon, trial, o.seed, est.regrets[trial][j]});
    }
  }
}

std::string summary_line(std::int64_t horizon, const CalibrationEstimate& est) {
  std::ostringstream s;
  s << "T=" << horizon << " trials=" << est.trials << " pucal=" << format_real(est.pucal)
    << " (" << est.loss_ids[est.pucal_loss] << ") ucal=" << format_real(est.ucal)
    << " std_error=" << format_real(est.std_error);
  return s.str();
}

// Writes to the named file, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

}  // namespace

std::vector<std::int64_t> horizon_grid(std::int64_t lo, std::int64_t hi, double factor) {
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= T-min <= T-max");
  if (!(factor > 1.0)) throw UsageError("--factor must exceed 1");
  std::vector<std::int64_t> grid;
  for (std::int64_t t = lo; t <= hi;) {
    grid.push_back(t);
    const auto scaled = static_cast<std::int64_t>(std::ceil(static_cast<double>(t) * factor));
    t = std::max(t + 1, scaled);
  }
  return grid;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  check_run_options(opts);
  const Experiment ex = resolve(opts);
  check_sequence_length(ex.adversary, opts.horizon);

  const auto est = estimate_calibration(ex.forecaster, ex.adversary, ex.losses, opts.horizon,
                                        opts.trials, opts.seed, opts.threads);
  std::vector<RegretRow> rows;
  append_rows(opts, ex, opts.horizon, est, rows);

  Sink sink(opts.output, out);
  write_regret_csv(sink.get(), rows);
  (sink.to_file() ? out : err) << summary_line(opts.horizon, est) << '\n';
  return kExitOk;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  const auto grid = horizon_grid(opts.horizon_min, opts.horizon_max, opts.factor);
  RunOptions first = opts.run;
  first.horizon = grid.front();
  check_run_options(first);
  const Experiment ex = resolve(opts.run);
  check_sequence_length(ex.adversary, grid.back());

  Sink sink(opts.run.output, out);
  std::ostream& log = sink.to_file() ? out : err;
  sink.get() << kRegretCsvHeader << '\n';
  for (std::int64_t horizon : grid) {
    const auto est = estimate_calibration(ex.forecaster, ex.adversary, ex.losses, horizon,
                                          opts.run.trials, opts.run.seed, opts.run.threads);
    std::vector<RegretRow> rows;
    append_rows(opts.run, ex, horizon, est, rows);
    write_regret_csv(sink.get(), rows, false);
    log << summary_line(horizon, est) << '\n';
  }
  return kExitOk;
}

int cmd_minimax(const MinimaxOptions& opts, std::ostream& out, std::ostream& err) {
  const bool want_dp = opts.mode == "dp" || opts.mode == "both";
  const bool want_closed = opts.mode == "closed" || opts.mode == "both";
  if (!want_dp && !want_closed) throw UsageError("--mode must be dp, closed or both");
  if (opts.horizon < 1) throw UsageError("--T must be at least 1");
  if (want_dp && opts.horizon > minimax::kMaxDpHorizon) {
    throw UsageError("dp mode supports T <= " + std::to_string(minimax::kMaxDpHorizon));
  }
  if (opts.check_bounds && opts.horizon < 2) throw UsageError("--check-bounds needs T >= 2");

  int status = kExitOk;
  std::optional<minimax::MinimaxTable> table;
  std::optional<minimax::ClosedFormSequences> seq;
  if (want_dp) {
    table = minimax::dp_value(opts.horizon);
    out << "dp_value=" << format_real(table->value) << '\n';
    if (!table->middle_branch_everywhere()) {
      err << "middle branch not taken at " << table->states - table->middle_branch
          << " states\n";
      status = kExitCheckFailed;
    }
  }
  if (want_closed || opts.check_bounds || !opts.csv.empty()) {
    seq = minimax::closed_form(opts.horizon);
    if (want_closed) out << "closed_form_value=" << format_real(seq->value) << '\n';
  }
  if (want_dp && want_closed) {
    const double gap = std::abs(table->value - seq->value);
    out << "agreement_gap=" << format_real(gap) << '\n';
    if (!(gap <= kAgreementTolerance)) {
      err << "dp and closed form disagree by " << format_real(gap) << '\n';
      status = kExitCheckFailed;
    }
  }
  if (opts.check_bounds) {
    const auto check = minimax::check_a_bounds(*seq);
    out << "max_upper_violation=" << format_real(check.max_upper_violation) << '\n'
        << "max_lower_violation=" << format_real(check.max_lower_violation) << '\n'
        << "value_lower_bound=" << format_real(check.value_lower_bound) << '\n';
    if (check.max_upper_violation > kBoundTolerance ||
        check.max_lower_violation > kBoundTolerance || check.value_violation > 0.0) {
      err << "sandwich bounds violated\n";
      status = kExitCheckFailed;
    }
  }
  if (!opts.csv.empty()) {
    Sink sink(opts.csv, out);
    auto& csv = sink.get();
    csv << "r,u_r,v_r,a_r,upper_bound,lower_bound\n";
    const std::int64_t horizon = opts.horizon;
    for (std::int64_t r = 0; r < horizon; ++r) {
      csv << r << ',' << format_real(seq->u[r]) << ',' << format_real(seq->v[r]) << ','
          << format_real(seq->a[r]) << ',' << format_real(minimax::a_upper_bound(r, horizon))
          << ',' << format_real(minimax::a_lower_bound(r, horizon)) << '\n';
    }
  }
  return status;
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.num_outcomes < 2) throw UsageError("--K must be at least 2");
  if (opts.pairs < 1) throw UsageError("--pairs must be at least 1");

  std::string name = opts.loss;
  std::optional<double> alpha = opts.alpha;
  std::optional<double> scale = opts.scale;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    // "tsallis:1.5" / "squared:0.5" shorthand
    const ProperLoss parsed = parse_loss(name, opts.num_outcomes);
    name = name.substr(0, colon);
    if (parsed.kind() == LossKind::kTsallis && !alpha) alpha = parsed.alpha();
    if (parsed.kind() == LossKind::kSquared && !scale) scale = parsed.scale();
  }

  std::optional<ProperLoss> loss;
  try {
    if (name == "tsallis") {
      if (!alpha) throw UsageError("tsallis needs --alpha");
      loss = ProperLoss::tsallis(opts.num_outcomes, *alpha, scale.value_or(0.0));
    } else if (name == "squared") {
      loss = ProperLoss::squared(opts.num_outcomes, scale.value_or(1.0));
    } else if (name == "spherical") {
      loss = ProperLoss::spherical(opts.num_outcomes);
    } else if (name == "vshaped") {
      loss = ProperLoss::vshaped(opts.num_outcomes);
    } else {
      throw UsageError("unknown loss '" + opts.loss + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError("loss parameters: " + std::string(e.what()));
  }

  ValidationSuiteOptions suite;
  suite.pairs = opts.pairs;
  suite.seed = opts.seed;
  suite.tol = opts.tol;
  const auto result = run_validation_suite(*loss, suite);
  const auto& r = result.report;
  out << "loss=" << loss->id() << " K=" << opts.num_outcomes << '\n'
      << "pairs_checked=" << r.pairs_checked << '\n'
      << "properness_violations=" << r.properness_violations << '\n'
      << "max_violation=" << format_real(r.max_violation) << '\n'
      << "concavity_violations=" << r.concavity_violations << '\n'
      << "range_min=" << format_real(r.range_min) << '\n'
      << "range_max=" << format_real(r.range_max) << '\n'
      << "lipschitz_estimate=" << format_real(r.lipschitz_estimate) << '\n'
      << "bounded=" << (result.bounded ? "yes" : "no") << '\n';
  if (loss->kind() == LossKind::kTsallis) {
    out << "hessian_growth=" << (result.hessian_growth ? "yes" : "no") << '\n';
  }
  out << "result=" << (result.passed() ? "pass" : "fail") << '\n';
  if (!result.passed()) {
    err << "validation failed for " << loss->id() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

namespace {

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--forecaster", o.forecaster,
                  "ftl | ftpl | ftpl-geometric | ftpl-uniform | static:p1,p2,...")
      ->required();
  cmd->add_option("--adversary", o.adversary,
                  "iid | alternating | fixed:<path> | greedy:<loss>")
      ->required();
  cmd->add_option("--loss", o.losses, "vshaped | spherical | squared[:scale] | tsallis:<alpha>")
      ->required();
  cmd->add_option("--K", o.num_outcomes, "number of outcomes")->required();
  cmd->add_option("--trials", o.trials, "independent trials")->capture_default_str();
  cmd->add_option("--seed", o.seed, "base seed; trial i uses stream (seed, i)")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0: UCAL_THREADS or all cores)")
      ->capture_default_str();
  cmd->add_option("--experiment", o.experiment, "label for the experiment column")
      ->capture_default_str();
  cmd->add_option("--output,-o", o.output, "CSV path (default: standard output)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online forecasting regret experiments and minimax computations", "ucal"};
  app.set_config("--config", "", "key=value config file; flags override it");
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "play repeated games and write per-trial regrets");
  add_run_flags(run, run_opts);
  run->add_option("--T", run_opts.horizon, "horizon")->required();

  SweepOptions sweep_opts;
  sweep_opts.run.experiment = "sweep";
  sweep_opts.run.trials = 20;
  auto* sweep = app.add_subcommand("sweep", "run over a geometric grid of horizons");
  add_run_flags(sweep, sweep_opts.run);
  sweep->add_option("--T-min", sweep_opts.horizon_min, "smallest horizon")->capture_default_str();
  sweep->add_option("--T-max", sweep_opts.horizon_max, "largest horizon")->capture_default_str();
  sweep->add_option("--factor", sweep_opts.factor, "grid ratio")->capture_default_str();

  MinimaxOptions mm_opts;
  auto* mm = app.add_subcommand("minimax", "exact squared-loss game value for K = 2");
  mm->add_option("--T", mm_opts.horizon, "horizon")->required();
  mm->add_option("--mode", mm_opts.mode, "dp | closed | both")
      ->check(CLI::IsMember({"dp", "closed", "both"}))
      ->capture_default_str();
  mm->add_flag("--check-bounds", mm_opts.check_bounds, "verify the a_r sandwich bounds");
  mm->add_option("--csv", mm_opts.csv, "write r,u_r,v_r,a_r,upper_bound,lower_bound");

  ValidateOptions val_opts;
  auto* val = app.add_subcommand("validate", "properness, range and curvature checks");
  val->add_option("--loss", val_opts.loss, "vshaped | spherical | squared | tsallis")->required();
  val->add_option("--alpha", val_opts.alpha, "tsallis exponent (> 1)");
  val->add_option("--scale", val_opts.scale, "loss scale");
  val->add_option("--K", val_opts.num_outcomes, "number of outcomes")->capture_default_str();
  val->add_option("--pairs", val_opts.pairs, "random pairs for properness")
      ->capture_default_str();
  val->add_option("--seed", val_opts.seed, "sampling seed")->capture_default_str();
  val->add_option("--tol", val_opts.tol, "violation tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_opts, out, err);
    if (*sweep) return cmd_sweep(sweep_opts, out, err);
    if (*mm) return cmd_minimax(mm_opts, out, err);
    if (*val) return cmd_validate(val_opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace ucal::cli

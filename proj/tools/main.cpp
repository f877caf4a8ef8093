// SPDX-License-Identifier: Apache-2.0
//
// etamu: sweeps and self-checks for the generalized-fading performance
// library.  Subcommands: aber, acc, validate, fit.  Exit codes: 0 success,
// 1 validation failure, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "etamu/approx.hpp"
#include "etamu/errors.hpp"
#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"
#include "etamu/noise.hpp"
#include "etamu/oracle.hpp"
#include "scenario.hpp"
#include "validate.hpp"

namespace {

using namespace etamu;
using etamu_cli::Scenario;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string scenario_path;
  std::string out;
  std::string grid;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double budget = 0.0;
  bool budget_set = false;
};

// Scenario file first, command-line flags on top.
Scenario load_scenario(const Overrides& ov) {
  if (ov.scenario_path.empty()) {
    throw std::runtime_error("missing --scenario <path>");
  }
  Scenario s = etamu_cli::parse_scenario_file(ov.scenario_path);
  if (!ov.out.empty()) s.out_path = ov.out;
  if (!ov.grid.empty()) {
    etamu_cli::parse_grid_spec(ov.grid, &s.start_db, &s.stop_db, &s.step_db);
    s.grid_set = true;
  }
  if (ov.seed_set) s.seed = ov.seed;
  if (ov.budget_set) s.budget = ov.budget;
  if (!s.grid_set) throw std::runtime_error("no SNR grid (scenario grid.* or --grid)");
  if (s.out_path.empty()) throw std::runtime_error("no output path (scenario out= or --out)");
  return s;
}

// "qa2" / "qa0.5" -> preset; anything else is a configuration error.
ExpSumApprox resolve_preset(const std::string& name) {
  if (name.rfind("qa", 0) == 0) {
    size_t pos = 0;
    const std::string num = name.substr(2);
    const double a = std::stod(num, &pos);
    if (pos == num.size()) return preset_qa(a);
  }
  throw std::runtime_error("unknown preset '" + name +
                           "' (expected qa0.5, qa1, qa1.5, qa2, qa2.5)");
}

ExpSumApprox load_fit_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open fit record '" + path + "'");
  return parse_expsum(in);
}

ExpSumApprox resolve_rate_approx(const Scenario& s) {
  if (!s.approx_fit_path.empty()) return load_fit_record(s.approx_fit_path);
  if (!s.approx_preset.empty()) return resolve_preset(s.approx_preset);
  return preset_qa(s.noise_a);  // throws for an a with no built-in row
}

ExpSumApprox resolve_capacity_approx(const Scenario& s) {
  if (!s.approx_preset.empty()) {
    throw std::runtime_error(
        "capacity sweeps take approx.fit or the built-in log fit, not a preset");
  }
  if (!s.approx_fit_path.empty()) {
    const auto approx = load_fit_record(s.approx_fit_path);
    if (approx.kind != ApproxKind::saturating) {
      throw std::runtime_error("capacity fit record must be saturating");
    }
    return approx;
  }
  return fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
}

std::string csv_row(double a, double b, double c, double d) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", a, b, c, d);
  return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << bytes;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

int run_sweep(const Overrides& ov, bool capacity) {
  Scenario s;
  FadingSpec spec;
  ModulationSpec mod;
  NoiseSpec noise;
  ExpSumApprox approx;
  std::vector<double> grid;
  try {
    s = load_scenario(ov);
    spec = make_fading(s.format, s.eta, s.mu, s.branches, 1.0);
    if (!capacity) {
      mod = modulation_params(s.scheme, s.M);
      noise = make_noise(s.noise_a);
      approx = resolve_rate_approx(s);
    } else {
      approx = resolve_capacity_approx(s);
    }
    grid = etamu_cli::make_grid(s);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: configuration error: %s\n", capacity ? "acc" : "aber",
                 e.what());
    return kExitConfig;
  }

  std::string csv = capacity ? "snr_db,acc_closed,acc_quadrature,rel_diff\n"
                             : "snr_db,aber_closed,aber_quadrature,rel_diff\n";
  std::size_t flagged = 0;
  for (double db : grid) {
    double closed = 0.0, oracle = 0.0;
    try {
      auto at = spec;
      at.mean_snr = std::pow(10.0, db / 10.0);
      if (capacity) {
        closed = acc(at, approx);
        oracle = acc_quadrature(at);
      } else {
        closed = aber(at, mod, approx);
        oracle = aber_quadrature(at, mod, noise);
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s: numerical failure at %g dB: %s\n",
                   capacity ? "acc" : "aber", db, e.what());
      return kExitNumerical;
    }
    // Both metrics are bounded (a scaled probability, or a capacity of at
    // most a few hundred bits at any representable SNR); a value beyond any
    // physical magnitude means the expansion lost all significance.
    const auto sane = [](double v) { return std::isfinite(v) && std::fabs(v) < 1e6; };
    if (!sane(closed) || !sane(oracle)) {
      std::fprintf(stderr,
                   "%s: numerical failure at %g dB: result out of range "
                   "(closed=%g, quadrature=%g)\n",
                   capacity ? "acc" : "aber", db, closed, oracle);
      return kExitNumerical;
    }
    const double rel_diff = std::fabs(closed - oracle) / std::max(std::fabs(oracle), 1e-300);
    if (rel_diff > s.budget) {
      ++flagged;
      std::fprintf(stderr, "%s: flagged %g dB: rel_diff %.3e exceeds budget %g\n",
                   capacity ? "acc" : "aber", db, rel_diff, s.budget);
    }
    csv += csv_row(db, closed, oracle, rel_diff);
  }

  try {
    write_file(s.out_path, csv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: configuration error: %s\n", capacity ? "acc" : "aber",
                 e.what());
    return kExitConfig;
  }
  std::printf("%s: %zu rows, %zu flagged (budget %g) -> %s\n",
              capacity ? "acc" : "aber", grid.size(), flagged, s.budget,
              s.out_path.c_str());
  return kExitOk;
}

int run_fit(const std::string& target, const std::string& kind_text,
            const std::string& domain, const std::string& out) {
  FitTarget ft;
  double a = 0.0;
  ApproxKind kind;
  double lo = 0.0, hi = 0.0;
  try {
    if (target == "log2") {
      ft = FitTarget::log2;
      lo = 1e-3;
      hi = 1e3;
    } else if (target.rfind("qa", 0) == 0) {
      ft = FitTarget::qa;
      size_t pos = 0;
      const std::string num = target.substr(2);
      a = std::stod(num, &pos);
      if (pos != num.size() || !(a > 0.0)) {
        throw std::runtime_error("bad tail shape in '" + target + "'");
      }
      lo = 0.35;
      hi = 40.0;
    } else {
      throw std::runtime_error("unknown fit target '" + target +
                               "' (expected log2 or qa<a>)");
    }
    if (kind_text == "decaying") {
      kind = ApproxKind::decaying;
    } else if (kind_text == "saturating") {
      kind = ApproxKind::saturating;
    } else {
      throw std::runtime_error("unknown kind '" + kind_text +
                               "' (expected decaying or saturating)");
    }
    if (!domain.empty()) {
      const size_t colon = domain.find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("domain must be lo:hi, got '" + domain + "'");
      }
      size_t p1 = 0, p2 = 0;
      const std::string lo_text = domain.substr(0, colon);
      const std::string hi_text = domain.substr(colon + 1);
      lo = std::stod(lo_text, &p1);
      hi = std::stod(hi_text, &p2);
      if (p1 != lo_text.size() || p2 != hi_text.size() || !(lo > 0.0) || !(hi > lo)) {
        throw std::runtime_error("domain must satisfy 0 < lo < hi, got '" + domain + "'");
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fit: configuration error: %s\n", e.what());
    return kExitConfig;
  }

  ExpSumApprox fit;
  try {
    fit = fit_expsum(ft, a, kind, lo, hi);
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "fit: did not converge: %s (best residual %.17g)\n",
                 e.what(), e.best_estimate());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fit: configuration error: %s\n", e.what());
    return kExitConfig;
  }

  const std::string record = serialize_expsum(fit, target);
  if (!out.empty()) {
    try {
      write_file(out, record);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "fit: configuration error: %s\n", e.what());
      return kExitConfig;
    }
    std::printf("fit %s %s [%g, %g] -> %s\n", target.c_str(), kind_text.c_str(), lo,
                hi, out.c_str());
  } else {
    std::fputs(record.c_str(), stdout);
  }
  std::printf("max_abs_err = %.17g\n", fit.max_abs_err);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"average error rate and capacity for generalized fading channels"};
  app.require_subcommand(1);

  Overrides ov;
  std::string suite = "all";
  std::string fit_target, fit_kind, fit_domain, fit_out;
  std::uint64_t validate_seed = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", ov.scenario_path, "scenario file (key=value)");
    cmd->add_option("--out", ov.out, "output CSV path (overrides scenario)");
    cmd->add_option("--grid", ov.grid, "SNR grid start:stop:step in dB");
    cmd->add_option("--seed", ov.seed, "seed override")->each([&](const std::string&) {
      ov.seed_set = true;
    });
    cmd->add_option("--budget", ov.budget, "flag rows whose rel_diff exceeds this")
        ->each([&](const std::string&) { ov.budget_set = true; });
  };

  CLI::App* aber_cmd =
      app.add_subcommand("aber", "sweep average bit/symbol error rate vs mean SNR");
  add_common(aber_cmd);
  CLI::App* acc_cmd =
      app.add_subcommand("acc", "sweep average channel capacity vs mean SNR");
  add_common(acc_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "run self-check suites");
  validate_cmd
      ->add_option("suite", suite,
                   "pdf | noise | kernel | special_cases | hoyt_arbitration | all")
      ->required();
  validate_cmd->add_option("--seed", validate_seed, "seed for sampled checks");

  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit an exponential-sum approximation");
  fit_cmd->add_option("target", fit_target, "log2 or qa<a> (e.g. qa2)")->required();
  fit_cmd->add_option("kind", fit_kind, "decaying or saturating")->required();
  fit_cmd->add_option("domain", fit_domain, "fit window lo:hi (optional)");
  fit_cmd->add_option("--out", fit_out, "write the record here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (aber_cmd->parsed()) return run_sweep(ov, false);
  if (acc_cmd->parsed()) return run_sweep(ov, true);
  if (fit_cmd->parsed()) return run_fit(fit_target, fit_kind, fit_domain, fit_out);
  if (validate_cmd->parsed()) {
    try {
      const int fails = etamu_cli::run_validate(suite, validate_seed);
      return fails > 0 ? kExitValidation : kExitOk;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "validate: configuration error: %s\n", e.what());
      return kExitConfig;
    }
  }
  return kExitConfig;
}

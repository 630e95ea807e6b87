// Copyright 2026 The traceineq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "traceineq/ensembles.hpp"
#include "traceineq/inequalities.hpp"
#include "traceineq/oracles.hpp"
#include "traceineq/reliability.hpp"
#include "traceineq/report.hpp"
#include "traceineq/search.hpp"

namespace {

namespace ensembles = traceineq::ensembles;
namespace inequalities = traceineq::inequalities;
namespace oracles = traceineq::oracles;
namespace reliability = traceineq::reliability;
namespace search = traceineq::search;
using traceineq::NumericError;
using traceineq::report::JsonWriter;

constexpr double kDefaultCampaignGridStep = 0.1;
constexpr double kDefaultConcavityGridStep = 0.01;
constexpr double kDefaultOracleS[] = {0.0, 0.25, 0.5, 0.75, 1.0};

struct Options {
  std::string inequality;
  int dim = 2;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<double> s_values;
  double s_grid_step = 0.0;  // 0 = unset; per-subcommand default applies
  double tol = 1e-9;
  double min_eig = 1e-6;
  int workers = 1;
  int refine_steps = 0;
  std::string out_path;
  std::string config_path;
  std::string repro_target;
  bool strict = false;
  bool emit_witness = false;
  bool summary_only = false;
};

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

// Evenly spaced grid {k/n : k = 0..n} with n = round(1/step); the step must
// divide 1 exactly up to 1e-9 so grids are reproducible from the flag alone.
bool grid_from_step(double step, std::vector<double>& out) {
  if (!(step > 0.0 && step <= 1.0)) return false;
  long n = std::lround(1.0 / step);
  if (n < 1 || std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) {
    return false;
  }
  out.clear();
  out.reserve(static_cast<size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    out.push_back(static_cast<double>(k) / static_cast<double>(n));
  }
  return true;
}

// Config files mirror long flag names one-to-one; explicit flags win.
// Returns an error message, empty on success.
std::string apply_config(CLI::App* sub, Options& opt) {
  std::ifstream file(opt.config_path);
  if (!file) return "cannot open config file " + opt.config_path;
  nlohmann::json cfg = nlohmann::json::parse(file, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object()) {
    return "config file is not a JSON object";
  }
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") return "config key 'config' is not allowed";
    const std::string flag = "--" + key;
    CLI::Option* option = sub->get_option_no_throw(flag);
    if (option == nullptr) return "unknown config key '" + key + "'";
    if (sub->count(flag) > 0) continue;  // flag overrides file

    auto want = [&](bool ok, const char* type) -> std::string {
      return ok ? std::string()
                : "config key '" + key + "' must be " + type;
    };
    std::string err;
    if (key == "inequality") {
      if (!(err = want(value.is_string(), "a string")).empty()) return err;
      opt.inequality = value.get<std::string>();
    } else if (key == "out") {
      if (!(err = want(value.is_string(), "a string")).empty()) return err;
      opt.out_path = value.get<std::string>();
    } else if (key == "dim") {
      if (!(err = want(value.is_number_integer(), "an integer")).empty())
        return err;
      opt.dim = value.get<int>();
    } else if (key == "workers") {
      if (!(err = want(value.is_number_integer(), "an integer")).empty())
        return err;
      opt.workers = value.get<int>();
    } else if (key == "refine-steps") {
      if (!(err = want(value.is_number_integer(), "an integer")).empty())
        return err;
      opt.refine_steps = value.get<int>();
    } else if (key == "samples") {
      if (!(err = want(value.is_number_integer() && value.get<double>() >= 0,
                       "a nonnegative integer"))
               .empty())
        return err;
      opt.samples = value.get<std::uint64_t>();
    } else if (key == "seed") {
      if (!(err = want(value.is_number_integer() && value.get<double>() >= 0,
                       "a nonnegative integer"))
               .empty())
        return err;
      opt.seed = value.get<std::uint64_t>();
      opt.seed_given = true;
    } else if (key == "tol") {
      if (!(err = want(value.is_number(), "a number")).empty()) return err;
      opt.tol = value.get<double>();
    } else if (key == "min-eig") {
      if (!(err = want(value.is_number(), "a number")).empty()) return err;
      opt.min_eig = value.get<double>();
    } else if (key == "s-grid-step") {
      if (!(err = want(value.is_number(), "a number")).empty()) return err;
      opt.s_grid_step = value.get<double>();
    } else if (key == "s") {
      if (!(err = want(value.is_array(), "an array of numbers")).empty())
        return err;
      opt.s_values.clear();
      for (const auto& x : value) {
        if (!x.is_number()) return "config key 's' must hold numbers only";
        opt.s_values.push_back(x.get<double>());
      }
    } else if (key == "strict") {
      if (!(err = want(value.is_boolean(), "a boolean")).empty()) return err;
      opt.strict = value.get<bool>();
    } else if (key == "emit-witness") {
      if (!(err = want(value.is_boolean(), "a boolean")).empty()) return err;
      opt.emit_witness = value.get<bool>();
    } else if (key == "summary-only") {
      if (!(err = want(value.is_boolean(), "a boolean")).empty()) return err;
      opt.summary_only = value.get<bool>();
    } else {
      return "unknown config key '" + key + "'";
    }
  }
  return std::string();
}

int write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return std::fflush(stdout) == 0 ? 0 : 2;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) return usage_error("cannot open output file " + out_path);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  return file.good() ? 0 : usage_error("failed writing " + out_path);
}

JsonWriter& write_opt_double(JsonWriter& w, const std::optional<double>& v) {
  return v.has_value() ? w.value_double(*v) : w.value_null();
}

// Fixed leading fields shared by every per-evaluation record; extras are
// appended by the caller before end_object().
void record_prefix(JsonWriter& w, const std::string& inequality,
                   std::optional<double> s, int dim, std::uint64_t seed,
                   std::uint64_t index, std::optional<double> margin,
                   const char* kind, std::optional<double> imag_residual,
                   const std::string& status) {
  w.begin_object();
  w.key("inequality").value_string(inequality);
  w.key("s");
  write_opt_double(w, s);
  w.key("dim").value_int(dim);
  w.key("seed").value_uint(seed);
  w.key("index").value_uint(index);
  w.key("margin");
  write_opt_double(w, margin);
  w.key("kind").value_string(kind);
  w.key("imag_residual");
  write_opt_double(w, imag_residual);
  w.key("status").value_string(status);
}

void summary_prefix(JsonWriter& w, double min_margin, std::uint64_t violations,
                    std::uint64_t near_violations, std::uint64_t evaluated) {
  w.begin_object();
  w.key("min_margin").value_double(min_margin);
  w.key("violations").value_uint(violations);
  w.key("near_violations").value_uint(near_violations);
  w.key("evaluated").value_uint(evaluated);
}

void write_skipped(JsonWriter& w,
                   const std::vector<std::pair<std::string, std::uint64_t>>&
                       skipped) {
  w.key("skipped").begin_object();
  for (const auto& [token, count] : skipped) {
    w.key(token).value_uint(count);
  }
  w.end_object();
}

// --- verify / search -------------------------------------------------------

int run_campaign_cmd(CLI::App* sub, Options& opt, bool is_search) {
  if (opt.inequality.empty()) {
    return usage_error("--inequality is required");
  }
  const auto* info = inequalities::find_inequality(opt.inequality);
  if (info == nullptr) {
    return usage_error("unknown inequality '" + opt.inequality + "'");
  }
  opt.seed_given = opt.seed_given || sub->count("--seed") > 0;
  if (!opt.seed_given) {
    return usage_error("--seed is required (no ambient randomness)");
  }

  std::vector<double> s_values;
  if (info->needs_s) {
    if (!opt.s_values.empty()) {
      s_values = opt.s_values;
    } else {
      double step =
          opt.s_grid_step > 0.0 ? opt.s_grid_step : kDefaultCampaignGridStep;
      if (!grid_from_step(step, s_values)) {
        return usage_error("--s-grid-step must evenly divide 1");
      }
    }
  } else if (!opt.s_values.empty()) {
    return usage_error("'" + opt.inequality + "' takes no --s values");
  }

  search::CampaignConfig cfg;
  cfg.inequality_id = opt.inequality;
  cfg.dim = opt.dim;
  cfg.samples = opt.samples;
  cfg.seed = opt.seed;
  cfg.s_values = std::move(s_values);
  cfg.refine_steps = is_search ? opt.refine_steps : 0;
  cfg.tolerance = opt.tol;
  cfg.min_eigenvalue = opt.min_eig;
  cfg.keep_records = !opt.summary_only;

  if (opt.workers < 1) return usage_error("--workers must be >= 1");
  search::CampaignResult result = search::run_campaign(cfg, opt.workers);

  std::string text;
  const char* kind = inequalities::margin_kind_token(info->kind);
  for (const auto& rec : result.records) {
    JsonWriter w;
    record_prefix(w, opt.inequality, rec.s, opt.dim, opt.seed, rec.index,
                  rec.margin, kind, rec.imag_residual, rec.status);
    w.end_object();
    text += w.take();
    text += '\n';
  }

  JsonWriter w;
  summary_prefix(w, result.min_margin, result.violations,
                 result.near_violations, result.evaluated);
  w.key("argmin_index");
  if (result.argmin_index.has_value()) {
    w.value_uint(*result.argmin_index);
  } else {
    w.value_null();
  }
  w.key("argmin_s");
  write_opt_double(w, result.argmin_s);
  w.key("histogram").begin_array();
  for (std::uint64_t count : result.histogram) w.value_uint(count);
  w.end_array();
  write_skipped(w, result.skipped);
  if (is_search && result.refined.has_value()) {
    w.key("refined_margin").value_double(result.refined->margin);
    w.key("refine_accepted_steps")
        .value_int(result.refined->accepted_steps);
  }
  if (opt.emit_witness) {
    w.key("argmin_witness");
    if (result.argmin_witness.empty()) {
      w.value_null();
    } else {
      w.value_raw(result.argmin_witness);
    }
    if (is_search && result.refined.has_value()) {
      w.key("refined_witness").value_raw(result.refined->witness);
    }
  }
  w.end_object();
  text += w.take();
  text += '\n';

  int write_rc = write_output(opt.out_path, text);
  if (write_rc != 0) return write_rc;
  if (result.violations > 0 && inequalities::is_asserted(*info, opt.dim)) {
    return 1;
  }
  if (opt.strict && !result.skipped.empty()) return 3;
  return 0;
}

// --- concavity --------------------------------------------------------------

int run_concavity(Options& opt) {
  if (opt.dim < 1 || opt.dim > 512) return usage_error("--dim out of range");
  std::vector<double> grid;
  if (!opt.s_values.empty()) {
    grid = opt.s_values;
  } else {
    double step =
        opt.s_grid_step > 0.0 ? opt.s_grid_step : kDefaultConcavityGridStep;
    if (!grid_from_step(step, grid)) {
      return usage_error("--s-grid-step must evenly divide 1");
    }
  }

  std::string text;
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<std::uint64_t> argmin_index;
  std::optional<double> argmin_s;
  std::uint64_t violations = 0, near_violations = 0;
  std::map<std::string, std::uint64_t> skipped;

  for (std::uint64_t index = 0; index < opt.samples; ++index) {
    ensembles::SampleRng rng(ensembles::mix_seed(opt.seed, index));
    int size = static_cast<int>(2 + index % 3);
    std::optional<reliability::AuxiliaryProfile> profile;
    std::string failure;
    try {
      ensembles::Ensemble ens =
          ensembles::ensemble_from(rng, opt.dim, size, opt.min_eig);
      profile = reliability::concavity_profile(ens, grid);
    } catch (const NumericError& e) {
      failure = traceineq::errc_token(e.code());
    }

    for (size_t k = 0; k < grid.size(); ++k) {
      JsonWriter w;
      if (!profile.has_value()) {
        record_prefix(w, "concavity", grid[k], opt.dim, opt.seed, index,
                      std::nullopt, "scalar", std::nullopt,
                      "skipped:" + failure);
        w.end_object();
        ++skipped[failure];
      } else {
        double second = profile->second_differences[k];
        double margin = -second;
        record_prefix(w, "concavity", grid[k], opt.dim, opt.seed, index,
                      margin, "scalar", 0.0, "ok");
        w.key("e").value_double(profile->e_values[k]);
        w.key("second_difference").value_double(second);
        w.end_object();
        if (margin < -opt.tol) {
          ++violations;
        } else if (margin < 1e-6) {
          ++near_violations;
        }
        if (margin < min_margin) {
          min_margin = margin;
          argmin_index = index;
          argmin_s = grid[k];
        }
      }
      if (!opt.summary_only) {
        text += w.take();
        text += '\n';
      }
    }
  }

  JsonWriter w;
  summary_prefix(w, min_margin, violations, near_violations,
                 opt.samples * grid.size());
  w.key("argmin_index");
  if (argmin_index.has_value()) {
    w.value_uint(*argmin_index);
  } else {
    w.value_null();
  }
  w.key("argmin_s");
  write_opt_double(w, argmin_s);
  write_skipped(w, {skipped.begin(), skipped.end()});
  w.end_object();
  text += w.take();
  text += '\n';

  int write_rc = write_output(opt.out_path, text);
  if (write_rc != 0) return write_rc;
  if (violations > 0) return 1;  // concavity is an asserted statement
  if (opt.strict && !skipped.empty()) return 3;
  return 0;
}

// --- repro -------------------------------------------------------------------

int run_repro(Options& opt) {
  if (opt.repro_target != "lemma2-counterexample") {
    return usage_error("unknown repro target '" + opt.repro_target + "'");
  }
  const std::vector<double> t = {3.0, 2.0, 1.0};
  const std::vector<double> a = {2.0 / 3.0, 1.0, 3.0 / 2.0};
  const std::vector<double> b = {1.0 / 2.0, 4.0, 1.0};
  const double s = 0.5;

  inequalities::Lemma2Margin lm = inequalities::lemma2_margin(t, a, b, s);
  double lhs = 0.0, rhs = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    lhs += a[i] * std::pow(t[i], s);
    rhs += b[i] * std::pow(t[i], s - 1.0);
  }

  std::string text;
  JsonWriter w;
  record_prefix(w, "lemma2", s, static_cast<int>(t.size()), 0, 0, lm.margin,
                "scalar", 0.0, "ok");
  w.key("lhs").value_double(lhs);
  w.key("rhs").value_double(rhs);
  w.key("cond_i").value_double(lm.cond_i);
  w.key("cond_ii").value_double(lm.cond_ii);
  w.end_object();
  text += w.take();
  text += '\n';

  JsonWriter sw;
  std::uint64_t violations = lm.margin < -opt.tol ? 1 : 0;
  std::uint64_t near = violations == 0 && lm.margin < 1e-6 ? 1 : 0;
  summary_prefix(sw, lm.margin, violations, near, 1);
  sw.end_object();
  text += sw.take();
  text += '\n';

  return write_output(opt.out_path, text);
}

// --- oracle ------------------------------------------------------------------

struct OracleCheck {
  const char* id;
  std::optional<double> s;
};

double oracle_margin_for(const std::string& id, std::span<const double> a,
                         std::span<const double> b, std::optional<double> s) {
  if (id == "thm1") return oracles::trace_margin_commuting(a, b, 1.0);
  if (id == "thm2-trace") return oracles::trace_margin_commuting(a, b, 0.0);
  if (id == "eq3") return oracles::trace_margin_commuting(a, b, *s);
  if (id == "thm2-operator") {
    return oracles::operator_margin_s0_commuting(a, b);
  }
  if (id == "q1" || id == "q2") {
    return oracles::question_margin_commuting(a, b);
  }
  if (id == "thm4-1") return -oracles::entropy_product_m1_commuting(a, b);
  if (id == "thm4-2") return -oracles::entropy_product_m2_commuting(a, b);
  return 0.0;  // remark4: the commuting identity makes the margin exactly 0
}

int run_oracle(Options& opt) {
  if (opt.dim < 1 || opt.dim > 512) return usage_error("--dim out of range");
  std::vector<double> s_values = opt.s_values;
  if (s_values.empty()) {
    s_values.assign(std::begin(kDefaultOracleS), std::end(kDefaultOracleS));
  }
  for (double s : s_values) {
    if (!(s >= 0.0 && s <= 1.0)) {
      return usage_error("--s values must lie in [0, 1]");
    }
  }

  std::vector<OracleCheck> checks = {
      {"thm1", std::nullopt},      {"thm2-trace", std::nullopt},
      {"thm2-operator", std::nullopt},
  };
  for (double s : s_values) checks.push_back({"eq3", s});
  checks.push_back({"q1", std::nullopt});
  checks.push_back({"q2", std::nullopt});
  checks.push_back({"thm4-1", std::nullopt});
  checks.push_back({"thm4-2", std::nullopt});
  checks.push_back({"remark4", std::nullopt});

  std::string text;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_discrepancy = 0.0;
  std::uint64_t violations = 0, near_violations = 0, evaluated = 0;
  bool asserted_violation = false;
  std::map<std::string, std::uint64_t> skipped;

  for (std::uint64_t index = 0; index < opt.samples; ++index) {
    ensembles::SampleRng rng(ensembles::mix_seed(opt.seed, index));
    ensembles::CommutingPair pair =
        ensembles::commuting_pair_from(rng, opt.dim, opt.min_eig);
    std::span<const double> da(pair.diag_a.data(),
                               static_cast<size_t>(pair.diag_a.size()));
    std::span<const double> db(pair.diag_b.data(),
                               static_cast<size_t>(pair.diag_b.size()));
    inequalities::InequalityInput input =
        inequalities::ContractionPairInput{pair.a, pair.b};

    for (const auto& check : checks) {
      const auto* info = inequalities::find_inequality(check.id);
      ++evaluated;
      JsonWriter w;
      try {
        inequalities::Evaluation ev =
            inequalities::evaluate(*info, input, check.s);
        double oracle = oracle_margin_for(check.id, da, db, check.s);
        double discrepancy = std::abs(ev.margin - oracle);
        record_prefix(w, check.id, check.s, opt.dim, opt.seed, index,
                      ev.margin, inequalities::margin_kind_token(info->kind),
                      ev.imag_residual, "ok");
        w.key("oracle").value_double(oracle);
        w.key("discrepancy").value_double(discrepancy);
        w.end_object();
        max_discrepancy = std::max(max_discrepancy, discrepancy);
        min_margin = std::min(min_margin, ev.margin);
        if (ev.margin < -opt.tol * (1.0 + ev.scale)) {
          ++violations;
          if (inequalities::is_asserted(*info, opt.dim)) {
            asserted_violation = true;
          }
        } else if (ev.margin < 1e-6 * (1.0 + ev.scale)) {
          ++near_violations;
        }
      } catch (const NumericError& e) {
        std::string token = traceineq::errc_token(e.code());
        record_prefix(w, check.id, check.s, opt.dim, opt.seed, index,
                      std::nullopt, inequalities::margin_kind_token(info->kind),
                      std::nullopt, "skipped:" + token);
        w.key("oracle").value_null();
        w.key("discrepancy").value_null();
        w.end_object();
        ++skipped[token];
      }
      if (!opt.summary_only) {
        text += w.take();
        text += '\n';
      }
    }
  }

  JsonWriter w;
  summary_prefix(w, min_margin, violations, near_violations, evaluated);
  w.key("max_discrepancy").value_double(max_discrepancy);
  write_skipped(w, {skipped.begin(), skipped.end()});
  w.end_object();
  text += w.take();
  text += '\n';

  int write_rc = write_output(opt.out_path, text);
  if (write_rc != 0) return write_rc;
  if (asserted_violation) return 1;
  if (opt.strict && (max_discrepancy > opt.tol || !skipped.empty())) return 3;
  return 0;
}

void add_common_flags(CLI::App* sub, Options& opt, bool with_inequality,
                      bool with_workers, bool with_refine, bool with_s,
                      bool with_grid_step) {
  if (with_inequality) {
    // Required, but enforced after the config merge so a config file can
    // supply it.
    sub->add_option("--inequality", opt.inequality, "inequality tag");
  }
  sub->add_option("--dim", opt.dim, "matrix dimension or sequence length");
  sub->add_option("--samples", opt.samples, "number of sampled inputs");
  sub->add_option("--seed", opt.seed, "base seed for all draws");
  if (with_s) {
    sub->add_option("--s", opt.s_values,
                    "explicit s value (repeatable, within [0, 1])");
  }
  if (with_grid_step) {
    sub->add_option("--s-grid-step", opt.s_grid_step,
                    "even grid step over [0, 1], used when --s is absent");
  }
  sub->add_option("--tol", opt.tol, "violation tolerance");
  sub->add_option("--min-eig", opt.min_eig,
                  "eigenvalue floor for sampled inputs");
  if (with_workers) {
    sub->add_option("--workers", opt.workers, "worker thread count");
  }
  if (with_refine) {
    sub->add_option("--refine-steps", opt.refine_steps,
                    "strict-descent refinement steps on the worst case");
  }
  sub->add_option("--out", opt.out_path, "write the report to this file");
  sub->add_option("--config", opt.config_path,
                  "JSON config mirroring the flags; flags win");
  sub->add_flag("--strict", opt.strict,
                "exit 3 when any evaluation was skipped");
  sub->add_flag("--emit-witness", opt.emit_witness,
                "embed argmin/refined witnesses in the summary");
  sub->add_flag("--summary-only", opt.summary_only,
                "omit per-evaluation records");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"margin reports for trace and operator inequalities"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* verify = app.add_subcommand(
      "verify", "sample inputs and report margins for one inequality");
  add_common_flags(verify, opt, true, true, false, true, true);

  CLI::App* search_cmd = app.add_subcommand(
      "search", "like verify, plus local refinement of the worst case");
  add_common_flags(search_cmd, opt, true, true, true, true, true);

  CLI::App* concavity = app.add_subcommand(
      "concavity", "second-difference profile of the auxiliary function");
  add_common_flags(concavity, opt, false, false, false, true, true);

  CLI::App* repro = app.add_subcommand(
      "repro", "rebuild a named stored counter-example");
  repro->add_option("target", opt.repro_target, "counter-example name")
      ->required();
  repro->add_option("--tol", opt.tol, "violation tolerance");
  repro->add_option("--out", opt.out_path, "write the report to this file");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "commuting-pair closed forms vs the matrix pipeline");
  add_common_flags(oracle, opt, false, false, false, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = nullptr;
  for (CLI::App* sub : {verify, search_cmd, concavity, repro, oracle}) {
    if (sub->parsed()) active = sub;
  }
  if (active == nullptr) return usage_error("no subcommand given");

  if (!opt.config_path.empty()) {
    std::string err = apply_config(active, opt);
    if (!err.empty()) return usage_error(err);
  }

  try {
    if (active == verify) return run_campaign_cmd(verify, opt, false);
    if (active == search_cmd) return run_campaign_cmd(search_cmd, opt, true);
    if (active == concavity) return run_concavity(opt);
    if (active == repro) return run_repro(opt);
    return run_oracle(opt);
  } catch (const NumericError& e) {
    std::cerr << "error: " << traceineq::errc_token(e.code()) << ": "
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// Copyright 2026 The gumbel-sampling Authors.
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

// gumbel_cli: seeded, machine-readable front end to the samplers,
// estimators and verification suites.
//
//   gumbel_cli [--seed N] [--config file.json] [--out path] [--format csv|json]
//              <sample|topk|topdown|relax|estimate|experiment|verify> [options]
//
// Flags given on the command line override values read from --config. The
// config file is a flat JSON object keyed by long flag names (dashes or
// underscores). Output goes to --out or stdout and is byte-identical for
// identical inputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gumbel/gumbel.hpp"
#include "gumbel/json_io.hpp"

namespace {

using nlohmann::json;
using namespace gumbel;

// Shortest locale-independent round-trip formatting for CSV cells.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// "0.1,-inf,2" -> {0.1, -inf, 2}
std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument(field + ": empty list entry");
    item = item.substr(b, e - b + 1);
    if (item == "-inf") {
      out.push_back(-kInf);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw std::invalid_argument(field + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(field + ": expected a comma-separated list");
  return out;
}

// Merges command-line values with the --config file; the command line wins.
class Settings {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (auto& [key, value] : j.items()) {
      std::string k = key;
      for (char& ch : k) {
        if (ch == '-') ch = '_';
      }
      config_[k] = value;
    }
  }

  // Rejects config keys no option of the active subcommand consumes.
  void check_unused(const std::set<std::string>& known) const {
    for (const auto& [key, value] : config_) {
      if (!known.count(key)) throw std::invalid_argument("config: unknown field '" + key + "'");
    }
  }

  const json* find(const std::string& key) const {
    auto it = config_.find(key);
    return it == config_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, json> config_;
};

struct Flag {
  CLI::Option* opt = nullptr;
  std::string key;  // config key, underscores
};

double json_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument(key + ": expected a number");
  return v.get<double>();
}

std::size_t json_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw std::invalid_argument(key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> json_list(const json& v, const std::string& key) {
  if (v.is_string()) return parse_list(v.get<std::string>(), key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw std::invalid_argument(key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (e.is_null() || (e.is_string() && e.get<std::string>() == "-inf")) {
      out.push_back(-kInf);
    } else if (e.is_number()) {
      out.push_back(e.get<double>());
    } else {
      throw std::invalid_argument(key + ": entries must be numbers, null or \"-inf\"");
    }
  }
  if (out.empty()) throw std::invalid_argument(key + ": expected a non-empty array");
  return out;
}

struct Inputs {
  const Settings* settings;
  std::set<std::string>* known;

  const json* lookup(const Flag& f) const {
    known->insert(f.key);
    return f.opt->count() ? nullptr : settings->find(f.key);
  }

  double real(const Flag& f, double cli) const {
    const json* v = lookup(f);
    return v ? json_number(*v, f.key) : cli;
  }
  std::size_t count(const Flag& f, std::size_t cli) const {
    const json* v = lookup(f);
    return v ? json_count(*v, f.key) : cli;
  }
  std::string text(const Flag& f, const std::string& cli) const {
    const json* v = lookup(f);
    if (!v) return cli;
    if (!v->is_string()) throw std::invalid_argument(f.key + ": expected a string");
    return v->get<std::string>();
  }
  bool flag(const Flag& f, bool cli) const {
    const json* v = lookup(f);
    if (!v) return cli;
    if (!v->is_boolean()) throw std::invalid_argument(f.key + ": expected true or false");
    return v->get<bool>();
  }
  // Empty optional when neither source sets the value.
  std::optional<std::vector<double>> list(const Flag& f, const std::string& cli) const {
    const json* v = lookup(f);
    if (v) return json_list(*v, f.key);
    if (f.opt->count()) return parse_list(cli, f.key);
    return std::nullopt;
  }
  bool present(const Flag& f) const { return f.opt->count() || settings->find(f.key); }
};

void require_positive(double x, const std::string& field) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(field + ": must be positive");
}

void require_draws(std::size_t n, const std::string& field) {
  if (n == 0) throw std::invalid_argument(field + ": must be at least 1");
}

CategoricalParams categorical(const std::vector<double>& logits, double temperature) {
  CategoricalParams c{logits, temperature};
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw std::invalid_argument(
        (what.find("temperature") != std::string::npos ? "temperature: " : "logits: ") + what);
  }
  return c;
}

// Five-class distribution for the experiment when no logits are given,
// drawn from a fixed stream so the default run never changes.
std::vector<double> default_experiment_logits() {
  RngState rng{0x5eed'f18eULL, 0, 0};
  std::vector<double> logits(5);
  for (double& a : logits) a = std::log(draw_uniform(rng));
  return logits;
}

std::string csv_header(const std::string& lead, const std::string& prefix, std::size_t n) {
  std::string h = lead;
  for (std::size_t i = 0; i < n; ++i) h += "," + prefix + std::to_string(i);
  return h;
}

struct Globals {
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  std::string format;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

struct Common {
  Flag logits, temperature;
  std::string logits_text;
  double temperature_value = 1.0;

  void add(CLI::App* sub) {
    logits.opt = sub->add_option("--logits", logits_text,
                                 "Comma-separated logits a_i; '-inf' marks an impossible class");
    logits.key = "logits";
    temperature.opt = sub->add_option("--temperature", temperature_value,
                                      "Boltzmann temperature T > 0 (default 1)");
    temperature.key = "temperature";
  }

  CategoricalParams read(const Inputs& in) const {
    auto a = in.list(logits, logits_text);
    if (!a) throw std::invalid_argument("logits: required (flag or config field)");
    const double t = in.real(temperature, temperature_value);
    require_positive(t, "temperature");
    return categorical(*a, t);
  }
};

struct Output {
  std::string format;  // csv or json
  std::ostringstream body;
};

// --- sample ---------------------------------------------------------------

struct SampleCmd {
  Common common;
  Flag noise_scale, noise_loc, n_draws;
  double noise_scale_value = 1.0;
  double noise_loc_value = 0.0;
  std::size_t n_draws_value = 10;

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand(
        "sample", "Gumbel-max draws with Gumbel(mu, beta) noise");
    sub->footer(
        "Output (csv): draw_id,index,max_value\n"
        "Output (json): [{\"draw_id\", \"index\", \"max_value\"}, ...]\n"
        "index is 0-based; index ~ Cat(a, T*beta), max ~ Gumbel(mu + beta*log Z', beta).");
    common.add(sub);
    noise_scale = {sub->add_option("--noise-scale", noise_scale_value,
                                   "Gumbel noise scale beta >= 0 (0 = greedy argmax)"),
                   "noise_scale"};
    noise_loc = {sub->add_option("--noise-loc", noise_loc_value, "Gumbel noise location mu"),
                 "noise_loc"};
    n_draws = {sub->add_option("--n-draws", n_draws_value, "Number of draws (default 10)"),
               "n_draws"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto c = common.read(in);
    const double beta = in.real(noise_scale, noise_scale_value);
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
      throw std::invalid_argument("noise_scale: must be non-negative");
    }
    const double mu = in.real(noise_loc, noise_loc_value);
    const std::size_t n = in.count(n_draws, n_draws_value);
    require_draws(n, "n_draws");
    json rows = json::array();
    if (out.format == "csv") out.body << "draw_id,index,max_value\n";
    for (std::size_t d = 0; d < n; ++d) {
      const auto r = gumbel_max_scaled(c, {mu, beta}, rng);
      if (out.format == "csv") {
        out.body << d << ',' << r.draw.index << ',' << num(r.draw.max_value) << '\n';
      } else {
        rows.push_back({{"draw_id", d}, {"index", r.draw.index}, {"max_value", r.draw.max_value}});
      }
    }
    if (out.format == "json") out.body << rows.dump(2) << '\n';
  }
};

// --- topk -----------------------------------------------------------------

struct TopKCmd {
  Common common;
  Flag k, n_draws, sequential;
  std::size_t k_value = 2;
  std::size_t n_draws_value = 10;
  bool sequential_value = false;

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand("topk", "Ordered samples without replacement (Gumbel-top-k)");
    sub->footer(
        "Output (csv): draw_id,rank,index,perturbed_value   (one row per rank)\n"
        "Output (json): [{\"draw_id\", \"indices\": [...], \"perturbed_values\": [...]}, ...]\n"
        "rank and index are 0-based. With --sequential the draws come from the\n"
        "renormalise-and-redraw sampler and perturbed_value is empty (null).");
    common.add(sub);
    k = {sub->add_option("--k", k_value, "Sample size k (default 2)"), "k"};
    n_draws = {sub->add_option("--n-draws", n_draws_value, "Number of draws (default 10)"),
               "n_draws"};
    sequential = {sub->add_flag("--sequential", sequential_value,
                                "Use sequential inverse-transform sampling instead"),
                  "sequential"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto c = common.read(in);
    const std::size_t kk = in.count(k, k_value);
    const std::size_t n = in.count(n_draws, n_draws_value);
    const bool seq = in.flag(sequential, sequential_value);
    require_draws(n, "n_draws");
    require_draws(kk, "k");
    json rows = json::array();
    if (out.format == "csv") out.body << "draw_id,rank,index,perturbed_value\n";
    for (std::size_t d = 0; d < n; ++d) {
      TopKResult r;
      if (seq) {
        r.indices = sequential_wor(c, kk, rng);
      } else {
        r = gumbel_topk(perturb(c, rng), kk);
      }
      if (out.format == "csv") {
        for (std::size_t i = 0; i < r.indices.size(); ++i) {
          out.body << d << ',' << i << ',' << r.indices[i] << ','
                   << (seq ? "" : num(r.perturbed_values[i])) << '\n';
        }
      } else {
        json row{{"draw_id", d}, {"indices", r.indices}};
        row["perturbed_values"] = seq ? json(nullptr) : json(r.perturbed_values);
        rows.push_back(std::move(row));
      }
    }
    if (out.format == "json") out.body << rows.dump(2) << '\n';
  }
};

// --- topdown --------------------------------------------------------------

struct TopDownCmd {
  Common common;
  Flag condition_index, condition_max, partition;
  std::size_t condition_index_value = 0;
  double condition_max_value = 0.0;
  std::string partition_value = "median";

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand(
        "topdown", "Top-down construction of perturbed logits, optionally conditioned");
    sub->footer(
        "Output (json): [{\"domain\": [...], \"omega\": i, \"m\": x}, ...]\n"
        "Output (csv): node_id,domain,omega,m   (domain members separated by ';')\n"
        "The root comes first; one node per class. m is null / -inf for classes\n"
        "without mass. Missing conditions are sampled (index from Cat(pi), max\n"
        "from Gumbel(log Z)).");
    common.add(sub);
    condition_index = {sub->add_option("--condition-index", condition_index_value,
                                       "Condition on the argmax (0-based)"),
                       "condition_index"};
    condition_max = {sub->add_option("--condition-max", condition_max_value,
                                     "Condition on the maximum"),
                     "condition_max"};
    partition = {sub->add_option("--partition", partition_value,
                                 "Domain split rule: median (default) or random")
                     ->check(CLI::IsMember({"median", "random"})),
                 "partition"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto c = common.read(in);
    const std::string rule_name = in.text(partition, partition_value);
    if (rule_name != "median" && rule_name != "random") {
      throw std::invalid_argument("partition: expected 'median' or 'random'");
    }
    const auto rule = rule_name == "median" ? PartitionRule::kMedian : PartitionRule::kRandom;
    std::optional<CompletedCondition> root;
    if (in.present(condition_index) || in.present(condition_max)) {
      TopDownCondition cond{std::nullopt, std::nullopt, c};
      if (in.present(condition_index)) {
        cond.index = in.count(condition_index, condition_index_value);
        if (*cond.index >= c.size()) {
          throw std::invalid_argument("condition_index: out of range for the logits");
        }
        if (c.logits[*cond.index] == -kInf) {
          throw std::invalid_argument("condition_index: class has zero probability");
        }
      }
      if (in.present(condition_max)) {
        cond.max_value = in.real(condition_max, condition_max_value);
      }
      root = complete_condition(cond, rng);
    } else {
      in.lookup(condition_index);
      in.lookup(condition_max);
    }
    const auto nodes = top_down_construction(c, rng, rule, root);
    if (out.format == "json") {
      out.body << json(nodes).dump(2) << '\n';
      return;
    }
    out.body << "node_id,domain,omega,m\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::string dom;
      for (std::size_t j = 0; j < nodes[i].domain.size(); ++j) {
        dom += (j ? ";" : "") + std::to_string(nodes[i].domain[j]);
      }
      out.body << i << ',' << dom << ',' << nodes[i].index << ',' << num(nodes[i].max_value)
               << '\n';
    }
  }
};

// --- relax ----------------------------------------------------------------

struct RelaxCmd {
  Common common;
  Flag lambda, n_draws, hard;
  double lambda_value = 1.0;
  std::size_t n_draws_value = 10;
  bool hard_value = false;

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand("relax", "Gumbel-Softmax (Concrete) samples");
    sub->footer(
        "Output (csv): draw_id,index,w_0,...,w_{N-1}\n"
        "  with --hard: draw_id,index,hard_0,...,hard_{N-1},soft_0,...,soft_{N-1}\n"
        "Output (json): [{\"draw_id\", \"index\", \"weights\" | \"hard\"+\"soft\"}, ...]\n"
        "index is the argmax of the soft sample (0-based).");
    common.add(sub);
    lambda = {sub->add_option("--lambda", lambda_value, "Relaxation temperature lambda > 0"),
              "lambda"};
    n_draws = {sub->add_option("--n-draws", n_draws_value, "Number of draws (default 10)"),
               "n_draws"};
    hard = {sub->add_flag("--hard", hard_value, "Straight-through mode: also emit the one-hot"),
            "hard"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto c = common.read(in);
    const double lam = in.real(lambda, lambda_value);
    require_positive(lam, "lambda");
    const std::size_t n = in.count(n_draws, n_draws_value);
    require_draws(n, "n_draws");
    const bool st = in.flag(hard, hard_value);
    const std::size_t dim = c.size();
    json rows = json::array();
    if (out.format == "csv") {
      out.body << (st ? csv_header(csv_header("draw_id,index", "hard_", dim), "soft_", dim)
                      : csv_header("draw_id,index", "w_", dim))
               << '\n';
    }
    for (std::size_t d = 0; d < n; ++d) {
      const auto s = st_gs_sample({c, lam}, rng);
      if (out.format == "csv") {
        out.body << d << ',' << s.index;
        if (st) {
          for (double x : s.hard) out.body << ',' << num(x);
        }
        for (double x : s.soft.weights) out.body << ',' << num(x);
        out.body << '\n';
      } else if (st) {
        rows.push_back({{"draw_id", d}, {"index", s.index}, {"hard", s.hard},
                        {"soft", s.soft.weights}});
      } else {
        rows.push_back({{"draw_id", d}, {"index", s.index}, {"weights", s.soft.weights}});
      }
    }
    if (out.format == "json") out.body << rows.dump(2) << '\n';
  }
};

// --- estimate -------------------------------------------------------------

struct EstimateCmd {
  Common common;
  Flag estimator, lambda, payoff, payoff_kind, n_samples;
  std::string estimator_value = "reinforce";
  double lambda_value = 1.0;
  std::string payoff_text;
  std::string payoff_kind_value = "linear";
  std::size_t n_samples_value = 10000;

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand("estimate", "Monte Carlo gradient of E[f(X)] w.r.t. logits");
    sub->footer(
        "Output (json): {\"estimator\", \"lambda\", \"payoff\", \"payoff_kind\",\n"
        "  \"grad_mean\": [...], \"grad_std_err\": [...], \"n_samples\",\n"
        "  \"oracle_grad\": [...], \"max_abs_bias\"}\n"
        "Output (csv): coordinate,grad_mean,grad_std_err,oracle_grad\n"
        "oracle_grad is the exact gradient for the discrete X; f(one-hot w) = c_w.\n"
        "Linear payoff f(S) = <c,S>; quadratic f(S) = sum c_i S_i^2.");
    common.add(sub);
    estimator = {sub->add_option("--estimator", estimator_value, "reinforce | gs | stgs")
                     ->check(CLI::IsMember({"reinforce", "gs", "stgs"})),
                 "estimator"};
    lambda = {sub->add_option("--lambda", lambda_value, "Relaxation temperature (gs, stgs)"),
              "lambda"};
    payoff = {sub->add_option("--payoff", payoff_text, "Comma-separated payoff vector c"),
              "payoff"};
    payoff_kind = {sub->add_option("--payoff-kind", payoff_kind_value, "linear | quadratic")
                       ->check(CLI::IsMember({"linear", "quadratic"})),
                   "payoff_kind"};
    n_samples = {sub->add_option("--n-samples", n_samples_value, "Samples (default 10000)"),
                 "n_samples"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto c = common.read(in);
    Estimator e;
    const std::string name = in.text(estimator, estimator_value);
    try {
      e = parse_estimator(name);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(std::string("estimator: ") + err.what());
    }
    const double lam = in.real(lambda, lambda_value);
    require_positive(lam, "lambda");
    const auto c_vec = in.list(payoff, payoff_text);
    if (!c_vec) throw std::invalid_argument("payoff: required (flag or config field)");
    if (c_vec->size() != c.size()) {
      throw std::invalid_argument("payoff: length must equal the number of logits");
    }
    for (double v : *c_vec) {
      if (!std::isfinite(v)) throw std::invalid_argument("payoff: entries must be finite");
    }
    const std::string kind = in.text(payoff_kind, payoff_kind_value);
    if (kind != "linear" && kind != "quadratic") {
      throw std::invalid_argument("payoff_kind: expected 'linear' or 'quadratic'");
    }
    const std::size_t n = in.count(n_samples, n_samples_value);
    require_draws(n, "n_samples");
    const Objective obj{kind == "linear" ? PayoffKind::kLinear : PayoffKind::kQuadratic, *c_vec,
                        kind};
    const auto r = estimate(e, {c, lam}, obj, n, rng);
    if (out.format == "json") {
      json j = r;
      j["estimator"] = name;
      j["lambda"] = lam;
      j["payoff"] = *c_vec;
      j["payoff_kind"] = kind;
      out.body << j.dump(2) << '\n';
      return;
    }
    out.body << "coordinate,grad_mean,grad_std_err,oracle_grad\n";
    for (std::size_t j = 0; j < r.grad_mean.size(); ++j) {
      out.body << j << ',' << num(r.grad_mean[j]) << ',' << num(r.grad_std_err[j]) << ','
               << num(r.oracle_grad[j]) << '\n';
    }
  }
};

// --- experiment -----------------------------------------------------------

struct ExperimentCmd {
  Common common;
  Flag betas, lambdas, n_draws;
  std::string betas_text = "0.3,0.5,1,2";
  std::string lambdas_text = "0.05,1,5";
  std::size_t n_draws_value = 100000;

  void add(CLI::App* app) {
    auto* sub = app->add_subcommand(
        "experiment", "Noise-scale and relaxation-temperature sweep over one categorical");
    sub->footer(
        "Output (csv): panel,parameter,class,value\n"
        "  panel = categorical        parameter empty, value = pi_i\n"
        "  panel = scaled_gumbel_max  parameter = beta, value = index frequency\n"
        "  panel = gs_mean            parameter = lambda, value = mean soft weight\n"
        "Output (json): {\"logits\", \"probs\", \"scaled_gumbel_max\": [{\"beta\",\n"
        "  \"frequencies\", \"entropy\"}], \"gs_mean\": [{\"lambda\", \"mean\",\n"
        "  \"l1_to_probs\", \"l1_to_uniform\"}]}\n"
        "Without --logits a fixed pseudo-random five-class distribution is used.");
    common.add(sub);
    betas = {sub->add_option("--betas", betas_text, "Noise scales beta (default 0.3,0.5,1,2)"),
             "betas"};
    lambdas = {sub->add_option("--lambdas", lambdas_text,
                               "GS temperatures lambda (default 0.05,1,5)"),
               "lambdas"};
    n_draws = {sub->add_option("--n-draws", n_draws_value, "Draws per panel (default 100000)"),
               "n_draws"};
  }

  void run(const Inputs& in, RngState rng, Output& out) const {
    const auto logits = in.list(common.logits, common.logits_text);
    const double t = in.real(common.temperature, common.temperature_value);
    require_positive(t, "temperature");
    const auto c = categorical(logits ? *logits : default_experiment_logits(), t);
    const auto beta_list = in.list(betas, betas_text).value_or(parse_list(betas_text, "betas"));
    const auto lambda_list =
        in.list(lambdas, lambdas_text).value_or(parse_list(lambdas_text, "lambdas"));
    for (double b : beta_list) require_positive(b, "betas");
    for (double l : lambda_list) require_positive(l, "lambdas");
    const std::size_t n = in.count(n_draws, n_draws_value);
    require_draws(n, "n_draws");
    const auto probs = categorical_probs(c);
    const std::vector<double> uniform(c.size(), 1.0 / static_cast<double>(c.size()));

    // One forked stream per panel so adding a panel never shifts the others.
    std::uint64_t stream = rng.stream_id;
    json gm = json::array();
    std::vector<std::vector<double>> freq_rows;
    for (double b : beta_list) {
      RngState r = fork_stream(rng, ++stream);
      std::vector<std::uint64_t> counts(c.size(), 0);
      for (std::size_t d = 0; d < n; ++d) ++counts[gumbel_max_scaled(c, {0.0, b}, r).draw.index];
      freq_rows.push_back(stats::frequencies(counts));
      gm.push_back({{"beta", b},
                    {"frequencies", freq_rows.back()},
                    {"entropy", stats::entropy(freq_rows.back())}});
    }
    json gs = json::array();
    std::vector<std::vector<double>> mean_rows;
    for (double l : lambda_list) {
      RngState r = fork_stream(rng, ++stream);
      std::vector<double> sum(c.size(), 0.0);
      for (std::size_t d = 0; d < n; ++d) {
        const auto s = gs_sample({c, l}, r);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s.weights[i];
      }
      for (double& x : sum) x /= static_cast<double>(n);
      mean_rows.push_back(sum);
      gs.push_back({{"lambda", l},
                    {"mean", sum},
                    {"l1_to_probs", stats::l1_distance(sum, probs)},
                    {"l1_to_uniform", stats::l1_distance(sum, uniform)}});
    }

    if (out.format == "json") {
      json j{{"categorical", c}, {"probs", probs}, {"n_draws", n},
             {"scaled_gumbel_max", gm}, {"gs_mean", gs}};
      out.body << j.dump(2) << '\n';
      return;
    }
    out.body << "panel,parameter,class,value\n";
    for (std::size_t i = 0; i < probs.size(); ++i) {
      out.body << "categorical,," << i << ',' << num(probs[i]) << '\n';
    }
    for (std::size_t k = 0; k < beta_list.size(); ++k) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        out.body << "scaled_gumbel_max," << num(beta_list[k]) << ',' << i << ','
                 << num(freq_rows[k][i]) << '\n';
      }
    }
    for (std::size_t k = 0; k < lambda_list.size(); ++k) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        out.body << "gs_mean," << num(lambda_list[k]) << ',' << i << ','
                 << num(mean_rows[k][i]) << '\n';
      }
    }
  }
};

// --- verify ---------------------------------------------------------------

struct VerifyCmd {
  std::string suite = "all";
  CLI::App* sub = nullptr;

  void add(CLI::App* app) {
    sub = app->add_subcommand("verify", "Run a statistical invariant suite");
    std::string names;
    for (const auto& s : suites::suite_names()) names += s + ", ";
    sub->footer(
        "Suites: " + names + "all.\n"
        "A table is printed to stderr; the report goes to --out or stdout.\n"
        "Output (json): [{\"suite\", \"pass\", \"checks\": [{\"name\", \"statistic\",\n"
        "  \"p_value\", \"dof\", \"pass\"}]}]\n"
        "Output (csv): suite,check,statistic,p_value,dof,pass\n"
        "Exit status is 0 only when every check passes.");
    sub->add_option("suite", suite, "Suite name (default all)");
  }

  bool run(std::uint64_t seed, Output& out) const {
    const auto reports = suites::run(suite, seed);
    bool ok = true;
    std::fprintf(stderr, "%-14s %-56s %12s %6s\n", "suite", "check", "p_value", "result");
    for (const auto& r : reports) {
      ok &= r.pass();
      for (const auto& c : r.checks) {
        std::fprintf(stderr, "%-14s %-56s %12.4g %6s\n", r.name.c_str(), c.name.c_str(),
                     c.result.p_value, c.result.pass ? "PASS" : "FAIL");
      }
    }
    std::fprintf(stderr, "%s\n", ok ? "all checks passed" : "some checks FAILED");
    if (out.format == "json") {
      out.body << json(reports).dump(2) << '\n';
    } else {
      out.body << "suite,check,statistic,p_value,dof,pass\n";
      for (const auto& r : reports) {
        for (const auto& c : r.checks) {
          out.body << r.name << ',' << c.name << ',' << num(c.result.statistic) << ','
                   << num(c.result.p_value) << ',' << c.result.dof << ','
                   << (c.result.pass ? "true" : "false") << '\n';
        }
      }
    }
    return ok;
  }
};

void write(const Output& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.body.str() << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("out: cannot write '" + path + "'");
  f << out.body.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gumbel-max sampling, top-down sampling, relaxations and gradient estimators"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "RNG seed (default 0)");
  app.add_option("--config", g.config, "JSON file with option values; flags override it");
  g.out_opt = app.add_option("--out", g.out, "Write output here instead of stdout");
  g.format_opt = app.add_option("--format", g.format, "csv or json (default depends on command)")
                     ->check(CLI::IsMember({"csv", "json"}));

  SampleCmd sample;
  TopKCmd topk;
  TopDownCmd topdown;
  RelaxCmd relax;
  EstimateCmd est;
  ExperimentCmd experiment;
  VerifyCmd verify;
  sample.add(&app);
  topk.add(&app);
  topdown.add(&app);
  relax.add(&app);
  est.add(&app);
  experiment.add(&app);
  verify.add(&app);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    Settings settings;
    if (!g.config.empty()) settings.load(g.config);
    std::set<std::string> known{"seed", "out", "format"};
    const Inputs in{&settings, &known};

    const Flag seed_flag{g.seed_opt, "seed"};
    const Flag out_flag{g.out_opt, "out"};
    const Flag format_flag{g.format_opt, "format"};
    const json* seed_json = in.lookup(seed_flag);
    const std::uint64_t seed = seed_json ? json_count(*seed_json, "seed") : g.seed;
    const std::string out_path = in.text(out_flag, g.out);

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Output out;
    const bool json_default = name == "topdown" || name == "estimate" || name == "verify";
    out.format = in.text(format_flag, g.format);
    if (out.format.empty()) out.format = json_default ? "json" : "csv";
    if (out.format != "csv" && out.format != "json") {
      throw std::invalid_argument("format: expected 'csv' or 'json'");
    }

    const RngState rng{seed, 0, 0};
    bool ok = true;
    if (name == "sample") {
      sample.run(in, rng, out);
    } else if (name == "topk") {
      topk.run(in, rng, out);
    } else if (name == "topdown") {
      topdown.run(in, rng, out);
    } else if (name == "relax") {
      relax.run(in, rng, out);
    } else if (name == "estimate") {
      est.run(in, rng, out);
    } else if (name == "experiment") {
      experiment.run(in, rng, out);
    } else {
      if (const json* v = settings.find("suite")) {
        known.insert("suite");
        if (!verify.sub->get_option("suite")->count()) {
          if (!v->is_string()) throw std::invalid_argument("suite: expected a string");
          verify.suite = v->get<std::string>();
        }
      }
      settings.check_unused(known);
      ok = verify.run(seed, out);
      write(out, out_path);
      return ok ? 0 : 1;
    }
    settings.check_unused(known);
    write(out, out_path);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

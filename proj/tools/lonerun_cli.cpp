// lonerun: command-line front door to the laboratory. Every subcommand echoes
// its effective configuration (seeds included) ahead of its results, emits a
// single JSON document by default, and keeps stdout for data / stderr for
// logs. Exit codes: 0 success, 1 guard or overflow rejection, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lonerun/lonerun.hpp"
#include "lonerun/serialize.hpp"

namespace {

using lonerun::json;

// a problem with the invocation itself (bad token, unusable flag combination),
// as opposed to a guard the library raised while computing
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

lonerun::rational parse_rational_flag(const std::string& value, const char* flag) {
  try {
    return lonerun::rational::parse(value);
  } catch (const std::exception&) {
    throw usage_error(std::string(flag) + ": expected a rational 'num/den', got '" + value + "'");
  }
}

lonerun::speed_set parse_set_flag(const std::string& value, const char* flag) {
  try {
    auto [set, dropped] = lonerun::speed_set::parse_dedup(value);
    if (dropped > 0)
      std::cerr << "warning: " << flag << " contained " << dropped
                << " duplicate speed(s), deduplicated\n";
    return set;
  } catch (const std::exception& e) {
    throw usage_error(std::string(flag) + ": " + e.what());
  }
}

std::uint64_t parse_u64_token(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size()) throw usage_error(std::string(what) + ": bad integer '" + s + "'");
  return v;
}

// --seed beats LONERUN_SEED beats the config file beats zero
std::uint64_t effective_seed(bool seed_given, std::uint64_t seed_flag,
                             std::optional<std::uint64_t> config_seed) {
  if (seed_given) return seed_flag;
  if (const char* env = std::getenv("LONERUN_SEED")) return parse_u64_token(env, "LONERUN_SEED");
  if (config_seed) return *config_seed;
  return 0;
}

enum class out_format { json, csv, human };

out_format parse_format(const std::string& s) {
  if (s == "json") return out_format::json;
  if (s == "csv") return out_format::csv;
  if (s == "human") return out_format::human;
  throw usage_error("--format: expected json, csv or human, got '" + s + "'");
}

void print_human(const json& doc, int depth = 0) {
  for (const auto& [key, val] : doc.items()) {
    std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ') << key;
    if (val.is_object()) {
      std::cout << ":\n";
      print_human(val, depth + 1);
    } else {
      std::cout << " = " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
    }
  }
}

void emit(const json& doc, out_format fmt) {
  if (fmt == out_format::json) std::cout << doc.dump(2) << '\n';
  else print_human(doc);
}

// ---- kappa ---------------------------------------------------------------

struct kappa_args {
  std::string set;
  std::uint64_t grid = 0;
  std::string threshold;
  bool wide = false;
  std::string format = "json";
};

int run_kappa(const kappa_args& a) {
  auto fmt = parse_format(a.format);
  if (fmt == out_format::csv) throw usage_error("kappa has no csv schema; use json or human");
  if (a.grid == 1) throw usage_error("--grid needs at least 2 points");
  auto D = parse_set_flag(a.set, "--set");

  json doc;
  doc["command"] = "kappa";
  json cfg;
  cfg["set"] = D.values();
  cfg["grid"] = a.grid ? json(a.grid) : json(nullptr);
  cfg["threshold"] = a.threshold.empty() ? json(nullptr) : json(a.threshold);
  cfg["wide"] = a.wide;
  doc["config"] = cfg;

  if (!a.threshold.empty()) {
    auto theta = parse_rational_flag(a.threshold, "--threshold");
    auto wit = lonerun::kappa_at_least(D, theta);
    doc["theta"] = theta.to_string();
    doc["at_least"] = wit.has_value();
    doc["witness"] = wit ? json(wit->to_string()) : json(nullptr);
  } else {
    auto kr = a.wide ? lonerun::kappa_exact_wide(D) : lonerun::kappa_exact(D);
    doc.update(lonerun::kappa_result_to_json(D, kr));
    if (a.grid >= 2) {
      auto gr = lonerun::kappa_grid(D, a.grid);
      doc["grid_points"] = a.grid;
      doc["grid_value"] = gr.to_string();
    }
  }
  emit(doc, fmt);
  return 0;
}

// ---- independence ----------------------------------------------------------

struct independence_args {
  std::string set;
  std::uint64_t p = 0;
  std::uint32_t L = 0;
  std::uint32_t k = 2;
  bool count_all = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
};

int run_independence(const independence_args& a) {
  auto fmt = parse_format(a.format);
  if (fmt == out_format::csv) throw usage_error("independence has no csv schema; use json or human");
  int modes = (!a.set.empty() ? 1 : 0) + (a.count_all ? 1 : 0) + (a.sample > 0 ? 1 : 0);
  if (modes != 1)
    throw usage_error("independence: pick exactly one of --set, --count-all, --sample N");

  json doc;
  doc["command"] = "independence";
  json cfg;
  cfg["p"] = a.p;
  cfg["L"] = a.L;
  doc["config"] = cfg;  // filled further per mode below

  if (!a.set.empty()) {
    auto D = parse_set_flag(a.set, "--set");
    doc["config"]["set"] = D.values();
    doc.update(lonerun::independence_report_to_json(lonerun::is_L_independent(D, a.p, a.L)));
  } else if (a.count_all) {
    doc["config"]["k"] = a.k;
    auto dependent = lonerun::count_dependent_subsets(a.p, a.k, a.L);
    doc["p"] = a.p;
    doc["k"] = a.k;
    doc["L"] = a.L;
    doc["dependent_count"] = dependent;
    doc["count_bound"] = lonerun::to_string(lonerun::dependent_count_bound(a.p, a.k, a.L));
    doc["fraction_cap"] = lonerun::dependent_fraction_bound(a.p, a.k, a.L).to_string();
  } else {
    std::uint64_t seed = effective_seed(a.seed_given, a.seed, std::nullopt);
    doc["config"]["k"] = a.k;
    doc["config"]["trials"] = a.sample;
    doc["config"]["seed"] = seed;
    auto s = lonerun::sample_independent_fraction(a.p, a.k, a.L, a.sample, seed);
    doc.update(lonerun::sample_to_json(s));
    doc["fraction_cap"] = lonerun::dependent_fraction_bound(a.p, a.k, a.L).to_string();
  }
  emit(doc, fmt);
  return 0;
}

// ---- certify ----------------------------------------------------------------

struct certify_args {
  std::string set;
  std::uint64_t p = 0;
  std::string epsilon;
  bool no_cross_check = false;
  std::string format = "json";
};

int run_certify(const certify_args& a) {
  auto fmt = parse_format(a.format);
  if (fmt == out_format::csv) throw usage_error("certify has no csv schema; use json or human");
  auto D = parse_set_flag(a.set, "--set");
  auto eps = parse_rational_flag(a.epsilon, "--epsilon");

  json doc;
  doc["command"] = "certify";
  json cfg;
  cfg["set"] = D.values();
  cfg["p"] = a.p;
  cfg["epsilon"] = eps.to_string();
  cfg["cross_check"] = !a.no_cross_check;
  doc["config"] = cfg;
  doc.update(lonerun::certificate_to_json(lonerun::certify_kappa(D, a.p, eps, !a.no_cross_check)));
  emit(doc, fmt);
  return 0;
}

// ---- fourier-check -----------------------------------------------------------

struct fourier_args {
  std::vector<std::uint64_t> primes = {7, 101, 499};
  std::uint64_t intervals = 20;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
};

// the invariant suite: closed form vs naive transform, the 1/(2 norm)
// envelope, inversion round-trip, conjugate symmetry, exact zero frequency,
// and the convolution identity on self-convolved arcs
int run_fourier_check(const fourier_args& a) {
  auto fmt = parse_format(a.format);
  if (fmt == out_format::csv) throw usage_error("fourier-check has no csv schema; use json or human");
  if (a.intervals == 0) throw usage_error("--intervals must be positive");
  const double tol = 1e-9;
  const double conv_tol = 1e-6;
  std::uint64_t seed = effective_seed(a.seed_given, a.seed, std::nullopt);

  json doc;
  doc["command"] = "fourier-check";
  json cfg;
  cfg["p"] = a.primes;
  cfg["intervals"] = a.intervals;
  cfg["seed"] = seed;
  cfg["tolerance"] = tol;
  cfg["convolution_tolerance"] = conv_tol;
  doc["config"] = cfg;

  bool all_pass = true;
  json points = json::array();
  lonerun::splitmix64 gen(seed);
  for (std::uint64_t p : a.primes) {
    if (!lonerun::is_prime(p)) throw usage_error("--p: " + std::to_string(p) + " is not prime");
    double closed_err = 0, envelope_excess = 0, inversion_err = 0, symmetry_err = 0,
           zero_freq_err = 0, conv_err = 0;
    for (std::uint64_t rep = 0; rep < a.intervals; ++rep) {
      std::uint64_t s = lonerun::uniform_below(gen, p);
      std::uint64_t l = s + lonerun::uniform_below(gen, p - s);
      std::vector<double> ind(p, 0.0);
      for (std::uint64_t x = s; x <= l; ++x) ind[x] = 1.0;
      auto S = lonerun::dft_real(ind, p);
      zero_freq_err = std::max(
          zero_freq_err, std::abs(S.values[0] - std::complex<double>(double(l - s + 1), 0.0)));
      for (std::uint64_t r = 1; r < p; ++r) {
        auto cf = lonerun::interval_coeff(s, l, r, p);
        closed_err = std::max(closed_err, std::abs(S.values[r] - cf));
        double cap = double(p) / (2.0 * double(lonerun::norm_p(r, p)));
        envelope_excess = std::max(envelope_excess, std::abs(cf) - cap);
        symmetry_err = std::max(symmetry_err,
                                std::abs(S.values[p - r] - std::conj(S.values[r])));
      }
      auto back = lonerun::inverse_dft(S);
      for (std::uint64_t x = 0; x < p; ++x)
        inversion_err = std::max(inversion_err, std::abs(back[x] - std::complex<double>(ind[x])));
      // arc self-convolution: Bhat must equal Chat^2
      lonerun::rational eps(1 + lonerun::int128(lonerun::uniform_below(gen, 9)), 20);
      auto C = lonerun::arc_set_C(p, eps);
      auto Chat = lonerun::dft_counts(C.indicator(), p);
      auto Bhat = lonerun::dft_counts(lonerun::self_convolution(C), p);
      for (std::uint64_t r = 0; r < p; ++r)
        conv_err = std::max(conv_err,
                            std::abs(Bhat.values[r] - Chat.values[r] * Chat.values[r]));
    }
    bool pass = closed_err <= tol && envelope_excess <= tol && inversion_err <= tol &&
                symmetry_err <= tol && zero_freq_err <= tol && conv_err <= conv_tol;
    all_pass = all_pass && pass;
    json row;
    row["p"] = p;
    row["max_closed_form_err"] = closed_err;
    row["max_envelope_excess"] = envelope_excess;
    row["max_inversion_err"] = inversion_err;
    row["max_symmetry_err"] = symmetry_err;
    row["max_zero_freq_err"] = zero_freq_err;
    row["max_convolution_err"] = conv_err;
    row["pass"] = pass;
    points.push_back(std::move(row));
  }
  doc["points"] = std::move(points);
  doc["pass"] = all_pass;
  emit(doc, fmt);
  return all_pass ? 0 : 1;
}

// ---- survey -------------------------------------------------------------------

struct survey_args {
  std::string kind = "kappa_survey";
  std::vector<std::uint64_t> points;
  std::uint32_t k = 2;
  std::string epsilon = "1/10";
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  bool threshold_mode = false;
  std::uint32_t L = 0;
  std::uint32_t threads = 1;
  bool timings = false;
  bool wide = false;
  std::string out;
  std::string out_format = "csv";
  std::string config_path;
  std::string format = "json";

  bool seed_given = false, kind_given = false, points_given = false, k_given = false;
  bool eps_given = false, trials_given = false, threshold_given = false, L_given = false;
  bool threads_given = false, timings_given = false, wide_given = false;
};

int run_survey_cmd(const survey_args& a) {
  auto fmt = parse_format(a.format);

  lonerun::experiment_config cfg;
  std::optional<std::uint64_t> config_seed;
  const bool no_file = a.config_path.empty();
  if (!no_file) {
    std::ifstream in(a.config_path);
    if (!in) throw usage_error("--config: cannot open '" + a.config_path + "'");
    json j;
    try {
      j = json::parse(in);
      cfg = lonerun::config_from_json(j);
    } catch (const std::exception& e) {
      throw usage_error("--config: " + std::string(e.what()));
    }
    if (j.contains("master_seed")) config_seed = cfg.master_seed;
  }
  // explicit flags override whatever the config document said
  if (a.kind_given || no_file) {
    try {
      cfg.kind = lonerun::kind_from_name(a.kind);
    } catch (const std::exception& e) {
      throw usage_error(std::string("--kind: ") + e.what());
    }
  }
  if (a.points_given) cfg.points = a.points;
  if (a.k_given || no_file) cfg.k = a.k;
  if (a.eps_given || no_file) cfg.epsilon = parse_rational_flag(a.epsilon, "--epsilon");
  if (a.trials_given || no_file) cfg.trials_per_point = a.trials;
  if (a.threshold_given || no_file) cfg.threshold_mode = a.threshold_mode;
  if (a.L_given || no_file) cfg.L = a.L;
  if (a.threads_given || no_file) cfg.threads = a.threads;
  if (a.timings_given || no_file) cfg.record_timings = a.timings;
  if (a.wide_given || no_file) cfg.allow_wide = a.wide;
  cfg.master_seed = effective_seed(a.seed_given, a.seed, config_seed);
  if (cfg.points.empty()) throw usage_error("survey: no points given (--n or --config)");

  auto res = cfg.kind == lonerun::survey_kind::kappa_survey ? lonerun::run_survey(cfg)
                                                            : lonerun::run_independence_sweep(cfg);

  auto out_fmt = [&] {
    try {
      return lonerun::format_from_name(a.out_format);
    } catch (const std::exception& e) {
      throw usage_error(std::string("--out-format: ") + e.what());
    }
  }();
  if (!a.out.empty()) lonerun::persist(res.records, a.out, out_fmt);

  if (fmt == out_format::csv) {
    std::cerr << "# config: " << lonerun::config_to_json(cfg).dump() << '\n';
    if (a.out.empty()) {
      lonerun::emit_records(res.records, std::cout, lonerun::record_format::csv);
    } else {
      std::cerr << "# records written to " << a.out << '\n';
    }
    return 0;
  }

  json doc;
  doc["command"] = "survey";
  doc["config"] = lonerun::config_to_json(cfg);
  json summary = json::array();
  for (const auto& s : res.summary) summary.push_back(lonerun::summary_to_json(s));
  doc["summary"] = std::move(summary);
  if (!a.out.empty()) {
    doc["out"] = a.out;
    doc["records_written"] = res.records.size();
  } else if (fmt == out_format::json) {
    json records = json::array();
    for (const auto& r : res.records) records.push_back(lonerun::record_to_json(r));
    doc["records"] = std::move(records);
  }
  emit(doc, fmt);
  return 0;
}

// ---- color -----------------------------------------------------------------

struct color_args {
  std::string set;
  std::uint64_t M = 0;
  std::string format = "json";
};

int run_color(const color_args& a) {
  auto fmt = parse_format(a.format);
  auto D = parse_set_flag(a.set, "--set");
  auto col = lonerun::build_coloring(D, a.M);
  auto greedy = lonerun::greedy_chromatic_upper(D, a.M);

  if (fmt == out_format::csv) {
    json cfg;
    cfg["set"] = D.values();
    cfg["M"] = a.M;
    std::cerr << "# config: " << cfg.dump() << '\n';
    std::cout << "vertex,color\n";
    for (std::uint64_t v = 1; v <= a.M; ++v) std::cout << v << ',' << col.colors[v - 1] << '\n';
    return 0;
  }

  json doc;
  doc["command"] = "color";
  json cfg;
  cfg["set"] = D.values();
  cfg["M"] = a.M;
  doc["config"] = cfg;
  doc.update(lonerun::coloring_report_to_json(col, greedy, a.M));
  doc["witness_time"] = col.witness_time.to_string();
  doc["colors_used"] = col.colors_used;
  emit(doc, fmt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lonerun: an exact-arithmetic laboratory for the lonely runner problem"};
  app.require_subcommand(1);

  kappa_args ka;
  auto* kappa_cmd = app.add_subcommand(
      "kappa", "exact kappa(D) = sup_t min_d ||t d|| over a finite speed set");
  kappa_cmd->add_option("--set", ka.set, "comma-separated speeds, e.g. 1,3,4")->required();
  kappa_cmd->add_option("--grid", ka.grid, "also evaluate on a uniform grid of this many points");
  kappa_cmd->add_option("--threshold", ka.threshold,
                        "decide kappa >= num/den instead of computing the exact value");
  kappa_cmd->add_flag("--wide", ka.wide, "exact path for speeds beyond 1e9");
  kappa_cmd->add_option("--format", ka.format, "json, human");

  independence_args ia;
  auto* ind_cmd = app.add_subcommand(
      "independence", "bounded-coefficient relation search for residues mod p");
  ind_cmd->add_option("--p", ia.p, "prime modulus")->required();
  ind_cmd->add_option("--L", ia.L, "L1 budget for coefficient vectors")->required();
  ind_cmd->add_option("--set", ia.set, "decide independence of this one set");
  ind_cmd->add_flag("--count-all", ia.count_all, "exhaustively count dependent k-subsets");
  ind_cmd->add_option("--sample", ia.sample, "Monte Carlo over this many random k-subsets");
  ind_cmd->add_option("--k", ia.k, "subset size for --count-all / --sample (default 2)");
  auto* ind_seed = ind_cmd->add_option("--seed", ia.seed, "master seed for --sample");
  ind_cmd->add_option("--format", ia.format, "json, human");

  certify_args ca;
  auto* cert_cmd = app.add_subcommand(
      "certify", "independence-threshold certificate that kappa(D) >= 1/2 - epsilon");
  cert_cmd->add_option("--set", ca.set, "comma-separated speeds")->required();
  cert_cmd->add_option("--p", ca.p, "prime modulus")->required();
  cert_cmd->add_option("--epsilon", ca.epsilon, "rational in (0, 1/2), e.g. 9/20")->required();
  cert_cmd->add_flag("--no-cross-check", ca.no_cross_check,
                     "skip the exact kappa and direct-count confirmation");
  cert_cmd->add_option("--format", ca.format, "json, human");

  fourier_args fa;
  auto* four_cmd = app.add_subcommand(
      "fourier-check", "spectral invariant suite on random intervals and arcs");
  four_cmd->add_option("--p", fa.primes, "comma-separated primes")->delimiter(',');
  four_cmd->add_option("--intervals", fa.intervals, "random intervals per prime (default 20)");
  auto* four_seed = four_cmd->add_option("--seed", fa.seed, "seed for the random intervals");
  four_cmd->add_option("--format", fa.format, "json, human");

  survey_args sa;
  auto* survey_cmd = app.add_subcommand(
      "survey", "seeded random-set experiments with reproducible record streams");
  survey_cmd->add_option("--kind", sa.kind, "kappa_survey or independence_sweep");
  survey_cmd->add_option("--n,--points", sa.points,
                         "points: max speeds (surveys) or primes (sweeps)")
      ->delimiter(',');
  survey_cmd->add_option("--k", sa.k, "subset size");
  survey_cmd->add_option("--epsilon", sa.epsilon, "rational in (0, 1/2)");
  survey_cmd->add_option("--trials", sa.trials, "trials per point");
  survey_cmd->add_option("--seed", sa.seed, "master seed (beats LONERUN_SEED and --config)");
  survey_cmd->add_flag("--threshold-mode", sa.threshold_mode,
                       "decide kappa >= 1/2 - epsilon without the full scan");
  survey_cmd->add_option("--L", sa.L, "independence budget (sweeps)");
  survey_cmd->add_option("--threads", sa.threads,
                         "worker threads; output is identical for any value");
  survey_cmd->add_flag("--timings", sa.timings, "record wall-clock per trial (not reproducible)");
  survey_cmd->add_flag("--wide", sa.wide, "allow points beyond 1e9 (slower exact path)");
  survey_cmd->add_option("--out", sa.out, "write the record stream to this file");
  survey_cmd->add_option("--out-format", sa.out_format, "csv or jsonl (default csv)");
  survey_cmd->add_option("--config", sa.config_path, "JSON config document; flags override it");
  survey_cmd->add_option("--format", sa.format, "json, csv, human");

  color_args cla;
  auto* color_cmd = app.add_subcommand(
      "color", "distance-graph coloring of {1..M} from the kappa witness");
  color_cmd->add_option("--set", cla.set, "comma-separated speeds")->required();
  color_cmd->add_option("--M", cla.M, "number of vertices")->required();
  color_cmd->add_option("--format", cla.format, "json, csv, human");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  ia.seed_given = ind_seed->count() > 0;
  fa.seed_given = four_seed->count() > 0;
  sa.seed_given = survey_cmd->count("--seed") > 0;
  sa.kind_given = survey_cmd->count("--kind") > 0;
  sa.points_given = survey_cmd->count("--n") > 0;
  sa.k_given = survey_cmd->count("--k") > 0;
  sa.eps_given = survey_cmd->count("--epsilon") > 0;
  sa.trials_given = survey_cmd->count("--trials") > 0;
  sa.threshold_given = survey_cmd->count("--threshold-mode") > 0;
  sa.L_given = survey_cmd->count("--L") > 0;
  sa.threads_given = survey_cmd->count("--threads") > 0;
  sa.timings_given = survey_cmd->count("--timings") > 0;
  sa.wide_given = survey_cmd->count("--wide") > 0;

  try {
    if (*kappa_cmd) return run_kappa(ka);
    if (*ind_cmd) return run_independence(ia);
    if (*cert_cmd) return run_certify(ca);
    if (*four_cmd) return run_fourier_check(fa);
    if (*survey_cmd) return run_survey_cmd(sa);
    if (*color_cmd) return run_color(cla);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#pragma once

// Randomized experiment drivers: kappa surveys over random speed sets and
// L-independence sweeps over random residue sets, with reproducible record
// streams.
//
// Determinism contract: every trial is seeded by
// derive_seed(master_seed, point, trial_index) and writes into its own
// preallocated slot, so the emitted record stream is byte-identical for any
// --threads value. elapsed_ms is 0 unless record_timings is set (wall-clock
// is the one field that cannot be reproducible; it is opt-in).

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lonerun/kappa.hpp"
#include "lonerun/primes.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/rng.hpp"
#include "lonerun/speed_set.hpp"
#include "lonerun/zp.hpp"

namespace lonerun {

enum class survey_kind { kappa_survey, independence_sweep };

inline const char* kind_name(survey_kind k) {
  return k == survey_kind::kappa_survey ? "kappa_survey" : "independence_sweep";
}

inline survey_kind kind_from_name(std::string_view s) {
  if (s == "kappa_survey") return survey_kind::kappa_survey;
  if (s == "independence_sweep") return survey_kind::independence_sweep;
  throw std::invalid_argument("unknown record kind '" + std::string(s) + "'");
}

struct experiment_config {
  survey_kind kind = survey_kind::kappa_survey;
  std::vector<std::uint64_t> points;  // n values (surveys) or primes p (sweeps)
  std::uint32_t k = 2;
  rational epsilon{1, 10};
  std::uint64_t trials_per_point = 100;
  std::uint64_t master_seed = 0;
  bool threshold_mode = false;  // surveys: decide kappa >= 1/2 - eps without the full scan
  std::uint32_t L = 0;          // sweeps: independence budget (required there)
  std::uint32_t threads = 1;
  bool record_timings = false;
  bool allow_wide = false;      // lift the 1e9 speed guard (slower exact path)

  void validate() const {
    if (points.empty()) throw std::invalid_argument("config: points must be nonempty");
    if (k == 0) throw std::invalid_argument("config: k must be positive");
    if (trials_per_point == 0) throw std::invalid_argument("config: trials_per_point must be positive");
    if (!(rational(0) < epsilon && epsilon < rational(1, 2)))
      throw std::invalid_argument("config: epsilon must lie in (0, 1/2)");
    if (threads == 0) throw std::invalid_argument("config: threads must be positive");
    if (kind == survey_kind::kappa_survey) {
      for (auto n : points) {
        if (n < k) throw std::invalid_argument("config: point smaller than k");
        if (n > 1'000'000'000ull && !allow_wide)
          throw std::domain_error("config: n exceeds 1e9; enable the wide path");
      }
    } else {
      if (L == 0) throw std::invalid_argument("config: sweeps need an explicit L >= 1");
      for (auto p : points) {
        if (!is_prime(p)) throw std::invalid_argument("config: sweep point " + std::to_string(p) + " is not prime");
        if (p - 1 < k) throw std::invalid_argument("config: point smaller than k");
        if (2ull * L >= p) throw std::domain_error("config: L >= p/2 at p = " + std::to_string(p));
      }
    }
  }
};

struct trial_record {
  survey_kind kind = survey_kind::kappa_survey;
  std::uint64_t n_or_p = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t derived_seed = 0;
  std::uint32_t k = 0;
  rational epsilon;
  std::vector<std::uint64_t> speeds;
  std::optional<rational> kappa;  // absent under threshold mode, on failure, and in sweeps
  bool passed = false;
  std::uint64_t elapsed_ms = 0;
  std::optional<std::string> error;  // guard failures are data, not crashes

  friend bool operator==(const trial_record& a, const trial_record& b) {
    return a.kind == b.kind && a.n_or_p == b.n_or_p && a.trial_index == b.trial_index &&
           a.derived_seed == b.derived_seed && a.k == b.k && a.epsilon == b.epsilon &&
           a.speeds == b.speeds && a.kappa == b.kappa && a.passed == b.passed &&
           a.elapsed_ms == b.elapsed_ms && a.error == b.error;
  }
};

struct point_summary {
  std::uint64_t point = 0;
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  double probability = 0.0;
  double std_error = 0.0;
  std::optional<rational> dependent_fraction_cap;  // sweeps only: (2L+1)^k k/(p-k)
};

struct survey_result {
  experiment_config config;
  std::vector<trial_record> records;
  std::vector<point_summary> summary;
};

namespace detail {

// run fn(i) for i in [0, count) on the requested number of threads; slot
// indexed, so outputs are position-stable no matter the schedule
template <class Fn>
void parallel_for(std::uint64_t count, std::uint32_t threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  std::uint32_t spawn = threads > count ? static_cast<std::uint32_t>(count) : threads;
  pool.reserve(spawn);
  for (std::uint32_t t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

inline std::vector<point_summary> summarize(const experiment_config& cfg,
                                            const std::vector<trial_record>& records) {
  std::vector<point_summary> out;
  out.reserve(cfg.points.size());
  for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
    point_summary s;
    s.point = cfg.points[pi];
    for (std::uint64_t t = 0; t < cfg.trials_per_point; ++t) {
      const auto& r = records[pi * cfg.trials_per_point + t];
      ++s.trials;
      if (r.passed) ++s.passes;
    }
    s.probability = static_cast<double>(s.passes) / static_cast<double>(s.trials);
    s.std_error = std::sqrt(s.probability * (1.0 - s.probability) / static_cast<double>(s.trials));
    if (cfg.kind == survey_kind::independence_sweep)
      s.dependent_fraction_cap = dependent_fraction_bound(s.point, cfg.k, cfg.L);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Estimates P(kappa(D) >= 1/2 - epsilon) over uniform k-subsets D of
// {1, ..., n} for each n in config.points.
inline survey_result run_survey(const experiment_config& cfg) {
  if (cfg.kind != survey_kind::kappa_survey)
    throw std::invalid_argument("run_survey: config.kind must be kappa_survey");
  cfg.validate();
  const rational theta = rational(1, 2) - cfg.epsilon;
  const std::uint64_t total = cfg.points.size() * cfg.trials_per_point;
  std::vector<trial_record> records(total);
  detail::parallel_for(total, cfg.threads, [&](std::uint64_t idx) {
    const std::size_t pi = static_cast<std::size_t>(idx / cfg.trials_per_point);
    const std::uint64_t ti = idx % cfg.trials_per_point;
    const std::uint64_t n = cfg.points[pi];
    trial_record rec;
    rec.kind = cfg.kind;
    rec.n_or_p = n;
    rec.trial_index = ti;
    rec.derived_seed = derive_seed(cfg.master_seed, n, ti);
    rec.k = cfg.k;
    rec.epsilon = cfg.epsilon;
    auto t0 = std::chrono::steady_clock::now();
    try {
      rec.speeds = sample_k_subset(n, cfg.k, rec.derived_seed);
      speed_set D(rec.speeds);
      if (cfg.threshold_mode) {
        rec.passed = kappa_at_least(D, theta).has_value();
      } else {
        auto kr = D.max_speed() > kKappaFastMaxSpeed ? kappa_exact_wide(D) : kappa_exact(D);
        rec.kappa = kr.value;
        rec.passed = kr.value >= theta;
      }
    } catch (const std::exception& e) {
      rec.passed = false;
      rec.kappa.reset();
      rec.error = e.what();
    }
    if (cfg.record_timings) {
      auto dt = std::chrono::steady_clock::now() - t0;
      rec.elapsed_ms =
          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
    }
    records[idx] = std::move(rec);
  });
  survey_result out;
  out.config = cfg;
  out.summary = detail::summarize(cfg, records);
  out.records = std::move(records);
  return out;
}

// Estimates the L-independent fraction of uniform k-subsets of {1, ..., p-1}
// for each prime p in config.points.
inline survey_result run_independence_sweep(const experiment_config& cfg) {
  if (cfg.kind != survey_kind::independence_sweep)
    throw std::invalid_argument("run_independence_sweep: config.kind must be independence_sweep");
  cfg.validate();
  const std::uint64_t total = cfg.points.size() * cfg.trials_per_point;
  std::vector<trial_record> records(total);
  detail::parallel_for(total, cfg.threads, [&](std::uint64_t idx) {
    const std::size_t pi = static_cast<std::size_t>(idx / cfg.trials_per_point);
    const std::uint64_t ti = idx % cfg.trials_per_point;
    const std::uint64_t p = cfg.points[pi];
    trial_record rec;
    rec.kind = cfg.kind;
    rec.n_or_p = p;
    rec.trial_index = ti;
    rec.derived_seed = derive_seed(cfg.master_seed, p, ti);
    rec.k = cfg.k;
    rec.epsilon = cfg.epsilon;
    auto t0 = std::chrono::steady_clock::now();
    try {
      rec.speeds = sample_k_subset(p - 1, cfg.k, rec.derived_seed);
      rec.passed = is_L_independent(speed_set(rec.speeds), p, cfg.L).independent;
    } catch (const std::exception& e) {
      rec.passed = false;
      rec.error = e.what();
    }
    if (cfg.record_timings) {
      auto dt = std::chrono::steady_clock::now() - t0;
      rec.elapsed_ms =
          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
    }
    records[idx] = std::move(rec);
  });
  survey_result out;
  out.config = cfg;
  out.summary = detail::summarize(cfg, records);
  out.records = std::move(records);
  return out;
}

// ---- record serialization ----------------------------------------------
//
// CSV schema (fixed, plot-ready; kappa columns empty when not computed):
//   kind,n_or_p,trial_index,derived_seed,k,epsilon,D,kappa_num,kappa_den,passed,elapsed_ms
// with epsilon as "num/den", D as semicolon-joined speeds, passed as 1/0.
// JSON lines carry the same fields plus the optional error string.

inline constexpr std::string_view kRecordCsvHeader =
    "kind,n_or_p,trial_index,derived_seed,k,epsilon,D,kappa_num,kappa_den,passed,elapsed_ms";

enum class record_format { csv, json_lines };

inline record_format format_from_name(std::string_view s) {
  if (s == "csv") return record_format::csv;
  if (s == "jsonl" || s == "json-lines") return record_format::json_lines;
  throw std::invalid_argument("unknown record format '" + std::string(s) + "'");
}

inline std::string record_to_csv(const trial_record& r) {
  std::ostringstream os;
  os << kind_name(r.kind) << ',' << r.n_or_p << ',' << r.trial_index << ',' << r.derived_seed
     << ',' << r.k << ',' << r.epsilon.to_string() << ',';
  for (std::size_t i = 0; i < r.speeds.size(); ++i) {
    if (i) os << ';';
    os << r.speeds[i];
  }
  os << ',';
  if (r.kappa) os << to_string(r.kappa->num()) << ',' << to_string(r.kappa->den());
  else os << ',';
  os << ',' << (r.passed ? 1 : 0) << ',' << r.elapsed_ms;
  return os.str();
}

inline nlohmann::ordered_json record_to_json(const trial_record& r) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(r.kind);
  j["n_or_p"] = r.n_or_p;
  j["trial_index"] = r.trial_index;
  j["derived_seed"] = r.derived_seed;
  j["k"] = r.k;
  j["epsilon"] = r.epsilon.to_string();
  j["D"] = r.speeds;
  if (r.kappa) j["kappa"] = r.kappa->to_string();
  else j["kappa"] = nullptr;
  j["passed"] = r.passed;
  j["elapsed_ms"] = r.elapsed_ms;
  if (r.error) j["error"] = *r.error;
  return j;
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

inline trial_record record_from_csv(const std::string& line) {
  auto f = detail::split(line, ',');
  if (f.size() != 11) throw std::invalid_argument("csv record: expected 11 fields");
  trial_record r;
  r.kind = kind_from_name(f[0]);
  r.n_or_p = detail::parse_u64(f[1], "n_or_p");
  r.trial_index = detail::parse_u64(f[2], "trial_index");
  r.derived_seed = detail::parse_u64(f[3], "derived_seed");
  r.k = static_cast<std::uint32_t>(detail::parse_u64(f[4], "k"));
  r.epsilon = rational::parse(f[5]);
  if (!f[6].empty())
    for (auto& tok : detail::split(f[6], ';')) r.speeds.push_back(detail::parse_u64(tok, "speed"));
  if (!f[7].empty() || !f[8].empty()) {
    if (f[7].empty() || f[8].empty()) throw std::invalid_argument("csv record: half a kappa");
    r.kappa = rational(rational::parse(f[7]).num(), rational::parse(f[8]).num());
  }
  if (f[9] != "0" && f[9] != "1") throw std::invalid_argument("csv record: passed must be 0/1");
  r.passed = f[9] == "1";
  r.elapsed_ms = detail::parse_u64(f[10], "elapsed_ms");
  return r;
}

inline trial_record record_from_json(const nlohmann::ordered_json& j) {
  trial_record r;
  r.kind = kind_from_name(j.at("kind").get<std::string>());
  r.n_or_p = j.at("n_or_p").get<std::uint64_t>();
  r.trial_index = j.at("trial_index").get<std::uint64_t>();
  r.derived_seed = j.at("derived_seed").get<std::uint64_t>();
  r.k = j.at("k").get<std::uint32_t>();
  r.epsilon = rational::parse(j.at("epsilon").get<std::string>());
  r.speeds = j.at("D").get<std::vector<std::uint64_t>>();
  if (!j.at("kappa").is_null()) r.kappa = rational::parse(j.at("kappa").get<std::string>());
  r.passed = j.at("passed").get<bool>();
  r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

inline void emit_records(const std::vector<trial_record>& records, std::ostream& os,
                         record_format fmt) {
  if (fmt == record_format::csv) {
    os << kRecordCsvHeader << '\n';
    for (const auto& r : records) os << record_to_csv(r) << '\n';
  } else {
    for (const auto& r : records) os << record_to_json(r).dump() << '\n';
  }
}

inline void persist(const std::vector<trial_record>& records, const std::string& path,
                    record_format fmt) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation anywhere
  if (!out) throw std::runtime_error("persist: cannot open '" + path + "' for writing");
  emit_records(records, out, fmt);
  if (!out) throw std::runtime_error("persist: write to '" + path + "' failed");
}

inline std::vector<trial_record> load_records(const std::string& path, record_format fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_records: cannot open '" + path + "'");
  std::vector<trial_record> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (fmt == record_format::csv && first) {
      first = false;
      if (line != kRecordCsvHeader)
        throw std::invalid_argument("load_records: unexpected csv header");
      continue;
    }
    first = false;
    if (fmt == record_format::csv) out.push_back(record_from_csv(line));
    else out.push_back(record_from_json(nlohmann::ordered_json::parse(line)));
  }
  return out;
}

}  // namespace lonerun

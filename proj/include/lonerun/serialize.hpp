#pragma once

// JSON views of the library's result structs, shared by the CLI and the
// tests. Key order is pinned (ordered_json) so emitted documents are
// byte-stable. Exact quantities (rationals, 128-bit counts) are carried as
// "num/den" or decimal strings, never as floating point.

#include <optional>
#include <string>

#include <json.hpp>

#include "lonerun/big.hpp"
#include "lonerun/certificate.hpp"
#include "lonerun/distance_graph.hpp"
#include "lonerun/experiments.hpp"
#include "lonerun/kappa.hpp"
#include "lonerun/zp.hpp"

namespace lonerun {

using json = nlohmann::ordered_json;

inline json kappa_result_to_json(const speed_set& D, const kappa_result& kr) {
  json j;
  j["D"] = D.values();
  j["kappa"] = kr.value.to_string();
  j["witness"] = kr.witness.to_string();
  j["candidates_evaluated"] = kr.candidates_evaluated;
  return j;
}

inline json independence_report_to_json(const independence_report& rep) {
  json j;
  j["p"] = rep.p;
  j["L"] = rep.L;
  j["independent"] = rep.independent;
  if (rep.witness) j["witness"] = *rep.witness;
  else j["witness"] = nullptr;
  j["vectors_checked"] = rep.vectors_checked;
  return j;
}

inline json certificate_to_json(const certificate_result& c) {
  json j;
  j["p"] = c.p;
  j["epsilon"] = c.epsilon.to_string();
  j["D"] = c.D.values();
  j["threshold_radicand"] = c.threshold_radicand.to_string();
  j["threshold_root"] = c.threshold_root;
  j["L_used"] = c.L_used;
  j["independent"] = c.independence.independent;
  if (c.independence.witness) j["witness_relation"] = *c.independence.witness;
  else j["witness_relation"] = nullptr;
  if (c.lonely_I) j["I"] = to_string(*c.lonely_I);
  else j["I"] = nullptr;
  if (c.witness_t) j["witness_t"] = *c.witness_t;
  else j["witness_t"] = nullptr;
  if (c.kappa_check) j["kappa"] = c.kappa_check->value.to_string();
  else j["kappa"] = nullptr;
  j["arc_size"] = c.arc_size;
  j["certified"] = c.certified;
  j["positivity_licensed"] = c.positivity_licensed;
  return j;
}

inline json coloring_report_to_json(const coloring_result& col, std::uint32_t greedy_bound,
                                    std::uint64_t M) {
  json j;
  j["D"] = col.D.values();
  j["kappa_num"] = static_cast<std::int64_t>(col.kappa.num());
  j["kappa_den"] = static_cast<std::int64_t>(col.kappa.den());
  j["N"] = col.n_colors;
  j["trivial_bound"] = static_cast<std::uint32_t>(col.D.size() + 1);
  j["greedy_bound"] = greedy_bound;
  j["M"] = M;
  j["proper"] = col.violations.empty();
  return j;
}

inline json sample_to_json(const independence_sample& s) {
  json j;
  j["p"] = s.p;
  j["k"] = s.k;
  j["L"] = s.L;
  j["trials"] = s.trials;
  j["independent_count"] = s.independent_count;
  j["fraction"] = s.fraction;
  j["std_error"] = s.std_error;
  j["seed"] = s.seed;
  return j;
}

inline json summary_to_json(const point_summary& s) {
  json j;
  j["point"] = s.point;
  j["trials"] = s.trials;
  j["passes"] = s.passes;
  j["probability"] = s.probability;
  j["std_error"] = s.std_error;
  if (s.dependent_fraction_cap) j["dependent_fraction_cap"] = s.dependent_fraction_cap->to_string();
  return j;
}

inline json config_to_json(const experiment_config& cfg) {
  json j;
  j["kind"] = kind_name(cfg.kind);
  j["points"] = cfg.points;
  j["k"] = cfg.k;
  j["epsilon"] = cfg.epsilon.to_string();
  j["trials_per_point"] = cfg.trials_per_point;
  j["master_seed"] = cfg.master_seed;
  j["threshold_mode"] = cfg.threshold_mode;
  j["L"] = cfg.L;
  j["threads"] = cfg.threads;
  j["record_timings"] = cfg.record_timings;
  j["allow_wide"] = cfg.allow_wide;
  return j;
}

inline experiment_config config_from_json(const json& j) {
  experiment_config cfg;
  cfg.kind = kind_from_name(j.at("kind").get<std::string>());
  cfg.points = j.at("points").get<std::vector<std::uint64_t>>();
  if (j.contains("k")) cfg.k = j.at("k").get<std::uint32_t>();
  if (j.contains("epsilon")) cfg.epsilon = rational::parse(j.at("epsilon").get<std::string>());
  if (j.contains("trials_per_point")) cfg.trials_per_point = j.at("trials_per_point").get<std::uint64_t>();
  if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("threshold_mode")) cfg.threshold_mode = j.at("threshold_mode").get<bool>();
  if (j.contains("L")) cfg.L = j.at("L").get<std::uint32_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<std::uint32_t>();
  if (j.contains("record_timings")) cfg.record_timings = j.at("record_timings").get<bool>();
  if (j.contains("allow_wide")) cfg.allow_wide = j.at("allow_wide").get<bool>();
  return cfg;
}

}  // namespace lonerun

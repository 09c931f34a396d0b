#pragma once

// A set of runner speeds: distinct positive integers, stored sorted.
// Speeds are capped at 2^62 so that every intermediate in the exact engines
// (numerators up to 2*d_max, cross-products up to (2*d_max)^2) fits in 128
// bits — see kappa.hpp for the bound.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lonerun {

inline constexpr std::uint64_t kMaxSpeed = std::uint64_t(1) << 62;

class speed_set {
 public:
  speed_set() = default;  // empty; every algorithm entry point rejects it

  explicit speed_set(std::vector<std::uint64_t> speeds) : v_(std::move(speeds)) {
    if (v_.empty()) throw std::invalid_argument("speed_set: empty");
    std::sort(v_.begin(), v_.end());
    if (v_.front() == 0) throw std::invalid_argument("speed_set: speeds must be positive");
    if (v_.back() > kMaxSpeed) throw std::invalid_argument("speed_set: speed exceeds 2^62");
    for (std::size_t i = 1; i < v_.size(); ++i) {
      if (v_[i] == v_[i - 1])
        throw std::invalid_argument("speed_set: duplicate speed " + std::to_string(v_[i]));
    }
  }

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return v_[i]; }
  std::uint64_t max_speed() const { return v_.back(); }
  const std::vector<std::uint64_t>& values() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  std::uint64_t overall_gcd() const {
    std::uint64_t g = 0;
    for (auto d : v_) g = std::gcd(g, d);
    return g;
  }

  // kappa is invariant under common scaling; the reduced set is the canonical
  // representative
  speed_set normalized() const {
    std::uint64_t g = overall_gcd();
    std::vector<std::uint64_t> out;
    out.reserve(v_.size());
    for (auto d : v_) out.push_back(d / g);
    speed_set s;
    s.v_ = std::move(out);
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) os << ',';
      os << v_[i];
    }
    return os.str();
  }

  // strict parse: rejects duplicates (set semantics live in the type)
  static speed_set parse(std::string_view csv) { return speed_set(parse_values(csv)); }

  // forgiving parse for user-facing frontends: drops duplicates, reports how
  // many were dropped so the caller can warn
  static std::pair<speed_set, std::size_t> parse_dedup(std::string_view csv) {
    auto vals = parse_values(csv);
    std::sort(vals.begin(), vals.end());
    auto last = std::unique(vals.begin(), vals.end());
    std::size_t dropped = static_cast<std::size_t>(vals.end() - last);
    vals.erase(last, vals.end());
    return {speed_set(std::move(vals)), dropped};
  }

  friend bool operator==(const speed_set& a, const speed_set& b) { return a.v_ == b.v_; }

 private:
  static std::vector<std::uint64_t> parse_values(std::string_view csv) {
    std::vector<std::uint64_t> vals;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
      std::size_t next = csv.find(',', pos);
      if (next == std::string_view::npos) next = csv.size();
      std::string tok(csv.substr(pos, next - pos));
      if (tok.empty()) throw std::invalid_argument("speed_set: empty token in list");
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("speed_set: bad integer '" + tok + "'");
      }
      if (used != tok.size()) throw std::invalid_argument("speed_set: bad integer '" + tok + "'");
      vals.push_back(v);
      pos = next + 1;
      if (next == csv.size()) break;
    }
    return vals;
  }

  std::vector<std::uint64_t> v_;
};

inline speed_set normalize(const speed_set& D) { return D.normalized(); }

}  // namespace lonerun

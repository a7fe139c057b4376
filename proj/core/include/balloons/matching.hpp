#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balloons/pointproc.hpp"

namespace balloons {

struct MatchedPair {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  std::uint32_t round = 0;  // 1-based round of the synchronous algorithm
  double dist = 0.0;
  bool certified = false;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// A point removed by an uncertified pair, with the pair distance as scale.
struct TaintEntry {
  std::uint32_t id = 0;
  double scale = 0.0;
};

struct MatchingResult {
  /// In greedy removal order: increasing (dist, u, v).
  std::vector<MatchedPair> pairs;
  std::optional<std::uint32_t> unmatched;
  std::vector<TaintEntry> taint_log;
  bool has_rounds = false;
  bool has_certification = false;
};

enum class MatcherKind { accelerated, naive };

struct MatchOptions {
  MatcherKind kind = MatcherKind::accelerated;
  bool rounds = true;
  bool certify = true;
};

/// Largest input accepted by the brute-force oracle.
inline constexpr std::size_t kBruteForceLimit = 5000;

/// The unique stable partial matching, obtained by repeatedly removing the
/// globally closest live pair under the order (distance, smaller id, larger id).
MatchingResult greedy_stable_matching(const PointSet& ps, const MatchOptions& options = {});

/// Literal synchronous algorithm: each round removes every mutually closest
/// pair among the remaining points.
MatchingResult brute_force_matching(const PointSet& ps);

/// Fills in round indices for pairs listed in greedy order.
void assign_rounds(const PointSet& ps, MatchingResult& mr);

/// Boundary-taint certification: a pair is certified iff both endpoints are
/// farther than the pair distance from the window boundary and from every
/// earlier tainted point; endpoints of uncertified pairs become tainted.
void certify(const PointSet& ps, MatchingResult& mr);

/// Number of unordered pairs {x, y} strictly closer than both of their match
/// distances (unmatched points have match distance infinity).
std::uint64_t verify_stability(const PointSet& ps, const MatchingResult& mr);

/// Quadratic reference implementation of verify_stability.
std::uint64_t verify_stability_brute(const PointSet& ps, const MatchingResult& mr);

/// T_x = dist(x, m(x)) / 2, or infinity for the unmatched point; indexed by id.
std::vector<double> pop_times(const PointSet& ps, const MatchingResult& mr);

/// m(x) by id, kNoPoint for unmatched.
std::vector<std::uint32_t> partners(const PointSet& ps, const MatchingResult& mr);

/// Whether each point's pair is certified (false for the unmatched point).
std::vector<std::uint8_t> certified_points(const PointSet& ps, const MatchingResult& mr);

}  // namespace balloons

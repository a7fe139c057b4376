#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library routine it is meant to check.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "balloons/matching.hpp"
#include "balloons/pointproc.hpp"
#include "balloons/treesep.hpp"

namespace balloons::testing {

// ---- matching

/// Runs the matcher and records the stability check in a process-wide tally.
MatchingResult match_checked(const PointSet& ps, const MatchOptions& options = {});
MatchingResult brute_checked(const PointSet& ps);

struct StabilityTally {
  std::uint64_t outputs = 0;
  std::uint64_t points = 0;
  std::uint64_t violations = 0;
};
StabilityTally stability_tally();

/// Event-driven balloon simulation: every point grows a ball at unit rate,
/// and the earliest contact between two live balloons pops both. Returns the
/// pop time of each id (infinity if it never pops).
std::vector<double> contact_simulation(const PointSet& ps);

/// Exhaustive stability count from a partner array (kNoPoint = unmatched).
std::uint64_t count_blocking_pairs(const PointSet& ps, std::span<const std::uint32_t> partner);

// ---- configuration model

/// All perfect matchings of {0..n-1} as partner arrays.
std::vector<std::vector<std::uint32_t>> all_perfect_matchings(std::uint32_t n);

/// Calls f on every d-tuple of perfect matchings of n points.
void for_each_colored_graph(std::uint32_t n, int d,
                            const std::function<void(const ColoredMultigraph&)>& f);

/// The layered event behind t-separation for the roots 0..k-1, checked by
/// following color words. For t = 2s the vertices reached by non-backtracking
/// words of length <= s are pairwise distinct across all roots. For t = 2s - 1
/// this holds for length <= s - 1, and in each color the leaves at depth
/// s - 1 are matched to vertices outside every ball (partners in different
/// colors may coincide).
bool layered_event(const ColoredMultigraph& g, std::uint32_t k, int t);

/// Largest t-separated subset by enumeration of all subsets (n <= 24).
std::uint32_t max_separated_by_subsets(const Graph& g, int t);

/// All-pairs BFS distances, capped at cap + 1.
std::vector<std::vector<int>> bfs_distances(const Graph& g, int cap);

// ---- hyperbolic

/// Random automorphism of the disk: z -> e^{i theta} (z - a) / (1 - conj(a) z).
struct Mobius {
  std::complex<double> a;
  double theta = 0.0;
  std::complex<double> operator()(std::complex<double> z) const;
};

/// Distance via arcosh of the cross-ratio form, written out separately from the library.
double hyperbolic_distance_ref(std::complex<double> z, std::complex<double> w);

// ---- statistics

double median(std::vector<double> v);
double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);

}  // namespace balloons::testing

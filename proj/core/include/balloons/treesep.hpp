#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace balloons {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// n vertices with d perfect matchings; color c joins v to partner(v, c).
/// Parallel edges are allowed, loops are not.
class ColoredMultigraph {
 public:
  /// matchings[c][v] is v's partner in color c. Validates every matching.
  static ColoredMultigraph from_matchings(std::vector<std::vector<std::uint32_t>> matchings);

  std::uint32_t size() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(matchings_.size()); }
  std::uint32_t partner(std::uint32_t v, int color) const noexcept {
    return matchings_[static_cast<std::size_t>(color)][v];
  }
  const std::vector<std::vector<std::uint32_t>>& matchings() const noexcept { return matchings_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> matchings_;
};

/// Union of d independent uniform perfect matchings on n (even) vertices.
ColoredMultigraph generate_configuration_model(std::uint32_t n, int d, std::uint64_t seed);

/// Number of pairs of parallel edges, sum over vertex pairs of C(multiplicity, 2).
std::uint64_t count_double_edges(const ColoredMultigraph& g);

/// Mean of count_double_edges under the model: C(d,2) (n/2) / (n-1).
double expected_double_edges(std::uint32_t n, int d);

/// Simple adjacency structure (multi-edges kept) used by the separated-set solvers.
struct Graph {
  std::vector<std::uint32_t> offset;  // size n + 1
  std::vector<std::uint32_t> adj;

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(offset.size() - 1); }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const noexcept {
    return {adj.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

Graph to_graph(const ColoredMultigraph& g);
Graph graph_from_edges(std::uint32_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

/// The finite ball of radius `radius` about the root of the d-regular tree,
/// vertices numbered in breadth-first (dense id) order.
Graph tree_ball_graph(int d, int radius);

/// Fraction of vertices whose radius-r ball is a tree (equivalently, is
/// color-isomorphic to the radius-r ball of the colored d-regular tree).
double local_tree_fraction(const ColoredMultigraph& g, int r);

/// True iff all pairwise graph distances within `set` exceed t.
bool is_t_separated(const Graph& g, std::span<const std::uint32_t> set, int t);

/// Maximal t-separated set from a random-order greedy scan.
std::vector<std::uint32_t> greedy_max_separated(const Graph& g, int t, std::uint64_t seed);

/// Largest input accepted by exact_max_separated.
inline constexpr std::uint32_t kExactSeparatedLimit = 60;

/// Exact maximum t-separated cardinality: maximum independent set of the
/// t-th distance power, by branch and bound with a clique-cover bound.
std::uint32_t exact_max_separated(const Graph& g, int t);

/// Vertices whose iid uniform label is strictly the smallest in their
/// radius-t ball.
std::vector<std::uint32_t> local_factor_separated(const Graph& g, int t, std::uint64_t seed);

// --------------------------------------------------------------- bounds

/// 2t log(d-1) / (d-1)^t.
double bound_density(int d, int t);
/// The t = 1 bound quoted with d in place of d-1: 2 log d / d.
double bollobas_density(int d);

/// b_i = (d(d-1)^i - 2)/(d-2), vertices in a radius-i ball of the tree.
double tree_ball_count(int d, int i);

struct BoundParams {
  int d = 3;
  int t = 1;
  int s = 1;  // t = 2s or t = 2s - 1
  double alpha = 0.0;
  std::vector<double> alpha_i;  // alpha * b_i, i = 0..s
  std::vector<double> beta_i;   // alpha * d (d-1)^i, i = 0..s
  double gamma = 0.0;           // 2 alpha ((d-1)^s - 1)/(d-2)
};

BoundParams bound_params(int d, int t, double alpha);

double binary_entropy(double a);

struct GapResult {
  BoundParams params;
  double p = 0.0;
  double H = 0.0;
  double margin = 0.0;  // p - H; +inf when infeasible
  /// A layer fraction reaches 1: no set of this density can even be packed,
  /// so the structured event has probability zero.
  bool infeasible = false;
  /// Even t: (d-1)^{2s} >= (2/alpha)(1 - log alpha). Odd t: the analogous
  /// (d(d-1)^{2s-1} - 2)/(d-2) > (2/alpha)(1 + log(1/alpha)).
  bool sufficient_condition = false;
};

/// Exponent p(alpha) of the first-moment bound and its gap over H(alpha)
/// at alpha = bound_density(d, t).
GapResult gap_margin(int d, int t);
GapResult gap_margin_at(int d, int t, double alpha);

/// N(n) = n! / (2^{n/2} (n/2)!), perfect matchings of n points.
BigInt perfect_matchings(std::uint64_t n);
/// (m)_j = m (m-1) ... (m-j+1).
BigInt falling_factorial(std::int64_t m, std::int64_t j);

struct EventProbability {
  Rational value;
  /// Some falling-factorial argument was negative; the event is impossible.
  bool infeasible = false;
};

/// Exact probability that a fixed set of k vertices of G*_{n,d} has the
/// layered tree structure underlying t-separation.
EventProbability exact_event_probability(std::uint64_t n, int d, std::uint64_t k, int t);

/// The same quantity in log space with lgamma (cross-check; -inf if infeasible).
double log_event_probability(std::uint64_t n, int d, std::uint64_t k, int t);

}  // namespace balloons

#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace balloons::testing {

namespace {

std::atomic<std::uint64_t> g_outputs{0}, g_points{0}, g_violations{0};

void tally(const PointSet& ps, const MatchingResult& mr) {
  const std::uint64_t v = verify_stability(ps, mr);
  g_outputs += 1;
  g_points += ps.size();
  g_violations += v;
}

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

}  // namespace

MatchingResult match_checked(const PointSet& ps, const MatchOptions& options) {
  MatchingResult mr = greedy_stable_matching(ps, options);
  tally(ps, mr);
  return mr;
}

MatchingResult brute_checked(const PointSet& ps) {
  MatchingResult mr = brute_force_matching(ps);
  tally(ps, mr);
  return mr;
}

StabilityTally stability_tally() { return {g_outputs.load(), g_points.load(), g_violations.load()}; }

std::vector<double> contact_simulation(const PointSet& ps) {
  const std::uint32_t n = static_cast<std::uint32_t>(ps.size());
  using Event = std::tuple<double, std::uint32_t, std::uint32_t>;  // contact time, a, b
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  // all balloons share radius t, so a and b touch when t = dist(a, b) / 2
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) events.emplace(ps.distance(a, b) / 2.0, a, b);
  std::vector<double> popped(n, std::numeric_limits<double>::infinity());
  std::vector<bool> alive(n, true);
  while (!events.empty()) {
    const auto [t, a, b] = events.top();
    events.pop();
    if (!alive[a] || !alive[b]) continue;
    alive[a] = alive[b] = false;
    popped[a] = popped[b] = t;
  }
  return popped;
}

std::uint64_t count_blocking_pairs(const PointSet& ps, std::span<const std::uint32_t> partner) {
  const std::size_t n = ps.size();
  std::vector<double> own(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    if (partner[i] != kNone) own[i] = ps.distance(i, partner[i]);
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = ps.distance(i, j);
      if (dij < own[i] && dij < own[j]) ++bad;
    }
  return bad;
}

std::vector<std::vector<std::uint32_t>> all_perfect_matchings(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> m(n, kNone);
  std::function<void()> rec = [&] {
    std::uint32_t i = 0;
    while (i < n && m[i] != kNone) ++i;
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (m[j] != kNone) continue;
      m[i] = j;
      m[j] = i;
      rec();
      m[i] = m[j] = kNone;
    }
  };
  rec();
  return out;
}

void for_each_colored_graph(std::uint32_t n, int d, const std::function<void(const ColoredMultigraph&)>& f) {
  const auto pm = all_perfect_matchings(n);
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<std::vector<std::uint32_t>> ms;
    for (auto p : pick) ms.push_back(pm[p]);
    f(ColoredMultigraph::from_matchings(std::move(ms)));
    int c = 0;
    while (c < d && ++pick[static_cast<std::size_t>(c)] == pm.size()) pick[static_cast<std::size_t>(c++)] = 0;
    if (c == d) break;
  }
}

bool layered_event(const ColoredMultigraph& g, std::uint32_t k, int t) {
  const int d = g.degree();
  const int s = (t + 1) / 2;
  const int depth = t % 2 == 0 ? s : s - 1;
  std::vector<bool> used(g.size(), false);
  struct Node {
    std::uint32_t v;
    int last_color;  // -1 at the root
  };
  std::vector<Node> leaves;
  for (std::uint32_t root = 0; root < k; ++root) {
    if (used[root]) return false;
    used[root] = true;
    std::vector<Node> layer{{root, -1}};
    for (int step = 0; step < depth; ++step) {
      std::vector<Node> next;
      for (const auto& nd : layer)
        for (int c = 0; c < d; ++c) {
          if (c == nd.last_color) continue;
          const std::uint32_t w = g.partner(nd.v, c);
          if (used[w]) return false;
          used[w] = true;
          next.push_back({w, c});
        }
      layer = std::move(next);
    }
    leaves.insert(leaves.end(), layer.begin(), layer.end());
  }
  if (t % 2 == 0) return true;
  for (const auto& nd : leaves)
    for (int c = 0; c < d; ++c) {
      if (c == nd.last_color) continue;
      if (used[g.partner(nd.v, c)]) return false;
    }
  return true;
}

std::vector<std::vector<int>> bfs_distances(const Graph& g, int cap) {
  const std::uint32_t n = g.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, cap + 1));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::queue<std::uint32_t> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      if (dist[s][u] == cap) continue;
      for (auto w : g.neighbors(u))
        if (dist[s][w] > dist[s][u] + 1) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
    }
  }
  return dist;
}

std::uint32_t max_separated_by_subsets(const Graph& g, int t) {
  const std::uint32_t n = g.size();
  if (n > 24) throw std::invalid_argument("subset enumeration limited to 24 vertices");
  const auto dist = bfs_distances(g, t);
  std::uint32_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::uint32_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::uint32_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::uint32_t j = i + 1; j < n && ok; ++j)
        if ((mask >> j & 1u) && dist[i][j] <= t) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

std::complex<double> Mobius::operator()(std::complex<double> z) const {
  return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z);
}

double hyperbolic_distance_ref(std::complex<double> z, std::complex<double> w) {
  return 2.0 * std::atanh(std::abs(z - w) / std::abs(1.0 - std::conj(z) * w));
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace balloons::testing

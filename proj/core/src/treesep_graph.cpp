#include <algorithm>
#include <bit>
#include <numeric>

#include "balloons/error.hpp"
#include "balloons/rng.hpp"
#include "balloons/tree_addressing.hpp"
#include "balloons/treesep.hpp"

namespace balloons {

namespace {

// Depth-limited breadth-first search with reusable visit stamps.
class BallWalker {
 public:
  explicit BallWalker(std::uint32_t n) : stamp_(n, 0), depth_(n, 0) {}

  // Calls f(vertex, depth) for each vertex within distance r of src, src included.
  template <class F>
  void walk(const Graph& g, std::uint32_t src, int r, F&& f) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(src);
    stamp_[src] = epoch_;
    depth_[src] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint32_t v = queue_[head];
      f(v, depth_[v]);
      if (depth_[v] == r) continue;
      for (std::uint32_t w : g.neighbors(v)) {
        if (stamp_[w] == epoch_) continue;
        stamp_[w] = epoch_;
        depth_[w] = depth_[v] + 1;
        queue_.push_back(w);
      }
    }
  }

  bool seen(std::uint32_t v) const noexcept { return stamp_[v] == epoch_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<int> depth_;
  std::vector<std::uint32_t> queue_;
  std::uint32_t epoch_ = 0;
};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ColoredMultigraph ColoredMultigraph::from_matchings(std::vector<std::vector<std::uint32_t>> matchings) {
  require(!matchings.empty(), ErrorCode::invalid_argument, "need at least one matching");
  const std::size_t n = matchings.front().size();
  require(n >= 2 && n % 2 == 0, ErrorCode::invalid_argument, "vertex count must be even and positive");
  for (const auto& m : matchings) {
    require(m.size() == n, ErrorCode::invalid_argument, "matchings differ in size");
    for (std::uint32_t v = 0; v < n; ++v) {
      require(m[v] < n && m[v] != v && m[m[v]] == v, ErrorCode::invalid_input,
              "not a perfect matching");
    }
  }
  ColoredMultigraph g;
  g.n_ = static_cast<std::uint32_t>(n);
  g.matchings_ = std::move(matchings);
  return g;
}

ColoredMultigraph generate_configuration_model(std::uint32_t n, int d, std::uint64_t seed) {
  require(n >= 2 && n % 2 == 0, ErrorCode::invalid_argument, "vertex count must be even and positive");
  require(d >= 3, ErrorCode::invalid_argument, "degree must be at least 3");
  std::vector<std::vector<std::uint32_t>> matchings(static_cast<std::size_t>(d));
  std::vector<std::uint32_t> perm(n);
  for (int c = 0; c < d; ++c) {
    Stream rng(seed, "config.color", static_cast<std::uint64_t>(c));
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::uint32_t i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    auto& m = matchings[static_cast<std::size_t>(c)];
    m.assign(n, 0);
    for (std::uint32_t i = 0; i < n; i += 2) {
      m[perm[i]] = perm[i + 1];
      m[perm[i + 1]] = perm[i];
    }
  }
  return ColoredMultigraph::from_matchings(std::move(matchings));
}

std::uint64_t count_double_edges(const ColoredMultigraph& g) {
  std::uint64_t total = 0;
  std::vector<std::uint32_t> ends;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    ends.clear();
    for (int c = 0; c < g.degree(); ++c) {
      if (g.partner(v, c) > v) ends.push_back(g.partner(v, c));
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i < ends.size();) {
      std::size_t j = i;
      while (j < ends.size() && ends[j] == ends[i]) ++j;
      const std::uint64_t m = j - i;
      total += m * (m - 1) / 2;
      i = j;
    }
  }
  return total;
}

double expected_double_edges(std::uint32_t n, int d) {
  return d * (d - 1) / 2.0 * (n / 2.0) / (n - 1.0);
}

Graph graph_from_edges(std::uint32_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  Graph g;
  g.offset.assign(n + 1, 0);
  for (const auto& [a, b] : edges) {
    require(a < n && b < n && a != b, ErrorCode::invalid_argument, "bad edge");
    ++g.offset[a + 1];
    ++g.offset[b + 1];
  }
  std::partial_sum(g.offset.begin(), g.offset.end(), g.offset.begin());
  g.adj.resize(g.offset.back());
  std::vector<std::uint32_t> fill(g.offset.begin(), g.offset.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adj[fill[a]++] = b;
    g.adj[fill[b]++] = a;
  }
  return g;
}

Graph to_graph(const ColoredMultigraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (int c = 0; c < g.degree(); ++c) {
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      if (v < g.partner(v, c)) edges.emplace_back(v, g.partner(v, c));
    }
  }
  return graph_from_edges(g.size(), edges);
}

Graph tree_ball_graph(int d, int radius) {
  require(radius >= 0, ErrorCode::invalid_argument, "radius must be nonnegative");
  const TreeAddressing tree(d);
  const std::uint64_t n = tree.ball_size(static_cast<std::uint32_t>(radius));
  require(n < (1u << 30), ErrorCode::size_guard, "tree ball too large");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint64_t id = 1; id < n; ++id) {
    const auto parent = tree.dense_id(tree.parent(tree.from_dense_id(id)));
    edges.emplace_back(static_cast<std::uint32_t>(parent), static_cast<std::uint32_t>(id));
  }
  return graph_from_edges(static_cast<std::uint32_t>(n), edges);
}

double local_tree_fraction(const ColoredMultigraph& cg, int r) {
  require(r >= 1, ErrorCode::invalid_argument, "radius must be at least 1");
  const Graph g = to_graph(cg);
  const int d = cg.degree();
  // vertices in a radius-r ball of the d-regular tree
  std::uint64_t ball = 1;
  for (int i = 1; i <= r; ++i) ball += static_cast<std::uint64_t>(d) * ipow(static_cast<std::uint64_t>(d - 1), i - 1);
  BallWalker walker(g.size());
  std::vector<std::uint32_t> members;
  std::uint64_t good = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    members.clear();
    walker.walk(g, v, r, [&](std::uint32_t x, int) { members.push_back(x); });
    if (members.size() != ball) continue;
    std::uint64_t edges = 0;
    for (std::uint32_t x : members) {
      for (std::uint32_t y : g.neighbors(x)) {
        if (x < y && walker.seen(y)) ++edges;
      }
    }
    if (edges + 1 == members.size()) ++good;
  }
  return static_cast<double>(good) / g.size();
}

bool is_t_separated(const Graph& g, std::span<const std::uint32_t> set, int t) {
  std::vector<std::uint8_t> in(g.size(), 0);
  for (std::uint32_t v : set) {
    if (in[v]) return false;  // repeated vertex
    in[v] = 1;
  }
  BallWalker walker(g.size());
  for (std::uint32_t v : set) {
    bool ok = true;
    walker.walk(g, v, t, [&](std::uint32_t x, int) {
      if (x != v && in[x]) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<std::uint32_t> greedy_max_separated(const Graph& g, int t, std::uint64_t seed) {
  require(t >= 1, ErrorCode::invalid_argument, "separation must be at least 1");
  std::vector<std::uint32_t> order(g.size());
  std::iota(order.begin(), order.end(), 0u);
  Stream rng(seed, "greedy.order");
  for (std::uint32_t i = g.size(); i-- > 1;) std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<std::uint8_t> blocked(g.size(), 0);
  std::vector<std::uint32_t> chosen;
  BallWalker walker(g.size());
  for (std::uint32_t v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    walker.walk(g, v, t, [&](std::uint32_t x, int) { blocked[x] = 1; });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

class IndependentSetSolver {
 public:
  explicit IndependentSetSolver(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  std::uint32_t solve() {
    const std::uint32_t n = static_cast<std::uint32_t>(adj_.size());
    const std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    expand(all, 0);
    return best_;
  }

 private:
  std::uint32_t clique_cover(std::uint64_t p) const {
    std::uint32_t cliques = 0;
    while (p) {
      const int u = std::countr_zero(p);
      std::uint64_t cand = p & adj_[static_cast<std::size_t>(u)];
      p &= ~(1ULL << u);
      while (cand) {
        const int w = std::countr_zero(cand);
        p &= ~(1ULL << w);
        cand &= adj_[static_cast<std::size_t>(w)] & ~(1ULL << w);
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(std::uint64_t p, std::uint32_t size) {
    // vertices of degree <= 1 in the candidate set belong to some maximum set
    bool reduced = true;
    while (reduced && p) {
      reduced = false;
      for (std::uint64_t q = p; q;) {
        const int v = std::countr_zero(q);
        q &= q - 1;
        if (!(p >> v & 1)) continue;
        const std::uint64_t nb = p & adj_[static_cast<std::size_t>(v)];
        if (std::popcount(nb) <= 1) {
          p &= ~(nb | (1ULL << v));
          ++size;
          reduced = true;
        }
      }
    }
    if (!p) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + clique_cover(p) <= best_) return;
    int pick = -1, pick_deg = -1;
    for (std::uint64_t q = p; q; q &= q - 1) {
      const int v = std::countr_zero(q);
      const int deg = std::popcount(p & adj_[static_cast<std::size_t>(v)]);
      if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    expand(p & ~(adj_[static_cast<std::size_t>(pick)] | (1ULL << pick)), size + 1);
    expand(p & ~(1ULL << pick), size);
  }

  std::vector<std::uint64_t> adj_;
  std::uint32_t best_ = 0;
};

}  // namespace

std::uint32_t exact_max_separated(const Graph& g, int t) {
  require(t >= 1, ErrorCode::invalid_argument, "separation must be at least 1");
  require(g.size() <= kExactSeparatedLimit, ErrorCode::size_guard,
          "exact separated-set solver is limited to 60 vertices");
  std::vector<std::uint64_t> adj(g.size(), 0);
  BallWalker walker(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    walker.walk(g, v, t, [&](std::uint32_t x, int) {
      if (x != v) adj[v] |= 1ULL << x;
    });
  }
  return IndependentSetSolver(std::move(adj)).solve();
}

std::vector<std::uint32_t> local_factor_separated(const Graph& g, int t, std::uint64_t seed) {
  require(t >= 1, ErrorCode::invalid_argument, "separation must be at least 1");
  std::vector<double> label(g.size());
  Stream rng(seed, "factor.labels");
  for (double& x : label) x = rng.uniform();
  std::vector<std::uint32_t> chosen;
  BallWalker walker(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    bool smallest = true;
    walker.walk(g, v, t, [&](std::uint32_t x, int) {
      if (x != v && label[x] <= label[v]) smallest = false;
    });
    if (smallest) chosen.push_back(v);
  }
  return chosen;
}

}  // namespace balloons

#include "balloons/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "balloons/error.hpp"
#include "balloons/spatial_index.hpp"

namespace balloons {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapEntry {
  double dist;
  std::uint32_t owner;
  std::uint32_t other;
};

struct HeapAfter {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const noexcept {
    if (pair_less(a.dist, a.owner, a.other, b.dist, b.owner, b.other)) return false;
    if (pair_less(b.dist, b.owner, b.other, a.dist, a.owner, a.other)) return true;
    return a.owner > b.owner;
  }
};

void reject_duplicate(double dist) {
  if (dist == 0.0) fail(ErrorCode::invalid_input, "duplicate points (distance 0)");
}

MatchedPair make_pair_record(std::uint32_t a, std::uint32_t b, double dist) {
  MatchedPair p;
  p.u = std::min(a, b);
  p.v = std::max(a, b);
  p.dist = dist;
  return p;
}

bool greedy_order(const MatchedPair& a, const MatchedPair& b) noexcept {
  return pair_less(a.dist, a.u, a.v, b.dist, b.u, b.v);
}

template <class Index>
MatchingResult greedy_impl(const PointSet& ps) {
  MatchingResult mr;
  const std::size_t n = ps.size();
  if (n == 0) return mr;
  LiveIndex<Index> live(ps, all_ids(ps));
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapAfter> heap;
  for (std::uint32_t u = 0; u < n; ++u) {
    const Neighbor nb = live.nearest(u);
    if (nb.id != kNoPoint) heap.push({nb.dist, u, nb.id});
  }
  mr.pairs.reserve(n / 2);
  while (live.live_count() >= 2 && !heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (!live.is_live(e.owner)) continue;
    if (!live.is_live(e.other)) {
      const Neighbor nb = live.nearest(e.owner);
      if (nb.id != kNoPoint) heap.push({nb.dist, e.owner, nb.id});
      continue;
    }
    reject_duplicate(e.dist);
    mr.pairs.push_back(make_pair_record(e.owner, e.other, e.dist));
    live.erase(e.owner);
    live.erase(e.other);
  }
  if (live.live_count() == 1) {
    std::vector<std::uint8_t> matched(n, 0);
    for (const auto& p : mr.pairs) matched[p.u] = matched[p.v] = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!matched[i]) mr.unmatched = i;
    }
  }
  return mr;
}

// Synchronous rounds; distances come from a precomputed matrix when small.
MatchingResult rounds_impl(const PointSet& ps, bool use_matrix) {
  MatchingResult mr;
  const std::size_t n = ps.size();
  std::vector<double> matrix;
  if (use_matrix) {
    matrix.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      matrix[i * n + i] = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) matrix[i * n + j] = matrix[j * n + i] = ps.distance(i, j);
    }
  }
  auto dist = [&](std::uint32_t i, std::uint32_t j) {
    return use_matrix ? matrix[static_cast<std::size_t>(i) * n + j] : ps.distance(i, j);
  };
  std::vector<std::uint32_t> alive = all_ids(ps);
  std::vector<std::uint32_t> nn(n, kNoPoint);
  std::vector<double> nd(n, kInf);
  std::vector<std::uint8_t> gone(n, 0);
  std::uint32_t round = 0;
  while (alive.size() >= 2) {
    ++round;
    for (std::uint32_t u : alive) {
      Neighbor best;
      for (std::uint32_t v : alive) {
        if (v == u) continue;
        const double d = dist(u, v);
        if (best.id == kNoPoint || pair_less(d, u, v, best.dist, u, best.id)) best = {v, d};
      }
      nn[u] = best.id;
      nd[u] = best.dist;
    }
    for (std::uint32_t u : alive) {
      const std::uint32_t v = nn[u];
      if (u < v && nn[v] == u) {
        reject_duplicate(nd[u]);
        MatchedPair p = make_pair_record(u, v, nd[u]);
        p.round = round;
        mr.pairs.push_back(p);
        gone[u] = gone[v] = 1;
      }
    }
    std::erase_if(alive, [&](std::uint32_t u) { return gone[u] != 0; });
  }
  if (alive.size() == 1) mr.unmatched = alive.front();
  std::sort(mr.pairs.begin(), mr.pairs.end(), greedy_order);
  mr.has_rounds = true;
  return mr;
}

// Single pass over pairs in greedy order computing rounds and/or
// certification with ball queries on a static index of all points.
template <class Index>
void postpass(const PointSet& ps, MatchingResult& mr, bool rounds, bool certify_pairs) {
  if (!rounds && !certify_pairs) return;
  if (!std::is_sorted(mr.pairs.begin(), mr.pairs.end(), greedy_order)) {
    std::sort(mr.pairs.begin(), mr.pairs.end(), greedy_order);
  }
  const std::size_t n = ps.size();
  const Index index(ps, all_ids(ps));
  std::vector<std::uint32_t> round_of(n, 0);
  std::vector<std::uint8_t> tainted(n, 0);
  if (certify_pairs) mr.taint_log.clear();
  for (auto& p : mr.pairs) {
    if (rounds) {
      std::uint32_t before = 0;
      for (const std::uint32_t end : {p.u, p.v}) {
        index.visit_ball(end, p.dist, [&](std::uint32_t w, double d) {
          if (w == p.u || w == p.v) return true;
          if (pair_less(d, end, w, p.dist, p.u, p.v)) {
            if (round_of[w] == 0) fail(ErrorCode::numerical_failure, "greedy order inconsistent with rounds");
            before = std::max(before, round_of[w]);
          }
          return true;
        });
      }
      p.round = before + 1;
      round_of[p.u] = round_of[p.v] = p.round;
    }
    if (certify_pairs) {
      bool ok = ps.boundary_distance(p.u) > p.dist && ps.boundary_distance(p.v) > p.dist;
      for (const std::uint32_t end : {p.u, p.v}) {
        if (!ok) break;
        index.visit_ball(end, p.dist, [&](std::uint32_t w, double) {
          if (tainted[w]) ok = false;
          return ok;
        });
      }
      p.certified = ok;
      if (!ok) {
        tainted[p.u] = tainted[p.v] = 1;
        mr.taint_log.push_back({p.u, p.dist});
        mr.taint_log.push_back({p.v, p.dist});
      }
    }
  }
  if (rounds) mr.has_rounds = true;
  if (certify_pairs) mr.has_certification = true;
}

void run_postpass(const PointSet& ps, MatchingResult& mr, bool rounds, bool certify_pairs) {
  dispatch_index(ps.space().kind(), [&](auto* tag) {
    using Index = std::remove_pointer_t<decltype(tag)>;
    postpass<Index>(ps, mr, rounds, certify_pairs);
  });
}

std::vector<double> match_distances(const PointSet& ps, const MatchingResult& mr) {
  std::vector<double> md(ps.size(), kInf);
  for (const auto& p : mr.pairs) {
    require(p.u < ps.size() && p.v < ps.size() && md[p.u] == kInf && md[p.v] == kInf,
            ErrorCode::invalid_input, "matching does not fit the point set");
    md[p.u] = md[p.v] = p.dist;
  }
  return md;
}

template <class Index>
std::uint64_t stability_impl(const PointSet& ps, const MatchingResult& mr) {
  const auto md = match_distances(ps, mr);
  const Index index(ps, all_ids(ps));
  std::uint64_t violations = 0;
  std::uint64_t unmatched = 0;
  for (std::uint32_t x = 0; x < ps.size(); ++x) {
    if (md[x] == kInf) {
      ++unmatched;
      continue;
    }
    index.visit_ball(x, md[x], [&](std::uint32_t y, double d) {
      if (y != x && d < md[x] && d < md[y] && (md[y] == kInf || x < y)) ++violations;
      return true;
    });
  }
  return violations + unmatched * (unmatched > 0 ? unmatched - 1 : 0) / 2;
}

}  // namespace

MatchingResult greedy_stable_matching(const PointSet& ps, const MatchOptions& options) {
  MatchingResult mr;
  if (options.kind == MatcherKind::naive) {
    mr = rounds_impl(ps, ps.size() <= kBruteForceLimit);
    run_postpass(ps, mr, false, options.certify);
    return mr;
  }
  mr = dispatch_index(ps.space().kind(), [&](auto* tag) {
    using Index = std::remove_pointer_t<decltype(tag)>;
    return greedy_impl<Index>(ps);
  });
  run_postpass(ps, mr, options.rounds, options.certify);
  return mr;
}

MatchingResult brute_force_matching(const PointSet& ps) {
  require(ps.size() <= kBruteForceLimit, ErrorCode::size_guard,
          "brute-force matcher is limited to 5000 points");
  return rounds_impl(ps, true);
}

void assign_rounds(const PointSet& ps, MatchingResult& mr) { run_postpass(ps, mr, true, false); }

void certify(const PointSet& ps, MatchingResult& mr) { run_postpass(ps, mr, false, true); }

std::uint64_t verify_stability(const PointSet& ps, const MatchingResult& mr) {
  return dispatch_index(ps.space().kind(), [&](auto* tag) {
    using Index = std::remove_pointer_t<decltype(tag)>;
    return stability_impl<Index>(ps, mr);
  });
}

std::uint64_t verify_stability_brute(const PointSet& ps, const MatchingResult& mr) {
  const auto md = match_distances(ps, mr);
  std::uint64_t violations = 0;
  for (std::size_t x = 0; x < ps.size(); ++x) {
    for (std::size_t y = x + 1; y < ps.size(); ++y) {
      const double d = ps.distance(x, y);
      if (d < md[x] && d < md[y]) ++violations;
    }
  }
  return violations;
}

std::vector<double> pop_times(const PointSet& ps, const MatchingResult& mr) {
  auto t = match_distances(ps, mr);
  for (double& x : t) x /= 2.0;
  return t;
}

std::vector<std::uint32_t> partners(const PointSet& ps, const MatchingResult& mr) {
  std::vector<std::uint32_t> m(ps.size(), kNoPoint);
  for (const auto& p : mr.pairs) {
    m[p.u] = p.v;
    m[p.v] = p.u;
  }
  return m;
}

std::vector<std::uint8_t> certified_points(const PointSet& ps, const MatchingResult& mr) {
  std::vector<std::uint8_t> c(ps.size(), 0);
  for (const auto& p : mr.pairs) c[p.u] = c[p.v] = p.certified ? 1 : 0;
  return c;
}

}  // namespace balloons

#include <cmath>
#include <limits>

#include "balloons/error.hpp"
#include "balloons/treesep.hpp"

namespace balloons {

namespace {

double xlx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_dt(int d, int t) {
  require(d >= 3, ErrorCode::invalid_argument, "degree must be at least 3");
  require(t >= 1, ErrorCode::invalid_argument, "separation must be at least 1");
}

// exact (d-1)^e, d(d-1)^e and b_e = (d(d-1)^e - 2)/(d-2) as big integers
BigInt bpow(int base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

BigInt ball_count(int d, int i) { return (d * bpow(d - 1, i) - 2) / (d - 2); }

// The structured event as a list of falling factorials (m)_j, each raised to
// `power`, times [N(rem) / N(n)]^d.
struct EventShape {
  struct Factor {
    BigInt m, j;
    int power;
  };
  std::vector<Factor> factors;
  BigInt rem;
  bool infeasible = false;
};

EventShape event_shape(std::uint64_t n, int d, std::uint64_t k, int t) {
  check_dt(d, t);
  require(n % 2 == 0, ErrorCode::invalid_argument, "vertex count must be even");
  const int s = (t + 1) / 2;
  const BigInt N = n, K = k;
  EventShape shape;
  const int full_layers = t % 2 == 0 ? s : s - 1;
  for (int i = 0; i < full_layers; ++i) {
    shape.factors.push_back({N - K * ball_count(d, i), K * d * bpow(d - 1, i), 1});
  }
  if (t % 2 == 1) {
    // the last layer is matched within itself, one color at a time
    shape.factors.push_back({N - K * ball_count(d, s - 1), K * bpow(d - 1, s - 1), d});
  }
  shape.rem = N - 2 * K * ((bpow(d - 1, s) - 1) / (d - 2));
  for (const auto& f : shape.factors) {
    if (f.m < 0) shape.infeasible = true;
  }
  if (shape.rem < 0 || shape.rem % 2 != 0) shape.infeasible = true;
  return shape;
}

double lfalling(double m, double j) {
  if (j > m) return -std::numeric_limits<double>::infinity();
  return std::lgamma(m + 1.0) - std::lgamma(m - j + 1.0);
}

double lmatchings(double n) { return std::lgamma(n + 1.0) - n / 2.0 * std::log(2.0) - std::lgamma(n / 2.0 + 1.0); }

}  // namespace

double bound_density(int d, int t) {
  check_dt(d, t);
  return 2.0 * t * std::log(d - 1.0) / std::pow(d - 1.0, t);
}

double bollobas_density(int d) {
  require(d >= 2, ErrorCode::invalid_argument, "degree must be at least 2");
  return 2.0 * std::log(static_cast<double>(d)) / d;
}

double tree_ball_count(int d, int i) {
  require(d >= 3 && i >= 0, ErrorCode::invalid_argument, "need d >= 3 and i >= 0");
  return (d * std::pow(d - 1.0, i) - 2.0) / (d - 2.0);
}

BoundParams bound_params(int d, int t, double alpha) {
  check_dt(d, t);
  BoundParams p;
  p.d = d;
  p.t = t;
  p.s = (t + 1) / 2;
  p.alpha = alpha;
  for (int i = 0; i <= p.s; ++i) {
    p.alpha_i.push_back(alpha * tree_ball_count(d, i));
    p.beta_i.push_back(alpha * d * std::pow(d - 1.0, i));
  }
  p.gamma = 2.0 * alpha * (std::pow(d - 1.0, p.s) - 1.0) / (d - 2.0);
  return p;
}

double binary_entropy(double a) {
  require(a >= 0.0 && a <= 1.0, ErrorCode::invalid_argument, "entropy argument outside [0,1]");
  return -xlx(a) - xlx(1.0 - a);
}

GapResult gap_margin_at(int d, int t, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0,1)");
  GapResult r;
  r.params = bound_params(d, t, alpha);
  const auto& P = r.params;
  const int s = P.s;
  r.H = binary_entropy(alpha);
  const bool even = t % 2 == 0;
  const double last = even ? P.alpha_i[static_cast<std::size_t>(s)] : P.alpha_i[static_cast<std::size_t>(s - 1)];
  if (last >= 1.0 || P.gamma >= 1.0) {
    r.infeasible = true;
    r.p = std::numeric_limits<double>::infinity();
    r.margin = std::numeric_limits<double>::infinity();
  } else if (even) {
    r.p = -(xlx(1.0 - alpha) - xlx(1.0 - last) + d / 2.0 * xlx(1.0 - P.gamma));
    r.margin = r.p - r.H;
  } else {
    r.p = -(xlx(1.0 - alpha) + (d - 1.0) * xlx(1.0 - last) - d / 2.0 * xlx(1.0 - P.gamma));
    r.margin = r.p - r.H;
  }
  if (even) {
    r.sufficient_condition = std::pow(d - 1.0, 2 * s) >= 2.0 / alpha * (1.0 - std::log(alpha));
  } else {
    r.sufficient_condition =
        (d * std::pow(d - 1.0, 2 * s - 1) - 2.0) / (d - 2.0) > 2.0 / alpha * (1.0 + std::log(1.0 / alpha));
  }
  return r;
}

GapResult gap_margin(int d, int t) { return gap_margin_at(d, t, bound_density(d, t)); }

BigInt perfect_matchings(std::uint64_t n) {
  require(n % 2 == 0, ErrorCode::invalid_argument, "perfect matchings need an even count");
  BigInt r = 1;
  for (std::uint64_t m = 3; m < n; m += 2) r *= m;
  return r;
}

BigInt falling_factorial(std::int64_t m, std::int64_t j) {
  require(j >= 0, ErrorCode::invalid_argument, "falling factorial length must be nonnegative");
  BigInt r = 1;
  for (std::int64_t i = 0; i < j; ++i) {
    if (m - i == 0) return 0;
    r *= m - i;
  }
  return r;
}

EventProbability exact_event_probability(std::uint64_t n, int d, std::uint64_t k, int t) {
  const EventShape shape = event_shape(n, d, k, t);
  EventProbability out;
  if (shape.infeasible) {
    out.infeasible = true;
    out.value = 0;
    return out;
  }
  BigInt num = 1;
  for (const auto& f : shape.factors) {
    require(f.j < (BigInt(1) << 32), ErrorCode::size_guard, "falling factorial too long");
    const BigInt ff = falling_factorial(static_cast<std::int64_t>(f.m), static_cast<std::int64_t>(f.j));
    for (int p = 0; p < f.power; ++p) num *= ff;
  }
  const BigInt a = perfect_matchings(static_cast<std::uint64_t>(shape.rem));
  const BigInt b = perfect_matchings(n);
  BigInt top = num, bottom = 1;
  for (int c = 0; c < d; ++c) {
    top *= a;
    bottom *= b;
  }
  out.value = Rational(top, bottom);
  return out;
}

double log_event_probability(std::uint64_t n, int d, std::uint64_t k, int t) {
  const EventShape shape = event_shape(n, d, k, t);
  const double ninf = -std::numeric_limits<double>::infinity();
  if (shape.infeasible) return ninf;
  double lp = 0.0;
  for (const auto& f : shape.factors) {
    lp += f.power * lfalling(static_cast<double>(f.m), static_cast<double>(f.j));
  }
  lp += d * (lmatchings(static_cast<double>(shape.rem)) - lmatchings(static_cast<double>(n)));
  return lp;
}

}  // namespace balloons

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mixclock/bigraph.hpp"
#include "mixclock/random.hpp"
#include "mixclock/trace.hpp"

namespace mixclock {

namespace detail {

inline void require_sides(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("graph needs at least one thread and one object");
}

inline void require_fraction(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}

}  // namespace detail

/// Each of the n*m possible edges independently with probability `density`.
inline BipartiteGraph gen_uniform(std::size_t n, std::size_t m, double density, std::uint64_t seed) {
  detail::require_sides(n, m);
  detail::require_fraction(density, "density");
  Rng rng(seed);
  BipartiteGraph g(n, m);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t o = 0; o < m; ++o)
      if (bernoulli(rng, density)) g.add_edge(ThreadId(t), ObjectId(o));
  return g;
}

struct NonuniformParams {
  double popular_fraction = 0.2;
  double boost = 4.0;
};

/// Edge probabilities of the nonuniform scenario: cells touching a popular
/// vertex use `high`, the rest `low`, with the expectation held at n*m*density.
struct NonuniformProbabilities {
  std::size_t popular_threads;
  std::size_t popular_objects;
  double low;
  double high;
};

inline NonuniformProbabilities nonuniform_probabilities(std::size_t n, std::size_t m, double density,
                                                        NonuniformParams params) {
  detail::require_sides(n, m);
  detail::require_fraction(density, "density");
  if (!(params.popular_fraction > 0.0 && params.popular_fraction < 1.0))
    throw std::invalid_argument("popular fraction must lie in (0, 1)");
  if (!(params.boost >= 1.0) || !std::isfinite(params.boost))
    throw std::invalid_argument("boost must be a finite value >= 1");

  NonuniformProbabilities p{};
  p.popular_threads = static_cast<std::size_t>(std::ceil(params.popular_fraction * static_cast<double>(n)));
  p.popular_objects = static_cast<std::size_t>(std::ceil(params.popular_fraction * static_cast<double>(m)));
  const double cells = static_cast<double>(n) * static_cast<double>(m);
  const double plain = static_cast<double>(n - p.popular_threads) * static_cast<double>(m - p.popular_objects);
  const double hot = cells - plain;
  const double target = cells * density;

  // Expected edges E(low) = hot * min(1, boost * low) + plain * low is
  // increasing and piecewise linear; solve on the branch that applies.
  double low = target / (hot * params.boost + plain);
  if (params.boost * low > 1.0) {
    if (plain == 0.0)
      throw std::invalid_argument("expected edge count unreachable for these parameters");
    low = (target - hot) / plain;
  }
  if (!(low >= 0.0 && low <= 1.0))
    throw std::invalid_argument("expected edge count unreachable for these parameters");
  p.low = low;
  p.high = std::min(1.0, params.boost * low);
  return p;
}

/// The first ceil(popular_fraction * n) threads and ceil(popular_fraction * m)
/// objects are popular. Draws one variate per cell in the same order as
/// gen_uniform, so boost == 1 reproduces gen_uniform exactly.
inline BipartiteGraph gen_nonuniform(std::size_t n, std::size_t m, double density, NonuniformParams params,
                                     std::uint64_t seed) {
  const auto p = nonuniform_probabilities(n, m, density, params);
  Rng rng(seed);
  BipartiteGraph g(n, m);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t o = 0; o < m; ++o) {
      const bool popular = t < p.popular_threads || o < p.popular_objects;
      if (bernoulli(rng, popular ? p.high : p.low)) g.add_edge(ThreadId(t), ObjectId(o));
    }
  }
  return g;
}

/// One event per edge, in a seeded uniformly random order.
inline Trace graph_to_trace(const BipartiteGraph& g, std::uint64_t seed) {
  auto edges = g.edges();
  Rng rng(seed);
  shuffle(edges, rng);
  Trace t(g.thread_count(), g.object_count());
  for (const Edge& e : edges) t.append(e);
  return t;
}

}  // namespace mixclock

#pragma once

// Sums of products over colorings of a plumbing forest, where each vertex
// contributes a weight depending on its state and each edge a symmetric
// weight depending on both endpoint states.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "premod/surgery.hpp"

namespace premod::detail {

struct ForestWeights {
  Eigen::MatrixXcd vertex;  // vertex(v, s)
  Eigen::MatrixXcd edge;    // edge(s, t), symmetric
};

inline double contraction_terms(const PlumbingGraph& g, std::size_t states) {
  const double s = static_cast<double>(states);
  return static_cast<double>(g.edges().size()) * s * s + static_cast<double>(g.size()) * s;
}

inline double enumeration_terms(const PlumbingGraph& g, std::size_t states) {
  return std::pow(static_cast<double>(states), static_cast<double>(g.size()));
}

/// Leaves-first variable elimination, one pass per tree.
inline std::complex<double> contract_forest(const PlumbingGraph& g, const ForestWeights& w) {
  const std::size_t n = g.size();
  std::vector<Eigen::VectorXcd> message(n);
  std::vector<int> parent(n, -2);
  std::complex<double> total = 1.0;
  for (std::size_t root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    std::vector<std::size_t> order{root};
    parent[root] = -1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t u : g.neighbors(order[i]))
        if (parent[u] == -2) {
          parent[u] = static_cast<int>(order[i]);
          order.push_back(u);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t v = *it;
      Eigen::VectorXcd m = w.vertex.row(static_cast<Eigen::Index>(v)).transpose();
      for (std::size_t u : g.neighbors(v))
        if (parent[u] == static_cast<int>(v)) m = m.cwiseProduct(w.edge * message[u]);
      message[v] = std::move(m);
    }
    total *= message[root].sum();
  }
  return total;
}

namespace enumeration {

struct Context {
  const PlumbingGraph& g;
  const ForestWeights& w;
  // earlier[v]: neighbours of v with a smaller index
  std::vector<std::vector<std::size_t>> earlier;
  std::size_t states;
};

inline std::complex<double> descend(const Context& ctx, std::vector<std::size_t>& colour,
                                    std::size_t v, std::complex<double> partial) {
  if (v == colour.size()) return partial;
  std::complex<double> acc = 0.0;
  const auto row = static_cast<Eigen::Index>(v);
  for (std::size_t s = 0; s < ctx.states; ++s) {
    std::complex<double> x = partial * ctx.w.vertex(row, static_cast<Eigen::Index>(s));
    for (std::size_t u : ctx.earlier[v])
      x *= ctx.w.edge(static_cast<Eigen::Index>(colour[u]), static_cast<Eigen::Index>(s));
    if (x == 0.0) continue;
    colour[v] = s;
    acc += descend(ctx, colour, v + 1, x);
  }
  return acc;
}

}  // namespace enumeration

/// Direct sum over every coloring, accumulating products vertex by vertex and
/// pruning zero partial products. Parallel over the first vertex's state with
/// results reduced in state order.
inline std::complex<double> enumerate_forest(const PlumbingGraph& g, const ForestWeights& w,
                                             unsigned threads) {
  const std::size_t n = g.size();
  if (n == 0) return 1.0;
  const auto states = static_cast<std::size_t>(w.edge.rows());
  enumeration::Context ctx{g, w, std::vector<std::vector<std::size_t>>(n), states};
  for (const auto& [a, b] : g.edges()) {
    if (a < b)
      ctx.earlier[b].push_back(a);
    else
      ctx.earlier[a].push_back(b);
  }

  std::vector<std::complex<double>> per_first(states, 0.0);
  auto work = [&](std::size_t begin, std::size_t step) {
    std::vector<std::size_t> colour(n, 0);
    for (std::size_t s = begin; s < states; s += step) {
      const std::complex<double> x = w.vertex(0, static_cast<Eigen::Index>(s));
      if (x == 0.0) continue;
      colour[0] = s;
      per_first[s] = enumeration::descend(ctx, colour, 1, x);
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(states)));
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(work, i, t);
    for (auto& th : pool) th.join();
  }
  std::complex<double> total = 0.0;
  for (const auto& x : per_first) total += x;
  return total;
}

/// Applies the strategy and term cap from opts; defined in surgery.cpp.
InvariantValue evaluate_forest(const PlumbingGraph& g, const ForestWeights& w,
                               const EvalOptions& opts);

}  // namespace premod::detail

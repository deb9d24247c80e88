#include "premod/surgery.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <numeric>
#include <set>

#include "forest_sum.hpp"
#include "premod/error.hpp"
#include "premod/parallel.hpp"

namespace premod {

PlumbingGraph::PlumbingGraph(std::vector<PlumbingVertex> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!ids.emplace(vertices_[i].id, i).second)
      throw StructuralError("duplicate vertex id '" + vertices_[i].id + "'");
  adjacency_.resize(vertices_.size());

  // union-find for cycle detection
  std::vector<std::size_t> root(vertices_.size());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    auto ia = ids.find(a), ib = ids.find(b);
    if (ia == ids.end() || ib == ids.end())
      throw StructuralError("edge references unknown vertex (" + a + "," + b + ")");
    if (ia->second == ib->second) throw StructuralError("self loop at '" + a + "'");
    const std::size_t ra = find(ia->second), rb = find(ib->second);
    if (ra == rb)
      throw StructuralError("plumbing graph has a cycle or repeated edge at (" + a + "," + b + ")");
    root[ra] = rb;
    edges_.emplace_back(ia->second, ib->second);
    adjacency_[ia->second].push_back(ib->second);
    adjacency_[ib->second].push_back(ia->second);
  }
}

std::size_t PlumbingGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  throw StructuralError("unknown vertex '" + id + "'");
}

namespace {

std::vector<std::pair<std::string, std::string>> edge_ids(
    const std::vector<PlumbingVertex>& vs, const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : es) out.emplace_back(vs[a].id, vs[b].id);
  return out;
}

}  // namespace

PlumbingGraph PlumbingGraph::with_vertex(PlumbingVertex v,
                                         std::optional<std::size_t> attach_to) const {
  auto vs = vertices_;
  auto es = edge_ids(vertices_, edges_);
  if (attach_to) es.emplace_back(vertices_.at(*attach_to).id, v.id);
  vs.push_back(std::move(v));
  return PlumbingGraph(std::move(vs), es);
}

PlumbingGraph PlumbingGraph::without_vertex(std::size_t v) const {
  std::vector<PlumbingVertex> vs;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (i != v) vs.push_back(vertices_[i]);
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& [a, b] : edges_)
    if (a != v && b != v) es.emplace_back(vertices_[a].id, vertices_[b].id);
  return PlumbingGraph(std::move(vs), es);
}

PlumbingGraph PlumbingGraph::with_framing(std::size_t v, int framing) const {
  PlumbingGraph g = *this;
  g.vertices_.at(v).framing = framing;
  return g;
}

std::string PlumbingGraph::fresh_id(const std::string& prefix) const {
  std::set<std::string> used;
  for (const auto& v : vertices_) used.insert(v.id);
  for (std::size_t k = vertices_.size();; ++k) {
    std::string id = prefix + std::to_string(k);
    if (!used.count(id)) return id;
  }
}

PlumbingGraph PlumbingGraph::unknot(int framing) { return PlumbingGraph({{"v1", framing}}, {}); }

PlumbingGraph PlumbingGraph::hopf_link(int a, int b) {
  return PlumbingGraph({{"v1", a}, {"v2", b}}, {{"v1", "v2"}});
}

PlumbingGraph PlumbingGraph::chain(const std::vector<int>& framings) {
  std::vector<PlumbingVertex> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < framings.size(); ++i) {
    vs.push_back({"v" + std::to_string(i + 1), framings[i]});
    if (i > 0) es.emplace_back(vs[i - 1].id, vs[i].id);
  }
  return PlumbingGraph(std::move(vs), es);
}

PlumbingGraph PlumbingGraph::e8(int framing) {
  // Chain v1..v7 with v8 attached to v5.
  std::vector<PlumbingVertex> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 1; i <= 8; ++i) vs.push_back({"v" + std::to_string(i), framing});
  for (int i = 1; i < 7; ++i) es.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
  es.emplace_back("v5", "v8");
  return PlumbingGraph(std::move(vs), es);
}

LinkingMatrix linking_matrix(const PlumbingGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  LinkingMatrix m = LinkingMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = g.framing(static_cast<std::size_t>(i));
  for (const auto& [a, b] : g.edges()) {
    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += 1;
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) += 1;
  }
  return m;
}

int signature(const LinkingMatrix& m) {
  using boost::multiprecision::cpp_rational;
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

  std::vector<bool> done(n, false);
  int sig = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (!done[i] && a[i][i] != 0) pivot = i;
    if (pivot == n) {
      // Zero diagonal: replace e_i by e_i + e_j for some a_ij != 0, giving
      // the new diagonal entry 2 a_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      pivot = pi;
    }
    const cpp_rational d = a[pivot][pivot];
    sig += d > 0 ? 1 : -1;
    done[pivot] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][pivot] == 0) continue;
      const cpp_rational f = a[i][pivot] / d;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a[i][j] -= f * a[pivot][j];
    }
    for (std::size_t i = 0; i < n; ++i) a[i][pivot] = a[pivot][i] = 0;
  }
  return sig;
}

InvariantValue colored_invariant(const PremodularData& p, const PlumbingGraph& g,
                                 const Coloring& c) {
  if (c.size() != g.size()) throw StructuralError("coloring must assign every vertex");
  Complex value = 1.0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (c[v] >= p.size()) throw StructuralError("coloring uses an unknown label");
    value *= std::pow(p.twist(c[v]), g.framing(v)) *
             std::pow(p.dims[c[v]], 1.0 - static_cast<double>(g.degree(v)));
  }
  for (const auto& [a, b] : g.edges()) value *= p.sprime(c[a], c[b]);
  return {value, kDefaultTolerance, static_cast<double>(g.size() + g.edges().size())};
}

namespace {

detail::ForestWeights bracket_weights(const PremodularData& p, const PlumbingGraph& g) {
  detail::ForestWeights w;
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto L = static_cast<Eigen::Index>(p.size());
  w.vertex.resize(n, L);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    for (Eigen::Index c = 0; c < L; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      w.vertex(v, c) = std::pow(p.twist(ci), g.framing(vi)) *
                       std::pow(p.dims[ci], 2.0 - static_cast<double>(g.degree(vi)));
    }
  }
  w.edge = p.sprime;
  return w;
}

}  // namespace

namespace detail {

InvariantValue evaluate_forest(const PlumbingGraph& g, const ForestWeights& w,
                               const EvalOptions& opts) {
  const auto states = static_cast<std::size_t>(w.edge.rows());
  InvariantValue out;
  out.tolerance = opts.tolerance;
  if (opts.strategy == SumStrategy::contraction) {
    out.terms = contraction_terms(g, states);
    if (out.terms > opts.term_cap) throw TermCapExceeded(out.terms, opts.term_cap);
    out.value = contract_forest(g, w);
  } else {
    out.terms = enumeration_terms(g, states);
    if (out.terms > opts.term_cap) throw TermCapExceeded(out.terms, opts.term_cap);
    out.value = enumerate_forest(g, w, opts.threads ? opts.threads : worker_count());
  }
  return out;
}

}  // namespace detail

InvariantValue bracket(const PremodularData& p, const PlumbingGraph& g, const EvalOptions& opts) {
  return detail::evaluate_forest(g, bracket_weights(p, g), opts);
}

InvariantValue rt_invariant(const PremodularData& p, const PlumbingGraph& g,
                            const EvalOptions& opts) {
  if (!is_modular(p, opts.tolerance).modular)
    throw PreconditionError("RT invariant needs modular data");
  const GaussSums gs = gauss_sums(p);
  const int sigma = signature(linking_matrix(g));
  const int n = static_cast<int>(g.size());
  InvariantValue b = bracket(p, g, opts);
  b.value *= std::pow(gs.delta_plus, sigma) * std::pow(gs.D, -sigma - n - 1);
  return b;
}

std::vector<PlumbingGraph> kirby_moves(const PlumbingGraph& g) {
  std::vector<PlumbingGraph> out;
  for (int e : {1, -1}) out.push_back(g.with_vertex({g.fresh_id(), e}, std::nullopt));
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) == 0 && std::abs(g.framing(v)) == 1) out.push_back(g.without_vertex(v));
  for (std::size_t v = 0; v < g.size(); ++v)
    for (int e : {1, -1})
      out.push_back(g.with_vertex({g.fresh_id(), e}, v).with_framing(v, g.framing(v) + e));
  for (std::size_t leaf = 0; leaf < g.size(); ++leaf) {
    if (g.degree(leaf) != 1 || std::abs(g.framing(leaf)) != 1) continue;
    const std::size_t v = g.neighbors(leaf).front();
    const std::size_t v_after = v > leaf ? v - 1 : v;
    out.push_back(g.without_vertex(leaf).with_framing(v_after, g.framing(v) - g.framing(leaf)));
  }
  return out;
}

PlumbingGraph random_forest(std::mt19937_64& rng, std::size_t max_vertices, int lo, int hi) {
  std::uniform_int_distribution<std::size_t> count(0, max_vertices);
  std::uniform_int_distribution<int> framing(lo, hi);
  std::bernoulli_distribution attach(0.75);
  const std::size_t n = count(rng);
  std::vector<PlumbingVertex> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back({"v" + std::to_string(i + 1), framing(rng)});
    if (i > 0 && attach(rng)) {
      std::uniform_int_distribution<std::size_t> parent(0, i - 1);
      es.emplace_back(vs[parent(rng)].id, vs[i].id);
    }
  }
  return PlumbingGraph(std::move(vs), es);
}

IdentityCheck lem3_check(const PremodularData& p, const PlumbingGraph& g,
                         const CondensedData& condensed, const EvalOptions& opts) {
  IdentityCheck r;
  if (condensed.status != ResolutionStatus::unique) {
    r.skipped = true;
    r.note = "resolution status is " + to_string(condensed.status);
    return r;
  }
  r.lhs = bracket(p, g, opts).value;
  r.rhs = std::pow(static_cast<double>(condensed.group_order()), static_cast<double>(g.size())) *
          bracket(condensed.data(), g, opts).value;
  r.residual = std::abs(r.lhs - r.rhs);
  r.passed = r.residual <= opts.tolerance;
  return r;
}

}  // namespace premod

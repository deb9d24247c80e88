#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "premod/condensation.hpp"
#include "premod/modular.hpp"

namespace premod {

struct PlumbingVertex {
  std::string id;
  int framing = 0;
};

/// Framed unknots, one per vertex, Hopf-linked along edges. Must be a forest.
class PlumbingGraph {
 public:
  PlumbingGraph() = default;
  /// Edges by vertex id. Throws StructuralError for unknown ids, duplicate ids,
  /// self loops, repeated edges or cycles.
  PlumbingGraph(std::vector<PlumbingVertex> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<PlumbingVertex>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  int framing(std::size_t v) const { return vertices_[v].framing; }
  std::size_t index_of(const std::string& id) const;

  PlumbingGraph with_vertex(PlumbingVertex v, std::optional<std::size_t> attach_to) const;
  PlumbingGraph without_vertex(std::size_t v) const;
  PlumbingGraph with_framing(std::size_t v, int framing) const;
  /// An id of the form prefix<k> not used by any vertex.
  std::string fresh_id(const std::string& prefix = "k") const;

  // Named presentations used throughout the tests.
  static PlumbingGraph unknot(int framing);
  static PlumbingGraph hopf_link(int a = 0, int b = 0);
  static PlumbingGraph chain(const std::vector<int>& framings);
  static PlumbingGraph e8(int framing = -2);

 private:
  std::vector<PlumbingVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

using LinkingMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

LinkingMatrix linking_matrix(const PlumbingGraph& g);

/// Signature by exact rational congruence diagonalization.
int signature(const LinkingMatrix& m);

using Coloring = std::vector<Label>;

struct InvariantValue {
  Complex value;
  double tolerance = kDefaultTolerance;
  double terms = 0;  // multiply-accumulate terms used by the evaluator

  bool close_to(const InvariantValue& o) const {
    return std::abs(value - o.value) <= std::max(tolerance, o.tolerance);
  }
};

enum class SumStrategy {
  contraction,  // variable elimination over the forest, leaves first
  enumeration,  // explicit sum over every coloring
};

struct EvalOptions {
  double tolerance = kDefaultTolerance;
  double term_cap = 1e8;
  SumStrategy strategy = SumStrategy::contraction;
  unsigned threads = 0;  // enumeration only; 0: worker_count()
};

/// prod_v theta^{m_v} d^{1-deg v} * prod_{edges} S'(c(u), c(v)).
InvariantValue colored_invariant(const PremodularData& p, const PlumbingGraph& g,
                                 const Coloring& c);

/// sum over colorings of prod_v d(c(v)) * colored_invariant.
InvariantValue bracket(const PremodularData& p, const PlumbingGraph& g,
                       const EvalOptions& opts = {});

/// Delta^sigma D^{-sigma-n-1} {L}; p must be modular.
InvariantValue rt_invariant(const PremodularData& p, const PlumbingGraph& g,
                            const EvalOptions& opts = {});

/// Blow-up/blow-down neighbours: add or remove an isolated +-1 vertex; add an
/// e-framed leaf at v while v's framing shifts by e; remove an e-framed leaf
/// while its neighbour's framing shifts by -e.
std::vector<PlumbingGraph> kirby_moves(const PlumbingGraph& g);

/// Random forest with 0..max_vertices vertices and framings in [lo, hi].
PlumbingGraph random_forest(std::mt19937_64& rng, std::size_t max_vertices, int lo = -3,
                            int hi = 3);

/// bracket(p, g) = |G|^n bracket(condensed, g). Skipped unless the resolution is unique.
IdentityCheck lem3_check(const PremodularData& p, const PlumbingGraph& g,
                         const CondensedData& condensed, const EvalOptions& opts = {});

}  // namespace premod

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "premod/modular.hpp"
#include "premod/report.hpp"

namespace premod {

/// Even, pointed, abelian degenerate subgroup; throws PreconditionError when
/// the Müger center is not even or not pointed.
GroupTable degenerate_group(const PremodularData& p, double tol = kDefaultTolerance);

struct Orbit {
  Label representative;                 // smallest label in the orbit
  std::vector<Label> members;           // sorted
  std::vector<std::size_t> stabilizer;  // group positions fixing the representative

  bool fixed() const { return stabilizer.size() > 1; }
};

struct OrbitDecomposition {
  GroupTable group;
  std::vector<Orbit> orbits;        // ordered by representative
  std::vector<std::size_t> orbit_of;  // label -> orbit index
  /// action[g * n + x] = g . x
  std::vector<Label> action;

  Label act(std::size_t g, Label x) const { return action[g * orbit_of.size() + x]; }
};

/// Orbits of the degenerate group acting by fusion. Asserts that twists are
/// constant on orbits and that S' is orbit invariant; a violation throws
/// NumericalInconsistency.
OrbitDecomposition orbit_decomposition(const PremodularData& p, double tol = kDefaultTolerance);

enum class ResolutionStatus { unique, multiple, unresolved };

std::string to_string(ResolutionStatus s);

struct CondensedLabel {
  std::size_t orbit;
  std::size_t sheet;  // 1 .. |stabilizer|
};

struct ResolutionOptions {
  double tolerance = kDefaultTolerance;
  std::size_t max_seeds = 768;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;  // 0: worker_count()
};

struct CondensedData {
  PremodularData source;
  OrbitDecomposition orbits;
  std::vector<CondensedLabel> new_labels;
  ResolutionStatus status = ResolutionStatus::unresolved;
  /// Every inequivalent resolution found, canonically sorted. Empty when unresolved.
  std::vector<PremodularData> solutions;
  /// Smallest constraint residual reached by the search.
  double constraint_residual = 0.0;
  /// Number of unknown S' parameters (complex) handed to the search.
  std::size_t unknowns = 0;

  std::size_t group_order() const { return orbits.group.order(); }
  /// First (canonical) solution; throws PreconditionError when unresolved.
  const PremodularData& data() const;
};

/// Modularizes p by its full Müger center, which must be even and pointed.
CondensedData condense(const PremodularData& p, const ResolutionOptions& opts = {});

/// Quantum double of delta inside the modular hat: the centralizer of the
/// diagonally embedded degenerates in hat x conj(hat), condensed. Throws
/// PreconditionError unless the extension is minimal with an even pointed
/// abelian degenerate part.
CondensedData double_data(const PremodularData& hat, const Subcategory& delta,
                          const ResolutionOptions& opts = {});

/// Checks sum_{w in delta} N_{eta zeta*}^w d(w) = d(eta) d(zeta) chi(eta zeta*),
/// chi = 1 iff every channel of eta x zeta* lies in delta.
IdentityCheck lemma_lem1_check(const PremodularData& hat, const Subcategory& delta, Label eta,
                               Label zeta, double tol = kDefaultTolerance);

}  // namespace premod

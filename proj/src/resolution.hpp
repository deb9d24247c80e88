#pragma once

// Search for the S' entries between split sheets of fixed orbits.

#include <vector>

#include "premod/condensation.hpp"

namespace premod::detail {

struct ResolutionOutcome {
  std::vector<CondensedLabel> labels;
  std::vector<PremodularData> solutions;  // canonical, sorted, inequivalent
  double best_residual = 0.0;
  std::size_t unknowns = 0;
};

ResolutionOutcome resolve_condensation(const PremodularData& p, const OrbitDecomposition& od,
                                       const ResolutionOptions& opts);

/// Characters of the subgroup `members` (group positions) as phases, one row
/// per character, columns in the order of members. Trivial character first.
std::vector<std::vector<Complex>> subgroup_characters(const GroupTable& g,
                                                      const std::vector<std::size_t>& members);

}  // namespace premod::detail

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "premod/report.hpp"

namespace premod {

/// Labels are positions in a category's label list; names are for display only.
using Label = std::size_t;

/// One sparse entry N_{ab}^c = multiplicity.
struct FusionEntry {
  Label a, b, c;
  int multiplicity;
};

/// Fusion ring data: labels, unit, dual involution and multiplicities N_{ab}^c.
///
/// The constructor only checks structure (unique names, indices in range,
/// non-negative multiplicities). Ring axioms are checked by validate_fusion().
class FusionData {
 public:
  FusionData() = default;
  FusionData(std::vector<std::string> names, Label unit, std::vector<Label> dual,
             const std::vector<FusionEntry>& entries);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Label a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  /// Throws StructuralError for an unknown name.
  Label index_of(const std::string& name) const;

  Label unit() const { return unit_; }
  Label dual(Label a) const { return dual_[a]; }
  const std::vector<Label>& duals() const { return dual_; }

  int N(Label a, Label b, Label c) const { return mult_[(a * size() + b) * size() + c]; }

  /// Non-zero channels of a ⊗ b as (c, N_{ab}^c).
  std::vector<std::pair<Label, int>> fuse(Label a, Label b) const;
  /// All non-zero entries in (a, b, c) lexicographic order.
  std::vector<FusionEntry> entries() const;

 private:
  std::vector<std::string> names_;
  Label unit_ = 0;
  std::vector<Label> dual_;
  std::vector<int> mult_;
};

using QuantumDims = std::vector<double>;

/// Checks unit axiom, dual involution, Frobenius reciprocity and associativity.
ValidationReport validate_fusion(const FusionData& f);

struct PerronFrobeniusOptions {
  int max_iterations = 100000;
  double convergence = 1e-12;
};

/// Dimension function from the Perron-Frobenius eigenvector of the fusion matrices.
/// Throws ConvergenceError when the iteration cap is hit.
QuantumDims perron_frobenius_dims(const FusionData& f, const PerronFrobeniusOptions& opts = {});

double global_dim(const QuantumDims& d);

/// Labels are pairs (i, j) stored at index i * b.size() + j.
FusionData deligne_product(const FusionData& a, const FusionData& b);

/// A fusion-closed label subset of some parent category, sorted ascending.
struct Subcategory {
  std::vector<Label> members;

  bool contains(Label a) const;
  std::size_t size() const { return members.size(); }
  /// Position of a parent label within members; throws if absent.
  std::size_t position(Label a) const;
};

/// Verifies unit membership, dual closure and fusion closure.
/// Throws ClosureError carrying the offending triple (a, b, c); for a missing
/// unit or dual the triple is (a, a, missing).
Subcategory full_subcategory(const FusionData& f, std::vector<Label> members);

/// The whole label set as a subcategory.
Subcategory whole(const FusionData& f);

/// Induced fusion data on the members, labels renumbered by position.
FusionData restrict_fusion(const FusionData& f, const Subcategory& s);

/// Every fusion-closed subset, by exhaustive search over subsets containing
/// the unit. Intended for small label counts.
std::vector<Subcategory> enumerate_subcategories(const FusionData& f);

}  // namespace premod

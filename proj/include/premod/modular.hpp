#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "premod/fusion.hpp"
#include "premod/report.hpp"

namespace premod {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// A unit-modulus phase, kept exact as p/q (meaning e^{2 pi i p/q}) when it
/// was given that way.
class Twist {
 public:
  Twist() : exact_(std::pair<long, long>{0, 1}), value_(1.0, 0.0) {}
  static Twist rational(long p, long q);
  static Twist complex(Complex z);

  Complex value() const { return value_; }
  const std::optional<std::pair<long, long>>& exact() const { return exact_; }

  Twist inverse() const;
  Twist operator*(const Twist& o) const;
  /// Exact comparison when both sides are rational, else within tol.
  bool equals(const Twist& o, double tol) const;
  bool is_one(double tol) const { return equals(Twist{}, tol); }

 private:
  std::optional<std::pair<long, long>> exact_;
  Complex value_;
};

/// Fusion ring plus dimensions, twists and the unnormalized S' matrix.
struct PremodularData {
  FusionData fusion;
  QuantumDims dims;
  std::vector<Twist> theta;
  ComplexMatrix sprime;

  std::size_t size() const { return fusion.size(); }
  Complex twist(Label a) const { return theta[a].value(); }
  double global_dim() const { return premod::global_dim(dims); }
};

/// S'(a,b) = sum_c N_{a* b}^c theta_c / (theta_a theta_b) d(c), unchecked.
ComplexMatrix balancing_sprime(const FusionData& f, const QuantumDims& d,
                               const std::vector<Twist>& theta);

/// Balancing S' that must also be row-multiplicative; throws
/// NumericalInconsistency when (f, theta) is not realizable premodular data.
ComplexMatrix sprime_from_balancing(const FusionData& f, const QuantumDims& d,
                                    const std::vector<Twist>& theta,
                                    double tol = kDefaultTolerance);

/// Assembles PremodularData without validating it. Missing dims come from
/// Perron-Frobenius, a missing S' from balancing.
PremodularData make_premodular(FusionData f, std::vector<Twist> theta,
                               std::optional<QuantumDims> dims = std::nullopt,
                               std::optional<ComplexMatrix> sprime = std::nullopt);

struct GaussSums {
  Complex delta_plus;   // sum d^2 theta^{-1}
  Complex delta_minus;  // sum d^2 theta
  double D = 1.0;       // sqrt(dim)
};

GaussSums gauss_sums(const PremodularData& p);

/// Every PremodularData invariant, the QuantumDims invariants, and (when S' is
/// invertible) the Gauss sum identities.
ValidationReport verify_premodular(const PremodularData& p, double tol = kDefaultTolerance);

struct ModularityReport {
  bool modular = false;
  std::size_t rank = 0;
  double condition = 0.0;
  Eigen::VectorXcd kernel_witness;  // right singular vector of the smallest singular value
  ComplexMatrix S, T, C;
  int root_choice = 0;  // k in e^{2 pi i k/3} times the principal cube root
  double s_unitary = 0, t_unitary = 0, s_squared = 0, st_cubed = 0, tc_commute = 0;
  double max_residual = 0;
  bool relations_hold = false;
};

ModularityReport is_modular(const PremodularData& p, double tol = kDefaultTolerance);

/// Abelian group structure on a set of invertible labels under fusion.
struct GroupTable {
  std::vector<Label> elements;     // category labels, sorted
  std::vector<std::size_t> table;  // table[i * order + j] = position of elements[i] x elements[j]
  std::size_t identity = 0;

  std::size_t order() const { return elements.size(); }
  std::size_t mul(std::size_t i, std::size_t j) const { return table[i * order() + j]; }
  std::size_t position(Label a) const;
  std::size_t element_order(std::size_t i) const;
  bool abelian() const;
};

struct CenterReport {
  Subcategory degenerate;
  bool is_even = false;
  bool is_pointed = false;
  std::optional<GroupTable> group;
};

/// a is degenerate iff S'(a,b) = d(a) d(b) for every b.
CenterReport muger_center(const PremodularData& p, double tol = kDefaultTolerance);

/// Group table on invertible labels, throws StructuralError when fusion among
/// them is not group-like.
GroupTable group_of(const FusionData& f, const std::vector<Label>& labels);

/// {rho : S'(rho, sigma) = d(rho) d(sigma) for all sigma in s}. On modular input
/// also asserts dim(result) = dim(p)/dim(s), throwing NumericalInconsistency.
Subcategory centralizer(const PremodularData& p, const Subcategory& s,
                        double tol = kDefaultTolerance);

/// Premodular data restricted to a fusion-closed subset, labels renumbered.
PremodularData restrict_data(const PremodularData& p, const Subcategory& s);

double subcategory_dim(const PremodularData& p, const Subcategory& s);

struct MinimalityReport {
  Subcategory degenerates;  // degenerate labels of delta, as labels of hat
  Subcategory centralizer;  // centralizer of delta in hat
  bool minimal = false;     // the two sets coincide
  double dim_hat = 0, dim_delta = 0, dim_degenerate = 0;
  bool dimension_identity = false;  // dim hat = dim delta * dim degenerate
  bool degenerates_even = false;
  bool degenerates_pointed = false;
  /// Minimal with an even, pointed, abelian degenerate part: the hypotheses
  /// needed by the quantum double construction.
  bool admits_double = false;
};

MinimalityReport check_minimal_extension(const PremodularData& hat, const Subcategory& delta,
                                         double tol = kDefaultTolerance);

/// Fusion rules reconstructed from a unitary S by the Verlinde formula,
/// indexed [(a * n + b) * n + c].
std::vector<Complex> verlinde_fusion(const ComplexMatrix& S, Label unit);

/// Verlinde reconstruction against the stored N: integrality and equality.
CheckResult verlinde_check(const PremodularData& p, double tol = 1e-6);

/// Complex-conjugate S', inverse twists.
PremodularData conjugate(const PremodularData& p);

/// Deligne product; twists, dims and S' multiply.
PremodularData product(const PremodularData& a, const PremodularData& b);

/// Same data with old label i renamed to position perm[i].
PremodularData relabel(const PremodularData& p, const std::vector<Label>& perm);

/// A label bijection perm (a's label i maps to b's label perm[i]) preserving
/// unit, fusion, dims, twists and S', if one exists.
std::optional<std::vector<Label>> equivalence(const PremodularData& a, const PremodularData& b,
                                              double tol = 1e-8);

}  // namespace premod

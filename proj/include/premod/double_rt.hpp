#pragma once

#include <Eigen/Core>

#include "premod/condensation.hpp"
#include "premod/surgery.hpp"

namespace premod {

/// [l,m] = (1/dim hat) sum_{v in delta} N_{l m*}^v d(v).
struct PairingBracket {
  Eigen::MatrixXd table;  // table(l, m), labels of hat
  double dim_hat = 1.0;
  double dim_delta = 1.0;

  double operator()(Label l, Label m) const {
    return table(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m));
  }
};

/// Requires a minimal extension. Asserts nonnegativity, symmetry and the
/// all-or-nothing values d(l)d(m)/dim hat and 0, throwing NumericalInconsistency.
PairingBracket pairing_bracket(const PremodularData& hat, const Subcategory& delta,
                               double tol = kDefaultTolerance);

/// (1/dim delta) sum over pairs of colorings of prod_i [l_i,m_i] F(l) conj F(m).
InvariantValue tau_double(const PremodularData& hat, const Subcategory& delta,
                          const PlumbingGraph& g, const EvalOptions& opts = {});

/// tau_double(hat, hat, g) against |rt_invariant(hat, g)|^2.
IdentityCheck factorization_check(const PremodularData& hat, const PlumbingGraph& g,
                                  const EvalOptions& opts = {});

/// tau_double(hat, delta, g) against rt_invariant of the condensed double.
/// Skipped unless the resolution is unique.
IdentityCheck double_pipeline_check(const PremodularData& hat, const Subcategory& delta,
                                    const CondensedData& dbl, const PlumbingGraph& g,
                                    const EvalOptions& opts = {});

}  // namespace premod

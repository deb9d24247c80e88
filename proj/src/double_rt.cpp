#include "premod/double_rt.hpp"

#include <cmath>
#include <sstream>

#include "forest_sum.hpp"
#include "premod/error.hpp"

namespace premod {

PairingBracket pairing_bracket(const PremodularData& hat, const Subcategory& delta, double tol) {
  const MinimalityReport m = check_minimal_extension(hat, delta, tol);
  if (!m.minimal) throw PreconditionError("pairing bracket needs a minimal extension");
  const std::size_t n = hat.size();
  PairingBracket b;
  b.dim_hat = hat.global_dim();
  b.dim_delta = m.dim_delta;
  b.table = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Label l = 0; l < n; ++l)
    for (Label k = 0; k < n; ++k) {
      double sum = 0.0;
      bool some_in = false, some_out = false;
      for (const auto& [v, mult] : hat.fusion.fuse(l, hat.fusion.dual(k))) {
        if (delta.contains(v)) {
          sum += mult * hat.dims[v];
          some_in = true;
        } else {
          some_out = true;
        }
      }
      if (some_in && some_out) {
        std::ostringstream os;
        os << hat.fusion.name(l) << " x " << hat.fusion.name(k)
           << "* meets delta only partially";
        throw NumericalInconsistency(os.str());
      }
      b.table(l, k) = sum / b.dim_hat;
    }

  for (Label l = 0; l < n; ++l)
    for (Label k = 0; k < n; ++k) {
      const double x = b(l, k);
      const double full = hat.dims[l] * hat.dims[k] / b.dim_hat;
      const bool ok = x >= -tol && std::abs(x - b(k, l)) <= tol &&
                      (std::abs(x) <= tol || std::abs(x - full) <= tol);
      if (!ok)
        throw NumericalInconsistency("pairing bracket invariant fails at (" + hat.fusion.name(l) +
                                     "," + hat.fusion.name(k) + ")");
    }
  return b;
}

InvariantValue tau_double(const PremodularData& hat, const Subcategory& delta,
                          const PlumbingGraph& g, const EvalOptions& opts) {
  const PairingBracket b = pairing_bracket(hat, delta, opts.tolerance);
  const std::size_t n = hat.size();

  // Only pairs with a nonzero bracket contribute.
  std::vector<std::pair<Label, Label>> support;
  for (Label l = 0; l < n; ++l)
    for (Label k = 0; k < n; ++k)
      if (b(l, k) != 0.0) support.emplace_back(l, k);

  const auto V = static_cast<Eigen::Index>(g.size());
  const auto P = static_cast<Eigen::Index>(support.size());
  detail::ForestWeights w;
  w.vertex.resize(V, P);
  w.edge.resize(P, P);
  for (Eigen::Index v = 0; v < V; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const int m = g.framing(vi);
    const double e = 1.0 - static_cast<double>(g.degree(vi));
    for (Eigen::Index s = 0; s < P; ++s) {
      const auto [l, k] = support[static_cast<std::size_t>(s)];
      w.vertex(v, s) = b(l, k) * std::pow(hat.twist(l), m) * std::conj(std::pow(hat.twist(k), m)) *
                       std::pow(hat.dims[l] * hat.dims[k], e);
    }
  }
  for (Eigen::Index s = 0; s < P; ++s)
    for (Eigen::Index t = 0; t < P; ++t) {
      const auto [l1, k1] = support[static_cast<std::size_t>(s)];
      const auto [l2, k2] = support[static_cast<std::size_t>(t)];
      w.edge(s, t) = hat.sprime(l1, l2) * std::conj(hat.sprime(k1, k2));
    }

  InvariantValue out = detail::evaluate_forest(g, w, opts);
  out.value /= b.dim_delta;
  return out;
}

IdentityCheck factorization_check(const PremodularData& hat, const PlumbingGraph& g,
                                  const EvalOptions& opts) {
  IdentityCheck r;
  const Complex tau = rt_invariant(hat, g, opts).value;
  r.lhs = tau_double(hat, whole(hat.fusion), g, opts).value;
  r.rhs = tau * std::conj(tau);
  r.residual = std::abs(r.lhs - r.rhs);
  r.passed = r.residual <= opts.tolerance;
  return r;
}

IdentityCheck double_pipeline_check(const PremodularData& hat, const Subcategory& delta,
                                    const CondensedData& dbl, const PlumbingGraph& g,
                                    const EvalOptions& opts) {
  IdentityCheck r;
  if (dbl.status != ResolutionStatus::unique) {
    r.skipped = true;
    r.note = "double resolution status is " + to_string(dbl.status);
    return r;
  }
  r.lhs = tau_double(hat, delta, g, opts).value;
  r.rhs = rt_invariant(dbl.data(), g, opts).value;
  r.residual = std::abs(r.lhs - r.rhs);
  r.passed = r.residual <= opts.tolerance;
  return r;
}

}  // namespace premod

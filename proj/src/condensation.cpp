#include "premod/condensation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "premod/error.hpp"
#include "resolution.hpp"

namespace premod {

GroupTable degenerate_group(const PremodularData& p, double tol) {
  const CenterReport c = muger_center(p, tol);
  if (!c.is_pointed) throw PreconditionError("degenerate subcategory is not pointed");
  if (!c.is_even) throw PreconditionError("degenerate subcategory is not even (some twist != 1)");
  if (!c.group->abelian()) throw PreconditionError("degenerate group is not abelian");
  return *c.group;
}

OrbitDecomposition orbit_decomposition(const PremodularData& p, double tol) {
  OrbitDecomposition od;
  od.group = degenerate_group(p, tol);
  const std::size_t n = p.size();
  const GroupTable& G = od.group;
  od.action.assign(G.order() * n, n);
  for (std::size_t g = 0; g < G.order(); ++g)
    for (Label x = 0; x < n; ++x) {
      const auto channels = p.fusion.fuse(G.elements[g], x);
      if (channels.size() != 1 || channels[0].second != 1) {
        std::ostringstream os;
        os << p.fusion.name(G.elements[g]) << " x " << p.fusion.name(x) << " is not simple";
        throw NumericalInconsistency(os.str());
      }
      od.action[g * n + x] = channels[0].first;
    }

  od.orbit_of.assign(n, n);
  for (Label x = 0; x < n; ++x) {
    if (od.orbit_of[x] != n) continue;
    Orbit o;
    o.representative = x;
    for (std::size_t g = 0; g < G.order(); ++g) {
      const Label y = od.act(g, x);
      o.members.push_back(y);
      if (y == x) o.stabilizer.push_back(g);
    }
    std::sort(o.members.begin(), o.members.end());
    o.members.erase(std::unique(o.members.begin(), o.members.end()), o.members.end());
    if (o.members.size() * o.stabilizer.size() != G.order())
      throw NumericalInconsistency("orbit-stabilizer count fails at " + p.fusion.name(x));
    for (Label y : o.members) od.orbit_of[y] = od.orbits.size();
    od.orbits.push_back(std::move(o));
  }

  // Runtime checks of the well-definedness of the quotient data.
  const Subcategory c = centralizer(p, full_subcategory(p.fusion, G.elements), tol);
  for (const Orbit& o : od.orbits)
    for (Label y : o.members) {
      if (!p.theta[y].equals(p.theta[o.representative], tol))
        throw NumericalInconsistency("twist is not constant on the orbit of " +
                                     p.fusion.name(o.representative));
      for (Label eta : c.members)
        if (std::abs(p.sprime(y, eta) - p.sprime(o.representative, eta)) > tol)
          throw NumericalInconsistency("S' is not orbit invariant at (" + p.fusion.name(y) + "," +
                                       p.fusion.name(eta) + ")");
    }
  return od;
}

std::string to_string(ResolutionStatus s) {
  switch (s) {
    case ResolutionStatus::unique:
      return "unique";
    case ResolutionStatus::multiple:
      return "multiple";
    case ResolutionStatus::unresolved:
      return "unresolved";
  }
  return "unresolved";
}

const PremodularData& CondensedData::data() const {
  if (solutions.empty()) throw PreconditionError("condensation is unresolved");
  return solutions.front();
}

CondensedData condense(const PremodularData& p, const ResolutionOptions& opts) {
  CondensedData out;
  out.source = p;
  out.orbits = orbit_decomposition(p, opts.tolerance);
  auto r = detail::resolve_condensation(p, out.orbits, opts);
  out.new_labels = std::move(r.labels);
  out.solutions = std::move(r.solutions);
  out.unknowns = r.unknowns;
  out.constraint_residual = r.best_residual;
  out.status = out.solutions.empty()      ? ResolutionStatus::unresolved
               : out.solutions.size() == 1 ? ResolutionStatus::unique
                                           : ResolutionStatus::multiple;
  return out;
}

CondensedData double_data(const PremodularData& hat, const Subcategory& delta,
                          const ResolutionOptions& opts) {
  const MinimalityReport m = check_minimal_extension(hat, delta, opts.tolerance);
  if (!m.minimal) throw PreconditionError("extension is not minimal: centralizer != degenerates");
  if (!m.admits_double)
    throw PreconditionError("degenerate part is not even, pointed and abelian");

  const PremodularData both = product(hat, conjugate(hat));
  const std::size_t n = hat.size();
  std::vector<Label> diagonal;
  for (Label s : m.degenerates.members) diagonal.push_back(s * n + s);
  const Subcategory embedded = full_subcategory(both.fusion, diagonal);
  const Subcategory cent = centralizer(both, embedded, opts.tolerance);
  const PremodularData restricted = restrict_data(both, cent);
  CondensedData out = condense(restricted, opts);

  if (out.group_order() != diagonal.size())
    throw NumericalInconsistency("degenerate part of the centralizer is not the diagonal");
  const double expected = m.dim_delta * m.dim_delta;
  const double got = restricted.global_dim() / static_cast<double>(out.group_order());
  if (std::abs(got - expected) > 1e-8 * std::max(1.0, expected)) {
    std::ostringstream os;
    os << "double has dimension " << got << ", expected (dim delta)^2 = " << expected;
    throw NumericalInconsistency(os.str());
  }
  return out;
}

IdentityCheck lemma_lem1_check(const PremodularData& hat, const Subcategory& delta, Label eta,
                               Label zeta, double tol) {
  const MinimalityReport m = check_minimal_extension(hat, delta, tol);
  if (!m.minimal) throw PreconditionError("extension is not minimal");
  IdentityCheck r;
  const Label zbar = hat.fusion.dual(zeta);
  bool inside = true;
  Complex lhs = 0.0;
  for (const auto& [w, mult] : hat.fusion.fuse(eta, zbar)) {
    if (delta.contains(w))
      lhs += static_cast<double>(mult) * hat.dims[w];
    else
      inside = false;
  }
  r.lhs = lhs;
  r.rhs = inside ? hat.dims[eta] * hat.dims[zbar] : 0.0;
  r.residual = std::abs(r.lhs - r.rhs);
  r.passed = r.residual <= tol;
  r.note = inside ? "chi = 1" : "chi = 0";
  return r;
}

}  // namespace premod

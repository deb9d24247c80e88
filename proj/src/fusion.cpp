#include "premod/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "premod/error.hpp"

namespace premod {

FusionData::FusionData(std::vector<std::string> names, Label unit, std::vector<Label> dual,
                       const std::vector<FusionEntry>& entries)
    : names_(std::move(names)), unit_(unit), dual_(std::move(dual)) {
  const std::size_t n = names_.size();
  if (n == 0) throw StructuralError("fusion data needs at least one label");
  std::set<std::string> seen;
  for (const auto& nm : names_)
    if (!seen.insert(nm).second) throw StructuralError("duplicate label '" + nm + "'");
  if (unit_ >= n) throw StructuralError("unit index out of range");
  if (dual_.size() != n) throw StructuralError("dual map must cover every label");
  for (Label d : dual_)
    if (d >= n) throw StructuralError("dual references unknown label");

  mult_.assign(n * n * n, 0);
  for (const auto& e : entries) {
    if (e.a >= n || e.b >= n || e.c >= n)
      throw StructuralError("fusion entry references unknown label");
    if (e.multiplicity < 0) throw StructuralError("negative fusion multiplicity");
    int& slot = mult_[(e.a * n + e.b) * n + e.c];
    if (slot != 0)
      throw StructuralError("duplicate fusion entry (" + names_[e.a] + "," + names_[e.b] + "," +
                            names_[e.c] + ")");
    slot = e.multiplicity;
  }
}

Label FusionData::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw StructuralError("unknown label '" + name + "'");
  return static_cast<Label>(it - names_.begin());
}

std::vector<std::pair<Label, int>> FusionData::fuse(Label a, Label b) const {
  std::vector<std::pair<Label, int>> out;
  for (Label c = 0; c < size(); ++c)
    if (int m = N(a, b, c); m != 0) out.emplace_back(c, m);
  return out;
}

std::vector<FusionEntry> FusionData::entries() const {
  std::vector<FusionEntry> out;
  const std::size_t n = size();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (int m = N(a, b, c); m != 0) out.push_back({a, b, c, m});
  return out;
}

namespace {

std::string triple(const FusionData& f, Label a, Label b, Label c) {
  return "(" + f.name(a) + "," + f.name(b) + "," + f.name(c) + ")";
}

}  // namespace

ValidationReport validate_fusion(const FusionData& f) {
  ValidationReport report;
  const std::size_t n = f.size();
  const Label u = f.unit();

  CheckResult unit{"unit_axiom"};
  for (Label a = 0; a < n && unit.passed; ++a)
    for (Label b = 0; b < n; ++b) {
      const int expect = a == b ? 1 : 0;
      if (f.N(u, a, b) != expect || f.N(a, u, b) != expect) {
        unit.passed = false;
        unit.residual = 1;
        unit.witness = triple(f, u, a, b);
        break;
      }
    }
  report.checks.push_back(unit);

  CheckResult dual{"dual_involution"};
  if (f.dual(u) != u) {
    dual.passed = false;
    dual.witness = "dual(" + f.name(u) + ") != " + f.name(u);
  }
  for (Label a = 0; a < n && dual.passed; ++a)
    if (f.dual(f.dual(a)) != a) {
      dual.passed = false;
      dual.witness = "dual(dual(" + f.name(a) + ")) != " + f.name(a);
    }
  if (!dual.passed) dual.residual = 1;
  report.checks.push_back(dual);

  CheckResult frob{"frobenius_reciprocity"};
  for (Label a = 0; a < n && frob.passed; ++a)
    for (Label b = 0; b < n && frob.passed; ++b)
      for (Label c = 0; c < n; ++c) {
        const int m = f.N(a, b, c);
        if (m != f.N(f.dual(b), f.dual(a), f.dual(c)) || m != f.N(f.dual(a), c, b)) {
          frob.passed = false;
          frob.residual = 1;
          frob.witness = triple(f, a, b, c);
          break;
        }
      }
  report.checks.push_back(frob);

  CheckResult assoc{"associativity"};
  for (Label a = 0; a < n && assoc.passed; ++a)
    for (Label b = 0; b < n && assoc.passed; ++b)
      for (Label c = 0; c < n && assoc.passed; ++c)
        for (Label d = 0; d < n; ++d) {
          long lhs = 0, rhs = 0;
          for (Label e = 0; e < n; ++e) {
            lhs += static_cast<long>(f.N(a, b, e)) * f.N(e, c, d);
            rhs += static_cast<long>(f.N(b, c, e)) * f.N(a, e, d);
          }
          if (lhs != rhs) {
            assoc.passed = false;
            assoc.residual = static_cast<double>(std::labs(lhs - rhs));
            assoc.witness = "(" + f.name(a) + "," + f.name(b) + "," + f.name(c) + "," +
                            f.name(d) + ")";
            break;
          }
        }
  report.checks.push_back(assoc);
  return report;
}

QuantumDims perron_frobenius_dims(const FusionData& f, const PerronFrobeniusOptions& opts) {
  // Every entry of sum_a N_a is positive for a fusion ring, so the Perron
  // vector is unique and is the common eigenvector of all N_a.
  const std::size_t n = f.size();
  std::vector<double> total(n * n, 0.0);
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) total[b * n + c] += f.N(a, b, c);

  std::vector<double> v(n, 1.0), w(n);
  bool converged = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += total[i * n + j] * v[j];
      w[i] = s;
    }
    double norm = 0.0;
    for (double x : w) norm = std::max(norm, std::abs(x));
    if (norm == 0.0) throw ConvergenceError("fusion matrix sum is zero");
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= norm;
      change = std::max(change, std::abs(w[i] - v[i]));
    }
    v.swap(w);
    if (change < opts.convergence) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("Perron-Frobenius iteration did not converge");

  const double vu = v[f.unit()];
  if (vu <= 0.0) throw ConvergenceError("Perron vector vanishes at the unit");
  QuantumDims d(n);
  for (Label a = 0; a < n; ++a) d[a] = v[a] / vu;

  // Rayleigh refinement of each eigenvalue N_a v = d(a) v.
  double vv = 0.0;
  for (double x : v) vv += x * x;
  for (Label a = 0; a < n; ++a) {
    double num = 0.0;
    for (Label b = 0; b < n; ++b) {
      double s = 0.0;
      for (Label c = 0; c < n; ++c) s += f.N(a, b, c) * v[c];
      num += v[b] * s;
    }
    d[a] = num / vv;
  }
  d[f.unit()] = 1.0;
  return d;
}

double global_dim(const QuantumDims& d) {
  double s = 0.0;
  for (double x : d) s += x * x;
  return s;
}

FusionData deligne_product(const FusionData& a, const FusionData& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::string> names;
  names.reserve(na * nb);
  for (Label i = 0; i < na; ++i)
    for (Label j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  std::vector<Label> dual(na * nb);
  for (Label i = 0; i < na; ++i)
    for (Label j = 0; j < nb; ++j) dual[i * nb + j] = a.dual(i) * nb + b.dual(j);

  std::vector<FusionEntry> entries;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (const auto& x : ea)
    for (const auto& y : eb)
      entries.push_back({x.a * nb + y.a, x.b * nb + y.b, x.c * nb + y.c,
                         x.multiplicity * y.multiplicity});
  return FusionData(std::move(names), a.unit() * nb + b.unit(), std::move(dual), entries);
}

bool Subcategory::contains(Label a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

std::size_t Subcategory::position(Label a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) throw StructuralError("label not in subcategory");
  return static_cast<std::size_t>(it - members.begin());
}

Subcategory full_subcategory(const FusionData& f, std::vector<Label> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Label a : members)
    if (a >= f.size()) throw StructuralError("subcategory member out of range");
  Subcategory s{std::move(members)};
  if (!s.contains(f.unit()))
    throw ClosureError("subcategory does not contain the unit", f.unit(), f.unit(), f.unit());
  for (Label a : s.members)
    if (!s.contains(f.dual(a)))
      throw ClosureError("subcategory not closed under dual at " + f.name(a), a, a, f.dual(a));
  for (Label a : s.members)
    for (Label b : s.members)
      for (const auto& [c, m] : f.fuse(a, b))
        if (!s.contains(c)) {
          std::ostringstream os;
          os << "subcategory not closed under fusion: " << f.name(a) << " x " << f.name(b)
             << " contains " << f.name(c);
          throw ClosureError(os.str(), a, b, c);
        }
  return s;
}

Subcategory whole(const FusionData& f) {
  Subcategory s;
  s.members.resize(f.size());
  for (Label a = 0; a < f.size(); ++a) s.members[a] = a;
  return s;
}

FusionData restrict_fusion(const FusionData& f, const Subcategory& s) {
  std::vector<std::string> names;
  std::vector<Label> dual;
  for (Label a : s.members) {
    names.push_back(f.name(a));
    dual.push_back(s.position(f.dual(a)));
  }
  std::vector<FusionEntry> entries;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t k = 0; k < s.size(); ++k)
        if (int m = f.N(s.members[i], s.members[j], s.members[k]); m != 0)
          entries.push_back({i, j, k, m});
  return FusionData(std::move(names), s.position(f.unit()), std::move(dual), entries);
}

std::vector<Subcategory> enumerate_subcategories(const FusionData& f) {
  const std::size_t n = f.size();
  if (n > 20) throw PreconditionError("subset search limited to 20 labels");
  std::vector<Label> others;
  for (Label a = 0; a < n; ++a)
    if (a != f.unit()) others.push_back(a);
  std::vector<Subcategory> out;
  const std::size_t count = std::size_t{1} << others.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Label> members{f.unit()};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask & (std::size_t{1} << i)) members.push_back(others[i]);
    try {
      out.push_back(full_subcategory(f, std::move(members)));
    } catch (const ClosureError&) {
    }
  }
  return out;
}

}  // namespace premod

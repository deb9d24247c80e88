#include "premod/modular.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "premod/error.hpp"

namespace premod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative singular value below which S' is treated as singular. Modular S'
// has all singular values equal to sqrt(dim), degenerate S' has exact zeros,
// so the threshold sits far from both.
constexpr double kRankThreshold = 1e-6;

std::pair<long, long> reduce(long p, long q) {
  if (q == 0) throw StructuralError("twist denominator is zero");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  p %= q;
  if (p < 0) p += q;
  const long g = std::gcd(p, q);
  return {p / g, q / g};
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string pair_name(const FusionData& f, Label a, Label b) {
  return "(" + f.name(a) + "," + f.name(b) + ")";
}

// Tracks the worst residual of a check and the witness where it first failed.
struct Tracker {
  CheckResult result;
  double tol;
  Tracker(std::string name, double t) : result{std::move(name)}, tol(t) {}
  void see(double residual, const std::function<std::string()>& witness) {
    result.residual = std::max(result.residual, residual);
    if (residual > tol && result.passed) {
      result.passed = false;
      result.witness = witness();
    }
  }
};

bool sprime_invertible(const ComplexMatrix& sprime) {
  Eigen::JacobiSVD<ComplexMatrix> svd(sprime);
  const auto& sv = svd.singularValues();
  return sv.size() > 0 && sv(sv.size() - 1) > kRankThreshold * sv(0);
}

}  // namespace

Twist Twist::rational(long p, long q) {
  Twist t;
  t.exact_ = reduce(p, q);
  t.value_ = std::polar(1.0, kTwoPi * static_cast<double>(t.exact_->first) /
                                 static_cast<double>(t.exact_->second));
  return t;
}

Twist Twist::complex(Complex z) {
  Twist t;
  t.exact_.reset();
  t.value_ = z;
  return t;
}

Twist Twist::inverse() const {
  if (exact_) return rational(-exact_->first, exact_->second);
  return complex(1.0 / value_);
}

Twist Twist::operator*(const Twist& o) const {
  if (exact_ && o.exact_) {
    const auto [p1, q1] = *exact_;
    const auto [p2, q2] = *o.exact_;
    return rational(p1 * q2 + p2 * q1, q1 * q2);
  }
  return complex(value_ * o.value_);
}

bool Twist::equals(const Twist& o, double tol) const {
  if (exact_ && o.exact_) return *exact_ == *o.exact_;
  return std::abs(value_ - o.value_) <= tol;
}

ComplexMatrix balancing_sprime(const FusionData& f, const QuantumDims& d,
                               const std::vector<Twist>& theta) {
  const std::size_t n = f.size();
  if (d.size() != n || theta.size() != n)
    throw StructuralError("dims and twists must cover every label");
  ComplexMatrix s(n, n);
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (const auto& [c, m] : f.fuse(f.dual(a), b))
        acc += static_cast<double>(m) * theta[c].value() * d[c];
      s(a, b) = acc / (theta[a].value() * theta[b].value());
    }
  return s;
}

namespace {

CheckResult row_multiplicativity(const FusionData& f, const QuantumDims& d,
                                 const ComplexMatrix& s, double tol) {
  const std::size_t n = f.size();
  Tracker t("row_multiplicativity", tol);
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        Complex rhs = 0.0;
        for (const auto& [e, m] : f.fuse(b, c)) rhs += static_cast<double>(m) * s(a, e);
        const double r = std::abs(s(a, b) * s(a, c) / d[a] - rhs);
        t.see(r, [&] { return "(" + f.name(a) + "," + f.name(b) + "," + f.name(c) + ")"; });
      }
  return t.result;
}

}  // namespace

ComplexMatrix sprime_from_balancing(const FusionData& f, const QuantumDims& d,
                                    const std::vector<Twist>& theta, double tol) {
  ComplexMatrix s = balancing_sprime(f, d, theta);
  const CheckResult rm = row_multiplicativity(f, d, s, tol);
  if (!rm.passed) {
    std::ostringstream os;
    os << "twists are not realizable: row multiplicativity fails at " << rm.witness
       << " (residual " << rm.residual << ")";
    throw NumericalInconsistency(os.str());
  }
  return s;
}

PremodularData make_premodular(FusionData f, std::vector<Twist> theta,
                               std::optional<QuantumDims> dims,
                               std::optional<ComplexMatrix> sprime) {
  PremodularData p;
  p.dims = dims ? std::move(*dims) : perron_frobenius_dims(f);
  if (p.dims.size() != f.size()) throw StructuralError("dims must cover every label");
  if (theta.size() != f.size()) throw StructuralError("twists must cover every label");
  p.sprime = sprime ? std::move(*sprime) : balancing_sprime(f, p.dims, theta);
  if (p.sprime.rows() != static_cast<Eigen::Index>(f.size()) ||
      p.sprime.cols() != static_cast<Eigen::Index>(f.size()))
    throw StructuralError("S' must be a square matrix over the labels");
  p.fusion = std::move(f);
  p.theta = std::move(theta);
  return p;
}

GaussSums gauss_sums(const PremodularData& p) {
  GaussSums g;
  g.delta_plus = g.delta_minus = 0.0;
  for (Label a = 0; a < p.size(); ++a) {
    const double w = p.dims[a] * p.dims[a];
    g.delta_plus += w / p.twist(a);
    g.delta_minus += w * p.twist(a);
  }
  g.D = std::sqrt(p.global_dim());
  return g;
}

ValidationReport verify_premodular(const PremodularData& p, double tol) {
  const FusionData& f = p.fusion;
  const std::size_t n = f.size();
  const Label u = f.unit();
  ValidationReport report;

  {
    Tracker mod("twist_unit_modulus", tol), unit("twist_unit", tol), dual("twist_dual", tol);
    for (Label a = 0; a < n; ++a) {
      mod.see(std::abs(std::abs(p.twist(a)) - 1.0), [&] { return f.name(a); });
      dual.see(std::abs(p.twist(a) - p.twist(f.dual(a))), [&] { return f.name(a); });
    }
    unit.see(std::abs(p.twist(u) - 1.0), [&] { return f.name(u); });
    report.checks.push_back(mod.result);
    report.checks.push_back(unit.result);
    report.checks.push_back(dual.result);
  }

  {
    Tracker unit("dims_unit", tol), dual("dims_dual", tol), lower("dims_at_least_one", tol),
        mult("dims_multiplicative", tol);
    unit.see(std::abs(p.dims[u] - 1.0), [&] { return f.name(u); });
    for (Label a = 0; a < n; ++a) {
      dual.see(std::abs(p.dims[a] - p.dims[f.dual(a)]), [&] { return f.name(a); });
      lower.see(std::max(0.0, 1.0 - p.dims[a]), [&] { return f.name(a); });
      for (Label b = 0; b < n; ++b) {
        double rhs = 0.0;
        for (const auto& [c, m] : f.fuse(a, b)) rhs += m * p.dims[c];
        mult.see(std::abs(p.dims[a] * p.dims[b] - rhs), [&] { return pair_name(f, a, b); });
      }
    }
    for (auto* t : {&unit, &dual, &lower, &mult}) report.checks.push_back(t->result);
  }

  const ComplexMatrix& s = p.sprime;
  {
    Tracker sym("sprime_symmetric", tol), unit_row("sprime_unit_row", tol),
        conj("sprime_dual_conjugate", tol);
    for (Label a = 0; a < n; ++a) {
      unit_row.see(std::abs(s(u, a) - p.dims[a]), [&] { return f.name(a); });
      for (Label b = 0; b < n; ++b) {
        sym.see(std::abs(s(a, b) - s(b, a)), [&] { return pair_name(f, a, b); });
        conj.see(std::abs(s(a, b) - std::conj(s(f.dual(a), b))),
                 [&] { return pair_name(f, a, b); });
      }
    }
    report.checks.push_back(sym.result);
    report.checks.push_back(unit_row.result);
    report.checks.push_back(conj.result);
  }

  report.checks.push_back(row_multiplicativity(f, p.dims, s, tol));

  {
    Tracker bal("balancing_consistency", tol);
    const ComplexMatrix expect = balancing_sprime(f, p.dims, p.theta);
    for (Label a = 0; a < n; ++a)
      for (Label b = 0; b < n; ++b)
        bal.see(std::abs(s(a, b) - expect(a, b)), [&] { return pair_name(f, a, b); });
    report.checks.push_back(bal.result);
  }

  {
    // A transparent simple spans a symmetric subcategory, so its dimension is a positive integer.
    Tracker integral("transparent_dims_integral", tol);
    for (Label a = 0; a < n; ++a) {
      bool transparent = true;
      for (Label b = 0; b < n && transparent; ++b)
        transparent = std::abs(s(a, b) - p.dims[a] * p.dims[b]) <= tol;
      if (transparent)
        integral.see(std::abs(p.dims[a] - std::round(p.dims[a])), [&] { return f.name(a); });
    }
    report.checks.push_back(integral.result);
  }

  if (sprime_invertible(s)) {
    const GaussSums g = gauss_sums(p);
    Tracker modulus("gauss_modulus", tol), prod("gauss_product", tol);
    modulus.see(std::abs(std::abs(g.delta_plus) - g.D), [] { return std::string("delta_plus"); });
    prod.see(std::abs(g.delta_plus * g.delta_minus - p.global_dim()),
             [] { return std::string("delta_plus * delta_minus"); });
    report.checks.push_back(modulus.result);
    report.checks.push_back(prod.result);
  }
  return report;
}

ModularityReport is_modular(const PremodularData& p, double tol) {
  ModularityReport r;
  const std::size_t n = p.size();
  Eigen::JacobiSVD<ComplexMatrix> svd(p.sprime, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  r.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * smax) ++r.rank;
  r.modular = r.rank == n;
  if (!r.modular) {
    r.kernel_witness = svd.matrixV().col(sv.size() - 1);
    return r;
  }

  const GaussSums g = gauss_sums(p);
  r.S = p.sprime / g.D;
  r.C = ComplexMatrix::Zero(n, n);
  for (Label a = 0; a < n; ++a) r.C(a, p.fusion.dual(a)) = 1.0;
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  const Complex principal = std::polar(1.0, std::arg(g.delta_plus) / 3.0);

  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const Complex root = principal * std::polar(1.0, kTwoPi * k / 3.0);
    ComplexMatrix T = ComplexMatrix::Zero(n, n);
    for (Label a = 0; a < n; ++a) T(a, a) = root * p.twist(a);
    const ComplexMatrix ST = r.S * T;
    const double su = max_abs(r.S * r.S.adjoint() - I);
    const double tu = max_abs(T * T.adjoint() - I);
    const double s2 = max_abs(r.S * r.S - r.C);
    const double st3 = max_abs(ST * ST * ST - r.C);
    const double tc = max_abs(T * r.C - r.C * T);
    const double worst = std::max({su, tu, s2, st3, tc});
    if (worst < best - 1e-15) {
      best = worst;
      r.root_choice = k;
      r.T = T;
      r.s_unitary = su;
      r.t_unitary = tu;
      r.s_squared = s2;
      r.st_cubed = st3;
      r.tc_commute = tc;
    }
  }
  r.max_residual = best;
  r.relations_hold = best <= tol;
  return r;
}

std::size_t GroupTable::position(Label a) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), a);
  if (it == elements.end() || *it != a) throw StructuralError("label not in group");
  return static_cast<std::size_t>(it - elements.begin());
}

std::size_t GroupTable::element_order(std::size_t i) const {
  std::size_t k = 1, x = i;
  while (x != identity) {
    x = mul(x, i);
    ++k;
  }
  return k;
}

bool GroupTable::abelian() const {
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = 0; j < order(); ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

GroupTable group_of(const FusionData& f, const std::vector<Label>& labels) {
  GroupTable g;
  g.elements = labels;
  std::sort(g.elements.begin(), g.elements.end());
  const std::size_t k = g.elements.size();
  g.table.assign(k * k, 0);
  g.identity = g.position(f.unit());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto channels = f.fuse(g.elements[i], g.elements[j]);
      if (channels.size() != 1 || channels[0].second != 1 ||
          !std::binary_search(g.elements.begin(), g.elements.end(), channels[0].first))
        throw StructuralError("fusion of " + f.name(g.elements[i]) + " and " +
                              f.name(g.elements[j]) + " is not group-like");
      g.table[i * k + j] = g.position(channels[0].first);
    }
  return g;
}

CenterReport muger_center(const PremodularData& p, double tol) {
  const std::size_t n = p.size();
  std::vector<Label> deg;
  for (Label a = 0; a < n; ++a) {
    bool ok = true;
    for (Label b = 0; b < n && ok; ++b)
      ok = std::abs(p.sprime(a, b) - p.dims[a] * p.dims[b]) <= tol;
    if (ok) deg.push_back(a);
  }
  CenterReport r;
  r.degenerate = full_subcategory(p.fusion, deg);
  r.is_even = std::all_of(deg.begin(), deg.end(), [&](Label a) { return p.theta[a].is_one(tol); });
  r.is_pointed =
      std::all_of(deg.begin(), deg.end(), [&](Label a) { return std::abs(p.dims[a] - 1.0) <= tol; });
  if (r.is_pointed) r.group = group_of(p.fusion, deg);
  return r;
}

double subcategory_dim(const PremodularData& p, const Subcategory& s) {
  double sum = 0.0;
  for (Label a : s.members) sum += p.dims[a] * p.dims[a];
  return sum;
}

Subcategory centralizer(const PremodularData& p, const Subcategory& s, double tol) {
  std::vector<Label> out;
  for (Label rho = 0; rho < p.size(); ++rho) {
    bool ok = true;
    for (Label sigma : s.members) {
      if (std::abs(p.sprime(rho, sigma) - p.dims[rho] * p.dims[sigma]) > tol) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(rho);
  }
  Subcategory c = full_subcategory(p.fusion, out);
  if (sprime_invertible(p.sprime)) {
    const double lhs = subcategory_dim(p, c) * subcategory_dim(p, s);
    if (std::abs(lhs - p.global_dim()) > tol * std::max(1.0, p.global_dim())) {
      std::ostringstream os;
      os << "centralizer dimension law fails: " << subcategory_dim(p, c) << " * "
         << subcategory_dim(p, s) << " != " << p.global_dim();
      throw NumericalInconsistency(os.str());
    }
  }
  return c;
}

PremodularData restrict_data(const PremodularData& p, const Subcategory& s) {
  PremodularData r;
  r.fusion = restrict_fusion(p.fusion, s);
  const auto k = static_cast<Eigen::Index>(s.size());
  r.sprime.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    r.dims.push_back(p.dims[s.members[i]]);
    r.theta.push_back(p.theta[s.members[i]]);
    for (Eigen::Index j = 0; j < k; ++j) r.sprime(i, j) = p.sprime(s.members[i], s.members[j]);
  }
  return r;
}

MinimalityReport check_minimal_extension(const PremodularData& hat, const Subcategory& delta,
                                         double tol) {
  if (!sprime_invertible(hat.sprime))
    throw PreconditionError("minimal extension check needs a modular ambient category");
  MinimalityReport r;
  const PremodularData sub = restrict_data(hat, delta);
  const CenterReport center = muger_center(sub, tol);
  std::vector<Label> deg;
  for (Label a : center.degenerate.members) deg.push_back(delta.members[a]);
  r.degenerates = full_subcategory(hat.fusion, deg);
  r.centralizer = centralizer(hat, delta, tol);
  r.minimal = r.degenerates.members == r.centralizer.members;
  r.dim_hat = hat.global_dim();
  r.dim_delta = subcategory_dim(hat, delta);
  r.dim_degenerate = subcategory_dim(hat, r.degenerates);
  r.dimension_identity =
      std::abs(r.dim_hat - r.dim_delta * r.dim_degenerate) <= tol * std::max(1.0, r.dim_hat);
  r.degenerates_even = center.is_even;
  r.degenerates_pointed = center.is_pointed;
  r.admits_double = r.minimal && r.degenerates_even && r.degenerates_pointed && center.group &&
                    center.group->abelian();
  return r;
}

std::vector<Complex> verlinde_fusion(const ComplexMatrix& S, Label unit) {
  const auto n = static_cast<std::size_t>(S.rows());
  std::vector<Complex> out(n * n * n);
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        Complex acc = 0.0;
        for (Label x = 0; x < n; ++x) acc += S(a, x) * S(b, x) * std::conj(S(c, x)) / S(unit, x);
        out[(a * n + b) * n + c] = acc;
      }
  return out;
}

CheckResult verlinde_check(const PremodularData& p, double tol) {
  Tracker t("verlinde", tol);
  if (!sprime_invertible(p.sprime)) {
    t.result.passed = false;
    t.result.witness = "S' is not invertible";
    return t.result;
  }
  const std::size_t n = p.size();
  const ComplexMatrix S = p.sprime / std::sqrt(p.global_dim());
  const auto N = verlinde_fusion(S, p.fusion.unit());
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        const Complex v = N[(a * n + b) * n + c];
        t.see(std::abs(v - static_cast<double>(p.fusion.N(a, b, c))),
              [&] { return "(" + p.fusion.name(a) + "," + p.fusion.name(b) + "," +
                           p.fusion.name(c) + ")"; });
      }
  return t.result;
}

PremodularData conjugate(const PremodularData& p) {
  PremodularData c = p;
  c.sprime = p.sprime.conjugate();
  for (auto& t : c.theta) t = t.inverse();
  return c;
}

PremodularData product(const PremodularData& a, const PremodularData& b) {
  PremodularData r;
  r.fusion = deligne_product(a.fusion, b.fusion);
  const std::size_t na = a.size(), nb = b.size();
  r.sprime.resize(static_cast<Eigen::Index>(na * nb), static_cast<Eigen::Index>(na * nb));
  for (Label i = 0; i < na; ++i)
    for (Label j = 0; j < nb; ++j) {
      r.dims.push_back(a.dims[i] * b.dims[j]);
      r.theta.push_back(a.theta[i] * b.theta[j]);
      for (Label k = 0; k < na; ++k)
        for (Label l = 0; l < nb; ++l)
          r.sprime(static_cast<Eigen::Index>(i * nb + j), static_cast<Eigen::Index>(k * nb + l)) =
              a.sprime(i, k) * b.sprime(j, l);
    }
  return r;
}

PremodularData relabel(const PremodularData& p, const std::vector<Label>& perm) {
  const std::size_t n = p.size();
  if (perm.size() != n) throw StructuralError("relabeling must cover every label");
  std::vector<Label> inv(n, n);
  for (Label i = 0; i < n; ++i) {
    if (perm[i] >= n || inv[perm[i]] != n) throw StructuralError("relabeling is not a bijection");
    inv[perm[i]] = i;
  }
  std::vector<std::string> names(n);
  std::vector<Label> dual(n);
  for (Label i = 0; i < n; ++i) {
    names[perm[i]] = p.fusion.name(i);
    dual[perm[i]] = perm[p.fusion.dual(i)];
  }
  std::vector<FusionEntry> entries;
  for (const auto& e : p.fusion.entries())
    entries.push_back({perm[e.a], perm[e.b], perm[e.c], e.multiplicity});
  PremodularData r;
  r.fusion = FusionData(std::move(names), perm[p.fusion.unit()], std::move(dual), entries);
  r.dims.resize(n);
  r.theta.resize(n);
  r.sprime.resize(p.sprime.rows(), p.sprime.cols());
  for (Label i = 0; i < n; ++i) {
    r.dims[perm[i]] = p.dims[i];
    r.theta[perm[i]] = p.theta[i];
    for (Label j = 0; j < n; ++j) r.sprime(perm[i], perm[j]) = p.sprime(i, j);
  }
  return r;
}

namespace {

bool extend(const PremodularData& a, const PremodularData& b, double tol,
            const std::vector<Label>& order, std::size_t depth, std::vector<Label>& perm,
            std::vector<bool>& used) {
  const std::size_t n = a.size();
  if (depth == n) {
    for (Label i = 0; i < n; ++i) {
      if (perm[a.fusion.dual(i)] != b.fusion.dual(perm[i])) return false;
      for (Label j = 0; j < n; ++j)
        for (Label k = 0; k < n; ++k)
          if (a.fusion.N(i, j, k) != b.fusion.N(perm[i], perm[j], perm[k])) return false;
    }
    return true;
  }
  const Label i = order[depth];
  for (Label j = 0; j < n; ++j) {
    if (used[j]) continue;
    if (std::abs(a.dims[i] - b.dims[j]) > tol || !a.theta[i].equals(b.theta[j], tol)) continue;
    if ((i == a.fusion.unit()) != (j == b.fusion.unit())) continue;
    if (std::abs(a.sprime(i, i) - b.sprime(j, j)) > tol) continue;
    bool ok = true;
    for (std::size_t d = 0; d < depth && ok; ++d) {
      const Label k = order[d];
      ok = std::abs(a.sprime(i, k) - b.sprime(j, perm[k])) <= tol;
    }
    if (!ok) continue;
    perm[i] = j;
    used[j] = true;
    if (extend(a, b, tol, order, depth + 1, perm, used)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<Label>> equivalence(const PremodularData& a, const PremodularData& b,
                                              double tol) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<Label> order(n);
  std::iota(order.begin(), order.end(), Label{0});
  std::stable_partition(order.begin(), order.end(), [&](Label x) { return x == a.fusion.unit(); });
  std::vector<Label> perm(n, 0);
  std::vector<bool> used(n, false);
  if (extend(a, b, tol, order, 0, perm, used)) return perm;
  return std::nullopt;
}

}  // namespace premod

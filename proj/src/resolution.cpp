#include "resolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "premod/error.hpp"
#include "premod/parallel.hpp"

namespace premod::detail {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Tolerance for reading integers (fusion multiplicities, permutation entries)
/// off a numerically solved S.
constexpr double kIntegrality = 1e-6;

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// S'(new) = known + sum_t coef_t * x[u_t] at (i_t, j_t) and (j_t, i_t).
struct Ansatz {
  std::size_t n = 0;
  ComplexMatrix known;
  struct Term {
    std::size_t i, j, u;
    Complex coef;
  };
  std::vector<Term> terms;
  std::size_t unknowns = 0;

  std::vector<double> dims;
  std::vector<Complex> theta;
  Complex root;  // cube root of the Gauss phase, for T
  double D = 1.0;
  Eigen::Index unit = 0;

  ComplexMatrix sprime(const std::vector<Complex>& x) const {
    ComplexMatrix s = known;
    for (const auto& t : terms) {
      s(t.i, t.j) += t.coef * x[t.u];
      if (t.i != t.j) s(t.j, t.i) += t.coef * x[t.u];
    }
    return s;
  }
};

std::vector<Complex> unpack(const Eigen::VectorXd& z) {
  std::vector<Complex> x(static_cast<std::size_t>(z.size() / 2));
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = {z(2 * k), z(2 * k + 1)};
  return x;
}

void append(Eigen::VectorXd& out, Eigen::Index& at, const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(at++) = m(i, j).real();
      out(at++) = m(i, j).imag();
    }
}

/// Unitarity, the modular relations and balancing (with the fusion rules
/// Verlinde would assign), stacked as a real vector.
Eigen::VectorXd residual(const Ansatz& a, const Eigen::VectorXd& z) {
  const auto n = static_cast<Eigen::Index>(a.n);
  const ComplexMatrix sp = a.sprime(unpack(z));
  const ComplexMatrix S = sp / a.D;
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  ComplexMatrix ST = S;
  for (Eigen::Index j = 0; j < n; ++j) ST.col(j) *= a.root * a.theta[j];
  const ComplexMatrix S2 = S * S;

  // balance(a,b) = sum_x conj S(a,x) S(b,x) u_x / S(0,x) / (theta_a theta_b),
  // u_x = sum_c conj S(c,x) theta_c d_c
  Eigen::VectorXcd v(n);
  for (Eigen::Index c = 0; c < n; ++c) v(c) = a.theta[c] * a.dims[c];
  const Eigen::VectorXcd u = S.conjugate().transpose() * v;
  ComplexMatrix left = S.conjugate();
  for (Eigen::Index x = 0; x < n; ++x) {
    const Complex s0 = S(a.unit, x);
    left.col(x) *= std::abs(s0) > 1e-300 ? u(x) / s0 : Complex(0.0);
  }
  ComplexMatrix balance = left * S.transpose();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) balance(i, j) /= a.theta[i] * a.theta[j];

  Eigen::VectorXd out(8 * n * n);
  Eigen::Index at = 0;
  append(out, at, S * S.adjoint() - I);
  append(out, at, ST * ST * ST - S2);
  append(out, at, S2 * S2 - I);
  append(out, at, (sp - balance) / a.D);
  return out;
}

struct Solve {
  Eigen::VectorXd z;
  double residual = std::numeric_limits<double>::infinity();
};

/// Levenberg-Marquardt with a central-difference Jacobian.
Solve levenberg_marquardt(const Ansatz& a, Eigen::VectorXd z) {
  Eigen::VectorXd f = residual(a, z);
  double cost = f.squaredNorm();
  double lambda = 1e-3;
  const Eigen::Index m = z.size();
  for (int it = 0; it < 80 && f.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
    Eigen::MatrixXd J(f.size(), m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(z(k)));
      Eigen::VectorXd zp = z, zm = z;
      zp(k) += h;
      zm(k) -= h;
      J.col(k) = (residual(a, zp) - residual(a, zm)) / (2 * h);
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * f;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd M = A;
      for (Eigen::Index k = 0; k < m; ++k) M(k, k) += lambda * (A(k, k) + 1e-12);
      const Eigen::VectorXd step = M.ldlt().solve(-g);
      const Eigen::VectorXd zn = z + step;
      const Eigen::VectorXd fn = residual(a, zn);
      const double cn = fn.squaredNorm();
      if (cn < cost) {
        const bool tiny = step.norm() <= 1e-15 * (1.0 + z.norm());
        z = zn;
        f = fn;
        cost = cn;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = !tiny;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  return {z, f.lpNorm<Eigen::Infinity>()};
}

/// Every assignment of sheets within the fixed orbits, as label permutations.
std::vector<std::vector<std::size_t>> sheet_permutations(
    const std::vector<std::vector<std::size_t>>& blocks, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> current = blocks;
  for (auto& b : current) std::sort(b.begin(), b.end());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == current.size()) {
      out.push_back(perm);
      return;
    }
    std::vector<std::size_t> image = current[k];
    do {
      for (std::size_t i = 0; i < image.size(); ++i) perm[blocks[k][i]] = image[i];
      self(self, k + 1);
    } while (std::next_permutation(image.begin(), image.end()));
    for (std::size_t i : blocks[k]) perm[i] = i;
  };
  rec(rec, 0);
  return out;
}

ComplexMatrix permute(const ComplexMatrix& m, const std::vector<std::size_t>& perm) {
  ComplexMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(perm[i], perm[j]) = m(i, j);
  return r;
}

std::vector<long long> key_of(const ComplexMatrix& m) {
  std::vector<long long> k;
  k.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      k.push_back(std::llround(m(i, j).real() * 1e7));
      k.push_back(std::llround(m(i, j).imag() * 1e7));
    }
  return k;
}

}  // namespace

std::vector<std::vector<Complex>> subgroup_characters(const GroupTable& g,
                                                      const std::vector<std::size_t>& members) {
  const std::size_t h = members.size();
  std::vector<std::size_t> local(g.order(), h);
  for (std::size_t i = 0; i < h; ++i) local[members[i]] = i;
  std::size_t exponent = 1;
  for (std::size_t x : members) exponent = std::lcm(exponent, g.element_order(x));

  // Generators chosen greedily; a character is fixed by its values on them.
  std::vector<std::size_t> gens;
  std::vector<bool> spanned(h, false);
  spanned[local[g.identity]] = true;
  for (std::size_t x : members) {
    if (spanned[local[x]]) continue;
    gens.push_back(x);
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t y : members)
        if (spanned[local[y]])
          for (std::size_t s : gens) {
            const std::size_t z = g.mul(y, s);
            if (local[z] == h)
              throw StructuralError("stabilizer is not closed under the group law");
            if (!spanned[local[z]]) spanned[local[z]] = grew = true;
          }
    }
  }

  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> values(gens.size(), 0);
  auto assign = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      std::vector<std::size_t> chi(h, exponent);
      chi[local[g.identity]] = 0;
      std::vector<std::size_t> queue{g.identity};
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (std::size_t s = 0; s < gens.size(); ++s) {
          const std::size_t z = g.mul(queue[q], gens[s]);
          const std::size_t val = (chi[local[queue[q]]] + values[s]) % exponent;
          if (chi[local[z]] == exponent) {
            chi[local[z]] = val;
            queue.push_back(z);
          } else if (chi[local[z]] != val) {
            return;
          }
        }
      found.push_back(chi);
      return;
    }
    for (std::size_t v = 0; v < exponent; ++v) {
      if ((v * g.element_order(gens[k])) % exponent) continue;
      values[k] = v;
      self(self, k + 1);
    }
  };
  assign(assign, 0);
  std::sort(found.begin(), found.end());
  if (found.size() != h) throw StructuralError("stabilizer character count differs from its order");

  std::vector<std::vector<Complex>> out;
  for (const auto& chi : found) {
    std::vector<Complex> row(h);
    for (std::size_t i = 0; i < h; ++i)
      row[i] = std::polar(1.0, kTwoPi * static_cast<double>(chi[i]) / static_cast<double>(exponent));
    out.push_back(row);
  }
  return out;
}

ResolutionOutcome resolve_condensation(const PremodularData& p, const OrbitDecomposition& od,
                                       const ResolutionOptions& opts) {
  ResolutionOutcome out;
  const GroupTable& G = od.group;
  const std::size_t norbits = od.orbits.size();

  // New labels, orbit by orbit, one per stabilizer character.
  std::vector<std::vector<std::vector<Complex>>> chars(norbits);
  std::vector<std::vector<std::size_t>> label_of(norbits);
  for (std::size_t o = 0; o < norbits; ++o) {
    chars[o] = subgroup_characters(G, od.orbits[o].stabilizer);
    for (std::size_t k = 0; k < chars[o].size(); ++k) {
      label_of[o].push_back(out.labels.size());
      out.labels.push_back({o, k + 1});
    }
  }
  const std::size_t n = out.labels.size();

  Ansatz a;
  a.n = n;
  a.known = ComplexMatrix::Zero(n, n);
  double dim_new = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Orbit& oi = od.orbits[out.labels[i].orbit];
    const double hi = static_cast<double>(oi.stabilizer.size());
    a.dims.push_back(p.dims[oi.representative] / hi);
    a.theta.push_back(p.twist(oi.representative));
    dim_new += a.dims.back() * a.dims.back();
    for (std::size_t j = 0; j < n; ++j) {
      const Orbit& oj = od.orbits[out.labels[j].orbit];
      const double hj = static_cast<double>(oj.stabilizer.size());
      a.known(i, j) = p.sprime(oi.representative, oj.representative) / (hi * hj);
    }
  }
  const double expected = p.global_dim() / static_cast<double>(G.order());
  if (std::abs(dim_new - expected) > 1e-8 * std::max(1.0, expected)) {
    std::ostringstream os;
    os << "condensed dimension " << dim_new << " differs from dim/|G| = " << expected;
    throw NumericalInconsistency(os.str());
  }
  a.D = std::sqrt(dim_new);
  Complex gauss = 0.0;
  for (std::size_t i = 0; i < n; ++i) gauss += a.dims[i] * a.dims[i] / a.theta[i];
  a.root = std::polar(1.0, std::arg(gauss) / 3.0);

  // One complex unknown per unordered pair of fixed orbits and common
  // non-identity stabilizer element.
  for (std::size_t o1 = 0; o1 < norbits; ++o1) {
    if (!od.orbits[o1].fixed()) continue;
    for (std::size_t o2 = o1; o2 < norbits; ++o2) {
      if (!od.orbits[o2].fixed()) continue;
      const auto& s1 = od.orbits[o1].stabilizer;
      const auto& s2 = od.orbits[o2].stabilizer;
      for (std::size_t p1 = 0; p1 < s1.size(); ++p1) {
        const std::size_t h = s1[p1];
        if (h == G.identity) continue;
        const auto it = std::find(s2.begin(), s2.end(), h);
        if (it == s2.end()) continue;
        const auto p2 = static_cast<std::size_t>(it - s2.begin());
        const std::size_t u = a.unknowns++;
        const double scale = static_cast<double>(s1.size() * s2.size());
        for (std::size_t k1 = 0; k1 < chars[o1].size(); ++k1)
          for (std::size_t k2 = 0; k2 < chars[o2].size(); ++k2) {
            const std::size_t i = label_of[o1][k1], j = label_of[o2][k2];
            if (o1 == o2 && j < i) continue;
            a.terms.push_back({i, j, u, chars[o1][k1][p1] * chars[o2][k2][p2] / scale});
          }
      }
    }
  }
  out.unknowns = a.unknowns;
  const std::size_t unit = label_of[od.orbit_of[p.fusion.unit()]][0];
  a.unit = static_cast<Eigen::Index>(unit);

  // Seeds: magnitude D_src * r, phase a 24th root of unity, per unknown.
  const double D_src = std::sqrt(p.global_dim());
  std::vector<Complex> lattice;
  for (double r : {1.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0), 0.5})
    for (int k = 0; k < 24; ++k) lattice.push_back(std::polar(D_src * r, kTwoPi * k / 24.0));
  std::vector<Eigen::VectorXd> seeds;
  const double combos = std::pow(static_cast<double>(lattice.size()), static_cast<double>(a.unknowns));
  auto to_vec = [&](const std::vector<std::size_t>& pick) {
    Eigen::VectorXd z(2 * a.unknowns);
    for (std::size_t u = 0; u < a.unknowns; ++u) {
      z(2 * u) = lattice[pick[u]].real();
      z(2 * u + 1) = lattice[pick[u]].imag();
    }
    return z;
  };
  if (a.unknowns == 0) {
    seeds.emplace_back(0);
  } else if (combos <= static_cast<double>(opts.max_seeds)) {
    std::vector<std::size_t> pick(a.unknowns, 0);
    for (std::size_t c = 0; c < static_cast<std::size_t>(combos); ++c) {
      std::size_t r = c;
      for (std::size_t u = 0; u < a.unknowns; ++u) {
        pick[u] = r % lattice.size();
        r /= lattice.size();
      }
      seeds.push_back(to_vec(pick));
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> dist(0, lattice.size() - 1);
    std::vector<std::size_t> pick(a.unknowns);
    for (std::size_t c = 0; c < opts.max_seeds; ++c) {
      for (auto& x : pick) x = dist(rng);
      seeds.push_back(to_vec(pick));
    }
  }

  std::vector<Solve> solved(seeds.size());
  if (a.unknowns == 0) {
    solved[0] = {seeds[0], residual(a, seeds[0]).lpNorm<Eigen::Infinity>()};
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t s; (s = next++) < seeds.size();) solved[s] = levenberg_marquardt(a, seeds[s]);
    };
    const unsigned t = std::max(1u, std::min<unsigned>(opts.threads ? opts.threads : worker_count(),
                                                       static_cast<unsigned>(seeds.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }

  out.best_residual = std::numeric_limits<double>::infinity();
  std::vector<Eigen::VectorXd> roots;
  for (const auto& s : solved) {
    out.best_residual = std::min(out.best_residual, s.residual);
    if (s.residual > 1e-8) continue;
    const bool seen = std::any_of(roots.begin(), roots.end(), [&](const Eigen::VectorXd& r) {
      return (r - s.z).lpNorm<Eigen::Infinity>() <= 1e-6;
    });
    if (!seen) roots.push_back(s.z);
  }

  // Sheet blocks for canonical relabeling.
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t o = 0; o < norbits; ++o)
    if (od.orbits[o].fixed()) blocks.push_back(label_of[o]);
  const auto perms = sheet_permutations(blocks, n);

  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Orbit& o = od.orbits[out.labels[i].orbit];
    names[i] = p.fusion.name(o.representative);
    if (o.fixed()) names[i] += "_" + std::to_string(out.labels[i].sheet);
  }
  for (std::size_t i = 0; i < n; ++i)
    while (std::count(names.begin(), names.end(), names[i]) > 1) names[i] += "'";

  std::vector<ComplexMatrix> accepted;
  for (const auto& z : roots) {
    // Canonical sheet order: lexicographically smallest rounded S'.
    const ComplexMatrix raw = a.sprime(unpack(z));
    ComplexMatrix sp = raw;
    std::vector<long long> best_key = key_of(raw);
    for (const auto& perm : perms) {
      const ComplexMatrix c = permute(raw, perm);
      auto k = key_of(c);
      if (k < best_key) {
        best_key = std::move(k);
        sp = c;
      }
    }
    const bool duplicate = std::any_of(accepted.begin(), accepted.end(), [&](const ComplexMatrix& m) {
      return std::any_of(perms.begin(), perms.end(), [&](const auto& perm) {
        return max_abs(permute(sp, perm) - m) <= kIntegrality;
      });
    });
    if (duplicate) continue;

    const ComplexMatrix S = sp / a.D;
    const auto Nv = verlinde_fusion(S, unit);
    std::vector<FusionEntry> entries;
    bool integral = true;
    for (std::size_t x = 0; x < n && integral; ++x)
      for (std::size_t y = 0; y < n && integral; ++y)
        for (std::size_t w = 0; w < n; ++w) {
          const Complex v = Nv[(x * n + y) * n + w];
          const double r = std::round(v.real());
          if (std::abs(v - Complex(r, 0.0)) > kIntegrality || r < 0) {
            integral = false;
            break;
          }
          if (r > 0) entries.push_back({x, y, w, static_cast<int>(r)});
        }
    if (!integral) continue;

    const ComplexMatrix C = S * S;
    std::vector<Label> dual(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (std::abs(C(x, y) - 1.0) <= kIntegrality) dual[x] = y;
    if (std::find(dual.begin(), dual.end(), n) != dual.end()) continue;

    std::vector<Twist> theta;
    for (std::size_t i = 0; i < n; ++i) theta.push_back(p.theta[od.orbits[out.labels[i].orbit].representative]);
    PremodularData cand;
    try {
      FusionData f(names, unit, dual, entries);
      if (!validate_fusion(f).all_passed()) continue;
      cand = make_premodular(std::move(f), theta, a.dims, sp);
    } catch (const Error&) {
      continue;
    }
    if (!verify_premodular(cand, opts.tolerance).all_passed()) continue;
    const ModularityReport mr = is_modular(cand, opts.tolerance);
    if (!mr.modular || !mr.relations_hold) continue;

    // Free orbits must fuse as sum_g N_{ab}^{g c}.
    bool descends = true;
    for (std::size_t o1 = 0; o1 < norbits && descends; ++o1)
      for (std::size_t o2 = 0; o2 < norbits && descends; ++o2)
        for (std::size_t o3 = 0; o3 < norbits && descends; ++o3) {
          if (od.orbits[o1].fixed() || od.orbits[o2].fixed() || od.orbits[o3].fixed()) continue;
          const Label ra = od.orbits[o1].representative, rb = od.orbits[o2].representative,
                      rc = od.orbits[o3].representative;
          int sum = 0;
          for (std::size_t g = 0; g < G.order(); ++g) sum += p.fusion.N(ra, rb, od.act(g, rc));
          descends = cand.fusion.N(label_of[o1][0], label_of[o2][0], label_of[o3][0]) == sum;
        }
    if (!descends) continue;

    accepted.push_back(sp);
    out.solutions.push_back(std::move(cand));
  }

  std::vector<std::size_t> order(out.solutions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return key_of(accepted[x]) < key_of(accepted[y]);
  });
  std::vector<PremodularData> sorted;
  for (std::size_t i : order) sorted.push_back(std::move(out.solutions[i]));
  out.solutions = std::move(sorted);
  return out;
}

}  // namespace premod::detail

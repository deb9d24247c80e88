#pragma once

// Reference computations written directly from the definitions, sharing no
// code with the library beyond its data types. Slow but obviously correct.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "premod/fusion.hpp"
#include "premod/surgery.hpp"

namespace oracle {

using Complex = std::complex<double>;
inline const double kPi = std::acos(-1.0);

/// SU(2)_k truncated Clebsch-Gordan rule.
inline int su2_fusion(int k, int a, int b, int c) {
  if ((a + b + c) % 2) return 0;
  return std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) ? 1 : 0;
}

inline Eigen::MatrixXcd su2_S(int k) {
  const int n = k + 1;
  Eigen::MatrixXcd S(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      S(a, b) = std::sqrt(2.0 / (k + 2)) * std::sin((a + 1) * (b + 1) * kPi / (k + 2));
  return S;
}

inline double su2_dim(int k, int a) { return std::sin((a + 1) * kPi / (k + 2)) / std::sin(kPi / (k + 2)); }

inline Complex su2_theta(int k, int a) {
  return std::polar(1.0, kPi * a * (a + 2) / (2.0 * (k + 2)));
}

/// First quadruple where (ab)c and a(bc) disagree in channel d, or empty.
inline std::vector<std::size_t> associativity_failure(const premod::FusionData& f) {
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          long l = 0, r = 0;
          for (std::size_t x = 0; x < n; ++x) {
            l += long(f.N(a, b, x)) * f.N(x, c, d);
            r += long(f.N(b, c, x)) * f.N(a, x, d);
          }
          if (l != r) return {a, b, c, d};
        }
  return {};
}

inline bool quadruple_fails(const premod::FusionData& f, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d) {
  long l = 0, r = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    l += long(f.N(a, b, x)) * f.N(x, c, d);
    r += long(f.N(b, c, x)) * f.N(a, x, d);
  }
  return l != r;
}

/// Signature from floating eigenvalues; fine away from singular matrices.
inline int eigen_signature(const premod::LinkingMatrix& m) {
  if (m.size() == 0) return 0;
  const Eigen::MatrixXd dm = m.cast<double>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm);
  int s = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e > 1e-9) ++s;
    if (e < -1e-9) --s;
  }
  return s;
}

/// sum over every coloring of prod_v theta^m d^{2-deg} prod_edges S', by odometer.
inline Complex naive_bracket(const premod::PremodularData& p, const premod::PlumbingGraph& g) {
  const std::size_t n = g.size(), L = p.size();
  std::vector<std::size_t> c(n, 0);
  Complex total = 0.0;
  while (true) {
    Complex term = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const Complex theta = p.theta[c[v]].value();
      term *= std::pow(theta, g.framing(v)) * std::pow(p.dims[c[v]], 2.0 - double(g.degree(v)));
    }
    for (const auto& [u, v] : g.edges()) term *= p.sprime(c[u], c[v]);
    total += term;
    std::size_t v = 0;
    while (v < n && ++c[v] == L) c[v++] = 0;
    if (v == n) break;
  }
  return total;
}

/// Gauss-sum normalized RT invariant from the naive bracket.
inline Complex naive_rt(const premod::PremodularData& p, const premod::PlumbingGraph& g) {
  Complex delta = 0.0;
  double dim = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    delta += p.dims[a] * p.dims[a] / p.theta[a].value();
    dim += p.dims[a] * p.dims[a];
  }
  const double D = std::sqrt(dim);
  const int sigma = eigen_signature(premod::linking_matrix(g));
  const int n = int(g.size());
  return std::pow(delta, sigma) * std::pow(D, -sigma - n - 1) * naive_bracket(p, g);
}

}  // namespace oracle

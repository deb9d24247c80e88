#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "premod/builtin.hpp"
#include "premod/condensation.hpp"
#include "premod/error.hpp"
#include "premod/surgery.hpp"

using namespace premod;

namespace {

PlumbingGraph empty_graph() { return PlumbingGraph({}, {}); }

double inv_D(const PremodularData& p) { return 1.0 / std::sqrt(p.global_dim()); }

}  // namespace

TEST_CASE("plumbing graphs must be forests with unique ids") {
  CHECK_THROWS_AS(PlumbingGraph({{"a", 0}, {"a", 1}}, {}), StructuralError);
  CHECK_THROWS_AS(PlumbingGraph({{"a", 0}}, {{"a", "b"}}), StructuralError);
  CHECK_THROWS_AS(PlumbingGraph({{"a", 0}}, {{"a", "a"}}), StructuralError);
  CHECK_THROWS_AS(PlumbingGraph({{"a", 0}, {"b", 0}}, {{"a", "b"}, {"b", "a"}}), StructuralError);
  CHECK_THROWS_AS(PlumbingGraph({{"a", 0}, {"b", 0}, {"c", 0}}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                  StructuralError);
  const PlumbingGraph g({{"a", 1}, {"b", 2}, {"c", 3}}, {{"a", "b"}});
  CHECK(g.size() == 3);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("linking matrices") {
  CHECK(linking_matrix(PlumbingGraph::unknot(5))(0, 0) == 5);
  const auto h = linking_matrix(PlumbingGraph::hopf_link(2, -3));
  CHECK(h(0, 0) == 2);
  CHECK(h(1, 1) == -3);
  CHECK(h(0, 1) == 1);
  CHECK(h(1, 0) == 1);
  const auto c = linking_matrix(PlumbingGraph::chain({-2, -2, -2}));
  LinkingMatrix expect(3, 3);
  expect << -2, 1, 0, 1, -2, 1, 0, 1, -2;
  CHECK(c == expect);
}

TEST_CASE("signatures") {
  CHECK(signature(linking_matrix(PlumbingGraph::unknot(4))) == 1);
  CHECK(signature(linking_matrix(PlumbingGraph::unknot(-1))) == -1);
  CHECK(signature(linking_matrix(PlumbingGraph::unknot(0))) == 0);
  CHECK(signature(linking_matrix(PlumbingGraph::hopf_link(0, 0))) == 0);
  CHECK(signature(linking_matrix(PlumbingGraph::e8())) == -8);
  CHECK(signature(linking_matrix(empty_graph())) == 0);
}

TEST_CASE("exact signature agrees with floating eigenvalues") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 7;
    LinkingMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = entry(rng);
    CHECK(signature(m) == oracle::eigen_signature(m));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937_64 r(trial);
    const auto g = random_forest(r, 7);
    CHECK(signature(linking_matrix(g)) == oracle::eigen_signature(linking_matrix(g)));
  }
}

TEST_CASE("colored invariants") {
  const auto p = su2(3);
  for (Label a = 0; a < p.size(); ++a) {
    CHECK(std::abs(colored_invariant(p, PlumbingGraph::unknot(0), {a}).value - p.dims[a]) < 1e-12);
    CHECK(std::abs(colored_invariant(p, PlumbingGraph::unknot(3), {a}).value -
                   std::pow(p.twist(a), 3) * p.dims[a]) < 1e-12);
    for (Label b = 0; b < p.size(); ++b)
      CHECK(std::abs(colored_invariant(p, PlumbingGraph::hopf_link(), {a, b}).value - p.sprime(a, b)) < 1e-12);
  }
  CHECK_THROWS_AS(colored_invariant(p, PlumbingGraph::unknot(0), {}), StructuralError);
}

TEST_CASE("brackets of small graphs") {
  const auto p = ising();
  CHECK(std::abs(bracket(p, empty_graph()).value - Complex(1.0)) < 1e-12);
  CHECK(std::abs(bracket(p, PlumbingGraph::unknot(0)).value - p.global_dim()) < 1e-12);
  CHECK(std::abs(bracket(p, PlumbingGraph::unknot(1)).value - gauss_sums(p).delta_minus) < 1e-12);
}

TEST_CASE("contraction, enumeration and the naive oracle agree") {
  std::mt19937_64 rng(5);
  EvalOptions en;
  en.strategy = SumStrategy::enumeration;
  for (const auto& p : {su2(3), fibonacci(), ising(), pointed_cyclic(5, 2), su2(5)}) {
    for (int i = 0; i < 25; ++i) {
      const auto g = random_forest(rng, 5);
      const Complex a = bracket(p, g).value;
      const Complex b = bracket(p, g, en).value;
      const Complex c = oracle::naive_bracket(p, g);
      const double scale = std::max(1.0, std::abs(c));
      CHECK(std::abs(a - c) <= 1e-10 * scale);
      CHECK(std::abs(b - c) <= 1e-10 * scale);
      CHECK(std::abs(rt_invariant(p, g).value - oracle::naive_rt(p, g)) < 1e-10);
    }
  }
}

TEST_CASE("term cap refuses oversized sums") {
  const auto p = su2(8);
  const auto g = PlumbingGraph::chain(std::vector<int>(9, -2));
  EvalOptions en;
  en.strategy = SumStrategy::enumeration;
  CHECK_THROWS_AS(bracket(p, g, en), TermCapExceeded);  // 9^9 > 1e8
  CHECK_NOTHROW(bracket(p, g));
  EvalOptions tiny;
  tiny.term_cap = 10;
  try {
    bracket(p, g, tiny);
    FAIL("expected refusal");
  } catch (const TermCapExceeded& e) {
    CHECK(e.terms() > 10);
    CHECK(e.cap() == 10);
  }
}

TEST_CASE("RT values of S^3 and S^2 x S^1") {
  for (const auto& [name, p] : builtin_catalog()) {
    if (!is_modular(p).modular) continue;
    INFO(name);
    CHECK(std::abs(rt_invariant(p, empty_graph()).value - inv_D(p)) < 1e-9);
    CHECK(std::abs(rt_invariant(p, PlumbingGraph::unknot(1)).value - inv_D(p)) < 1e-9);
    CHECK(std::abs(rt_invariant(p, PlumbingGraph::unknot(-1)).value - inv_D(p)) < 1e-9);
    CHECK(std::abs(rt_invariant(p, PlumbingGraph::unknot(0)).value - Complex(1.0)) < 1e-9);
  }
  const auto sub = restrict_data(su2(4), full_subcategory(su2(4).fusion, {0, 2, 4}));
  CHECK_THROWS_AS(rt_invariant(sub, empty_graph()), PreconditionError);
}

TEST_CASE("Kirby moves") {
  const auto e = kirby_moves(empty_graph());
  REQUIRE(e.size() == 2);
  std::vector<int> fr{e[0].framing(0), e[1].framing(0)};
  std::sort(fr.begin(), fr.end());
  CHECK(fr == std::vector<int>{-1, 1});

  // Adding a +1 leaf to a 0-framed vertex shifts its framing to +1: the
  // linking form [[1,1],[1,1]] presents S^2 x S^1 again.
  const auto moves = kirby_moves(PlumbingGraph::unknot(0));
  bool found = false;
  for (const auto& g : moves)
    if (g.size() == 2 && g.edges().size() == 1) {
      const std::size_t leaf = g.vertices()[0].id == "v1" ? 1 : 0;
      if (g.framing(leaf) == 1 && g.framing(1 - leaf) == 1) found = true;
    }
  CHECK(found);
  const auto p = su2(3);
  const PlumbingGraph opposite({{"v1", -1}, {"k", 1}}, {{"v1", "k"}});
  CHECK(std::abs(rt_invariant(p, opposite).value - Complex(1.0)) > 1e-3);
  for (const auto& g : moves) CHECK(std::abs(rt_invariant(p, g).value - Complex(1.0)) < 1e-9);
}

TEST_CASE("Kirby invariance on random forests") {
  std::mt19937_64 rng(99);
  for (const auto& p : {su2(2), fibonacci(), pointed_cyclic(4, 1), parse_builtin("fibonacci*ising")}) {
    for (int i = 0; i < 30; ++i) {
      const auto g = random_forest(rng, 5);
      const Complex base = rt_invariant(p, g).value;
      for (const auto& h : kirby_moves(g)) CHECK(std::abs(rt_invariant(p, h).value - base) < 1e-8);
    }
  }
}

TEST_CASE("connected sums and relabeling") {
  const auto p = su2(5);
  const double D = std::sqrt(p.global_dim());
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const PlumbingGraph sum({{"x", a}, {"y", b}}, {});
      const Complex expect = D * rt_invariant(p, PlumbingGraph::unknot(a)).value *
                             rt_invariant(p, PlumbingGraph::unknot(b)).value;
      CHECK(std::abs(rt_invariant(p, sum).value - expect) < 1e-9);
    }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_forest(rng, 6);
    std::vector<PlumbingVertex> vs(g.vertices().rbegin(), g.vertices().rend());
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& [u, v] : g.edges()) es.emplace_back(g.vertices()[v].id, g.vertices()[u].id);
    const PlumbingGraph h(vs, es);
    CHECK(std::abs(bracket(p, g).value - bracket(p, h).value) < 1e-9 * std::max(1.0, std::abs(bracket(p, g).value)));
  }
}

TEST_CASE("bracket of a category versus its condensation") {
  const auto s4 = su2(4);
  const auto ints = restrict_data(s4, full_subcategory(s4.fusion, {0, 2, 4}));
  const auto c = condense(ints);
  CHECK(lem3_check(ints, empty_graph(), c).passed);
  const auto hopf = lem3_check(ints, PlumbingGraph::hopf_link(), c);
  CHECK(hopf.passed);
  CHECK(std::abs(hopf.lhs - 4.0 * bracket(c.data(), PlumbingGraph::hopf_link()).value) < 1e-9);
  const auto plus = lem3_check(ints, PlumbingGraph::unknot(1), c);
  CHECK(plus.passed);
  CHECK(std::abs(plus.lhs - 2.0 * bracket(c.data(), PlumbingGraph::unknot(1)).value) < 1e-9);

  CondensedData unresolved = c;
  unresolved.status = ResolutionStatus::unresolved;
  unresolved.solutions.clear();
  CHECK(lem3_check(ints, PlumbingGraph::hopf_link(), unresolved).skipped);
}

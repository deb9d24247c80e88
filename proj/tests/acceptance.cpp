// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "premod/builtin.hpp"
#include "premod/double_rt.hpp"
#include "premod/error.hpp"

using namespace premod;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  double worst = 0.0;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
  void see(double residual, double tol, const std::string& where) {
    worst = std::max(worst, residual);
    if (!(residual < tol)) fail(where + " residual " + std::to_string(residual));
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void run(const char* id, const char* title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (time_limit > 0 && secs > time_limit) o.fail("took " + std::to_string(secs) + " s");
  std::printf("[%s] %s %s (worst residual %.2e, %.2f s)%s%s\n", o.passed ? "PASS" : "FAIL", id, title,
              o.worst, secs, o.passed ? "" : ": ", o.passed ? "" : o.detail.c_str());
  std::fflush(stdout);
  if (!o.passed) ++failures;
}

PlumbingGraph empty_graph() { return PlumbingGraph({}, {}); }

std::vector<std::pair<std::string, PremodularData>> modular_catalog() {
  std::vector<std::pair<std::string, PremodularData>> out;
  for (auto& [name, p] : builtin_catalog())
    if (is_modular(p).modular) out.emplace_back(name, p);
  return out;
}

}  // namespace

int main() {
  const auto catalog = builtin_catalog();
  const auto modular = modular_catalog();

  run("AC1", "axiom suite over every builtin", 5.0, [&](Outcome& o) {
    for (const auto& [name, p] : builtin_catalog()) {
      ValidationReport r = validate_fusion(p.fusion);
      r.append(verify_premodular(p, 1e-9));
      for (const auto& c : r.checks) {
        o.see(c.residual, 1e-9, name + " " + c.name);
        if (!c.passed) o.fail(name + " " + c.name + " failed at " + c.witness);
      }
      const auto m = is_modular(p, 1e-9);
      if (!m.modular) continue;
      o.see(m.s_squared, 1e-9, name + " S^2 = C");
      o.see(m.st_cubed, 1e-9, name + " (ST)^3 = C");
      o.see(m.tc_commute, 1e-9, name + " TC = CT");
    }
    if (catalog.size() < 20) o.fail("catalog unexpectedly small");
  });

  run("AC2", "centralizer dimension law over all subcategories", 0, [&](Outcome& o) {
    for (const auto& [name, p] : modular) {
      if (p.size() > 9) continue;
      for (const auto& s : enumerate_subcategories(p.fusion)) {
        const Subcategory c = centralizer(p, s, 1e-9);
        const double lhs = subcategory_dim(p, c), rhs = p.global_dim() / subcategory_dim(p, s);
        o.see(std::abs(lhs - rhs), 1e-8, name);
      }
    }
  });

  run("AC3", "SU(2)_4 worked example", 1.0, [&](Outcome& o) {
    const auto s4 = su2(4);
    const auto delta = full_subcategory(s4.fusion, {0, 2, 4});
    const auto m = check_minimal_extension(s4, delta);
    if (!m.minimal) o.fail("not minimal");
    o.see(std::abs(m.dim_hat - 12.0) + std::abs(m.dim_delta - 6.0) + std::abs(m.dim_degenerate - 2.0), 1e-9,
          "12 = 6 * 2");
    const auto ints = restrict_data(s4, delta);
    const auto center = muger_center(ints);
    if (center.degenerate.members != std::vector<Label>{0, 2}) o.fail("center is not {0,4}");
    if (!center.is_even || !center.is_pointed || !center.group || center.group->order() != 2)
      o.fail("center is not an even pointed Z_2");
    const auto c = condense(ints);
    if (c.status != ResolutionStatus::unique) o.fail("resolution " + to_string(c.status));
    const auto& d = c.data();
    if (d.size() != 3) o.fail("condensed rank " + std::to_string(d.size()));
    const Complex w = std::polar(1.0, 2 * oracle::kPi / 3);
    const Complex want[3] = {1.0, w, w};
    for (Label a = 0; a < d.size(); ++a) {
      o.see(std::abs(d.dims[a] - 1.0), 1e-9, "d");
      o.see(std::abs(d.twist(a) - want[a]), 1e-9, "theta");
    }
    o.see(std::abs(d.global_dim() - 3.0), 1e-9, "dim");
    if (!equivalence(d, pointed_cyclic(3, 2)).has_value()) o.fail("not equivalent to pointed Z_3");
  });

  run("AC4", "all-or-nothing identity for the 25 pairs of SU(2)_4", 0, [&](Outcome& o) {
    const auto s4 = su2(4);
    const auto delta = full_subcategory(s4.fusion, {0, 2, 4});
    int pairs = 0;
    for (Label eta = 0; eta < 5; ++eta)
      for (Label zeta = 0; zeta < 5; ++zeta) {
        const auto r = lemma_lem1_check(s4, delta, eta, zeta, 1e-9);
        o.see(r.residual, 1e-9, "pair");
        if (!r.passed) o.fail("pair (" + std::to_string(eta) + "," + std::to_string(zeta) + ")");
        ++pairs;
      }
    if (pairs != 25) o.fail("pair count");
  });

  run("AC5", "RT sanity: S^3 three ways and S^2 x S^1", 0, [&](Outcome& o) {
    for (const auto& [name, p] : modular) {
      const double invD = 1.0 / std::sqrt(p.global_dim());
      o.see(std::abs(rt_invariant(p, empty_graph()).value - invD), 1e-9, name + " empty");
      o.see(std::abs(rt_invariant(p, PlumbingGraph::unknot(1)).value - invD), 1e-9, name + " +1");
      o.see(std::abs(rt_invariant(p, PlumbingGraph::unknot(-1)).value - invD), 1e-9, name + " -1");
      o.see(std::abs(rt_invariant(p, PlumbingGraph::unknot(0)).value - 1.0), 1e-9, name + " 0");
    }
  });

  run("AC6", "Kirby invariance, 200 forests per modular builtin", 120.0, [&](Outcome& o) {
    std::size_t moves = 0;
    for (const auto& [name, p] : modular) {
      if (p.size() > 10) continue;
      std::mt19937_64 rng(std::hash<std::string>{}(name) ^ 0x5eed);
      for (int i = 0; i < 200; ++i) {
        const auto g = random_forest(rng, 6, -3, 3);
        const Complex base = rt_invariant(p, g).value;
        for (const auto& h : kirby_moves(g)) {
          o.see(std::abs(rt_invariant(p, h).value - base), 1e-8, name);
          ++moves;
        }
      }
    }
    if (moves == 0) o.fail("no moves tested");
  });

  run("AC7", "bracket against the condensed bracket", 0, [&](Outcome& o) {
    const auto s4 = su2(4);
    const auto ints = restrict_data(s4, full_subcategory(s4.fusion, {0, 2, 4}));
    const auto c = condense(ints);
    EvalOptions opts;
    opts.tolerance = 1e-8;
    for (const auto& g : {PlumbingGraph::hopf_link(), PlumbingGraph::unknot(1), PlumbingGraph::unknot(-1),
                          PlumbingGraph::chain({0, 0, 0}), PlumbingGraph::chain({-2, -2, -2}),
                          PlumbingGraph::chain({1, -1, 2})}) {
      const auto r = lem3_check(ints, g, c, opts);
      if (r.skipped) o.fail("skipped: " + r.note);
      o.see(r.residual, 1e-8, "graph of size " + std::to_string(g.size()));
    }
  });

  run("AC8", "factorization for the whole category", 0, [&](Outcome& o) {
    std::vector<PlumbingGraph> graphs;
    for (int p = 1; p <= 7; ++p) graphs.push_back(PlumbingGraph::unknot(p));
    graphs.push_back(PlumbingGraph::e8());
    graphs.push_back(PlumbingGraph::chain({-2, -2, -2}));
    std::size_t checked = 0;
    for (const auto& hat : {su2(3), ising(), fibonacci()})
      for (const auto& g : graphs) {
        EvalOptions opts;
        opts.tolerance = 1e-8;
        const auto r = factorization_check(hat, g, opts);
        o.see(r.residual, 1e-8, "graph of size " + std::to_string(g.size()));
        ++checked;
      }
    if (checked != 27) o.fail("graph count");
  });

  run("AC9", "double invariant against the condensed double", 300.0, [&](Outcome& o) {
    const auto s4 = su2(4);
    const auto delta = full_subcategory(s4.fusion, {0, 2, 4});
    const auto dbl = double_data(s4, delta);
    if (dbl.status != ResolutionStatus::unique) o.fail("double resolution " + to_string(dbl.status));
    EvalOptions opts;
    opts.tolerance = 1e-8;
    for (const auto& g : {empty_graph(), PlumbingGraph::unknot(1), PlumbingGraph::unknot(-1),
                          PlumbingGraph::hopf_link(), PlumbingGraph::chain({-2, -2, -2}),
                          PlumbingGraph::chain({1, 0, -1})}) {
      const auto r = double_pipeline_check(s4, delta, dbl, g, opts);
      if (r.skipped) o.fail("skipped");
      o.see(r.residual, 1e-8, "graph of size " + std::to_string(g.size()));
    }
    std::mt19937_64 rng(909);
    for (int i = 0; i < 50; ++i) {
      const auto g = random_forest(rng, 4, -3, 3);
      const Complex base = tau_double(s4, delta, g, opts).value;
      for (const auto& h : kirby_moves(g))
        o.see(std::abs(tau_double(s4, delta, h, opts).value - base), 1e-8, "Kirby neighbour");
    }
  });

  run("AC10", "Verlinde integrality for modular builtins", 0, [&](Outcome& o) {
    for (const auto& [name, p] : modular) {
      const auto c = verlinde_check(p, 1e-6);
      o.see(c.residual, 1e-6, name);
      if (!c.passed) o.fail(name);
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}

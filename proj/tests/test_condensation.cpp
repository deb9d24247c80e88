#include <doctest.h>

#include <cmath>

#include "premod/builtin.hpp"
#include "premod/condensation.hpp"
#include "premod/error.hpp"

using namespace premod;

namespace {

PremodularData integer_spins(int k) {
  const auto s = su2(k);
  std::vector<Label> ints;
  for (int a = 0; a <= k; a += 2) ints.push_back(a);
  return restrict_data(s, full_subcategory(s.fusion, ints));
}

const double kPi = std::acos(-1.0);

}  // namespace

TEST_CASE("orbits of integer spins of SU(2)_4") {
  // Labels 0, 2, 4 of SU(2)_4 are 0, 1, 2 after restriction.
  const auto od = orbit_decomposition(integer_spins(4));
  REQUIRE(od.orbits.size() == 2);
  CHECK(od.orbits[0].members == std::vector<Label>{0, 2});
  CHECK_FALSE(od.orbits[0].fixed());
  CHECK(od.orbits[1].members == std::vector<Label>{1});
  CHECK(od.orbits[1].stabilizer.size() == 2);
  for (const auto& o : od.orbits) CHECK(o.members.size() * o.stabilizer.size() == od.group.order());
}

TEST_CASE("orbits of integer spins of SU(2)_8") {
  const auto od = orbit_decomposition(integer_spins(8));
  REQUIRE(od.orbits.size() == 3);
  CHECK(od.orbits[0].members == std::vector<Label>{0, 4});  // {0, 8}
  CHECK(od.orbits[1].members == std::vector<Label>{1, 3});  // {2, 6}
  CHECK(od.orbits[2].members == std::vector<Label>{2});     // {4}
  CHECK(od.orbits[2].fixed());
}

TEST_CASE("modular input has singleton orbits and condenses to itself") {
  const auto s3 = su2(3);
  const auto od = orbit_decomposition(s3);
  CHECK(od.group.order() == 1);
  for (const auto& o : od.orbits) {
    CHECK(o.members.size() == 1);
    CHECK_FALSE(o.fixed());
  }
  const auto c = condense(s3);
  CHECK(c.status == ResolutionStatus::unique);
  CHECK(equivalence(c.data(), s3).has_value());
}

TEST_CASE("SU(2)_4 integer spins condense to pointed Z_3") {
  const auto c = condense(integer_spins(4));
  CHECK(c.status == ResolutionStatus::unique);
  CHECK(c.unknowns == 1);
  const auto& d = c.data();
  REQUIRE(d.size() == 3);
  CHECK(d.global_dim() == doctest::Approx(3.0));
  const Complex w = std::polar(1.0, 2 * kPi / 3);
  CHECK(std::abs(d.twist(0) - Complex(1.0)) < 1e-12);
  for (Label a = 0; a < 3; ++a) CHECK(d.dims[a] == doctest::Approx(1.0));
  CHECK(std::abs(d.twist(1) - w) < 1e-12);
  CHECK(std::abs(d.twist(2) - w) < 1e-12);
  CHECK(is_modular(d).relations_hold);
  CHECK(equivalence(d, pointed_cyclic(3, 2)).has_value());
  CHECK(c.new_labels.size() == 3);
  CHECK(c.new_labels[1].sheet == 1);
  CHECK(c.new_labels[2].sheet == 2);
}

TEST_CASE("Z_2 x semion with an even degenerate Z_2 condenses to the semion") {
  const auto p = product(pointed_cyclic(2, 0), pointed_cyclic(2, 1));
  const auto c = condense(p);
  CHECK(c.group_order() == 2);
  CHECK(c.status == ResolutionStatus::unique);
  CHECK(c.unknowns == 0);
  CHECK(equivalence(c.data(), builtin("semion")).has_value());
}

TEST_CASE("SU(2)_8 integer spins resolve uniquely to modular rank-4 data") {
  const auto c = condense(integer_spins(8));
  CHECK(c.status == ResolutionStatus::unique);
  const auto& d = c.data();
  CHECK(d.size() == 4);
  CHECK(d.global_dim() * 2 == doctest::Approx(integer_spins(8).global_dim()));
  CHECK(is_modular(d).relations_hold);
}

TEST_CASE("condensation divides the dimension and is idempotent") {
  std::size_t tried = 0;
  for (const auto& [name, p] : builtin_catalog()) {
    if (p.size() > 9) continue;
    for (const auto& s : enumerate_subcategories(p.fusion)) {
      const auto sub = restrict_data(p, s);
      const auto center = muger_center(sub);
      if (!center.is_even || !center.is_pointed) continue;
      INFO(name);
      const auto c = condense(sub);
      ++tried;
      CHECK(c.status == ResolutionStatus::unique);
      if (c.status != ResolutionStatus::unique) continue;
      CHECK(c.data().global_dim() * double(c.group_order()) ==
            doctest::Approx(sub.global_dim()).epsilon(1e-8));
      CHECK(verify_premodular(c.data()).all_passed());
      const auto again = condense(c.data());
      CHECK(again.group_order() == 1);
      CHECK(equivalence(again.data(), c.data()).has_value());
    }
  }
  CHECK(tried > 20);
}

TEST_CASE("odd or non-pointed centers are refused") {
  const auto s2 = su2(2);
  const auto sub = restrict_data(s2, full_subcategory(s2.fusion, {0, 2}));
  CHECK_THROWS_AS(condense(sub), PreconditionError);
  CHECK_THROWS_AS(double_data(s2, full_subcategory(s2.fusion, {0, 2})), PreconditionError);
  const auto s4 = su2(4);
  CHECK_THROWS_AS(double_data(s4, full_subcategory(s4.fusion, {0})), PreconditionError);
}

TEST_CASE("quantum double of the SU(2)_4 integer spins") {
  const auto s4 = su2(4);
  const auto c = double_data(s4, full_subcategory(s4.fusion, {0, 2, 4}));
  CHECK(c.source.size() == 13);
  CHECK(c.source.global_dim() == doctest::Approx(72.0));
  CHECK(c.group_order() == 2);
  CHECK(c.status == ResolutionStatus::unique);
  const auto& d = c.data();
  CHECK(d.size() == 8);
  CHECK(d.global_dim() == doctest::Approx(36.0));
  CHECK(is_modular(d).relations_hold);
}

TEST_CASE("quantum double of a modular category is C x conj(C)") {
  for (const auto& p : {fibonacci(), su2(3), ising()}) {
    const auto c = double_data(p, whole(p.fusion));
    CHECK(c.group_order() == 1);
    CHECK(equivalence(c.data(), product(p, conjugate(p))).has_value());
  }
}

TEST_CASE("all-or-nothing fusion into delta") {
  const auto s4 = su2(4);
  const auto delta = full_subcategory(s4.fusion, {0, 2, 4});
  for (Label eta = 0; eta < 5; ++eta)
    for (Label zeta = 0; zeta < 5; ++zeta) {
      const auto r = lemma_lem1_check(s4, delta, eta, zeta);
      CHECK(r.passed);
      // chi = 1 exactly when eta and zeta have the same parity.
      CHECK((r.note == "chi = 1") == ((eta + zeta) % 2 == 0));
    }
}

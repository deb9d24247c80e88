#pragma once

#include <string>
#include <utility>
#include <vector>

#include "premod/modular.hpp"

namespace premod {

/// SU(2)_k: labels 0..k, d_a = sin((a+1)pi/(k+2)) / sin(pi/(k+2)),
/// theta_a = e^{pi i a(a+2) / (2(k+2))}.
PremodularData su2(int k);

/// Z_n with theta_a = e^{2 pi i q a^2 / (2n)}. The form is well defined on
/// Z_n iff q*n is even; q is read modulo 2n.
PremodularData pointed_cyclic(int n, int q);

/// Exponents q in [0, 2n) for which pointed_cyclic(n, q) is defined.
std::vector<int> admissible_quadratic_exponents(int n);

PremodularData fibonacci();
PremodularData ising();

/// Family lookup: "su2" {k}, "pointed_cyclic" {n, q}, "fibonacci", "ising",
/// "semion". Throws StructuralError for unknown families or bad parameters.
PremodularData builtin(const std::string& family, const std::vector<int>& params = {});

/// Parses expressions such as "su2(4)", "pointed(3,2)", "conj(su2(3))" and
/// "fibonacci*ising" (Deligne product, left-associative).
PremodularData parse_builtin(const std::string& expr);

/// Named builtins covering every family: su2(1..8), pointed Z_2..Z_5 with all
/// admissible forms, Fibonacci, Ising, a few products and conjugates.
std::vector<std::pair<std::string, PremodularData>> builtin_catalog();

}  // namespace premod

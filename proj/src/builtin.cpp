#include "premod/builtin.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "premod/error.hpp"

namespace premod {

namespace {

std::vector<std::string> numbered(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

PremodularData verified(PremodularData p, const std::string& what) {
  const ValidationReport r = verify_premodular(p);
  if (!r.all_passed()) {
    for (const auto& c : r.checks)
      if (!c.passed)
        throw NumericalInconsistency(what + ": " + c.name + " fails at " + c.witness);
  }
  return p;
}

}  // namespace

PremodularData su2(int k) {
  if (k < 1) throw StructuralError("su2 level must be at least 1");
  const int n = k + 1;
  std::vector<FusionEntry> entries;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 2 * k - a - b); c += 2)
        entries.push_back({static_cast<Label>(a), static_cast<Label>(b), static_cast<Label>(c), 1});
  std::vector<Label> dual(n);
  for (int a = 0; a < n; ++a) dual[a] = static_cast<Label>(a);
  FusionData f(numbered(n), 0, dual, entries);

  QuantumDims d(n);
  std::vector<Twist> theta;
  const double q = std::numbers::pi / (k + 2);
  for (int a = 0; a < n; ++a) {
    d[a] = std::sin((a + 1) * q) / std::sin(q);
    theta.push_back(Twist::rational(a * (a + 2), 4 * (k + 2)));
  }
  ComplexMatrix s = sprime_from_balancing(f, d, theta);
  return verified(make_premodular(std::move(f), std::move(theta), std::move(d), std::move(s)),
                  "su2(" + std::to_string(k) + ")");
}

std::vector<int> admissible_quadratic_exponents(int n) {
  std::vector<int> out;
  for (int q = 0; q < 2 * n; ++q)
    if ((q * n) % 2 == 0) out.push_back(q);
  return out;
}

PremodularData pointed_cyclic(int n, int q) {
  if (n < 1) throw StructuralError("pointed_cyclic order must be at least 1");
  if ((static_cast<long>(q) * n) % 2 != 0)
    throw StructuralError("quadratic exponent q=" + std::to_string(q) +
                          " is not well defined on Z_" + std::to_string(n));
  std::vector<FusionEntry> entries;
  std::vector<Label> dual(n);
  std::vector<Twist> theta;
  for (int a = 0; a < n; ++a) {
    dual[a] = static_cast<Label>((n - a) % n);
    theta.push_back(Twist::rational(static_cast<long>(q) * a * a, 2L * n));
    for (int b = 0; b < n; ++b)
      entries.push_back({static_cast<Label>(a), static_cast<Label>(b),
                         static_cast<Label>((a + b) % n), 1});
  }
  FusionData f(numbered(n), 0, dual, entries);
  QuantumDims d(n, 1.0);
  ComplexMatrix s = sprime_from_balancing(f, d, theta);
  return verified(make_premodular(std::move(f), std::move(theta), std::move(d), std::move(s)),
                  "pointed_cyclic(" + std::to_string(n) + "," + std::to_string(q) + ")");
}

PremodularData fibonacci() {
  FusionData f({"1", "tau"}, 0, {0, 1},
               {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}});
  std::vector<Twist> theta{Twist{}, Twist::rational(2, 5)};
  QuantumDims d = perron_frobenius_dims(f);
  ComplexMatrix s = sprime_from_balancing(f, d, theta);
  return verified(make_premodular(std::move(f), std::move(theta), std::move(d), std::move(s)),
                  "fibonacci");
}

PremodularData ising() {
  // 1, psi, sigma
  FusionData f({"1", "psi", "sigma"}, 0, {0, 1, 2},
               {{0, 0, 0, 1},
                {0, 1, 1, 1},
                {0, 2, 2, 1},
                {1, 0, 1, 1},
                {2, 0, 2, 1},
                {1, 1, 0, 1},
                {1, 2, 2, 1},
                {2, 1, 2, 1},
                {2, 2, 0, 1},
                {2, 2, 1, 1}});
  std::vector<Twist> theta{Twist{}, Twist::rational(1, 2), Twist::rational(1, 16)};
  QuantumDims d = perron_frobenius_dims(f);
  ComplexMatrix s = sprime_from_balancing(f, d, theta);
  return verified(make_premodular(std::move(f), std::move(theta), std::move(d), std::move(s)),
                  "ising");
}

PremodularData builtin(const std::string& family, const std::vector<int>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw StructuralError(family + " expects " + std::to_string(count) + " parameter(s)");
  };
  if (family == "su2") {
    need(1);
    return su2(params[0]);
  }
  if (family == "pointed_cyclic" || family == "pointed") {
    need(2);
    return pointed_cyclic(params[0], params[1]);
  }
  if (family == "fibonacci" || family == "fib") {
    need(0);
    return fibonacci();
  }
  if (family == "ising") {
    need(0);
    return ising();
  }
  if (family == "semion") {
    need(0);
    return pointed_cyclic(2, 1);
  }
  throw StructuralError("unknown builtin family '" + family + "'");
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  PremodularData parse() {
    PremodularData p = product_expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  PremodularData product_expr() {
    PremodularData p = term();
    while (peek() == '*') {
      ++pos_;
      p = product(p, term());
    }
    return p;
  }

  PremodularData term() {
    const std::string id = ident();
    if (id == "conj" || id == "conjugate") {
      expect('(');
      PremodularData inner = product_expr();
      expect(')');
      return conjugate(inner);
    }
    std::vector<int> params;
    if (peek() == '(') {
      ++pos_;
      if (peek() != ')') {
        params.push_back(integer());
        while (peek() == ',') {
          ++pos_;
          params.push_back(integer());
        }
      }
      expect(')');
    }
    return builtin(id, params);
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a family name");
    return s_.substr(start, pos_ - start);
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw StructuralError("bad builtin expression '" + s_ + "' at " + std::to_string(pos_) +
                          ": " + why);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

PremodularData parse_builtin(const std::string& expr) { return ExprParser(expr).parse(); }

std::vector<std::pair<std::string, PremodularData>> builtin_catalog() {
  std::vector<std::string> exprs;
  for (int k = 1; k <= 8; ++k) exprs.push_back("su2(" + std::to_string(k) + ")");
  for (int n = 2; n <= 5; ++n)
    for (int q : admissible_quadratic_exponents(n))
      exprs.push_back("pointed(" + std::to_string(n) + "," + std::to_string(q) + ")");
  for (const char* e : {"fibonacci", "ising", "fibonacci*fibonacci", "fibonacci*ising",
                        "su2(1)*su2(2)", "pointed(2,0)*pointed(2,1)", "ising*conj(ising)",
                        "su2(4)*conj(su2(4))", "su2(4)*pointed(3,2)", "conj(su2(3))",
                        "conj(su2(5))", "conj(fibonacci)", "conj(ising)", "conj(pointed(5,2))"})
    exprs.emplace_back(e);
  std::vector<std::pair<std::string, PremodularData>> out;
  for (const auto& e : exprs) out.emplace_back(e, parse_builtin(e));
  return out;
}

}  // namespace premod

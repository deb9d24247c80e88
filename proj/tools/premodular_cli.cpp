// premodular: command-line front end to the premod library.
//
// Exit codes: 0 success, 1 a check failed or a precondition does not hold,
// 2 unreadable or malformed input, 3 coloring sum refused by the term cap.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "premod/builtin.hpp"
#include "premod/double_rt.hpp"
#include "premod/error.hpp"
#include "premod/io.hpp"

using namespace premod;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kTermCap = 3 };

struct CategorySource {
  std::string file;
  std::string builtin;
  std::string family;
  int level = -1, n = -1, q = -1;
};

struct GraphSource {
  std::string file;
  std::string named;
};

struct Config {
  double tolerance = kDefaultTolerance;
  double term_cap = 1e8;
  std::string output = "text";
  std::uint64_t seed = 1;
  bool json() const { return output == "json"; }
  EvalOptions eval() const {
    EvalOptions o;
    o.tolerance = tolerance;
    o.term_cap = term_cap;
    return o;
  }
  ResolutionOptions resolution() const {
    ResolutionOptions o;
    o.tolerance = tolerance;
    return o;
  }
};

void add_category_options(CLI::App* app, CategorySource& s) {
  app->add_option("--file,-f", s.file, "category JSON file");
  app->add_option("--builtin,-b", s.builtin, "builtin expression, e.g. su2(4) or fibonacci*ising");
  app->add_option("--family", s.family, "builtin family: su2, pointed_cyclic, fibonacci, ising, semion");
  app->add_option("--level", s.level, "k for su2");
  app->add_option("--n", s.n, "n for pointed_cyclic");
  app->add_option("--q", s.q, "q for pointed_cyclic");
}

void add_graph_options(CLI::App* app, GraphSource& s) {
  app->add_option("--plumbing,-p", s.file, "plumbing JSON file");
  app->add_option("--graph,-g", s.named,
                  "named graph: empty, unknot:m, lens:p (= unknot:p), hopf:a,b, chain:m1,m2,..., e8");
}

struct Loaded {
  PremodularData data;
  std::string hash;  // of the file bytes, or of the builtin expression
};

Loaded load_category(const CategorySource& s) {
  const int given = !s.file.empty() + !s.builtin.empty() + !s.family.empty();
  if (given != 1) throw ParseError("give exactly one of --file, --builtin, --family");
  if (!s.file.empty()) {
    const std::string text = read_file(s.file);
    return {category_from_json(parse_json(text)), fnv1a_hex(text)};
  }
  if (!s.builtin.empty()) return {parse_builtin(s.builtin), fnv1a_hex(s.builtin)};
  std::vector<int> params;
  if (s.family == "su2") {
    if (s.level < 0) throw ParseError("su2 needs --level");
    params = {s.level};
  } else if (s.family == "pointed_cyclic" || s.family == "pointed") {
    if (s.n < 0 || s.q < 0) throw ParseError("pointed_cyclic needs --n and --q");
    params = {s.n, s.q};
  }
  return {builtin(s.family, params), fnv1a_hex(s.family)};
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad integer list: " + s);
    }
  }
  return out;
}

PlumbingGraph named_graph(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto xs = int_list(args);
  if (kind == "empty") return PlumbingGraph({}, {});
  if ((kind == "unknot" || kind == "lens") && xs.size() == 1) return PlumbingGraph::unknot(xs[0]);
  if (kind == "hopf" && xs.size() == 2) return PlumbingGraph::hopf_link(xs[0], xs[1]);
  if (kind == "chain" && !xs.empty()) return PlumbingGraph::chain(xs);
  if (kind == "e8") return xs.empty() ? PlumbingGraph::e8() : PlumbingGraph::e8(xs.at(0));
  throw ParseError("unknown graph " + text);
}

PlumbingGraph load_graph(const GraphSource& s) {
  if (s.file.empty() == s.named.empty()) throw ParseError("give exactly one of --plumbing, --graph");
  if (!s.file.empty()) return plumbing_from_json(parse_json(read_file(s.file)));
  return named_graph(s.named);
}

Subcategory parse_delta(const PremodularData& p, const std::string& text) {
  if (text.empty()) return whole(p.fusion);
  std::vector<Label> members;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    members.push_back(p.fusion.index_of(item));
  }
  return full_subcategory(p.fusion, members);
}

std::string names_of(const PremodularData& p, const std::vector<Label>& ls) {
  std::string out = "{";
  for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + p.fusion.name(ls[i]);
  return out + "}";
}

std::string format_value(const InvariantValue& v) {
  std::ostringstream os;
  os << std::setprecision(15) << v.value.real() << " " << v.value.imag() << " ± " << std::setprecision(3)
     << v.tolerance;
  return os.str();
}

json value_json(const InvariantValue& v) {
  return {{"re", v.value.real()}, {"im", v.value.imag()}, {"tolerance", v.tolerance}, {"terms", v.terms}};
}

json checks_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& c : r.checks)
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"witness", c.witness}});
  return out;
}

void print_checks(const ValidationReport& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.passed ? "  ok   " : "  FAIL ") << c.name << "  residual " << c.residual;
    if (!c.passed && !c.witness.empty()) std::cout << "  witness " << c.witness;
    std::cout << "\n";
  }
}

void emit(const Config& cfg, const json& j, const std::string& text) {
  if (cfg.json())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json identity_json(const IdentityCheck& c) {
  return {{"passed", c.passed}, {"skipped", c.skipped},  {"lhs", {c.lhs.real(), c.lhs.imag()}},
          {"rhs", {c.rhs.real(), c.rhs.imag()}}, {"residual", c.residual}, {"note", c.note}};
}

std::string identity_text(const std::string& what, const IdentityCheck& c) {
  std::ostringstream os;
  os << std::setprecision(15) << what << ": " << (c.skipped ? "skipped" : c.passed ? "pass" : "FAIL")
     << "\n  lhs " << c.lhs.real() << " " << c.lhs.imag() << "\n  rhs " << c.rhs.real() << " "
     << c.rhs.imag() << "\n  residual " << c.residual << "\n";
  if (!c.note.empty()) os << "  " << c.note << "\n";
  return os.str();
}

// Subcommands ---------------------------------------------------------------

int cmd_verify(const Config& cfg, const CategorySource& src) {
  const Loaded in = load_category(src);
  const PremodularData& p = in.data;
  ValidationReport r = validate_fusion(p.fusion);
  r.append(verify_premodular(p, cfg.tolerance));
  const bool ok = r.all_passed();
  const ModularityReport m = is_modular(p, cfg.tolerance);
  const CenterReport c = muger_center(p, cfg.tolerance);
  json j = {{"premodular", ok},
            {"modular", m.modular && m.relations_hold},
            {"rank", m.rank},
            {"relations_residual", m.max_residual},
            {"center", names_of(p, c.degenerate.members)},
            {"checks", checks_json(r)}};
  std::ostringstream os;
  os << "labels: " << p.size() << "  dim: " << std::setprecision(12) << p.global_dim() << "\n";
  emit(cfg, j, os.str());
  if (!cfg.json()) {
    print_checks(r);
    std::cout << "premodular: " << (ok ? "true" : "false") << "\n"
              << "modular: " << (m.modular && m.relations_hold ? "true" : "false") << "\n"
              << "center: " << names_of(p, c.degenerate.members) << "\n";
  }
  return ok ? kOk : kFailed;
}

int cmd_center(const Config& cfg, const CategorySource& src) {
  const PremodularData p = load_category(src).data;
  const CenterReport c = muger_center(p, cfg.tolerance);
  json j = {{"center", names_of(p, c.degenerate.members)},
            {"even", c.is_even},
            {"pointed", c.is_pointed},
            {"abelian", c.group ? c.group->abelian() : false},
            {"dim", subcategory_dim(p, c.degenerate)}};
  std::ostringstream os;
  os << "center: " << names_of(p, c.degenerate.members) << "\neven: " << c.is_even
     << "\npointed: " << c.is_pointed << "\ndim: " << subcategory_dim(p, c.degenerate) << "\n";
  emit(cfg, j, os.str());
  return kOk;
}

int write_or_print(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw ParseError("cannot write " + out);
  f << j.dump(2) << "\n";
  return kOk;
}

std::string condensed_text(const CondensedData& c) {
  std::ostringstream os;
  os << "group order: " << c.group_order() << "\norbits: " << c.orbits.orbits.size()
     << "\nlabels: " << c.new_labels.size() << "\nresolution: " << to_string(c.status) << " ("
     << c.solutions.size() << " solutions, " << c.unknowns << " unknowns, residual "
     << c.constraint_residual << ")\n";
  if (!c.solutions.empty()) {
    const auto& d = c.data();
    os << "dim: " << std::setprecision(12) << d.global_dim() << "\n";
    for (Label a = 0; a < d.size(); ++a)
      os << "  " << d.fusion.name(a) << "  d=" << d.dims[a] << "  theta=" << d.twist(a) << "\n";
  }
  return os.str();
}

int finish_condensed(const Config& cfg, const CondensedData& c, const std::string& hash,
                     const std::string& out) {
  if (c.status == ResolutionStatus::unresolved) {
    std::cerr << "fixed-point resolution failed; best residual " << c.constraint_residual << "\n";
    return kFailed;
  }
  const json j = condensed_to_json(c, hash);
  if (!out.empty()) {
    write_or_print(j, out);
    if (!cfg.json()) std::cout << condensed_text(c);
    else std::cout << j["provenance"].dump(2) << "\n";
  } else {
    if (cfg.json()) std::cout << j.dump(2) << "\n";
    else std::cout << condensed_text(c);
  }
  return kOk;
}

int cmd_condense(const Config& cfg, const CategorySource& src, const std::string& delta,
                 const std::string& out) {
  const Loaded in = load_category(src);
  PremodularData p = in.data;
  if (!delta.empty()) p = restrict_data(p, parse_delta(p, delta));
  return finish_condensed(cfg, condense(p, cfg.resolution()), in.hash, out);
}

int cmd_double(const Config& cfg, const CategorySource& src, const std::string& delta,
               const std::string& out) {
  const Loaded in = load_category(src);
  const Subcategory d = parse_delta(in.data, delta);
  const MinimalityReport m = check_minimal_extension(in.data, d, cfg.tolerance);
  if (!cfg.json())
    std::cout << "minimal: " << m.minimal << "  degenerates " << names_of(in.data, m.degenerates.members)
              << "  centralizer " << names_of(in.data, m.centralizer.members) << "\n"
              << "even: " << m.degenerates_even << "  pointed: " << m.degenerates_pointed
              << "  dim identity " << m.dim_hat << " = " << m.dim_delta << " * " << m.dim_degenerate
              << ": " << m.dimension_identity << "\n";
  if (!m.admits_double) return kFailed;
  return finish_condensed(cfg, double_data(in.data, d, cfg.resolution()), in.hash, out);
}

int cmd_rt(const Config& cfg, const CategorySource& src, const GraphSource& gs) {
  const PremodularData p = load_category(src).data;
  const PlumbingGraph g = load_graph(gs);
  const InvariantValue v = rt_invariant(p, g, cfg.eval());
  emit(cfg, value_json(v), format_value(v) + "\n");
  return kOk;
}

int cmd_double_rt(const Config& cfg, const CategorySource& src, const std::string& delta,
                  const GraphSource& gs) {
  const PremodularData p = load_category(src).data;
  const PlumbingGraph g = load_graph(gs);
  const InvariantValue v = tau_double(p, parse_delta(p, delta), g, cfg.eval());
  emit(cfg, value_json(v), format_value(v) + "\n");
  return kOk;
}

int cmd_compare(const Config& cfg, const CategorySource& src, const std::string& delta,
                const GraphSource& gs, const std::string& mode) {
  const PremodularData p = load_category(src).data;
  const PlumbingGraph g = load_graph(gs);
  IdentityCheck c;
  if (mode == "factorization") {
    c = factorization_check(p, g, cfg.eval());
  } else {
    const Subcategory d = parse_delta(p, delta);
    c = double_pipeline_check(p, d, double_data(p, d, cfg.resolution()), g, cfg.eval());
  }
  emit(cfg, identity_json(c), identity_text(mode, c));
  return c.passed ? kOk : kFailed;
}

int cmd_kirby(const Config& cfg, const CategorySource& src, const std::string& delta, int count,
              int max_vertices) {
  const PremodularData p = load_category(src).data;
  const bool dbl = !delta.empty();
  const Subcategory d = dbl ? parse_delta(p, delta) : whole(p.fusion);
  const EvalOptions opts = cfg.eval();
  auto eval = [&](const PlumbingGraph& g) {
    return dbl ? tau_double(p, d, g, opts).value : rt_invariant(p, g, opts).value;
  };
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  std::size_t moves = 0, failures = 0;
  for (int i = 0; i < count; ++i) {
    const PlumbingGraph g = random_forest(rng, static_cast<std::size_t>(max_vertices));
    const Complex base = eval(g);
    for (const auto& h : kirby_moves(g)) {
      const double r = std::abs(eval(h) - base);
      worst = std::max(worst, r);
      ++moves;
      if (r > cfg.tolerance) ++failures;
    }
  }
  json j = {{"graphs", count}, {"moves", moves}, {"failures", failures}, {"worst_residual", worst}};
  std::ostringstream os;
  os << "graphs " << count << "  moves " << moves << "  failures " << failures << "  worst residual "
     << worst << "\n";
  emit(cfg, j, os.str());
  return failures ? kFailed : kOk;
}

int cmd_export(const CategorySource& src, const std::string& out) {
  return write_or_print(category_to_json(load_category(src).data), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Premodular category data, modularization and RT invariants of plumbed 3-manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--tolerance", cfg.tolerance, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--term-cap", cfg.term_cap, "largest coloring sum to attempt")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for random test graphs");

  CategorySource src;
  GraphSource gs;
  std::string delta, out, mode = "factorization";
  int count = 20, max_vertices = 4;

  auto* verify = app.add_subcommand("verify", "fusion axioms, premodular invariants, modularity");
  add_category_options(verify, src);
  auto* center = app.add_subcommand("center", "Müger center");
  add_category_options(center, src);
  auto* cond = app.add_subcommand("condense", "modularize by the even pointed center");
  add_category_options(cond, src);
  cond->add_option("--delta", delta, "restrict to these labels first (comma separated)");
  cond->add_option("--out,-o", out, "write the condensed category here");
  auto* dbl = app.add_subcommand("double", "quantum double of --delta inside the category");
  add_category_options(dbl, src);
  dbl->add_option("--delta", delta, "labels of the subcategory (comma separated)")->required();
  dbl->add_option("--out,-o", out, "write the double here");
  auto* rt = app.add_subcommand("rt", "RT invariant of a plumbing");
  add_category_options(rt, src);
  add_graph_options(rt, gs);
  auto* drt = app.add_subcommand("double-rt", "factorized invariant of the quantum double");
  add_category_options(drt, src);
  add_graph_options(drt, gs);
  drt->add_option("--delta", delta, "labels of the subcategory (default: all)");
  auto* cmp = app.add_subcommand("compare", "factorization or double-pipeline identity");
  add_category_options(cmp, src);
  add_graph_options(cmp, gs);
  cmp->add_option("--delta", delta, "labels of the subcategory (double mode)");
  cmp->add_option("--mode", mode, "factorization or double")
      ->check(CLI::IsMember({"factorization", "double"}));
  auto* kirby = app.add_subcommand("kirby-test", "invariance under blow-ups and blow-downs");
  add_category_options(kirby, src);
  kirby->add_option("--delta", delta, "test the double invariant of this subcategory instead");
  kirby->add_option("--count", count, "random forests")->check(CLI::PositiveNumber);
  kirby->add_option("--max-vertices", max_vertices, "vertices per forest")->check(CLI::NonNegativeNumber);
  auto* exp = app.add_subcommand("export", "write a category as JSON");
  add_category_options(exp, src);
  exp->add_option("--out,-o", out, "destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*verify) return cmd_verify(cfg, src);
    if (*center) return cmd_center(cfg, src);
    if (*cond) return cmd_condense(cfg, src, delta, out);
    if (*dbl) return cmd_double(cfg, src, delta, out);
    if (*rt) return cmd_rt(cfg, src, gs);
    if (*drt) return cmd_double_rt(cfg, src, delta, gs);
    if (*cmp) return cmd_compare(cfg, src, delta, gs, mode);
    if (*kirby) return cmd_kirby(cfg, src, delta, count, max_vertices);
    if (*exp) return cmd_export(src, out);
  } catch (const TermCapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kTermCap;
  } catch (const ClosureError& e) {
    std::cerr << "not a subcategory: " << e.what() << "\n";
    return kFailed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const StructuralError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}

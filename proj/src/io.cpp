#include "premod/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "premod/error.hpp"

namespace premod {

using nlohmann::json;

namespace {

void check_format(const json& j, bool required) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (!j.contains("format")) {
    if (required) throw ParseError("missing \"format\" field");
    return;
  }
  if (!j["format"].is_number_integer() || j["format"].get<int>() != kFileFormat)
    throw ParseError("unsupported format version " + j["format"].dump());
}

template <class T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad ") + what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\" field");
  return j[key];
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + " must be [re, im]");
  return {get<double>(j[0], what), get<double>(j[1], what)};
}

}  // namespace

json category_to_json(const PremodularData& p) {
  const FusionData& f = p.fusion;
  json j;
  j["format"] = kFileFormat;
  j["labels"] = f.names();
  j["unit"] = f.name(f.unit());
  j["dual"] = json::object();
  for (Label a = 0; a < f.size(); ++a) j["dual"][f.name(a)] = f.name(f.dual(a));
  j["N"] = json::array();
  for (const auto& e : f.entries())
    j["N"].push_back({f.name(e.a), f.name(e.b), f.name(e.c), e.multiplicity});
  j["theta"] = json::object();
  j["dims"] = json::object();
  for (Label a = 0; a < f.size(); ++a) {
    const Twist& t = p.theta[a];
    if (t.exact())
      j["theta"][f.name(a)] = {{"rational", {t.exact()->first, t.exact()->second}}};
    else
      j["theta"][f.name(a)] = {{"complex", complex_json(t.value())}};
    j["dims"][f.name(a)] = p.dims[a];
  }
  j["sprime"] = json::array();
  for (Eigen::Index a = 0; a < p.sprime.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < p.sprime.cols(); ++b) row.push_back(complex_json(p.sprime(a, b)));
    j["sprime"].push_back(row);
  }
  return j;
}

PremodularData category_from_json(const json& j) {
  check_format(j, true);
  const auto names = get<std::vector<std::string>>(field(j, "labels"), "labels");
  std::map<std::string, Label> index;
  for (Label i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second) throw StructuralError("duplicate label " + names[i]);
  auto label = [&](const json& x, const char* what) {
    const auto s = get<std::string>(x, what);
    const auto it = index.find(s);
    if (it == index.end()) throw StructuralError(std::string("unknown label in ") + what + ": " + s);
    return it->second;
  };

  const Label unit = label(field(j, "unit"), "unit");
  const json& dj = field(j, "dual");
  if (!dj.is_object()) throw ParseError("\"dual\" must be an object");
  std::vector<Label> dual(names.size(), names.size());
  for (const auto& [k, v] : dj.items()) dual[label(json(k), "dual")] = label(v, "dual");
  for (Label a = 0; a < names.size(); ++a)
    if (dual[a] == names.size()) throw StructuralError("no dual given for " + names[a]);

  std::vector<FusionEntry> entries;
  for (const auto& e : get<json::array_t>(field(j, "N"), "N")) {
    if (!e.is_array() || e.size() != 4) throw ParseError("N entries must be [a, b, c, m]");
    const int m = get<int>(e[3], "multiplicity");
    if (m < 1) throw ParseError("N multiplicities must be >= 1");
    entries.push_back({label(e[0], "N"), label(e[1], "N"), label(e[2], "N"), m});
  }
  FusionData f(names, unit, dual, entries);

  const json& tj = field(j, "theta");
  if (!tj.is_object()) throw ParseError("\"theta\" must be an object");
  std::vector<Twist> theta(names.size());
  std::vector<bool> seen(names.size(), false);
  for (const auto& [k, v] : tj.items()) {
    const Label a = label(json(k), "theta");
    seen[a] = true;
    if (v.contains("rational")) {
      const auto pq = get<std::vector<long>>(v["rational"], "rational twist");
      if (pq.size() != 2 || pq[1] == 0) throw ParseError("rational twist must be [p, q], q != 0");
      theta[a] = Twist::rational(pq[0], pq[1]);
    } else if (v.contains("complex")) {
      theta[a] = Twist::complex(complex_from(v["complex"], "complex twist"));
    } else {
      throw ParseError("twist for " + k + " needs \"rational\" or \"complex\"");
    }
  }
  for (Label a = 0; a < names.size(); ++a)
    if (!seen[a]) throw StructuralError("no twist given for " + names[a]);

  std::optional<QuantumDims> dims;
  if (j.contains("dims")) {
    if (!j["dims"].is_object()) throw ParseError("\"dims\" must be an object");
    QuantumDims d(names.size(), 0.0);
    std::vector<bool> have(names.size(), false);
    for (const auto& [k, v] : j["dims"].items()) {
      const Label a = label(json(k), "dims");
      d[a] = get<double>(v, "dimension");
      have[a] = true;
    }
    for (Label a = 0; a < names.size(); ++a)
      if (!have[a]) throw StructuralError("no dimension given for " + names[a]);
    dims = d;
  }

  std::optional<ComplexMatrix> sprime;
  if (j.contains("sprime")) {
    const json& sj = j["sprime"];
    const auto n = static_cast<Eigen::Index>(names.size());
    if (!sj.is_array() || static_cast<Eigen::Index>(sj.size()) != n)
      throw ParseError("\"sprime\" must be a square matrix over the labels");
    ComplexMatrix s(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      if (!sj[a].is_array() || static_cast<Eigen::Index>(sj[a].size()) != n)
        throw ParseError("\"sprime\" must be a square matrix over the labels");
      for (Eigen::Index b = 0; b < n; ++b) s(a, b) = complex_from(sj[a][b], "sprime entry");
    }
    sprime = s;
  }
  return make_premodular(std::move(f), std::move(theta), dims, sprime);
}

json condensed_to_json(const CondensedData& c, const std::string& source_hash) {
  json j = category_to_json(c.data());
  json prov;
  prov["source_hash"] = "fnv1a64:" + source_hash;
  prov["group_order"] = c.group_order();
  json group = json::array();
  for (Label g : c.orbits.group.elements) group.push_back(c.source.fusion.name(g));
  prov["group"] = group;
  json orbit_map = json::object();
  for (Label x = 0; x < c.source.size(); ++x)
    orbit_map[c.source.fusion.name(x)] =
        c.source.fusion.name(c.orbits.orbits[c.orbits.orbit_of[x]].representative);
  prov["orbit_map"] = orbit_map;
  json labels = json::array();
  for (const auto& l : c.new_labels)
    labels.push_back({{"orbit", c.source.fusion.name(c.orbits.orbits[l.orbit].representative)},
                      {"sheet", l.sheet}});
  prov["new_labels"] = labels;
  prov["resolution_status"] = to_string(c.status);
  prov["solutions"] = c.solutions.size();
  prov["unknowns"] = c.unknowns;
  prov["constraint_residual"] = c.constraint_residual;
  j["provenance"] = prov;
  return j;
}

json plumbing_to_json(const PlumbingGraph& g) {
  json j;
  j["format"] = kFileFormat;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back({{"id", v.id}, {"framing", v.framing}});
  j["edges"] = json::array();
  for (const auto& [a, b] : g.edges())
    j["edges"].push_back({g.vertices()[a].id, g.vertices()[b].id});
  return j;
}

PlumbingGraph plumbing_from_json(const json& j) {
  check_format(j, false);
  std::vector<PlumbingVertex> vs;
  for (const auto& v : get<json::array_t>(field(j, "vertices"), "vertices"))
    vs.push_back({get<std::string>(field(v, "id"), "vertex id"),
                  get<int>(field(v, "framing"), "framing")});
  std::vector<std::pair<std::string, std::string>> es;
  if (j.contains("edges"))
    for (const auto& e : get<json::array_t>(j["edges"], "edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs");
      es.emplace_back(get<std::string>(e[0], "edge"), get<std::string>(e[1], "edge"));
    }
  return PlumbingGraph(std::move(vs), es);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace premod

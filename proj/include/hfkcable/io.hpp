#pragma once

// JSON documents for complexes and tables. Parsing is strict: unknown keys,
// wrong types and duplicate generator ids are errors. Output is canonical
// (sorted keys, generators by id, edges by (from, to)) so files are stable
// byte for byte.
//
// Complex:  {"name", "generators": [{"id", "maslov", "alexander"}],
//            "differential": [{"from", "to", "coefficient"}]}
//           an edge means d(from) contains coefficient * (to).
// Table:    {"name", "entries": [{"alexander", "maslov", "free_rank",
//            "torsion": [orders]}], "metadata": {...}}

#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hfkcable/alexpoly.hpp"
#include "hfkcable/cabling.hpp"
#include "hfkcable/errors.hpp"
#include "hfkcable/knotcx.hpp"

namespace hfk {

using json = nlohmann::json;

struct TableDocument {
  std::string name;
  HFKTable table;
  json metadata = json::object();
};

namespace detail {

inline void check_keys(const json& obj, const std::set<std::string>& required,
                       const std::set<std::string>& optional, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!required.count(k) && !optional.count(k)) throw ParseError(where + ": unknown key \"" + k + "\"");
  for (const auto& k : required)
    if (!obj.contains(k)) throw ParseError(where + ": missing key \"" + k + "\"");
}

inline int get_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + ": \"" + key + "\" must be an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ParseError(where + ": \"" + key + "\" out of range");
  return static_cast<int>(x);
}

inline std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

// Integers that may exceed 64 bits travel as decimal strings.
inline Int get_big(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
    return Int(v.get<long long>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError(where + ": \"" + s + "\" is not an integer");
    return Int(s);
  }
  throw ParseError(where + ": expected an integer");
}

inline json big_to_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return json(v.convert_to<long long>());
  return json(v.str());
}

inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace detail

inline FilteredComplex complex_from_json(const json& doc) {
  detail::check_keys(doc, {"name", "generators", "differential"}, {}, "complex");
  const std::string name = detail::get_string(doc, "name", "complex");
  if (!doc["generators"].is_array()) throw ParseError("complex: \"generators\" must be an array");
  if (!doc["differential"].is_array()) throw ParseError("complex: \"differential\" must be an array");

  std::vector<Generator> gens;
  std::set<std::string> seen;
  std::size_t idx = 0;
  for (const auto& g : doc["generators"]) {
    const std::string where = "generators[" + std::to_string(idx++) + "]";
    detail::check_keys(g, {"id", "maslov", "alexander"}, {}, where);
    Generator gen{detail::get_string(g, "id", where), detail::get_int(g, "maslov", where),
                  detail::get_int(g, "alexander", where)};
    if (!seen.insert(gen.id).second) throw ParseError(where + ": duplicate id \"" + gen.id + "\"");
    gens.push_back(std::move(gen));
  }
  std::vector<Edge> edges;
  idx = 0;
  for (const auto& e : doc["differential"]) {
    const std::string where = "differential[" + std::to_string(idx++) + "]";
    detail::check_keys(e, {"from", "to", "coefficient"}, {}, where);
    Edge edge{detail::get_string(e, "from", where), detail::get_string(e, "to", where),
              detail::get_big(e["coefficient"], where + ".coefficient")};
    if (!seen.count(edge.from)) throw ParseError(where + ": unknown generator \"" + edge.from + "\"");
    if (!seen.count(edge.to)) throw ParseError(where + ": unknown generator \"" + edge.to + "\"");
    edges.push_back(std::move(edge));
  }
  return FilteredComplex(name, std::move(gens), std::move(edges));
}

inline FilteredComplex parse_complex(const std::string& text) {
  return complex_from_json(detail::parse_text(text, "complex"));
}

inline json complex_to_json(const FilteredComplex& c) {
  json gens = json::array();
  for (const auto& g : c.generators())
    gens.push_back({{"id", g.id}, {"maslov", g.maslov}, {"alexander", g.alexander}});
  json edges = json::array();
  for (const auto& e : c.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"coefficient", detail::big_to_json(e.coefficient)}});
  return {{"name", c.name()}, {"generators", gens}, {"differential", edges}};
}

inline json table_entries_json(const HFKTable& t) {
  json entries = json::array();
  for (const auto& [k, g] : t.entries()) {
    json tors = json::array();
    for (const auto& d : g.torsion()) tors.push_back(detail::big_to_json(d));
    entries.push_back({{"alexander", k.alexander},
                       {"maslov", k.maslov},
                       {"free_rank", g.free_rank()},
                       {"torsion", tors}});
  }
  return entries;
}

inline json table_to_json(const TableDocument& doc) {
  return {{"name", doc.name}, {"entries", table_entries_json(doc.table)}, {"metadata", doc.metadata}};
}

inline TableDocument table_from_json(const json& doc) {
  detail::check_keys(doc, {"name", "entries"}, {"metadata"}, "table");
  TableDocument out;
  out.name = detail::get_string(doc, "name", "table");
  if (!doc["entries"].is_array()) throw ParseError("table: \"entries\" must be an array");
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) throw ParseError("table: \"metadata\" must be an object");
    out.metadata = doc["metadata"];
  }
  std::size_t idx = 0;
  for (const auto& e : doc["entries"]) {
    const std::string where = "entries[" + std::to_string(idx++) + "]";
    detail::check_keys(e, {"alexander", "maslov", "free_rank"}, {"torsion"}, where);
    const int a = detail::get_int(e, "alexander", where);
    const int m = detail::get_int(e, "maslov", where);
    const int r = detail::get_int(e, "free_rank", where);
    if (r < 0) throw ParseError(where + ": negative free_rank");
    std::vector<Int> orders;
    if (e.contains("torsion")) {
      if (!e["torsion"].is_array()) throw ParseError(where + ": \"torsion\" must be an array");
      for (const auto& d : e["torsion"]) orders.push_back(detail::get_big(d, where + ".torsion"));
    }
    for (const auto& d : orders)
      if (d < 2) throw ParseError(where + ": torsion orders must be >= 2");
    AbelianGroup g = AbelianGroup::free(static_cast<std::size_t>(r))
                         .direct_sum(AbelianGroup::from_cyclic_orders(orders));
    if (g.is_zero()) throw ParseError(where + ": zero group entries are not stored");
    if (!out.table.at(a, m).is_zero())
      throw ParseError(where + ": duplicate bigrading (" + std::to_string(a) + ", " + std::to_string(m) + ")");
    out.table.set(a, m, g);
  }
  return out;
}

inline TableDocument parse_table(const std::string& text) {
  return table_from_json(detail::parse_text(text, "table"));
}

inline json graded_group_json(const GradedGroup& g) {
  json out = json::array();
  for (const auto& [m, grp] : g) {
    json tors = json::array();
    for (const auto& d : grp.torsion()) tors.push_back(detail::big_to_json(d));
    out.push_back({{"maslov", m}, {"free_rank", grp.free_rank()}, {"torsion", tors}});
  }
  return out;
}

inline json poly_to_json(const LaurentPoly& p) {
  json coeffs = json::array();
  for (const auto& [e, c] : p.coefficients()) coeffs.push_back(json::array({e, detail::big_to_json(c)}));
  return {{"polynomial", p.to_string()}, {"coefficients", coeffs}};
}

/// Metadata recorded with every cable table: parameters, range, assumptions.
inline json cable_metadata(const PartialHFKTable& t) {
  json range = {{"side", t.valid_range.side == ValidRange::Side::all     ? "all"
                         : t.valid_range.side == ValidRange::Side::above ? "above"
                                                                         : "below"},
                {"threshold", t.valid_range.threshold},
                {"description", t.valid_range.describe()}};
  json a = {{"heuristic_n_bound", t.assumptions.heuristic_n_bound},
            {"large_n_satisfied", t.assumptions.large_n_satisfied},
            {"large_n_override", t.assumptions.large_n_override},
            {"conjectural", t.assumptions.conjectural},
            {"c_prime", t.assumptions.c_prime ? json(*t.assumptions.c_prime) : json(nullptr)},
            {"torsion_present", t.assumptions.torsion_present},
            {"warnings", t.assumptions.warnings}};
  return {{"p", t.p},
          {"n", t.n},
          {"q", t.p * t.n + 1},
          {"companion_degree", t.companion_degree},
          {"degree", t.degree},
          {"valid_range", range},
          {"assumptions", a}};
}

inline TableDocument cable_document(const PartialHFKTable& t) {
  return {t.name, t.table, cable_metadata(t)};
}

/// Canonical text: two-space indent, keys sorted, trailing newline.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace hfk

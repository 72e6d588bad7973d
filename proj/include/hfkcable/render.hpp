#pragma once

// Text output for HFK tables: a grid with Alexander grading descending down
// the rows and Maslov grading across the columns, CSV, or canonical JSON.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "hfkcable/cabling.hpp"
#include "hfkcable/io.hpp"
#include "hfkcable/knotcx.hpp"

namespace hfk {

enum class Format { grid, csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "grid") return Format::grid;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ParseError("unknown format \"" + s + "\" (expected json, grid or csv)");
}

struct RenderOptions {
  bool color = false;
};

namespace detail {

inline std::string paint(const std::string& s, const char* code, bool on) {
  if (!on) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

inline std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

}  // namespace detail

/// Grid rendering. Zero cells print as "."; a table with no groups at all
/// prints the single banner "0".
inline std::string render_grid(const std::string& title, const HFKTable& t,
                               const std::vector<std::string>& notes = {}, RenderOptions opt = {}) {
  std::ostringstream out;
  if (!title.empty()) out << detail::paint(title, "1", opt.color) << "\n";
  if (t.empty()) {
    out << "0\n";
  } else {
    int amin = t.entries().begin()->first.alexander, amax = amin;
    int mmin = t.entries().begin()->first.maslov, mmax = mmin;
    for (const auto& [k, g] : t.entries()) {
      amin = std::min(amin, k.alexander);
      amax = std::max(amax, k.alexander);
      mmin = std::min(mmin, k.maslov);
      mmax = std::max(mmax, k.maslov);
    }
    std::size_t w = 1;
    for (const auto& [k, g] : t.entries()) w = std::max(w, g.to_string().size());
    for (int m = mmin; m <= mmax; ++m) w = std::max(w, std::to_string(m).size());
    std::size_t lw = std::string("i\\M").size();
    for (int a = amin; a <= amax; ++a) lw = std::max(lw, std::to_string(a).size());

    out << detail::pad_left("i\\M", lw) << " |";
    for (int m = mmin; m <= mmax; ++m) out << " " << detail::pad_left(std::to_string(m), w);
    out << "\n" << std::string(lw + 1, '-') << "+" << std::string((w + 1) * (mmax - mmin + 1), '-') << "\n";
    for (int a = amax; a >= amin; --a) {
      out << detail::pad_left(std::to_string(a), lw) << " |";
      for (int m = mmin; m <= mmax; ++m) {
        const AbelianGroup g = t.at(a, m);
        if (g.is_zero())
          out << " " << detail::pad_left(".", w);
        else
          out << " " << detail::paint(detail::pad_left(g.to_string(), w), "32", opt.color);
      }
      out << "\n";
    }
  }
  for (const auto& n : notes) out << n << "\n";
  return out.str();
}

/// One line per nonzero group: alexander,maslov,group,free_rank,torsion.
inline std::string render_csv(const HFKTable& t) {
  std::ostringstream out;
  out << "alexander,maslov,group,free_rank,torsion\n";
  for (auto it = t.entries().rbegin(); it != t.entries().rend(); ++it) {
    const auto& [k, g] = *it;
    std::string tors;
    for (const auto& d : g.torsion()) tors += (tors.empty() ? "" : ";") + d.str();
    out << k.alexander << "," << k.maslov << "," << g.to_string() << "," << g.free_rank() << "," << tors
        << "\n";
  }
  return out.str();
}

/// Annotation lines for a cable table: valid range, assumptions, warnings.
inline std::vector<std::string> cable_notes(const PartialHFKTable& t, RenderOptions opt = {}) {
  std::vector<std::string> notes;
  notes.push_back("degree " + std::to_string(t.degree) + " (companion degree " +
                  std::to_string(t.companion_degree) + ")");
  notes.push_back("valid range: " + t.valid_range.describe());
  std::string a = "assumptions: N = " + std::to_string(t.assumptions.heuristic_n_bound);
  if (t.assumptions.large_n_satisfied)
    a += " < |n|";
  else if (t.assumptions.large_n_override)
    a += " (large n asserted by the user)";
  else
    a += " (not exceeded)";
  if (t.assumptions.c_prime) a += ", c' = " + std::to_string(*t.assumptions.c_prime);
  if (t.assumptions.conjectural) a += ", conjectural";
  notes.push_back(a);
  for (const auto& w : t.assumptions.warnings) notes.push_back(detail::paint("warning: " + w, "33", opt.color));
  return notes;
}

inline std::string render_table(const TableDocument& doc, Format f, const std::vector<std::string>& notes = {},
                                RenderOptions opt = {}) {
  switch (f) {
    case Format::grid:
      return render_grid(doc.name, doc.table, notes, opt);
    case Format::csv:
      return render_csv(doc.table);
    case Format::json:
      return dump_canonical(table_to_json(doc));
  }
  return "";
}

inline std::string render_table(const PartialHFKTable& t, Format f, RenderOptions opt = {}) {
  return render_table(cable_document(t), f, cable_notes(t, opt), opt);
}

}  // namespace hfk

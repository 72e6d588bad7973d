#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes to the given streams, so it can be driven in-process.
// Exit codes: 0 ok, 1 a check failed or the input is not a valid complex,
// 2 bad usage or unreadable input.

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hfkcable/alexpoly.hpp"
#include "hfkcable/cabling.hpp"
#include "hfkcable/errors.hpp"
#include "hfkcable/io.hpp"
#include "hfkcable/knotcx.hpp"
#include "hfkcable/render.hpp"
#include "hfkcable/torus.hpp"
#include "hfkcable/verify.hpp"

namespace hfk::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct Options {
  std::string input;
  std::string output;
  std::string format = "grid";
  int level = 0;
  bool quotient = false;
  int family = 0;
  std::optional<int> param;
  std::optional<int> staircase;
  int p = 2;
  std::optional<int> n;
  std::optional<int> c_prime;
  bool assume_large_n = false;
  std::vector<int> torus;
};

inline void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
}

// --output always receives canonical JSON; stdout gets the chosen format.
inline void emit_table(const TableDocument& doc, const std::vector<std::string>& notes, const Options& o,
                       std::ostream& out, RenderOptions ropt) {
  const Format f = parse_format(o.format);
  if (!o.output.empty()) write_file(o.output, dump_canonical(table_to_json(doc)));
  if (o.output.empty() || f != Format::json) out << render_table(doc, f, notes, ropt);
}

inline FilteredComplex load_complex(const std::string& path) { return parse_complex(read_file(path)); }

inline int cmd_validate(const Options& o, std::ostream& out) {
  const FilteredComplex c = load_complex(o.input);
  const ValidationReport rep = validate(c);
  for (const auto& chk : rep.checks) {
    out << (chk.passed ? "PASS" : "FAIL") << "  " << chk.name;
    if (!chk.offenders.empty()) {
      out << ":";
      for (const auto& s : chk.offenders) out << " " << s;
    }
    out << "\n";
  }
  return rep.ok() ? exit_ok : exit_fail;
}

inline int cmd_homology(const Options& o, std::ostream& out) {
  const FilteredComplex c = load_complex(o.input);
  require_valid(c);
  const GradedGroup h = o.quotient ? quotient_homology(c, o.level) : filtration_homology(c, o.level);
  const std::string what = (o.quotient ? "H(C/F(K," : "H(F(K,") + std::to_string(o.level) + "))";
  if (parse_format(o.format) == Format::json) {
    emit(dump_canonical({{"name", c.name()},
                         {"level", o.level},
                         {"quotient", o.quotient},
                         {"homology", graded_group_json(h)}}),
         o, out);
    return exit_ok;
  }
  std::string text = what + " of " + c.name() + ": " + h.to_string() + "\n";
  for (const auto& [m, g] : h) text += "  maslov " + std::to_string(m) + ": " + g.to_string() + "\n";
  emit(text, o, out);
  return exit_ok;
}

inline int cmd_hfk(const Options& o, std::ostream& out, RenderOptions ropt) {
  const FilteredComplex c = load_complex(o.input);
  require_valid(c);
  const HFKTable t = associated_graded(c);
  json meta = {{"degree", degree(t)}, {"symmetric", symmetry_check(t)}};
  emit_table({c.name(), t, meta}, {"degree " + std::to_string(degree(t))}, o, out, ropt);
  return exit_ok;
}

inline int cmd_torus(const Options& o, std::ostream& out, RenderOptions ropt) {
  if (o.staircase) {
    if (o.family != 0) throw ParseError("--staircase and --family are mutually exclusive");
    const FilteredComplex c = staircase_T2(*o.staircase);
    emit(dump_canonical(complex_to_json(c)), o, out);
    return exit_ok;
  }
  if (o.family == 2) {
    if (!o.param) throw ParseError("--family 2 needs --param");
    const int n = *o.param;
    const HFKTable t = hfk_torus_2(n);
    emit_table({torus_name(2, 2 * n + 1), t, {{"family", 2}, {"param", n}, {"degree", degree(t)}}}, {}, o, out,
               ropt);
    return exit_ok;
  }
  if (o.family == 37) {
    if (o.param) throw ParseError("--family 37 takes no --param");
    const HFKTable t = hfk_torus_3_7();
    emit_table({torus_name(3, 7), t, {{"family", 37}, {"degree", degree(t)}}}, {}, o, out, ropt);
    return exit_ok;
  }
  throw ParseError("torus needs --family 2, --family 37 or --staircase");
}

inline int cmd_cable(const Options& o, std::ostream& out, std::ostream& err, RenderOptions ropt) {
  const FilteredComplex c = load_complex(o.input);
  if (!o.n) throw ParseError("cable needs --n");
  const CableParams prm{o.p, *o.n, o.c_prime, o.assume_large_n};
  const PartialHFKTable t = cable_hfk(c, prm);
  for (const auto& w : t.assumptions.warnings) err << "warning: " << w << "\n";
  emit_table(cable_document(t), cable_notes(t, ropt), o, out, ropt);
  return exit_ok;
}

inline int cmd_alexander(const Options& o, std::ostream& out) {
  LaurentPoly p;
  std::string name;
  if (!o.torus.empty()) {
    if (!o.input.empty()) throw ParseError("--input and --torus are mutually exclusive");
    p = torus_alexander(o.torus[0], o.torus[1]);
    name = torus_name(o.torus[0], o.torus[1]);
  } else if (!o.input.empty()) {
    // A table file, or a complex file whose associated graded is used.
    const json doc = hfk::detail::parse_text(read_file(o.input), o.input);
    if (doc.is_object() && doc.contains("generators")) {
      const FilteredComplex c = complex_from_json(doc);
      require_valid(c);
      p = euler_poly(associated_graded(c));
      name = c.name();
    } else {
      const TableDocument t = table_from_json(doc);
      p = euler_poly(t.table);
      name = t.name;
      for (const auto& b : torsion_classes(t.table))
        out << "note: torsion at (" << b.alexander << ", " << b.maslov << ") does not contribute\n";
    }
  } else {
    throw ParseError("alexander needs --input or --torus");
  }
  if (parse_format(o.format) == Format::json) {
    json j = poly_to_json(p);
    j["name"] = name;
    emit(dump_canonical(j), o, out);
  } else {
    emit(name + ": " + p.to_string() + "\n", o, out);
  }
  return exit_ok;
}

inline int cmd_verify(const Options& o, std::ostream& out, RenderOptions ropt) {
  const FilteredComplex c = load_complex(o.input);
  std::optional<CableParams> prm;
  if (o.n) prm = CableParams{o.p, *o.n, o.c_prime, o.assume_large_n};
  else if (o.p != 2 || o.c_prime || o.assume_large_n) throw ParseError("verify: cable options need --n");
  const VerifyReport rep = run_verify(c, prm);
  if (rep.params)
    out << "verify " << c.name() << " with p = " << rep.params->p << ", n = " << rep.params->n << "\n";
  out << render_report(rep, ropt.color);
  return rep.exit_code();
}

inline int cmd_table(const Options& o, std::ostream& out, RenderOptions ropt) {
  const TableDocument doc = parse_table(read_file(o.input));
  std::vector<std::string> notes;
  if (doc.metadata.contains("valid_range") && doc.metadata["valid_range"].contains("description"))
    notes.push_back("valid range: " + doc.metadata["valid_range"]["description"].get<std::string>());
  emit_table(doc, notes, o, out, ropt);
  return exit_ok;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool allow_color = false) {
  detail::Options o;
  CLI::App app{"Knot Floer homology of cables from filtered complexes", "hfk_cable"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "grid", "csv"};

  auto* validate_cmd = app.add_subcommand("validate", "check the invariants of a complex file");
  validate_cmd->add_option("--input", o.input, "complex file")->required();

  auto* homology_cmd = app.add_subcommand("homology", "homology of a filtration level");
  homology_cmd->add_option("--input", o.input, "complex file")->required();
  homology_cmd->add_option("--level", o.level, "filtration level j")->required();
  homology_cmd->add_flag("--quotient", o.quotient, "use C/F(K,j) instead of F(K,j)");
  homology_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"grid", "text", "json"}));
  homology_cmd->add_option("--output", o.output, "write to a file");

  auto* hfk_cmd = app.add_subcommand("hfk", "HFK table of a complex (associated graded)");
  hfk_cmd->add_option("--input", o.input, "complex file")->required();
  hfk_cmd->add_option("--format", o.format)->check(CLI::IsMember(formats));
  hfk_cmd->add_option("--output", o.output, "write the table as JSON");

  auto* torus_cmd = app.add_subcommand("torus", "built-in torus knot data");
  torus_cmd->add_option("--family", o.family, "2 for T(2,2n+1), 37 for T(3,7)")->check(CLI::IsMember({2, 37}));
  torus_cmd->add_option("--param", o.param, "n for the T(2,2n+1) family");
  torus_cmd->add_option("--staircase", o.staircase, "emit the staircase complex with parameter m (T(2,2m+1) for m > 0)");
  torus_cmd->add_option("--format", o.format)->check(CLI::IsMember(formats));
  torus_cmd->add_option("--output", o.output, "write to a file");

  auto* cable_cmd = app.add_subcommand("cable", "HFK of the (p, pn+1) cable");
  cable_cmd->add_option("--input", o.input, "companion complex file")->required();
  cable_cmd->add_option("--p", o.p, "cabling parameter p >= 2");
  cable_cmd->add_option("--n", o.n, "nonzero n; the cable is (p, pn+1)")->required();
  cable_cmd->add_option("--c-prime", o.c_prime, "the constant c' (required when p > 2)");
  cable_cmd->add_flag("--assume-large-n", o.assume_large_n, "treat n as large enough");
  cable_cmd->add_option("--format", o.format)->check(CLI::IsMember(formats));
  cable_cmd->add_option("--output", o.output, "write the table as JSON");

  auto* alex_cmd = app.add_subcommand("alexander", "Alexander polynomial");
  alex_cmd->add_option("--input", o.input, "table or complex file");
  alex_cmd->add_option("--torus", o.torus, "p q")->expected(2);
  alex_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"grid", "text", "json"}));
  alex_cmd->add_option("--output", o.output, "write to a file");

  auto* verify_cmd = app.add_subcommand("verify", "run all consistency checks on a complex");
  verify_cmd->add_option("--input", o.input, "complex file")->required();
  verify_cmd->add_option("--p", o.p, "cabling parameter p >= 2");
  verify_cmd->add_option("--n", o.n, "nonzero n");
  verify_cmd->add_option("--c-prime", o.c_prime, "the constant c'");
  verify_cmd->add_flag("--assume-large-n", o.assume_large_n, "treat n as large enough");

  auto* table_cmd = app.add_subcommand("table", "render a table file");
  table_cmd->add_option("--input", o.input, "table file")->required();
  table_cmd->add_option("--format", o.format)->check(CLI::IsMember(formats));
  table_cmd->add_option("--output", o.output, "write the table as JSON");

  std::vector<std::string> argv_store{"hfk_cable"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  RenderOptions ropt;
  ropt.color = allow_color && std::getenv("HFK_CABLE_NO_COLOR") == nullptr;
  if (o.format == "text") o.format = "grid";

  try {
    if (validate_cmd->parsed()) return detail::cmd_validate(o, out);
    if (homology_cmd->parsed()) return detail::cmd_homology(o, out);
    if (hfk_cmd->parsed()) return detail::cmd_hfk(o, out, ropt);
    if (torus_cmd->parsed()) return detail::cmd_torus(o, out, ropt);
    if (cable_cmd->parsed()) return detail::cmd_cable(o, out, err, ropt);
    if (alex_cmd->parsed()) return detail::cmd_alexander(o, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(o, out, ropt);
    if (table_cmd->parsed()) return detail::cmd_table(o, out, ropt);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InvalidComplex& e) {
    err << "error: " << e.what() << "\n";
    return exit_fail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace hfk::cli

#pragma once

// Command-line front end: seed | mutate | explore | verify | export.  All
// output is machine-readable (JSON, DOT, or a TSV check table); --pretty
// switches JSON to indented form.  Diagnostics are single lines on stderr
// and the exit status is 0 only when the requested work fully succeeded.

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpa/io.hpp"
#include "lpa/verify.hpp"

namespace lpa {
namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("lpa: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("lpa: cannot write " + path);
  out << content;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("lpa: " + source + " is not valid JSON");
  return j;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Comma-separated mutation walk; entries may repeat (unlike an activation
// sequence), each must name a vertex.
inline std::vector<int> parse_walk(int n, const std::string& text) {
  std::vector<int> walk;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      walk.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("lpa: bad sequence entry '" + item + "'");
    }
    if (walk.back() < 1 || walk.back() > n)
      throw ParseError("lpa: sequence entry " + std::to_string(walk.back()) +
                       " out of range for rank " + std::to_string(n));
  }
  if (walk.empty()) throw ParseError("lpa: empty mutation sequence");
  return walk;
}

inline SeedKind parse_kind(const std::string& text) {
  if (text == "linear") return SeedKind::linear;
  if (text == "binomial") return SeedKind::binomial;
  throw ParseError("lpa: unknown kind '" + text + "' (expected linear or binomial)");
}

inline Digraph graph_source(const std::string& path, int complete) {
  if (!path.empty() && complete > 0)
    throw Error("lpa: --graph and --complete are mutually exclusive");
  if (!path.empty()) return digraph_from_json(parse_json_text(read_file(path), path));
  if (complete > 0) return Digraph::complete(complete);
  throw Error("lpa: need a graph (--graph FILE or --complete N)");
}

inline void emit_json(const json& j, bool pretty, std::ostream& out) {
  out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace detail

// Runs one CLI invocation; args exclude the program name.  Streams `out`
// and `err` receive what would go to stdout/stderr.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact mutation engine for graph Laurent phenomenon algebras"};
  app.require_subcommand(1);

  std::string graph_path, kind_text = "binomial", sequence_text, out_path, in_path;
  std::string checks_text;
  int complete = 0, threads = 1;
  std::size_t max_seeds = 10000;
  bool pretty = false, with_seeds = false;

  auto add_graph_flags = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "digraph JSON file");
    cmd->add_option("--complete", complete, "use the complete digraph on N vertices");
    cmd->add_option("--kind", kind_text, "seed kind: linear or binomial")
        ->default_str("binomial");
  };

  CLI::App* seed_cmd = app.add_subcommand("seed", "print the initial seed of a digraph");
  add_graph_flags(seed_cmd);
  seed_cmd->add_flag("--pretty", pretty, "indent JSON output");

  CLI::App* mutate_cmd = app.add_subcommand("mutate", "mutate the initial seed along a walk");
  add_graph_flags(mutate_cmd);
  mutate_cmd->add_option("--sequence", sequence_text, "comma-separated mutation directions")
      ->required();
  mutate_cmd->add_flag("--pretty", pretty, "indent JSON output");

  CLI::App* explore_cmd = app.add_subcommand("explore", "build the exchange graph");
  add_graph_flags(explore_cmd);
  explore_cmd->add_option("--out", out_path, "output file (.dot for DOT, else JSON)");
  explore_cmd->add_option("--max-seeds", max_seeds, "vertex limit before truncation");
  explore_cmd->add_option("--threads", threads, "worker hint (exploration is deterministic)");
  explore_cmd->add_flag("--with-seeds", with_seeds, "embed full seeds in graph JSON");
  explore_cmd->add_flag("--pretty", pretty, "indent JSON output");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_option("--complete", complete, "rank of the complete digraph")->required();
  verify_cmd->add_option("--checks", checks_text,
                         "comma list: counts,thm42,prop33,cor43,lem32,lem41,thm45,iso,"
                         "involution,commutation,laurent");

  CLI::App* export_cmd = app.add_subcommand("export", "convert stored graph JSON to DOT");
  export_cmd->add_option("--in", in_path, "graph JSON file")->required();
  export_cmd->add_option("--out", out_path, "DOT output file (default stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (seed_cmd->parsed()) {
      Seed s = initial_seed(detail::graph_source(graph_path, complete),
                            detail::parse_kind(kind_text));
      detail::emit_json(seed_to_json(s), pretty, out);
      return 0;
    }

    if (mutate_cmd->parsed()) {
      Digraph g = detail::graph_source(graph_path, complete);
      Seed s = initial_seed(g, detail::parse_kind(kind_text));
      for (int ell : detail::parse_walk(g.n(), sequence_text)) s = mutate(s, ell - 1);
      detail::emit_json(seed_to_json(s), pretty, out);
      return 0;
    }

    if (explore_cmd->parsed()) {
      SeedKind kind = detail::parse_kind(kind_text);
      ExchangeGraph g =
          explore(initial_seed(detail::graph_source(graph_path, complete), kind), max_seeds);
      SequenceLabeling labels;
      if (!g.truncated()) labels = label_by_sequences(g);
      const SequenceLabeling* lab = labels.ok ? &labels : nullptr;
      if (!out_path.empty() && detail::ends_with(out_path, ".dot")) {
        detail::write_file(out_path, graph_to_dot(g, kind, lab));
      } else {
        json doc = graph_to_json(g, kind, lab, with_seeds);
        if (out_path.empty()) {
          detail::emit_json(doc, pretty, out);
        } else {
          detail::write_file(out_path, (pretty ? doc.dump(2) : doc.dump()) + "\n");
        }
      }
      if (g.truncated()) err << "lpa: exploration truncated at " << max_seeds << " seeds\n";
      return 0;
    }

    if (verify_cmd->parsed()) {
      int n = complete;
      if (n < 1) throw Error("lpa: --complete must be positive");
      std::vector<std::string> tokens;
      if (checks_text.empty()) {
        tokens = {"counts", "thm42", "prop33", "cor43",       "lem32",       "lem41",
                  "thm45",  "iso",   "laurent", "involution", "commutation"};
      } else {
        std::string item;
        std::istringstream in(checks_text);
        while (std::getline(in, item, ',')) tokens.push_back(item);
      }
      CheckReport rows;
      auto append = [&rows](CheckReport part) {
        rows.insert(rows.end(), part.begin(), part.end());
      };
      for (const auto& t : tokens) {
        if (t == "counts") {
          append(check_counts(n, SeedKind::binomial));
          append(check_counts(n, SeedKind::linear));
        } else if (t == "thm42") {
          append(check_thm42(n));
        } else if (t == "prop33") {
          append(check_prop33(n));
        } else if (t == "cor43") {
          append(check_cor43(n));
        } else if (t == "lem32") {
          append(check_lem32(n));
        } else if (t == "lem41") {
          append(check_lem41(n));
        } else if (t == "thm45") {
          append(check_thm45(n, SeedKind::binomial));
          append(check_thm45(n, SeedKind::linear));
        } else if (t == "iso") {
          append(check_iso(n));
        } else if (t == "laurent") {
          append(check_laurent(n, SeedKind::binomial));
          append(check_laurent(n, SeedKind::linear));
        } else if (t == "involution") {
          append(check_involution(n, SeedKind::binomial));
          append(check_involution(n, SeedKind::linear));
        } else if (t == "commutation") {
          append(check_commutation(n));
        } else {
          throw Error("lpa: unknown check '" + t + "'");
        }
      }
      for (const auto& r : rows)
        out << r.check << "\t" << r.instance << "\t" << r.detail << "\t"
            << (r.pass ? "PASS" : "FAIL") << "\n";
      return all_pass(rows) ? 0 : 1;
    }

    if (export_cmd->parsed()) {
      std::string dot =
          graph_doc_to_dot(detail::parse_json_text(detail::read_file(in_path), in_path));
      if (out_path.empty())
        out << dot;
      else
        detail::write_file(out_path, dot);
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  err << "lpa: no subcommand\n";
  return 1;
}

}  // namespace lpa

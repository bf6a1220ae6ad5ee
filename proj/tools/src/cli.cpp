#include "mdi_tools/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "mdi/declarations.hpp"
#include "mdi/encoder.hpp"
#include "mdi/features.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/oracle.hpp"
#include "mdi/systemic.hpp"

namespace mdi::cli {

namespace {

// Failure with an exit code and a message that already names its location.
struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsageError, path + ": error: cannot open file"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_network_path(const std::string& path) {
  return path.size() >= 7 && path.ends_with(".sysnet");
}

std::string located(const std::string& path, SourceSpan where, const std::string& what) {
  if (where.line <= 0) return path + ": error: " + what;
  return path + ":" + std::to_string(where.line) + ":" + std::to_string(where.column) +
         ": error: " + what;
}

// Hierarchy and features loaded from a `.decl` or `.sysnet` file. The
// encoding table points into this object, so it is kept on the heap.
struct Grammar {
  std::string path;
  std::optional<Network> network;
  Hierarchy hierarchy;
  FeatureTable features;
  bool has_features = false;
};

std::unique_ptr<Grammar> load(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  try {
    if (is_network_path(path)) {
      Network n = parse_network(text, path);
      Hierarchy h = network_hierarchy(n);
      auto g = std::unique_ptr<Grammar>(new Grammar{path, std::move(n), std::move(h), {}, false});
      return g;
    }
    DeclarationSet decls = parse_declarations(text, path);
    Hierarchy h = Hierarchy::build(decls);
    for (const Warning& w : h.warnings()) {
      err << path << ":" << w.span.line << ":" << w.span.column << ": warning: " << w.message
          << "\n";
    }
    FeatureTable f = validate_features(h, decls.features);
    const bool has = !decls.features.empty();
    return std::unique_ptr<Grammar>(
        new Grammar{path, std::nullopt, std::move(h), std::move(f), has});
  } catch (const ParseError& e) {
    throw Failure{kUsageError, located(path, e.where(), e.message())};
  } catch (const HierarchyError& e) {
    throw Failure{kUsageError, located(path, e.where(), e.message())};
  } catch (const Error& e) {
    throw Failure{kUsageError, path + ": error: " + e.what()};
  }
}

TypeConj conj_arg(const Grammar& g, const std::string& text, const char* option) {
  try {
    return parse_conj(g.hierarchy, text);
  } catch (const Error& e) {
    throw Failure{kUsageError, std::string(option) + ": error: " + e.what()};
  }
}

EncodingTable compile(const Grammar& g, bool with_features) {
  if (with_features) {
    return EncodingTable::compile(g.hierarchy, EncodingMode::kFeatureStructures, &g.features);
  }
  return EncodingTable::compile(g.hierarchy);
}

int cmd_check(const Grammar& g, std::ostream& out) {
  out << "ok: " << g.hierarchy.size() << " types, " << g.hierarchy.dimensions().size()
      << " dimensions, " << g.features.features().size() << " features, root "
      << g.hierarchy.name(g.hierarchy.root()) << "\n";
  return kOk;
}

int cmd_encode(const Grammar& g, const std::string& type, bool features, std::ostream& out) {
  const TypeConj c = conj_arg(g, type, "--type");
  const EncodingTable tab = compile(g, features);
  auto t = encode(tab, c);
  if (!t) {
    out << "INCONSISTENT\n";
    return kExpectedFailure;
  }
  out << to_string(*t) << "\n";
  return kOk;
}

int cmd_conj(const Grammar& g, const std::string& a, const std::string& b, std::ostream& out,
             std::ostream& err) {
  const TypeConj ca = conj_arg(g, a, "--a");
  const TypeConj cb = conj_arg(g, b, "--b");
  auto c = conjoin(g.hierarchy, ca, cb);
  if (!c) {
    std::vector<TypeId> all = ca.members();
    all.insert(all.end(), cb.members().begin(), cb.members().end());
    if (auto clash = find_clash(g.hierarchy, all)) {
      err << "clash: " << g.hierarchy.name(clash->first) << " and "
          << g.hierarchy.name(clash->second) << " share a dimension\n";
    }
    out << "INCONSISTENT\n";
    return kExpectedFailure;
  }
  out << to_string(g.hierarchy, *c) << "\n";
  return kOk;
}

int cmd_convert(const std::string& path, const std::string& out_path, std::ostream& out) {
  const std::string text = read_file(path);
  LiftedNetwork lifted;
  DeclarationSet decls;
  try {
    lifted = lift_disjunctions(parse_network(text, path));
    decls = translate(lifted);
    Hierarchy::build(decls);  // reject output the hierarchy module would not accept
  } catch (const ParseError& e) {
    throw Failure{kUsageError, located(path, e.where(), e.message())};
  } catch (const Error& e) {
    throw Failure{kUsageError, path + ": error: " + e.what()};
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Failure{kUsageError, out_path + ": error: cannot write file"};
  file << "% Translated from " << path << "\n" << to_text(decls);
  if (!file.flush()) throw Failure{kUsageError, out_path + ": error: write failed"};

  out << "lifted " << lifted.pairs.size() << " disjunctive entry condition"
      << (lifted.pairs.size() == 1 ? "" : "s") << "\n";
  for (const LiftedPair& p : lifted.pairs) {
    out << "  " << p.target << ": [" << p.positive;
    if (!p.negative.empty()) out << "," << p.negative;
    out << "] replaces system " << p.host << "\n";
  }
  out << "wrote " << decls.subtypes.size() << " declarations to " << out_path << "\n";
  return kOk;
}

int cmd_count(const Grammar& g, std::ostream& out) {
  out << count_possibilities(g.hierarchy) << "\n";
  return kOk;
}

int cmd_stats(const Grammar& g, bool features, std::ostream& out) {
  const Hierarchy& h = g.hierarchy;
  const EncodingTable tab = compile(g, features);
  std::size_t max_arity = 0;
  std::size_t max_symbols = 0;
  std::size_t width = 4;
  for (TypeId t : h.types()) width = std::max(width, h.name(t).size());
  out << std::left;
  for (TypeId t : h.types()) {
    const std::size_t symbols = symbol_count(tab.instantiate(t));
    const std::size_t arity = tab.layout(t).arity();
    max_arity = std::max(max_arity, arity);
    max_symbols = std::max(max_symbols, symbols);
    out << h.name(t) << std::string(width + 2 - h.name(t).size(), ' ') << "arity " << arity
        << "  symbols " << symbols << "\n";
  }
  out << "types " << h.size() << "\n";
  out << "max arity " << max_arity << "\n";
  out << "max symbols " << max_symbols << "\n";
  return kOk;
}

int cmd_oracle(const Grammar& g, const std::vector<std::string>& corruptions, bool complete,
               unsigned threads, const std::string& format, std::ostream& out) {
  const Hierarchy& h = g.hierarchy;
  EncodingTable tab = compile(g, false);
  for (const std::string& spec : corruptions) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw Failure{kUsageError, "--corrupt: error: expected TYPE=FUNCTOR, got '" + spec + "'"};
    }
    const auto t = h.find(spec.substr(0, eq));
    if (!t) throw Failure{kUsageError, "--corrupt: error: unknown type '" + spec.substr(0, eq) + "'"};
    tab = tab.with_functor(*t, spec.substr(eq + 1));
  }
  oracle::FaithfulnessOptions opts;
  opts.complete_pairs = complete;
  opts.threads = threads;
  oracle::FaithfulnessReport r;
  try {
    r = oracle::check_faithfulness(h, tab, opts);
  } catch (const Error& e) {
    throw Failure{kUsageError, g.path + ": error: " + e.what()};
  }
  out << (format == "lines" ? oracle::format_lines(h, r) : oracle::format_text(h, r));
  return r.faithful() ? kOk : kInternalError;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile and check multi-dimensional type hierarchies", "mdi"};
  app.require_subcommand(1);

  std::string file;
  std::string type;
  std::string a;
  std::string b;
  std::string out_path;
  std::string format = "text";
  std::vector<std::string> corruptions;
  bool features = false;
  bool complete = false;
  unsigned threads = 1;

  auto* check = app.add_subcommand("check", "Validate declarations and feature introductions");
  check->add_option("FILE", file, "Declaration (.decl) or network (.sysnet) file")->required();

  auto* enc = app.add_subcommand("encode", "Print the term encoding a conjunction of types");
  enc->add_option("FILE", file)->required();
  enc->add_option("--type", type, "Conjunction such as \"t1 & t2\"")->required();
  enc->add_flag("--features", features, "Include feature and equality slots");

  auto* conj = app.add_subcommand("conj", "Conjoin two type conjunctions");
  conj->add_option("FILE", file)->required();
  conj->add_option("--a", a)->required();
  conj->add_option("--b", b)->required();

  auto* convert = app.add_subcommand("convert", "Translate a systemic network to declarations");
  convert->add_option("NET", file, "Network file")->required();
  convert->add_option("--out", out_path, "Output declaration file")->required();

  auto* count = app.add_subcommand("count", "Count complete instantiations");
  count->add_option("FILE", file)->required();

  auto* stats = app.add_subcommand("stats", "Per-type arity and symbol counts");
  stats->add_option("FILE", file)->required();
  stats->add_flag("--features", features, "Include feature and equality slots");

  auto* orc = app.add_subcommand("oracle", "Check the encoding against brute-force semantics");
  orc->add_option("FILE", file)->required();
  orc->add_option("--corrupt", corruptions, "Rename TYPE's functor to FUNCTOR before checking")
      ->type_name("TYPE=FUNCTOR");
  orc->add_flag("--complete", complete, "Also check all pairs of complete instantiations");
  orc->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
  orc->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "lines"}));

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (convert->parsed()) return cmd_convert(file, out_path, out);
    auto g = load(file, err);
    if (check->parsed()) return cmd_check(*g, out);
    if (enc->parsed()) return cmd_encode(*g, type, features, out);
    if (conj->parsed()) return cmd_conj(*g, a, b, out, err);
    if (count->parsed()) return cmd_count(*g, out);
    if (stats->parsed()) return cmd_stats(*g, features, out);
    if (orc->parsed()) return cmd_oracle(*g, corruptions, complete, threads, format, out);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "mdi: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace mdi::cli

#include "qg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qg/cache.hpp"
#include "qg/collapse.hpp"
#include "qg/errors.hpp"
#include "qg/identity.hpp"
#include "qg/kunen.hpp"
#include "qg/report.hpp"
#include "qg/search.hpp"
#include "qg/table_io.hpp"

namespace qg::cli {

namespace {

using report::Format;
using report::Json;

constexpr const char* kCacheEnv = "QG_CACHE_DIR";

struct RunConfig {
  std::string table_path;
  std::vector<std::string> identities;
  std::vector<std::string> identity_files;
  std::vector<std::string> required;
  std::vector<std::string> forbidden;
  std::size_t order = 0;
  std::size_t max_order = kDefaultMaxOrder;
  bool exhaustive = false;
  bool force_n1 = false;
  bool reduced = false;
  bool up_to_iso = false;
  bool no_latin = false;
  bool no_identity_element = false;
  bool up_to_order = false;
  bool expect_none = false;
  std::optional<std::uint64_t> limit;
  std::string family = "left";
  Format format = Format::Table;
  std::string cache_dir;
  std::size_t parallel = 1;
};

std::vector<Identity> parse_all(const std::vector<std::string>& exprs) {
  std::vector<Identity> out;
  for (const auto& e : exprs) {
    try {
      out.push_back(parse_identity(e));
    } catch (const SyntaxError& ex) {
      throw InputError("identity \"" + e + "\": " + ex.what());
    }
  }
  return out;
}

std::vector<Identity> read_identity_files(const std::vector<std::string>& paths) {
  std::vector<Identity> out;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    for (auto& id : read_identities(in, path)) out.push_back(std::move(id));
  }
  return out;
}

SearchSpec make_spec(const RunConfig& cfg, std::size_t order) {
  SearchSpec spec;
  spec.order = order;
  spec.max_order = cfg.max_order;
  spec.require_latin = !cfg.no_latin;
  spec.required_identities = parse_all(cfg.required);
  for (auto& id : read_identity_files(cfg.identity_files)) spec.required_identities.push_back(std::move(id));
  spec.forbidden_identities = parse_all(cfg.forbidden);
  spec.forbid_identity_element = cfg.no_identity_element;
  spec.reduced_only = cfg.reduced;
  spec.up_to_iso = cfg.up_to_iso;
  spec.limit = cfg.limit;
  spec.workers = cfg.parallel;
  return spec;
}

std::optional<EnumerationCache> open_cache(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return EnumerationCache(cfg.cache_dir);
  if (const char* env = std::getenv(kCacheEnv); env && *env) return EnumerationCache(env);
  return std::nullopt;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto table = read_table_file(cfg.table_path);
  auto ids = parse_all(cfg.identities);
  for (auto& id : read_identity_files(cfg.identity_files)) ids.push_back(std::move(id));
  if (ids.empty()) throw InputError("check needs --identity or --identity-file");

  std::vector<HoldsVerdict> verdicts;
  for (const auto& id : ids) verdicts.push_back(holds(table, id));
  const bool all_hold = std::all_of(verdicts.begin(), verdicts.end(), [](const HoldsVerdict& v) { return v.holds; });

  if (cfg.format == Format::Structured) {
    if (ids.size() == 1) {
      out << report::dump(report::to_json(verdicts[0], ids[0]));
    } else {
      Json doc;
      doc["kind"] = "holds_verdicts";
      doc["all_hold"] = all_hold;
      Json list = Json::array();
      for (std::size_t i = 0; i < ids.size(); ++i) list.push_back(report::to_json(verdicts[i], ids[i]));
      doc["verdicts"] = list;
      out << report::dump(doc);
    }
  } else if (ids.size() == 1) {
    out << report::render_holds(verdicts[0]);
  } else {
    for (std::size_t i = 0; i < ids.size(); ++i) out << to_string(ids[i]) << ": " << report::render_holds(verdicts[i]);
  }
  return all_hold ? kExitOk : kExitSemanticFailure;
}

bool violates_theorem(const KunenReport& r) { return r.is_quasigroup && r.n1_holds && !r.all_steps_passed(); }

int cmd_kunen_table(const RunConfig& cfg, std::ostream& out) {
  const auto table = read_table_file(cfg.table_path);
  const auto r = verify_kunen(table, {.force_n1 = cfg.force_n1});
  if (cfg.format == Format::Structured) {
    out << report::dump(report::to_json(r));
  } else {
    out << report::render_kunen(r);
    if (!r.is_quasigroup && r.n1_evaluated && r.n1_holds && !r.identity_element)
      out << "note: N1 holds on this non-quasigroup, which has no identity element\n";
  }
  return violates_theorem(r) ? kExitSemanticFailure : kExitOk;
}

int cmd_kunen_exhaustive(const RunConfig& cfg, std::ostream& out) {
  RunConfig n1 = cfg;
  n1.required = {to_string(builtin_n1())};
  n1.forbidden.clear();
  n1.identity_files.clear();
  n1.reduced = n1.up_to_iso = n1.no_latin = n1.no_identity_element = false;
  n1.limit.reset();
  const SearchSpec spec = make_spec(n1, cfg.order);
  const auto cache = open_cache(cfg);
  const auto models = enumerate_cached(spec, cache ? &*cache : nullptr);

  std::uint64_t loops = 0;
  std::uint64_t violations = 0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto r = verify_kunen(models[i]);
    const bool bad = !r.n1_holds || !r.all_steps_passed() || !r.is_loop;
    loops += r.is_loop;
    violations += bad;
    if (cfg.format == Format::Structured) {
      Json row;
      row["index"] = i;
      row["table"] = report::to_json(models[i]);
      row["all_steps_passed"] = r.all_steps_passed();
      row["identity_element"] = r.identity_element ? Json(*r.identity_element) : Json(nullptr);
      if (bad) row["report"] = report::to_json(r);
      rows.push_back(row);
    } else {
      out << "model " << i << ": " << (bad ? "VIOLATION" : "ok") << ", identity "
          << (r.identity_element ? std::to_string(*r.identity_element) : "none") << ", steps passed "
          << std::count_if(r.steps.begin(), r.steps.end(), [](const StepResult& s) { return s.passed; }) << "/"
          << kAllSteps.size() << '\n';
    }
  }
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["kind"] = "kunen_exhaustive";
    doc["order"] = cfg.order;
    doc["n1_models"] = models.size();
    doc["loops"] = loops;
    doc["violations"] = violations;
    doc["models"] = rows;
    out << report::dump(doc);
  } else {
    out << "N1 models: " << models.size() << ", loops: " << loops << ", violations: " << violations << '\n';
  }
  return violations == 0 ? kExitOk : kExitSemanticFailure;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const SearchSpec spec = make_spec(cfg, cfg.order);
  std::vector<CayleyTable> tables;
  const auto cache = open_cache(cfg);
  if (cache && !spec.limit) {
    tables = enumerate_cached(spec, &*cache);
  } else if (cfg.format == Format::Table) {
    // Stream without materializing.
    bool first = true;
    enumerate(spec, [&](const CayleyTable& t) {
      if (!first) out << "---\n";
      first = false;
      write_table(out, t);
      return true;
    });
    return kExitOk;
  } else {
    tables = enumerate_all(spec);
  }
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["kind"] = "tables";
    doc["order"] = cfg.order;
    doc["count"] = tables.size();
    Json list = Json::array();
    for (const auto& t : tables) list.push_back(report::to_json(t));
    doc["tables"] = list;
    out << report::dump(doc);
  } else {
    write_tables(out, tables);
  }
  return kExitOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const SearchSpec spec = make_spec(cfg, cfg.order);
  const auto c = count_models(spec);
  if (cfg.format == Format::Structured) {
    out << report::dump(report::to_json(c, spec));
  } else {
    out << "raw: " << c.raw << '\n';
    if (c.iso_classes) out << "iso classes: " << *c.iso_classes << '\n';
  }
  return kExitOk;
}

int cmd_collapse(const RunConfig& cfg, std::ostream& out) {
  const Quasigroup q(read_table_file(cfg.table_path));
  const auto fam = cfg.family == "right" ? right_translations(q) : left_translations(q);
  const auto verdict = collapse_check(j_map(q), fam);
  const auto partition = generated_partition(q.order(), fam);
  if (cfg.format == Format::Structured)
    out << report::dump(report::to_json(verdict, fam, partition));
  else
    out << report::render_collapse(verdict, fam, partition);
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg, std::ostream& out) {
  std::optional<CayleyTable> found;
  for (std::size_t n = cfg.up_to_order ? 1 : cfg.order; n <= cfg.order && !found; ++n)
    found = find_witness(make_spec(cfg, n));
  if (cfg.format == Format::Structured) {
    Json doc;
    doc["kind"] = "witness";
    doc["found"] = found.has_value();
    doc["table"] = found ? report::to_json(*found) : Json(nullptr);
    out << report::dump(doc);
  } else if (found) {
    write_table(out, *found);
  } else {
    out << "NONE\n";
  }
  return found.has_value() == cfg.expect_none ? kExitSemanticFailure : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite quasigroup model engine"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"table", Format::Table},
                                                                         {"structured", Format::Structured}}))
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, std::string("Enumeration cache directory (default $") + kCacheEnv + ")");
  app.add_option("--parallel", cfg.parallel, "Search worker threads")->check(CLI::Range(1, 256));
  app.add_option("--max-order", cfg.max_order, "Largest order the search accepts")->capture_default_str();

  auto* check = app.add_subcommand("check", "Decide an identity on a table");
  check->add_option("--table", cfg.table_path, "Cayley table file")->required();
  check->add_option("--identity", cfg.identities, "Identity, e.g. \"x*(x\\y) = y\"");
  check->add_option("--identity-file", cfg.identity_files, "File with one identity per line");

  auto* kunen = app.add_subcommand("kunen", "Run every step of the N1 => loop argument");
  auto* kunen_table = kunen->add_option("--table", cfg.table_path, "Cayley table file");
  kunen->add_flag("--force-n1", cfg.force_n1, "Evaluate N1 even on non-quasigroups");
  auto* kunen_order = kunen->add_option("--order", cfg.order, "Order for --exhaustive");
  auto* exhaustive = kunen->add_flag("--exhaustive", cfg.exhaustive, "Check every N1 quasigroup of --order");
  exhaustive->needs(kunen_order);
  kunen_table->excludes(exhaustive);

  auto add_search_options = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "Table order")->required();
    sub->add_flag("--no-latin", cfg.no_latin, "Search arbitrary magmas");
    sub->add_flag("--no-identity-element", cfg.no_identity_element, "Only models without a two-sided identity");
    sub->add_option("--forbid", cfg.forbidden, "Identity that must fail");
    sub->add_option("--limit", cfg.limit, "Stop after this many tables");
  };
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Stream matching tables");
  auto* count_cmd = app.add_subcommand("count", "Count matching tables");
  for (auto* sub : {enumerate_cmd, count_cmd}) {
    add_search_options(sub);
    sub->add_option("--identity", cfg.required, "Identity that must hold");
    sub->add_option("--identity-file", cfg.identity_files, "File of identities that must hold");
    auto* reduced = sub->add_flag("--reduced", cfg.reduced, "First row and column fixed");
    auto* iso = sub->add_flag("--up-to-iso", cfg.up_to_iso, "One canonical table per isomorphism class");
    reduced->excludes(iso);
  }

  auto* collapse = app.add_subcommand("collapse", "Collapse check of j against a translation family");
  collapse->add_option("--table", cfg.table_path, "Cayley table file")->required();
  collapse->add_option("--family", cfg.family, "Translation family")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();

  auto* witness = app.add_subcommand("witness", "Find the first table matching the constraints");
  add_search_options(witness);
  witness->add_option("--require", cfg.required, "Identity that must hold");
  witness->add_option("--require-file", cfg.identity_files, "File of identities that must hold");
  witness->add_flag("--up-to", cfg.up_to_order, "Search every order from 1 to --order");
  witness->add_flag("--expect-none", cfg.expect_none, "Exit 1 if a table is found");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*check) return cmd_check(cfg, out);
    if (*kunen) {
      if (cfg.exhaustive) return cmd_kunen_exhaustive(cfg, out);
      if (cfg.table_path.empty()) {
        err << "error: kunen needs --table FILE or --order N --exhaustive\n";
        return kExitInputError;
      }
      return cmd_kunen_table(cfg, out);
    }
    if (*enumerate_cmd) return cmd_enumerate(cfg, out);
    if (*count_cmd) return cmd_count(cfg, out);
    if (*collapse) return cmd_collapse(cfg, out);
    if (*witness) return cmd_witness(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qg::cli

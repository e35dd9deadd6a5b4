// Command-line front end: construct, verify, run, corpus, mutate.
//
// Exit codes: 0 success and no violations, 1 violations found, 2 input or
// I/O error, 3 internal invariant failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "thales/corpus.hpp"
#include "thales/errors.hpp"
#include "thales/harness.hpp"
#include "thales/io.hpp"

using namespace thales;

namespace {

struct Options {
  std::string input;
  std::string corpus;
  bool dedup = false;
  int max_level = 3;
  std::size_t budget = 200;
  std::uint64_t seed = 0;
  bool strict = false;
  unsigned workers = 1;
  std::string circles = "auto";
  std::size_t sample = 0;
  bool no_guard = false;
  std::string mutant = "NONE";
  std::string csv, json, registry, svg, report;
};

std::vector<Point> load_seeds(const Options& o) {
  if (o.input.empty() == o.corpus.empty()) throw InputError("give exactly one of --input and --corpus");
  if (!o.corpus.empty()) return generate_corpus(o.corpus);
  return read_points(o.input, !o.dedup);
}

EngineConfig engine_config(const Options& o) {
  EngineConfig cfg;
  cfg.closure.max_level = o.max_level;
  cfg.closure.point_budget_per_level = o.budget;
  cfg.closure.seed = o.seed;
  cfg.mutant = parse_mutant(o.mutant);
  cfg.antipode_guard = !o.no_guard;
  return cfg;
}

nlohmann::json header(const Options& o, const std::string& mode) {
  return {{"mode", mode},
          {"input", o.input},
          {"corpus", o.corpus},
          {"max_level", o.max_level},
          {"budget", o.budget},
          {"seed", o.seed},
          {"strict", o.strict},
          {"antipode_guard", !o.no_guard},
          {"mutant", o.mutant}};
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.strict = o.strict;
  v.workers = o.workers;
  v.sample_circles = o.sample;
  v.sample_seed = o.seed + 1;
  return v;
}

// Writes the requested dumps. Small runs get every circle materialized so
// the dumps list them all; larger ones list the circles the run touched.
Snapshot finish(Construction& c, const Options& o) {
  const bool dumps = !o.json.empty() || !o.svg.empty() || !o.registry.empty();
  if (dumps && static_cast<std::size_t>(c.reg.point_count()) <= kAllCirclesLimit) materialize_all_circles(c.reg);
  Snapshot snap = snapshot_of(c);
  if (!o.csv.empty()) write_file(o.csv, coloring_csv(snap));
  if (!o.json.empty()) write_file(o.json, coloring_json(snap).dump(1) + "\n");
  if (!o.registry.empty()) write_file(o.registry, registry_jsonl(c.reg));
  return snap;
}

void summarize(const Construction& c, const Snapshot& snap) {
  for (const LevelStats& s : c.levels) {
    std::cerr << "level " << s.level << ": " << s.points << " points, " << s.lines << " new lines, max color " << s.max_color
              << (s.budget_exhausted ? ", budget exhausted" : "") << "\n";
  }
  std::cerr << snap.points.size() << " points, " << snap.lines.size() << " lines, " << c.reg.circles().size()
            << " materialized circles\n";
}

int report_verdict(const Verdict& v, const Snapshot& snap, const Options& o, nlohmann::json report) {
  if (!o.svg.empty()) write_file(o.svg, render_svg(snap, v.witness));
  if (!o.report.empty()) write_file(o.report, report.dump(1) + "\n");
  std::cout << (v.witness ? "monochromatic right triangle found" : "no monochromatic right triangle") << "\n";
  for (const auto& [kind, n] : tally(v.violations)) std::cout << kind << ": " << n << "\n";
  std::cout << v.errors() << " error(s)\n";
  return v.errors() ? 1 : 0;
}

int cmd_construct(const Options& o) {
  Construction c = run_construction(load_seeds(o), engine_config(o));
  const Snapshot snap = finish(c, o);
  summarize(c, snap);
  if (o.csv.empty()) std::cout << coloring_csv(snap);
  if (!o.svg.empty()) write_file(o.svg, render_svg(snap));
  if (!o.report.empty()) {
    nlohmann::json r{{"config", header(o, "construct")}, {"points", snap.points.size()}, {"lines", snap.lines.size()}};
    write_file(o.report, r.dump(1) + "\n");
  }
  return 0;
}

int cmd_run(const Options& o, const std::string& mode) {
  const auto t0 = std::chrono::steady_clock::now();
  Construction c = run_construction(load_seeds(o), engine_config(o));
  const Snapshot snap = finish(c, o);
  summarize(c, snap);
  const Verdict v = verify(snap, verify_options(o), o.circles);
  nlohmann::json r = report_json(header(o, mode), c, snap, v);
  r["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report_verdict(v, snap, o, std::move(r));
}

int cmd_verify(const Options& o) {
  if (o.input.empty()) throw InputError("verify needs --input with a coloring JSON document");
  std::ifstream in(o.input);
  if (!in) throw IoError("cannot read " + o.input);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(o.input + ": " + e.what());
  }
  const Snapshot snap = snapshot_from_json(doc);
  const Verdict v = verify(snap, verify_options(o), o.circles == "auto" ? "listed" : o.circles);
  nlohmann::json violations = nlohmann::json::array();
  for (const Violation& x : v.violations) violations.push_back(to_json(x, snap));
  nlohmann::json r{{"config", header(o, "verify")},
                   {"points", snap.points.size()},
                   {"all_circles_checked", v.all_circles},
                   {"witness", v.witness ? to_json(*v.witness, snap) : nlohmann::json(nullptr)},
                   {"errors", v.errors()},
                   {"tally", tally(v.violations)},
                   {"violations", violations}};
  return report_verdict(v, snap, o, std::move(r));
}

int cmd_corpus(const Options& o) {
  const std::string text = serialize_points(load_seeds(o));
  if (o.csv.empty()) {
    std::cout << text;
  } else {
    write_file(o.csv, text);
  }
  return 0;
}

int cmd_mutate(const Options& o) {
  if (o.mutant == "NONE") throw InputError("mutate needs --mutant");
  Construction c = run_construction(load_seeds(o), engine_config(o));
  const Snapshot snap = finish(c, o);
  const Verdict v = verify(snap, verify_options(o), o.circles);
  MutationStats s;
  s.mutant = c.state.mutant;
  s.points = snap.points.size();
  s.witness = v.witness;
  s.counts = tally(v.violations);
  if (v.witness) ++s.counts[to_string(ViolationKind::mono_right_triangle)];
  s.errors = v.errors();
  std::cout << to_json(s, snap).dump(1) << "\n";
  return report_verdict(v, snap, o, report_json(header(o, "mutate"), c, snap, v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right-angle-free coloring construction and verifier"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "Point file (one 'x,y' per line)");
    sub->add_option("--corpus", o.corpus, "grid:N | random:N:SEED:DENOM | circle:N:SEED");
    sub->add_flag("--dedup", o.dedup, "Drop repeated input points instead of failing");
  };
  auto add_engine = [&](CLI::App* sub) {
    add_input(sub);
    sub->add_option("--max-level", o.max_level, "Number of levels")->check(CLI::PositiveNumber);
    sub->add_option("--budget", o.budget, "Derived points per level");
    sub->add_option("--seed", o.seed, "Batch enumeration seed (0 keeps derivation order)");
    sub->add_flag("--no-antipode-guard", o.no_guard, "Disable the antipode guard");
    sub->add_option("--csv", o.csv, "Coloring CSV (stdout for construct when omitted)");
    sub->add_option("--json", o.json, "Coloring JSON with palettes");
    sub->add_option("--registry", o.registry, "Registry dump, JSON lines");
  };
  auto add_verify = [&](CLI::App* sub) {
    sub->add_flag("--strict", o.strict, "Points on two older curves are errors");
    sub->add_option("--workers", o.workers, "Oracle worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--circles", o.circles, "all | listed | auto")->check(CLI::IsMember({"all", "listed", "auto"}));
    sub->add_option("--sample-circles", o.sample, "In listed mode, also check this many random circles");
    sub->add_option("--report", o.report, "JSON report path");
  };

  auto* construct = app.add_subcommand("construct", "Run the construction and dump the coloring");
  add_engine(construct);
  construct->add_option("--emit-svg", o.svg, "SVG plot");
  construct->add_option("--report", o.report, "JSON report path");

  auto* run = app.add_subcommand("run", "Construct, then verify");
  add_engine(run);
  add_verify(run);
  run->add_option("--emit-svg", o.svg, "SVG plot with the witness highlighted");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a coloring JSON document");
  verify_cmd->add_option("-i,--input", o.input, "Coloring JSON (from construct --json)")->required();
  add_verify(verify_cmd);
  verify_cmd->add_option("--emit-svg", o.svg, "SVG plot with the witness highlighted");

  auto* corpus = app.add_subcommand("corpus", "Print a generated point set");
  corpus->add_option("spec", o.corpus, "grid:N | random:N:SEED:DENOM | circle:N:SEED")->required();
  corpus->add_option("-o,--out", o.csv, "Output file");

  auto* mutate = app.add_subcommand("mutate", "Construct with one enforcement disabled, then verify");
  add_engine(mutate);
  add_verify(mutate);
  mutate->add_option("--mutant", o.mutant, "GAP_RULE | COND_7 | COND_12 | PHI_CASES | ALL")->required();
  mutate->add_option("--emit-svg", o.svg, "SVG plot with the witness highlighted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*construct) return cmd_construct(o);
    if (*run) return cmd_run(o, "run");
    if (*verify_cmd) return cmd_verify(o);
    if (*corpus) return cmd_corpus(o);
    if (*mutate) return cmd_mutate(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ArithmeticError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

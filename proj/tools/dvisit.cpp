// Command-line front end: visit, homog and check subcommands.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dvisit/dsl.hpp"
#include "dvisit/erdos.hpp"
#include "dvisit/suites.hpp"
#include "dvisit/visit.hpp"

namespace {

using namespace dvisit;

constexpr int exit_ok = 0;
constexpr int exit_failed_property = 1;
constexpr int exit_config = 2;
constexpr int exit_unverified = 3;

struct RunConfig {
  std::string tree;
  std::string coloring;
  std::string builtin_name;
  std::string table;
  std::size_t k = 2;
  std::size_t horizon = 100;
  std::size_t budget = 1000;
  std::string priority;
  std::string root;
  bool strict = false;
  std::string emit = "json";
  std::string out;
  std::string trace;
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::size_t cases = 100;
};

std::string output_path(const std::string& explicit_path, const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv("DVISIT_OUT_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / default_name).string();
  return default_name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::InvalidInput, "failed writing " + path);
}

ColorTree resolve_tree(const std::string& source) {
  if (source == "unary") return ColorTree::all_words(1);
  if (source.rfind("all:", 0) == 0) return ColorTree::all_words(std::stoul(source.substr(4)));
  if (source.rfind("full:", 0) == 0) {
    const auto rest = source.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "expected full:<k>:<depth>");
    return ColorTree::full(std::stoul(rest.substr(0, colon)), std::stoul(rest.substr(colon + 1)));
  }
  return load_tree_file(source);
}

/// The priority must be a permutation of 0..k-1; defaults to the identity.
PriorityList resolve_priority(const std::string& text, std::size_t k) {
  if (text.empty()) return PriorityList::identity(k);
  PriorityList priority(parse_color_list(text), k);
  if (priority.size() != k)
    throw Error(ErrorKind::InvalidInput, "priority " + priority.str() + " must list each of the " +
                                             std::to_string(k) + " colors exactly once");
  return priority;
}

std::string census_text(const std::vector<std::size_t>& counts) {
  std::string out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (c) out += ' ';
    out += std::to_string(c) + ":" + std::to_string(counts[c]);
  }
  return out;
}

int cmd_visit(const RunConfig& cfg) {
  const ColorTree tree = resolve_tree(cfg.tree);
  const PriorityList priority = resolve_priority(cfg.priority, tree.k());
  const ColorWord root = parse_word(cfg.root);
  const Visit visit = enumerate_visit(tree, priority, root, cfg.budget);
  const auto branch = branch_approx(visit.order);

  if (cfg.emit == "json") write_file(output_path(cfg.out, "visit.json"), visit_trace_json(visit));
  if (cfg.emit == "dot") write_file(output_path(cfg.out, "visit.dot"), visit_to_dot(visit));
  std::cout << "entries: " << visit.order.size() << "\n"
            << "terminated: " << (visit.terminated ? "true" : "false") << "\n"
            << "branch: " << branch.back().str() << "\n"
            << "visit census: " << census_text(visit_census(tree.k(), visit.order).counts) << "\n"
            << "branch census: " << census_text(branch_census(tree.k(), branch).counts) << "\n";
  return exit_ok;
}

Coloring resolve_coloring(const RunConfig& cfg) {
  const int sources = !cfg.coloring.empty() + !cfg.builtin_name.empty() + !cfg.table.empty();
  if (sources != 1) throw Error(ErrorKind::InvalidInput, "give exactly one of --coloring, --builtin, --table");
  if (!cfg.coloring.empty()) return DslColoring(parse(cfg.coloring), cfg.k, cfg.strict).to_coloring();
  if (!cfg.builtin_name.empty()) return builtin(cfg.builtin_name, cfg.k);
  return builtin("table:" + cfg.table, cfg.k);
}

int cmd_homog(const RunConfig& cfg) {
  const Coloring coloring = resolve_coloring(cfg);
  const PriorityList priority = resolve_priority(cfg.priority, cfg.k);
  const PipelineResult run = homog_pipeline(coloring, cfg.horizon, cfg.budget, priority);

  if (cfg.emit == "json") write_file(output_path(cfg.out, "report.json"), report_to_json(run.report));
  if (cfg.emit == "dot") write_file(output_path(cfg.out, "erdos.dot"), erdos_to_dot(run.tree, run.report));
  if (!cfg.trace.empty()) write_file(cfg.trace, visit_trace_json(run.visit));

  std::cout << "coloring: " << coloring.name() << " (k=" << cfg.k << ", N=" << cfg.horizon
            << ", budget=" << cfg.budget << ")\n"
            << "visit: " << run.visit.order.size() << " entries, terminated="
            << (run.visit.terminated ? "true" : "false") << "\n"
            << "branch length: " << run.report.branch.size() << "\n";
  for (std::size_t c = 0; c < run.report.h.size(); ++c)
    std::cout << "|H" << c << "| = " << run.report.h[c].size() << "\n";
  std::cout << "verified: " << (run.report.verified ? "true" : "false") << "\n";
  if (!run.report.verified) {
    std::cerr << "error: extracted sets are not monochromatic\n";
    return exit_unverified;
  }
  return exit_ok;
}

int cmd_check(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) {
      std::cerr << "error: unknown suite '" << cfg.suite << "'\n";
      return exit_config;
    }
    names = {cfg.suite};
  }
  bool all_passed = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, cfg.seed, cfg.cases);
    std::cout << name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.cases << " cases)\n";
    if (!r.passed) {
      all_passed = false;
      std::cerr << name << " counterexample: " << r.counterexample << "\n";
    }
  }
  return all_passed ? exit_ok : exit_failed_property;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Priority-driven visits of color trees and homogeneous sets from Erdos trees"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* visit = app.add_subcommand("visit", "Enumerate the complete visit of a color tree");
  visit->add_option("--tree", cfg.tree, "Tree JSON file, or unary | all:<k> | full:<k>:<depth>")->required();
  visit->add_option("--priority", cfg.priority, "Comma-separated colors, lowest priority first");
  visit->add_option("--root", cfg.root, "Root word as comma-separated colors (default: empty word)");
  visit->add_option("--budget", cfg.budget, "Maximum number of entries")->check(CLI::PositiveNumber);
  visit->add_option("--emit", cfg.emit, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
  visit->add_option("--out", cfg.out, "Output file (default: $DVISIT_OUT_DIR/visit.json)");

  auto* homog = app.add_subcommand("homog", "Extract homogeneous sets for a coloring of pairs");
  homog->add_option("--coloring", cfg.coloring, "Expression over x and y");
  homog->add_option("--builtin", cfg.builtin_name, "constant:<i> | sum-mod | diff-mod | block:<b> | table:<file>");
  homog->add_option("--table", cfg.table, "Table coloring JSON file");
  homog->add_option("--k", cfg.k, "Number of colors")->check(CLI::PositiveNumber);
  homog->add_option("--horizon", cfg.horizon, "Number of naturals N")->check(CLI::PositiveNumber);
  homog->add_option("--budget", cfg.budget, "Maximum visit length")->check(CLI::PositiveNumber);
  homog->add_option("--priority", cfg.priority, "Comma-separated colors, lowest priority first");
  homog->add_flag("--strict", cfg.strict, "Division by zero is an error instead of t/0=0, t%0=t");
  homog->add_option("--emit", cfg.emit, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
  homog->add_option("--out", cfg.out, "Output file (default: $DVISIT_OUT_DIR/report.json)");
  homog->add_option("--trace", cfg.trace, "Also write the visit trace JSON here");

  auto* check = app.add_subcommand("check", "Run the seeded property suites");
  check->add_option("--suite", cfg.suite, "visits | expansion | erdos | homog | dsl | all");
  check->add_option("--seed", cfg.seed, "Random seed");
  check->add_option("--cases", cfg.cases, "Cases per suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*visit) return cmd_visit(cfg);
    if (*homog) return cmd_homog(cfg);
    return cmd_check(cfg);
  } catch (const dvisit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }
}

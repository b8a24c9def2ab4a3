#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ell/error.hpp"
#include "ell/input.hpp"
#include "ell/oracle.hpp"

using namespace ell;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kNotElliott = 3, kDivergent = 4, kMismatch = 5 };

struct Options {
  std::string order;
  std::string elim_order;
  std::string strategy = "auto";
  bool combine = false;
  bool terms = false;
  bool time = false;
  Exponent series_check = 0;
  bool single_marker = false;
};

struct Job {
  std::string name;
  Problem problem;
  std::optional<ConstraintSystem> system;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

bool same_names(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Job from_system(std::string name, ConstraintSystem sys, const Options& opts, bool early_subst = false) {
  if (!opts.order.empty()) sys.marker_order = split_list(opts.order);
  Problem p = crude_gf(sys);
  if (early_subst) p = presubstitute(std::move(p));
  return {std::move(name), std::move(p), std::move(sys)};
}

Job from_file(const std::string& path, bool expressions, const Options& opts) {
  Document doc = parse_document(read_file(path));
  std::string name = std::filesystem::path(path).stem().string();
  if (!expressions) return from_system(std::move(name), to_system(doc), opts);
  if (!opts.order.empty()) {
    auto order = split_list(opts.order);
    if (!same_names(order, doc.vars)) throw InvalidParams("--order must permute the declared vars");
    doc.vars = std::move(order);
  }
  return {std::move(name), to_problem(doc), std::nullopt};
}

Job from_builtin(const std::string& which, const std::vector<int>& args, const Options& opts) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw InvalidParams("builtin " + which + " takes " + std::to_string(n) + " parameter(s)");
  };
  std::string name = which;
  for (int a : args) name += "_" + std::to_string(a);
  auto plain = [&](Problem p) {
    if (!opts.order.empty()) throw InvalidParams("--order is not available for builtin " + which);
    return Job{name, std::move(p), std::nullopt};
  };
  if (which == "2a3b" || which == "two_a_three_b") return need(0), from_system(name, two_a_three_b(), opts);
  if (which == "triangle") return need(0), from_system(name, triangle(), opts);
  if (which == "kgon") return need(1), plain(kgon(args[0]));
  if (which == "kgon_revisited") return need(1), plain(kgon_revisited(args[0]));
  if (which == "kgon_unordered") return need(1), from_system(name, kgon_unordered(args[0]), opts);
  if (which == "putnam") return need(3), from_system(name, putnam_system(args[0], args[1], args[2]), opts);
  if (which == "magic") return need(1), from_system(name, magic(args[0], opts.single_marker), opts, opts.single_marker);
  if (which == "zeilberger") return need(1), plain(zeilberger(args[0]));
  throw InvalidParams("unknown builtin '" + which + "'");
}

void apply_elim_order(Job& job, const Options& opts, ElimOptions& eo) {
  if (opts.elim_order.empty()) return;
  if (opts.elim_order == "auto") {
    eo.order = OrderPolicy::Heuristic;
    return;
  }
  const auto names = split_list(opts.elim_order);
  std::vector<std::string> current;
  for (const auto& s : job.problem.steps) current.push_back(job.problem.vt.name(s.var));
  if (!same_names(names, current)) throw InvalidParams("--elim-order must permute the omega variables");
  std::vector<Step> steps;
  for (const auto& n : names)
    for (const auto& s : job.problem.steps)
      if (job.problem.vt.name(s.var) == n) steps.push_back(s);
  job.problem.steps = std::move(steps);
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "direct") return Strategy::Direct;
  if (s == "complement") return Strategy::Complement;
  throw InvalidParams("strategy must be auto, direct or complement");
}

int run(Job job, const Options& opts) {
  ElimOptions eo;
  eo.strategy = parse_strategy(opts.strategy);
  apply_elim_order(job, opts, eo);
  if (opts.series_check > 0 && !job.system) throw InvalidParams("--series-check needs a constraint system");

  const auto start = std::chrono::steady_clock::now();
  ERatSum s = solve(job.problem, eo);
  const std::size_t count = s.size();
  if (opts.combine) {
    const ERat c = erat_combine(s);
    s.clear();
    if (!c.is_zero()) s.push_back(c);
  }
  sort_terms(s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const VarTable& vt = job.problem.vt;
  if (!opts.combine || opts.terms) std::cout << "# " << count << (count == 1 ? " term\n" : " terms\n");
  std::cout << format(std::span<const ERat>(s), vt) << "\n";
  if (opts.time) std::cerr << job.name << "," << seconds << "," << count << "\n";

  if (opts.series_check > 0) {
    const bool ok = series_equal(enumerate_solutions(*job.system, opts.series_check), expand_series(s, opts.series_check));
    std::cout << "# series check to degree " << opts.series_check << ": " << (ok ? "ok" : "MISMATCH") << "\n";
    if (!ok) return kMismatch;
  }
  return kOk;
}

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--order", opts.order, "Marker order in the working field, comma separated");
  cmd->add_option("--elim-order", opts.elim_order, "Omega variable order, comma separated, or 'auto'");
  cmd->add_option("--strategy", opts.strategy, "auto, direct or complement");
  cmd->add_flag("--combine", opts.combine, "Combine the result into one fraction");
  cmd->add_flag("--terms", opts.terms, "Print the term count");
  cmd->add_flag("--time", opts.time, "Write name,seconds,terms to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition analysis by iterated partial fractions"};
  app.require_subcommand(1);
  Options opts;
  std::string file;
  std::string builtin_name;
  std::vector<int> builtin_args;

  auto* solve_cmd = app.add_subcommand("solve", "Solve a constraint file");
  solve_cmd->add_option("file", file)->required();
  add_common(solve_cmd, opts);

  auto* elim_cmd = app.add_subcommand("eliminate", "Eliminate the omega variables of an expression file");
  elim_cmd->add_option("file", file)->required();
  add_common(elim_cmd, opts);

  auto* check_cmd = app.add_subcommand("check", "Solve a constraint file and compare with enumeration");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--series-check", opts.series_check, "Truncation degree")->required()->check(CLI::PositiveNumber);
  add_common(check_cmd, opts);

  auto* builtin_cmd = app.add_subcommand("builtin", "Run a named example family");
  builtin_cmd->add_option("name", builtin_name)->required();
  builtin_cmd->add_option("params", builtin_args);
  builtin_cmd->add_option("--series-check", opts.series_check, "Truncation degree")->check(CLI::PositiveNumber);
  builtin_cmd->add_flag("--single-marker", opts.single_marker, "magic: mark every entry with x");
  add_common(builtin_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kOther;
  }

  try {
    if (builtin_cmd->parsed()) return run(from_builtin(builtin_name, builtin_args, opts), opts);
    return run(from_file(file, elim_cmd->parsed(), opts), opts);
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kParse;
  } catch (const NotElliott& e) {
    std::cerr << "not Elliott-rational: " << e.what() << "\n";
    return kNotElliott;
  } catch (const DivergentAtUnity& e) {
    std::cerr << "divergent: " << e.what() << "\n";
    return kDivergent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}

// One line per acceptance criterion. Exit status is nonzero when a gated
// criterion fails; the order-5 magic square is reported but never gates.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "goldens.hpp"
#include "support.hpp"

using namespace ell;
namespace golden = ell::test::golden;

namespace {

// Wall-clock budgets in seconds.
constexpr double kWorkedBudget = 1.0;
constexpr double kTriangleBudget = 1.0;
constexpr double kKgonBudget = 5.0;
constexpr double kKgon7Budget = 60.0;
constexpr double kPutnamBudget = 30.0;
constexpr double kSuiteBudget = 600.0;
constexpr int kMagic5Seconds = 600;
constexpr long kMagic5MemoryKb = 4500000;

constexpr std::size_t kMagic4MaxTerms = 150;
constexpr Exponent kKgon7Degree = 24;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Report {
  int failed = 0;

  void line(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << n << "  " << what << std::endl;
    if (!ok) ++failed;
  }
};

// Runs body, folding any engine error into a failure note.
bool guarded(std::ostringstream& note, const std::function<bool()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    note << " [" << e.what() << "]";
    return false;
  }
}

bool matches(const ERatSum& s, const char* text, const VarTable& vt) {
  const RatFunc r = parse_ratfunc(text, vt);
  return equals_rational(s, r.num, r.den);
}

struct Timed {
  ERatSum result;
  double seconds = 0;
};

Timed timed_solve(const Problem& p) {
  const auto start = Clock::now();
  ERatSum r = solve(p);
  return {std::move(r), seconds_since(start)};
}

std::string secs(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << "s";
  return out.str();
}

// Partitions of n into k positive parts whose largest part is less than the rest.
long polygon_partitions(int n, int k) {
  std::function<long(int, int, int)> count = [&](int left, int parts, int cap) -> long {
    if (parts == 0) return left == 0 ? 1 : 0;
    long total = 0;
    for (int p = std::min(left - parts + 1, cap); p >= 1; --p) total += count(left - p, parts - 1, p);
    return total;
  };
  long total = 0;
  for (int top = 1; 2 * top < n; ++top) total += count(n - top, k - 1, top);
  return total;
}

int shell(const std::string& cmd, std::string* out = nullptr) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::string text;
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
  if (out) *out = std::move(text);
  const int raw = pclose(pipe);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void worked_problem(Report& rep) {
  std::ostringstream note;
  const Problem p = crude_gf(two_a_three_b());
  Timed t;
  const bool ok = guarded(note, [&] {
    t = timed_solve(p);
    return matches(t.result, golden::kTwoAThreeB, p.vt) && t.seconds < kWorkedBudget;
  });
  rep.line(1, ok, "2a >= 3b closed form, " + secs(t.seconds) + note.str());
}

void triangle_orders(Report& rep) {
  std::ostringstream note;
  const Problem base = crude_gf(triangle());
  std::vector<std::vector<Step>> orders{base.steps, {base.steps[2], base.steps[0], base.steps[1]}};
  std::reverse(orders[0].begin(), orders[0].end());
  bool ok = true;
  for (const auto& steps : orders) {
    Problem p = base;
    p.steps = steps;
    ok = guarded(note, [&] {
      const Timed t = timed_solve(p);
      note << " " << secs(t.seconds);
      return matches(t.result, golden::kTriangle, p.vt) && t.seconds < kTriangleBudget;
    }) && ok;
  }
  rep.line(2, ok, "triangle closed form under two orders," + note.str());
}

void kgons(Report& rep) {
  std::ostringstream note;
  bool ok = true;
  for (int k = 3; k <= 6; ++k) {
    ok = guarded(note, [&] {
      const Problem p = kgon(k);
      const Timed t = timed_solve(p);
      note << " k=" << k << ":" << secs(t.seconds);
      return matches(t.result, golden::kKgon[k - 3], p.vt) && t.seconds < kKgonBudget;
    }) && ok;
  }
  ok = guarded(note, [&] {
    const Problem p = kgon(7);
    const Timed t = timed_solve(p);
    note << " k=7:" << secs(t.seconds);
    const TruncatedSeries s = expand_series(t.result, kKgon7Degree);
    std::vector<Term> counts;
    for (int n = 1; n <= kKgon7Degree; ++n)
      if (const long c = polygon_partitions(n, 7); c != 0) counts.emplace_back(c, Monomial::variable(p.vt.at("q"), n));
    return s.terms == LaurentPoly::from_terms(std::move(counts)) && t.seconds < kKgon7Budget;
  }) && ok;
  rep.line(3, ok, "k-gon closed forms k=3..6, k=7 against a partition count," + note.str());
}

void putnams(Report& rep) {
  std::ostringstream note;
  bool ok = true;
  for (const auto& [args, text] : std::vector<std::pair<std::array<int, 3>, const char*>>{
           {{3, 2, 1}, golden::kPutnam321}, {{4, 1, 3}, golden::kPutnam413}}) {
    ok = guarded(note, [&] {
      const Problem p = putnam(args[0], args[1], args[2]);
      const Timed t = timed_solve(p);
      note << " (" << args[0] << "," << args[1] << "," << args[2] << "):" << secs(t.seconds);
      return matches(t.result, text, p.vt) && t.seconds < kPutnamBudget;
    }) && ok;
  }
  for (const auto& args : std::vector<std::array<int, 3>>{{3, 3, 1}, {3, 2, 3}, {3, 1, 3}, {3, 1, 4}, {3, 1, 5}}) {
    ok = guarded(note, [&] {
      const auto start = Clock::now();
      const ConstraintSystem sys = putnam_system(args[0], args[1], args[2]);
      const ERatSum r = solve(crude_gf(sys));
      const bool same = series_equal(enumerate_solutions(sys, 5), expand_series(r, 5));
      const double s = seconds_since(start);
      note << " (" << args[0] << "," << args[1] << "," << args[2] << "):" << secs(s);
      return same && s < kPutnamBudget;
    }) && ok;
  }
  rep.line(4, ok, "Putnam family," + note.str());
}

void unordered_kgons(Report& rep) {
  std::ostringstream note;
  bool ok = true;
  for (int k = 3; k <= 5; ++k) {
    ok = guarded(note, [&] {
      const Problem p = crude_gf(kgon_unordered(k));
      const ERat closed = parse_erat(golden::kgon_unordered(k), p.vt);
      return erat_equal(solve(p), std::span<const ERat>(&closed, 1));
    }) && ok;
  }
  for (int k = 4; k <= 6; ++k) {
    ok = guarded(note, [&] {
      const Problem p = kgon_revisited(k);
      const ERat closed = parse_erat(golden::kgon_revisited(k), p.vt);
      return erat_equal(solve(p), std::span<const ERat>(&closed, 1));
    }) && ok;
  }
  rep.line(5, ok, "unordered k-gons k=3..5, single-lambda model k=4..6" + note.str());
}

void magic_squares(Report& rep, bool stretch) {
  std::ostringstream note;
  bool ok = guarded(note, [&] {
    const ConstraintSystem sys = magic(3);
    return series_equal(enumerate_solutions(sys, 8), expand_series(solve(crude_gf(sys)), 8));
  });
  ok = guarded(note, [&] {
    const ConstraintSystem sys = magic(4);
    const auto start = Clock::now();
    const ERatSum r = solve(crude_gf(sys));
    note << " n=4: " << r.size() << " terms " << secs(seconds_since(start));
    return r.size() <= kMagic4MaxTerms && series_equal(enumerate_solutions(sys, 4), expand_series(r, 4));
  }) && ok;
  rep.line(6, ok, "magic squares n=3 to degree 8, n=4 to degree 4," + note.str());

  if (!stretch) {
    std::cout << "INFO  6  n=5 single marker not attempted (pass --stretch)" << std::endl;
    return;
  }
  const auto start = Clock::now();
  std::string out;
  const int status = shell("ulimit -v " + std::to_string(kMagic5MemoryKb) + "; timeout " +
                               std::to_string(kMagic5Seconds) + " " ELL_CLI " builtin magic 5 --single-marker 2>&1",
                           &out);
  const std::string head = out.substr(0, out.find('\n'));
  std::cout << "INFO  6  n=5 single marker: exit " << status << " after " << secs(seconds_since(start)) << ", "
            << (status == 0 ? head : "did not complete") << std::endl;
}

void zeilbergers(Report& rep) {
  std::ostringstream note;
  bool ok = true;
  for (const auto& [n, value] : std::vector<std::pair<int, long>>{{2, 1}, {3, 2}}) {
    ok = guarded(note, [&] {
      const ERat expected{LaurentPoly(value)};
      return erat_equal(solve(zeilberger(n)), std::span<const ERat>(&expected, 1));
    }) && ok;
  }
  rep.line(7, ok, "constant-term identity n=2 gives 1, n=3 gives 2" + note.str());
}

void property_suites(Report& rep) {
  const std::vector<std::string> binaries{TEST_BINARIES};
  const auto start = Clock::now();
  int properties = 0;
  std::ostringstream note;
  bool ok = true;
  for (const auto& bin : binaries) {
    std::string listing;
    shell(bin + " --list-test-cases --test-case='property*' --no-version", &listing);
    for (std::size_t pos = 0; (pos = listing.find("property", pos)) != std::string::npos; ++pos) ++properties;
    std::string out;
    const int status = shell(bin + " --no-version 2>&1", &out);
    if (status != 0) {
      ok = false;
      note << " " << bin.substr(bin.find_last_of('/') + 1) << " failed";
    }
  }
  const double s = seconds_since(start);
  ok = ok && s < kSuiteBudget;
  rep.line(8, ok, std::to_string(properties) + " property suites, full suite " + secs(s) + note.str());
}

}  // namespace

int main(int argc, char** argv) {
  bool stretch = false;
  for (int i = 1; i < argc; ++i) stretch = stretch || std::strcmp(argv[i], "--stretch") == 0;
  Report rep;
  worked_problem(rep);
  triangle_orders(rep);
  kgons(rep);
  putnams(rep);
  unordered_kgons(rep);
  magic_squares(rep, stretch);
  zeilbergers(rep);
  property_suites(rep);
  std::cout << (rep.failed == 0 ? "all criteria pass" : std::to_string(rep.failed) + " criteria fail") << std::endl;
  return rep.failed == 0 ? 0 : 1;
}

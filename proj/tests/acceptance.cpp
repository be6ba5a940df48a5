// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any criterion fails. argv[1] is the path of the midfix
// executable used by the determinism criterion.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "midfix/cli.hpp"
#include "midfix/dagger.hpp"
#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"
#include "midfix/lattice.hpp"
#include "midfix/sampling.hpp"
#include "midfix/spec_io.hpp"
#include "oracles.hpp"

using namespace midfix;

namespace {

std::string data_path(const std::string& name) { return std::string(MIDFIX_DATA_DIR) + "/" + name; }

template <class T>
T load(const std::string& name) {
  return std::get<T>(parse_spec(std::string_view(read_file(data_path(name)))));
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  // Records the first failure only; later ones are counted.
  void fail(const std::string& what) {
    if (passed) detail << "first failure: " << what << "; ";
    passed = false;
    ++failures;
  }
  std::size_t failures = 0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void galois_exhaustive(Outcome& out) {
  const auto t0 = Clock::now();
  std::size_t lattices = 0;
  std::size_t maps = 0;
  std::size_t pairs = 0;
  for (const FinLattice& l : enumerate_lattices(4)) {
    ++lattices;
    for (const MonotoneMap& f : enumerate_monotone_maps(l)) {
      ++maps;
      const FixpointReport rep = galois_check(f);
      if (!rep.violations.empty()) out.fail("galois_check reported a violation");
      for (Element x = 0; x < l.size(); ++x) {
        if (!l.leq(x, f(x))) continue;
        for (Element y = 0; y < l.size(); ++y) {
          if (!l.leq(f(y), y)) continue;
          ++pairs;
          const bool lhs = l.leq(mu_lattice(f, x), y);
          const bool rhs = l.leq(x, nu_lattice(f, y));
          const bool lhs_oracle = l.leq(oracle::least_fixpoint_above(f, x), y);
          const bool rhs_oracle = l.leq(x, oracle::greatest_fixpoint_below(f, y));
          if (lhs != rhs || lhs_oracle != rhs_oracle || lhs != lhs_oracle)
            out.fail("pair (" + l.label(x) + ", " + l.label(y) + ")");
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) out.fail("runtime " + std::to_string(secs) + " s");
  out.detail << lattices << " lattices, " << maps << " monotone maps, " << pairs
             << " pre/post pairs, " << out.failures << " violations, " << secs << " s";
}

void knaster_tarski(Outcome& out) {
  std::size_t maps = 0;
  for (const FinLattice& l : enumerate_lattices(4)) {
    // Brute-force oracle over every function table, filtered by monotonicity.
    for (const auto& table : oracle::all_functions(l.size())) {
      if (!oracle::is_monotone(l, table)) continue;
      ++maps;
      const MonotoneMap f = check_monotone(table, l);
      std::vector<Element> pre_fixed;  // f(y) <= y
      std::vector<Element> post_fixed;  // x <= f(x)
      for (Element e = 0; e < l.size(); ++e) {
        if (l.leq(f(e), e)) pre_fixed.push_back(e);
        if (l.leq(e, f(e))) post_fixed.push_back(e);
      }
      if (mu_lattice(f, l.bottom()) != oracle::inf(l, pre_fixed)) out.fail("mu from bottom");
      if (nu_lattice(f, l.top()) != oracle::sup(l, post_fixed)) out.fail("nu from top");
    }
  }
  out.detail << maps << " monotone maps (oracle-generated), " << out.failures << " mismatches";
}

void interval_figure(Outcome& out) {
  const IntervalMap im = five_fixpoint_map();
  const std::vector<double> roots = locate_fixpoints(im);
  const std::array<double, 5> exact{0.0, 0.25, 0.5, 0.75, 1.0};
  if (roots.size() != 5) {
    out.fail("located " + std::to_string(roots.size()) + " fixpoints");
  } else {
    for (std::size_t i = 0; i < 5; ++i)
      if (std::abs(roots[i] - exact[i]) > 1e-6) out.fail("root " + std::to_string(roots[i]));
  }
  constexpr double tol = 1e-6;
  std::size_t pre = 0;
  std::size_t post = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i <= im.sample_grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(im.sample_grid);
    const double fx = im.fn(x);
    if (x <= fx) {
      ++pre;
      double target = 1.0;
      for (double r : exact)
        if (r >= x) { target = r; break; }
      const IterationResult it = mu_interval(im, x);
      worst = std::max(worst, std::abs(it.value - target));
      if (!it.converged() || std::abs(it.value - target) > tol)
        out.fail("mu from " + std::to_string(x) + " gave " + std::to_string(it.value));
    }
    if (fx <= x) {
      ++post;
      double target = 0.0;
      for (double r : exact)
        if (r <= x) target = r;
      const IterationResult it = nu_interval(im, x);
      worst = std::max(worst, std::abs(it.value - target));
      if (!it.converged() || std::abs(it.value - target) > tol)
        out.fail("nu from " + std::to_string(x) + " gave " + std::to_string(it.value));
    }
  }
  if (mu_interval(im, 0.0).value != 0.0) out.fail("mu(0) != 0");
  if (nu_interval(im, 1.0).value != 1.0) out.fail("nu(1) != 1");
  out.detail << roots.size() << " fixpoints, " << pre << " pre-fixed and " << post
             << " post-fixed grid points, max error " << worst;
}

void adjunction_random(Outcome& out) {
  const auto t0 = Clock::now();
  Rng rng(1);
  std::size_t rejected = 0;
  const auto instances = random_adjunction_instances(rng, 200, 5, kDefaultTermCap, {3, 2, 3}, &rejected);
  std::size_t homs = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [b, a] = instances[i];
    const AdjunctionReport rep = adjunction_check(b, a, 5, 5, kDefaultTermCap);
    if (rep.checks.size() != 5) out.fail("instance " + std::to_string(i) + " ran fewer checks");
    for (const Check& c : rep.checks)
      if (!c.passed) out.fail("instance " + std::to_string(i) + " " + c.name + ": " + c.witness);
    if (rep.homs.size() != oracle::coalg_to_alg(b, a).size())
      out.fail("instance " + std::to_string(i) + " hom count differs from brute force");
    homs += rep.homs.size();
  }
  const double secs = seconds_since(t0);
  if (instances.size() < 200) out.fail("only " + std::to_string(instances.size()) + " instances");
  if (secs >= 300.0) out.fail("runtime " + std::to_string(secs) + " s");
  out.detail << instances.size() << " instances (" << rejected
             << " draws over the term cap redrawn), " << homs << " homomorphisms, "
             << out.failures << " failures, " << secs << " s";
}

void initial_prefix(Outcome& out) {
  const Coalgebra empty = load<Coalgebra>("empty_nat.json");
  const Coalgebra orbit = load<Coalgebra>("orbit.json");
  const ColimEq empty_eq(empty);
  const ColimEq orbit_eq(orbit);
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t closed = 0;  // |F^n(0)| by the recurrence
    for (std::size_t k = 0; k < n; ++k) closed = oracle::f_size(empty.signature(), closed);
    const std::size_t e = mu_enumerate(empty_eq, n, kDefaultTermCap).size();
    const std::size_t o = mu_enumerate(orbit_eq, n, kDefaultTermCap).size();
    if (closed != n || e != n) out.fail("empty coalgebra at rank " + std::to_string(n));
    if (o != n + 1) out.fail("orbit at rank " + std::to_string(n));
  }
  out.detail << "ranks 1..8, " << out.failures << " mismatches";
}

void terminal_approximants(Outcome& out) {
  std::size_t streams = 0;
  for (const char* name : {"sig_nat.json", "sig_const.json", "sig_streams.json", "sig_lists.json"}) {
    const Signature sig = load<Signature>(name);
    const NuApprox nu = terminal_coalgebra_approx(sig, 8);
    std::vector<std::size_t> expected{1};
    for (std::size_t k = 0; k < 8; ++k) expected.push_back(oracle::f_size(sig, expected.back()));
    if (nu.level_sizes() != expected) out.fail(std::string("level sizes of ") + name);
  }

  // Truncating an unfolding at depth k, with everything from depth k down
  // replaced by the single point of the terminal algebra.
  std::function<Node(const Node&, std::size_t)> truncate = [&](const Node& n, std::size_t k) {
    if (k == 0 || n.is_generator()) return Node::generator(0);
    Node cut{n.kind, n.id, {}};
    for (const auto& c : n.children) cut.children.push_back(truncate(c, k - 1));
    return cut;
  };
  auto check_traces = [&](const Coalgebra& b, const std::string& label) {
    const auto st = oracle::structure_of(b);
    for (std::size_t x = 0; x < b.size(); ++x) {
      ++streams;
      const NuPointStream s = infinite_trace(b, x);
      if (!s.compatible_up_to(8)) out.fail(label + " incompatible");
      const Node deep = oracle::unfold_times(Node::generator(x), st, 8);
      for (std::size_t k = 0; k <= 8; ++k)
        if (s.component(k).root != truncate(deep, k)) out.fail(label + " component mismatch");
    }
  };
  for (const char* name : {"orbit.json", "empty_nat.json", "countdown.json", "stream_automaton.json"})
    check_traces(load<Coalgebra>(name), name);
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Signature sig = random_signature(rng, {3, 2, 3});
    check_traces(random_coalgebra(rng, sig, {3, 2, 3}), "random coalgebra " + std::to_string(i));
  }
  out.detail << "4 signatures to depth 8, " << streams << " trace streams, " << out.failures
             << " failures";
}

void corecursivity(Outcome& out) {
  Rng rng(7);
  std::size_t well_founded = 0;
  for (int i = 0; i < 100; ++i) {
    const std::string tag = "coalgebra " + std::to_string(i);
    const Signature sig = random_signature(rng, {3, 2, 3});
    const Coalgebra b = random_coalgebra(rng, sig, {3, 2, 3});
    const Algebra one = Algebra::terminal(sig);
    if (enumerate_coalg_to_alg(b, one).size() != 1 || oracle::coalg_to_alg(b, one).size() != 1)
      out.fail(tag + " into the terminal algebra");
    const bool wf = is_well_founded(b);
    if (wf == oracle::has_cycle(b)) out.fail(tag + " well-foundedness disagrees with cycle search");
    if (!wf) continue;
    ++well_founded;
    std::vector<Algebra> algebras;
    for (int j = 0; j < 10; ++j) algebras.push_back(random_algebra(rng, sig, {3, 2, 3}));
    const RecursionReport rep = wellfounded_recursive_check(b, algebras);
    if (!rep.passed()) out.fail(tag + " wellfounded_recursive_check");
    for (const Algebra& a : algebras)
      if (oracle::coalg_to_alg(b, a).size() != 1) out.fail(tag + " brute-force hom count");
  }
  out.detail << "100 coalgebras, " << well_founded << " well founded (x10 algebras each), "
             << out.failures << " failures";
}

void dagger_coincidence(Outcome& out) {
  Rng rng(8);
  std::size_t constant = 0;
  std::size_t stabilized = 0;
  for (int i = 0; i < 100; ++i) {
    const std::string tag = "instance " + std::to_string(i);
    const RelEndo f = random_rel_endo(rng, 3);
    const FinSet x = numbered_set(rng.between(0, 3), "x");
    const FinRel c = random_relation(rng, x, f(x));
    const CoincidenceReport rep = coincidence_check(f, c);
    if (!rep.passed()) out.fail(tag + " coincidence_check");
    const RelChain mu = mu_chain(f, c, 10);
    const RelChain nu = nu_chain(f, rel_dagger(c), 10);
    if (mu.objects != nu.objects) out.fail(tag + " chain objects");
    for (std::size_t s = 0; s < std::min(mu.connectors.size(), nu.connectors.size()); ++s)
      if (oracle::matrix(nu.connectors[s]) !=
          oracle::transpose(oracle::matrix(mu.connectors[s]), mu.objects[s + 1].size()))
        out.fail(tag + " stage " + std::to_string(s) + " is not the transpose");
    if (mu.connectors.size() != nu.connectors.size()) out.fail(tag + " chain lengths");
    if (rep.stabilized()) ++stabilized;
    if (f.name == "constant") {
      ++constant;
      if (!rep.stabilized() || rep.mu_stage != rep.nu_stage || !rep.mu_object ||
          rep.mu_object != rep.nu_object || *rep.mu_object != f(x))
        out.fail(tag + " constant functor did not coincide");
    }
  }

  std::vector<FinSet> objects;
  for (std::size_t n = 0; n <= 2; ++n) objects.push_back(numbered_set(n, "x"));
  const auto all = all_relations(objects);
  const DaggerLawsReport laws = dagger_laws_check(all);
  if (!laws.passed()) out.fail("dagger laws");
  for (const FinRel& r : all)
    if (oracle::matrix(rel_dagger(r)) != oracle::transpose(oracle::matrix(r), r.target().size()))
      out.fail("converse is not the transpose");
  out.detail << "100 instances (" << constant << " constant functors, " << stabilized
             << " stabilized), dagger laws on " << all.size() << " relations, "
             << out.failures << " failures";
}

std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) text.append(buf.data(), n);
  return text;
}

void determinism(Outcome& out, const std::string& exe) {
  struct Case {
    RunConfig config;
    std::string args;
  };
  auto make = [](std::string command, std::size_t random, std::vector<std::string> files,
                 std::string extra) {
    Case c;
    c.config.command = command;
    c.config.random = random;
    c.config.seed = 99;
    c.config.format = OutputFormat::Json;
    std::string args = command + " --format json --seed 99";
    if (random > 0) args += " --random " + std::to_string(random);
    for (const auto& f : files) {
      c.config.inputs.push_back(data_path(f));
      args += " " + data_path(f);
    }
    if (extra == "--interval") c.config.interval = true;
    c.args = args + (extra.empty() ? "" : " " + extra);
    return c;
  };
  const std::vector<Case> cases{
      make("adjunction", 20, {}, ""),
      make("rel-coincidence", 20, {}, ""),
      make("rel-dagger", 20, {}, ""),
      make("lattice-fixpoints", 0, {}, "--interval"),
      make("lattice-galois", 0, {}, ""),
      make("mu", 0, {"orbit.json"}, ""),
      make("trace", 0, {"countdown.json", "parity.json"}, ""),
  };
  std::size_t runs = 0;
  for (const Case& c : cases) {
    const RunResult a = run(c.config);
    const RunResult b = run(c.config);
    runs += 2;
    if (a.output != b.output || a.exit_code != b.exit_code) out.fail(c.config.command + " in process");
    if (exe.empty()) continue;
    const std::string first = capture("'" + exe + "' " + c.args);
    const std::string second = capture("'" + exe + "' " + c.args);
    runs += 2;
    if (first != second) out.fail(c.config.command + " via the executable");
    if (first != a.output) out.fail(c.config.command + " executable differs from in-process run");
  }
  if (exe.empty()) out.fail("no executable path given");
  out.detail << cases.size() << " commands, " << runs << " runs, " << out.failures << " mismatches";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Galois connection, exhaustive over lattices of at most 4 elements", galois_exhaustive},
      {"Knaster-Tarski agreement with brute-force inf/sup", knaster_tarski},
      {"interval example: 5 fixpoints, grid convergence within 1e-6", interval_figure},
      {"adjunction bijection on 200 random instances", adjunction_random},
      {"initial algebra prefix for {z, s}", initial_prefix},
      {"terminal coalgebra approximants to depth 8", terminal_approximants},
      {"corecursivity and well-founded recursion", corecursivity},
      {"dagger coincidence and dagger laws", dagger_coincidence},
      {"determinism of JSON reports", [&exe](Outcome& o) { determinism(o, exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    std::cout << (out.passed ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first
              << " -- " << out.detail.str() << std::endl;
    if (!out.passed) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

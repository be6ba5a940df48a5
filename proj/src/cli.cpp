#include "midfix/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"
#include "midfix/sampling.hpp"
#include "midfix/spec_io.hpp"

namespace midfix {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotAPartialOrder: return "NotAPartialOrder";
    case Errc::MissingJoinOrMeet: return "MissingJoinOrMeet";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::NotPreFixed: return "NotPreFixed";
    case Errc::NotPostFixed: return "NotPostFixed";
    case Errc::NotPreFixedNumeric: return "NotPreFixedNumeric";
    case Errc::NotPostFixedNumeric: return "NotPostFixedNumeric";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ObjectMismatch: return "ObjectMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "lattice-fixpoints", "lattice-galois", "mu",         "nu",
      "adjunction",        "trace",          "rel-dagger", "rel-coincidence"};
  return names;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string chain_map_name(const std::string& structure, std::size_t k) {
  if (k == 0) return structure;
  if (k == 1) return "F" + structure;
  return "F^" + std::to_string(k) + structure;
}

std::string stage_name(const std::string& object, std::size_t k) {
  if (k == 0) return object;
  if (k == 1) return "F(" + object + ")";
  return "F^" + std::to_string(k) + "(" + object + ")";
}

std::string count_text(std::size_t n) {
  return n == SIZE_MAX ? std::string(">= 2^64") : std::to_string(n);
}

}  // namespace

std::string emit_dot(const Diagram& d) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(d.name) << "\" {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << dot_escape(d.nodes[i]) << "\"];\n";
  for (const auto& e : d.edges) {
    os << "  n" << e.from << " -> n" << e.to;
    if (!e.label.empty()) os << " [label=\"" << dot_escape(e.label) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

Diagram lattice_diagram(const FinLattice& l) {
  Diagram d{"lattice", {l.labels().begin(), l.labels().end()}, {}};
  for (const auto& [lo, hi] : l.covering_pairs()) d.edges.push_back({lo, hi, ""});
  return d;
}

Diagram mu_chain_diagram(const Signature& sig, std::size_t generators, std::size_t n,
                         const std::string& structure) {
  Diagram d{"mu_chain", {}, {}};
  const auto sizes = level_sizes(sig, generators, n == 0 ? 0 : n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    d.nodes.push_back(stage_name("B", k) + "\n|" + stage_name("B", k) +
                      "| = " + count_text(sizes[k]));
    if (k > 0) d.edges.push_back({k - 1, k, chain_map_name(structure, k - 1)});
  }
  return d;
}

Diagram nu_chain_diagram(const Signature& sig, std::size_t generators, std::size_t n,
                         const std::string& structure) {
  Diagram d{"nu_chain", {}, {}};
  const auto sizes = level_sizes(sig, generators, n == 0 ? 0 : n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    d.nodes.push_back(stage_name("A", k) + "\n|" + stage_name("A", k) +
                      "| = " + count_text(sizes[k]));
    if (k > 0) d.edges.push_back({k, k - 1, chain_map_name(structure, k - 1)});
  }
  return d;
}

Diagram rel_chain_diagram(const RelChain& chain, const std::string& structure) {
  const bool colimit = chain.direction == ChainDirection::Colimit;
  Diagram d{colimit ? "mu_chain" : "nu_chain", {}, {}};
  for (std::size_t k = 0; k < chain.objects.size(); ++k) {
    d.nodes.push_back(stage_name("X", k) + "\n|" + stage_name("X", k) +
                      "| = " + std::to_string(chain.objects[k].size()));
    if (k > 0) {
      const std::string label = chain_map_name(structure, k - 1);
      if (colimit)
        d.edges.push_back({k - 1, k, label});
      else
        d.edges.push_back({k, k - 1, label});
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Report {
  json result = json::object();
  std::vector<Check> checks;
  std::vector<std::string> lines;
  std::optional<Diagram> diagram;
};

struct Inputs {
  std::vector<Spec> specs;
};

Inputs load_inputs(const RunConfig& config, const std::string& stdin_text) {
  Inputs in;
  if (config.use_stdin) in.specs.push_back(parse_spec(std::string_view(stdin_text)));
  for (const auto& path : config.inputs) in.specs.push_back(parse_spec(std::string_view(read_file(path))));
  return in;
}

template <class T>
const T& expect(const Inputs& in, std::size_t i, const char* what) {
  if (i >= in.specs.size())
    throw Error(Errc::ValidationError, std::string("missing input: expected a ") + what);
  const T* p = std::get_if<T>(&in.specs[i]);
  if (!p)
    throw Error(Errc::ValidationError,
                "input " + std::to_string(i + 1) + " is not a " + what + " spec");
  return *p;
}

void expect_count(const Inputs& in, std::size_t lo, std::size_t hi) {
  if (in.specs.size() < lo || in.specs.size() > hi)
    throw Error(Errc::ValidationError, "wrong number of inputs: got " +
                                           std::to_string(in.specs.size()));
}

// Folds the checks of many instances into one check per name. The first
// failing instance provides the witness.
class CheckTally {
 public:
  void add(std::size_t instance, const std::vector<Check>& checks) {
    for (const Check& c : checks) {
      auto it = index_.find(c.name);
      if (it == index_.end()) {
        it = index_.emplace(c.name, tally_.size()).first;
        tally_.push_back({{c.name, true, {}, {}}, 0, 0});
      }
      Entry& e = tally_[it->second];
      ++e.runs;
      if (!c.passed) {
        ++e.failures;
        if (e.check.passed) {
          e.check.passed = false;
          e.check.witness = "instance " + std::to_string(instance) + ": " + c.witness;
        }
      }
    }
  }

  std::vector<Check> checks() const {
    std::vector<Check> out;
    for (const Entry& e : tally_) {
      Check c = e.check;
      c.note = std::to_string(e.runs - e.failures) + "/" + std::to_string(e.runs) +
               " instances passed";
      out.push_back(c);
    }
    return out;
  }

 private:
  struct Entry {
    Check check;
    std::size_t runs;
    std::size_t failures;
  };
  std::vector<Entry> tally_;
  std::map<std::string, std::size_t> index_;
};

json check_json(const Check& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}, {"note", c.note}};
}

json labels(const FinLattice& l, const std::vector<Element>& xs) {
  json out = json::array();
  for (Element x : xs) out.push_back(l.label(x));
  return out;
}

// ---- lattice-fixpoints -----------------------------------------------------

std::vector<Check> brute_force_fixpoint_checks(const MonotoneMap& f, const FixpointReport& r) {
  const FinLattice& l = f.lattice();
  std::vector<Element> fixed;
  for (Element x = 0; x < l.size(); ++x)
    if (f(x) == x) fixed.push_back(x);

  Check inter{"fixed_is_intersection", true, {}, {}};
  std::vector<Element> both;
  std::set_intersection(r.pre_fixed.begin(), r.pre_fixed.end(), r.post_fixed.begin(),
                        r.post_fixed.end(), std::back_inserter(both));
  if (both != r.fixed || fixed != r.fixed) {
    inter.passed = false;
    inter.witness = "fixed set differs from pre-fixed and post-fixed intersection";
  }

  Check mu{"mu_is_least_fixpoint_above", true, {}, {}};
  for (std::size_t i = 0; i < r.pre_fixed.size() && mu.passed; ++i) {
    const Element x = r.pre_fixed[i];
    std::optional<Element> least;
    for (Element p : fixed)
      if (l.leq(x, p) && (!least || l.leq(p, *least))) least = p;
    if (!least || r.mu_table[i] != *least) {
      mu.passed = false;
      mu.witness = "x = " + l.label(x);
    }
  }
  mu.note = std::to_string(r.pre_fixed.size()) + " pre-fixed points";

  Check nu{"nu_is_greatest_fixpoint_below", true, {}, {}};
  for (std::size_t i = 0; i < r.post_fixed.size() && nu.passed; ++i) {
    const Element y = r.post_fixed[i];
    std::optional<Element> greatest;
    for (Element p : fixed)
      if (l.leq(p, y) && (!greatest || l.leq(*greatest, p))) greatest = p;
    if (!greatest || r.nu_table[i] != *greatest) {
      nu.passed = false;
      nu.witness = "y = " + l.label(y);
    }
  }
  nu.note = std::to_string(r.post_fixed.size()) + " post-fixed points";
  return {inter, mu, nu};
}

// Least fixpoint as the meet of all post-fixed points, greatest as the join
// of all pre-fixed points.
Check knaster_tarski_check(const MonotoneMap& f) {
  const FinLattice& l = f.lattice();
  Element inf_post = l.top();
  Element sup_pre = l.bottom();
  for (Element x = 0; x < l.size(); ++x) {
    if (l.leq(f(x), x)) inf_post = l.meet(inf_post, x);
    if (l.leq(x, f(x))) sup_pre = l.join(sup_pre, x);
  }
  Check c{"knaster_tarski", true, {}, {}};
  if (mu_lattice(f, l.bottom()) != inf_post) {
    c.passed = false;
    c.witness = "mu(bottom) = " + l.label(mu_lattice(f, l.bottom())) +
                ", meet of post-fixed points = " + l.label(inf_post);
  } else if (nu_lattice(f, l.top()) != sup_pre) {
    c.passed = false;
    c.witness = "nu(top) = " + l.label(nu_lattice(f, l.top())) +
                ", join of pre-fixed points = " + l.label(sup_pre);
  }
  return c;
}

Report lattice_fixpoints_interval(const RunConfig& config) {
  IntervalMap im = five_fixpoint_map();
  im.tolerance = config.tolerance;
  im = check_interval_map(std::move(im));
  constexpr double kAgree = 1e-6;

  Report rep;
  const std::vector<double> roots = locate_fixpoints(im);
  rep.result["fixpoints"] = roots;
  rep.result["sample_grid"] = im.sample_grid;
  rep.result["tolerance"] = im.tolerance;
  rep.result["soundness"] =
      "monotonicity and range verified on the sample grid only, not between grid points";

  Check count{"five_fixpoints", roots.size() == 5, {}, {}};
  if (!count.passed) count.witness = std::to_string(roots.size()) + " fixpoints located";

  const IterationResult mu0 = mu_interval(im, 0.0);
  const IterationResult nu1 = nu_interval(im, 1.0);
  rep.result["mu_0"] = mu0.value;
  rep.result["nu_1"] = nu1.value;
  Check least{"least_fixpoint_is_0", mu0.converged() && std::abs(mu0.value) <= kAgree &&
                                         !roots.empty() && std::abs(roots.front()) <= kAgree,
              {}, {}};
  if (!least.passed) least.witness = "mu(0) = " + std::to_string(mu0.value);
  Check greatest{"greatest_fixpoint_is_1", nu1.converged() && std::abs(nu1.value - 1) <= kAgree &&
                                               !roots.empty() &&
                                               std::abs(roots.back() - 1) <= kAgree,
                 {}, {}};
  if (!greatest.passed) greatest.witness = "nu(1) = " + std::to_string(nu1.value);

  Check mu_grid{"mu_reaches_nearest_fixpoint_above", true, {}, {}};
  Check nu_grid{"nu_reaches_nearest_fixpoint_below", true, {}, {}};
  std::size_t pre = 0;
  std::size_t post = 0;
  for (std::size_t i = 0; i <= im.sample_grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(im.sample_grid);
    const double fx = im.fn(x);
    if (fx >= x - im.tolerance && mu_grid.passed) {
      ++pre;
      const IterationResult r = mu_interval(im, x);
      auto it = std::find_if(roots.begin(), roots.end(),
                             [&](double p) { return p >= x - kAgree; });
      if (!r.converged() || it == roots.end() || std::abs(r.value - *it) > kAgree) {
        mu_grid.passed = false;
        mu_grid.witness = "x = " + std::to_string(x) + " reached " + std::to_string(r.value);
      }
    }
    if (fx <= x + im.tolerance && nu_grid.passed) {
      ++post;
      const IterationResult r = nu_interval(im, x);
      auto it = std::find_if(roots.rbegin(), roots.rend(),
                             [&](double p) { return p <= x + kAgree; });
      if (!r.converged() || it == roots.rend() || std::abs(r.value - *it) > kAgree) {
        nu_grid.passed = false;
        nu_grid.witness = "y = " + std::to_string(x) + " reached " + std::to_string(r.value);
      }
    }
  }
  mu_grid.note = std::to_string(pre) + " pre-fixed grid points";
  nu_grid.note = std::to_string(post) + " post-fixed grid points";
  rep.result["pre_fixed_grid_points"] = pre;
  rep.result["post_fixed_grid_points"] = post;
  rep.checks = {count, least, greatest, mu_grid, nu_grid};

  std::ostringstream os;
  os.precision(12);
  os << "fixpoints:";
  for (double r : roots) os << ' ' << r;
  rep.lines.push_back(os.str());
  rep.lines.push_back("mu(0) = " + std::to_string(mu0.value) +
                      ", nu(1) = " + std::to_string(nu1.value));

  Diagram d{"interval_fixpoints", {}, {}};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::ostringstream label;
    label.precision(6);
    label << roots[i];
    d.nodes.push_back(label.str());
    if (i > 0) d.edges.push_back({i - 1, i, ""});
  }
  rep.diagram = d;
  return rep;
}

Report lattice_fixpoints(const RunConfig& config, const Inputs& in) {
  if (config.interval) {
    expect_count(in, 0, 0);
    return lattice_fixpoints_interval(config);
  }
  expect_count(in, 1, 1);
  const MonotoneMap& f = expect<MonotoneMap>(in, 0, "lattice with map");
  const FinLattice& l = f.lattice();
  const FixpointReport r = galois_check(f);

  Report rep;
  rep.result["pre_fixed"] = labels(l, r.pre_fixed);
  rep.result["post_fixed"] = labels(l, r.post_fixed);
  rep.result["fixed"] = labels(l, r.fixed);
  json mu = json::object();
  json nu = json::object();
  for (std::size_t i = 0; i < r.pre_fixed.size(); ++i)
    mu[l.label(r.pre_fixed[i])] = l.label(r.mu_table[i]);
  for (std::size_t i = 0; i < r.post_fixed.size(); ++i)
    nu[l.label(r.post_fixed[i])] = l.label(r.nu_table[i]);
  rep.result["mu"] = mu;
  rep.result["nu"] = nu;
  rep.checks = brute_force_fixpoint_checks(f, r);
  rep.checks.push_back(knaster_tarski_check(f));

  auto join = [&](const std::vector<Element>& xs) {
    std::string s;
    for (Element x : xs) s += (s.empty() ? "" : " ") + l.label(x);
    return "{" + s + "}";
  };
  rep.lines.push_back("pre-fixed:  " + join(r.pre_fixed));
  rep.lines.push_back("post-fixed: " + join(r.post_fixed));
  rep.lines.push_back("fixed:      " + join(r.fixed));
  for (std::size_t i = 0; i < r.pre_fixed.size(); ++i)
    rep.lines.push_back("mu(" + l.label(r.pre_fixed[i]) + ") = " + l.label(r.mu_table[i]));
  for (std::size_t i = 0; i < r.post_fixed.size(); ++i)
    rep.lines.push_back("nu(" + l.label(r.post_fixed[i]) + ") = " + l.label(r.nu_table[i]));
  rep.diagram = lattice_diagram(l);
  return rep;
}

// ---- lattice-galois ---------------------------------------------------------

Check galois_as_check(const MonotoneMap& f, const FixpointReport& r) {
  Check c{"galois_connection", r.galois_ok, {}, {}};
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    const FinLattice& l = f.lattice();
    c.witness = "x = " + l.label(v.pre) + ", y = " + l.label(v.post);
  }
  c.note = std::to_string(r.pairs_checked) + " pairs";
  return c;
}

Report lattice_galois(const RunConfig&, const Inputs& in) {
  expect_count(in, 0, 1);
  Report rep;
  if (in.specs.size() == 1) {
    const MonotoneMap& f = expect<MonotoneMap>(in, 0, "lattice with map");
    const FixpointReport r = galois_check(f);
    rep.result["pairs_checked"] = r.pairs_checked;
    rep.result["violations"] = r.violations.size();
    rep.checks = {galois_as_check(f, r), knaster_tarski_check(f)};
    rep.lines.push_back(std::to_string(r.pairs_checked) + " pre/post-fixed pairs checked, " +
                        std::to_string(r.violations.size()) + " violations");
    rep.diagram = lattice_diagram(f.lattice());
    return rep;
  }

  constexpr std::size_t kMaxSize = 4;
  CheckTally tally;
  std::size_t lattices = 0;
  std::size_t maps = 0;
  std::size_t pairs = 0;
  for (const FinLattice& l : enumerate_lattices(kMaxSize)) {
    ++lattices;
    for (const MonotoneMap& f : enumerate_monotone_maps(l)) {
      const FixpointReport r = galois_check(f);
      pairs += r.pairs_checked;
      tally.add(maps++, {galois_as_check(f, r), knaster_tarski_check(f)});
    }
  }
  rep.result["max_size"] = kMaxSize;
  rep.result["lattices"] = lattices;
  rep.result["maps"] = maps;
  rep.result["pairs_checked"] = pairs;
  rep.checks = tally.checks();
  rep.lines.push_back(std::to_string(lattices) + " lattices with at most " +
                      std::to_string(kMaxSize) + " elements, " + std::to_string(maps) +
                      " monotone maps, " + std::to_string(pairs) + " pairs");
  return rep;
}

// ---- mu ---------------------------------------------------------------------

Report mu_command(const RunConfig& config, const Inputs& in) {
  expect_count(in, 1, 1);
  const Coalgebra& b = expect<Coalgebra>(in, 0, "coalgebra");
  const ColimEq eq(b);
  const std::vector<MuElement> classes = mu_enumerate(eq, config.max_rank, config.cap);

  constexpr std::size_t kListed = 200;
  Report rep;
  json gens = json::object();
  for (std::size_t x = 0; x < b.size(); ++x) gens[b.carrier()[x]] = b.carrier()[eq.class_of(x)];
  rep.result["generator_classes"] = gens;
  rep.result["saturation_rounds"] = eq.rounds();
  std::vector<std::size_t> by_rank(config.max_rank + 1, 0);
  for (const MuElement& e : classes)
    for (std::size_t n = e.rank(); n <= config.max_rank; ++n) ++by_rank[n];
  rep.result["classes_up_to_rank"] = by_rank;
  rep.result["classes"] = classes.size();
  json listed = json::array();
  for (std::size_t i = 0; i < classes.size() && i < kListed; ++i)
    listed.push_back({{"rank", classes[i].rank()},
                      {"term", to_string(classes[i].representative, b.signature(), b.carrier())}});
  rep.result["representatives"] = listed;

  Check canonical{"representatives_canonical", true, {}, {}};
  Check distinct{"representatives_distinct", true, {}, {}};
  const std::size_t inspected = std::min(classes.size(), kListed);
  for (std::size_t i = 0; i < inspected && canonical.passed; ++i)
    if (!(mu_canonical(eq, classes[i]) == classes[i])) {
      canonical.passed = false;
      canonical.witness = to_string(classes[i].representative, b.signature(), b.carrier());
    }
  for (std::size_t i = 0; i < inspected && distinct.passed; ++i)
    for (std::size_t j = i + 1; j < inspected && distinct.passed; ++j)
      if (mu_eq(eq, classes[i], classes[j])) {
        distinct.passed = false;
        distinct.witness = to_string(classes[i].representative, b.signature(), b.carrier()) +
                           " = " +
                           to_string(classes[j].representative, b.signature(), b.carrier());
      }
  canonical.note = distinct.note = std::to_string(inspected) + " representatives inspected";
  rep.checks = {canonical, distinct};

  rep.lines.push_back(std::to_string(classes.size()) + " classes of mu(b) up to rank " +
                      std::to_string(config.max_rank));
  for (std::size_t i = 0; i < inspected; ++i)
    rep.lines.push_back("  [" + std::to_string(classes[i].rank()) + "] " +
                        to_string(classes[i].representative, b.signature(), b.carrier()));
  rep.diagram = mu_chain_diagram(b.signature(), b.size(), config.max_rank + 1, "b");
  return rep;
}

// ---- nu ---------------------------------------------------------------------

Report nu_command(const RunConfig& config, const Inputs& in) {
  expect_count(in, 1, 1);
  Algebra a;
  if (const auto* sig = std::get_if<Signature>(&in.specs[0]))
    a = Algebra::terminal(*sig);
  else
    a = expect<Algebra>(in, 0, "algebra or signature");

  const NuApprox approx = nu_approx(a, config.depth, config.cap);
  const auto sizes = approx.level_sizes();
  const auto expected = level_sizes(a.signature(), a.size(), config.depth);

  Report rep;
  rep.result["level_sizes"] = sizes;
  rep.result["terminal"] = a.size() == 1;

  Check rec{"level_size_recurrence", sizes == expected, {}, {}};
  for (std::size_t k = 0; k < sizes.size() && !rec.passed; ++k)
    if (sizes[k] != expected[k]) {
      rec.witness = "level " + std::to_string(k) + ": " + std::to_string(sizes[k]) +
                    " terms, recurrence gives " + std::to_string(expected[k]);
      break;
    }

  Check proj{"projections_are_collapse", true, {}, {}};
  for (std::size_t k = 0; k + 1 < approx.levels.size() && proj.passed; ++k) {
    const auto& lower = approx.levels[k];
    for (std::size_t i = 0; i < approx.levels[k + 1].size(); ++i) {
      const Term down = collapse_bottom(approx.levels[k + 1][i], a);
      const std::size_t j = approx.projections[k][i];
      if (j >= lower.size() || !(lower[j] == down)) {
        proj.passed = false;
        proj.witness = "level " + std::to_string(k + 1) + " term " + std::to_string(i);
        break;
      }
    }
  }
  rep.checks = {rec, proj};

  std::string line = "level sizes:";
  for (std::size_t s : sizes) line += " " + std::to_string(s);
  rep.lines.push_back(line);
  rep.diagram = nu_chain_diagram(a.signature(), a.size(), config.depth + 1, "a");
  return rep;
}

// ---- adjunction -------------------------------------------------------------

json hom_json(const Coalgebra& b, const Algebra& a, const CoalgToAlgHom& f) {
  json m = json::object();
  for (std::size_t x = 0; x < b.size(); ++x) m[b.carrier()[x]] = a.carrier()[f(x)];
  return m;
}

Report adjunction_command(const RunConfig& config, const Inputs& in) {
  Report rep;
  if (config.random > 0) {
    expect_count(in, 0, 0);
    Rng rng(config.seed);
    std::size_t rejected = 0;
    const auto instances =
        random_adjunction_instances(rng, config.random, config.max_rank, config.cap, {}, &rejected);
    CheckTally tally;
    std::size_t homs = 0;
    json summary = json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto& [b, a] = instances[i];
      const AdjunctionReport r = adjunction_check(b, a, config.depth, config.max_rank, config.cap);
      homs += r.homs.size();
      tally.add(i, r.checks);
      summary.push_back({{"signature", to_json(b.signature())},
                         {"coalgebra_size", b.size()},
                         {"algebra_size", a.size()},
                         {"homs", r.homs.size()},
                         {"mu_classes", r.mu_classes},
                         {"passed", r.passed()}});
    }
    rep.result["instances"] = instances.size();
    rep.result["bounds"] = "each instance verified up to max_rank " +
                           std::to_string(config.max_rank) + " and depth " +
                           std::to_string(config.depth) + " only";
    rep.result["rejected_over_cap"] = rejected;
    rep.result["total_homs"] = homs;
    rep.result["summary"] = summary;
    rep.checks = tally.checks();
    rep.lines.push_back(std::to_string(instances.size()) + " random instances (" +
                        std::to_string(rejected) + " redrawn over the cap), " +
                        std::to_string(homs) + " homomorphisms in total");
    return rep;
  }

  expect_count(in, 2, 2);
  const Coalgebra& b = expect<Coalgebra>(in, 0, "coalgebra");
  const Algebra& a = expect<Algebra>(in, 1, "algebra");
  if (!(b.signature() == a.signature()))
    throw Error(Errc::ObjectMismatch, "coalgebra and algebra have different signatures");
  const AdjunctionReport r = adjunction_check(b, a, config.depth, config.max_rank, config.cap);
  json homs = json::array();
  for (const auto& f : r.homs) homs.push_back(hom_json(b, a, f));
  rep.result["bijection_size"] = r.homs.size();
  rep.result["homs"] = homs;
  rep.result["mu_classes"] = r.mu_classes;
  rep.result["alg_side_verified"] = r.alg_side_verified;
  rep.result["coalg_side_verified"] = r.coalg_side_verified;
  rep.result["bounds"] = "uniqueness and homomorphism squares verified up to max_rank " +
                        std::to_string(config.max_rank) + " and depth " +
                        std::to_string(config.depth) + " only";
  rep.checks = r.checks;
  rep.lines.push_back("bijection size " + std::to_string(r.homs.size()) + " (" +
                      std::to_string(r.mu_classes) + " classes of mu(b) up to rank " +
                      std::to_string(config.max_rank) + ", depth " +
                      std::to_string(config.depth) + ")");
  for (const auto& f : r.homs) rep.lines.push_back("  " + hom_json(b, a, f).dump());
  rep.diagram = mu_chain_diagram(b.signature(), b.size(), config.max_rank + 1, "b");
  return rep;
}

// ---- trace ------------------------------------------------------------------

Report trace_command(const RunConfig& config, const Inputs& in) {
  if (in.specs.empty()) throw Error(Errc::ValidationError, "missing input: expected a coalgebra");
  const Coalgebra& b = expect<Coalgebra>(in, 0, "coalgebra");
  std::vector<Algebra> algebras;
  for (std::size_t i = 1; i < in.specs.size(); ++i) {
    algebras.push_back(expect<Algebra>(in, i, "algebra"));
    if (!(algebras.back().signature() == b.signature()))
      throw Error(Errc::ObjectMismatch, "algebra " + std::to_string(i) +
                                            " has a different signature than the coalgebra");
  }

  const std::vector<std::string> star{"*"};
  Report rep;
  Check compat{"trace_compatible", true, {}, {}};
  json traces = json::object();
  for (std::size_t x = 0; x < b.size(); ++x) {
    const NuPointStream s = infinite_trace(b, x);
    json comps = json::array();
    for (std::size_t k = 0; k <= config.depth; ++k)
      comps.push_back(to_string(s.component(k), b.signature(), star));
    traces[b.carrier()[x]] = comps;
    if (compat.passed && !s.compatible_up_to(config.depth)) {
      compat.passed = false;
      compat.witness = b.carrier()[x];
    }
    rep.lines.push_back(b.carrier()[x] + ": " + comps.back().get<std::string>());
  }
  compat.note = "depth " + std::to_string(config.depth);
  rep.result["traces"] = traces;

  const Coalgebra single[] = {b};
  const RecursionReport cor = corecursive_check(single);
  const RecursionReport rec = wellfounded_recursive_check(b, algebras);
  rep.result["well_founded"] = rec.well_founded;
  rep.result["homs_into_algebras"] = rec.counts;
  rep.checks.push_back(compat);
  rep.checks.insert(rep.checks.end(), cor.checks.begin(), cor.checks.end());
  rep.checks.insert(rep.checks.end(), rec.checks.begin(), rec.checks.end());
  rep.lines.push_back(rec.well_founded ? "well founded" : "not well founded");
  rep.diagram = mu_chain_diagram(b.signature(), b.size(), config.depth + 1, "b");
  return rep;
}

// ---- rel-dagger -------------------------------------------------------------

Diagram relation_diagram(const FinRel& r, const std::string& name) {
  Diagram d{name, {}, {}};
  for (const auto& s : r.source().elements) d.nodes.push_back("src " + s);
  for (const auto& t : r.target().elements) d.nodes.push_back("tgt " + t);
  for (const auto& [x, y] : r.pairs()) d.edges.push_back({x, r.source().size() + y, ""});
  return d;
}

Report rel_dagger_command(const RunConfig& config, const Inputs& in) {
  Report rep;
  std::vector<FinRel> sample;
  if (!in.specs.empty()) {
    json daggers = json::array();
    for (std::size_t i = 0; i < in.specs.size(); ++i) {
      const FinRel& r = expect<FinRel>(in, i, "relation");
      sample.push_back(r);
      sample.push_back(rel_dagger(r));
      daggers.push_back(to_json(sample.back()));
      rep.lines.push_back("dagger " + std::to_string(i + 1) + ": " + daggers.back().dump());
    }
    rep.result["daggers"] = daggers;
    rep.result["mode"] = "inputs";
    rep.diagram = relation_diagram(sample[1], "dagger");
  } else if (config.random > 0) {
    Rng rng(config.seed);
    for (std::size_t i = 0; i < config.random; ++i) {
      const FinSet s = numbered_set(rng.between(0, 3), "x");
      const FinSet t = numbered_set(rng.between(0, 3), "x");
      sample.push_back(random_relation(rng, s, t));
    }
    rep.result["mode"] = "random";
  } else {
    std::vector<FinSet> objects;
    for (std::size_t n = 0; n <= 2; ++n) objects.push_back(numbered_set(n, "x"));
    sample = all_relations(objects);
    rep.result["mode"] = "exhaustive";
    rep.result["max_set_size"] = 2;
  }
  const DaggerLawsReport laws = dagger_laws_check(sample);
  rep.result["relations"] = laws.relations;
  rep.result["composable_pairs"] = laws.composable_pairs;
  rep.checks = laws.checks;
  rep.lines.push_back(std::to_string(laws.relations) + " relations, " +
                      std::to_string(laws.composable_pairs) + " composable pairs");
  return rep;
}

// ---- rel-coincidence --------------------------------------------------------

json coincidence_json(const CoincidenceReport& r) {
  json j{{"stages", r.stages}, {"mu_stage", nullptr}, {"nu_stage", nullptr},
         {"mu_object", nullptr}, {"nu_object", nullptr}};
  if (r.mu_stage) j["mu_stage"] = *r.mu_stage;
  if (r.nu_stage) j["nu_stage"] = *r.nu_stage;
  if (r.mu_object) j["mu_object"] = r.mu_object->elements;
  if (r.nu_object) j["nu_object"] = r.nu_object->elements;
  return j;
}

Report rel_coincidence_command(const RunConfig& config, const Inputs& in) {
  Report rep;
  if (config.random > 0) {
    expect_count(in, 0, 0);
    Rng rng(config.seed);
    CheckTally tally;
    Check constant{"constant_functor_stabilizes", true, {}, {}};
    std::size_t constants = 0;
    std::size_t stabilized = 0;
    json summary = json::array();
    for (std::size_t i = 0; i < config.random; ++i) {
      const RelEndo f = random_rel_endo(rng);
      const FinSet x = numbered_set(rng.between(0, 3), "x");
      const FinRel c = random_relation(rng, x, f(x));
      const CoincidenceReport r = coincidence_check(f, c, config.stages);
      tally.add(i, r.checks);
      if (r.stabilized()) ++stabilized;
      if (f.name == "constant") {
        ++constants;
        if (constant.passed && !(r.stabilized() && r.nu_stage == r.mu_stage)) {
          constant.passed = false;
          constant.witness = "instance " + std::to_string(i);
        }
      }
      json s = coincidence_json(r);
      s["functor"] = f.name;
      s["object_size"] = x.size();
      summary.push_back(s);
    }
    constant.note = std::to_string(constants) + " constant-functor instances";
    rep.checks = tally.checks();
    rep.checks.push_back(constant);
    rep.result["instances"] = config.random;
    rep.result["stabilized"] = stabilized;
    rep.result["constant_instances"] = constants;
    rep.result["summary"] = summary;
    rep.lines.push_back(std::to_string(config.random) + " random instances, " +
                        std::to_string(stabilized) + " stabilized within " +
                        std::to_string(config.stages) + " stages");
    return rep;
  }

  expect_count(in, 2, 2);
  const RelEndo f = expect<FunctorSpec>(in, 0, "functor").build();
  const FinRel& c = expect<FinRel>(in, 1, "relation");
  const CoincidenceReport r = coincidence_check(f, c, config.stages);
  rep.result = coincidence_json(r);
  rep.result["functor"] = f.name;
  rep.checks = r.checks;
  if (r.mu_stage)
    rep.lines.push_back("both chains examined over " + std::to_string(r.stages) +
                        " stages; mu-chain stabilizes at stage " + std::to_string(*r.mu_stage));
  else
    rep.lines.push_back("no stabilization within " + std::to_string(r.stages) + " stages");
  rep.diagram = rel_chain_diagram(mu_chain(f, c, config.stages), "c");
  return rep;
}

// ---------------------------------------------------------------------------
// Rendering

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Dot: return "dot";
    case OutputFormat::Text: break;
  }
  return "text";
}

json config_json(const RunConfig& c) {
  return {{"inputs", c.inputs},   {"stdin", c.use_stdin},     {"depth", c.depth},
          {"max_rank", c.max_rank}, {"cap", c.cap},           {"random", c.random},
          {"stages", c.stages},   {"format", format_name(c.format)}, {"seed", c.seed},
          {"tolerance", c.tolerance}, {"interval", c.interval}};
}

std::string render(const RunConfig& config, const Report& rep) {
  const std::size_t failed = failed_count(rep.checks);
  if (config.format == OutputFormat::Json) {
    json checks = json::array();
    for (const Check& c : rep.checks) checks.push_back(check_json(c));
    json j{{"command", config.command},
           {"config", config_json(config)},
           {"result", rep.result},
           {"checks", checks},
           {"failed", failed},
           {"status", failed == 0 ? "ok" : "check_failed"}};
    return j.dump(2) + "\n";
  }
  if (config.format == OutputFormat::Dot) {
    if (!rep.diagram)
      throw Error(Errc::ValidationError,
                  "command '" + config.command + "' has no diagram for these inputs");
    return emit_dot(*rep.diagram);
  }
  std::ostringstream os;
  os << config.command << "\n";
  for (const auto& line : rep.lines) os << line << "\n";
  os << "checks: " << rep.checks.size() - failed << " passed, " << failed << " failed\n";
  for (const Check& c : rep.checks) {
    os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed && !c.witness.empty()) os << ": " << c.witness;
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
  }
  return os.str();
}

std::string render_error(const RunConfig& config, Errc code, const std::string& message,
                         const std::vector<std::string>& witness) {
  if (config.format == OutputFormat::Json) {
    json j{{"command", config.command},
           {"config", config_json(config)},
           {"error", {{"code", errc_name(code)}, {"message", message}, {"witness", witness}}},
           {"status", "input_error"}};
    return j.dump(2) + "\n";
  }
  std::string out = "error [" + std::string(errc_name(code)) + "]: " + message + "\n";
  if (!witness.empty()) {
    out += "  witness:";
    for (const auto& w : witness) out += " " + w;
    out += "\n";
  }
  return out;
}

void validate_config(const RunConfig& c) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), c.command) == names.end())
    throw Error(Errc::ValidationError, "unknown command '" + c.command + "'", {c.command});
  if (c.depth == 0 || c.max_rank == 0 || c.cap == 0 || c.stages == 0)
    throw Error(Errc::ValidationError, "depth, max-rank, cap and stages must be positive");
  if (!(c.tolerance > 0)) throw Error(Errc::ValidationError, "tolerance must be positive");
}

}  // namespace

RunResult run(const RunConfig& config, const std::string& stdin_text) {
  using Handler = std::function<Report(const RunConfig&, const Inputs&)>;
  static const std::map<std::string, Handler> handlers{
      {"lattice-fixpoints", lattice_fixpoints}, {"lattice-galois", lattice_galois},
      {"mu", mu_command},                       {"nu", nu_command},
      {"adjunction", adjunction_command},       {"trace", trace_command},
      {"rel-dagger", rel_dagger_command},       {"rel-coincidence", rel_coincidence_command}};
  try {
    validate_config(config);
    const Inputs in = load_inputs(config, stdin_text);
    const Report rep = handlers.at(config.command)(config, in);
    return {all_passed(rep.checks) ? kExitOk : kExitCheckFailed, render(config, rep)};
  } catch (const Error& e) {
    return {kExitInputError, render_error(config, e.code(), e.what(), e.witness())};
  } catch (const json::exception& e) {
    return {kExitInputError, render_error(config, Errc::ValidationError, e.what(), {})};
  }
}

}  // namespace midfix

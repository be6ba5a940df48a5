#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"
#include "midfix/sampling.hpp"
#include "oracles.hpp"

using namespace midfix;

namespace {

const Signature nat{{{"z", 0}, {"s", 1}}};

struct Step {
  std::string op;
  std::vector<std::size_t> args;
};

Coalgebra coalgebra(const Signature& sig, std::vector<std::string> carrier,
                    const std::vector<Step>& steps) {
  std::vector<Term> st;
  for (const Step& s : steps) {
    std::vector<Node> children;
    for (auto a : s.args) children.push_back(Node::generator(a));
    st.push_back({1, Node::operation(*sig.find(s.op), std::move(children))});
  }
  return Coalgebra(sig, std::move(carrier), std::move(st));
}

// Parity algebra on {0,1}: z = 0, s(i) = 1 - i. Tables follow sorted op order (s, z).
Algebra parity() { return Algebra(nat, {"0", "1"}, {{1, 0}, {0}}); }

Coalgebra orbit() { return coalgebra(nat, {"p"}, {{"s", {0}}}); }
Coalgebra stop() { return coalgebra(nat, {"p"}, {{"z", {}}}); }
Coalgebra empty_nat() { return Coalgebra(nat, {}, {}); }

MuElement rank_term(std::size_t rank, Node root) { return {Term{rank, std::move(root)}}; }

Node s_of(Node n) { return Node::operation(*nat.find("s"), {std::move(n)}); }
Node z_node() { return Node::operation(*nat.find("z")); }

std::string show(const Coalgebra& b, const MuElement& e) {
  return to_string(e.representative, b.signature(), b.carrier());
}

std::vector<std::string> shown(const Coalgebra& b, const std::vector<MuElement>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(show(b, e));
  return out;
}

// All MuElements of rank <= max_rank given by raw terms.
std::vector<MuElement> raw_points(const Coalgebra& b, std::size_t max_rank, std::size_t cap) {
  std::vector<MuElement> out;
  for (std::size_t n = 0; n <= max_rank; ++n)
    for (const Term& t : enumerate_rank(b.signature(), b.size(), n, cap)) out.push_back({t});
  return out;
}

const InstanceLimits kSmall{3, 2, 3};

}  // namespace

TEST_CASE("coalgebra and algebra validation") {
  CHECK_THROWS_AS(Coalgebra(nat, {"p"}, {}), Error);
  CHECK_THROWS_AS(Coalgebra(nat, {"p"}, {Term{2, s_of(s_of(Node::generator(0)))}}), Error);
  CHECK_THROWS_AS(Coalgebra(nat, {"p"}, {Term{1, s_of(Node::generator(3))}}), Error);
  CHECK_THROWS_AS(Algebra(nat, {"0", "1"}, {{1, 0}}), Error);
  CHECK_THROWS_AS(Algebra(nat, {"0", "1"}, {{1, 2}, {0}}), Error);
  CHECK_THROWS_AS(Algebra(nat, {"0", "1"}, {{1}, {0}}), Error);
  const Algebra one = Algebra::terminal(nat);
  CHECK(one.size() == 1);
  CHECK(one.carrier()[0] == "*");
}

TEST_CASE("collapse_bottom examples") {
  const Algebra one = Algebra::terminal(nat);
  const Term ss{2, s_of(s_of(Node::generator(0)))};
  const Term s{1, s_of(Node::generator(0))};
  CHECK(collapse_bottom(ss, one) == s);
  CHECK(collapse_bottom(Term{1, z_node()}, one) == Term::generator(0));
  CHECK(collapse_bottom(Term{1, s_of(Node::generator(0))}, parity()) == Term::generator(1));
  CHECK_THROWS_AS(collapse_bottom(Term::generator(0), one), Error);
  // A constant above the bottom layer stays, one rank lower.
  CHECK(collapse_bottom(Term{3, s_of(z_node())}, parity()) == Term{2, s_of(z_node())});
}

TEST_CASE("enumerate_coalg_to_alg examples") {
  CHECK(enumerate_coalg_to_alg(orbit(), parity()).empty());
  const auto homs = enumerate_coalg_to_alg(stop(), parity());
  REQUIRE(homs.size() == 1);
  CHECK(homs[0].map == std::vector<std::size_t>{0});
  CHECK(enumerate_coalg_to_alg(orbit(), Algebra::terminal(nat)).size() == 1);
  CHECK_THROWS_AS(enumerate_coalg_to_alg(orbit(), parity(), 1), CapExceeded);
}

TEST_CASE("property: enumerate_coalg_to_alg equals the brute-force hom set") {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Coalgebra b = random_coalgebra(rng, sig, {3, 2, 4});
    const Algebra a = random_algebra(rng, sig, kSmall);
    std::vector<std::vector<std::size_t>> got;
    for (const auto& f : enumerate_coalg_to_alg(b, a)) {
      CHECK(is_coalg_to_alg_hom(b, a, f.map));
      got.push_back(f.map);
    }
    CHECK(got == oracle::coalg_to_alg(b, a));
  }
}

TEST_CASE("colim_eq examples") {
  const Signature s_only{{{"s", 1}}};
  const ColimEq same(coalgebra(nat, {"x", "y"}, {{"s", {0}}, {"s", {0}}}));
  CHECK(same.related(0, 1));
  const ColimEq swap(coalgebra(nat, {"x", "y"}, {{"s", {1}}, {"s", {0}}}));
  CHECK_FALSE(swap.related(0, 1));
  for (std::size_t k = 0; k <= 20; ++k)
    CHECK_FALSE(oracle::generators_equal_at(swap.coalgebra(), 0, 1, k));
  const ColimEq both_z(coalgebra(nat, {"x", "y"}, {{"z", {}}, {"z", {}}}));
  CHECK(both_z.related(0, 1));
  CHECK(both_z.related(0, 0));
  // Two disjoint s-cycles without constants are still distinct: the colimit
  // is not the successor-closure quotient.
  const ColimEq loops(coalgebra(s_only, {"x", "y"}, {{"s", {0}}, {"s", {1}}}));
  CHECK_FALSE(loops.related(0, 1));
}

TEST_CASE("property: colim_eq is sound and complete against stage unfoldings") {
  Rng rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    const Signature sig = random_signature(rng, {3, 2, 4});
    const Coalgebra b = random_coalgebra(rng, sig, {3, 2, 4});
    const ColimEq eq(b);
    const std::size_t n = b.size();
    CHECK(eq.rounds() <= n * n + 1);
    const auto stages = oracle::stage_agreement(b, std::max<std::size_t>(2 * n * n, 4));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        // The table matches literal tree unfolding where that stays small.
        for (std::size_t k = 0; k <= 4; ++k)
          CHECK(stages[k][x][y] == oracle::generators_equal_at(b, x, y, k));
        bool equal_somewhere = false;
        for (std::size_t k = 0; k <= 2 * n * n; ++k) equal_somewhere |= stages[k][x][y];
        CHECK(eq.related(x, y) == equal_somewhere);
        if (eq.related(x, y)) CHECK(stages[n * n][x][y]);
      }
  }
}

TEST_CASE("mu_eq examples") {
  const ColimEq eq(orbit());
  const MuElement p = mu_generator(0);
  CHECK(mu_eq(eq, p, rank_term(1, s_of(Node::generator(0)))));
  CHECK_FALSE(mu_eq(eq, rank_term(1, z_node()), rank_term(1, s_of(Node::generator(0)))));
  const MuElement t = rank_term(2, s_of(z_node()));
  CHECK(mu_eq(eq, t, t));
}

TEST_CASE("property: mu_eq agrees with the stage-unfolding oracle and is a congruence") {
  Rng rng(303);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Coalgebra b = random_coalgebra(rng, sig, kSmall);
    const ColimEq eq(b);
    std::vector<MuElement> pts;
    try {
      pts = raw_points(b, 2, 60);
    } catch (const CapExceeded&) {
      continue;
    }
    ++checked;
    for (const auto& e1 : pts) {
      CHECK(mu_eq(eq, e1, mu_pad(eq, e1, e1.rank() + 1)));  // chain identification
      const MuElement c1 = mu_canonical(eq, e1);
      CHECK(mu_eq(eq, e1, c1));
      CHECK(c1.rank() <= e1.rank());
      for (const auto& e2 : pts) {
        const bool same = mu_eq(eq, e1, e2);
        CHECK(same == oracle::colim_equal(b, e1.representative, e2.representative));
        CHECK(same == mu_eq(eq, e2, e1));
        CHECK(same == (mu_canonical(eq, e2) == c1));
      }
    }
    // Congruence: equal arguments give equal results.
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig[op].arity != 1) continue;
      for (const auto& e1 : pts)
        for (const auto& e2 : pts)
          if (mu_eq(eq, e1, e2)) {
            const MuElement a1[] = {e1};
            const MuElement a2[] = {e2};
            CHECK(mu_eq(eq, mu_algebra_apply(eq, op, a1), mu_algebra_apply(eq, op, a2)));
          }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("mu_enumerate examples") {
  const Coalgebra o = orbit();
  CHECK(shown(o, mu_enumerate(ColimEq(o), 3)) ==
        std::vector<std::string>{"p", "z", "s(z)", "s(s(z))"});
  const Coalgebra e = empty_nat();
  CHECK(shown(e, mu_enumerate(ColimEq(e), 3)) ==
        std::vector<std::string>{"z", "s(z)", "s(s(z))"});
  const Signature s_only{{{"s", 1}}};
  CHECK(mu_enumerate(ColimEq(coalgebra(s_only, {"p"}, {{"s", {0}}})), 3).size() == 1);
  CHECK_THROWS_AS(mu_enumerate(ColimEq(o), 50, 10), CapExceeded);
}

TEST_CASE("property: empty coalgebra classes are the closed terms, padded") {
  Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    if (!sig.has_constant()) continue;
    const Coalgebra e(sig, {}, {});
    const std::size_t max_rank = 3;
    std::vector<MuElement> classes;
    try {
      classes = mu_enumerate(ColimEq(e), max_rank, 5000);
    } catch (const CapExceeded&) {
      continue;
    }
    // Closed terms of depth < n are exactly F^n(empty); padding identifies
    // each term with itself at every higher rank.
    const auto top = enumerate_rank(sig, 0, max_rank, 5000);
    CHECK(classes.size() == top.size());
    std::set<Node> from_classes;
    for (const auto& c : classes) from_classes.insert(c.representative.root);
    std::set<Node> from_rank;
    for (const auto& t : top) from_rank.insert(t.root);
    CHECK(from_classes == from_rank);
  }
}

TEST_CASE("property: mu_enumerate lists each reachable class exactly once") {
  Rng rng(505);
  for (int trial = 0; trial < 120; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Coalgebra b = random_coalgebra(rng, sig, kSmall);
    const ColimEq eq(b);
    std::vector<MuElement> classes;
    std::vector<MuElement> pts;
    try {
      classes = mu_enumerate(eq, 2, 200);
      pts = raw_points(b, 2, 200);
    } catch (const CapExceeded&) {
      continue;
    }
    CHECK(std::is_sorted(classes.begin(), classes.end(), [](const auto& l, const auto& r) {
      return std::tie(l.representative.rank, l.representative) <
             std::tie(r.representative.rank, r.representative);
    }));
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        CHECK_FALSE(oracle::colim_equal(b, classes[i].representative, classes[j].representative));
    for (const auto& p : pts) {
      std::size_t hits = 0;
      for (const auto& c : classes)
        if (oracle::colim_equal(b, p.representative, c.representative)) ++hits;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("mu_algebra_apply examples") {
  const ColimEq eq(orbit());
  const MuElement z = mu_algebra_apply(eq, "z", {});
  CHECK(mu_eq(eq, z, rank_term(1, z_node())));
  const MuElement p[] = {mu_generator(0)};
  const MuElement sp = mu_algebra_apply(eq, "s", p);
  CHECK(mu_eq(eq, sp, mu_generator(0)));
  const MuElement zs[] = {z};
  const MuElement sz = mu_algebra_apply(eq, "s", zs);
  CHECK(mu_eq(eq, sz, rank_term(2, s_of(z_node()))));
  CHECK_FALSE(mu_eq(eq, sz, z));
  CHECK_THROWS_AS(mu_algebra_apply(eq, "s", {}), Error);
  try {
    mu_algebra_apply(eq, "z", p);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ArityMismatch);
  }
}

TEST_CASE("induced_alg_hom examples") {
  const Coalgebra b = stop();
  const Algebra a = parity();
  const CoalgToAlgHom f{{0}};
  CHECK(induced_alg_hom(a, f, mu_generator(0)) == 0);
  CHECK(induced_alg_hom(a, f, rank_term(3, s_of(s_of(z_node())))) == 0);
  CHECK(induced_alg_hom(a, f, rank_term(1, z_node())) == 0);
  CHECK(mu_eq(ColimEq(b), mu_generator(0), rank_term(1, z_node())));
}

TEST_CASE("property: induced_alg_hom is representative independent") {
  Rng rng(606);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Coalgebra b = random_coalgebra(rng, sig, kSmall);
    const Algebra a = random_algebra(rng, sig, kSmall);
    std::vector<MuElement> pts;
    try {
      pts = raw_points(b, 4, 300);
    } catch (const CapExceeded&) {
      continue;
    }
    const ColimEq eq(b);
    for (const auto& f : oracle::coalg_to_alg(b, a)) {
      ++checked;
      const CoalgToAlgHom hom{f};
      for (const auto& e1 : pts) {
        const std::size_t v1 = induced_alg_hom(a, hom, e1);
        CHECK(v1 == oracle::fold(a, e1.representative.root, f));
        for (const auto& e2 : pts)
          if (mu_eq(eq, e1, e2)) CHECK(v1 == induced_alg_hom(a, hom, e2));
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("nu_approx examples") {
  const NuApprox one = nu_approx(Algebra::terminal(nat), 3);
  CHECK(one.level_sizes() == std::vector<std::size_t>{1, 2, 3, 4});
  const Signature k{{{"k", 0}}};
  const NuApprox constant = nu_approx(Algebra::terminal(k), 4);
  for (std::size_t lvl = 1; lvl <= 4; ++lvl) {
    REQUIRE(constant.levels[lvl].size() == 1);
    CHECK(constant.levels[lvl][0].root == Node::operation(0));
  }
  const NuApprox zero = nu_approx(parity(), 0);
  CHECK(zero.levels.size() == 1);
  CHECK(zero.levels[0].size() == 2);
  CHECK(zero.projections.empty());
  CHECK_THROWS_AS(nu_approx(Algebra::terminal(Signature{{{"b", 2}, {"c", 0}}}), 6, 1000),
                  CapExceeded);
}

TEST_CASE("property: nu_approx projections are collapse_bottom and compose") {
  Rng rng(707);
  for (int trial = 0; trial < 80; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Algebra a = random_algebra(rng, sig, kSmall);
    NuApprox approx;
    try {
      approx = nu_approx(a, 3, 3000);
    } catch (const CapExceeded&) {
      continue;
    }
    for (std::size_t k = 0; k + 1 < approx.levels.size(); ++k)
      for (std::size_t i = 0; i < approx.levels[k + 1].size(); ++i)
        CHECK(approx.levels[k][approx.projections[k][i]] ==
              collapse_bottom(approx.levels[k + 1][i], a));
  }
}

TEST_CASE("induced_coalg_hom and infinite_trace examples") {
  const std::vector<std::string> star{"*"};
  const NuPointStream inf = infinite_trace(orbit(), 0);
  CHECK(to_string(inf.component(0), nat, star) == "*");
  CHECK(to_string(inf.component(3), nat, star) == "s(s(s(*)))");
  const NuPointStream fin = infinite_trace(stop(), 0);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(to_string(fin.component(k), nat, star) == "z");
  const NuPointStream to_parity = induced_coalg_hom(stop(), parity(), CoalgToAlgHom{{0}}, 0);
  CHECK(to_parity.component(0) == Term::generator(0));
  CHECK(to_parity.compatible_up_to(8));

  // The transpose of the unique map into the terminal algebra is constant.
  const ColimEq eq(orbit());
  for (const auto& e : mu_enumerate(eq, 4))
    CHECK(induced_alg_hom(Algebra::terminal(nat), CoalgToAlgHom{{0}}, e) == 0);
}

TEST_CASE("property: NuPointStream compatibility and the coalgebra square") {
  Rng rng(808);
  for (int trial = 0; trial < 150; ++trial) {
    const Signature sig = random_signature(rng, kSmall);
    const Coalgebra b = random_coalgebra(rng, sig, kSmall);
    const Algebra a = random_algebra(rng, sig, kSmall);
    for (const auto& f : enumerate_coalg_to_alg(b, a)) {
      for (std::size_t x = 0; x < b.size(); ++x) {
        const NuPointStream s = induced_coalg_hom(b, a, f, x);
        CHECK(s.component(0) == Term::generator(f(x)));
        for (std::size_t k = 0; k < 5; ++k) {
          CHECK(collapse_bottom(s.component(k + 1), a) == s.component(k));
          const Node unfolded = oracle::unfold_times(Node::generator(x),
                                                     oracle::structure_of(b), k);
          CHECK(s.component(k) == map_leaves(Term{k, unfolded}, f.map));
        }
      }
    }
  }
}

TEST_CASE("adjunction_check examples") {
  const AdjunctionReport one = adjunction_check(stop(), parity(), 5, 5);
  CHECK(one.homs.size() == 1);
  CHECK(one.passed());
  const AdjunctionReport none = adjunction_check(orbit(), parity(), 5, 5);
  CHECK(none.homs.empty());
  CHECK(none.passed());
  bool noted = false;
  for (const auto& c : none.checks) noted |= c.note.find("empty") != std::string::npos;
  CHECK(noted);
  const AdjunctionReport term = adjunction_check(orbit(), Algebra::terminal(nat), 5, 5);
  CHECK(term.homs.size() == 1);
  CHECK(term.passed());
  CHECK(term.checks.size() == 5);
}

TEST_CASE("property: bijection cardinality on random instances") {
  Rng rng(909);
  std::size_t rejected = 0;
  const auto instances = random_adjunction_instances(rng, 60, 4, 2000, kSmall, &rejected);
  for (const auto& [b, a] : instances) {
    const AdjunctionReport r = adjunction_check(b, a, 4, 4, 2000);
    CHECK(r.passed());
    CHECK(r.homs.size() == oracle::coalg_to_alg(b, a).size());
    CHECK(r.alg_side_verified == r.homs.size());
    CHECK(r.coalg_side_verified == r.homs.size());
  }
}

TEST_CASE("naturality_check examples") {
  const Algebra a = parity();
  const Coalgebra b = stop();
  const std::vector<std::size_t> id1{0};
  const std::vector<std::size_t> id2{0, 1};
  CHECK(naturality_check(b, b, a, a, id1, id2, 5, 5).passed());

  const Coalgebra b_src = coalgebra(nat, {"q"}, {{"z", {}}});
  const NaturalityReport r = naturality_check(b, b_src, a, a, id1, id2, 5, 5);
  CHECK(r.passed());
  CHECK(r.homs == 1);

  const Algebra one = Algebra::terminal(nat);
  const std::vector<std::size_t> collapse{0, 0};
  CHECK(naturality_check(b, b, a, one, id1, collapse, 5, 5).passed());

  // A map that is not an algebra homomorphism is flagged.
  const std::vector<std::size_t> swap{1, 0};
  CHECK_FALSE(naturality_check(b, b, a, a, id1, swap, 5, 5).passed());
}

TEST_CASE("terminal_coalgebra_approx examples") {
  CHECK(terminal_coalgebra_approx(nat, 6).level_sizes() ==
        std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
  const Signature k{{{"k", 0}}};
  CHECK(terminal_coalgebra_approx(k, 4).level_sizes() ==
        std::vector<std::size_t>{1, 1, 1, 1, 1});
  const Signature streams{{{"a", 1}, {"b", 1}}};
  const auto sizes = terminal_coalgebra_approx(streams, 6).level_sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) CHECK(sizes[i] == (std::size_t{1} << i));
}

TEST_CASE("corecursive_check examples") {
  const Coalgebra cs[] = {orbit(), empty_nat()};
  const RecursionReport r = corecursive_check(cs);
  CHECK(r.passed());
  CHECK(r.counts == std::vector<std::size_t>{1, 1});

  Rng rng(1001);
  std::vector<Coalgebra> random;
  for (int i = 0; i < 100; ++i) random.push_back(random_coalgebra(rng, random_signature(rng), {3, 2, 4}));
  const RecursionReport all = corecursive_check(random);
  CHECK(all.passed());
  CHECK(std::all_of(all.counts.begin(), all.counts.end(), [](auto c) { return c == 1; }));
}

TEST_CASE("wellfounded_recursive_check examples") {
  const Algebra as[] = {parity()};
  const RecursionReport wf = wellfounded_recursive_check(stop(), as);
  CHECK(wf.well_founded);
  CHECK(wf.counts == std::vector<std::size_t>{1});
  CHECK(wf.passed());

  const RecursionReport cyc = wellfounded_recursive_check(orbit(), as);
  CHECK_FALSE(cyc.well_founded);
  CHECK(cyc.counts == std::vector<std::size_t>{0});
  CHECK(cyc.passed());

  const Coalgebra dag = coalgebra(nat, {"x", "y"}, {{"s", {1}}, {"z", {}}});
  Rng rng(1102);
  std::vector<Algebra> algebras;
  for (int i = 0; i < 10; ++i) algebras.push_back(random_algebra(rng, nat, kSmall));
  const RecursionReport d = wellfounded_recursive_check(dag, algebras);
  CHECK(d.well_founded);
  CHECK(d.passed());
  for (auto c : d.counts) CHECK(c == 1);
}

TEST_CASE("property: well-foundedness matches cycle search") {
  Rng rng(1203);
  for (int trial = 0; trial < 300; ++trial) {
    const Coalgebra b = random_coalgebra(rng, random_signature(rng), {3, 2, 4});
    CHECK(is_well_founded(b) == !oracle::has_cycle(b));
  }
}

#include <algorithm>
#include <map>
#include <sstream>

#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"

namespace midfix {

namespace {

std::string show(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string show(const MuElement& e, const Coalgebra& b) {
  return to_string(e.representative, b.signature(), b.carrier()) + "@" +
         std::to_string(e.rank());
}

std::string bounds_note(std::size_t max_rank, std::size_t depth) {
  return "verified up to rank " + std::to_string(max_rank) + " and depth " +
         std::to_string(depth) + " only";
}

// Runs `visit` on every tuple of length `arity` over [0, pool).
template <typename Visit>
void for_each_tuple(std::size_t pool, std::size_t arity, Visit&& visit) {
  if (arity > 0 && pool == 0) return;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    visit(idx);
    if (arity == 0) return;
    std::size_t pos = arity;
    while (true) {
      --pos;
      if (++idx[pos] < pool) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

struct AlgSideResult {
  bool hom_ok = true;
  bool unique_ok = true;
  std::string hom_witness;
  std::string unique_witness;
  std::vector<std::size_t> values;  // indexed like the class list
};

// Algebra-homomorphism and uniqueness checks for one f on the enumerated
// classes of mu(b).
AlgSideResult check_alg_side(const ColimEq& eq, const Algebra& a, const CoalgToAlgHom& f,
                             const std::vector<MuElement>& classes, std::size_t max_rank) {
  const Coalgebra& b = eq.coalgebra();
  const Signature& sig = b.signature();
  AlgSideResult r;

  std::map<Term, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i].representative, i);
  auto lookup = [&](const MuElement& e) -> std::size_t {
    auto it = index.find(mu_canonical(eq, e).representative);
    if (it == index.end()) throw std::logic_error("adjunction_check: class missing from enumeration");
    return it->second;
  };

  r.values.reserve(classes.size());
  for (const MuElement& e : classes) r.values.push_back(induced_alg_hom(a, f, e));

  // Representative independence: padding must not change the induced value.
  for (std::size_t i = 0; i < classes.size() && r.hom_ok; ++i) {
    const MuElement padded = mu_pad(eq, classes[i], max_rank);
    if (induced_alg_hom(a, f, padded) != r.values[i]) {
      r.hom_ok = false;
      r.hom_witness = "value depends on representative: " + show(classes[i], b) + " vs " +
                      show(padded, b);
    }
  }

  // h(sigma(e1..em)) = a(sigma, h(e1)..h(em)) for all argument classes whose
  // application stays within max_rank.
  std::vector<std::size_t> args_pool;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].rank() < max_rank) args_pool.push_back(i);
  std::vector<MuElement> args;
  std::vector<std::size_t> arg_values;
  for (std::size_t op = 0; op < sig.size() && r.hom_ok; ++op) {
    for_each_tuple(args_pool.size(), sig[op].arity, [&](const std::vector<std::size_t>& idx) {
      if (!r.hom_ok) return;
      args.clear();
      arg_values.clear();
      for (std::size_t i : idx) {
        args.push_back(classes[args_pool[i]]);
        arg_values.push_back(r.values[args_pool[i]]);
      }
      const std::size_t target = lookup(mu_algebra_apply(eq, op, args));
      if (r.values[target] != a.apply(op, arg_values)) {
        r.hom_ok = false;
        std::ostringstream os;
        os << sig[op].name << " applied to " << show(arg_values) << " gives "
           << a.apply(op, arg_values) << " but class " << show(classes[target], b) << " maps to "
           << r.values[target];
        r.hom_witness = os.str();
      }
    });
  }

  // Any algebra homomorphism agreeing with f on generators is forced, rank by
  // rank, to take the values computed here from the canonical representatives.
  std::vector<std::size_t> forced(classes.size(), 0);
  for (std::size_t i = 0; i < classes.size() && r.unique_ok; ++i) {
    const Term& t = classes[i].representative;
    if (t.rank == 0) {
      forced[i] = f(t.root.id);
    } else {
      std::vector<std::size_t> vals;
      vals.reserve(t.root.children.size());
      for (const Node& c : t.root.children) {
        const std::size_t j = lookup({Term{t.rank - 1, c}});
        if (j >= i) throw std::logic_error("adjunction_check: argument class not yet assigned");
        vals.push_back(forced[j]);
      }
      forced[i] = a.apply(t.root.id, vals);
    }
    if (forced[i] != r.values[i]) {
      r.unique_ok = false;
      r.unique_witness = "forced value " + std::to_string(forced[i]) + " differs from induced " +
                         std::to_string(r.values[i]) + " at " + show(classes[i], b);
    }
  }
  return r;
}

struct CoalgSideResult {
  bool ok = true;
  std::string witness;
  std::vector<std::size_t> generator_images;
};

// The induced map into nu(a) lands in compatible sequences and commutes with
// the coalgebra structures: the stream of x at stage k+1 is b(x)'s operation
// applied to the streams of its arguments at stage k.
CoalgSideResult check_coalg_side(const Coalgebra& b, const Algebra& a, const CoalgToAlgHom& f,
                                 std::size_t depth) {
  CoalgSideResult r;
  std::vector<NuPointStream> streams;
  streams.reserve(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) streams.push_back(induced_coalg_hom(b, a, f, x));

  std::vector<std::vector<Term>> comp(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) {
    for (std::size_t k = 0; k <= depth; ++k) comp[x].push_back(streams[x].component(k));
    r.generator_images.push_back(comp[x][0].root.id);
  }

  for (std::size_t x = 0; x < b.size() && r.ok; ++x) {
    const std::string& name = b.carrier()[x];
    if (!(comp[x][0] == Term::generator(f(x)))) {
      r.ok = false;
      r.witness = "stage 0 of " + name + " is not f(" + name + ")";
      break;
    }
    for (std::size_t k = 0; k < depth && r.ok; ++k) {
      if (!(collapse_bottom(comp[x][k + 1], a) == comp[x][k])) {
        r.ok = false;
        r.witness = "stream of " + name + " incompatible at stage " + std::to_string(k + 1);
        break;
      }
      const Node& bx = b(x).root;
      Node expected = Node::operation(bx.id);
      for (const Node& c : bx.children) expected.children.push_back(comp[c.id][k].root);
      if (!(comp[x][k + 1].root == expected)) {
        r.ok = false;
        r.witness = "coalgebra square fails for " + name + " at stage " + std::to_string(k + 1);
      }
    }
  }
  return r;
}

}  // namespace

AdjunctionReport adjunction_check(const Coalgebra& b, const Algebra& a, std::size_t depth,
                                  std::size_t max_rank, std::size_t cap) {
  if (!(b.signature() == a.signature())) {
    throw Error(Errc::ValidationError, "coalgebra and algebra have different signatures");
  }
  AdjunctionReport rep;
  rep.depth = depth;
  rep.max_rank = max_rank;
  rep.homs = enumerate_coalg_to_alg(b, a, cap);

  const ColimEq eq(b);
  const auto classes = mu_enumerate(eq, max_rank, cap);
  rep.mu_classes = classes.size();
  const std::string note = bounds_note(max_rank, depth);
  const bool vacuous = rep.homs.empty();

  Check listed{"coalg_to_alg_homs", true, {}, std::to_string(rep.homs.size()) + " homomorphisms"};
  for (const auto& f : rep.homs) {
    if (!is_coalg_to_alg_hom(b, a, f.map)) {
      listed.passed = false;
      listed.witness = "not a homomorphism: " + show(f.map);
      break;
    }
  }

  Check alg{"induced_algebra_homs", true, {}, note};
  Check coalg{"induced_coalgebra_homs", true, {}, note};
  Check injective{"injective", true, {}, {}};
  Check unique{"unique_extension", true, {}, note};

  std::vector<std::vector<std::size_t>> alg_images;
  std::vector<std::vector<std::size_t>> coalg_images;
  for (const auto& f : rep.homs) {
    auto as = check_alg_side(eq, a, f, classes, max_rank);
    if (as.hom_ok) {
      ++rep.alg_side_verified;
    } else if (alg.passed) {
      alg.passed = false;
      alg.witness = "f=" + show(f.map) + ": " + as.hom_witness;
    }
    if (!as.unique_ok && unique.passed) {
      unique.passed = false;
      unique.witness = "f=" + show(f.map) + ": " + as.unique_witness;
    }
    std::vector<std::size_t> gen_image;
    for (std::size_t x = 0; x < b.size(); ++x) {
      gen_image.push_back(induced_alg_hom(a, f, mu_generator(x)));
    }
    alg_images.push_back(std::move(gen_image));

    auto cs = check_coalg_side(b, a, f, depth);
    if (cs.ok) {
      ++rep.coalg_side_verified;
    } else if (coalg.passed) {
      coalg.passed = false;
      coalg.witness = "f=" + show(f.map) + ": " + cs.witness;
    }
    coalg_images.push_back(std::move(cs.generator_images));
  }

  auto distinct = [](std::vector<std::vector<std::size_t>> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(alg_images)) {
    injective.passed = false;
    injective.witness = "two homomorphisms induce the same map out of mu(b)";
  } else if (!distinct(coalg_images)) {
    injective.passed = false;
    injective.witness = "two homomorphisms induce the same map into nu(a)";
  }
  for (std::size_t i = 0; i < rep.homs.size() && injective.passed; ++i) {
    if (alg_images[i] != rep.homs[i].map || coalg_images[i] != rep.homs[i].map) {
      injective.passed = false;
      injective.witness = "induced maps do not restrict to f=" + show(rep.homs[i].map);
    }
  }

  const bool counts_agree = rep.alg_side_verified == rep.homs.size() &&
                            rep.coalg_side_verified == rep.homs.size();
  if (!counts_agree && listed.passed) {
    listed.passed = false;
    listed.witness = "bijection sizes differ: " + std::to_string(rep.alg_side_verified) + " / " +
                     std::to_string(rep.homs.size()) + " / " +
                     std::to_string(rep.coalg_side_verified);
  }
  if (vacuous) {
    const std::string empty = "no homomorphisms; both induced families are empty";
    alg.note = coalg.note = injective.note = unique.note = empty;
  }
  rep.checks = {listed, alg, coalg, injective, unique};
  return rep;
}

NaturalityReport naturality_check(const Coalgebra& b, const Coalgebra& b_src, const Algebra& a,
                                  const Algebra& a_dst, std::span<const std::size_t> g_coalg,
                                  std::span<const std::size_t> g_alg, std::size_t depth,
                                  std::size_t max_rank, std::size_t cap) {
  NaturalityReport rep;
  Check inputs{"inputs_are_homomorphisms", true, {}, {}};
  if (!is_coalgebra_hom(b_src, b, g_coalg)) {
    inputs.passed = false;
    inputs.witness = "g_coalg is not a coalgebra homomorphism";
  } else if (!is_algebra_hom(a, a_dst, g_alg)) {
    inputs.passed = false;
    inputs.witness = "g_alg is not an algebra homomorphism";
  }
  rep.checks.push_back(inputs);
  if (!inputs.passed) return rep;

  const auto homs = enumerate_coalg_to_alg(b, a, cap);
  rep.homs = homs.size();
  const ColimEq eq_src(b_src);
  const auto classes = mu_enumerate(eq_src, max_rank, cap);
  const std::string note = bounds_note(max_rank, depth);

  Check transported{"transported_is_homomorphism", true, {}, {}};
  Check alg{"natural_on_mu", true, {}, note};
  Check coalg{"natural_on_nu", true, {}, note};
  for (const auto& f : homs) {
    CoalgToAlgHom moved;
    for (std::size_t q = 0; q < b_src.size(); ++q) moved.map.push_back(g_alg[f(g_coalg[q])]);
    if (!is_coalg_to_alg_hom(b_src, a_dst, moved.map) && transported.passed) {
      transported.passed = false;
      transported.witness = "g_alg . f . g_coalg is not a homomorphism for f=" + show(f.map);
    }
    // mu side: the induced map of the transported hom equals
    // g_alg . (induced map of f) . mu(g_coalg).
    for (const MuElement& e : classes) {
      const MuElement image{map_leaves(e.representative, g_coalg)};
      const std::size_t lhs = induced_alg_hom(a_dst, moved, e);
      const std::size_t rhs = g_alg[induced_alg_hom(a, f, image)];
      if (lhs != rhs && alg.passed) {
        alg.passed = false;
        alg.witness = "f=" + show(f.map) + " at " + show(e, b_src);
      }
    }
    // nu side: nu(g_alg) . (stream of f at g_coalg(q)) = stream of the
    // transported hom at q.
    for (std::size_t q = 0; q < b_src.size(); ++q) {
      const NuPointStream lhs = induced_coalg_hom(b_src, a_dst, moved, q);
      const NuPointStream rhs = induced_coalg_hom(b, a, f, g_coalg[q]);
      for (std::size_t k = 0; k <= depth; ++k) {
        if (!(lhs.component(k) == map_leaves(rhs.component(k), g_alg)) && coalg.passed) {
          coalg.passed = false;
          coalg.witness = "f=" + show(f.map) + " at " + b_src.carrier()[q] + ", stage " +
                          std::to_string(k);
        }
      }
    }
  }
  rep.checks.push_back(transported);
  rep.checks.push_back(alg);
  rep.checks.push_back(coalg);
  return rep;
}

RecursionReport corecursive_check(std::span<const Coalgebra> coalgebras) {
  RecursionReport rep;
  Check unique{"unique_hom_into_terminal_algebra", true, {}, {}};
  for (std::size_t i = 0; i < coalgebras.size(); ++i) {
    const Coalgebra& c = coalgebras[i];
    const std::size_t n = enumerate_coalg_to_alg(c, Algebra::terminal(c.signature())).size();
    rep.counts.push_back(n);
    if (n != 1 && unique.passed) {
      unique.passed = false;
      unique.witness = "coalgebra " + std::to_string(i) + " has " + std::to_string(n) +
                       " homomorphisms into the one-element algebra";
    }
  }
  rep.checks.push_back(unique);
  return rep;
}

bool is_well_founded(const Coalgebra& b) {
  // Kahn-style peeling: repeatedly remove generators whose structure only
  // mentions removed generators.
  const std::size_t n = b.size();
  std::vector<char> done(n, 0);
  std::size_t removed = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (done[x]) continue;
      const auto deps = leaves(b(x));
      if (std::all_of(deps.begin(), deps.end(), [&](std::size_t y) { return done[y] != 0; })) {
        done[x] = 1;
        ++removed;
        progress = true;
      }
    }
  }
  return removed == n;
}

RecursionReport wellfounded_recursive_check(const Coalgebra& b,
                                            std::span<const Algebra> algebras) {
  RecursionReport rep;
  rep.well_founded = is_well_founded(b);
  Check unique{"unique_hom_from_well_founded", true, {}, {}};
  if (!rep.well_founded) unique.note = "not well founded; counts reported without a verdict";
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    const std::size_t n = enumerate_coalg_to_alg(b, algebras[i]).size();
    rep.counts.push_back(n);
    if (rep.well_founded && n != 1 && unique.passed) {
      unique.passed = false;
      unique.witness = "well-founded coalgebra has " + std::to_string(n) +
                       " homomorphisms into algebra " + std::to_string(i);
    }
  }
  rep.checks.push_back(unique);
  return rep;
}

}  // namespace midfix

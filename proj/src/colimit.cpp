#include <algorithm>
#include <limits>
#include <set>

#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"

namespace midfix {

namespace {

Node relabel(const Node& n, std::span<const std::size_t> cls) {
  if (n.is_generator()) return Node::generator(cls[n.id]);
  Node out{n.kind, n.id, {}};
  out.children.reserve(n.children.size());
  for (const Node& c : n.children) out.children.push_back(relabel(c, cls));
  return out;
}

}  // namespace

ColimEq::ColimEq(Coalgebra b) : b_(std::move(b)) {
  const std::size_t n = b_.size();
  std::vector<char> rel(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) rel[x * n + x] = 1;

  // Monotone saturation from the diagonal; each round adds at least one pair
  // or stops, so at most |B|^2 rounds.
  bool grew = true;
  while (grew) {
    grew = false;
    ++rounds_;
    std::vector<char> next = rel;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (rel[x * n + y]) continue;
        const Node& bx = b_(x).root;
        const Node& by = b_(y).root;
        if (bx.id != by.id) continue;
        bool all = true;
        for (std::size_t i = 0; i < bx.children.size() && all; ++i) {
          all = rel[bx.children[i].id * n + by.children[i].id] != 0;
        }
        if (all) {
          next[x * n + y] = 1;
          grew = true;
        }
      }
    }
    rel = std::move(next);
  }

  class_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t least = x;
    for (std::size_t y = 0; y < x; ++y) {
      if (rel[x * n + y]) {
        least = y;
        break;
      }
    }
    class_[x] = least;
  }
  for (std::size_t x = 0; x < n; ++x) {
    shapes_.emplace(relabel(b_(x).root, class_), class_[x]);
  }
}

std::optional<std::size_t> ColimEq::generator_with_shape(const Node& shape) const {
  auto it = shapes_.find(shape);
  if (it == shapes_.end()) return std::nullopt;
  return it->second;
}

ColimEq colim_eq(const Coalgebra& b) { return ColimEq(b); }

MuElement mu_generator(std::size_t x) { return {Term::generator(x)}; }

MuElement mu_pad(const ColimEq& eq, const MuElement& e, std::size_t rank) {
  if (rank < e.rank()) {
    throw Error(Errc::ValidationError, "cannot pad a rank-" + std::to_string(e.rank()) +
                                           " element down to rank " + std::to_string(rank));
  }
  return {unfold(e.representative, eq.coalgebra().structure(), rank - e.rank())};
}

bool mu_eq(const ColimEq& eq, const MuElement& e1, const MuElement& e2) {
  const std::size_t rank = std::max(e1.rank(), e2.rank());
  const Term t1 = mu_pad(eq, e1, rank).representative;
  const Term t2 = mu_pad(eq, e2, rank).representative;
  return relabel(t1.root, eq.classes()) == relabel(t2.root, eq.classes());
}

namespace {

// Replaces every node at depth `bottom` by the generator whose structure it
// is, if each one has such a generator.
std::optional<Node> fold_bottom_layer(const ColimEq& eq, const Node& n, std::size_t depth,
                                      std::size_t bottom) {
  if (depth == bottom) {
    auto y = eq.generator_with_shape(n);
    if (!y) return std::nullopt;
    return Node::generator(*y);
  }
  if (n.children.empty()) return n;
  Node out{n.kind, n.id, {}};
  out.children.reserve(n.children.size());
  for (const Node& c : n.children) {
    auto folded = fold_bottom_layer(eq, c, depth + 1, bottom);
    if (!folded) return std::nullopt;
    out.children.push_back(std::move(*folded));
  }
  return out;
}

}  // namespace

MuElement mu_canonical(const ColimEq& eq, const MuElement& e) {
  Term t{e.rank(), relabel(e.representative.root, eq.classes())};
  while (t.rank > 0) {
    auto folded = fold_bottom_layer(eq, t.root, 0, t.rank - 1);
    if (!folded) break;
    t = {t.rank - 1, std::move(*folded)};
  }
  return {std::move(t)};
}

MuElement mu_algebra_apply(const ColimEq& eq, std::size_t op, std::span<const MuElement> args) {
  const Signature& sig = eq.coalgebra().signature();
  if (op >= sig.size()) {
    throw Error(Errc::ValidationError, "unknown operation " + std::to_string(op));
  }
  if (sig[op].arity != args.size()) {
    throw Error(Errc::ArityMismatch,
                "'" + sig[op].name + "' expects " + std::to_string(sig[op].arity) +
                    " arguments, got " + std::to_string(args.size()),
                {sig[op].name});
  }
  std::size_t rank = 0;
  for (const MuElement& e : args) rank = std::max(rank, e.rank());
  std::vector<Node> children;
  children.reserve(args.size());
  for (const MuElement& e : args) children.push_back(mu_pad(eq, e, rank).representative.root);
  return {Term{rank + 1, Node::operation(op, std::move(children))}};
}

MuElement mu_algebra_apply(const ColimEq& eq, std::string_view op,
                           std::span<const MuElement> args) {
  auto idx = eq.coalgebra().signature().find(op);
  if (!idx) {
    throw Error(Errc::ValidationError, "unknown operation '" + std::string(op) + "'",
                {std::string(op)});
  }
  return mu_algebra_apply(eq, *idx, args);
}

std::vector<MuElement> mu_enumerate(const ColimEq& eq, std::size_t max_rank, std::size_t cap) {
  const Coalgebra& b = eq.coalgebra();
  const Signature& sig = b.signature();

  std::set<MuElement> generators;
  for (std::size_t x = 0; x < b.size(); ++x) generators.insert(mu_generator(eq.class_of(x)));
  if (generators.size() > cap) throw CapExceeded(0, generators.size(), cap);

  // Classes with a representative of rank <= k+1 are the generators plus
  // every operation applied to classes of rank <= k.
  std::vector<MuElement> current(generators.begin(), generators.end());
  for (std::size_t k = 0; k < max_rank; ++k) {
    std::size_t work = generators.size();
    for (const Operation& op : sig.operations()) {
      std::size_t power = 1;
      for (std::size_t i = 0; i < op.arity; ++i) {
        if (!current.empty() && power > cap / current.size()) {
          power = std::numeric_limits<std::size_t>::max();
          break;
        }
        power *= current.size();
      }
      work = power > std::numeric_limits<std::size_t>::max() - work
                 ? std::numeric_limits<std::size_t>::max()
                 : work + power;
    }
    if (work > cap) throw CapExceeded(k + 1, work, cap);

    std::set<MuElement> next = generators;
    std::vector<MuElement> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t arity = sig[op].arity;
      if (arity > 0 && current.empty()) continue;
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        args.clear();
        for (std::size_t i : idx) args.push_back(current[i]);
        next.insert(mu_canonical(eq, mu_algebra_apply(eq, op, args)));
        std::size_t pos = arity;
        bool done = arity == 0;
        while (pos > 0) {
          --pos;
          if (++idx[pos] < current.size()) break;
          idx[pos] = 0;
          if (pos == 0) done = true;
        }
        if (done) break;
      }
    }
    current.assign(next.begin(), next.end());
  }
  return current;
}

std::size_t induced_alg_hom(const Algebra& a, const CoalgToAlgHom& f, const MuElement& e) {
  return fold(e.representative.root, a, f.map);
}

}  // namespace midfix

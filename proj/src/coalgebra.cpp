#include <algorithm>
#include <limits>
#include <set>

#include "midfix/error.hpp"
#include "midfix/fixcat.hpp"

namespace midfix {

namespace {

void check_unique(const std::vector<std::string>& carrier) {
  std::set<std::string> seen;
  for (const auto& c : carrier) {
    if (!seen.insert(c).second) {
      throw Error(Errc::ValidationError, "duplicate carrier element '" + c + "'", {c});
    }
  }
}

std::size_t table_size(std::size_t carrier, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (carrier != 0 && n > std::numeric_limits<std::size_t>::max() / carrier) {
      throw Error(Errc::CapExceeded, "algebra table too large");
    }
    n *= carrier;
  }
  return n;
}

}  // namespace

Coalgebra::Coalgebra(Signature sig, std::vector<std::string> carrier, std::vector<Term> structure)
    : sig_(std::move(sig)), carrier_(std::move(carrier)), structure_(std::move(structure)) {
  check_unique(carrier_);
  if (structure_.size() != carrier_.size()) {
    throw Error(Errc::ValidationError, "coalgebra structure is not total: " +
                                           std::to_string(structure_.size()) + " of " +
                                           std::to_string(carrier_.size()) + " elements");
  }
  for (std::size_t x = 0; x < structure_.size(); ++x) {
    if (structure_[x].rank != 1) {
      throw Error(Errc::ValidationError, "structure of '" + carrier_[x] + "' is not rank 1",
                  {carrier_[x]});
    }
    validate_term(sig_, carrier_.size(), structure_[x]);
  }
}

Algebra::Algebra(Signature sig, std::vector<std::string> carrier,
                 std::vector<std::vector<std::size_t>> tables)
    : sig_(std::move(sig)), carrier_(std::move(carrier)), tables_(std::move(tables)) {
  check_unique(carrier_);
  if (tables_.size() != sig_.size()) {
    throw Error(Errc::ValidationError, "algebra needs one table per operation");
  }
  for (std::size_t op = 0; op < sig_.size(); ++op) {
    const std::size_t expected = table_size(carrier_.size(), sig_[op].arity);
    if (tables_[op].size() != expected) {
      throw Error(Errc::ValidationError,
                  "table for '" + sig_[op].name + "' has " + std::to_string(tables_[op].size()) +
                      " entries, expected " + std::to_string(expected),
                  {sig_[op].name});
    }
    for (std::size_t v : tables_[op]) {
      if (v >= carrier_.size()) {
        throw Error(Errc::ValidationError, "table for '" + sig_[op].name + "' leaves the carrier",
                    {sig_[op].name});
      }
    }
  }
}

Algebra Algebra::terminal(Signature sig) {
  std::vector<std::vector<std::size_t>> tables(sig.size(), std::vector<std::size_t>{0});
  return Algebra(std::move(sig), {"*"}, std::move(tables));
}

std::size_t Algebra::apply(std::size_t op, std::span<const std::size_t> args) const {
  if (op >= sig_.size() || args.size() != sig_[op].arity) {
    throw Error(Errc::ArityMismatch, "bad application of operation " + std::to_string(op));
  }
  std::size_t idx = 0;
  for (std::size_t v : args) idx = idx * carrier_.size() + v;
  return tables_[op][idx];
}

std::size_t Algebra::apply(const Term& rank_one) const {
  std::vector<std::size_t> args;
  args.reserve(rank_one.root.children.size());
  for (const Node& c : rank_one.root.children) args.push_back(c.id);
  return apply(rank_one.root.id, args);
}

std::size_t fold(const Node& n, const Algebra& a, std::span<const std::size_t> f) {
  if (n.is_generator()) return f[n.id];
  std::vector<std::size_t> args;
  args.reserve(n.children.size());
  for (const Node& c : n.children) args.push_back(fold(c, a, f));
  return a.apply(n.id, args);
}

bool is_coalg_to_alg_hom(const Coalgebra& b, const Algebra& a, std::span<const std::size_t> f) {
  if (f.size() != b.size()) return false;
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (f[x] >= a.size() || fold(b(x).root, a, f) != f[x]) return false;
  }
  return true;
}

bool is_coalgebra_hom(const Coalgebra& from, const Coalgebra& to,
                      std::span<const std::size_t> g) {
  if (g.size() != from.size() || !(from.signature() == to.signature())) return false;
  for (std::size_t x = 0; x < from.size(); ++x) {
    if (g[x] >= to.size() || !(map_leaves(from(x), g) == to(g[x]))) return false;
  }
  return true;
}

bool is_algebra_hom(const Algebra& from, const Algebra& to, std::span<const std::size_t> g) {
  if (g.size() != from.size() || !(from.signature() == to.signature())) return false;
  if (std::any_of(g.begin(), g.end(), [&](std::size_t v) { return v >= to.size(); })) return false;
  for (const Term& t : f_enumerate(from.signature(), from.size())) {
    if (g[from.apply(t)] != to.apply(map_leaves(t, g))) return false;
  }
  return true;
}

std::vector<CoalgToAlgHom> enumerate_coalg_to_alg(const Coalgebra& b, const Algebra& a,
                                                  std::size_t cap) {
  const std::size_t n = b.size();
  const std::size_t m = a.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m != 0 && total > cap / m) throw CapExceeded(i + 1, total * m, cap);
    total *= m;
  }

  std::vector<CoalgToAlgHom> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<std::size_t> f(n, 0);
  while (true) {
    if (is_coalg_to_alg_hom(b, a, f)) out.push_back({f});
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++f[pos] < m) break;
      f[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

namespace {

Node collapse_node(const Node& n, const Algebra& a, std::size_t depth, std::size_t bottom) {
  if (depth == bottom) {
    std::vector<std::size_t> args;
    args.reserve(n.children.size());
    for (const Node& c : n.children) args.push_back(c.id);
    return Node::generator(a.apply(n.id, args));
  }
  if (n.children.empty()) return n;
  Node out{n.kind, n.id, {}};
  out.children.reserve(n.children.size());
  for (const Node& c : n.children) out.children.push_back(collapse_node(c, a, depth + 1, bottom));
  return out;
}

}  // namespace

Term collapse_bottom(const Term& t, const Algebra& a) {
  if (t.rank == 0) throw Error(Errc::ValidationError, "collapse_bottom needs rank >= 1");
  return {t.rank - 1, collapse_node(t.root, a, 0, t.rank - 1)};
}

std::vector<std::size_t> NuApprox::level_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.size());
  return out;
}

NuApprox nu_approx(const Algebra& a, std::size_t depth, std::size_t cap) {
  const auto sizes = midfix::level_sizes(a.signature(), a.size(), depth);
  for (std::size_t k = 0; k <= depth; ++k) {
    if (sizes[k] > cap) throw CapExceeded(k, sizes[k], cap);
  }
  NuApprox nu;
  nu.depth = depth;
  for (std::size_t k = 0; k <= depth; ++k) {
    nu.levels.push_back(enumerate_rank(a.signature(), a.size(), k, cap));
  }
  for (std::size_t k = 0; k < depth; ++k) {
    const auto& lower = nu.levels[k];
    std::vector<std::size_t> proj;
    proj.reserve(nu.levels[k + 1].size());
    for (const Term& t : nu.levels[k + 1]) {
      const Term image = collapse_bottom(t, a);
      auto it = std::lower_bound(lower.begin(), lower.end(), image);
      if (it == lower.end() || !(*it == image)) {
        throw std::logic_error("nu_approx: projection left the previous level");
      }
      proj.push_back(static_cast<std::size_t>(it - lower.begin()));
    }
    nu.projections.push_back(std::move(proj));
  }
  return nu;
}

NuPointStream::NuPointStream(Coalgebra b, Algebra a, CoalgToAlgHom f, std::size_t x)
    : b_(std::move(b)), a_(std::move(a)), f_(std::move(f)), x_(x) {
  if (x_ >= b_.size()) throw Error(Errc::ValidationError, "stream source outside the carrier");
  if (f_.map.size() != b_.size()) throw Error(Errc::ValidationError, "homomorphism not total");
}

Term NuPointStream::component(std::size_t k) const {
  return map_leaves(unfold(Term::generator(x_), b_.structure(), k), f_.map);
}

bool NuPointStream::compatible_up_to(std::size_t depth) const {
  Term lower = component(0);
  for (std::size_t k = 0; k < depth; ++k) {
    Term upper = component(k + 1);
    if (!(collapse_bottom(upper, a_) == lower)) return false;
    lower = std::move(upper);
  }
  return true;
}

NuPointStream induced_coalg_hom(const Coalgebra& b, const Algebra& a, const CoalgToAlgHom& f,
                                std::size_t x) {
  return NuPointStream(b, a, f, x);
}

NuApprox terminal_coalgebra_approx(const Signature& sig, std::size_t depth, std::size_t cap) {
  return nu_approx(Algebra::terminal(sig), depth, cap);
}

NuPointStream infinite_trace(const Coalgebra& b, std::size_t x) {
  Algebra one = Algebra::terminal(b.signature());
  return NuPointStream(b, std::move(one), CoalgToAlgHom{std::vector<std::size_t>(b.size(), 0)}, x);
}

}  // namespace midfix

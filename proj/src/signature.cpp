#include "midfix/signature.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "midfix/error.hpp"

namespace midfix {

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
  std::sort(ops_.begin(), ops_.end(),
            [](const Operation& a, const Operation& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name.empty()) throw Error(Errc::ValidationError, "operation with empty name");
    if (i > 0 && ops_[i].name == ops_[i - 1].name) {
      throw Error(Errc::ValidationError, "duplicate operation '" + ops_[i].name + "'",
                  {ops_[i].name});
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  auto it = std::lower_bound(ops_.begin(), ops_.end(), name,
                             [](const Operation& op, std::string_view n) { return op.name < n; });
  if (it == ops_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - ops_.begin());
}

bool Signature::has_constant() const noexcept {
  return std::any_of(ops_.begin(), ops_.end(), [](const Operation& op) { return op.arity == 0; });
}

namespace {

void validate_node(const Signature& sig, std::size_t generators, const Node& n,
                   std::size_t depth, std::size_t rank) {
  if (n.is_generator()) {
    if (!n.children.empty()) throw Error(Errc::ValidationError, "generator leaf with children");
    if (n.id >= generators) {
      throw Error(Errc::ValidationError, "unknown generator " + std::to_string(n.id));
    }
    if (depth != rank) {
      throw Error(Errc::ValidationError, "generator leaf at depth " + std::to_string(depth) +
                                             " in a rank-" + std::to_string(rank) + " term");
    }
    return;
  }
  if (n.id >= sig.size()) {
    throw Error(Errc::ValidationError, "unknown operation " + std::to_string(n.id));
  }
  const Operation& op = sig[n.id];
  if (op.arity != n.children.size()) {
    throw Error(Errc::ArityMismatch,
                "'" + op.name + "' expects " + std::to_string(op.arity) + " arguments, got " +
                    std::to_string(n.children.size()),
                {op.name});
  }
  if (depth >= rank) {
    throw Error(Errc::ValidationError, "operation '" + op.name + "' at depth " +
                                           std::to_string(depth) + " in a rank-" +
                                           std::to_string(rank) + " term",
                {op.name});
  }
  for (const Node& c : n.children) validate_node(sig, generators, c, depth + 1, rank);
}

// Cartesian product of `pool` with itself `arity` times, lexicographic.
void for_each_tuple(std::size_t pool, std::size_t arity,
                    const auto& visit) {
  std::vector<std::size_t> idx(arity, 0);
  if (arity > 0 && pool == 0) return;
  while (true) {
    visit(idx);
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < pool) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (arity == 0) return;
  }
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return b > std::numeric_limits<std::size_t>::max() - a ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

std::vector<Term> apply_layer(const Signature& sig, const std::vector<Term>& level,
                              std::size_t rank) {
  std::vector<Term> out;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    for_each_tuple(level.size(), sig[op].arity, [&](const std::vector<std::size_t>& idx) {
      std::vector<Node> children;
      children.reserve(idx.size());
      for (std::size_t i : idx) children.push_back(level[i].root);
      out.push_back({rank, Node::operation(op, std::move(children))});
    });
  }
  return out;
}

Node unfold_node(const Node& n, std::span<const Term> structure) {
  if (n.is_generator()) return structure[n.id].root;
  Node out{n.kind, n.id, {}};
  out.children.reserve(n.children.size());
  for (const Node& c : n.children) out.children.push_back(unfold_node(c, structure));
  return out;
}

Node map_node(const Node& n, std::span<const std::size_t> g) {
  if (n.is_generator()) return Node::generator(g[n.id]);
  Node out{n.kind, n.id, {}};
  out.children.reserve(n.children.size());
  for (const Node& c : n.children) out.children.push_back(map_node(c, g));
  return out;
}

void collect_leaves(const Node& n, std::vector<std::size_t>& out) {
  if (n.is_generator()) {
    out.push_back(n.id);
    return;
  }
  for (const Node& c : n.children) collect_leaves(c, out);
}

}  // namespace

void validate_term(const Signature& sig, std::size_t generators, const Term& t) {
  validate_node(sig, generators, t.root, 0, t.rank);
}

std::vector<Term> f_enumerate(const Signature& sig, std::size_t generators) {
  std::vector<Term> base;
  base.reserve(generators);
  for (std::size_t x = 0; x < generators; ++x) base.push_back(Term::generator(x));
  return apply_layer(sig, base, 1);
}

std::vector<std::size_t> level_sizes(const Signature& sig, std::size_t generators,
                                     std::size_t n) {
  std::vector<std::size_t> sizes{generators};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t next = 0;
    for (const Operation& op : sig.operations()) {
      std::size_t power = 1;
      for (std::size_t i = 0; i < op.arity; ++i) power = sat_mul(power, sizes.back());
      next = sat_add(next, power);
    }
    sizes.push_back(next);
  }
  return sizes;
}

std::vector<Term> enumerate_rank(const Signature& sig, std::size_t generators, std::size_t n,
                                 std::size_t cap) {
  const auto sizes = level_sizes(sig, generators, n);
  for (std::size_t k = 0; k <= n; ++k) {
    if (sizes[k] > cap) throw CapExceeded(k, sizes[k], cap);
  }
  std::vector<Term> level;
  level.reserve(generators);
  for (std::size_t x = 0; x < generators; ++x) level.push_back(Term::generator(x));
  for (std::size_t k = 0; k < n; ++k) {
    level = apply_layer(sig, level, k + 1);
  }
  return level;
}

Term unfold_once(const Term& t, std::span<const Term> structure) {
  return {t.rank + 1, unfold_node(t.root, structure)};
}

Term unfold(Term t, std::span<const Term> structure, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) t = unfold_once(t, structure);
  return t;
}

Term map_leaves(const Term& t, std::span<const std::size_t> g) {
  return {t.rank, map_node(t.root, g)};
}

std::vector<std::size_t> leaves(const Term& t) {
  std::vector<std::size_t> out;
  collect_leaves(t.root, out);
  return out;
}

Term with_rank(Term t, std::size_t rank) {
  t.rank = rank;
  return t;
}

std::string to_string(const Node& n, const Signature& sig,
                      std::span<const std::string> generator_names) {
  if (n.is_generator()) {
    return n.id < generator_names.size() ? generator_names[n.id] : "#" + std::to_string(n.id);
  }
  std::string out = sig[n.id].name;
  if (n.children.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(n.children[i], sig, generator_names);
  }
  out += ')';
  return out;
}

std::string to_string(const Term& t, const Signature& sig,
                      std::span<const std::string> generator_names) {
  return to_string(t.root, sig, generator_names);
}

}  // namespace midfix

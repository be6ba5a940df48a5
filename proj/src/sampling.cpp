#include "midfix/sampling.hpp"

#include "midfix/error.hpp"

namespace midfix {

Signature random_signature(Rng& rng, const InstanceLimits& lim) {
  static constexpr char kPrefix[] = {'k', 'u', 'b', 't', 'q'};
  const std::size_t n = rng.between(1, lim.max_ops);
  std::vector<Operation> ops;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t arity = rng.between(0, lim.max_arity);
    const char prefix = arity < sizeof(kPrefix) ? kPrefix[arity] : 'o';
    ops.push_back({std::string(1, prefix) + std::to_string(i), arity});
  }
  return Signature(std::move(ops));
}

Coalgebra random_coalgebra(Rng& rng, const Signature& sig, const InstanceLimits& lim) {
  const std::size_t lo = sig.size() == 0 || sig.has_constant() ? 0 : 1;
  const std::size_t n = sig.size() == 0 ? 0 : rng.between(lo, lim.max_carrier);
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < n; ++i) carrier.push_back("p" + std::to_string(i));
  std::vector<Term> structure;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t op = rng.below(sig.size());
    std::vector<Node> children;
    for (std::size_t i = 0; i < sig[op].arity; ++i) children.push_back(Node::generator(rng.below(n)));
    structure.push_back({1, Node::operation(op, std::move(children))});
  }
  return Coalgebra(sig, std::move(carrier), std::move(structure));
}

Algebra random_algebra(Rng& rng, const Signature& sig, const InstanceLimits& lim) {
  const std::size_t n = rng.between(1, lim.max_carrier);
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < n; ++i) carrier.push_back(std::to_string(i));
  std::vector<std::vector<std::size_t>> tables;
  for (const Operation& op : sig.operations()) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < op.arity; ++i) size *= n;
    std::vector<std::size_t> table(size);
    for (auto& v : table) v = rng.below(n);
    tables.push_back(std::move(table));
  }
  return Algebra(sig, std::move(carrier), std::move(tables));
}

FinSet numbered_set(std::size_t n, const std::string& prefix) {
  FinSet s;
  for (std::size_t i = 0; i < n; ++i) s.elements.push_back(prefix + std::to_string(i));
  return s;
}

FinRel random_relation(Rng& rng, const FinSet& source, const FinSet& target) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < target.size(); ++y)
      if (rng.coin()) pairs.emplace_back(x, y);
  return FinRel(source, target, std::move(pairs));
}

std::vector<AdjunctionInstance> random_adjunction_instances(Rng& rng, std::size_t count,
                                                            std::size_t max_rank, std::size_t cap,
                                                            const InstanceLimits& lim,
                                                            std::size_t* rejected) {
  std::vector<AdjunctionInstance> out;
  while (out.size() < count) {
    const Signature sig = random_signature(rng, lim);
    Coalgebra b = random_coalgebra(rng, sig, lim);
    Algebra a = random_algebra(rng, sig, lim);
    try {
      mu_enumerate(ColimEq(b), max_rank, cap);
    } catch (const CapExceeded&) {
      if (rejected) ++*rejected;
      continue;
    }
    out.push_back({std::move(b), std::move(a)});
  }
  return out;
}

RelEndo random_rel_endo(Rng& rng, std::size_t max_set) {
  switch (rng.below(4)) {
    case 0:
      return identity_functor();
    case 1:
      return constant_functor(numbered_set(rng.between(0, max_set), "k"));
    case 2: {
      // X + K as the polynomial with one unary and |K| constant operations.
      std::vector<Operation> ops{{"in", 1}};
      const std::size_t k = rng.between(1, 2);
      for (std::size_t i = 0; i < k; ++i) ops.push_back({"c" + std::to_string(i), 0});
      return polynomial_functor(Signature(std::move(ops)));
    }
    default: {
      // Two unary operations (X + X), optionally with a constant.
      std::vector<Operation> ops{{"l", 1}, {"r", 1}};
      if (rng.coin()) ops.push_back({"e", 0});
      return polynomial_functor(Signature(std::move(ops)));
    }
  }
}

}  // namespace midfix

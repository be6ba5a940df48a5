#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace midfix {

/// Default bound on the number of terms any enumeration may produce.
inline constexpr std::size_t kDefaultTermCap = 100'000;

struct Operation {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A polynomial endofunctor F(X) = sum over operations of X^arity.
/// Operations are kept sorted by name; an operation's index is its rank in
/// that order.
class Signature {
 public:
  Signature() = default;
  /// Throws Error(ValidationError) on duplicate or empty names.
  explicit Signature(std::vector<Operation> ops);

  std::size_t size() const noexcept { return ops_.size(); }
  std::span<const Operation> operations() const noexcept { return ops_; }
  const Operation& operator[](std::size_t op) const { return ops_.at(op); }
  std::optional<std::size_t> find(std::string_view name) const;
  bool has_constant() const noexcept;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Operation> ops_;
};

enum class NodeKind : std::uint8_t { Operation, Generator };

/// A tree node: either a generator leaf (id indexes the generator set) or an
/// operation node (id indexes the signature, children match its arity).
struct Node {
  NodeKind kind = NodeKind::Generator;
  std::size_t id = 0;
  std::vector<Node> children;

  static Node generator(std::size_t x) { return {NodeKind::Generator, x, {}}; }
  static Node operation(std::size_t op, std::vector<Node> children = {}) {
    return {NodeKind::Operation, op, std::move(children)};
  }

  bool is_generator() const noexcept { return kind == NodeKind::Generator; }

  friend bool operator==(const Node&, const Node&) = default;
  friend std::strong_ordering operator<=>(const Node&, const Node&) = default;
};

/// An element of F^rank(X): every generator leaf sits at depth exactly
/// `rank`, constants sit strictly above it.
struct Term {
  std::size_t rank = 0;
  Node root;

  static Term generator(std::size_t x) { return {0, Node::generator(x)}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;
};

/// Index into the omega chain X -> F X -> F^2 X -> ...
struct ChainIndex {
  std::size_t level = 0;

  friend auto operator<=>(const ChainIndex&, const ChainIndex&) = default;
};

/// Throws Error(ValidationError) describing the first violated term
/// invariant (leaf depth, arity, unknown operation or generator).
void validate_term(const Signature& sig, std::size_t generators, const Term& t);

/// F(X): all sigma(x1..xm), ordered by operation then argument tuple.
std::vector<Term> f_enumerate(const Signature& sig, std::size_t generators);

/// F^n(X) in the same deterministic order. Throws CapExceeded when some
/// level up to n has more than `cap` elements.
std::vector<Term> enumerate_rank(const Signature& sig, std::size_t generators, std::size_t n,
                                 std::size_t cap = kDefaultTermCap);

/// |F^k(X)| for k = 0..n by c_0 = |X|, c_{k+1} = sum_sigma c_k^arity,
/// saturating at SIZE_MAX.
std::vector<std::size_t> level_sizes(const Signature& sig, std::size_t generators,
                                     std::size_t n);

/// Replaces every generator leaf x by structure[x] (a rank-1 term); the
/// result has rank t.rank + 1.
Term unfold_once(const Term& t, std::span<const Term> structure);

/// unfold_once applied `times` times.
Term unfold(Term t, std::span<const Term> structure, std::size_t times);

/// Relabels generator leaves through g; rank and shape are kept.
Term map_leaves(const Term& t, std::span<const std::size_t> g);

/// Generator leaves in left-to-right order.
std::vector<std::size_t> leaves(const Term& t);

/// Pads a term to a higher rank along the chain without changing anything
/// but the rank annotation. Only valid for closed terms (no generator leaves).
Term with_rank(Term t, std::size_t rank);

std::string to_string(const Term& t, const Signature& sig,
                      std::span<const std::string> generator_names);
std::string to_string(const Node& n, const Signature& sig,
                      std::span<const std::string> generator_names);

}  // namespace midfix

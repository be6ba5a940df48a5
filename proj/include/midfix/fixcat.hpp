#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "midfix/check.hpp"
#include "midfix/signature.hpp"

namespace midfix {

/// A finite F-coalgebra b : B -> F B. structure[x] is a rank-1 term over B.
class Coalgebra {
 public:
  Coalgebra() = default;
  /// Throws Error(ValidationError) unless every structure term is a valid
  /// rank-1 term over the carrier.
  Coalgebra(Signature sig, std::vector<std::string> carrier, std::vector<Term> structure);

  const Signature& signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  std::span<const std::string> carrier() const noexcept { return carrier_; }
  std::span<const Term> structure() const noexcept { return structure_; }
  const Term& operator()(std::size_t x) const { return structure_.at(x); }

  friend bool operator==(const Coalgebra&, const Coalgebra&) = default;

 private:
  Signature sig_;
  std::vector<std::string> carrier_;
  std::vector<Term> structure_;
};

/// A finite F-algebra a : F A -> A, stored as one dense table per operation
/// indexed by the argument tuple read as a base-|A| number.
class Algebra {
 public:
  Algebra() = default;
  /// Throws Error(ValidationError) unless each table has |A|^arity entries,
  /// all inside the carrier.
  Algebra(Signature sig, std::vector<std::string> carrier,
          std::vector<std::vector<std::size_t>> tables);

  /// The unique algebra on the one-element carrier {"*"}.
  static Algebra terminal(Signature sig);

  const Signature& signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  std::span<const std::string> carrier() const noexcept { return carrier_; }
  std::span<const std::vector<std::size_t>> tables() const noexcept { return tables_; }

  std::size_t apply(std::size_t op, std::span<const std::size_t> args) const;
  /// Evaluates a rank-1 term over the carrier.
  std::size_t apply(const Term& rank_one) const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  Signature sig_;
  std::vector<std::string> carrier_;
  std::vector<std::vector<std::size_t>> tables_;
};

/// f : B -> A with f = a . F f . b.
struct CoalgToAlgHom {
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t x) const { return map.at(x); }
  friend bool operator==(const CoalgToAlgHom&, const CoalgToAlgHom&) = default;
  friend auto operator<=>(const CoalgToAlgHom&, const CoalgToAlgHom&) = default;
};

bool is_coalg_to_alg_hom(const Coalgebra& b, const Algebra& a, std::span<const std::size_t> f);

/// g : B' -> B with b . g = F g . b'.
bool is_coalgebra_hom(const Coalgebra& from, const Coalgebra& to, std::span<const std::size_t> g);

/// g : A -> A' with g . a = a' . F g.
bool is_algebra_hom(const Algebra& from, const Algebra& to, std::span<const std::size_t> g);

/// Every coalgebra-to-algebra homomorphism, in lexicographic order of the
/// assignment. Throws CapExceeded when |A|^|B| exceeds `cap`.
std::vector<CoalgToAlgHom> enumerate_coalg_to_alg(const Coalgebra& b, const Algebra& a,
                                                  std::size_t cap = kDefaultTermCap);

/// Evaluates a term through the algebra, reading generator leaves via f.
std::size_t fold(const Node& n, const Algebra& a, std::span<const std::size_t> f);

/// The chain map F^k(a) : F^{k+1} A -> F^k A. Each deepest operation layer
/// is evaluated in the algebra. Throws Error(ValidationError) on rank 0.
Term collapse_bottom(const Term& t, const Algebra& a);

// ---------------------------------------------------------------------------
// The colimit mu(b) of B -> F B -> F^2 B -> ...

/// Equality of generators in the colimit: the least relation containing the
/// diagonal and closed under "same operation at the root of b(x) and b(y),
/// related leaves pairwise". It is an equivalence; classes are represented by
/// their least member.
class ColimEq {
 public:
  explicit ColimEq(Coalgebra b);

  const Coalgebra& coalgebra() const noexcept { return b_; }
  bool related(std::size_t x, std::size_t y) const { return class_of(x) == class_of(y); }
  std::size_t class_of(std::size_t x) const { return class_.at(x); }
  std::span<const std::size_t> classes() const noexcept { return class_; }
  /// Saturation rounds until the relation stopped growing.
  std::size_t rounds() const noexcept { return rounds_; }
  /// Least generator whose structure is `shape` modulo the relation, if any.
  /// `shape` must already have class representatives at its leaves.
  std::optional<std::size_t> generator_with_shape(const Node& shape) const;

 private:
  Coalgebra b_;
  std::vector<std::size_t> class_;
  std::map<Node, std::size_t> shapes_;
  std::size_t rounds_ = 0;
};

ColimEq colim_eq(const Coalgebra& b);

/// A point of mu(b), represented by an element of F^n(B) for some n.
struct MuElement {
  Term representative;

  std::size_t rank() const noexcept { return representative.rank; }
  friend bool operator==(const MuElement&, const MuElement&) = default;
  friend auto operator<=>(const MuElement&, const MuElement&) = default;
};

/// The injection of a generator at stage 0.
MuElement mu_generator(std::size_t x);

/// Moves a representative up the chain to `rank` by unfolding along b.
MuElement mu_pad(const ColimEq& eq, const MuElement& e, std::size_t rank);

bool mu_eq(const ColimEq& eq, const MuElement& e1, const MuElement& e2);

/// The minimal-rank representative of e's class, with every leaf replaced by
/// the least generator of its class. Two elements are mu_eq iff their
/// canonical forms are identical.
MuElement mu_canonical(const ColimEq& eq, const MuElement& e);

/// Canonical representatives of every class reachable at rank <= max_rank,
/// sorted by (rank, term). Throws CapExceeded.
std::vector<MuElement> mu_enumerate(const ColimEq& eq, std::size_t max_rank,
                                    std::size_t cap = kDefaultTermCap);

/// The algebra structure F mu(b) -> mu(b). Throws Error(ArityMismatch).
MuElement mu_algebra_apply(const ColimEq& eq, std::size_t op, std::span<const MuElement> args);
MuElement mu_algebra_apply(const ColimEq& eq, std::string_view op,
                           std::span<const MuElement> args);

/// The algebra homomorphism mu(b) -> a induced by f.
std::size_t induced_alg_hom(const Algebra& a, const CoalgToAlgHom& f, const MuElement& e);

// ---------------------------------------------------------------------------
// The limit nu(a) of A <- F A <- F^2 A <- ...

/// Stages 0..depth of the limit chain. projections[k][i] is the index in
/// levels[k] of collapse_bottom(levels[k+1][i]).
struct NuApprox {
  std::size_t depth = 0;
  std::vector<std::vector<Term>> levels;
  std::vector<std::vector<std::size_t>> projections;

  std::vector<std::size_t> level_sizes() const;
};

NuApprox nu_approx(const Algebra& a, std::size_t depth, std::size_t cap = kDefaultTermCap);

/// A point of nu(a) given by its stage-k components, computed on demand.
/// component(k) = F^k(f) applied to the k-fold unfolding of x along b.
class NuPointStream {
 public:
  NuPointStream(Coalgebra b, Algebra a, CoalgToAlgHom f, std::size_t x);

  Term component(std::size_t k) const;
  /// collapse_bottom(component(k+1)) == component(k) for every k < depth.
  bool compatible_up_to(std::size_t depth) const;

  const Algebra& algebra() const noexcept { return a_; }
  std::size_t source() const noexcept { return x_; }

 private:
  Coalgebra b_;
  Algebra a_;
  CoalgToAlgHom f_;
  std::size_t x_;
};

NuPointStream induced_coalg_hom(const Coalgebra& b, const Algebra& a, const CoalgToAlgHom& f,
                                std::size_t x);

/// nu_approx of the one-element algebra.
NuApprox terminal_coalgebra_approx(const Signature& sig, std::size_t depth,
                                   std::size_t cap = kDefaultTermCap);

/// The point of the final coalgebra reached from x: the stream induced by
/// the unique homomorphism into the one-element algebra.
NuPointStream infinite_trace(const Coalgebra& b, std::size_t x);

// ---------------------------------------------------------------------------
// Checks. Every bound (rank, depth) is echoed in the report; nothing is
// verified beyond it.

struct AdjunctionReport {
  std::size_t depth = 0;
  std::size_t max_rank = 0;
  std::size_t mu_classes = 0;
  std::vector<CoalgToAlgHom> homs;
  std::size_t alg_side_verified = 0;
  std::size_t coalg_side_verified = 0;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

AdjunctionReport adjunction_check(const Coalgebra& b, const Algebra& a, std::size_t depth,
                                  std::size_t max_rank, std::size_t cap = kDefaultTermCap);

struct NaturalityReport {
  std::size_t homs = 0;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

/// g_coalg : b_src -> b (coalgebra hom), g_alg : a -> a_dst (algebra hom).
/// For each f in CoalgToAlg(b, a), transporting f and then inducing agrees
/// with inducing and then composing, on both sides of the adjunction.
NaturalityReport naturality_check(const Coalgebra& b, const Coalgebra& b_src, const Algebra& a,
                                  const Algebra& a_dst, std::span<const std::size_t> g_coalg,
                                  std::span<const std::size_t> g_alg, std::size_t depth,
                                  std::size_t max_rank, std::size_t cap = kDefaultTermCap);

struct RecursionReport {
  bool well_founded = false;
  std::vector<std::size_t> counts;  // one per algebra / coalgebra inspected
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

/// |CoalgToAlg(c, 1)| == 1 for every coalgebra.
RecursionReport corecursive_check(std::span<const Coalgebra> coalgebras);

/// No cycle in x -> (generator leaves of b(x)).
bool is_well_founded(const Coalgebra& b);

/// If b is well founded, exactly one homomorphism into each algebra;
/// otherwise the counts are reported without a verdict.
RecursionReport wellfounded_recursive_check(const Coalgebra& b,
                                            std::span<const Algebra> algebras);

}  // namespace midfix

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "midfix/check.hpp"
#include "midfix/signature.hpp"

namespace midfix {

/// A finite set of opaque element labels. Equality is label-list equality.
struct FinSet {
  std::vector<std::string> elements;

  std::size_t size() const noexcept { return elements.size(); }
  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet&, const FinSet&) = default;
};

/// A relation source -> target. `pairs` is kept sorted and duplicate-free,
/// so two relations are equal iff their pair sets are.
class FinRel {
 public:
  FinRel() = default;
  /// Throws Error(ValidationError) if a pair leaves source x target.
  FinRel(FinSet source, FinSet target, std::vector<std::pair<std::size_t, std::size_t>> pairs);

  static FinRel identity(const FinSet& x);

  const FinSet& source() const noexcept { return source_; }
  const FinSet& target() const noexcept { return target_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }
  bool contains(std::size_t x, std::size_t y) const;

  /// A bijective function, i.e. an isomorphism in the category of relations.
  bool is_isomorphism() const;

  friend bool operator==(const FinRel&, const FinRel&) = default;
  friend auto operator<=>(const FinRel&, const FinRel&) = default;

 private:
  FinSet source_;
  FinSet target_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Diagrammatic composition r ; s. Throws Error(ObjectMismatch).
FinRel rel_compose(const FinRel& r, const FinRel& s);

/// Converse.
FinRel rel_dagger(const FinRel& r);

struct DaggerLawsReport {
  std::size_t relations = 0;
  std::size_t composable_pairs = 0;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
};

/// Involution, identity on objects and contravariance over every composable
/// pair drawn from `sample`.
DaggerLawsReport dagger_laws_check(const std::vector<FinRel>& sample);

/// Every relation between every ordered pair of `objects`.
std::vector<FinRel> all_relations(const std::vector<FinSet>& objects);

/// An endofunctor on finite sets and relations given by explicit maps.
struct RelEndo {
  std::string name;
  std::function<FinSet(const FinSet&)> object_map;
  std::function<FinRel(const FinRel&)> rel_map;

  FinSet operator()(const FinSet& x) const { return object_map(x); }
  FinRel operator()(const FinRel& r) const { return rel_map(r); }
};

RelEndo identity_functor();
/// X |-> K, r |-> id_K.
RelEndo constant_functor(FinSet k);
/// The relation lifting of a polynomial functor: sigma(xs) relates to
/// sigma(ys) iff the arguments are related pairwise. Elements of F X are
/// labelled by their term text.
RelEndo polynomial_functor(Signature sig);
/// Finite tables. Objects or relations outside the table throw
/// Error(ValidationError).
RelEndo table_functor(std::string name, std::vector<std::pair<FinSet, FinSet>> objects,
                      std::vector<std::pair<FinRel, FinRel>> relations);

/// Identities, composition and F(r^dagger) = F(r)^dagger on the relations in
/// `sample` (and composable pairs among them).
std::vector<Check> rel_endo_laws_check(const RelEndo& f, const std::vector<FinRel>& sample);

enum class ChainDirection { Colimit, Limit };

/// Colimit chains have connectors objects[k] -> objects[k+1]; limit chains
/// have connectors objects[k+1] -> objects[k].
struct RelChain {
  ChainDirection direction = ChainDirection::Colimit;
  std::vector<FinSet> objects;
  std::vector<FinRel> connectors;

  /// Throws Error(ObjectMismatch) when a connector does not fit its stage.
  void validate() const;
};

/// Stages 0..stages-1 of X -> F X -> F^2 X -> ... for c : X -> F X,
/// stopping early when an object would exceed `max_object` elements.
RelChain mu_chain(const RelEndo& f, const FinRel& c, std::size_t stages,
                  std::size_t max_object = 4096);

/// Stages of X <- F X <- F^2 X <- ... for a : F X -> X.
RelChain nu_chain(const RelEndo& f, const FinRel& a, std::size_t stages,
                  std::size_t max_object = 4096);

/// The first stage k such that every connector from k on is an isomorphism
/// (at least one such connector must exist in the prefix). For colimit and
/// limit chains alike, objects[k] is then the (co)limit.
std::optional<std::size_t> chain_colimit_stabilized(const RelChain& chain);
std::optional<std::size_t> chain_limit_stabilized(const RelChain& chain);

struct CoincidenceReport {
  std::size_t stages = 0;
  std::optional<std::size_t> mu_stage;
  std::optional<std::size_t> nu_stage;
  std::optional<FinSet> mu_object;
  std::optional<FinSet> nu_object;
  std::vector<Check> checks;

  bool stabilized() const { return mu_stage.has_value(); }
  bool passed() const { return all_passed(checks); }
};

/// Builds the mu-chain of c : X -> F X and the nu-chain of its converse and
/// checks them stage by stage; when the mu-chain stabilizes, checks that the
/// nu-chain stabilizes at the same stage on the same object.
CoincidenceReport coincidence_check(const RelEndo& f, const FinRel& c, std::size_t bound = 32,
                                    std::size_t max_object = 4096);

}  // namespace midfix

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "midfix/dagger.hpp"
#include "midfix/fixcat.hpp"
#include "midfix/lattice.hpp"

namespace midfix {

using json = nlohmann::json;

/// Dagger endofunctor description as read from a functor spec file.
struct FunctorSpec {
  std::string kind = "identity";  // identity | constant | polynomial | table
  FinSet constant;
  Signature signature;
  std::vector<std::pair<FinSet, FinSet>> objects;
  std::vector<std::pair<FinRel, FinRel>> relations;

  RelEndo build() const;
  friend bool operator==(const FunctorSpec&, const FunctorSpec&) = default;
};

using Spec = std::variant<MonotoneMap, FinLattice, Signature, Coalgebra, Algebra, FinRel,
                          FunctorSpec>;

/// Parses JSON text and dispatches on its keys:
///   elements/leq[/map]            lattice (with map: monotone map)
///   ops                           signature
///   sig/carrier/structure{...}    coalgebra
///   sig/carrier/structure[...]    algebra
///   source/target/pairs           relation
///   kind                          functor
/// Throws Error(ParseError) for malformed JSON and Error(ValidationError)
/// (or the law-specific code) for ill-formed specs.
Spec parse_spec(std::string_view text);
Spec parse_spec(const json& j);
inline Spec parse_spec(const std::string& text) { return parse_spec(std::string_view(text)); }
inline Spec parse_spec(const char* text) { return parse_spec(std::string_view(text)); }

Signature signature_from_json(const json& j);
FinLattice lattice_from_json(const json& j);
MonotoneMap monotone_map_from_json(const json& j);
Coalgebra coalgebra_from_json(const json& j);
Algebra algebra_from_json(const json& j);
FinRel relation_from_json(const json& j);
FunctorSpec functor_from_json(const json& j);

json to_json(const Signature& sig);
json to_json(const FinLattice& l);
json to_json(const MonotoneMap& f);
json to_json(const Coalgebra& b);
json to_json(const Algebra& a);
json to_json(const FinRel& r);
json to_json(const FunctorSpec& f);
json to_json(const Spec& spec);

/// Reads a whole file; throws Error(ParseError) if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace midfix

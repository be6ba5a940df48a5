#include "midfix/spec_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "midfix/error.hpp"

namespace midfix {

namespace {

[[noreturn]] void invalid(const std::string& what, const std::string& witness = {}) {
  std::vector<std::string> w;
  if (!witness.empty()) w.push_back(witness);
  throw Error(Errc::ValidationError, what, std::move(w));
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing key '") + key + "'", key);
  return j.at(key);
}

// Element labels may be written as strings or as plain numbers.
std::string label(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  invalid("expected a string or integer label in '" + where + "', got " + j.dump(), where);
}

std::vector<std::string> labels(const json& j, const std::string& where) {
  if (!j.is_array()) invalid("'" + where + "' must be an array", where);
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(label(e, where));
  return out;
}

std::map<std::string, std::size_t> index_of(const std::vector<std::string>& xs) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < xs.size(); ++i) m.emplace(xs[i], i);
  return m;
}

std::size_t lookup(const std::map<std::string, std::size_t>& m, const std::string& key,
                   const std::string& where) {
  auto it = m.find(key);
  if (it == m.end()) invalid("unknown element '" + key + "' in '" + where + "'", key);
  return it->second;
}

std::size_t lookup_op(const Signature& sig, const std::string& name, std::size_t arity) {
  auto op = sig.find(name);
  if (!op) invalid("unknown operation symbol '" + name + "'", name);
  if (sig[*op].arity != arity) {
    throw Error(Errc::ArityMismatch,
                "operation '" + name + "' has arity " + std::to_string(sig[*op].arity) + ", got " +
                    std::to_string(arity) + " arguments",
                {name});
  }
  return *op;
}

FinSet finset_from_json(const json& j, const std::string& where) { return {labels(j, where)}; }

json finset_to_json(const FinSet& s) { return s.elements; }

}  // namespace

Signature signature_from_json(const json& j) {
  const json& ops = require(j, "ops");
  if (!ops.is_array()) invalid("'ops' must be an array", "ops");
  std::vector<Operation> out;
  for (const auto& op : ops) {
    const json& name = require(op, "name");
    const json& arity = require(op, "arity");
    if (!name.is_string()) invalid("operation name must be a string", name.dump());
    if (!arity.is_number_unsigned() && !(arity.is_number_integer() && arity.get<long long>() >= 0)) {
      invalid("arity of '" + name.get<std::string>() + "' must be a natural number",
              name.get<std::string>());
    }
    out.push_back({name.get<std::string>(), arity.get<std::size_t>()});
  }
  return Signature(std::move(out));
}

json to_json(const Signature& sig) {
  json ops = json::array();
  for (const Operation& op : sig.operations()) ops.push_back({{"name", op.name}, {"arity", op.arity}});
  return {{"ops", ops}};
}

FinLattice lattice_from_json(const json& j) {
  auto elements = labels(require(j, "elements"), "elements");
  const json& leq = require(j, "leq");
  if (!leq.is_array()) invalid("'leq' must be an array of pairs", "leq");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : leq) {
    if (!p.is_array() || p.size() != 2) invalid("'leq' entries must be pairs", p.dump());
    pairs.emplace_back(label(p[0], "leq"), label(p[1], "leq"));
  }
  return check_lattice(std::move(elements), pairs);
}

json to_json(const FinLattice& l) {
  json leq = json::array();
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (l.leq(x, y)) leq.push_back({l.label(x), l.label(y)});
  return {{"elements", std::vector<std::string>(l.labels().begin(), l.labels().end())},
          {"leq", leq}};
}

MonotoneMap monotone_map_from_json(const json& j) {
  FinLattice l = lattice_from_json(j);
  const json& m = require(j, "map");
  if (!m.is_object()) invalid("'map' must be an object", "map");
  std::vector<std::optional<Element>> table(l.size());
  for (const auto& [key, value] : m.items()) {
    auto x = l.find(key);
    if (!x) invalid("map mentions unknown element '" + key + "'", key);
    auto y = l.find(label(value, "map"));
    if (!y) invalid("map sends '" + key + "' to unknown element " + value.dump(), key);
    table[*x] = *y;
  }
  std::vector<Element> map;
  for (Element x = 0; x < l.size(); ++x) {
    if (!table[x]) invalid("map is not total: no image for '" + l.label(x) + "'", l.label(x));
    map.push_back(*table[x]);
  }
  return check_monotone(std::move(map), std::move(l));
}

json to_json(const MonotoneMap& f) {
  json j = to_json(f.lattice());
  json m = json::object();
  for (Element x = 0; x < f.lattice().size(); ++x) m[f.lattice().label(x)] = f.lattice().label(f(x));
  j["map"] = m;
  return j;
}

Coalgebra coalgebra_from_json(const json& j) {
  Signature sig = signature_from_json(require(j, "sig"));
  auto carrier = labels(require(j, "carrier"), "carrier");
  const json& st = require(j, "structure");
  if (!st.is_object()) invalid("coalgebra 'structure' must be an object", "structure");
  const auto idx = index_of(carrier);
  std::vector<Term> structure(carrier.size());
  std::vector<char> seen(carrier.size(), 0);
  for (const auto& [key, entry] : st.items()) {
    const std::size_t x = lookup(idx, key, "structure");
    const std::string op_name = require(entry, "op").get<std::string>();
    const json& args = entry.contains("args") ? entry.at("args") : json::array();
    if (!args.is_array()) invalid("'args' of '" + key + "' must be an array", key);
    const std::size_t op = lookup_op(sig, op_name, args.size());
    std::vector<Node> children;
    for (const auto& a : args) children.push_back(Node::generator(lookup(idx, label(a, key), key)));
    structure[x] = {1, Node::operation(op, std::move(children))};
    seen[x] = 1;
  }
  for (std::size_t x = 0; x < carrier.size(); ++x) {
    if (!seen[x]) invalid("coalgebra structure has no entry for '" + carrier[x] + "'", carrier[x]);
  }
  return Coalgebra(std::move(sig), std::move(carrier), std::move(structure));
}

json to_json(const Coalgebra& b) {
  json st = json::object();
  for (std::size_t x = 0; x < b.size(); ++x) {
    const Node& root = b(x).root;
    json args = json::array();
    for (const Node& c : root.children) args.push_back(b.carrier()[c.id]);
    st[b.carrier()[x]] = {{"op", b.signature()[root.id].name}, {"args", args}};
  }
  return {{"sig", to_json(b.signature())},
          {"carrier", std::vector<std::string>(b.carrier().begin(), b.carrier().end())},
          {"structure", st}};
}

Algebra algebra_from_json(const json& j) {
  Signature sig = signature_from_json(require(j, "sig"));
  auto carrier = labels(require(j, "carrier"), "carrier");
  const json& st = require(j, "structure");
  if (!st.is_array()) invalid("algebra 'structure' must be an array", "structure");
  const auto idx = index_of(carrier);
  const std::size_t n = carrier.size();

  std::vector<std::vector<std::optional<std::size_t>>> partial(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < sig[op].arity; ++i) size *= n;
    partial[op].resize(size);
  }
  for (const auto& entry : st) {
    const std::string op_name = require(entry, "op").get<std::string>();
    const json& args = entry.contains("args") ? entry.at("args") : json::array();
    if (!args.is_array()) invalid("'args' of '" + op_name + "' must be an array", op_name);
    const std::size_t op = lookup_op(sig, op_name, args.size());
    std::size_t pos = 0;
    for (const auto& a : args) pos = pos * n + lookup(idx, label(a, op_name), op_name);
    const std::size_t value = lookup(idx, label(require(entry, "value"), op_name), op_name);
    if (partial[op][pos] && *partial[op][pos] != value) {
      invalid("conflicting entries for '" + op_name + "' at " + args.dump(), op_name);
    }
    partial[op][pos] = value;
  }
  std::vector<std::vector<std::size_t>> tables(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    for (std::size_t pos = 0; pos < partial[op].size(); ++pos) {
      if (!partial[op][pos]) {
        json args = json::array();
        std::size_t rest = pos;
        std::vector<std::string> rev;
        for (std::size_t i = 0; i < sig[op].arity; ++i) {
          rev.push_back(carrier[rest % n]);
          rest /= n;
        }
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) args.push_back(*it);
        invalid("algebra is not total: no value for '" + sig[op].name + "' at " + args.dump(),
                sig[op].name);
      }
      tables[op].push_back(*partial[op][pos]);
    }
  }
  return Algebra(std::move(sig), std::move(carrier), std::move(tables));
}

json to_json(const Algebra& a) {
  json st = json::array();
  for (const Term& t : f_enumerate(a.signature(), a.size())) {
    json args = json::array();
    for (const Node& c : t.root.children) args.push_back(a.carrier()[c.id]);
    st.push_back({{"op", a.signature()[t.root.id].name},
                  {"args", args},
                  {"value", a.carrier()[a.apply(t)]}});
  }
  return {{"sig", to_json(a.signature())},
          {"carrier", std::vector<std::string>(a.carrier().begin(), a.carrier().end())},
          {"structure", st}};
}

FinRel relation_from_json(const json& j) {
  FinSet source = finset_from_json(require(j, "source"), "source");
  FinSet target = finset_from_json(require(j, "target"), "target");
  const auto si = index_of(source.elements);
  const auto ti = index_of(target.elements);
  if (si.size() != source.size() || ti.size() != target.size()) {
    invalid("relation source and target must not repeat elements");
  }
  const json& pairs = require(j, "pairs");
  if (!pairs.is_array()) invalid("'pairs' must be an array", "pairs");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) invalid("'pairs' entries must be pairs", p.dump());
    out.emplace_back(lookup(si, label(p[0], "pairs"), "pairs"),
                     lookup(ti, label(p[1], "pairs"), "pairs"));
  }
  return FinRel(std::move(source), std::move(target), std::move(out));
}

json to_json(const FinRel& r) {
  json pairs = json::array();
  for (const auto& [x, y] : r.pairs()) {
    pairs.push_back({r.source().elements[x], r.target().elements[y]});
  }
  return {{"source", finset_to_json(r.source())},
          {"target", finset_to_json(r.target())},
          {"pairs", pairs}};
}

FunctorSpec functor_from_json(const json& j) {
  FunctorSpec f;
  const json& kind = require(j, "kind");
  if (!kind.is_string()) invalid("'kind' must be a string", "kind");
  f.kind = kind.get<std::string>();
  if (f.kind == "constant") {
    f.constant = finset_from_json(require(j, "object"), "object");
  } else if (f.kind == "polynomial") {
    f.signature = signature_from_json(require(j, "sig"));
  } else if (f.kind == "table") {
    for (const auto& o : require(j, "object_map")) {
      f.objects.emplace_back(finset_from_json(require(o, "object"), "object_map"),
                             finset_from_json(require(o, "image"), "object_map"));
    }
    for (const auto& r : require(j, "rel_map")) {
      f.relations.emplace_back(relation_from_json(require(r, "relation")),
                               relation_from_json(require(r, "image")));
    }
    f.build();
  } else if (f.kind != "identity") {
    invalid("unknown functor kind '" + f.kind + "'", f.kind);
  }
  return f;
}

json to_json(const FunctorSpec& f) {
  json j{{"kind", f.kind}};
  if (f.kind == "constant") j["object"] = finset_to_json(f.constant);
  if (f.kind == "polynomial") j["sig"] = to_json(f.signature);
  if (f.kind == "table") {
    json objects = json::array();
    for (const auto& [o, image] : f.objects) {
      objects.push_back({{"object", finset_to_json(o)}, {"image", finset_to_json(image)}});
    }
    json rels = json::array();
    for (const auto& [r, image] : f.relations) {
      rels.push_back({{"relation", to_json(r)}, {"image", to_json(image)}});
    }
    j["object_map"] = objects;
    j["rel_map"] = rels;
  }
  return j;
}

RelEndo FunctorSpec::build() const {
  if (kind == "identity") return identity_functor();
  if (kind == "constant") return constant_functor(constant);
  if (kind == "polynomial") return polynomial_functor(signature);
  if (kind == "table") return table_functor("table", objects, relations);
  invalid("unknown functor kind '" + kind + "'", kind);
}

json to_json(const Spec& spec) {
  return std::visit([](const auto& v) { return to_json(v); }, spec);
}

Spec parse_spec(const json& j) {
  if (!j.is_object()) invalid("spec must be a JSON object");
  if (j.contains("elements")) {
    if (j.contains("map")) return monotone_map_from_json(j);
    return lattice_from_json(j);
  }
  if (j.contains("ops")) return signature_from_json(j);
  if (j.contains("kind")) return functor_from_json(j);
  if (j.contains("source") || j.contains("pairs")) return relation_from_json(j);
  if (j.contains("structure")) {
    if (j.at("structure").is_array()) return algebra_from_json(j);
    return coalgebra_from_json(j);
  }
  invalid("unrecognized spec: expected lattice, signature, coalgebra, algebra, relation or "
          "functor keys");
}

Spec parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, "JSON parse error at byte " + std::to_string(e.byte) + ": " +
                                      e.what(),
                {std::to_string(e.byte)});
  }
  try {
    return parse_spec(j);
  } catch (const json::exception& e) {
    // Type mismatches inside otherwise well-formed JSON.
    throw Error(Errc::ValidationError, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'", {path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace midfix

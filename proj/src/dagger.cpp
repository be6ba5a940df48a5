#include "midfix/dagger.hpp"

#include <algorithm>
#include <set>

#include "midfix/error.hpp"

namespace midfix {

FinRel::FinRel(FinSet source, FinSet target,
               std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : source_(std::move(source)), target_(std::move(target)), pairs_(std::move(pairs)) {
  for (const auto& [x, y] : pairs_) {
    if (x >= source_.size() || y >= target_.size()) {
      throw Error(Errc::ValidationError, "relation pair (" + std::to_string(x) + ", " +
                                             std::to_string(y) + ") leaves source x target");
    }
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

FinRel FinRel::identity(const FinSet& x) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pairs.emplace_back(i, i);
  return FinRel(x, x, std::move(pairs));
}

bool FinRel::contains(std::size_t x, std::size_t y) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(x, y));
}

bool FinRel::is_isomorphism() const {
  if (source_.size() != target_.size() || pairs_.size() != source_.size()) return false;
  std::vector<char> hit_source(source_.size(), 0);
  std::vector<char> hit_target(target_.size(), 0);
  for (const auto& [x, y] : pairs_) {
    if (hit_source[x] || hit_target[y]) return false;
    hit_source[x] = hit_target[y] = 1;
  }
  return true;
}

FinRel rel_compose(const FinRel& r, const FinRel& s) {
  if (!(r.target() == s.source())) {
    throw Error(Errc::ObjectMismatch, "cannot compose: target of the first relation differs "
                                      "from the source of the second");
  }
  std::vector<std::vector<std::size_t>> succ(s.source().size());
  for (const auto& [y, z] : s.pairs()) succ[y].push_back(z);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [x, y] : r.pairs())
    for (std::size_t z : succ[y]) out.emplace_back(x, z);
  return FinRel(r.source(), s.target(), std::move(out));
}

FinRel rel_dagger(const FinRel& r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(r.pairs().size());
  for (const auto& [x, y] : r.pairs()) out.emplace_back(y, x);
  return FinRel(r.target(), r.source(), std::move(out));
}

std::vector<FinRel> all_relations(const std::vector<FinSet>& objects) {
  std::vector<FinRel> out;
  for (const FinSet& x : objects) {
    for (const FinSet& y : objects) {
      const std::size_t cells = x.size() * y.size();
      if (cells >= 20) throw Error(Errc::CapExceeded, "too many relations to enumerate");
      for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t c = 0; c < cells; ++c)
          if ((mask >> c) & 1U) pairs.emplace_back(c / y.size(), c % y.size());
        out.emplace_back(x, y, std::move(pairs));
      }
    }
  }
  return out;
}

DaggerLawsReport dagger_laws_check(const std::vector<FinRel>& sample) {
  DaggerLawsReport rep;
  rep.relations = sample.size();
  Check involution{"involution", true, {}, {}};
  Check objects{"identity_on_objects", true, {}, {}};
  Check identities{"identities_self_adjoint", true, {}, {}};
  Check contravariant{"contravariant", true, {}, {}};

  std::set<FinSet> seen_objects;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const FinRel& r = sample[i];
    const FinRel d = rel_dagger(r);
    if (!(rel_dagger(d) == r) && involution.passed) {
      involution.passed = false;
      involution.witness = "relation " + std::to_string(i);
    }
    if ((!(d.source() == r.target()) || !(d.target() == r.source())) && objects.passed) {
      objects.passed = false;
      objects.witness = "relation " + std::to_string(i);
    }
    seen_objects.insert(r.source());
    seen_objects.insert(r.target());
  }
  for (const FinSet& x : seen_objects) {
    const FinRel id = FinRel::identity(x);
    if (!(rel_dagger(id) == id) && identities.passed) {
      identities.passed = false;
      identities.witness = "identity on a " + std::to_string(x.size()) + "-element set";
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      const FinRel& r = sample[i];
      const FinRel& s = sample[j];
      if (!(r.target() == s.source())) continue;
      ++rep.composable_pairs;
      if (!(rel_dagger(rel_compose(r, s)) == rel_compose(rel_dagger(s), rel_dagger(r))) &&
          contravariant.passed) {
        contravariant.passed = false;
        contravariant.witness = "relations " + std::to_string(i) + ", " + std::to_string(j);
      }
    }
  }
  rep.checks = {involution, objects, identities, contravariant};
  return rep;
}

RelEndo identity_functor() {
  return {"identity", [](const FinSet& x) { return x; }, [](const FinRel& r) { return r; }};
}

RelEndo constant_functor(FinSet k) {
  return {"constant",
          [k](const FinSet&) { return k; },
          [k](const FinRel&) { return FinRel::identity(k); }};
}

namespace {

FinSet apply_signature(const Signature& sig, const FinSet& x) {
  FinSet out;
  for (const Term& t : f_enumerate(sig, x.size())) out.elements.push_back(to_string(t, sig, x.elements));
  return out;
}

}  // namespace

RelEndo polynomial_functor(Signature sig) {
  RelEndo f;
  f.name = "polynomial";
  f.object_map = [sig](const FinSet& x) { return apply_signature(sig, x); };
  // sigma(x1..xm) sits at offset(sigma) + (x1..xm read in base |X|), the
  // order of f_enumerate. Related tuples are built from tuples of pairs.
  f.rel_map = [sig](const FinRel& r) {
    const std::size_t n = r.source().size();
    const std::size_t m = r.target().size();
    const auto& rp = r.pairs();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t src_offset = 0;
    std::size_t tgt_offset = 0;
    for (const Operation& op : sig.operations()) {
      std::vector<std::size_t> pick(op.arity, 0);
      const bool any = op.arity == 0 || !rp.empty();
      while (any) {
        std::size_t i = 0;
        std::size_t j = 0;
        for (std::size_t p : pick) {
          i = i * n + rp[p].first;
          j = j * m + rp[p].second;
        }
        pairs.emplace_back(src_offset + i, tgt_offset + j);
        std::size_t pos = op.arity;
        while (pos > 0 && ++pick[pos - 1] == rp.size()) pick[--pos] = 0;
        if (pos == 0) break;
      }
      std::size_t src_block = 1;
      std::size_t tgt_block = 1;
      for (std::size_t a = 0; a < op.arity; ++a) {
        src_block *= n;
        tgt_block *= m;
      }
      src_offset += src_block;
      tgt_offset += tgt_block;
    }
    return FinRel(apply_signature(sig, r.source()), apply_signature(sig, r.target()),
                  std::move(pairs));
  };
  return f;
}

RelEndo table_functor(std::string name, std::vector<std::pair<FinSet, FinSet>> objects,
                      std::vector<std::pair<FinRel, FinRel>> relations) {
  std::map<FinSet, FinSet> obj(objects.begin(), objects.end());
  std::map<FinRel, FinRel> rel(relations.begin(), relations.end());
  for (const auto& [r, image] : rel) {
    auto s = obj.find(r.source());
    auto t = obj.find(r.target());
    if (s == obj.end() || t == obj.end() || !(s->second == image.source()) ||
        !(t->second == image.target())) {
      throw Error(Errc::ObjectMismatch, "functor table: relation image does not match the "
                                        "object table");
    }
  }
  RelEndo f;
  f.name = std::move(name);
  f.object_map = [obj](const FinSet& x) {
    auto it = obj.find(x);
    if (it == obj.end()) throw Error(Errc::ValidationError, "functor table has no entry for object");
    return it->second;
  };
  f.rel_map = [rel](const FinRel& r) {
    auto it = rel.find(r);
    if (it == rel.end()) {
      throw Error(Errc::ValidationError, "functor table has no entry for relation");
    }
    return it->second;
  };
  return f;
}

std::vector<Check> rel_endo_laws_check(const RelEndo& f, const std::vector<FinRel>& sample) {
  Check typing{"functor_typing", true, {}, {}};
  Check identities{"functor_identities", true, {}, {}};
  Check composition{"functor_composition", true, {}, {}};
  Check dagger{"dagger_functor", true, {}, {}};
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const FinRel& r = sample[i];
    const FinRel image = f(r);
    if ((!(image.source() == f(r.source())) || !(image.target() == f(r.target()))) &&
        typing.passed) {
      typing.passed = false;
      typing.witness = "relation " + std::to_string(i);
    }
    for (const FinSet* x : {&r.source(), &r.target()}) {
      if (!(f(FinRel::identity(*x)) == FinRel::identity(f(*x))) && identities.passed) {
        identities.passed = false;
        identities.witness = "object of relation " + std::to_string(i);
      }
    }
    if (!(f(rel_dagger(r)) == rel_dagger(image)) && dagger.passed) {
      dagger.passed = false;
      dagger.witness = "relation " + std::to_string(i);
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (!(sample[i].target() == sample[j].source())) continue;
      if (!(f(rel_compose(sample[i], sample[j])) == rel_compose(f(sample[i]), f(sample[j]))) &&
          composition.passed) {
        composition.passed = false;
        composition.witness = "relations " + std::to_string(i) + ", " + std::to_string(j);
      }
    }
  }
  return {typing, identities, composition, dagger};
}

void RelChain::validate() const {
  if (connectors.size() + 1 != objects.size()) {
    throw Error(Errc::ObjectMismatch, "chain needs one connector between consecutive objects");
  }
  for (std::size_t k = 0; k < connectors.size(); ++k) {
    const FinSet& lo = objects[k];
    const FinSet& hi = objects[k + 1];
    const bool ok = direction == ChainDirection::Colimit
                        ? connectors[k].source() == lo && connectors[k].target() == hi
                        : connectors[k].source() == hi && connectors[k].target() == lo;
    if (!ok) throw Error(Errc::ObjectMismatch, "connector " + std::to_string(k) + " misplaced");
  }
}

namespace {

RelChain build_chain(ChainDirection dir, const RelEndo& f, const FinRel& first,
                     std::size_t stages, std::size_t max_object) {
  RelChain chain;
  chain.direction = dir;
  const FinSet& base = dir == ChainDirection::Colimit ? first.source() : first.target();
  const FinSet& next = dir == ChainDirection::Colimit ? first.target() : first.source();
  if (!(f(base) == next)) {
    throw Error(Errc::ObjectMismatch, "structure relation is not typed X -> F X (or F X -> X)");
  }
  chain.objects.push_back(base);
  if (stages <= 1) return chain;
  FinRel conn = first;
  while (chain.objects.size() < stages) {
    const FinSet& upper = dir == ChainDirection::Colimit ? conn.target() : conn.source();
    if (upper.size() > max_object) break;
    chain.objects.push_back(upper);
    chain.connectors.push_back(conn);
    if (chain.objects.size() < stages) conn = f(conn);
  }
  return chain;
}

std::optional<std::size_t> stabilized(const RelChain& chain) {
  chain.validate();
  if (chain.connectors.empty()) return std::nullopt;
  std::size_t k = chain.connectors.size();
  while (k > 0 && chain.connectors[k - 1].is_isomorphism()) --k;
  if (k == chain.connectors.size()) return std::nullopt;
  return k;
}

}  // namespace

RelChain mu_chain(const RelEndo& f, const FinRel& c, std::size_t stages, std::size_t max_object) {
  return build_chain(ChainDirection::Colimit, f, c, stages, max_object);
}

RelChain nu_chain(const RelEndo& f, const FinRel& a, std::size_t stages, std::size_t max_object) {
  return build_chain(ChainDirection::Limit, f, a, stages, max_object);
}

std::optional<std::size_t> chain_colimit_stabilized(const RelChain& chain) {
  if (chain.direction != ChainDirection::Colimit) {
    throw Error(Errc::ValidationError, "expected a colimit chain");
  }
  return stabilized(chain);
}

std::optional<std::size_t> chain_limit_stabilized(const RelChain& chain) {
  if (chain.direction != ChainDirection::Limit) {
    throw Error(Errc::ValidationError, "expected a limit chain");
  }
  return stabilized(chain);
}

CoincidenceReport coincidence_check(const RelEndo& f, const FinRel& c, std::size_t bound,
                                    std::size_t max_object) {
  CoincidenceReport rep;
  const RelChain mu = mu_chain(f, c, bound, max_object);
  const RelChain nu = nu_chain(f, rel_dagger(c), bound, max_object);
  rep.stages = mu.objects.size();

  std::vector<FinRel> sample = mu.connectors;
  auto laws = rel_endo_laws_check(f, sample);

  Check duality{"stagewise_duality", true, {}, {}};
  if (mu.objects != nu.objects) {
    duality.passed = false;
    duality.witness = "chains have different objects";
  }
  for (std::size_t k = 0; k < mu.connectors.size() && duality.passed; ++k) {
    if (k >= nu.connectors.size() || !(nu.connectors[k] == rel_dagger(mu.connectors[k]))) {
      duality.passed = false;
      duality.witness = "stage " + std::to_string(k);
    }
  }
  duality.note = std::to_string(mu.connectors.size()) + " connectors compared";

  Check coincide{"coincidence", true, {}, {}};
  rep.mu_stage = chain_colimit_stabilized(mu);
  rep.nu_stage = chain_limit_stabilized(nu);
  if (rep.mu_stage) {
    rep.mu_object = mu.objects[*rep.mu_stage];
    if (rep.nu_stage) rep.nu_object = nu.objects[*rep.nu_stage];
    if (rep.mu_stage != rep.nu_stage || !(rep.mu_object == rep.nu_object)) {
      coincide.passed = false;
      coincide.witness = "mu-chain stabilizes at stage " + std::to_string(*rep.mu_stage) +
                         ", nu-chain " +
                         (rep.nu_stage ? "at stage " + std::to_string(*rep.nu_stage)
                                       : std::string("does not"));
    } else {
      coincide.note = "both chains stabilize at stage " + std::to_string(*rep.mu_stage) +
                      "; the identity on that object witnesses the isomorphism";
    }
  } else {
    coincide.note = "not stabilized within " + std::to_string(rep.stages) +
                    " stages; stage-wise duality only";
    if (rep.nu_stage) {
      coincide.passed = false;
      coincide.witness = "nu-chain stabilizes but the mu-chain does not";
    }
  }

  rep.checks = laws;
  rep.checks.push_back(duality);
  rep.checks.push_back(coincide);
  return rep;
}

}  // namespace midfix

#pragma once

#include <cstdint>
#include <random>

#include "midfix/dagger.hpp"
#include "midfix/fixcat.hpp"

namespace midfix {

/// Seeded generator for random test instances. Draws use a plain modulo
/// reduction of mt19937_64 output so that a seed yields the same instances
/// with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (engine_() & 1U) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct InstanceLimits {
  std::size_t max_ops = 3;
  std::size_t max_arity = 2;
  std::size_t max_carrier = 3;
};

/// 1..max_ops operations; names encode arity (k* constants, u* unary, b* binary, ...).
Signature random_signature(Rng& rng, const InstanceLimits& lim = {});

/// Carrier of 0..max_carrier elements named p0, p1, ...; an empty carrier is
/// only drawn when the signature has a constant or no operation at all.
Coalgebra random_coalgebra(Rng& rng, const Signature& sig, const InstanceLimits& lim = {});

/// Carrier of 1..max_carrier elements named "0", "1", ... with uniform tables.
Algebra random_algebra(Rng& rng, const Signature& sig, const InstanceLimits& lim = {});

FinSet numbered_set(std::size_t n, const std::string& prefix = "x");
FinRel random_relation(Rng& rng, const FinSet& source, const FinSet& target);

struct AdjunctionInstance {
  Coalgebra coalgebra;
  Algebra algebra;
};

/// Draws `count` coalgebra/algebra pairs over a shared random signature.
/// Draws whose colimit classes up to `max_rank` exceed `cap` violate the
/// cap precondition of adjunction_check and are redrawn; the number of
/// redraws is added to `*rejected` when given.
std::vector<AdjunctionInstance> random_adjunction_instances(Rng& rng, std::size_t count,
                                                            std::size_t max_rank, std::size_t cap,
                                                            const InstanceLimits& lim = {},
                                                            std::size_t* rejected = nullptr);

/// A dagger endofunctor on relations drawn from identity, constant,
/// X + K and small polynomial liftings.
RelEndo random_rel_endo(Rng& rng, std::size_t max_set = 3);

}  // namespace midfix

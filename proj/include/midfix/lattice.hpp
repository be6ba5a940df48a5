#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace midfix {

using Element = std::size_t;

/// A validated finite lattice. Elements are indices into `labels()`.
///
/// Construction goes through check_lattice(), which verifies the partial
/// order laws and precomputes join and meet tables; every accessor after
/// that is a table lookup.
class FinLattice {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  const std::string& label(Element x) const { return labels_.at(x); }
  std::optional<Element> find(std::string_view label) const;

  bool leq(Element x, Element y) const { return order_[x * size() + y] != 0; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }

  // Pairs (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<Element, Element>> covering_pairs() const;

  friend bool operator==(const FinLattice&, const FinLattice&) = default;

 private:
  friend FinLattice check_lattice(std::vector<std::string>,
                                  const std::vector<std::vector<bool>>&);

  std::vector<std::string> labels_;
  std::vector<char> order_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  Element bottom_ = 0;
  Element top_ = 0;
};

/// Validates `leq` (a full |elements| x |elements| boolean matrix) as a
/// lattice order. Throws Error(NotAPartialOrder) or Error(MissingJoinOrMeet)
/// with a witnessing pair.
FinLattice check_lattice(std::vector<std::string> elements,
                         const std::vector<std::vector<bool>>& leq);

/// Same, with the order given as the list of related label pairs.
FinLattice check_lattice(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& leq);

class MonotoneMap {
 public:
  const FinLattice& lattice() const noexcept { return lattice_; }
  Element operator()(Element x) const { return map_.at(x); }
  std::span<const Element> table() const noexcept { return map_; }

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

 private:
  friend MonotoneMap check_monotone(std::vector<Element>, FinLattice);

  FinLattice lattice_;
  std::vector<Element> map_;
};

/// Throws Error(NotMonotone) with the first pair x <= y, f(x) !<= f(y).
MonotoneMap check_monotone(std::vector<Element> map, FinLattice lattice);

struct GaloisViolation {
  Element pre;
  Element post;
  bool mu_leq_post;  // mu(pre) <= post
  bool pre_leq_nu;   // pre <= nu(post)
};

struct FixpointReport {
  std::vector<Element> pre_fixed;
  std::vector<Element> post_fixed;
  std::vector<Element> fixed;
  // Indexed like pre_fixed / post_fixed respectively.
  std::vector<Element> mu_table;
  std::vector<Element> nu_table;
  std::size_t pairs_checked = 0;
  bool galois_ok = true;
  std::vector<GaloisViolation> violations;
};

FixpointReport classify_points(const MonotoneMap& f);

/// Least fixpoint above a pre-fixed point, by ascending iteration.
/// Throws Error(NotPreFixed).
Element mu_lattice(const MonotoneMap& f, Element x);

/// Greatest fixpoint below a post-fixed point, by descending iteration.
/// Throws Error(NotPostFixed).
Element nu_lattice(const MonotoneMap& f, Element y);

/// classify_points plus the mu/nu tables and the biconditional
/// mu(x) <= y <=> x <= nu(y) over every pre x post pair.
FixpointReport galois_check(const MonotoneMap& f);

/// Every lattice with 1..max_size elements, one per isomorphism class.
/// Labels are "0", "1", ...; element 0 is the bottom.
std::vector<FinLattice> enumerate_lattices(std::size_t max_size);

/// Every monotone endofunction of `lattice`, in lexicographic table order.
std::vector<MonotoneMap> enumerate_monotone_maps(const FinLattice& lattice);

// ---------------------------------------------------------------------------
// The real interval [0, 1].

struct IntervalMap {
  std::function<double(double)> fn;
  std::size_t sample_grid = 1024;
  double tolerance = 1e-9;
  std::size_t max_iterations = 1'000'000;
};

/// Checks monotonicity and range on the sample grid (grid + 1 equally spaced
/// points, endpoints included). Throws Error(NotMonotone) or
/// Error(ValidationError) with the offending sample points. Points between
/// grid nodes are not inspected.
IntervalMap check_interval_map(IntervalMap im);

enum class IterationStatus { Converged, NoConvergence };

struct IterationResult {
  double value = 0.0;
  double residual = 0.0;  // |fn(value) - value|
  std::size_t iterations = 0;
  IterationStatus status = IterationStatus::NoConvergence;

  bool converged() const noexcept { return status == IterationStatus::Converged; }
};

/// Ascending iteration from a (numerically) pre-fixed point. Throws
/// Error(NotPreFixedNumeric) when x is outside [0, 1] or fn(x) < x - tol.
IterationResult mu_interval(const IntervalMap& im, double x);

/// Descending iteration from a (numerically) post-fixed point.
IterationResult nu_interval(const IntervalMap& im, double y);

/// Fixpoints of fn located by sign changes of fn(x) - x on the sample grid,
/// refined by bisection to `tolerance`. Grid points with an exact zero are
/// reported as-is.
std::vector<double> locate_fixpoints(const IntervalMap& im);

/// The shipped five-fixpoint example: x + 16 x (x - 1/4)(x - 1/2)(x - 3/4)(x - 1).
/// Fixpoints 0, 1/4, 1/2, 3/4, 1; alternately repelling and attracting.
IntervalMap five_fixpoint_map();

}  // namespace midfix

#include "midfix/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "midfix/error.hpp"

namespace midfix {

std::optional<Element> FinLattice::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Element>(it - labels_.begin());
}

std::vector<std::pair<Element, Element>> FinLattice::covering_pairs() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element x = 0; x < size(); ++x) {
    for (Element y = 0; y < size(); ++y) {
      if (x == y || !leq(x, y)) continue;
      bool covers = true;
      for (Element z = 0; z < size() && covers; ++z) {
        if (z != x && z != y && leq(x, z) && leq(z, y)) covers = false;
      }
      if (covers) out.emplace_back(x, y);
    }
  }
  return out;
}

namespace {

[[noreturn]] void fail_pair(Errc code, const std::string& what,
                            const std::string& x, const std::string& y) {
  throw Error(code, what + " (" + x + ", " + y + ")", {x, y});
}

}  // namespace

FinLattice check_lattice(std::vector<std::string> elements,
                         const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = elements.size();
  if (n == 0) throw Error(Errc::ValidationError, "lattice has no elements");
  {
    std::set<std::string> seen;
    for (const auto& e : elements) {
      if (!seen.insert(e).second) {
        throw Error(Errc::ValidationError, "duplicate element '" + e + "'", {e});
      }
    }
  }
  if (leq.size() != n ||
      std::any_of(leq.begin(), leq.end(), [n](const auto& row) { return row.size() != n; })) {
    throw Error(Errc::ValidationError, "order matrix is not " + std::to_string(n) + "x" +
                                           std::to_string(n));
  }

  FinLattice l;
  l.labels_ = std::move(elements);
  l.order_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) l.order_[x * n + y] = leq[x][y] ? 1 : 0;

  const auto& lab = l.labels_;
  for (Element x = 0; x < n; ++x) {
    if (!l.leq(x, x)) fail_pair(Errc::NotAPartialOrder, "not reflexive at", lab[x], lab[x]);
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (l.leq(x, y) && l.leq(y, x)) {
        fail_pair(Errc::NotAPartialOrder, "not antisymmetric on", lab[x], lab[y]);
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!l.leq(x, y)) continue;
      for (Element z = 0; z < n; ++z) {
        if (l.leq(y, z) && !l.leq(x, z)) {
          fail_pair(Errc::NotAPartialOrder, "not transitive through " + lab[y] + " on", lab[x],
                    lab[z]);
        }
      }
    }
  }

  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      std::optional<Element> lub;
      std::optional<Element> glb;
      for (Element u = 0; u < n; ++u) {
        if (l.leq(x, u) && l.leq(y, u) && (!lub || l.leq(u, *lub))) lub = u;
        if (l.leq(u, x) && l.leq(u, y) && (!glb || l.leq(*glb, u))) glb = u;
      }
      // The candidate found by the scan is the least upper bound only if it
      // sits below every other upper bound.
      for (Element u = 0; u < n && lub; ++u) {
        if (l.leq(x, u) && l.leq(y, u) && !l.leq(*lub, u)) lub.reset();
      }
      for (Element u = 0; u < n && glb; ++u) {
        if (l.leq(u, x) && l.leq(u, y) && !l.leq(u, *glb)) glb.reset();
      }
      if (!lub) fail_pair(Errc::MissingJoinOrMeet, "no least upper bound for", lab[x], lab[y]);
      if (!glb) fail_pair(Errc::MissingJoinOrMeet, "no greatest lower bound for", lab[x], lab[y]);
      l.join_[x * n + y] = *lub;
      l.meet_[x * n + y] = *glb;
    }
  }

  Element top = 0;
  Element bottom = 0;
  for (Element x = 1; x < n; ++x) {
    top = l.join(top, x);
    bottom = l.meet(bottom, x);
  }
  l.top_ = top;
  l.bottom_ = bottom;
  return l;
}

FinLattice check_lattice(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& leq) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::vector<bool>> matrix(elements.size(), std::vector<bool>(elements.size()));
  for (const auto& [a, b] : leq) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      const std::string& bad = ia == index.end() ? a : b;
      throw Error(Errc::ValidationError, "order mentions unknown element '" + bad + "'", {bad});
    }
    matrix[ia->second][ib->second] = true;
  }
  return check_lattice(std::move(elements), matrix);
}

MonotoneMap check_monotone(std::vector<Element> map, FinLattice lattice) {
  const std::size_t n = lattice.size();
  if (map.size() != n) {
    throw Error(Errc::ValidationError, "map is not total: " + std::to_string(map.size()) +
                                           " images for " + std::to_string(n) + " elements");
  }
  for (Element x = 0; x < n; ++x) {
    if (map[x] >= n) {
      throw Error(Errc::ValidationError, "map sends " + lattice.label(x) + " outside the lattice",
                  {lattice.label(x)});
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (lattice.leq(x, y) && !lattice.leq(map[x], map[y])) {
        fail_pair(Errc::NotMonotone, "monotonicity fails on", lattice.label(x), lattice.label(y));
      }
    }
  }
  MonotoneMap f;
  f.lattice_ = std::move(lattice);
  f.map_ = std::move(map);
  return f;
}

FixpointReport classify_points(const MonotoneMap& f) {
  const FinLattice& l = f.lattice();
  FixpointReport r;
  for (Element x = 0; x < l.size(); ++x) {
    const bool pre = l.leq(x, f(x));
    const bool post = l.leq(f(x), x);
    if (pre) r.pre_fixed.push_back(x);
    if (post) r.post_fixed.push_back(x);
    if (pre && post) r.fixed.push_back(x);
  }
  return r;
}

Element mu_lattice(const MonotoneMap& f, Element x) {
  const FinLattice& l = f.lattice();
  if (x >= l.size() || !l.leq(x, f(x))) {
    throw Error(Errc::NotPreFixed,
                "not a pre-fixed point: " + (x < l.size() ? l.label(x) : std::to_string(x)));
  }
  // A strictly ascending chain in a finite lattice has fewer than |L| steps.
  for (std::size_t step = 0; step <= l.size(); ++step) {
    const Element next = f(x);
    if (next == x) return x;
    x = next;
  }
  throw std::logic_error("mu_lattice: ascending iteration did not stabilize within |L| steps");
}

Element nu_lattice(const MonotoneMap& f, Element y) {
  const FinLattice& l = f.lattice();
  if (y >= l.size() || !l.leq(f(y), y)) {
    throw Error(Errc::NotPostFixed,
                "not a post-fixed point: " + (y < l.size() ? l.label(y) : std::to_string(y)));
  }
  for (std::size_t step = 0; step <= l.size(); ++step) {
    const Element next = f(y);
    if (next == y) return y;
    y = next;
  }
  throw std::logic_error("nu_lattice: descending iteration did not stabilize within |L| steps");
}

FixpointReport galois_check(const MonotoneMap& f) {
  const FinLattice& l = f.lattice();
  FixpointReport r = classify_points(f);
  r.mu_table.reserve(r.pre_fixed.size());
  for (Element x : r.pre_fixed) r.mu_table.push_back(mu_lattice(f, x));
  r.nu_table.reserve(r.post_fixed.size());
  for (Element y : r.post_fixed) r.nu_table.push_back(nu_lattice(f, y));

  for (std::size_t i = 0; i < r.pre_fixed.size(); ++i) {
    for (std::size_t j = 0; j < r.post_fixed.size(); ++j) {
      const bool lhs = l.leq(r.mu_table[i], r.post_fixed[j]);
      const bool rhs = l.leq(r.pre_fixed[i], r.nu_table[j]);
      ++r.pairs_checked;
      if (lhs != rhs) r.violations.push_back({r.pre_fixed[i], r.post_fixed[j], lhs, rhs});
    }
  }
  r.galois_ok = r.violations.empty();
  return r;
}

namespace {

// Order matrix permuted by `perm` (element i of the original becomes perm[i]).
std::vector<char> permuted(const std::vector<char>& order, std::size_t n,
                           const std::vector<std::size_t>& perm) {
  std::vector<char> out(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[perm[x] * n + perm[y]] = order[x * n + y];
  return out;
}

std::vector<char> canonical_form(const std::vector<char>& order, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> best = order;
  do {
    auto candidate = permuted(order, n, perm);
    if (candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FinLattice> enumerate_lattices(std::size_t max_size) {
  std::vector<FinLattice> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    // Off-diagonal pairs, each either related or not; reflexivity is fixed.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (x != y) slots.emplace_back(x, y);
    if (slots.size() >= 8 * sizeof(unsigned long long)) {
      throw Error(Errc::CapExceeded, "lattice enumeration supports at most 8 elements");
    }
    std::set<std::vector<char>> seen;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    for (unsigned long long mask = 0; mask < (1ULL << slots.size()); ++mask) {
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if ((mask >> s) & 1ULL) leq[slots[s].first][slots[s].second] = true;
      FinLattice l;
      try {
        l = check_lattice(labels, leq);
      } catch (const Error&) {
        continue;
      }
      std::vector<char> flat(n * n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) flat[x * n + y] = leq[x][y] ? 1 : 0;
      if (!seen.insert(canonical_form(flat, n)).second) continue;
      // Relabel so that the bottom is "0" and the order extends the index order.
      std::vector<std::size_t> order_idx(n);
      std::iota(order_idx.begin(), order_idx.end(), 0);
      std::stable_sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
        std::size_t below_a = 0, below_b = 0;
        for (std::size_t z = 0; z < n; ++z) {
          below_a += leq[z][a] ? 1 : 0;
          below_b += leq[z][b] ? 1 : 0;
        }
        return below_a < below_b;
      });
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[order_idx[i]] = i;
      std::vector<std::vector<bool>> relabeled(n, std::vector<bool>(n));
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) relabeled[perm[x]][perm[y]] = leq[x][y];
      out.push_back(check_lattice(labels, relabeled));
    }
  }
  return out;
}

std::vector<MonotoneMap> enumerate_monotone_maps(const FinLattice& lattice) {
  const std::size_t n = lattice.size();
  std::vector<MonotoneMap> out;
  std::vector<Element> table(n, 0);
  // Odometer over all n^n tables.
  while (true) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x)
      for (Element y = 0; y < n && ok; ++y)
        if (lattice.leq(x, y) && !lattice.leq(table[x], table[y])) ok = false;
    if (ok) out.push_back(check_monotone(table, lattice));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++table[pos] < n) break;
      table[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

}  // namespace midfix

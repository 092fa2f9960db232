#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modmat/bitset.hpp"
#include "modmat/core.hpp"

namespace modmat {

using CoverPair = std::pair<std::size_t, std::size_t>;  // (lower, upper)

/// The poset of all unions of subfamilies of an antichain, ordered by
/// inclusion. Members are stored in canonical order, so members()[0] is the
/// empty union and every member precedes its supersets.
class UnionLattice {
 public:
  static constexpr std::size_t default_member_cap = std::size_t{1} << 20;

  const GroundSet& ground() const noexcept { return generators_.ground(); }
  const CircuitFamily& generators() const noexcept { return generators_; }
  std::span<const SubsetMask> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::optional<std::size_t> index_of(SubsetMask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(SubsetMask m) const { return index_.count(m) != 0; }

  std::span<const std::size_t> upper_covers(std::size_t i) const { return up_[i]; }
  std::span<const std::size_t> lower_covers(std::size_t i) const { return down_[i]; }

  /// Longest chain from the empty union up to member i.
  std::size_t length(std::size_t i) const { return length_[i]; }

  std::vector<CoverPair> cover_pairs() const {
    std::vector<CoverPair> out;
    for (std::size_t i = 0; i < up_.size(); ++i) {
      for (std::size_t j : up_[i]) out.emplace_back(i, j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Members covering the empty union.
  std::vector<SubsetMask> atoms() const {
    std::vector<SubsetMask> out;
    for (std::size_t j : up_[0]) out.push_back(members_[j]);
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
  }

  friend UnionLattice union_lattice(const CircuitFamily& family, std::size_t member_cap);

 private:
  CircuitFamily generators_;
  std::vector<SubsetMask> members_;
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> index_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::size_t> length_;
};

inline UnionLattice union_lattice(const CircuitFamily& family,
                                  std::size_t member_cap = UnionLattice::default_member_cap) {
  UnionLattice lat;
  lat.generators_ = family;

  std::unordered_set<SubsetMask, SubsetMaskHash> seen{SubsetMask{}};
  std::vector<SubsetMask> members{SubsetMask{}};
  for (SubsetMask g : family.members()) {
    const std::size_t before = members.size();
    for (std::size_t i = 0; i < before; ++i) {
      SubsetMask u = members[i] | g;
      if (seen.insert(u).second) {
        members.push_back(u);
        if (members.size() > member_cap) {
          throw Error(Errc::member_explosion,
                      "union lattice exceeds " + std::to_string(member_cap) + " members");
        }
      }
    }
  }
  std::sort(members.begin(), members.end(), CanonicalLess{});
  lat.members_ = std::move(members);
  for (std::size_t i = 0; i < lat.members_.size(); ++i) lat.index_.emplace(lat.members_[i], i);

  // Every member strictly above X contains some X ∪ C with C ⊄ X, and those
  // sets are members themselves; the upper covers of X are the minimal ones.
  const std::size_t m = lat.members_.size();
  lat.up_.assign(m, {});
  lat.down_.assign(m, {});
  std::vector<SubsetMask> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    const SubsetMask x = lat.members_[i];
    candidates.clear();
    for (SubsetMask c : family.members()) {
      if (!c.subset_of(x)) candidates.push_back(x | c);
    }
    std::sort(candidates.begin(), candidates.end(), CanonicalLess{});
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      bool minimal = true;
      for (std::size_t b = 0; b < a && minimal; ++b) {
        if (candidates[b].proper_subset_of(candidates[a])) minimal = false;
      }
      if (minimal) {
        const std::size_t j = lat.index_.at(candidates[a]);
        lat.up_[i].push_back(j);
        lat.down_[j].push_back(i);
      }
    }
  }

  lat.length_.assign(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i : lat.down_[j]) lat.length_[j] = std::max(lat.length_[j], lat.length_[i] + 1);
  }
  return lat;
}

/// Length of the longest chain of members contained in `top`.
inline std::size_t interval_length(const UnionLattice& lat, SubsetMask top) {
  auto idx = lat.index_of(top);
  if (!idx) throw Error(Errc::not_a_member, lat.ground().format(top) + " is not a union of generators");
  return lat.length(*idx);
}

/// Modular-pair test read directly off the lattice: A ∨ B sits at length 2.
inline bool is_modular_pair(const UnionLattice& lat, SubsetMask a, SubsetMask b) {
  if (!lat.generators().contains(a) || !lat.generators().contains(b)) {
    throw Error(Errc::not_a_member, "modular pairs are only defined for generators");
  }
  if (a == b) return false;
  return interval_length(lat, a | b) == 2;
}

/// Modular-pair test without building the lattice: every two distinct members
/// inside A ∪ B must already span A ∪ B.
inline bool is_modular_pair(const CircuitFamily& family, SubsetMask a, SubsetMask b) {
  if (!family.contains(a) || !family.contains(b)) {
    throw Error(Errc::not_a_member, "modular pairs are only defined for family members");
  }
  if (a == b) return false;
  const SubsetMask top = a | b;
  const std::vector<SubsetMask> inside = family.members_within(top);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    for (std::size_t j = i + 1; j < inside.size(); ++j) {
      if ((inside[i] | inside[j]) != top) return false;
    }
  }
  return true;
}

/// All modular pairs (i < j as member indices) of a family.
inline std::vector<std::pair<std::size_t, std::size_t>> modular_pairs(const CircuitFamily& family) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (is_modular_pair(family, family[i], family[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

/// A finite lattice given by its Hasse diagram. Construction validates the
/// lattice property and precomputes order, join and meet tables.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t x, std::size_t y) const { return up_set_[x].test(y); }
  std::size_t join(std::size_t x, std::size_t y) const { return join_[x * n_ + y]; }
  std::size_t meet(std::size_t x, std::size_t y) const { return meet_[x * n_ + y]; }
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }

  std::span<const std::size_t> upper_covers(std::size_t x) const { return up_[x]; }
  std::span<const std::size_t> lower_covers(std::size_t x) const { return down_[x]; }
  const std::vector<CoverPair>& covers() const noexcept { return covers_; }
  const std::vector<std::size_t>& atoms() const noexcept { return atoms_; }

  /// Atoms below x, as a bitset over element indices.
  const DynBitset& atom_set(std::size_t x) const { return atoms_below_[x]; }

  /// Longest chain from the bottom to x.
  std::size_t rank(std::size_t x) const { return rank_[x]; }
  /// Longest chain from x to the top, i.e. the length of the upper interval.
  std::size_t height_above(std::size_t x) const { return height_[x]; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t x) const { return labels_.empty() ? std::to_string(x) : labels_[x]; }

  /// Transitive reduction of the order relation, recomputed from leq alone.
  std::vector<CoverPair> derive_covers_from_order() const {
    std::vector<CoverPair> out;
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        if (x == y || !leq(x, y)) continue;
        bool between = false;
        for (std::size_t z = 0; z < n_ && !between; ++z) {
          between = z != x && z != y && leq(x, z) && leq(z, y);
        }
        if (!between) out.emplace_back(x, y);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend FiniteLattice lattice_from_covers(std::size_t n, std::vector<CoverPair> covers,
                                           std::vector<std::string> labels);

 private:
  std::size_t n_ = 0;
  std::vector<CoverPair> covers_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<DynBitset> up_set_;    // elements >= x
  std::vector<DynBitset> down_set_;  // elements <= x
  std::vector<std::size_t> join_;
  std::vector<std::size_t> meet_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  std::vector<std::size_t> atoms_;
  std::vector<DynBitset> atoms_below_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> height_;
  std::vector<std::string> labels_;
};

inline FiniteLattice lattice_from_covers(std::size_t n, std::vector<CoverPair> covers,
                                         std::vector<std::string> labels = {}) {
  FiniteLattice L;
  if (!labels.empty() && labels.size() != n) throw Error(Errc::malformed_input, "label count differs from element count");
  if (n == 0) throw Error(Errc::no_bounded_extremes, "a lattice needs at least one element");
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw Error(Errc::element_out_of_range, "cover pair refers to a missing element");
    if (lo == hi) throw Error(Errc::cyclic_order, "element " + std::to_string(lo) + " covers itself");
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

  L.n_ = n;
  L.labels_ = std::move(labels);
  L.up_.assign(n, {});
  L.down_.assign(n, {});
  for (auto [lo, hi] : covers) {
    L.up_[lo].push_back(hi);
    L.down_[hi].push_back(lo);
  }

  // Kahn's algorithm; leftover elements sit on a cycle.
  std::vector<std::size_t> indeg(n), order;
  for (std::size_t x = 0; x < n; ++x) indeg[x] = L.down_[x].size();
  for (std::size_t x = 0; x < n; ++x) {
    if (indeg[x] == 0) order.push_back(x);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t y : L.up_[order[k]]) {
      if (--indeg[y] == 0) order.push_back(y);
    }
  }
  if (order.size() != n) throw Error(Errc::cyclic_order, "cover relation contains a cycle");

  L.up_set_.assign(n, DynBitset(n));
  L.down_set_.assign(n, DynBitset(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    L.up_set_[*it].set(*it);
    for (std::size_t y : L.up_[*it]) L.up_set_[*it] |= L.up_set_[y];
  }
  for (std::size_t x : order) {
    L.down_set_[x].set(x);
    for (std::size_t y : L.down_[x]) L.down_set_[x] |= L.down_set_[y];
  }

  for (auto [lo, hi] : covers) {
    for (std::size_t mid : L.up_[lo]) {
      if (mid != hi && L.up_set_[mid].test(hi)) {
        throw Error(Errc::covers_not_reduced, "cover " + std::to_string(lo) + "<" + std::to_string(hi) +
                                                  " is implied through " + std::to_string(mid));
      }
    }
  }

  std::vector<std::size_t> minimal, maximal;
  for (std::size_t x = 0; x < n; ++x) {
    if (L.down_[x].empty()) minimal.push_back(x);
    if (L.up_[x].empty()) maximal.push_back(x);
  }
  if (minimal.size() != 1 || maximal.size() != 1) {
    throw Error(Errc::no_bounded_extremes, "order needs a unique minimum and a unique maximum");
  }
  L.bottom_ = minimal.front();
  L.top_ = maximal.front();

  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  // The least element of a set of bounds must come first in any topological
  // order; take that candidate and confirm it lies below every bound.
  auto least_of = [&](const DynBitset& bounds) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t z : bounds.indices()) {
      if (!best || position[z] < position[*best]) best = z;
    }
    if (best && bounds.subset_of(L.up_set_[*best])) return best;
    return std::nullopt;
  };
  auto greatest_of = [&](const DynBitset& bounds) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t z : bounds.indices()) {
      if (!best || position[z] > position[*best]) best = z;
    }
    if (best && bounds.subset_of(L.down_set_[*best])) return best;
    return std::nullopt;
  };

  L.join_.assign(n * n, 0);
  L.meet_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      auto j = least_of(L.up_set_[x] & L.up_set_[y]);
      auto m = greatest_of(L.down_set_[x] & L.down_set_[y]);
      if (!j || !m) {
        const std::string what = j ? "meet" : "join";
        throw Error(Errc::not_a_lattice, "elements " + L.label(x) + " and " + L.label(y) + " have no unique " + what);
      }
      L.join_[x * n + y] = L.join_[y * n + x] = *j;
      L.meet_[x * n + y] = L.meet_[y * n + x] = *m;
    }
  }

  L.atoms_ = L.up_[L.bottom_];
  std::sort(L.atoms_.begin(), L.atoms_.end());
  L.atoms_below_.assign(n, DynBitset(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a : L.atoms_) {
      if (L.up_set_[a].test(x)) L.atoms_below_[x].set(a);
    }
  }

  L.rank_.assign(n, 0);
  for (std::size_t x : order) {
    for (std::size_t y : L.down_[x]) L.rank_[x] = std::max(L.rank_[x], L.rank_[y] + 1);
  }
  L.height_.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t y : L.up_[*it]) L.height_[*it] = std::max(L.height_[*it], L.height_[y] + 1);
  }
  L.covers_ = std::move(covers);
  return L;
}

inline std::vector<std::size_t> atoms_below(const FiniteLattice& lat, std::size_t x) {
  if (x >= lat.size()) throw Error(Errc::element_out_of_range, "no such lattice element");
  auto idx = lat.atom_set(x).indices();
  return {idx.begin(), idx.end()};
}

/// Crapo separation in atom form: the new atoms brought in by each cover of x
/// are nonempty, pairwise disjoint, and together exhaust the atoms not below x.
inline bool separation_atoms(const FiniteLattice& lat, std::size_t x) {
  if (x >= lat.size()) throw Error(Errc::element_out_of_range, "no such lattice element");
  const DynBitset& below = lat.atom_set(x);
  DynBitset covered(lat.size());
  for (std::size_t y : lat.upper_covers(x)) {
    const DynBitset block = lat.atom_set(y) - below;
    if (block.none() || block.intersects(covered)) return false;
    covered |= block;
  }
  return covered == lat.atom_set(lat.top()) - below;
}

/// Hasse diagram of a union lattice as an abstract lattice, labelled by sets.
inline FiniteLattice to_finite_lattice(const UnionLattice& lat) {
  std::vector<std::string> labels;
  for (SubsetMask m : lat.members()) labels.push_back(lat.ground().format(m));
  return lattice_from_covers(lat.size(), lat.cover_pairs(), std::move(labels));
}

}  // namespace modmat

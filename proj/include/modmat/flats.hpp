#pragma once

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "modmat/circuits.hpp"
#include "modmat/core.hpp"
#include "modmat/lattice.hpp"
#include "modmat/verdict.hpp"

namespace modmat {

/// An intersection-closed family of subsets containing the ground set,
/// stored in canonical order together with its Hasse diagram.
class FlatFamily {
 public:
  FlatFamily() = default;

  static FlatFamily make(GroundSet ground, std::vector<SubsetMask> members) {
    for (SubsetMask m : members) {
      if (!ground.contains(m)) throw Error(Errc::element_out_of_range, "flat uses an element outside the ground set");
    }
    std::sort(members.begin(), members.end(), CanonicalLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.back() != ground.full()) {
      throw Error(Errc::missing_ground_set, "the ground set must be a member");
    }
    std::unordered_set<SubsetMask, SubsetMaskHash> present(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (!present.count(members[i] & members[j])) {
          throw Error(Errc::not_intersection_closed, "intersection of " + ground.format(members[i]) + " and " +
                                                         ground.format(members[j]) + " is missing");
        }
      }
    }
    return trusted(std::move(ground), std::move(members));
  }

  /// For producers that already guarantee a sorted, closed family.
  static FlatFamily trusted(GroundSet ground, std::vector<SubsetMask> members) {
    FlatFamily f;
    f.ground_ = std::move(ground);
    f.members_ = std::move(members);
    f.build_order();
    return f;
  }

  const GroundSet& ground() const noexcept { return ground_; }
  std::span<const SubsetMask> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::optional<std::size_t> index_of(SubsetMask m) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), m, CanonicalLess{});
    if (it == members_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }
  bool contains(SubsetMask m) const { return index_of(m).has_value(); }

  std::span<const std::size_t> upper_covers(std::size_t i) const { return up_[i]; }

  /// Longest chain of members from member i up to the ground set.
  std::size_t height_above(std::size_t i) const { return height_[i]; }

  /// Members covered by the ground set.
  std::vector<SubsetMask> coatoms() const {
    std::vector<SubsetMask> out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& up = up_[i];
      if (up.size() == 1 && up.front() == members_.size() - 1) out.push_back(members_[i]);
    }
    return out;
  }

  std::vector<CoverPair> cover_pairs() const {
    std::vector<CoverPair> out;
    for (std::size_t i = 0; i < up_.size(); ++i) {
      for (std::size_t j : up_[i]) out.emplace_back(i, j);
    }
    return out;
  }

  bool operator==(const FlatFamily& o) const { return ground_.size() == o.ground_.size() && members_ == o.members_; }

 private:
  void build_order() {
    const std::size_t m = members_.size();
    up_.assign(m, {});
    // Supersets come later in canonical order; a superset is a cover unless
    // it contains a cover found earlier.
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!members_[i].proper_subset_of(members_[j])) continue;
        bool cover = true;
        for (std::size_t k : up_[i]) {
          if (members_[k].subset_of(members_[j])) {
            cover = false;
            break;
          }
        }
        if (cover) up_[i].push_back(j);
      }
    }
    height_.assign(m, 0);
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t j : up_[i]) height_[i] = std::max(height_[i], height_[j] + 1);
    }
  }

  GroundSet ground_;
  std::vector<SubsetMask> members_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::size_t> height_;
};

/// One application of cl(A) = A ∪ {e : e ∈ C ⊆ A ∪ {e} for a member C};
/// with `to_fixpoint`, iterated until stable.
inline SubsetMask closure(const CircuitFamily& family, SubsetMask a, bool to_fixpoint = false) {
  while (true) {
    SubsetMask out = a;
    for (SubsetMask c : family.members()) {
      const SubsetMask outside = c - a;
      if (outside.count() == 1) out |= outside;
    }
    if (!to_fixpoint || out == a) return out;
    a = out;
  }
}

/// Fixed points of the closure operator, by testing every subset.
inline FlatFamily flats_from_circuits(const CircuitFamily& family, bool verify = true) {
  if (family.ground().size() > max_oracle_ground) throw Error(Errc::too_large, "flat enumeration limited to 20 elements");
  if (verify && !check_circuits_full(family)) throw Error(Errc::not_a_matroid, "family fails circuit elimination");
  std::vector<SubsetMask> flats;
  for_each_submask(family.ground().full(), [&](SubsetMask x) {
    if (closure(family, x) == x) flats.push_back(x);
  });
  return FlatFamily::make(family.ground(), std::move(flats));
}

namespace detail {

inline std::optional<SeparationWitness> ground_separation_failure(const FlatFamily& f, std::size_t i) {
  const SubsetMask x = f.members()[i];
  SubsetMask covered;
  bool disjoint = true;
  std::vector<SubsetMask> blocks;
  for (std::size_t j : f.upper_covers(i)) {
    const SubsetMask block = f.members()[j] - x;
    if (block.intersects(covered)) disjoint = false;
    covered |= block;
    blocks.push_back(block);
  }
  if (disjoint && covered == f.ground().full() - x) return std::nullopt;
  return SeparationWitness{x, std::move(blocks)};
}

template <typename Filter>
Verdict check_separation(const FlatFamily& f, Filter&& use) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!use(i)) continue;
    if (auto w = ground_separation_failure(f, i)) return Verdict::reject(std::move(*w));
  }
  return Verdict::accept();
}

}  // namespace detail

/// Ground-set separation at X: the sets X' - X over covers X' of X partition E - X.
inline bool separation_ground(const FlatFamily& f, SubsetMask x) {
  auto i = f.index_of(x);
  if (!i) throw Error(Errc::not_a_member, f.ground().format(x) + " is not in the family");
  return !detail::ground_separation_failure(f, *i).has_value();
}

inline Verdict check_flats_full(const FlatFamily& f) {
  return detail::check_separation(f, [](std::size_t) { return true; });
}

/// Separation checked only where the upper interval has length 2.
inline Verdict check_flats_restricted(const FlatFamily& f) {
  return detail::check_separation(f, [&](std::size_t i) { return f.height_above(i) == 2; });
}

/// Complements of the coatoms; always an antichain of nonempty sets.
inline CircuitFamily coatom_complement_circuits(const FlatFamily& f) {
  std::vector<SubsetMask> out;
  for (SubsetMask h : f.coatoms()) out.push_back(f.ground().full() - h);
  return CircuitFamily::make(f.ground(), std::move(out));
}

/// True iff complementation maps the members of `u` exactly onto `f`.
/// Both are ordered by inclusion, so this is an order anti-isomorphism.
inline bool anti_isomorphic_by_complement(const UnionLattice& u, const FlatFamily& f) {
  if (u.size() != f.size() || u.ground().size() != f.ground().size()) return false;
  const SubsetMask all = f.ground().full();
  for (SubsetMask z : u.members()) {
    if (!f.contains(all - z)) return false;
  }
  return true;
}

/// The family as an abstract lattice, elements indexed as in members().
inline FiniteLattice to_finite_lattice(const FlatFamily& f) {
  std::vector<std::string> labels;
  for (SubsetMask m : f.members()) labels.push_back(f.ground().format(m));
  return lattice_from_covers(f.size(), f.cover_pairs(), std::move(labels));
}

/// Literal atom-form separation at every member of the family.
inline bool atom_separation_everywhere(const FlatFamily& f) {
  const FiniteLattice lat = to_finite_lattice(f);
  for (std::size_t x = 0; x < lat.size(); ++x) {
    if (!separation_atoms(lat, x)) return false;
  }
  return true;
}

/// Geometric-lattice test: atom-form separation wherever the upper interval
/// has length 2.
inline Verdict check_geometric_lattice(const FiniteLattice& lat) {
  for (std::size_t x = 0; x < lat.size(); ++x) {
    if (lat.height_above(x) == 2 && !separation_atoms(lat, x)) {
      return Verdict::reject(LatticeWitness{x, "separation fails at " + lat.label(x)});
    }
  }
  return Verdict::accept();
}

/// The same question routed through set families: represent each element by
/// the atoms below it and run the flat validators on the ground set of atoms.
/// The representation is faithful only when distinct elements have distinct
/// atom sets; a collision means the lattice is not atomic.
inline Verdict check_geometric_lattice_via_atom_sets(const FiniteLattice& lat) {
  const auto& atoms = lat.atoms();
  if (atoms.size() > max_ground_size) throw Error(Errc::too_large, "more than 64 atoms");
  std::vector<std::size_t> atom_pos(lat.size(), 0);
  for (std::size_t k = 0; k < atoms.size(); ++k) atom_pos[atoms[k]] = k;

  std::vector<SubsetMask> sets(lat.size());
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> owner;
  for (std::size_t x = 0; x < lat.size(); ++x) {
    SubsetMask s;
    for (std::size_t a : lat.atom_set(x).indices()) s = s.with(static_cast<Element>(atom_pos[a]));
    sets[x] = s;
    auto [it, fresh] = owner.emplace(s, x);
    if (!fresh) {
      return Verdict::reject(LatticeWitness{x, lat.label(x) + " and " + lat.label(it->second) +
                                                   " lie above the same atoms (not atomic)"});
    }
  }
  std::vector<std::string> names;
  for (std::size_t a : atoms) names.push_back(lat.label(a));
  GroundSet ground = lat.labels().empty() ? GroundSet(static_cast<Element>(atoms.size())) : GroundSet(names);
  const FlatFamily f = FlatFamily::make(std::move(ground), sets);
  Verdict v = check_flats_restricted(f);
  if (!v.accepted) {
    const auto& w = std::get<SeparationWitness>(*v.witness);
    const std::size_t x = owner.at(w.flat);
    return Verdict::reject(LatticeWitness{x, "separation fails at the atom set of " + lat.label(x)});
  }
  return v;
}

}  // namespace modmat

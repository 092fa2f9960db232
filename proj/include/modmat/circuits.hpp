#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modmat/core.hpp"
#include "modmat/lattice.hpp"
#include "modmat/verdict.hpp"

namespace modmat {

/// Ground sets above this size are refused by the exponential oracles.
inline constexpr Element max_oracle_ground = 20;

namespace detail {

inline std::optional<SubsetMask> first_member_within(const CircuitFamily& family, SubsetMask region) {
  for (SubsetMask c : family.members()) {
    if (c.subset_of(region)) return c;
  }
  return std::nullopt;
}

/// First element of c1 ∩ c2 that cannot be eliminated, if any.
inline std::optional<EliminationWitness> elimination_failure(const CircuitFamily& family, SubsetMask c1, SubsetMask c2) {
  const SubsetMask both = c1 | c2;
  for (Element e : (c1 & c2).elements()) {
    if (!first_member_within(family, both.without(e))) return EliminationWitness{c1, c2, e, both.without(e)};
  }
  return std::nullopt;
}

template <typename PairFilter>
Verdict check_pairs(const CircuitFamily& family, PairFilter&& use_pair) {
  const auto members = family.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!members[i].intersects(members[j]) || !use_pair(members[i], members[j])) continue;
      if (auto w = elimination_failure(family, members[i], members[j])) return Verdict::reject(*w);
    }
  }
  return Verdict::accept();
}

}  // namespace detail

/// A member inside (c1 ∪ c2) - {e}, first in canonical order.
inline std::optional<SubsetMask> eliminates(const CircuitFamily& family, SubsetMask c1, SubsetMask c2, Element e) {
  if (!family.contains(c1) || !family.contains(c2)) throw Error(Errc::not_a_member, "eliminated sets must be family members");
  if (!(c1 & c2).contains(e)) throw Error(Errc::precondition_violation, "element is not in both circuits");
  return detail::first_member_within(family, (c1 | c2).without(e));
}

/// Elimination checked on every pair of distinct members. This is the oracle
/// the restricted validator is measured against.
inline Verdict check_circuits_full(const CircuitFamily& family) {
  return detail::check_pairs(family, [](SubsetMask, SubsetMask) { return true; });
}

/// Elimination checked only on modular pairs.
inline Verdict check_circuits_modular(const CircuitFamily& family) {
  return detail::check_pairs(family, [&](SubsetMask a, SubsetMask b) { return is_modular_pair(family, a, b); });
}

inline bool is_independent(const CircuitFamily& family, SubsetMask s) {
  return !detail::first_member_within(family, s).has_value();
}

/// Size of a largest subset of s containing no member, by exhaustive search.
inline std::size_t rank(const CircuitFamily& family, SubsetMask s, bool verify = false) {
  if (verify && !check_circuits_full(family)) throw Error(Errc::not_a_matroid, "family fails circuit elimination");
  if (!family.ground().contains(s)) throw Error(Errc::element_out_of_range, "set leaves the ground set");
  if (s.count() > static_cast<int>(max_oracle_ground)) throw Error(Errc::too_large, "rank oracle limited to 20 elements");
  std::size_t best = 0;
  for_each_submask(s, [&](SubsetMask t) {
    if (static_cast<std::size_t>(t.count()) > best && is_independent(family, t)) best = static_cast<std::size_t>(t.count());
  });
  return best;
}

/// Rank of every subset of the ground set, computed once. A set is dependent
/// iff it is a member or has a dependent one-smaller subset; the rank of a
/// dependent set is attained on one of its one-smaller subsets.
class RankTable {
 public:
  explicit RankTable(const CircuitFamily& family) : n_(family.ground().size()) {
    if (n_ > max_oracle_ground) throw Error(Errc::too_large, "rank table limited to 20 elements");
    const std::size_t total = std::size_t{1} << n_;
    std::vector<std::uint8_t> dependent(total, 0);
    for (SubsetMask c : family.members()) dependent[c.bits()] = 1;
    rank_.assign(total, 0);
    for (std::size_t s = 1; s < total; ++s) {
      std::uint8_t best = 0;
      for (std::uint64_t b = s; b != 0; b &= b - 1) {
        const std::size_t sub = s & ~(b & (~b + 1));
        dependent[s] |= dependent[sub];
        best = std::max(best, rank_[sub]);
      }
      rank_[s] = dependent[s] ? best : static_cast<std::uint8_t>(std::popcount(s));
    }
  }

  std::size_t operator()(SubsetMask s) const { return rank_[s.bits()]; }
  Element ground_size() const noexcept { return n_; }

 private:
  Element n_;
  std::vector<std::uint8_t> rank_;
};

/// Circuits of the dual matroid: minimal nonempty D with r(E - D) < r(E).
inline CircuitFamily dual_circuits(const CircuitFamily& family, bool verify = true) {
  if (verify && !check_circuits_full(family)) throw Error(Errc::not_a_matroid, "family fails circuit elimination");
  const RankTable r(family);
  const SubsetMask e_all = family.ground().full();
  const std::size_t full_rank = r(e_all);
  auto drops = [&](SubsetMask d) { return !d.empty() && r(e_all - d) < full_rank; };
  std::vector<SubsetMask> out;
  for_each_submask(e_all, [&](SubsetMask d) {
    if (!drops(d)) return;
    for (Element i : d.elements()) {
      if (drops(d.without(i))) return;
    }
    out.push_back(d);
  });
  return CircuitFamily::make(family.ground(), std::move(out));
}

}  // namespace modmat

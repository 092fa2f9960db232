#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "modmat/circuits.hpp"
#include "modmat/core.hpp"
#include "modmat/lattice.hpp"
#include "modmat/verdict.hpp"

namespace modmat {

/// Which f must be reachable when eliminating a separating element e.
///  strong:  every f in supp X ∪ supp Y that does not separate X and Y,
///           i.e. X(f) != -Y(f). This is the usual strong elimination axiom.
///  literal: every f != e with X(f) != Y(f), separating f included.
enum class EliminationRule { strong, literal };

namespace detail {

inline bool qualifies_f(const SignedVector& x, const SignedVector& y, Element e, Element f, EliminationRule rule) {
  if (rule == EliminationRule::strong) return x(f) != -y(f);
  return f != e && x(f) != y(f);
}

inline std::optional<SignedEliminationWitness> oe_failure(const SignedFamily& fam, const SignedVector& x,
                                                          const SignedVector& y, EliminationRule rule) {
  const SubsetMask separators = (x.positive() & y.negative()) | (x.negative() & y.positive());
  if (separators.empty()) return std::nullopt;
  const SubsetMask pos = x.positive() | y.positive();
  const SubsetMask neg = x.negative() | y.negative();
  std::vector<SignedVector> conformal;
  for (const auto& z : fam.members()) {
    if (z.positive().subset_of(pos) && z.negative().subset_of(neg)) conformal.push_back(z);
  }
  const SubsetMask both = x.support() | y.support();
  for (Element e : separators.elements()) {
    for (Element f : both.elements()) {
      if (!qualifies_f(x, y, e, f, rule)) continue;
      bool found = false;
      for (const auto& z : conformal) {
        if (z(e) == 0 && z(f) != 0) {
          found = true;
          break;
        }
      }
      if (!found) return SignedEliminationWitness{x, y, e, f};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Signed elimination between two members of the family.
inline bool oe_property(const SignedFamily& fam, const SignedVector& x, const SignedVector& y,
                        EliminationRule rule = EliminationRule::strong) {
  if (!fam.contains(x) || !fam.contains(y)) throw Error(Errc::not_a_member, "signed vectors must be family members");
  return !detail::oe_failure(fam, x, y, rule).has_value();
}

/// Deduplicated supports.
inline CircuitFamily support_family(const SignedFamily& fam) {
  std::vector<SubsetMask> supports;
  for (const auto& x : fam.members()) supports.push_back(x.support());
  try {
    return CircuitFamily::make(fam.ground(), std::move(supports));
  } catch (const Error& err) {
    if (err.code() == Errc::comparable_members) throw Error(Errc::supports_comparable, err.what());
    throw;
  }
}

/// Signed elimination on pairs whose supports form a modular pair; the
/// support matroid is not checked separately.
inline Verdict check_signed_modular(const SignedFamily& fam, EliminationRule rule = EliminationRule::strong) {
  const CircuitFamily supports = support_family(fam);
  const auto members = fam.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const SubsetMask a = members[i].support();
      const SubsetMask b = members[j].support();
      if (a == b || !is_modular_pair(supports, a, b)) continue;
      if (auto w = detail::oe_failure(fam, members[i], members[j], rule)) return Verdict::reject(*w);
    }
  }
  return Verdict::accept();
}

/// Oracle: the supports satisfy full circuit elimination, and signed
/// elimination holds for every pair with distinct supports.
inline Verdict check_signed_classic(const SignedFamily& fam, EliminationRule rule = EliminationRule::strong) {
  Verdict unsigned_verdict = check_circuits_full(support_family(fam));
  if (!unsigned_verdict) return unsigned_verdict;
  const auto members = fam.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i].support() == members[j].support()) continue;
      if (auto w = detail::oe_failure(fam, members[i], members[j], rule)) return Verdict::reject(*w);
    }
  }
  return Verdict::accept();
}

/// Family with every sign on the elements of `r` reversed.
inline SignedFamily reorient(const SignedFamily& fam, SubsetMask r) {
  std::vector<SignedVector> out;
  for (const auto& x : fam.members()) {
    const SubsetMask flip_pos = x.positive() & r;
    const SubsetMask flip_neg = x.negative() & r;
    out.emplace_back((x.positive() - flip_pos) | flip_neg, (x.negative() - flip_neg) | flip_pos);
  }
  return SignedFamily::make(fam.ground(), std::move(out));
}

/// True iff `other` is obtained from `fam` by reversing signs on some subset
/// of the ground set.
inline bool is_reorientation_of(const SignedFamily& fam, const SignedFamily& other) {
  if (fam.ground().size() > max_oracle_ground) throw Error(Errc::too_large, "reorientation search limited to 20 elements");
  bool found = false;
  for_each_submask(fam.ground().full(), [&](SubsetMask r) {
    if (!found && reorient(fam, r) == other) found = true;
  });
  return found;
}

/// All distinct families obtained by reversing one sign of one +/- pair (the
/// pair is replaced as a whole, so results stay simple and Z2-invariant).
/// Flips that reproduce the original family, which happens exactly on loops,
/// are skipped.
inline std::vector<SignedFamily> sign_flip_mutants(const SignedFamily& fam) {
  std::vector<SignedFamily> out;
  const auto reps = fam.representatives();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (Element e : reps[k].support().elements()) {
      std::vector<SignedVector> members;
      for (std::size_t m = 0; m < reps.size(); ++m) members.push_back(m == k ? reps[k].flipped_at(e) : reps[m]);
      SignedFamily mutant = SignedFamily::make(fam.ground(), std::move(members), true);
      if (mutant == fam || std::find(out.begin(), out.end(), mutant) != out.end()) continue;
      out.push_back(std::move(mutant));
    }
  }
  return out;
}

}  // namespace modmat

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modmat/core.hpp"

namespace modmat {

/// Failed circuit elimination: no member fits inside (c1 ∪ c2) - {e}.
struct EliminationWitness {
  SubsetMask c1;
  SubsetMask c2;
  Element e = 0;
  SubsetMask candidates;  // (c1 ∪ c2) - {e}
};

/// Failed signed elimination between x and y at the pair (e, f).
struct SignedEliminationWitness {
  SignedVector x;
  SignedVector y;
  Element e = 0;
  Element f = 0;
};

/// A member of a flat family where ground-set separation fails.
struct SeparationWitness {
  SubsetMask flat;
  std::vector<SubsetMask> blocks;  // X' - X for every cover X' of X
};

/// An element of an abstract lattice where separation fails.
struct LatticeWitness {
  std::size_t element = 0;
  std::string reason;
};

using Witness = std::variant<EliminationWitness, SignedEliminationWitness, SeparationWitness, LatticeWitness>;

/// Uniform validator result. Rejections always carry the first failure in
/// canonical order.
struct Verdict {
  bool accepted = true;
  std::optional<Witness> witness;

  static Verdict accept() { return {}; }
  static Verdict reject(Witness w) { return Verdict{false, std::move(w)}; }

  explicit operator bool() const noexcept { return accepted; }
};

}  // namespace modmat

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "modmat/error.hpp"

namespace modmat {

using Element = unsigned;

inline constexpr Element max_ground_size = 64;

/// A subset of a ground set of at most 64 elements, one bit per element.
class SubsetMask {
 public:
  constexpr SubsetMask() noexcept = default;
  constexpr explicit SubsetMask(std::uint64_t bits) noexcept : bits_(bits) {}

  static constexpr SubsetMask singleton(Element e) noexcept { return SubsetMask{std::uint64_t{1} << e}; }

  /// The set {0, ..., n-1}.
  static constexpr SubsetMask full(Element n) noexcept {
    return SubsetMask{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  static SubsetMask of(std::initializer_list<Element> elems) noexcept {
    SubsetMask m;
    for (Element e : elems) m = m.with(e);
    return m;
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr int count() const noexcept { return std::popcount(bits_); }
  constexpr bool contains(Element e) const noexcept { return e < 64 && ((bits_ >> e) & 1U) != 0; }
  constexpr bool subset_of(SubsetMask o) const noexcept { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(SubsetMask o) const noexcept { return subset_of(o) && bits_ != o.bits_; }
  constexpr bool intersects(SubsetMask o) const noexcept { return (bits_ & o.bits_) != 0; }

  constexpr SubsetMask with(Element e) const noexcept { return SubsetMask{bits_ | (std::uint64_t{1} << e)}; }
  constexpr SubsetMask without(Element e) const noexcept { return SubsetMask{bits_ & ~(std::uint64_t{1} << e)}; }

  /// Smallest element; undefined on the empty set.
  constexpr Element first() const noexcept { return static_cast<Element>(std::countr_zero(bits_)); }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Element>(std::countr_zero(b)));
    return out;
  }

  constexpr SubsetMask operator|(SubsetMask o) const noexcept { return SubsetMask{bits_ | o.bits_}; }
  constexpr SubsetMask operator&(SubsetMask o) const noexcept { return SubsetMask{bits_ & o.bits_}; }
  constexpr SubsetMask operator-(SubsetMask o) const noexcept { return SubsetMask{bits_ & ~o.bits_}; }
  constexpr SubsetMask& operator|=(SubsetMask o) noexcept { bits_ |= o.bits_; return *this; }
  constexpr SubsetMask& operator&=(SubsetMask o) noexcept { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const SubsetMask&) const noexcept = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Canonical order on subsets: by cardinality, then by numeric value. It is a
/// linear extension of inclusion.
constexpr bool canonical_less(SubsetMask a, SubsetMask b) noexcept {
  const int ca = a.count();
  const int cb = b.count();
  return ca != cb ? ca < cb : a.bits() < b.bits();
}

struct CanonicalLess {
  constexpr bool operator()(SubsetMask a, SubsetMask b) const noexcept { return canonical_less(a, b); }
};

struct SubsetMaskHash {
  std::size_t operator()(SubsetMask m) const noexcept { return std::hash<std::uint64_t>{}(m.bits()); }
};

/// Calls `fn` on every subset of `m` (including the empty set and `m`).
template <typename Fn>
void for_each_submask(SubsetMask m, Fn&& fn) {
  std::uint64_t s = m.bits();
  while (true) {
    fn(SubsetMask{s});
    if (s == 0) break;
    s = (s - 1) & m.bits();
  }
}

/// Finite ground set {0, ..., n-1} with optional display labels.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(Element size) : size_(size) {
    if (size > max_ground_size) throw Error(Errc::too_large, "ground set has more than 64 elements");
  }

  explicit GroundSet(std::vector<std::string> labels) : size_(static_cast<Element>(labels.size())) {
    if (labels.size() > max_ground_size) throw Error(Errc::too_large, "ground set has more than 64 elements");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw Error(Errc::malformed_input, "duplicate ground label '" + l + "'");
    }
    labels_ = std::move(labels);
  }

  Element size() const noexcept { return size_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  SubsetMask full() const noexcept { return SubsetMask::full(size_); }
  bool contains(SubsetMask m) const noexcept { return m.subset_of(full()); }

  /// Explicit label if one was given, else a..z for small sets and e<i> beyond.
  std::string label(Element e) const {
    if (!labels_.empty()) return labels_.at(e);
    if (size_ <= 26) return std::string(1, static_cast<char>('a' + e));
    return "e" + std::to_string(e);
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(size_);
    for (Element e = 0; e < size_; ++e) out.push_back(label(e));
    return out;
  }

  std::optional<Element> index_of(const std::string& name) const {
    for (Element e = 0; e < size_; ++e) {
      if (label(e) == name) return e;
    }
    return std::nullopt;
  }

  /// Renders a subset as e.g. "{a,b,c}".
  std::string format(SubsetMask m) const {
    std::string s = "{";
    bool first = true;
    for (Element e : m.elements()) {
      if (!first) s += ',';
      s += label(e);
      first = false;
    }
    return s + "}";
  }

  bool operator==(const GroundSet& o) const { return size_ == o.size_ && labels() == o.labels(); }

 private:
  Element size_ = 0;
  std::vector<std::string> labels_;
};

/// True iff no member is empty and no member is a proper subset of another.
/// Repeated masks count as one member.
inline bool is_antichain(std::span<const SubsetMask> family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) return false;
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i != j && family[i].proper_subset_of(family[j])) return false;
    }
  }
  return true;
}

/// An antichain of nonempty subsets, deduplicated and kept in canonical order.
class CircuitFamily {
 public:
  CircuitFamily() = default;

  static CircuitFamily make(GroundSet ground, std::vector<SubsetMask> members) {
    for (SubsetMask m : members) {
      if (!ground.contains(m)) throw Error(Errc::element_out_of_range, "member uses an element outside the ground set");
      if (m.empty()) throw Error(Errc::empty_member, "circuit families may not contain the empty set");
    }
    std::sort(members.begin(), members.end(), CanonicalLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    // Canonical order is a linear extension of inclusion, so only later
    // members can contain earlier ones.
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (members[i].subset_of(members[j])) {
          throw Error(Errc::comparable_members,
                      ground.format(members[i]) + " is contained in " + ground.format(members[j]));
        }
      }
    }
    return CircuitFamily(std::move(ground), std::move(members));
  }

  /// For producers that already guarantee a canonically ordered antichain.
  static CircuitFamily trusted(GroundSet ground, std::vector<SubsetMask> members) {
    return CircuitFamily(std::move(ground), std::move(members));
  }

  const GroundSet& ground() const noexcept { return ground_; }
  std::span<const SubsetMask> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  SubsetMask operator[](std::size_t i) const { return members_[i]; }

  bool contains(SubsetMask m) const {
    return std::binary_search(members_.begin(), members_.end(), m, CanonicalLess{});
  }

  /// Members inside `m`, in canonical order.
  std::vector<SubsetMask> members_within(SubsetMask m) const {
    std::vector<SubsetMask> out;
    for (SubsetMask c : members_) {
      if (c.subset_of(m)) out.push_back(c);
    }
    return out;
  }

  /// Same family with one member removed (still an antichain).
  CircuitFamily without(std::size_t index) const {
    std::vector<SubsetMask> rest = members_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
    return CircuitFamily(ground_, std::move(rest));
  }

  bool operator==(const CircuitFamily& o) const { return ground_.size() == o.ground_.size() && members_ == o.members_; }

 private:
  CircuitFamily(GroundSet g, std::vector<SubsetMask> m) : ground_(std::move(g)), members_(std::move(m)) {}

  GroundSet ground_;
  std::vector<SubsetMask> members_;
};

/// A function E -> {-1, 0, +1}, stored as its positive and negative parts.
class SignedVector {
 public:
  constexpr SignedVector() noexcept = default;

  SignedVector(SubsetMask positive, SubsetMask negative) : pos_(positive), neg_(negative) {
    if (pos_.intersects(neg_)) throw Error(Errc::invalid_signed_vector, "an element cannot be both positive and negative");
  }

  constexpr SubsetMask positive() const noexcept { return pos_; }
  constexpr SubsetMask negative() const noexcept { return neg_; }
  constexpr SubsetMask support() const noexcept { return pos_ | neg_; }

  constexpr int operator()(Element e) const noexcept {
    return pos_.contains(e) ? 1 : (neg_.contains(e) ? -1 : 0);
  }

  SignedVector operator-() const noexcept {
    SignedVector v;
    v.pos_ = neg_;
    v.neg_ = pos_;
    return v;
  }

  /// Copy with the sign at `e` reversed (no-op outside the support).
  SignedVector flipped_at(Element e) const {
    if (pos_.contains(e)) return SignedVector(pos_.without(e), neg_.with(e));
    if (neg_.contains(e)) return SignedVector(pos_.with(e), neg_.without(e));
    return *this;
  }

  constexpr bool operator==(const SignedVector&) const noexcept = default;

 private:
  SubsetMask pos_;
  SubsetMask neg_;
};

inline SubsetMask support(const SignedVector& x) noexcept { return x.support(); }

/// Orders by support in canonical order, then by the positive part.
struct SignedLess {
  bool operator()(const SignedVector& a, const SignedVector& b) const noexcept {
    if (a.support() != b.support()) return canonical_less(a.support(), b.support());
    return a.positive().bits() < b.positive().bits();
  }
};

/// Closed under negation, and equal supports force equality up to sign.
inline bool check_simple_z2(std::span<const SignedVector> family) {
  auto has = [&](const SignedVector& v) { return std::find(family.begin(), family.end(), v) != family.end(); };
  for (const auto& x : family) {
    if (!has(-x)) return false;
  }
  for (const auto& x : family) {
    for (const auto& y : family) {
      if (x.support() == y.support() && x != y && x != -y) return false;
    }
  }
  return true;
}

/// A simple, Z2-invariant family of signed sets whose supports form an
/// antichain. Members hold both signs of every pair.
class SignedFamily {
 public:
  SignedFamily() = default;

  static SignedFamily make(GroundSet ground, std::vector<SignedVector> members, bool complete_negations = false) {
    for (const auto& x : members) {
      if (!ground.contains(x.support())) throw Error(Errc::element_out_of_range, "signed vector uses an element outside the ground set");
      if (x.support().empty()) throw Error(Errc::empty_member, "signed circuits must have nonempty support");
    }
    if (complete_negations) {
      const std::size_t n = members.size();
      for (std::size_t i = 0; i < n; ++i) members.push_back(-members[i]);
    }
    std::sort(members.begin(), members.end(), SignedLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());

    for (const auto& x : members) {
      if (!std::binary_search(members.begin(), members.end(), -x, SignedLess{})) {
        throw Error(Errc::not_z2_invariant, "the negation of " + format(ground, x) + " is missing");
      }
    }
    // Sorted by support, so equal supports are adjacent.
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      const auto& x = members[i];
      const auto& y = members[i + 1];
      if (x.support() == y.support() && y != -x) {
        throw Error(Errc::not_simple, format(ground, x) + " and " + format(ground, y) + " share a support");
      }
    }
    std::vector<SubsetMask> supports;
    for (const auto& x : members) supports.push_back(x.support());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    for (std::size_t i = 0; i < supports.size(); ++i) {
      for (std::size_t j = i + 1; j < supports.size(); ++j) {
        if (supports[i].subset_of(supports[j])) {
          throw Error(Errc::supports_comparable,
                      ground.format(supports[i]) + " is contained in " + ground.format(supports[j]));
        }
      }
    }
    SignedFamily f;
    f.ground_ = std::move(ground);
    f.members_ = std::move(members);
    return f;
  }

  const GroundSet& ground() const noexcept { return ground_; }
  std::span<const SignedVector> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  bool contains(const SignedVector& x) const {
    return std::binary_search(members_.begin(), members_.end(), x, SignedLess{});
  }

  /// The member of each +/- pair that is positive on its smallest element.
  std::vector<SignedVector> representatives() const {
    std::vector<SignedVector> out;
    for (const auto& x : members_) {
      if (x(x.support().first()) > 0) out.push_back(x);
    }
    return out;
  }

  bool operator==(const SignedFamily& o) const { return ground_.size() == o.ground_.size() && members_ == o.members_; }

  static std::string format(const GroundSet& g, const SignedVector& x) {
    std::string s = "(";
    bool first = true;
    for (Element e : x.support().elements()) {
      if (!first) s += ',';
      s += (x(e) > 0 ? '+' : '-');
      s += g.label(e);
      first = false;
    }
    return s + ")";
  }

 private:
  GroundSet ground_;
  std::vector<SignedVector> members_;
};

}  // namespace modmat

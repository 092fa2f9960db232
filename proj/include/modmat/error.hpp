#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modmat {

enum class Errc {
  malformed_input,
  element_out_of_range,
  empty_member,
  comparable_members,
  not_a_member,
  precondition_violation,
  member_explosion,
  not_a_lattice,
  no_bounded_extremes,
  covers_not_reduced,
  cyclic_order,
  not_a_matroid,
  not_simple,
  not_z2_invariant,
  supports_comparable,
  invalid_signed_vector,
  not_intersection_closed,
  missing_ground_set,
  overflow,
  bad_parameters,
  too_large,
};

constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::malformed_input: return "MalformedInput";
    case Errc::element_out_of_range: return "ElementOutOfRange";
    case Errc::empty_member: return "EmptyMember";
    case Errc::comparable_members: return "ComparableMembers";
    case Errc::not_a_member: return "NotAMember";
    case Errc::precondition_violation: return "PreconditionViolation";
    case Errc::member_explosion: return "MemberExplosion";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::no_bounded_extremes: return "NoBoundedExtremes";
    case Errc::covers_not_reduced: return "CoversNotReduced";
    case Errc::cyclic_order: return "CyclicOrder";
    case Errc::not_a_matroid: return "NotAMatroid";
    case Errc::not_simple: return "NotSimple";
    case Errc::not_z2_invariant: return "NotZ2Invariant";
    case Errc::supports_comparable: return "SupportsComparable";
    case Errc::invalid_signed_vector: return "InvalidSignedVector";
    case Errc::not_intersection_closed: return "NotIntersectionClosed";
    case Errc::missing_ground_set: return "MissingGroundSet";
    case Errc::overflow: return "Overflow";
    case Errc::bad_parameters: return "BadParameters";
    case Errc::too_large: return "TooLarge";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for failures caused by an instance being too big rather than wrong.
  bool is_resource_limit() const noexcept {
    return code_ == Errc::member_explosion || code_ == Errc::too_large;
  }

 private:
  Errc code_;
};

}  // namespace modmat

#include "mcg/commutator.hpp"

namespace mcg {

CommIdentity comm_identity_from_string(std::string_view name) {
  if (name == "hall_witt") return CommIdentity::hall_witt;
  if (name == "square") return CommIdentity::square;
  if (name == "triple") return CommIdentity::triple;
  if (name == "two_term") return CommIdentity::two_term;
  throw std::invalid_argument("unknown commutator identity: " + std::string(name));
}

std::string_view comm_identity_name(CommIdentity which) {
  switch (which) {
    case CommIdentity::hall_witt: return "hall_witt";
    case CommIdentity::square: return "square";
    case CommIdentity::triple: return "triple";
    case CommIdentity::two_term: return "two_term";
  }
  return "?";
}

std::size_t comm_identity_arity(CommIdentity which) {
  return which == CommIdentity::square ? 4u : 3u;
}

}  // namespace mcg

#pragma once

#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcg/automorphism.hpp"
#include "mcg/word.hpp"

namespace mcg {

// Anything with free-group-style arithmetic: words and automorphisms both
// qualify, so every identity below can be used on curves and on mapping
// classes alike.
template <class T>
concept GroupElement = requires(const T& a, const T& b) {
  { mul(a, b) } -> std::same_as<T>;
  { pow(a, 1) } -> std::same_as<T>;
  { conjugate(a, b) } -> std::same_as<T>;
  { commutator(a, b) } -> std::same_as<T>;
  { a.inverse() } -> std::same_as<T>;
  { a == b } -> std::convertible_to<bool>;
};

// Both sides of a rewriting identity, evaluated exactly. holds() is the
// machine check that the rewriting is valid for the given arguments.
template <GroupElement T>
struct RewrittenIdentity {
  T lhs, rhs;
  bool holds() const { return lhs == rhs; }
};

class precondition_error : public std::runtime_error {
public:
  precondition_error(std::string msg, std::size_t i, std::size_t j)
      : std::runtime_error(std::move(msg)), first(i), second(j) {}
  std::size_t first, second;
};

// [[a,b], c^b] [[b,c], a^c] = [b^a, [c,a]]
template <GroupElement T>
RewrittenIdentity<T> hall_witt_identity(const T& a, const T& b, const T& c) {
  T lhs = mul(commutator(commutator(a, b), conjugate(c, b)),
              commutator(commutator(b, c), conjugate(a, c)));
  T rhs = commutator(conjugate(b, a), commutator(c, a));
  return {std::move(lhs), std::move(rhs)};
}

// [a,b][b,c][c,d][d,a] = [a^{-1}c, b^{-1}d]^{ab}
template <GroupElement T>
RewrittenIdentity<T> square_identity(const T& a, const T& b, const T& c, const T& d) {
  T lhs = mul(mul(commutator(a, b), commutator(b, c)),
              mul(commutator(c, d), commutator(d, a)));
  T rhs = conjugate(commutator(mul(a.inverse(), c), mul(b.inverse(), d)), mul(a, b));
  return {std::move(lhs), std::move(rhs)};
}

// [a,b][b,c][c,a] = [a^{-1}c, b^{-1}a]^{ab}   (square with d = a)
template <GroupElement T>
RewrittenIdentity<T> triple_identity(const T& a, const T& b, const T& c) {
  T lhs = mul(commutator(a, b), mul(commutator(b, c), commutator(c, a)));
  T rhs = conjugate(commutator(mul(a.inverse(), c), mul(b.inverse(), a)), mul(a, b));
  return {std::move(lhs), std::move(rhs)};
}

// [a,b][b,c] = [a^{-1}c, b^{-1}]^{ab}   (square with d = 1)
template <GroupElement T>
RewrittenIdentity<T> two_term_identity(const T& a, const T& b, const T& c) {
  T lhs = mul(commutator(a, b), commutator(b, c));
  T rhs = conjugate(commutator(mul(a.inverse(), c), b.inverse()), mul(a, b));
  return {std::move(lhs), std::move(rhs)};
}

enum class CommIdentity { hall_witt, square, triple, two_term };

CommIdentity comm_identity_from_string(std::string_view name);
std::string_view comm_identity_name(CommIdentity which);
// Number of arguments the identity takes (3 or 4).
std::size_t comm_identity_arity(CommIdentity which);

template <GroupElement T>
RewrittenIdentity<T> commutator_identity(CommIdentity which, const std::vector<T>& args) {
  if (args.size() != comm_identity_arity(which))
    throw std::invalid_argument("identity '" + std::string(comm_identity_name(which)) +
                                "' needs " + std::to_string(comm_identity_arity(which)) +
                                " arguments, got " + std::to_string(args.size()));
  switch (which) {
    case CommIdentity::hall_witt: return hall_witt_identity(args[0], args[1], args[2]);
    case CommIdentity::square: return square_identity(args[0], args[1], args[2], args[3]);
    case CommIdentity::triple: return triple_identity(args[0], args[1], args[2]);
    case CommIdentity::two_term: return two_term_identity(args[0], args[1], args[2]);
  }
  throw std::invalid_argument("unknown identity");
}

// ∏[a_i,b_i] = [∏a_i, ∏b_i], valid when all cross pairs commute. The
// precondition is checked exactly, never assumed; a violation reports the
// offending pair.
template <GroupElement T>
RewrittenIdentity<T> commuting_product_identity(const std::vector<T>& as,
                                                const std::vector<T>& bs) {
  if (as.empty() || as.size() != bs.size())
    throw std::invalid_argument("commuting_product_identity needs equal-length nonempty lists");
  const std::size_t k = as.size();
  auto commutes = [](const T& x, const T& y) { return mul(x, y) == mul(y, x); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (!commutes(as[i], as[j]))
        throw precondition_error("cross pair a" + std::to_string(i + 1) + ", a" +
                                     std::to_string(j + 1) + " does not commute",
                                 i, j);
      if (!commutes(as[i], bs[j]))
        throw precondition_error("cross pair a" + std::to_string(i + 1) + ", b" +
                                     std::to_string(j + 1) + " does not commute",
                                 i, j);
      if (!commutes(bs[i], bs[j]))
        throw precondition_error("cross pair b" + std::to_string(i + 1) + ", b" +
                                     std::to_string(j + 1) + " does not commute",
                                 i, j);
    }
  T lhs = commutator(as[0], bs[0]);
  T pa = as[0];
  T pb = bs[0];
  for (std::size_t i = 1; i < k; ++i) {
    lhs = mul(lhs, commutator(as[i], bs[i]));
    pa = mul(pa, as[i]);
    pb = mul(pb, bs[i]);
  }
  return {std::move(lhs), commutator(pa, pb)};
}

// x₁^{k₁}···x_m^{k_m} · y_m^{-k_m}···y₁^{-k₁} = [x₁^{k₁}···x_m^{k_m}, F],
// valid when y_i = F x_i F⁻¹. The conjugation precondition is checked
// exactly for each pair.
template <GroupElement T>
RewrittenIdentity<T> one_comm_identity(const std::vector<T>& xs, const std::vector<int>& ks,
                                       const T& F, const std::vector<T>& ys) {
  if (xs.empty() || xs.size() != ks.size() || xs.size() != ys.size())
    throw std::invalid_argument("one_comm_identity needs equal-length nonempty lists");
  const std::size_t m = xs.size();
  for (std::size_t i = 0; i < m; ++i)
    if (!(ys[i] == conjugate(xs[i], F)))
      throw precondition_error(
          "F does not conjugate entry " + std::to_string(i + 1) + " as declared", i, i);
  T prod = pow(xs[0], ks[0]);
  for (std::size_t i = 1; i < m; ++i) prod = mul(prod, pow(xs[i], ks[i]));
  T lhs = prod;
  for (std::size_t i = m; i-- > 0;) lhs = mul(lhs, pow(ys[i], -ks[i]));
  return {std::move(lhs), commutator(prod, F)};
}

}  // namespace mcg

#pragma once

#include <memory>

#include "mcg/twist.hpp"

namespace mcg {

// Closed-form twist automorphisms for the standard curve families on a
// genus-g surface with one boundary component, handles indexed 1..g:
//   rim i      (class a_i):             b_i ↦ b_i a_i^{-1}
//   through i  (class b_i):             a_i ↦ a_i b_i
//   connector i (through handles i,i+1): frozen formula, see fixtures
//   block i..j (separating, class ∏[a_k,b_k]): conjugates the enclosed
//              handles' generators by the block word
//   boundary   (class δ1): conjugation by δ1
FreeAutomorphism rim_twist(const SurfaceCtx& s, int i);
FreeAutomorphism through_twist(const SurfaceCtx& s, int i);
FreeAutomorphism connector_twist(const SurfaceCtx& s, int i);
FreeAutomorphism block_twist(const SurfaceCtx& s, int i, int j);

// Based representative of the connector curve through handles i, i+1.
Word connector_rep(const SurfaceCtx& s, int i);

// The standard one-boundary atlas on Σ_g^1: entries alpha1..alphag,
// beta1..betag, conn1..conn(g-1), sigma_i_j for all 1<=i<=j<=g, and d1.
std::shared_ptr<const Atlas> one_boundary_atlas(int genus);

// Fresh, mutable copy of the standard atlas for callers that add derived
// entries of their own.
std::shared_ptr<Atlas> make_one_boundary_atlas(int genus);

// The four-holed sphere with its three pair-enclosing curves x (holes 2,3),
// y (holes 3,4), z (holes 2,4), stabilized into the genus-3 one-boundary
// atlas.
std::shared_ptr<const Atlas> lantern_atlas();

// The curve threading handle g through the second hole of Σ_g^2: the last
// link of the odd twist chain beta1, alpha1, conn1, ..., alphag, gamma whose
// product C satisfies C^{2g+2} = conjugation by δ1.
Word hole_connector_rep(const SurfaceCtx& s);
FreeAutomorphism hole_connector_twist(const SurfaceCtx& s);

// Chain atlas on Σ_g^2: entries d1, d2 and the 2g+1 chain curves above,
// with adjacency declared (consecutive curves cross once, all other pairs
// are disjoint).
std::shared_ptr<const Atlas> two_boundary_chain_atlas(int genus);
std::shared_ptr<Atlas> make_two_boundary_chain_atlas(int genus);

// The standard atlas for a surface context: the one-boundary atlas for
// (g>=1, b=1), the four-holed sphere for (0,4), the chain atlas for
// (g>=1, b=2). Throws atlas_error for contexts without one.
std::shared_ptr<const Atlas> standard_atlas(const SurfaceCtx& ctx);

}  // namespace mcg

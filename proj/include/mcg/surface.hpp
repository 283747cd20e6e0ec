#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcg/automorphism.hpp"
#include "mcg/word.hpp"

namespace mcg {

using HVec = std::vector<std::int64_t>;

// A bordered surface of genus g with b >= 1 boundary components, carrying a
// fixed free presentation of its fundamental group with basepoint on
// boundary 1: generators a1, b1, ..., ag, bg, x2, ..., xb of rank 2g+b-1,
// with boundary words δ1 = ∏[ai,bi]·x2···xb and δj = xj for j >= 2.
class SurfaceCtx {
public:
  SurfaceCtx() = default;
  static SurfaceCtx make(int g, int b);

  int genus() const { return g_; }
  int boundaries() const { return b_; }
  int rank() const { return 2 * g_ + b_ - 1; }

  std::span<const std::string> names() const { return names_; }
  const std::string& name(int index) const { return names_[static_cast<std::size_t>(index)]; }

  // 1-based accessors matching the naming scheme.
  int a_index(int i) const;  // i in 1..g
  int b_index(int i) const;  // i in 1..g
  int x_index(int j) const;  // j in 2..b

  Word gen(int index, int sign = +1) const { return Word::generator(rank(), index, sign); }
  Word a(int i, int sign = +1) const { return gen(a_index(i), sign); }
  Word b(int i, int sign = +1) const { return gen(b_index(i), sign); }
  Word x(int j, int sign = +1) const { return gen(x_index(j), sign); }

  // 1-based boundary words δ1..δb.
  const Word& boundary_word(int j) const;

  std::string label() const;  // e.g. "S2_3" for genus 2 with 3 boundaries

  bool operator==(const SurfaceCtx& o) const { return g_ == o.g_ && b_ == o.b_; }
  bool operator!=(const SurfaceCtx& o) const { return !(*this == o); }

private:
  int g_ = 0, b_ = 1;
  std::vector<std::string> names_;
  std::vector<Word> boundary_;
};

// Algebraic intersection pairing on H1: ⟨ai,bi⟩ = +1, all other generator
// pairs 0; boundary classes xj lie in the radical.
std::int64_t homology_pairing(const SurfaceCtx& ctx, const HVec& u, const HVec& v);

// A simple closed curve on a surface, identified by the conjugacy class of a
// π1 representative. The unoriented cyclic class is the identity of record
// (free homotopy = isotopy for simple closed curves); the oriented
// representative fixes the homology class.
struct CurveSpec {
  std::string name;
  Word rep;        // oriented based representative
  CyclicWord cls;  // canonical unoriented class of rep
  HVec homology;   // abelianization of rep
  std::string origin;  // "" for atlas primitives, else a derivation note

  static CurveSpec from_rep(std::string name, const Word& rep, std::string origin = "");
  bool same_curve(const CurveSpec& o) const { return cls == o.cls; }
};

// A π1-injective map of surface contexts: generator images plus an explicit
// fate for every source boundary component. Doubles as the induced map of a
// boundary capping (fate "capped").
class EmbeddingSpec {
public:
  enum class Fate { maps_to, capped, merged_with };
  struct BoundaryFate {
    Fate fate = Fate::maps_to;
    Word image;       // target word, for maps_to and merged_with
    int partner = 0;  // 1-based source boundary merged with, for merged_with
  };

  static EmbeddingSpec make(SurfaceCtx src, SurfaceCtx dst, std::vector<Word> gen_images,
                            std::vector<BoundaryFate> fates);
  static EmbeddingSpec identity(const SurfaceCtx& ctx);

  const SurfaceCtx& source() const { return src_; }
  const SurfaceCtx& target() const { return dst_; }
  const std::vector<Word>& generator_images() const { return images_; }
  const BoundaryFate& fate(int j) const;  // 1-based

  // Induced homomorphism on words / curves.
  Word apply(const Word& w) const;
  CurveSpec apply_curve(const CurveSpec& c) const;

  // Extension by identity: target generators in the image follow f, all
  // others stay fixed. Valid when every source generator either maps to a
  // plain target generator or is fixed by f exactly; throws bad_word
  // otherwise.
  FreeAutomorphism extend(const FreeAutomorphism& f) const;

private:
  SurfaceCtx src_, dst_;
  std::vector<Word> images_;
  std::vector<BoundaryFate> fates_;
};

// The faithful repair route for b >= 2: embed Σ_g^b into Σ_{g+b-1}^1 by
// gluing a one-holed torus to each boundary j >= 2, i.e. xj ↦ [a_{g+j-1},
// b_{g+j-1}]. Source δ1 maps onto target δ1 word-exactly. For b = 1 returns
// the identity embedding.
EmbeddingSpec stabilize_to_one_boundary(const SurfaceCtx& src);

// Cap boundary j >= 2 with a disk: returns the smaller context and the
// induced map (xj ↦ 1, higher x-indices shift down). Capping boundary 1 is
// rejected.
std::pair<SurfaceCtx, EmbeddingSpec> cap_boundary(const SurfaceCtx& ctx, int j);

}  // namespace mcg

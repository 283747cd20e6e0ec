#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcg/surface.hpp"

namespace mcg {

class atlas_error : public std::runtime_error {
public:
  explicit atlas_error(const std::string& what) : std::runtime_error(what) {}
};

// Expression tree over mapping classes: twists of named atlas curves, named
// bindings, products, powers, commutators, and conjugations. Products act on
// curves starting with the rightmost factor.
struct MCExpr {
  enum class Kind { ident, twist, ref, product, power, commutator, conjugate };

  Kind kind = Kind::ident;
  std::string atom;           // twist: curve name; ref: binding name
  int exp = 1;                // power exponent
  std::vector<MCExpr> kids;   // product: n-ary; power: 1; commutator/conjugate: 2

  static MCExpr id();
  static MCExpr t(std::string curve);
  static MCExpr ref(std::string name);
  static MCExpr prod(std::vector<MCExpr> factors);
  static MCExpr p(MCExpr base, int n);
  static MCExpr inv(MCExpr base) { return p(std::move(base), -1); }
  // comm(A, B) = A B A^{-1} B^{-1}
  static MCExpr comm(MCExpr a, MCExpr b);
  // conj(A, B) = B A B^{-1} = A^B
  static MCExpr conj(MCExpr a, MCExpr b);

  MCExpr operator*(const MCExpr& other) const;

  // DSL-compatible rendering.
  std::string to_string() const;

  // All twist atom names, in occurrence order (with repeats).
  void collect_twists(std::vector<std::string>& out) const;
};

// Dense integer matrix, used for the homology (transvection) oracle.
struct IMat {
  int n = 0;
  std::vector<std::int64_t> v;  // row-major

  static IMat identity(int n);
  std::int64_t at(int r, int c) const { return v[static_cast<std::size_t>(r * n + c)]; }
  std::int64_t& at(int r, int c) { return v[static_cast<std::size_t>(r * n + c)]; }
  IMat mul(const IMat& o) const;
  HVec apply(const HVec& x) const;
  bool operator==(const IMat& o) const { return n == o.n && v == o.v; }
  bool operator!=(const IMat& o) const { return !(*this == o); }
};

// v ↦ v + ⟨v,c⟩c for the ctx's intersection pairing.
IMat transvection_matrix(const SurfaceCtx& ctx, const HVec& c);
// Column i = abelianization of image(i).
IMat abelianization_matrix(const FreeAutomorphism& f);

struct AtlasEntry {
  CurveSpec curve;
  // Source-level twist automorphism. Always present for one-boundary
  // contexts; optional elsewhere.
  std::optional<FreeAutomorphism> fwd;
  // For multi-boundary contexts: name of the curve in the stabilization
  // target atlas whose twist is the transported image of this one.
  std::string stab;
  // For derived curves: base curve name and the mapping-class expression
  // carrying the base to this curve (twist = conjugate of the base twist).
  std::string base;
  MCExpr derivation;
};

using AutoBindings = std::map<std::string, FreeAutomorphism>;

// The curve/twist table of one surface context, with its declared geometric
// facts (disjointness, once-crossing pairs) and, for multi-boundary
// contexts, the stabilization data. Entry order is insertion order and is
// deterministic.
class Atlas {
public:
  explicit Atlas(SurfaceCtx ctx) : ctx_(std::move(ctx)) {}

  const SurfaceCtx& ctx() const { return ctx_; }

  void set_stabilization(EmbeddingSpec emb, std::shared_ptr<const Atlas> target);
  const EmbeddingSpec& stab_embedding() const;
  const Atlas& stab_atlas() const;
  bool has_stabilization() const { return stab_atlas_ != nullptr; }

  void add(AtlasEntry entry);
  void add_primitive(CurveSpec curve, FreeAutomorphism fwd, std::string stab = "");
  void add_unrealized(CurveSpec curve, std::string stab);
  // Derived curve: image of `base` under `expr`; twist = conjugated base
  // twist. Requires source-level automorphisms for every atom of expr.
  void add_derived(std::string name, const MCExpr& expr, const std::string& base);

  void declare_disjoint(std::string c1, std::string c2);
  void declare_once_crossing(std::string c1, std::string c2);
  const std::vector<std::pair<std::string, std::string>>& disjoint_pairs() const {
    return disjoint_;
  }
  const std::vector<std::pair<std::string, std::string>>& once_crossing_pairs() const {
    return crossing_;
  }

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  const AtlasEntry& entry(const std::string& name) const;
  const std::vector<AtlasEntry>& entries() const { return entries_; }

  // Source-level twist automorphism; throws atlas_error when absent.
  const FreeAutomorphism& twist(const std::string& name) const;

  // Validation battery: boundary fixing, transvection agreement, declared
  // disjointness/braid facts, derivation consistency, and stabilization
  // class transport. Throws atlas_error with a description on failure.
  void validate() const;

private:
  SurfaceCtx ctx_;
  std::vector<AtlasEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::shared_ptr<const Atlas> stab_atlas_;
  std::optional<EmbeddingSpec> stab_emb_;
  std::vector<std::pair<std::string, std::string>> disjoint_, crossing_;
};

// Exact evaluation of an expression as a free-group automorphism, using
// source-level twists and the given named bindings.
FreeAutomorphism eval_expr(const Atlas& atlas, const MCExpr& e,
                           const AutoBindings* bindings = nullptr);

// Evaluate with every twist atom replaced by its stabilized image; the result
// acts on the stabilization target's fundamental group. Requires every
// referenced curve to carry a stabilized name.
FreeAutomorphism eval_expr_stabilized(const Atlas& atlas, const MCExpr& e,
                                      const AutoBindings* bindings = nullptr);

// Homology-level evaluation: product of transvection matrices in the same
// order. Works even where source-level automorphisms are absent.
IMat expr_transvection(const Atlas& atlas, const MCExpr& e, const AutoBindings* bindings = nullptr);

// Image of a curve under an expression (exact route).
CurveSpec image_curve(const Atlas& atlas, const MCExpr& e, const CurveSpec& c,
                      const AutoBindings* bindings = nullptr);

// Bounded bidirectional search for a product of atlas twists carrying each
// src curve to the matching dst curve (as unoriented classes). Returns
// nullopt when the budget is exhausted; that is not a nonexistence proof.
std::optional<MCExpr> find_change_of_coords(const Atlas& atlas,
                                            const std::vector<std::string>& src,
                                            const std::vector<std::string>& dst,
                                            int budget = 8);
// Same, with explicit target curve specs (not necessarily atlas entries).
std::optional<MCExpr> find_change_of_coords(const Atlas& atlas,
                                            const std::vector<CurveSpec>& src,
                                            const std::vector<CurveSpec>& dst, int budget = 8);

}  // namespace mcg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mcg/fixtures.hpp"
#include "mcg/surface.hpp"
#include "mcg/twist.hpp"

using namespace mcg;

namespace {

bool commute(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, g) == compose(g, f);
}

bool braids(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, compose(g, f)) == compose(g, compose(f, g));
}

FreeAutomorphism iterate(const FreeAutomorphism& f, int n) {
  FreeAutomorphism p = FreeAutomorphism::identity(f.rank());
  for (int i = 0; i < n; ++i) p = compose(p, f);
  return p;
}

}  // namespace

TEST_CASE("surface contexts: ranks, names, boundary words") {
  const SurfaceCtx t = SurfaceCtx::make(1, 1);
  CHECK(t.rank() == 2);
  CHECK(t.name(0) == "a1");
  CHECK(t.name(1) == "b1");
  CHECK(t.boundary_word(1) == commutator(t.a(1), t.b(1)));
  CHECK(t.label() == "S1_1");

  const SurfaceCtx s04 = SurfaceCtx::make(0, 4);
  CHECK(s04.rank() == 3);
  CHECK(s04.boundary_word(1) == mul(s04.x(2), mul(s04.x(3), s04.x(4))));
  CHECK(s04.boundary_word(3) == s04.x(3));

  const SurfaceCtx s23 = SurfaceCtx::make(2, 3);
  CHECK(s23.rank() == 6);
  CHECK(s23.name(4) == "x2");
  const Word d1 = s23.boundary_word(1);
  CHECK(d1 == mul(commutator(s23.a(1), s23.b(1)),
                  mul(commutator(s23.a(2), s23.b(2)), mul(s23.x(2), s23.x(3)))));

  CHECK_THROWS_AS(SurfaceCtx::make(-1, 1), bad_word);
  CHECK_THROWS_AS(SurfaceCtx::make(1, 0), bad_word);
}

TEST_CASE("homology pairing is the standard symplectic form with radical") {
  const SurfaceCtx s = SurfaceCtx::make(2, 2);
  auto cls = [&](const Word& w) { return abelianize(w); };
  CHECK(homology_pairing(s, cls(s.a(1)), cls(s.b(1))) == 1);
  CHECK(homology_pairing(s, cls(s.b(1)), cls(s.a(1))) == -1);
  CHECK(homology_pairing(s, cls(s.a(1)), cls(s.b(2))) == 0);
  CHECK(homology_pairing(s, cls(s.a(2)), cls(s.b(2))) == 1);
  CHECK(homology_pairing(s, cls(s.x(2)), cls(s.a(1))) == 0);
  CHECK(homology_pairing(s, cls(s.x(2)), cls(s.b(2))) == 0);
  const HVec u = cls(mul(s.a(1), s.b(2, -1)));
  CHECK(homology_pairing(s, u, u) == 0);
}

TEST_CASE("curve specs canonicalize the unoriented class") {
  const SurfaceCtx s = SurfaceCtx::make(2, 1);
  const Word w = mul(s.a(1), s.b(2));
  const CurveSpec c = CurveSpec::from_rep("c", w);
  const CurveSpec rot = CurveSpec::from_rep("rot", mul(s.b(2), s.a(1)));
  const CurveSpec inv = CurveSpec::from_rep("inv", w.inverse());
  CHECK(c.same_curve(rot));
  CHECK(c.same_curve(inv));
  CHECK(c.homology == abelianize(w));
  CHECK(inv.homology != c.homology);
}

TEST_CASE("stabilization embedding: formulas and exactness on delta1") {
  const SurfaceCtx s = SurfaceCtx::make(2, 3);
  const EmbeddingSpec emb = stabilize_to_one_boundary(s);
  CHECK(emb.target() == SurfaceCtx::make(4, 1));
  const SurfaceCtx& t = emb.target();
  CHECK(emb.apply(s.a(1)) == t.a(1));
  CHECK(emb.apply(s.b(2)) == t.b(2));
  CHECK(emb.apply(s.x(2)) == commutator(t.a(3), t.b(3)));
  CHECK(emb.apply(s.x(3)) == commutator(t.a(4), t.b(4)));
  CHECK(emb.apply(s.boundary_word(1)) == t.boundary_word(1));
  CHECK(emb.fate(1).fate == EmbeddingSpec::Fate::maps_to);
  CHECK(emb.fate(2).fate == EmbeddingSpec::Fate::maps_to);

  const EmbeddingSpec id1 = stabilize_to_one_boundary(SurfaceCtx::make(3, 1));
  CHECK(id1.target() == SurfaceCtx::make(3, 1));
  CHECK(id1.apply(SurfaceCtx::make(3, 1).a(2)) == SurfaceCtx::make(3, 1).a(2));
}

TEST_CASE("boundary capping: induced map and rejection of boundary 1") {
  const SurfaceCtx s = SurfaceCtx::make(1, 3);
  auto [small, cap] = cap_boundary(s, 2);
  CHECK(small == SurfaceCtx::make(1, 2));
  CHECK(cap.apply(s.x(2)).is_identity());
  CHECK(cap.apply(s.x(3)) == small.x(2));
  CHECK(cap.apply(s.a(1)) == small.a(1));
  CHECK(cap.fate(2).fate == EmbeddingSpec::Fate::capped);
  CHECK_THROWS_AS(cap_boundary(s, 1), bad_word);
  CHECK_THROWS_AS(cap_boundary(s, 4), bad_word);
}

TEST_CASE("extension by identity: valid and invalid embeddings") {
  const SurfaceCtx s = SurfaceCtx::make(1, 1);
  const SurfaceCtx t = SurfaceCtx::make(2, 1);
  std::vector<Word> imgs = {t.a(1), t.b(1)};
  std::vector<EmbeddingSpec::BoundaryFate> fates(1);
  fates[0].fate = EmbeddingSpec::Fate::maps_to;
  fates[0].image = commutator(t.a(1), t.b(1));
  const EmbeddingSpec emb = EmbeddingSpec::make(s, t, imgs, fates);

  // a1 ↦ a1 b1 extends to the same formula downstairs.
  std::vector<Word> fwd = {mul(s.a(1), s.b(1)), s.b(1)};
  std::vector<Word> bwd = {mul(s.a(1), s.b(1, -1)), s.b(1)};
  const FreeAutomorphism f = FreeAutomorphism::from_images(fwd, bwd);
  const FreeAutomorphism g = emb.extend(f);
  CHECK(g.image(t.a_index(1)) == mul(t.a(1), t.b(1)));
  CHECK(g.image(t.a_index(2)) == t.a(2));

  // Embeddings whose images are not plain generators only extend for maps
  // they fix; anything else is rejected.
  const EmbeddingSpec stab = stabilize_to_one_boundary(SurfaceCtx::make(0, 4));
  const SurfaceCtx s04 = stab.source();
  std::vector<Word> move = {mul(s04.x(2), s04.x(3)), s04.x(3), s04.x(4)};
  std::vector<Word> back = {mul(s04.x(2), s04.x(3, -1)), s04.x(3), s04.x(4)};
  CHECK_THROWS_AS(stab.extend(FreeAutomorphism::from_images(move, back)), bad_word);
}

TEST_CASE("twist formula battery on the one-boundary atlases") {
  const SurfaceCtx s = SurfaceCtx::make(2, 1);
  const FreeAutomorphism r1 = rim_twist(s, 1), th1 = through_twist(s, 1);
  const FreeAutomorphism r2 = rim_twist(s, 2), th2 = through_twist(s, 2);

  CHECK(braids(r1, th1));
  CHECK(commute(r1, r2));
  CHECK(commute(r1, th2));

  // (t_a t_b)^6 = twist about the boundary of the one-holed torus
  // neighborhood: global conjugation when the handle is the whole surface,
  // the block twist otherwise.
  const SurfaceCtx t11 = SurfaceCtx::make(1, 1);
  CHECK(iterate(compose(through_twist(t11, 1), rim_twist(t11, 1)), 6) ==
        FreeAutomorphism::inner(t11.boundary_word(1)));
  CHECK(iterate(compose(th1, r1), 6) == block_twist(s, 1, 1));

  // Block twist around handles 1..2 is conjugation by the full block word.
  const FreeAutomorphism sig = block_twist(s, 1, 2);
  CHECK(sig.apply(s.a(1)) == mul(s.boundary_word(1), mul(s.a(1), s.boundary_word(1).inverse())));
  CHECK(sig.apply(s.boundary_word(1)) == s.boundary_word(1));
}

TEST_CASE("connector twists complete the chain relations") {
  const SurfaceCtx s = SurfaceCtx::make(2, 1);
  const Word d = s.boundary_word(1);
  const FreeAutomorphism l1 = connector_twist(s, 1);
  CHECK(compose(l1, connector_twist(s, 1).inverse()).is_identity());
  CHECK(l1.apply(d) == d);
  CHECK(braids(l1, rim_twist(s, 1)));
  CHECK(braids(l1, rim_twist(s, 2)));
  CHECK(commute(l1, through_twist(s, 1)));
  CHECK(commute(l1, through_twist(s, 2)));
  const Word rep = connector_rep(s, 1);
  CHECK(CyclicWord(l1.apply(rep), false) == CyclicWord(rep, false));
  CHECK(abelianization_matrix(l1) == transvection_matrix(s, abelianize(rep)));

  // 4-chain: (t_b1 t_a1 t_l t_a2)^10 = boundary twist.
  const FreeAutomorphism chain =
      compose(rim_twist(s, 2), compose(l1, compose(rim_twist(s, 1), through_twist(s, 1))));
  CHECK(iterate(chain, 10) == FreeAutomorphism::inner(d));

  // 6-chain on genus 3: exponent 14.
  const SurfaceCtx s3 = SurfaceCtx::make(3, 1);
  const Word d3 = s3.boundary_word(1);
  FreeAutomorphism c6 = FreeAutomorphism::identity(s3.rank());
  for (const FreeAutomorphism& f :
       {through_twist(s3, 1), rim_twist(s3, 1), connector_twist(s3, 1), rim_twist(s3, 2),
        connector_twist(s3, 2), rim_twist(s3, 3)})
    c6 = compose(c6, f);
  CHECK(iterate(c6, 14) == FreeAutomorphism::inner(d3));
  CHECK(commute(connector_twist(s3, 1), connector_twist(s3, 2)));
}

TEST_CASE("hole connector completes the chain on two-holed surfaces") {
  for (int g = 1; g <= 2; ++g) {
    const SurfaceCtx s = SurfaceCtx::make(g, 2);
    const Word d1 = s.boundary_word(1);
    const FreeAutomorphism end = hole_connector_twist(s);
    const Word rep = hole_connector_rep(s);
    CHECK(end.apply(d1) == d1);
    CHECK(conjugacy_equal(end.apply(s.x(2)), s.x(2)));
    CHECK(CyclicWord(end.apply(rep), false) == CyclicWord(rep, false));
    CHECK(abelianization_matrix(end) == transvection_matrix(s, abelianize(rep)));
    CHECK(braids(rim_twist(s, g), end));
    CHECK(commute(through_twist(s, 1), end));

    std::vector<FreeAutomorphism> fs = {through_twist(s, 1)};
    for (int i = 1; i < g; ++i) {
      fs.push_back(rim_twist(s, i));
      fs.push_back(connector_twist(s, i));
    }
    fs.push_back(rim_twist(s, g));
    fs.push_back(end);
    FreeAutomorphism c = FreeAutomorphism::identity(s.rank());
    for (const FreeAutomorphism& f : fs) c = compose(c, f);
    CHECK(iterate(c, 2 * g + 2) == FreeAutomorphism::inner(d1));
  }
  CHECK_THROWS_AS(hole_connector_twist(SurfaceCtx::make(2, 1)), bad_word);
}

TEST_CASE("atlases validate and agree with the homology oracle") {
  for (int g = 1; g <= 3; ++g) {
    auto atlas = one_boundary_atlas(g);
    CHECK_NOTHROW(atlas->validate());
    for (const AtlasEntry& e : atlas->entries()) {
      REQUIRE(e.fwd.has_value());
      CHECK(abelianization_matrix(*e.fwd) == transvection_matrix(atlas->ctx(), e.curve.homology));
    }
  }
  CHECK_NOTHROW(lantern_atlas()->validate());
  for (int g = 1; g <= 2; ++g) CHECK_NOTHROW(two_boundary_chain_atlas(g)->validate());
}

TEST_CASE("lantern fixture: boundary relation and stabilized certificates") {
  auto lant = lantern_atlas();
  const SurfaceCtx& s = lant->ctx();
  const Word d = s.boundary_word(1);
  const FreeAutomorphism tx = lant->twist("x"), ty = lant->twist("y"), tz = lant->twist("z");
  CHECK(compose(tx, compose(ty, tz)) == FreeAutomorphism::inner(d));
  CHECK(lant->twist("d2").is_identity());
  const Word zrep = lant->entry("z").curve.rep;
  CHECK(zrep == mul(s.x(2), s.x(4)));
  CHECK(CyclicWord(tz.apply(zrep), false) == CyclicWord(zrep, false));
  CHECK(lant->entry("x").stab == "sigma_1_2");
  CHECK(lant->entry("z").stab == "handles_1_3");
  const Atlas& g3 = lant->stab_atlas();
  CHECK(g3.entry("handles_1_3").base == "sigma_1_2");
}

TEST_CASE("expression trees: rendering, evaluation, homology route") {
  auto atlas = one_boundary_atlas(2);
  const MCExpr e = MCExpr::prod({MCExpr::t("alpha1"), MCExpr::p(MCExpr::t("beta1"), -2),
                                 MCExpr::comm(MCExpr::t("alpha2"), MCExpr::t("beta2"))});
  CHECK(e.to_string() == "t[alpha1] t[beta1]^-2 [t[alpha2], t[beta2]]");

  const FreeAutomorphism f = eval_expr(*atlas, e);
  const FreeAutomorphism byhand =
      compose(atlas->twist("alpha1"),
              compose(atlas->twist("beta1").inverse(),
                      compose(atlas->twist("beta1").inverse(),
                              commutator(atlas->twist("alpha2"), atlas->twist("beta2")))));
  CHECK(f == byhand);
  CHECK(expr_transvection(*atlas, e) == abelianization_matrix(f));

  const MCExpr c = MCExpr::conj(MCExpr::t("alpha1"), MCExpr::t("beta1"));
  CHECK(c.to_string() == "conj(t[alpha1], t[beta1])");
  CHECK(eval_expr(*atlas, c) ==
        conjugate(atlas->twist("alpha1"), atlas->twist("beta1")));

  std::vector<std::string> atoms;
  e.collect_twists(atoms);
  CHECK(atoms == std::vector<std::string>{"alpha1", "beta1", "alpha2", "beta2"});

  AutoBindings binds;
  binds["F"] = atlas->twist("alpha1");
  CHECK(eval_expr(*atlas, MCExpr::ref("F"), &binds) == atlas->twist("alpha1"));
  CHECK_THROWS_AS(eval_expr(*atlas, MCExpr::ref("G"), &binds), atlas_error);
}

TEST_CASE("curve transport and change of coordinates") {
  auto atlas = one_boundary_atlas(2);
  const SurfaceCtx& s = atlas->ctx();

  // The through twist carries the rim class onto a class crossing b1.
  const CurveSpec img =
      image_curve(*atlas, MCExpr::t("beta1"), atlas->entry("alpha1").curve);
  CHECK(img.cls == CyclicWord(mul(s.a(1), s.b(1)), false));

  // Trivial search: alpha1 to itself.
  auto f0 = find_change_of_coords(*atlas, std::vector<std::string>{"alpha1"},
                                  std::vector<std::string>{"alpha1"}, 2);
  REQUIRE(f0.has_value());
  CHECK(image_curve(*atlas, *f0, atlas->entry("alpha1").curve)
            .same_curve(atlas->entry("alpha1").curve));

  // Small genuine search: alpha1 to alpha2 (handles swap via the connector
  // braid pattern).
  auto f1 = find_change_of_coords(*atlas, std::vector<std::string>{"alpha1"},
                                  std::vector<std::string>{"alpha2"}, 6);
  REQUIRE(f1.has_value());
  CHECK(image_curve(*atlas, *f1, atlas->entry("alpha1").curve)
            .same_curve(atlas->entry("alpha2").curve));
}

TEST_CASE("corrupted atlases are rejected") {
  // Wrong twist for a declared curve: transvection mismatch at insert time.
  {
    SurfaceCtx s = SurfaceCtx::make(1, 1);
    Atlas bad(s);
    bad.add_primitive(CurveSpec::from_rep("d1", s.boundary_word(1)),
                      FreeAutomorphism::inner(s.boundary_word(1)));
    CHECK_THROWS_AS(
        bad.add_primitive(CurveSpec::from_rep("alpha1", s.a(1)), through_twist(s, 1)),
        atlas_error);
  }
  // Declared disjointness for genuinely crossing curves: commutation fails.
  {
    SurfaceCtx s = SurfaceCtx::make(1, 1);
    Atlas bad(s);
    bad.add_primitive(CurveSpec::from_rep("d1", s.boundary_word(1)),
                      FreeAutomorphism::inner(s.boundary_word(1)));
    bad.add_primitive(CurveSpec::from_rep("alpha1", s.a(1)), rim_twist(s, 1));
    bad.add_primitive(CurveSpec::from_rep("beta1", s.b(1)), through_twist(s, 1));
    bad.declare_disjoint("alpha1", "beta1");
    CHECK_THROWS_AS(bad.validate(), atlas_error);
  }
  // A map that only conjugates the based boundary word: right transvection
  // (identity, since the curve is null-homologous) but not an exact fix.
  {
    SurfaceCtx s = SurfaceCtx::make(1, 1);
    Atlas bad(s);
    bad.add_primitive(CurveSpec::from_rep("d1", s.boundary_word(1)),
                      FreeAutomorphism::inner(s.boundary_word(1)));
    CHECK_THROWS_AS(bad.add_primitive(CurveSpec::from_rep("e", s.boundary_word(1)),
                                      FreeAutomorphism::inner(s.a(1))),
                    atlas_error);
  }
  // Derived entry whose recorded expression does not carry base to curve.
  {
    auto atlas = make_one_boundary_atlas(2);
    atlas->add_derived("moved", MCExpr::t("beta1"), "alpha1");
    CHECK_NOTHROW(atlas->validate());
    Atlas& raw = *atlas;
    AtlasEntry tampered = raw.entry("moved");
    tampered.derivation = MCExpr::t("beta2");
    // Rebuild an atlas with the tampered entry.
    auto bad = make_one_boundary_atlas(2);
    bad->add(tampered);
    CHECK_THROWS_AS(bad->validate(), atlas_error);
  }
}

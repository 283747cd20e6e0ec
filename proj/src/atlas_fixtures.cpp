#include "mcg/fixtures.hpp"

#include <map>
#include <mutex>

namespace mcg {

namespace {

std::vector<Word> identity_images(const SurfaceCtx& s) {
  std::vector<Word> v;
  v.reserve(static_cast<std::size_t>(s.rank()));
  for (int i = 0; i < s.rank(); ++i) v.push_back(s.gen(i));
  return v;
}

Word block_word(const SurfaceCtx& s, int i, int j) {
  WordBuilder b(s.rank());
  for (int k = i; k <= j; ++k) b.append(commutator(s.a(k), s.b(k)));
  return b.take();
}

// Rank-4 pattern words for the connector twist through two adjacent
// handles, written over letters 1:a_i, 2:b_i, 3:a_{i+1}, 4:b_{i+1}. The
// slots give the images of those four generators. Both patterns were found
// by constrained search and are re-certified by the validation battery and
// the chain relation tests.
struct ConnectorPattern {
  std::vector<Letter> rep;                   // curve representative
  std::array<std::vector<Letter>, 4> fwd;    // images under the positive twist
  std::array<std::vector<Letter>, 4> bwd;    // images under the negative twist
};

// First-window connector: fixes both b-generators exactly, so the curve is
// disjoint from both through curves of its window.
const ConnectorPattern kConnectorFirst = {
    {2, -1, -2, 3, 4, -3, 2, 1},
    {{{1, 2, -1, -2, 3, 4, -3, 2, 1}, {2}, {2, 1, 2, -1, -2, 3, 4}, {4}}},
    {{{-2, 3, -4, -3, 2, 1, -2}, {2}, {3, -4, -3, 2, 1, -2, -1, -2, 3}, {4}}},
};

// Later-window connector: routed around the lower handle (it conjugates b_i,
// crossing the through curve twice with cancelling signs), which keeps it
// disjoint from the previous window's connector so that chains extend across
// the whole surface.
const ConnectorPattern kConnectorLater = {
    {1, -2, -2, 3, 4, -3, 2, -1},
    {{{1, 3, -4, -3, 2}, {-2, 3, 4, -3, 2, 3, -4, -3, 2}, {-2, 3, 4}, {4}}},
    {{{1, -2, 3, 4, -3}, {3, -4, -3, 2, 3, 4, -3}, {3, -4, -3, 2, 3}, {4}}},
};

const ConnectorPattern& connector_pattern(int i) {
  return i == 1 ? kConnectorFirst : kConnectorLater;
}

Word pattern_word(const SurfaceCtx& s, int i, const std::vector<Letter>& pat) {
  // Letters 1..4 of the pattern map to generators a_i, b_i, a_{i+1}, b_{i+1}.
  const int base[4] = {s.a_index(i), s.b_index(i), s.a_index(i + 1), s.b_index(i + 1)};
  WordBuilder b(s.rank());
  for (Letter l : pat) {
    const int idx = base[letter_index(l)];
    b.push(static_cast<Letter>(letter_sign(l) * (idx + 1)));
  }
  return b.take();
}

// Rewrites a connector pattern into a word over a_g, b_g, x_2.  Pattern
// letters 3, 4 only ever occur in the blocks (3,4,-3) = u and (3,-4,-3) =
// u^{-1}; threading through the hole replaces the conjugated handle word u
// by the hole generator x_2.
Word hole_pattern_word(const SurfaceCtx& s, const std::vector<Letter>& pat) {
  const int g = s.genus();
  const int slot[3] = {s.a_index(g), s.b_index(g), s.x_index(2)};
  WordBuilder b(s.rank());
  for (std::size_t i = 0; i < pat.size();) {
    const Letter l = pat[i];
    if (letter_index(l) <= 1) {
      b.push(static_cast<Letter>(letter_sign(l) * (slot[letter_index(l)] + 1)));
      ++i;
      continue;
    }
    if (l == 3 && i + 2 < pat.size() && pat[i + 2] == -3 && letter_index(pat[i + 1]) == 3) {
      b.push(static_cast<Letter>(letter_sign(pat[i + 1]) * (slot[2] + 1)));
      i += 3;
      continue;
    }
    throw bad_word("connector pattern does not decompose around the hole");
  }
  return b.take();
}

// Image of u = (3,4,-3) under the pattern automorphism given by table t.
std::vector<Letter> pattern_u_image(const std::array<std::vector<Letter>, 4>& t) {
  std::vector<Letter> raw(t[2]);
  raw.insert(raw.end(), t[3].begin(), t[3].end());
  for (auto it = t[2].rbegin(); it != t[2].rend(); ++it) raw.push_back(-*it);
  const Word w = Word::from_letters(4, raw);
  return std::vector<Letter>(w.letters().begin(), w.letters().end());
}

}  // namespace

FreeAutomorphism rim_twist(const SurfaceCtx& s, int i) {
  std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
  fwd[static_cast<std::size_t>(s.b_index(i))] = mul(s.b(i), s.a(i, -1));
  bwd[static_cast<std::size_t>(s.b_index(i))] = mul(s.b(i), s.a(i));
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

FreeAutomorphism through_twist(const SurfaceCtx& s, int i) {
  std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
  fwd[static_cast<std::size_t>(s.a_index(i))] = mul(s.a(i), s.b(i));
  bwd[static_cast<std::size_t>(s.a_index(i))] = mul(s.a(i), s.b(i, -1));
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

FreeAutomorphism block_twist(const SurfaceCtx& s, int i, int j) {
  const Word w = block_word(s, i, j);
  const Word wi = w.inverse();
  std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
  for (int k = i; k <= j; ++k) {
    for (int idx : {s.a_index(k), s.b_index(k)}) {
      fwd[static_cast<std::size_t>(idx)] = mul(w, s.gen(idx), wi);
      bwd[static_cast<std::size_t>(idx)] = mul(wi, s.gen(idx), w);
    }
  }
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

Word connector_rep(const SurfaceCtx& s, int i) {
  return pattern_word(s, i, connector_pattern(i).rep);
}

FreeAutomorphism connector_twist(const SurfaceCtx& s, int i) {
  const ConnectorPattern& p = connector_pattern(i);
  std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
  const int slots[4] = {s.a_index(i), s.b_index(i), s.a_index(i + 1), s.b_index(i + 1)};
  for (int k = 0; k < 4; ++k) {
    fwd[static_cast<std::size_t>(slots[k])] = pattern_word(s, i, p.fwd[static_cast<std::size_t>(k)]);
    bwd[static_cast<std::size_t>(slots[k])] = pattern_word(s, i, p.bwd[static_cast<std::size_t>(k)]);
  }
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

Word hole_connector_rep(const SurfaceCtx& s) {
  if (s.boundaries() < 2) throw bad_word("hole connector needs a second boundary");
  return hole_pattern_word(s, connector_pattern(s.genus()).rep);
}

FreeAutomorphism hole_connector_twist(const SurfaceCtx& s) {
  if (s.boundaries() < 2) throw bad_word("hole connector needs a second boundary");
  const ConnectorPattern& p = connector_pattern(s.genus());
  std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
  const int g = s.genus();
  const int slots[3] = {s.a_index(g), s.b_index(g), s.x_index(2)};
  for (int k = 0; k < 2; ++k) {
    fwd[static_cast<std::size_t>(slots[k])] = hole_pattern_word(s, p.fwd[static_cast<std::size_t>(k)]);
    bwd[static_cast<std::size_t>(slots[k])] = hole_pattern_word(s, p.bwd[static_cast<std::size_t>(k)]);
  }
  fwd[static_cast<std::size_t>(slots[2])] = hole_pattern_word(s, pattern_u_image(p.fwd));
  bwd[static_cast<std::size_t>(slots[2])] = hole_pattern_word(s, pattern_u_image(p.bwd));
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

namespace {

std::shared_ptr<Atlas> build_one_boundary(int g) {
  SurfaceCtx s = SurfaceCtx::make(g, 1);
  auto atlas = std::make_shared<Atlas>(s);

  atlas->add_primitive(CurveSpec::from_rep("d1", s.boundary_word(1)),
                       FreeAutomorphism::inner(s.boundary_word(1)));
  for (int i = 1; i <= g; ++i)
    atlas->add_primitive(CurveSpec::from_rep("alpha" + std::to_string(i), s.a(i)),
                         rim_twist(s, i));
  for (int i = 1; i <= g; ++i)
    atlas->add_primitive(CurveSpec::from_rep("beta" + std::to_string(i), s.b(i)),
                         through_twist(s, i));
  for (int i = 1; i + 1 <= g; ++i)
    atlas->add_primitive(CurveSpec::from_rep("conn" + std::to_string(i), connector_rep(s, i)),
                         connector_twist(s, i));
  for (int i = 1; i <= g; ++i)
    for (int j = i; j <= g; ++j)
      atlas->add_primitive(
          CurveSpec::from_rep("sigma_" + std::to_string(i) + "_" + std::to_string(j),
                              block_word(s, i, j)),
          block_twist(s, i, j));

  auto alpha = [](int i) { return "alpha" + std::to_string(i); };
  auto beta = [](int i) { return "beta" + std::to_string(i); };
  auto conn = [](int i) { return "conn" + std::to_string(i); };
  auto sigma = [](int i, int j) {
    return "sigma_" + std::to_string(i) + "_" + std::to_string(j);
  };

  for (int i = 1; i <= g; ++i) {
    atlas->declare_once_crossing(alpha(i), beta(i));
    atlas->declare_disjoint("d1", alpha(i));
    atlas->declare_disjoint("d1", beta(i));
    for (int j = i + 1; j <= g; ++j) {
      atlas->declare_disjoint(alpha(i), alpha(j));
      atlas->declare_disjoint(beta(i), beta(j));
      atlas->declare_disjoint(alpha(i), beta(j));
      atlas->declare_disjoint(beta(i), alpha(j));
    }
  }
  for (int i = 1; i + 1 <= g; ++i) {
    atlas->declare_once_crossing(conn(i), alpha(i));
    atlas->declare_once_crossing(conn(i), alpha(i + 1));
    // Later-window connectors cross beta_i twice, so only the first window
    // gets that disjointness.
    if (i == 1) atlas->declare_disjoint(conn(i), beta(i));
    atlas->declare_disjoint(conn(i), beta(i + 1));
    atlas->declare_disjoint("d1", conn(i));
    for (int k = 1; k <= g; ++k)
      if (k != i && k != i + 1) {
        atlas->declare_disjoint(conn(i), alpha(k));
        atlas->declare_disjoint(conn(i), beta(k));
      }
    for (int j = i + 1; j + 1 <= g; ++j) atlas->declare_disjoint(conn(i), conn(j));
  }
  for (int i = 1; i <= g; ++i)
    for (int j = i; j <= g; ++j) {
      atlas->declare_disjoint("d1", sigma(i, j));
      for (int k = 1; k <= g; ++k) atlas->declare_disjoint(sigma(i, j), alpha(k));
      for (int k = 1; k <= g; ++k)
        if (k < i || k > j) atlas->declare_disjoint(sigma(i, j), beta(k));
      // A connector is disjoint from a block boundary when its window lies
      // entirely inside or entirely outside the block.
      for (int k = 1; k + 1 <= g; ++k)
        if ((i <= k && k + 1 <= j) || k + 1 < i || k > j)
          atlas->declare_disjoint(sigma(i, j), conn(k));
      // Nested or disjoint block ranges commute; partially overlapping
      // ranges genuinely cross and are not declared.
      for (int k = i; k <= g; ++k)
        for (int l = k; l <= g; ++l) {
          if (k == i && l == j) continue;
          const bool nested = (i <= k && l <= j) || (k <= i && j <= l);
          const bool apart = (l < i) || (j < k);
          if (nested || apart) atlas->declare_disjoint(sigma(i, j), sigma(k, l));
        }
    }

  return atlas;
}

}  // namespace

std::shared_ptr<const Atlas> one_boundary_atlas(int genus) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Atlas>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(genus);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Atlas> a = build_one_boundary(genus);
  cache[genus] = a;
  return a;
}

std::shared_ptr<Atlas> make_one_boundary_atlas(int genus) { return build_one_boundary(genus); }

namespace {

std::shared_ptr<Atlas> build_two_boundary_chain(int g) {
  const SurfaceCtx s = SurfaceCtx::make(g, 2);
  auto atlas = std::make_shared<Atlas>(s);

  // Stabilized world: one extra handle in place of the second hole. The
  // stabilized gamma curve is the beta_g curve pushed around that handle;
  // the carrying word below was found by bounded search and is frozen.
  auto stab = build_one_boundary(g + 1);
  const std::string ag = "alpha" + std::to_string(g), cg = "conn" + std::to_string(g),
                    an = "alpha" + std::to_string(g + 1), bn = "beta" + std::to_string(g + 1);
  const MCExpr carry =
      MCExpr::prod({MCExpr::inv(MCExpr::t(ag)), MCExpr::inv(MCExpr::t(cg)),
                    MCExpr::inv(MCExpr::t(an)), MCExpr::p(MCExpr::t(bn), -2),
                    MCExpr::inv(MCExpr::t(an)), MCExpr::inv(MCExpr::t(cg)),
                    MCExpr::inv(MCExpr::t(ag))});
  stab->add_derived("gamma_stab", carry, "beta" + std::to_string(g));
  atlas->set_stabilization(stabilize_to_one_boundary(s), std::move(stab));

  atlas->add_primitive(CurveSpec::from_rep("d1", s.boundary_word(1)),
                       FreeAutomorphism::inner(s.boundary_word(1)), "d1");
  atlas->add_primitive(CurveSpec::from_rep("d2", s.boundary_word(2)),
                       FreeAutomorphism::identity(s.rank()),
                       "sigma_" + std::to_string(g + 1) + "_" + std::to_string(g + 1));

  std::vector<std::string> chain;
  atlas->add_primitive(CurveSpec::from_rep("beta1", s.b(1)), through_twist(s, 1), "beta1");
  chain.push_back("beta1");
  for (int i = 1; i <= g; ++i) {
    const std::string alpha = "alpha" + std::to_string(i);
    atlas->add_primitive(CurveSpec::from_rep(alpha, s.a(i)), rim_twist(s, i), alpha);
    chain.push_back(alpha);
    if (i < g) {
      const std::string conn = "conn" + std::to_string(i);
      atlas->add_primitive(CurveSpec::from_rep(conn, connector_rep(s, i)), connector_twist(s, i),
                           conn);
      chain.push_back(conn);
    }
  }
  atlas->add_primitive(CurveSpec::from_rep("gamma", hole_connector_rep(s)),
                       hole_connector_twist(s), "gamma_stab");
  chain.push_back("gamma");

  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      if (j == i + 1)
        atlas->declare_once_crossing(chain[i], chain[j]);
      else
        atlas->declare_disjoint(chain[i], chain[j]);
    }
  atlas->declare_disjoint("d1", "d2");
  for (const std::string& c : chain) {
    atlas->declare_disjoint("d1", c);
    atlas->declare_disjoint("d2", c);
  }
  return atlas;
}

}  // namespace

std::shared_ptr<const Atlas> two_boundary_chain_atlas(int genus) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Atlas>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(genus);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Atlas> a = build_two_boundary_chain(genus);
  cache[genus] = a;
  return a;
}

std::shared_ptr<Atlas> make_two_boundary_chain_atlas(int genus) {
  return build_two_boundary_chain(genus);
}

namespace {

std::shared_ptr<const Atlas> build_lantern() {
  SurfaceCtx s = SurfaceCtx::make(0, 4);
  auto atlas = std::make_shared<Atlas>(s);
  const Word d = s.boundary_word(1);

  auto pair_twist = [&](int lo, int hi) {
    const Word w = mul(s.x(lo), s.x(hi));
    std::vector<Word> fwd = identity_images(s), bwd = identity_images(s);
    for (int j : {lo, hi}) {
      const int idx = s.x_index(j);
      fwd[static_cast<std::size_t>(idx)] = mul(w, s.gen(idx), w.inverse());
      bwd[static_cast<std::size_t>(idx)] = mul(w.inverse(), s.gen(idx), w);
    }
    return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
  };
  const FreeAutomorphism tx = pair_twist(2, 3);
  const FreeAutomorphism ty = pair_twist(3, 4);
  // The three pair curves satisfy t_x t_y t_z = t_d1 (rightmost applied
  // first), which pins down the twist along z = x2 x4.
  const FreeAutomorphism tz =
      compose(ty.inverse(), compose(tx.inverse(), FreeAutomorphism::inner(d)));

  // Stabilization target: the genus-3 atlas extended with the class of the
  // curve that encloses handles 1 and 3, reached from sigma_1_2 by a frozen
  // change of coordinates.
  auto g3 = make_one_boundary_atlas(3);
  const MCExpr f = MCExpr::prod({MCExpr::inv(MCExpr::t("conn2")), MCExpr::inv(MCExpr::t("alpha2")),
                                 MCExpr::inv(MCExpr::t("alpha3")), MCExpr::inv(MCExpr::t("conn2")),
                                 MCExpr::inv(MCExpr::t("beta3")), MCExpr::inv(MCExpr::t("beta2")),
                                 MCExpr::inv(MCExpr::t("alpha3")), MCExpr::inv(MCExpr::t("alpha2")),
                                 MCExpr::inv(MCExpr::t("conn2"))});
  g3->add_derived("handles_1_3", f, "sigma_1_2");
  atlas->set_stabilization(stabilize_to_one_boundary(s), std::move(g3));

  // Boundary twists: d1 is conjugation by the based boundary word; the other
  // boundary twists act trivially on a fundamental group based on d1, and
  // stabilize to the block twists of the handles that replace the holes.
  atlas->add_primitive(CurveSpec::from_rep("d1", d), FreeAutomorphism::inner(d), "d1");
  for (int j = 2; j <= 4; ++j)
    atlas->add_primitive(CurveSpec::from_rep("d" + std::to_string(j), s.boundary_word(j)),
                         FreeAutomorphism::identity(s.rank()),
                         "sigma_" + std::to_string(j - 1) + "_" + std::to_string(j - 1));

  atlas->add_primitive(CurveSpec::from_rep("x", mul(s.x(2), s.x(3))), tx, "sigma_1_2");
  atlas->add_primitive(CurveSpec::from_rep("y", mul(s.x(3), s.x(4))), ty, "sigma_2_3");
  atlas->add_primitive(CurveSpec::from_rep("z", mul(s.x(2), s.x(4))), tz, "handles_1_3");

  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      atlas->declare_disjoint("d" + std::to_string(i), "d" + std::to_string(j));
  for (int j = 1; j <= 4; ++j)
    for (const char* c : {"x", "y", "z"})
      atlas->declare_disjoint("d" + std::to_string(j), c);
  // x, y, z pairwise cross twice; no disjointness or braid declarations.

  return atlas;
}

}  // namespace

std::shared_ptr<const Atlas> lantern_atlas() {
  static std::mutex mu;
  static std::shared_ptr<const Atlas> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache) cache = build_lantern();
  return cache;
}

std::shared_ptr<const Atlas> standard_atlas(const SurfaceCtx& ctx) {
  if (ctx.genus() >= 1 && ctx.boundaries() == 1) return one_boundary_atlas(ctx.genus());
  if (ctx.genus() == 0 && ctx.boundaries() == 4) return lantern_atlas();
  if (ctx.genus() >= 1 && ctx.boundaries() == 2) return two_boundary_chain_atlas(ctx.genus());
  throw atlas_error("no standard atlas for " + ctx.label());
}

}  // namespace mcg

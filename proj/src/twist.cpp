#include "mcg/twist.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <utility>

namespace mcg {

MCExpr MCExpr::id() { return MCExpr{}; }

MCExpr MCExpr::t(std::string curve) {
  MCExpr e;
  e.kind = Kind::twist;
  e.atom = std::move(curve);
  return e;
}

MCExpr MCExpr::ref(std::string name) {
  MCExpr e;
  e.kind = Kind::ref;
  e.atom = std::move(name);
  return e;
}

MCExpr MCExpr::prod(std::vector<MCExpr> factors) {
  if (factors.empty()) return id();
  if (factors.size() == 1) return std::move(factors.front());
  MCExpr e;
  e.kind = Kind::product;
  e.kids = std::move(factors);
  return e;
}

MCExpr MCExpr::p(MCExpr base, int n) {
  MCExpr e;
  e.kind = Kind::power;
  e.exp = n;
  e.kids.push_back(std::move(base));
  return e;
}

MCExpr MCExpr::comm(MCExpr a, MCExpr b) {
  MCExpr e;
  e.kind = Kind::commutator;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

MCExpr MCExpr::conj(MCExpr a, MCExpr b) {
  MCExpr e;
  e.kind = Kind::conjugate;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

MCExpr MCExpr::operator*(const MCExpr& other) const {
  std::vector<MCExpr> fs;
  if (kind == Kind::product)
    fs = kids;
  else
    fs.push_back(*this);
  if (other.kind == Kind::product)
    fs.insert(fs.end(), other.kids.begin(), other.kids.end());
  else
    fs.push_back(other);
  return prod(std::move(fs));
}

namespace {

void render(const MCExpr& e, std::ostream& os, bool as_term) {
  switch (e.kind) {
    case MCExpr::Kind::ident:
      os << "id";
      return;
    case MCExpr::Kind::twist:
      os << "t[" << e.atom << "]";
      return;
    case MCExpr::Kind::ref:
      os << e.atom;
      return;
    case MCExpr::Kind::product: {
      if (as_term) os << "(";
      bool first = true;
      for (const MCExpr& k : e.kids) {
        if (!first) os << " ";
        first = false;
        render(k, os, /*as_term=*/true);
      }
      if (as_term) os << ")";
      return;
    }
    case MCExpr::Kind::power: {
      if (e.exp == 1) {
        render(e.kids[0], os, as_term);
        return;
      }
      // A power base that is itself a power needs explicit parens: the
      // grammar has no chained ^.
      const MCExpr* b = &e.kids[0];
      while (b->kind == MCExpr::Kind::power && b->exp == 1) b = &b->kids[0];
      const bool wrap = b->kind == MCExpr::Kind::power;
      if (wrap) os << "(";
      render(e.kids[0], os, /*as_term=*/true);
      if (wrap) os << ")";
      os << "^" << e.exp;
      return;
    }
    case MCExpr::Kind::commutator:
      os << "[";
      render(e.kids[0], os, false);
      os << ", ";
      render(e.kids[1], os, false);
      os << "]";
      return;
    case MCExpr::Kind::conjugate:
      os << "conj(";
      render(e.kids[0], os, false);
      os << ", ";
      render(e.kids[1], os, false);
      os << ")";
      return;
  }
}

}  // namespace

std::string MCExpr::to_string() const {
  std::ostringstream os;
  render(*this, os, false);
  return os.str();
}

void MCExpr::collect_twists(std::vector<std::string>& out) const {
  if (kind == Kind::twist) out.push_back(atom);
  for (const MCExpr& k : kids) k.collect_twists(out);
}

IMat IMat::identity(int n) {
  IMat m;
  m.n = n;
  m.v.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::mul(const IMat& o) const {
  IMat r;
  r.n = n;
  r.v.assign(v.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::int64_t a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

HVec IMat::apply(const HVec& x) const {
  HVec y(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(i)] += at(i, j) * x[static_cast<std::size_t>(j)];
  return y;
}

IMat transvection_matrix(const SurfaceCtx& ctx, const HVec& c) {
  const int n = ctx.rank();
  IMat m = IMat::identity(n);
  HVec p(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    HVec ej(static_cast<std::size_t>(n), 0);
    ej[static_cast<std::size_t>(j)] = 1;
    p[static_cast<std::size_t>(j)] = homology_pairing(ctx, ej, c);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) += p[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i)];
  return m;
}

IMat abelianization_matrix(const FreeAutomorphism& f) {
  const int n = f.rank();
  IMat m;
  m.n = n;
  m.v.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    const HVec col = abelianize(f.image(j));
    for (int i = 0; i < n; ++i) m.at(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

void Atlas::set_stabilization(EmbeddingSpec emb, std::shared_ptr<const Atlas> target) {
  if (emb.source() != ctx_) throw atlas_error("stabilization source mismatch");
  if (!target || emb.target() != target->ctx()) throw atlas_error("stabilization target mismatch");
  stab_emb_ = std::move(emb);
  stab_atlas_ = std::move(target);
}

const EmbeddingSpec& Atlas::stab_embedding() const {
  if (!stab_emb_) throw atlas_error("atlas has no stabilization");
  return *stab_emb_;
}

const Atlas& Atlas::stab_atlas() const {
  if (!stab_atlas_) throw atlas_error("atlas has no stabilization");
  return *stab_atlas_;
}

void Atlas::add(AtlasEntry entry) {
  if (entry.curve.name.empty()) throw atlas_error("atlas entry needs a name");
  if (index_.count(entry.curve.name)) throw atlas_error("duplicate curve '" + entry.curve.name + "'");
  if (entry.curve.rep.rank() != ctx_.rank())
    throw atlas_error("curve '" + entry.curve.name + "' has wrong rank");

  if (entry.fwd) {
    const FreeAutomorphism& f = *entry.fwd;
    if (f.rank() != ctx_.rank()) throw atlas_error("automorphism rank mismatch");
    if (f.apply(ctx_.boundary_word(1)) != ctx_.boundary_word(1))
      throw atlas_error("twist '" + entry.curve.name + "' moves the based boundary word");
    for (int j = 2; j <= ctx_.boundaries(); ++j)
      if (!conjugacy_equal(f.apply(ctx_.boundary_word(j)), ctx_.boundary_word(j)))
        throw atlas_error("twist '" + entry.curve.name + "' moves boundary " + std::to_string(j) +
                          " off its free homotopy class");
    if (abelianization_matrix(f) != transvection_matrix(ctx_, entry.curve.homology))
      throw atlas_error("twist '" + entry.curve.name + "' disagrees with its transvection");
    if (CyclicWord(f.apply(entry.curve.rep), false) != entry.curve.cls)
      throw atlas_error("twist '" + entry.curve.name + "' moves its own curve");
  }

  if (!entry.stab.empty()) {
    if (!stab_atlas_) throw atlas_error("stabilized name given but no stabilization set");
    if (!stab_atlas_->has(entry.stab))
      throw atlas_error("unknown stabilized curve '" + entry.stab + "'");
    const CyclicWord img(stab_emb_->apply(entry.curve.rep), false);
    if (stab_atlas_->entry(entry.stab).curve.cls != img)
      throw atlas_error("stabilized class mismatch for '" + entry.curve.name + "'");
  } else if (stab_atlas_) {
    throw atlas_error("curve '" + entry.curve.name + "' needs a stabilized image");
  }

  index_[entry.curve.name] = entries_.size();
  entries_.push_back(std::move(entry));
}

void Atlas::add_primitive(CurveSpec curve, FreeAutomorphism fwd, std::string stab) {
  AtlasEntry e;
  e.curve = std::move(curve);
  e.fwd = std::move(fwd);
  e.stab = std::move(stab);
  add(std::move(e));
}

void Atlas::add_unrealized(CurveSpec curve, std::string stab) {
  AtlasEntry e;
  e.curve = std::move(curve);
  e.stab = std::move(stab);
  add(std::move(e));
}

void Atlas::add_derived(std::string name, const MCExpr& expr, const std::string& base) {
  const AtlasEntry& b = entry(base);
  if (!b.fwd) throw atlas_error("derived curve needs a source-level base twist");
  const FreeAutomorphism F = eval_expr(*this, expr);
  CurveSpec c = CurveSpec::from_rep(std::move(name), F.apply(b.curve.rep),
                                    expr.to_string() + " (" + base + ")");
  AtlasEntry e;
  e.curve = std::move(c);
  e.fwd = compose(F, compose(*b.fwd, F.inverse()));
  e.base = base;
  e.derivation = expr;
  add(std::move(e));
}

void Atlas::declare_disjoint(std::string c1, std::string c2) {
  disjoint_.emplace_back(std::move(c1), std::move(c2));
}

void Atlas::declare_once_crossing(std::string c1, std::string c2) {
  crossing_.emplace_back(std::move(c1), std::move(c2));
}

const AtlasEntry& Atlas::entry(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw atlas_error("unknown curve '" + name + "'");
  return entries_[it->second];
}

const FreeAutomorphism& Atlas::twist(const std::string& name) const {
  const AtlasEntry& e = entry(name);
  if (!e.fwd) throw atlas_error("curve '" + name + "' has no source-level twist");
  return *e.fwd;
}

void Atlas::validate() const {
  // Boundary twists must be present under the naming convention d1..db.
  for (int j = 1; j <= ctx_.boundaries(); ++j)
    if (!has("d" + std::to_string(j)))
      throw atlas_error(ctx_.label() + ": missing boundary twist entry d" + std::to_string(j));

  for (const AtlasEntry& e : entries_) {
    if (e.fwd) {
      const FreeAutomorphism& f = *e.fwd;
      if (f.apply(ctx_.boundary_word(1)) != ctx_.boundary_word(1))
        throw atlas_error("twist '" + e.curve.name + "' moves the based boundary word");
      for (int j = 2; j <= ctx_.boundaries(); ++j)
        if (!conjugacy_equal(f.apply(ctx_.boundary_word(j)), ctx_.boundary_word(j)))
          throw atlas_error("twist '" + e.curve.name + "' moves boundary " + std::to_string(j));
      if (abelianization_matrix(f) != transvection_matrix(ctx_, e.curve.homology))
        throw atlas_error("twist '" + e.curve.name + "' disagrees with its transvection");
      if (abelianize(e.curve.rep) != e.curve.homology)
        throw atlas_error("curve '" + e.curve.name + "' has inconsistent homology");
    }
    if (!e.base.empty()) {
      const AtlasEntry& b = entry(e.base);
      const FreeAutomorphism F = eval_expr(*this, e.derivation);
      if (CyclicWord(F.apply(b.curve.rep), false) != e.curve.cls)
        throw atlas_error("derived curve '" + e.curve.name + "' class mismatch");
      if (e.fwd && !(*e.fwd == compose(F, compose(*b.fwd, F.inverse()))))
        throw atlas_error("derived twist '" + e.curve.name + "' is not the conjugated base twist");
    }
    if (!e.stab.empty()) {
      const CyclicWord img(stab_emb_->apply(e.curve.rep), false);
      if (stab_atlas_->entry(e.stab).curve.cls != img)
        throw atlas_error("stabilized class mismatch for '" + e.curve.name + "'");
      if (e.fwd) {
        // The stabilized twist must restrict to the source twist: the two
        // routes around the embedding square agree on every generator.
        const FreeAutomorphism& st = stab_atlas_->twist(e.stab);
        for (int i = 0; i < ctx_.rank(); ++i) {
          const Word gw = Word::generator(ctx_.rank(), i);
          if (st.apply(stab_emb_->apply(gw)) != stab_emb_->apply(e.fwd->apply(gw)))
            throw atlas_error("stabilized twist for '" + e.curve.name +
                              "' does not restrict to the source twist");
        }
      }
    }
  }
  if (stab_atlas_) stab_atlas_->validate();

  auto resolved = [&](const std::string& name) -> FreeAutomorphism {
    const AtlasEntry& e = entry(name);
    if (e.fwd) return *e.fwd;
    if (!e.stab.empty()) return stab_atlas_->twist(e.stab);
    throw atlas_error("curve '" + name + "' has no twist realization");
  };
  for (const auto& [n1, n2] : disjoint_) {
    const FreeAutomorphism f = resolved(n1), g = resolved(n2);
    if (!(compose(f, g) == compose(g, f)))
      throw atlas_error("declared-disjoint curves '" + n1 + "', '" + n2 + "' fail to commute");
  }
  for (const auto& [n1, n2] : crossing_) {
    const FreeAutomorphism f = resolved(n1), g = resolved(n2);
    if (!(compose(f, compose(g, f)) == compose(g, compose(f, g))))
      throw atlas_error("once-crossing curves '" + n1 + "', '" + n2 + "' fail the braid relation");
  }
}

namespace {

template <typename Resolver>
FreeAutomorphism eval_rec(int rank, Resolver&& tw, const MCExpr& e, const AutoBindings* bindings) {
  switch (e.kind) {
    case MCExpr::Kind::ident:
      return FreeAutomorphism::identity(rank);
    case MCExpr::Kind::twist:
      return tw(e.atom);
    case MCExpr::Kind::ref: {
      if (bindings) {
        auto it = bindings->find(e.atom);
        if (it != bindings->end()) return it->second;
      }
      throw atlas_error("unbound name '" + e.atom + "'");
    }
    case MCExpr::Kind::product: {
      FreeAutomorphism acc = eval_rec(rank, tw, e.kids.front(), bindings);
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        acc = compose(acc, eval_rec(rank, tw, e.kids[i], bindings));
      return acc;
    }
    case MCExpr::Kind::power:
      return pow(eval_rec(rank, tw, e.kids[0], bindings), e.exp);
    case MCExpr::Kind::commutator:
      return commutator(eval_rec(rank, tw, e.kids[0], bindings),
                        eval_rec(rank, tw, e.kids[1], bindings));
    case MCExpr::Kind::conjugate:
      return conjugate(eval_rec(rank, tw, e.kids[0], bindings),
                       eval_rec(rank, tw, e.kids[1], bindings));
  }
  throw atlas_error("bad expression node");
}

// Homology evaluation with an explicit inversion flag, so that negative
// powers never need a matrix inverse.
IMat hom_rec(const Atlas& atlas, const MCExpr& e, const AutoBindings* bindings, bool invert) {
  const SurfaceCtx& ctx = atlas.ctx();
  switch (e.kind) {
    case MCExpr::Kind::ident:
      return IMat::identity(ctx.rank());
    case MCExpr::Kind::twist: {
      const HVec& c = atlas.entry(e.atom).curve.homology;
      IMat m = transvection_matrix(ctx, c);
      if (invert) {
        // T^{-1} = 2I - T for a transvection (its unipotent part is nilpotent).
        IMat inv = IMat::identity(ctx.rank());
        for (std::size_t k = 0; k < inv.v.size(); ++k) inv.v[k] = 2 * inv.v[k] - m.v[k];
        return inv;
      }
      return m;
    }
    case MCExpr::Kind::ref: {
      if (bindings) {
        auto it = bindings->find(e.atom);
        if (it != bindings->end())
          return abelianization_matrix(invert ? it->second.inverse() : it->second);
      }
      throw atlas_error("unbound name '" + e.atom + "'");
    }
    case MCExpr::Kind::product: {
      IMat acc = IMat::identity(ctx.rank());
      if (!invert) {
        for (const MCExpr& k : e.kids) acc = acc.mul(hom_rec(atlas, k, bindings, false));
      } else {
        for (auto it = e.kids.rbegin(); it != e.kids.rend(); ++it)
          acc = acc.mul(hom_rec(atlas, *it, bindings, true));
      }
      return acc;
    }
    case MCExpr::Kind::power: {
      const int n = invert ? -e.exp : e.exp;
      IMat base = hom_rec(atlas, e.kids[0], bindings, n < 0);
      IMat acc = IMat::identity(ctx.rank());
      for (int i = 0; i < (n < 0 ? -n : n); ++i) acc = acc.mul(base);
      return acc;
    }
    case MCExpr::Kind::commutator: {
      const MCExpr& a = e.kids[invert ? 1 : 0];
      const MCExpr& b = e.kids[invert ? 0 : 1];
      IMat fa = hom_rec(atlas, a, bindings, false);
      IMat fb = hom_rec(atlas, b, bindings, false);
      IMat ia = hom_rec(atlas, a, bindings, true);
      IMat ib = hom_rec(atlas, b, bindings, true);
      return fa.mul(fb).mul(ia).mul(ib);
    }
    case MCExpr::Kind::conjugate: {
      IMat fb = hom_rec(atlas, e.kids[1], bindings, false);
      IMat ib = hom_rec(atlas, e.kids[1], bindings, true);
      IMat fa = hom_rec(atlas, e.kids[0], bindings, invert);
      return fb.mul(fa).mul(ib);
    }
  }
  throw atlas_error("bad expression node");
}

}  // namespace

FreeAutomorphism eval_expr(const Atlas& atlas, const MCExpr& e, const AutoBindings* bindings) {
  return eval_rec(
      atlas.ctx().rank(),
      [&](const std::string& n) -> const FreeAutomorphism& { return atlas.twist(n); }, e,
      bindings);
}

FreeAutomorphism eval_expr_stabilized(const Atlas& atlas, const MCExpr& e,
                                      const AutoBindings* bindings) {
  const Atlas& st = atlas.stab_atlas();
  return eval_rec(
      st.ctx().rank(),
      [&](const std::string& n) -> const FreeAutomorphism& {
        const AtlasEntry& en = atlas.entry(n);
        if (en.stab.empty())
          throw atlas_error("curve '" + n + "' has no stabilized image");
        return st.twist(en.stab);
      },
      e, bindings);
}

IMat expr_transvection(const Atlas& atlas, const MCExpr& e, const AutoBindings* bindings) {
  return hom_rec(atlas, e, bindings, false);
}

CurveSpec image_curve(const Atlas& atlas, const MCExpr& e, const CurveSpec& c,
                      const AutoBindings* bindings) {
  const FreeAutomorphism F = eval_expr(atlas, e, bindings);
  CurveSpec out = CurveSpec::from_rep(c.name, F.apply(c.rep),
                                      e.to_string() + " (" + c.name + ")");
  return out;
}

namespace {

struct SearchKey {
  std::size_t h = 0;
  std::vector<CyclicWord> cls;
  bool operator==(const SearchKey& o) const { return h == o.h && cls == o.cls; }
};

struct SearchKeyHash {
  std::size_t operator()(const SearchKey& k) const { return k.h; }
};

SearchKey make_key(const std::vector<Word>& reps) {
  SearchKey k;
  k.cls.reserve(reps.size());
  std::size_t h = 0x51ed270b8a3cull;
  for (const Word& w : reps) {
    k.cls.emplace_back(w, /*oriented=*/false);
    h = h * 0x100000001b3ull ^ k.cls.back().hash();
  }
  k.h = h;
  return k;
}

struct Move {
  int entry;  // index into movers
  int sign;
};

using Path = std::vector<Move>;

}  // namespace

std::optional<MCExpr> find_change_of_coords(const Atlas& atlas,
                                            const std::vector<CurveSpec>& src,
                                            const std::vector<CurveSpec>& dst, int budget) {
  if (src.size() != dst.size()) throw atlas_error("change-of-coords tuples differ in length");

  // Candidate move set: every atlas entry with a source-level automorphism.
  std::vector<const AtlasEntry*> movers;
  for (const AtlasEntry& e : atlas.entries())
    if (e.fwd) movers.push_back(&e);

  auto reps_of = [](const std::vector<CurveSpec>& cs) {
    std::vector<Word> reps;
    reps.reserve(cs.size());
    for (const CurveSpec& c : cs) reps.push_back(cyclic_reduce(c.rep));
    return reps;
  };

  using Table = std::unordered_map<SearchKey, Path, SearchKeyHash>;
  struct Side {
    Table seen;
    std::deque<std::pair<std::vector<Word>, Path>> frontier;
  };
  Side fwd, bwd;
  const std::vector<Word> s0 = reps_of(src), t0 = reps_of(dst);
  fwd.seen.emplace(make_key(s0), Path{});
  fwd.frontier.emplace_back(s0, Path{});
  bwd.seen.emplace(make_key(t0), Path{});
  bwd.frontier.emplace_back(t0, Path{});

  // Stitch fwd path P (src → mid) and bwd path Q (dst → mid) into an
  // expression for comp(Q)^{-1} ∘ comp(P), rendered right-to-left.
  auto stitch = [&](const Path& p, const Path& q) {
    std::vector<MCExpr> factors;
    for (auto it = q.begin(); it != q.end(); ++it) {
      MCExpr a = MCExpr::t(movers[static_cast<std::size_t>(it->entry)]->curve.name);
      factors.push_back(it->sign == -1 ? a : MCExpr::inv(std::move(a)));
    }
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      MCExpr a = MCExpr::t(movers[static_cast<std::size_t>(it->entry)]->curve.name);
      factors.push_back(it->sign == -1 ? MCExpr::inv(std::move(a)) : a);
    }
    return MCExpr::prod(std::move(factors));
  };

  auto check = [&](const MCExpr& e) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      const CurveSpec img = image_curve(atlas, e, src[i]);
      if (CyclicWord(img.rep, false) != dst[i].cls) return false;
    }
    return true;
  };

  {
    auto hit = bwd.seen.find(make_key(s0));
    if (hit != bwd.seen.end()) {
      MCExpr e = stitch(Path{}, hit->second);
      if (check(e)) return e;
    }
  }

  const std::size_t node_cap = 400000;
  int fdepth = 0, bdepth = 0;
  while (fdepth + bdepth < budget) {
    // Expand the smaller frontier one level.
    const bool expand_fwd = (fwd.frontier.size() <= bwd.frontier.size());
    Side& side = expand_fwd ? fwd : bwd;
    Side& other = expand_fwd ? bwd : fwd;
    (expand_fwd ? fdepth : bdepth)++;
    std::deque<std::pair<std::vector<Word>, Path>> next;
    for (const auto& [reps, path] : side.frontier) {
      for (std::size_t m = 0; m < movers.size(); ++m) {
        for (int sign : {+1, -1}) {
          std::vector<Word> nr;
          nr.reserve(reps.size());
          for (const Word& w : reps) {
            const FreeAutomorphism& f = *movers[m]->fwd;
            nr.push_back(cyclic_reduce(sign == +1 ? f.apply(w) : f.apply_inverse(w)));
          }
          SearchKey key = make_key(nr);
          if (side.seen.count(key)) continue;
          Path np = path;
          np.push_back({static_cast<int>(m), sign});
          auto hit = other.seen.find(key);
          if (hit != other.seen.end()) {
            MCExpr e = expand_fwd ? stitch(np, hit->second) : stitch(hit->second, np);
            if (check(e)) return e;
          }
          side.seen.emplace(std::move(key), np);
          next.emplace_back(std::move(nr), std::move(np));
          if (side.seen.size() > node_cap) return std::nullopt;
        }
      }
    }
    side.frontier = std::move(next);
    if (side.frontier.empty() && other.frontier.empty()) break;
  }
  return std::nullopt;
}

std::optional<MCExpr> find_change_of_coords(const Atlas& atlas,
                                            const std::vector<std::string>& src,
                                            const std::vector<std::string>& dst, int budget) {
  std::vector<CurveSpec> s, d;
  s.reserve(src.size());
  d.reserve(dst.size());
  for (const std::string& n : src) s.push_back(atlas.entry(n).curve);
  for (const std::string& n : dst) d.push_back(atlas.entry(n).curve);
  return find_change_of_coords(atlas, s, d, budget);
}

}  // namespace mcg

#include "mcg/surface.hpp"

#include <utility>

namespace mcg {

SurfaceCtx SurfaceCtx::make(int g, int b) {
  if (g < 0 || b < 1) throw bad_word("surface needs g >= 0 and b >= 1");
  if (g == 0 && b == 1) throw bad_word("disk has trivial fundamental group");
  SurfaceCtx s;
  s.g_ = g;
  s.b_ = b;
  const int n = 2 * g + b - 1;
  s.names_.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= g; ++i) {
    s.names_.push_back("a" + std::to_string(i));
    s.names_.push_back("b" + std::to_string(i));
  }
  for (int j = 2; j <= b; ++j) s.names_.push_back("x" + std::to_string(j));

  WordBuilder d1(n);
  for (int i = 1; i <= g; ++i) {
    d1.append(commutator(Word::generator(n, 2 * (i - 1)), Word::generator(n, 2 * (i - 1) + 1)));
  }
  for (int j = 2; j <= b; ++j) d1.push(static_cast<Letter>(2 * g + (j - 2) + 1));
  s.boundary_.push_back(d1.take());
  for (int j = 2; j <= b; ++j) s.boundary_.push_back(Word::generator(n, 2 * g + (j - 2)));
  return s;
}

int SurfaceCtx::a_index(int i) const {
  if (i < 1 || i > g_) throw bad_word("handle index out of range");
  return 2 * (i - 1);
}

int SurfaceCtx::b_index(int i) const {
  if (i < 1 || i > g_) throw bad_word("handle index out of range");
  return 2 * (i - 1) + 1;
}

int SurfaceCtx::x_index(int j) const {
  if (j < 2 || j > b_) throw bad_word("boundary generator index out of range");
  return 2 * g_ + (j - 2);
}

const Word& SurfaceCtx::boundary_word(int j) const {
  if (j < 1 || j > b_) throw bad_word("boundary index out of range");
  return boundary_[static_cast<std::size_t>(j - 1)];
}

std::string SurfaceCtx::label() const {
  return "S" + std::to_string(g_) + "_" + std::to_string(b_);
}

std::int64_t homology_pairing(const SurfaceCtx& ctx, const HVec& u, const HVec& v) {
  const std::size_t n = static_cast<std::size_t>(ctx.rank());
  if (u.size() != n || v.size() != n) throw bad_word("homology vector length mismatch");
  std::int64_t s = 0;
  for (int i = 1; i <= ctx.genus(); ++i) {
    const std::size_t ai = static_cast<std::size_t>(ctx.a_index(i));
    const std::size_t bi = static_cast<std::size_t>(ctx.b_index(i));
    s += u[ai] * v[bi] - u[bi] * v[ai];
  }
  return s;
}

CurveSpec CurveSpec::from_rep(std::string name, const Word& rep, std::string origin) {
  CurveSpec c;
  c.name = std::move(name);
  c.rep = rep;
  c.cls = CyclicWord(rep, /*oriented=*/false);
  c.homology = abelianize(rep);
  c.origin = std::move(origin);
  return c;
}

EmbeddingSpec EmbeddingSpec::make(SurfaceCtx src, SurfaceCtx dst, std::vector<Word> gen_images,
                                  std::vector<BoundaryFate> fates) {
  if (static_cast<int>(gen_images.size()) != src.rank())
    throw bad_word("embedding needs one image per source generator");
  for (const Word& w : gen_images)
    if (w.rank() != dst.rank()) throw bad_word("embedding image has wrong rank");
  if (static_cast<int>(fates.size()) != src.boundaries())
    throw bad_word("embedding needs one fate per source boundary");

  EmbeddingSpec e;
  e.src_ = std::move(src);
  e.dst_ = std::move(dst);
  e.images_ = std::move(gen_images);
  e.fates_ = std::move(fates);

  // Declared boundary data must match the induced homomorphism.
  for (int j = 1; j <= e.src_.boundaries(); ++j) {
    const BoundaryFate& f = e.fates_[static_cast<std::size_t>(j - 1)];
    const Word img = e.apply(e.src_.boundary_word(j));
    switch (f.fate) {
      case Fate::maps_to:
        if (j == 1) {
          if (img != f.image) throw bad_word("embedding: source boundary 1 image mismatch");
        } else if (!conjugacy_equal(img, f.image, /*oriented=*/false)) {
          throw bad_word("embedding: boundary " + std::to_string(j) + " image class mismatch");
        }
        break;
      case Fate::capped:
        if (!img.is_identity())
          throw bad_word("embedding: capped boundary " + std::to_string(j) +
                         " must map to the trivial word");
        break;
      case Fate::merged_with: {
        if (f.partner < 1 || f.partner > e.src_.boundaries() || f.partner == j)
          throw bad_word("embedding: bad merge partner");
        const BoundaryFate& g = e.fates_[static_cast<std::size_t>(f.partner - 1)];
        if (g.fate != Fate::merged_with || g.partner != j)
          throw bad_word("embedding: merge must be declared on both boundaries");
        const Word other = e.apply(e.src_.boundary_word(f.partner));
        if (!conjugacy_equal(img, f.image, /*oriented=*/false) ||
            !conjugacy_equal(other, img, /*oriented=*/false))
          throw bad_word("embedding: merged boundaries must share one target class");
        break;
      }
    }
  }
  return e;
}

EmbeddingSpec EmbeddingSpec::identity(const SurfaceCtx& ctx) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(ctx.rank()));
  for (int i = 0; i < ctx.rank(); ++i) images.push_back(ctx.gen(i));
  std::vector<BoundaryFate> fates;
  for (int j = 1; j <= ctx.boundaries(); ++j)
    fates.push_back({Fate::maps_to, ctx.boundary_word(j), 0});
  return make(ctx, ctx, std::move(images), std::move(fates));
}

const EmbeddingSpec::BoundaryFate& EmbeddingSpec::fate(int j) const {
  if (j < 1 || j > src_.boundaries()) throw bad_word("boundary index out of range");
  return fates_[static_cast<std::size_t>(j - 1)];
}

Word EmbeddingSpec::apply(const Word& w) const {
  if (w.rank() != src_.rank()) throw bad_word("embedding applied to wrong-rank word");
  WordBuilder b(dst_.rank());
  for (Letter l : w.letters()) b.append(images_[static_cast<std::size_t>(letter_index(l))], letter_sign(l));
  return b.take();
}

CurveSpec EmbeddingSpec::apply_curve(const CurveSpec& c) const {
  return CurveSpec::from_rep(c.name, apply(c.rep),
                             c.origin.empty() ? "embedded" : c.origin + "; embedded");
}

FreeAutomorphism EmbeddingSpec::extend(const FreeAutomorphism& f) const {
  if (f.rank() != src_.rank()) throw bad_word("extension of wrong-rank automorphism");
  const int n = dst_.rank();
  // Which target generator, if any, each source generator occupies.
  std::vector<int> src_of_target(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < src_.rank(); ++s) {
    const Word& img = images_[static_cast<std::size_t>(s)];
    if (img.size() == 1 && letter_sign(img.at(0)) == +1) {
      const int t = letter_index(img.at(0));
      if (src_of_target[static_cast<std::size_t>(t)] != -1)
        throw bad_word("extension needs distinct generator images");
      src_of_target[static_cast<std::size_t>(t)] = s;
    } else {
      // Composite image: the extension is only well defined if f fixes this
      // source generator exactly.
      if (f.image(s) != src_.gen(s))
        throw bad_word("extension by identity undefined: automorphism moves generator '" +
                       src_.name(s) + "' with composite embedding image");
    }
  }
  std::vector<Word> fwd, bwd;
  fwd.reserve(static_cast<std::size_t>(n));
  bwd.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const int s = src_of_target[static_cast<std::size_t>(t)];
    if (s == -1) {
      fwd.push_back(dst_.gen(t));
      bwd.push_back(dst_.gen(t));
    } else {
      fwd.push_back(apply(f.image(s)));
      bwd.push_back(apply(f.preimage(s)));
    }
  }
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

EmbeddingSpec stabilize_to_one_boundary(const SurfaceCtx& src) {
  if (src.boundaries() == 1) return EmbeddingSpec::identity(src);
  const int g = src.genus(), b = src.boundaries();
  SurfaceCtx dst = SurfaceCtx::make(g + b - 1, 1);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(src.rank()));
  for (int i = 1; i <= g; ++i) {
    images.push_back(dst.a(i));
    images.push_back(dst.b(i));
  }
  for (int j = 2; j <= b; ++j)
    images.push_back(commutator(dst.a(g + j - 1), dst.b(g + j - 1)));

  std::vector<EmbeddingSpec::BoundaryFate> fates;
  fates.push_back({EmbeddingSpec::Fate::maps_to, dst.boundary_word(1), 0});
  for (int j = 2; j <= b; ++j)
    fates.push_back(
        {EmbeddingSpec::Fate::maps_to, commutator(dst.a(g + j - 1), dst.b(g + j - 1)), 0});
  return EmbeddingSpec::make(src, std::move(dst), std::move(images), std::move(fates));
}

std::pair<SurfaceCtx, EmbeddingSpec> cap_boundary(const SurfaceCtx& ctx, int j) {
  if (j < 2 || j > ctx.boundaries())
    throw bad_word("cap_boundary needs a boundary index j >= 2");
  SurfaceCtx dst = SurfaceCtx::make(ctx.genus(), ctx.boundaries() - 1);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(ctx.rank()));
  for (int i = 1; i <= ctx.genus(); ++i) {
    images.push_back(dst.a(i));
    images.push_back(dst.b(i));
  }
  for (int k = 2; k <= ctx.boundaries(); ++k) {
    if (k == j)
      images.push_back(Word(dst.rank()));
    else
      images.push_back(dst.x(k < j ? k : k - 1));
  }
  std::vector<EmbeddingSpec::BoundaryFate> fates;
  fates.push_back({EmbeddingSpec::Fate::maps_to, dst.boundary_word(1), 0});
  for (int k = 2; k <= ctx.boundaries(); ++k) {
    if (k == j)
      fates.push_back({EmbeddingSpec::Fate::capped, Word(dst.rank()), 0});
    else
      fates.push_back({EmbeddingSpec::Fate::maps_to, dst.boundary_word(k < j ? k : k - 1), 0});
  }
  EmbeddingSpec e = EmbeddingSpec::make(ctx, dst, std::move(images), std::move(fates));
  return {std::move(dst), std::move(e)};
}

}  // namespace mcg

#include "mcg/automorphism.hpp"

#include <algorithm>
#include <utility>

namespace mcg {

FreeAutomorphism FreeAutomorphism::identity(int rank) {
  FreeAutomorphism f;
  f.rank_ = rank;
  f.fwd_.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) f.fwd_.push_back(Word::generator(rank, i, +1));
  f.bwd_ = f.fwd_;
  return f;
}

FreeAutomorphism FreeAutomorphism::inner(const Word& w) {
  const int rank = w.rank();
  FreeAutomorphism f;
  f.rank_ = rank;
  const Word wi = w.inverse();
  f.fwd_.reserve(static_cast<std::size_t>(rank));
  f.bwd_.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    const Word x = Word::generator(rank, i, +1);
    f.fwd_.push_back(mul(w, x, wi));
    f.bwd_.push_back(mul(wi, x, w));
  }
  return f;
}

FreeAutomorphism FreeAutomorphism::unchecked(int rank, std::vector<Word> fwd,
                                             std::vector<Word> bwd) {
  FreeAutomorphism f;
  f.rank_ = rank;
  f.fwd_ = std::move(fwd);
  f.bwd_ = std::move(bwd);
  return f;
}

FreeAutomorphism FreeAutomorphism::from_images(std::vector<Word> fwd, std::vector<Word> bwd) {
  if (fwd.empty() || fwd.size() != bwd.size())
    throw bad_word("automorphism image tables must be nonempty and equal-sized");
  const int rank = fwd.front().rank();
  if (static_cast<int>(fwd.size()) != rank)
    throw bad_word("automorphism image table size must equal rank");
  for (const Word& w : fwd)
    if (w.rank() != rank) throw bad_word("mixed ranks in automorphism images");
  for (const Word& w : bwd)
    if (w.rank() != rank) throw bad_word("mixed ranks in automorphism images");
  FreeAutomorphism f = unchecked(rank, std::move(fwd), std::move(bwd));
  for (int i = 0; i < rank; ++i) {
    const Word x = Word::generator(rank, i, +1);
    if (f.apply_inverse(f.image(i)) != x || f.apply(f.preimage(i)) != x)
      throw bad_word("automorphism image tables are not mutually inverse");
  }
  return f;
}

Word FreeAutomorphism::apply_table(const std::vector<Word>& table, const Word& w) {
  WordBuilder b(w.rank());
  for (Letter l : w.letters())
    b.append(table[static_cast<std::size_t>(letter_index(l))], letter_sign(l));
  return b.take();
}

Word FreeAutomorphism::apply(const Word& w) const {
  if (w.rank() != rank_) throw bad_word("rank mismatch in automorphism application");
  return apply_table(fwd_, w);
}

Word FreeAutomorphism::apply_inverse(const Word& w) const {
  if (w.rank() != rank_) throw bad_word("rank mismatch in automorphism application");
  return apply_table(bwd_, w);
}

FreeAutomorphism FreeAutomorphism::inverse() const {
  FreeAutomorphism f;
  f.rank_ = rank_;
  f.fwd_ = bwd_;
  f.bwd_ = fwd_;
  return f;
}

bool FreeAutomorphism::is_identity() const {
  for (int i = 0; i < rank_; ++i)
    if (fwd_[static_cast<std::size_t>(i)] != Word::generator(rank_, i, +1)) return false;
  return true;
}

std::size_t FreeAutomorphism::hash() const {
  std::size_t h = 0xa17f5c3d9e2b4681ull ^ static_cast<std::size_t>(rank_);
  for (const Word& w : fwd_) h = h * 0x100000001b3ull ^ w.hash();
  return h;
}

std::size_t FreeAutomorphism::max_image_size() const {
  std::size_t m = 0;
  for (const Word& w : fwd_) m = std::max(m, w.size());
  return m;
}

FreeAutomorphism compose(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  if (f.rank() != g.rank()) throw bad_word("rank mismatch in composition");
  const int rank = f.rank();
  std::vector<Word> fwd, bwd;
  fwd.reserve(static_cast<std::size_t>(rank));
  bwd.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    fwd.push_back(f.apply(g.image(i)));
    bwd.push_back(g.apply_inverse(f.preimage(i)));
  }
  return FreeAutomorphism::unchecked(rank, std::move(fwd), std::move(bwd));
}

FreeAutomorphism pow(const FreeAutomorphism& f, int n) {
  if (n < 0) return pow(f.inverse(), -n);
  FreeAutomorphism acc = FreeAutomorphism::identity(f.rank());
  FreeAutomorphism base = f;
  while (n > 0) {
    if (n & 1) acc = compose(acc, base);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return acc;
}

FreeAutomorphism conjugate(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(g, compose(f, g.inverse()));
}

FreeAutomorphism commutator(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, compose(g, compose(f.inverse(), g.inverse())));
}

bool auto_equal(const FreeAutomorphism& a, const FreeAutomorphism& b) { return a == b; }

}  // namespace mcg

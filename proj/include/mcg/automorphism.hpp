#pragma once

#include <vector>

#include "mcg/word.hpp"

namespace mcg {

// An automorphism of a free group, stored as the image table of the
// generators together with the image table of its inverse. Inverses are
// never solved for: every constructor either receives both tables or builds
// them from pieces that already carry theirs.
class FreeAutomorphism {
public:
  FreeAutomorphism() = default;

  static FreeAutomorphism identity(int rank);
  // x ↦ w x w^{-1}
  static FreeAutomorphism inner(const Word& w);
  // Validates that the two tables really are mutually inverse; throws
  // bad_word otherwise.
  static FreeAutomorphism from_images(std::vector<Word> fwd, std::vector<Word> bwd);
  // Skips the mutual-inverse check. Only for tables whose validity is
  // structural (compositions and inverses of already valid automorphisms).
  static FreeAutomorphism unchecked(int rank, std::vector<Word> fwd, std::vector<Word> bwd);

  int rank() const { return rank_; }
  const Word& image(int i) const { return fwd_[static_cast<std::size_t>(i)]; }
  const Word& preimage(int i) const { return bwd_[static_cast<std::size_t>(i)]; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;

  FreeAutomorphism inverse() const;

  bool is_identity() const;
  bool operator==(const FreeAutomorphism& o) const {
    return rank_ == o.rank_ && fwd_ == o.fwd_;
  }
  bool operator!=(const FreeAutomorphism& o) const { return !(*this == o); }

  std::size_t hash() const;

  // Largest generator image length; a cheap size measure for reporting.
  std::size_t max_image_size() const;

private:
  static Word apply_table(const std::vector<Word>& table, const Word& w);

  int rank_ = 0;
  std::vector<Word> fwd_, bwd_;
};

// compose(f, g) applies g first: compose(f, g)(w) == f(g(w)). This matches
// the convention that a product of mapping classes acts on curves starting
// with the rightmost factor.
FreeAutomorphism compose(const FreeAutomorphism& f, const FreeAutomorphism& g);
inline FreeAutomorphism mul(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, g);
}
FreeAutomorphism pow(const FreeAutomorphism& f, int n);
// conjugate(f, g) = g f g^{-1}, matching f^g = g f g^{-1}.
FreeAutomorphism conjugate(const FreeAutomorphism& f, const FreeAutomorphism& g);
// commutator(f, g) = f g f^{-1} g^{-1}
FreeAutomorphism commutator(const FreeAutomorphism& f, const FreeAutomorphism& g);

// Letterwise equality on generator images of a and b.
bool auto_equal(const FreeAutomorphism& a, const FreeAutomorphism& b);

}  // namespace mcg

template <>
struct std::hash<mcg::FreeAutomorphism> {
  std::size_t operator()(const mcg::FreeAutomorphism& f) const { return f.hash(); }
};

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "mcg/automorphism.hpp"
#include "mcg/commutator.hpp"
#include "mcg/word.hpp"

using namespace mcg;

static_assert(GroupElement<Word>);
static_assert(GroupElement<FreeAutomorphism>);

namespace {

Word random_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<Letter> ls;
  ls.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i)
    ls.push_back(static_cast<Letter>((sgn(rng) ? 1 : -1) * gen(rng)));
  return Word::from_letters(rank, ls);
}

// Dehn-twist style automorphism on a rank-2k free group acting only on the
// generator pair (2i, 2i+1): either b ↦ b a^{-1} (rim) or a ↦ a b (through).
FreeAutomorphism pair_twist(int rank, int i, bool rim) {
  std::vector<Word> fwd, bwd;
  for (int k = 0; k < rank; ++k) {
    fwd.push_back(Word::generator(rank, k, +1));
    bwd.push_back(Word::generator(rank, k, +1));
  }
  const int ai = 2 * i, bi = 2 * i + 1;
  const Word a = Word::generator(rank, ai, +1);
  const Word b = Word::generator(rank, bi, +1);
  if (rim) {
    fwd[static_cast<std::size_t>(bi)] = mul(b, a.inverse());
    bwd[static_cast<std::size_t>(bi)] = mul(b, a);
  } else {
    fwd[static_cast<std::size_t>(ai)] = mul(a, b);
    bwd[static_cast<std::size_t>(ai)] = mul(a, b.inverse());
  }
  return FreeAutomorphism::from_images(fwd, bwd);
}

}  // namespace

TEST_CASE("free reduction: basics and validation") {
  Word e(3);
  CHECK(e.is_identity());
  CHECK(e.rank() == 3);
  CHECK(Word(3, {1, 2, -2, -1}).is_identity());
  CHECK(Word(3, {1, 2, -2, 3}) == Word(3, {1, 3}));
  CHECK(Word(3, {1, -3, 3, -1, 2}) == Word(3, {2}));
  CHECK_THROWS_AS(Word(2, {3}), bad_word);
  CHECK_THROWS_AS(Word(2, {0}), bad_word);
  CHECK_THROWS_AS(mul(Word(2, {1}), Word(3, {1})), bad_word);
}

TEST_CASE("free reduction: w w^{-1} is trivial over 10^4 random words") {
  std::mt19937 rng(20240814u);
  for (int i = 0; i < 10000; ++i) {
    const int rank = 1 + i % 6;
    const Word w = random_word(rng, rank, i % 97);
    CHECK(mul(w, w.inverse()).is_identity());
    CHECK(mul(w.inverse(), w).is_identity());
  }
}

TEST_CASE("product, power, conjugate, abelianization properties") {
  std::mt19937 rng(7u);
  for (int i = 0; i < 1000; ++i) {
    const int rank = 2 + i % 4;
    const Word a = random_word(rng, rank, 1 + i % 23);
    const Word b = random_word(rng, rank, 1 + (i * 7) % 23);
    const Word c = random_word(rng, rank, 1 + (i * 13) % 23);
    CHECK(mul(mul(a, b), c) == mul(a, b, c));
    CHECK(mul(a, mul(b, c)) == mul(a, b, c));
    CHECK(pow(a, 3) == mul(a, a, a));
    CHECK(pow(a, -2) == mul(a, a).inverse());
    CHECK(pow(a, 0).is_identity());
    CHECK(conjugate(a, b) == mul(b, a, b.inverse()));
    CHECK(commutator(a, b) == mul(mul(a, b), mul(a.inverse(), b.inverse())));

    const auto va = abelianize(a), vb = abelianize(b);
    const auto vab = abelianize(mul(a, b));
    for (int k = 0; k < rank; ++k)
      CHECK(vab[static_cast<std::size_t>(k)] ==
            va[static_cast<std::size_t>(k)] + vb[static_cast<std::size_t>(k)]);
    CHECK(abelianize(commutator(a, b)) == std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
  }
}

TEST_CASE("cyclic words: conjugacy invariance") {
  CHECK(conjugacy_equal(Word(2, {1, 2}), Word(2, {2, 1})));
  CHECK_FALSE(conjugacy_equal(Word(2, {1}), Word(2, {2})));
  CHECK(cyclic_reduce(Word(2, {1, 2, -1})) == Word(2, {2}));
  CHECK(cyclic_reduce(Word(2, {1, 2, 1, -2, -1, -1})) == Word(2, {2, 1, -2, -1}));

  std::mt19937 rng(99u);
  for (int i = 0; i < 1000; ++i) {
    const int rank = 2 + i % 3;
    const Word w = random_word(rng, rank, 1 + i % 31);
    const Word g = random_word(rng, rank, 1 + (i * 11) % 31);
    CHECK(conjugacy_equal(w, conjugate(w, g)));
    CHECK(conjugacy_equal(w, conjugate(w.inverse(), g), /*oriented=*/false));
  }

  // a^2 b is not conjugate to its inverse, but is up to orientation.
  const Word w(2, {1, 1, 2});
  CHECK_FALSE(conjugacy_equal(w, w.inverse()));
  CHECK(conjugacy_equal(w, w.inverse(), /*oriented=*/false));
  CHECK(CyclicWord(w, false) == CyclicWord(w.inverse(), false));
}

TEST_CASE("word printing and parsing round-trip") {
  const std::vector<std::string> names = {"a1", "b1", "x2"};
  const Word w(3, {1, 2, 2, -1, 3});
  const std::string s = word_to_string(w, names);
  CHECK(s == "a1 b1^2 a1^-1 x2");
  CHECK(parse_word(3, s, names) == w);
  CHECK(word_to_string(Word(3), names) == "1");
  CHECK(parse_word(3, "1", names).is_identity());
  CHECK(parse_word(3, "a1^0", names).is_identity());
  CHECK_THROWS_AS(parse_word(3, "q", names), bad_word);
  CHECK_THROWS_AS(parse_word(3, "a1^", names), bad_word);

  std::mt19937 rng(3u);
  for (int i = 0; i < 1000; ++i) {
    const Word u = random_word(rng, 3, i % 41);
    CHECK(parse_word(3, word_to_string(u, names), names) == u);
  }
}

TEST_CASE("automorphisms: construction and validation") {
  const auto id = FreeAutomorphism::identity(3);
  CHECK(id.is_identity());
  const Word w(3, {1, 2, -1});
  CHECK(id.apply(w) == w);

  // Swap of two generators is its own inverse.
  const auto swap01 = FreeAutomorphism::from_images(
      {Word(2, {2}), Word(2, {1})}, {Word(2, {2}), Word(2, {1})});
  CHECK(swap01.apply(Word(2, {1, 2})) == Word(2, {2, 1}));
  CHECK(compose(swap01, swap01).is_identity());

  // Tables that are not mutually inverse must be rejected.
  CHECK_THROWS_AS(FreeAutomorphism::from_images(
                      {Word(2, {1, 2}), Word(2, {2})}, {Word(2, {1}), Word(2, {2})}),
                  bad_word);
  // a ↦ a^2 is an endomorphism but no automorphism; no valid inverse exists.
  CHECK_THROWS_AS(FreeAutomorphism::from_images(
                      {Word(1, {1, 1})}, {Word(1, {1})}),
                  bad_word);
}

TEST_CASE("automorphisms: inner, inverse, composition convention") {
  std::mt19937 rng(41u);
  for (int i = 0; i < 300; ++i) {
    const int rank = 2 + i % 3;
    const Word u = random_word(rng, rank, 1 + i % 17);
    const Word v = random_word(rng, rank, 1 + (i * 5) % 17);
    const Word w = random_word(rng, rank, 1 + (i * 3) % 29);

    const auto f = FreeAutomorphism::inner(u);
    CHECK(f.apply(w) == conjugate(w, u));
    CHECK(f.apply_inverse(f.apply(w)) == w);
    CHECK(f.inverse().apply(w) == mul(u.inverse(), w, u));

    // compose(f, g) applies g first.
    const auto g = FreeAutomorphism::inner(v);
    CHECK(compose(f, g).apply(w) == f.apply(g.apply(w)));
    CHECK(compose(f, g) == FreeAutomorphism::inner(mul(u, v)));
    CHECK(commutator(f, g) == FreeAutomorphism::inner(commutator(u, v)));
    CHECK(pow(f, 3) == FreeAutomorphism::inner(pow(u, 3)));
    CHECK(pow(f, -2) == FreeAutomorphism::inner(pow(u, -2)));
  }
}

TEST_CASE("automorphisms: twist pair satisfies the braid relation and fixes the boundary word") {
  const auto ta = pair_twist(2, 0, /*rim=*/true);   // b ↦ b a^{-1}
  const auto tb = pair_twist(2, 0, /*rim=*/false);  // a ↦ a b
  const Word a = Word::generator(2, 0, +1);
  const Word b = Word::generator(2, 1, +1);
  const Word d = commutator(a, b);

  CHECK(compose(ta, compose(tb, ta)) == compose(tb, compose(ta, tb)));
  CHECK(ta.apply(d) == d);
  CHECK(tb.apply(d) == d);

  // The 6th power of t_a t_b is the positive boundary twist: conjugation by
  // [a,b]. This pins the sign conventions used throughout.
  const auto sixth = pow(compose(ta, tb), 6);
  CHECK(sixth == FreeAutomorphism::inner(d));
  CHECK_FALSE(sixth == FreeAutomorphism::inner(d.inverse()));
  CHECK(pow(compose(tb, ta), 6) == FreeAutomorphism::inner(d));
}

TEST_CASE("commutator identities hold on free generators (proof instances)") {
  const Word a = Word::generator(4, 0), b = Word::generator(4, 1),
             c = Word::generator(4, 2), d = Word::generator(4, 3);
  CHECK(hall_witt_identity(a, b, c).holds());
  CHECK(square_identity(a, b, c, d).holds());
  CHECK(triple_identity(a, b, c).holds());
  CHECK(two_term_identity(a, b, c).holds());
}

TEST_CASE("commutator identities hold for 10^3 random word triples/quadruples each") {
  std::mt19937 rng(20260814u);
  for (int i = 0; i < 1000; ++i) {
    const Word a = random_word(rng, 3, 1 + i % 19);
    const Word b = random_word(rng, 3, 1 + (i * 3) % 19);
    const Word c = random_word(rng, 3, 1 + (i * 7) % 19);
    const Word d = random_word(rng, 3, 1 + (i * 11) % 19);
    CHECK(hall_witt_identity(a, b, c).holds());
    CHECK(square_identity(a, b, c, d).holds());
    CHECK(triple_identity(a, b, c).holds());
    CHECK(two_term_identity(a, b, c).holds());
  }
  // Degenerate corner: all arguments trivial.
  const Word e(3);
  CHECK(square_identity(e, e, e, e).lhs.is_identity());
  CHECK(square_identity(e, e, e, e).holds());
}

TEST_CASE("commutator identities hold for automorphism arguments") {
  std::mt19937 rng(5u);
  for (int i = 0; i < 30; ++i) {
    const auto f = FreeAutomorphism::inner(random_word(rng, 2, 1 + i % 7));
    const auto g = pair_twist(2, 0, true);
    const auto h = pair_twist(2, 0, false);
    CHECK(hall_witt_identity(f, g, h).holds());
    CHECK(square_identity(f, g, h, f).holds());
    CHECK(triple_identity(f, g, h).holds());
    CHECK(two_term_identity(f, g, h).holds());
  }
  const std::vector<FreeAutomorphism> args = {
      pair_twist(2, 0, true), pair_twist(2, 0, false), FreeAutomorphism::identity(2)};
  CHECK(commutator_identity(CommIdentity::triple, args).holds());
  CHECK_THROWS_AS(commutator_identity(CommIdentity::square, args), std::invalid_argument);
}

TEST_CASE("commuting product identity: disjointly supported twists combine into one commutator") {
  // Two block pairs on a rank-4 free group with disjoint supports.
  const auto a1 = pair_twist(4, 0, true), b1 = pair_twist(4, 0, false);
  const auto a2 = pair_twist(4, 1, true), b2 = pair_twist(4, 1, false);
  const auto r = commuting_product_identity<FreeAutomorphism>({a1, a2}, {b1, b2});
  CHECK(r.holds());
  CHECK_FALSE(r.lhs.is_identity());

  // k=1 is a tautology.
  CHECK(commuting_product_identity<FreeAutomorphism>({a1}, {b1}).holds());

  // Overlapping supports violate the cross-commutation precondition.
  CHECK_THROWS_AS(commuting_product_identity<FreeAutomorphism>({a1, b1}, {b1, a1}),
                  precondition_error);
  CHECK_THROWS_AS(
      commuting_product_identity<Word>({Word(2, {1}), Word(2, {2})},
                                       {Word(2, {2}), Word(2, {1})}),
      precondition_error);

  // Word instance: powers of one root commute, both sides reduce equal.
  const Word w(2, {1, 2});
  const auto rw = commuting_product_identity<Word>({w, pow(w, 2)}, {pow(w, 3), w});
  CHECK(rw.holds());
}

TEST_CASE("single-commutator rearrangement of conjugate twist products") {
  const auto x1 = pair_twist(4, 0, true), x2 = pair_twist(4, 1, false);
  const Word u(4, {1, 3, -2});
  const auto F = FreeAutomorphism::inner(u);
  const auto y1 = conjugate(x1, F), y2 = conjugate(x2, F);

  const auto r = one_comm_identity<FreeAutomorphism>({x1, x2}, {2, -3}, F, {y1, y2});
  CHECK(r.holds());
  CHECK(r.rhs == commutator(mul(pow(x1, 2), pow(x2, -3)), F));

  // m=1 with F = identity and y = x: both sides trivial.
  const auto id = FreeAutomorphism::identity(4);
  const auto t = one_comm_identity<FreeAutomorphism>({x1}, {1}, id, {x1});
  CHECK(t.holds());
  CHECK(t.lhs.is_identity());

  // Declared images that are not the F-conjugates must be rejected.
  CHECK_THROWS_AS(one_comm_identity<FreeAutomorphism>({x1, x2}, {1, 1}, F, {y2, y1}),
                  precondition_error);
}

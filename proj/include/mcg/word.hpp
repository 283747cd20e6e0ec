#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcg {

// Letters of a free group word. +k / -k (k >= 1) denote the generator with
// zero-based index k-1 and its inverse. Words are kept freely reduced at all
// times; reduction only ever happens at junctions created by an operation.
using Letter = std::int32_t;

inline int letter_index(Letter l) { return (l > 0 ? l : -l) - 1; }
inline int letter_sign(Letter l) { return l > 0 ? +1 : -1; }

class bad_word : public std::runtime_error {
public:
  explicit bad_word(const std::string& what) : std::runtime_error(what) {}
};

class Word {
public:
  Word() = default;
  explicit Word(int rank) : rank_(check_rank(rank)) {}
  Word(int rank, std::initializer_list<Letter> ls)
      : Word(from_letters(rank, std::span<const Letter>(ls.begin(), ls.size()))) {}

  // Reduces the letter sequence. Throws bad_word on out-of-range letters.
  static Word from_letters(int rank, std::span<const Letter> ls);
  static Word generator(int rank, int index, int sign = +1);

  int rank() const { return rank_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter at(std::size_t i) const { return letters_[i]; }

  Word inverse() const;

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const Word& o) const { return !(*this == o); }

  std::size_t hash() const;

private:
  friend class WordBuilder;
  static int check_rank(int rank);

  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Accumulates a product of letters/words with cancellation at the junction,
// so that building a product of n pieces costs O(total length).
class WordBuilder {
public:
  explicit WordBuilder(int rank) : rank_(rank) {}

  void push(Letter l);
  void append(const Word& w, int sign = +1);  // sign=-1 appends w^{-1}
  void append(std::span<const Letter> ls);

  std::size_t size() const { return buf_.size(); }
  Word take();  // leaves the builder empty

private:
  int rank_;
  std::vector<Letter> buf_;
};

Word mul(const Word& a, const Word& b);
Word mul(const Word& a, const Word& b, const Word& c);
Word pow(const Word& a, int n);
// conjugate(a, b) = b a b^{-1}, matching the convention a^b = b a b^{-1}.
Word conjugate(const Word& a, const Word& b);
// commutator(a, b) = a b a^{-1} b^{-1}
Word commutator(const Word& a, const Word& b);

// Exponent-sum vector of length rank().
std::vector<std::int64_t> abelianize(const Word& w);

// A cyclic word: cyclically reduced, stored in a canonical rotation so that
// equality and hashing are plain sequence operations. With oriented=false the
// canonical form also quotients by inversion (free homotopy classes of
// unoriented curves).
class CyclicWord {
public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w, bool oriented = true);

  int rank() const { return rank_; }
  bool oriented() const { return oriented_; }
  std::size_t size() const { return letters_.size(); }
  std::span<const Letter> letters() const { return letters_; }
  bool is_trivial() const { return letters_.empty(); }

  bool operator==(const CyclicWord& o) const {
    return rank_ == o.rank_ && oriented_ == o.oriented_ && letters_ == o.letters_;
  }
  bool operator!=(const CyclicWord& o) const { return !(*this == o); }

  std::size_t hash() const;

private:
  int rank_ = 0;
  bool oriented_ = true;
  std::vector<Letter> letters_;
};

// True if a and b are conjugate in the free group. oriented=false also
// accepts conjugates of the inverse.
bool conjugacy_equal(const Word& a, const Word& b, bool oriented = true);

// Cyclic reduction helper: returns u with w = c u c^{-1}, u cyclically reduced.
Word cyclic_reduce(const Word& w);

// Printing / parsing against a generator name table ("a1 b1^-1 ...", "1" for
// the identity). parse_word throws bad_word with a position on bad input.
std::string word_to_string(const Word& w, std::span<const std::string> names);
Word parse_word(int rank, const std::string& text, std::span<const std::string> names);

}  // namespace mcg

template <>
struct std::hash<mcg::Word> {
  std::size_t operator()(const mcg::Word& w) const { return w.hash(); }
};
template <>
struct std::hash<mcg::CyclicWord> {
  std::size_t operator()(const mcg::CyclicWord& w) const { return w.hash(); }
};

#include "mcg/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mcg {

int Word::check_rank(int rank) {
  if (rank < 0) throw bad_word("negative rank");
  return rank;
}

Word Word::from_letters(int rank, std::span<const Letter> ls) {
  check_rank(rank);
  WordBuilder b(rank);
  for (Letter l : ls) {
    if (l == 0 || letter_index(l) >= rank)
      throw bad_word("letter out of range for rank " + std::to_string(rank));
    b.push(l);
  }
  return b.take();
}

Word Word::generator(int rank, int index, int sign) {
  if (index < 0 || index >= rank) throw bad_word("generator index out of range");
  if (sign != 1 && sign != -1) throw bad_word("generator sign must be +-1");
  Word w(rank);
  w.letters_.push_back(sign * (index + 1));
  return w;
}

Word Word::inverse() const {
  Word w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

std::size_t Word::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(rank_);
  for (Letter l : letters_) h = h * 1099511628211ull + static_cast<std::size_t>(l + (1 << 20));
  return h;
}

void WordBuilder::push(Letter l) {
  if (!buf_.empty() && buf_.back() == -l)
    buf_.pop_back();
  else
    buf_.push_back(l);
}

void WordBuilder::append(const Word& w, int sign) {
  if (w.rank() != rank_) throw bad_word("rank mismatch in product");
  if (sign == +1) {
    for (Letter l : w.letters()) push(l);
  } else {
    auto ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) push(-*it);
  }
}

void WordBuilder::append(std::span<const Letter> ls) {
  for (Letter l : ls) push(l);
}

Word WordBuilder::take() {
  Word w(rank_);
  w.letters_ = std::move(buf_);
  buf_.clear();
  return w;
}

Word mul(const Word& a, const Word& b) {
  WordBuilder bd(a.rank());
  bd.append(a);
  bd.append(b);
  return bd.take();
}

Word mul(const Word& a, const Word& b, const Word& c) {
  WordBuilder bd(a.rank());
  bd.append(a);
  bd.append(b);
  bd.append(c);
  return bd.take();
}

Word pow(const Word& a, int n) {
  WordBuilder bd(a.rank());
  int sign = n < 0 ? -1 : +1;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) bd.append(a, sign);
  return bd.take();
}

Word conjugate(const Word& a, const Word& b) {
  WordBuilder bd(a.rank());
  bd.append(b);
  bd.append(a);
  bd.append(b, -1);
  return bd.take();
}

Word commutator(const Word& a, const Word& b) {
  WordBuilder bd(a.rank());
  bd.append(a);
  bd.append(b);
  bd.append(a, -1);
  bd.append(b, -1);
  return bd.take();
}

std::vector<std::int64_t> abelianize(const Word& w) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(w.rank()), 0);
  for (Letter l : w.letters()) v[static_cast<std::size_t>(letter_index(l))] += letter_sign(l);
  return v;
}

Word cyclic_reduce(const Word& w) {
  auto ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (j > i + 1 && ls[i] == -ls[j - 1]) {
    ++i;
    --j;
  }
  return Word::from_letters(w.rank(), ls.subspan(i, j - i));
}

namespace {

// Lexicographically least rotation (two-pointer duel, O(n)).
std::vector<Letter> least_rotation(std::vector<Letter> s) {
  const std::size_t n = s.size();
  if (n < 2) return s;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i = i + k + 1;
    else
      j = j + k + 1;
    if (i == j) ++j;
    k = 0;
  }
  std::size_t best = std::min(i, j);
  std::vector<Letter> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = s[(best + t) % n];
  return out;
}

}  // namespace

CyclicWord::CyclicWord(const Word& w, bool oriented) : rank_(w.rank()), oriented_(oriented) {
  Word u = cyclic_reduce(w);
  std::vector<Letter> fwd(u.letters().begin(), u.letters().end());
  fwd = least_rotation(std::move(fwd));
  if (!oriented) {
    Word ui = u.inverse();  // inverse of a cyclically reduced word is cyclically reduced
    std::vector<Letter> bwd(ui.letters().begin(), ui.letters().end());
    bwd = least_rotation(std::move(bwd));
    if (std::lexicographical_compare(bwd.begin(), bwd.end(), fwd.begin(), fwd.end())) fwd = std::move(bwd);
  }
  letters_ = std::move(fwd);
}

std::size_t CyclicWord::hash() const {
  std::size_t h = 0xc2b2ae3d27d4eb4full ^ static_cast<std::size_t>(rank_) ^ (oriented_ ? 7u : 0u);
  for (Letter l : letters_) h = h * 1099511628211ull + static_cast<std::size_t>(l + (1 << 20));
  return h;
}

bool conjugacy_equal(const Word& a, const Word& b, bool oriented) {
  if (a.rank() != b.rank()) throw bad_word("rank mismatch in conjugacy test");
  return CyclicWord(a, oriented) == CyclicWord(b, oriented);
}

std::string word_to_string(const Word& w, std::span<const std::string> names) {
  if (static_cast<int>(names.size()) < w.rank()) throw bad_word("name table too short");
  if (w.is_identity()) return "1";
  std::ostringstream os;
  auto ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    int run = static_cast<int>(j - i);
    if (i) os << ' ';
    os << names[static_cast<std::size_t>(letter_index(ls[i]))];
    int e = letter_sign(ls[i]) * run;
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

Word parse_word(int rank, const std::string& text, std::span<const std::string> names) {
  WordBuilder bd(rank);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& msg) {
    throw bad_word("parse_word: " + msg + " at offset " + std::to_string(pos));
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '1' &&
      (pos + 1 == text.size() || text[pos + 1] == ' ')) {
    ++pos;
    skip_ws();
    if (pos == text.size()) return bd.take();
    fail("unexpected text after identity");
  }
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected generator name");
    std::string name = text.substr(start, pos - start);
    int idx = -1;
    for (std::size_t k = 0; k < names.size() && static_cast<int>(k) < rank; ++k)
      if (names[k] == name) {
        idx = static_cast<int>(k);
        break;
      }
    if (idx < 0) fail("unknown generator '" + name + "'");
    int exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
      std::size_t dstart = pos;
      int val = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        val = val * 10 + (text[pos++] - '0');
      if (pos == dstart) fail("expected exponent");
      exp = neg ? -val : val;
    }
    Letter l = static_cast<Letter>(idx + 1);
    for (int k = 0; k < (exp < 0 ? -exp : exp); ++k) bd.push(exp < 0 ? -l : l);
  }
  return bd.take();
}

}  // namespace mcg

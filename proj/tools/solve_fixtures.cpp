// Development-time constrained search that finds (and certifies) the frozen
// twist formulas used by the fixtures module:
//   phase "conn":    the connector twist through two adjacent handles
//   phase "lantern": the four-holed-sphere pair-enclosing twists x, y, z
// Run once, transcribe the printed tables into src/atlas_fixtures.cpp.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcg/fixtures.hpp"

using namespace mcg;

namespace {

long rss_mb() {
  std::FILE* f = std::fopen("/proc/self/statm", "r");
  if (!f) return -1;
  long total = 0, rss = 0;
  if (std::fscanf(f, "%ld %ld", &total, &rss) != 2) rss = -1;
  std::fclose(f);
  return rss > 0 ? rss * 4096 / (1024 * 1024) : -1;
}

std::string letters_str(const Word& w) {
  std::string out = "{";
  bool first = true;
  for (Letter l : w.letters()) {
    if (!first) out += ", ";
    out += std::to_string(l);
    first = false;
  }
  return out + "}";
}

std::vector<Word> short_words(int rank, int maxlen) {
  std::vector<Word> out;
  out.push_back(Word::from_letters(rank, {}));
  std::vector<std::vector<Letter>> cur;
  cur.push_back({});
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& base : cur) {
      for (int idx = 0; idx < rank; ++idx) {
        for (int sgn : {+1, -1}) {
          Letter l = static_cast<Letter>(sgn * (idx + 1));
          if (!base.empty() && base.back() == -l) continue;
          auto w = base;
          w.push_back(l);
          out.push_back(Word::from_letters(rank, w));
          next.push_back(std::move(w));
        }
      }
    }
    cur = std::move(next);
  }
  return out;
}

bool commute(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, g) == compose(g, f);
}

bool braid(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, compose(g, f)) == compose(g, compose(f, g));
}

FreeAutomorphism chain_product(const std::vector<FreeAutomorphism>& fs) {
  FreeAutomorphism p = FreeAutomorphism::identity(fs.front().rank());
  for (const auto& f : fs) p = compose(p, f);  // left-to-right reading
  return p;
}

// Iterative power with a growth cap; nullopt means the images exploded (so
// the base is certainly not a root of a short inner automorphism).
std::optional<FreeAutomorphism> capped_power(const FreeAutomorphism& f, int n,
                                             std::size_t cap = 4096) {
  FreeAutomorphism p = FreeAutomorphism::identity(f.rank());
  for (int i = 0; i < n; ++i) {
    p = compose(p, f);
    if (p.max_image_size() > cap) return std::nullopt;
  }
  return p;
}

std::string power_verdict(const FreeAutomorphism& base, int n, const Word& d) {
  auto p = capped_power(base, n);
  if (!p) return "exploded";
  if (*p == FreeAutomorphism::inner(d)) return "inner(d)";
  if (*p == FreeAutomorphism::inner(d.inverse())) return "inner(d^-1)";
  return "neither";
}

struct ConnCandidate {
  Word rep;
  FreeAutomorphism fwd, bwd;
  std::string params;
};

// Insertion-form candidate: generator i1 gets X inserted (left or right),
// generator i2 gets Y; all other generators fixed.
FreeAutomorphism insertion_auto(const SurfaceCtx& s, int i1, int i2, const Word& x, bool x_left,
                                const Word& y, bool y_left, const Word& xi, const Word& yi) {
  std::vector<Word> fwd, bwd;
  for (int i = 0; i < s.rank(); ++i) {
    fwd.push_back(s.gen(i));
    bwd.push_back(s.gen(i));
  }
  auto place = [](const Word& g, const Word& ins, bool left) {
    return left ? mul(ins, g) : mul(g, ins);
  };
  fwd[static_cast<std::size_t>(i1)] = place(s.gen(i1), x, x_left);
  fwd[static_cast<std::size_t>(i2)] = place(s.gen(i2), y, y_left);
  bwd[static_cast<std::size_t>(i1)] = place(s.gen(i1), xi, x_left);
  bwd[static_cast<std::size_t>(i2)] = place(s.gen(i2), yi, y_left);
  return FreeAutomorphism::unchecked(s.rank(), std::move(fwd), std::move(bwd));
}

bool mutually_inverse(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  return compose(f, g).is_identity() && compose(g, f).is_identity();
}

void solve_connector() {
  const SurfaceCtx s = SurfaceCtx::make(2, 1);
  const Word d = s.boundary_word(1);
  const bool dual = std::getenv("DUAL") != nullptr;  // insertions on b's, class a1+a2
  const int wlen = std::getenv("WLEN") ? std::atoi(std::getenv("WLEN")) : 3;
  const int plen = std::getenv("PLEN") ? std::atoi(std::getenv("PLEN")) : 2;
  const auto wcands = short_words(s.rank(), wlen);
  const auto cands = short_words(s.rank(), plen);
  const FreeAutomorphism r1 = rim_twist(s, 1), r2 = rim_twist(s, 2);
  const FreeAutomorphism th1 = through_twist(s, 1), th2 = through_twist(s, 2);

  // Moving generators receive the insertion; the core (curve word) is built
  // from the fixed generators of the two handles.
  auto mov_index = [&](int i) { return dual ? s.b_index(i) : s.a_index(i); };
  auto mov = [&](int i) { return dual ? s.b(i) : s.a(i); };
  auto other = [&](int i, int sign = +1) { return dual ? s.a(i, sign) : s.b(i, sign); };

  std::vector<ConnCandidate> found;
  auto chunk = [&](const Word& image_m, int i) {
    // The handle-i commutator factor of the image of delta.
    return dual ? mul(mul(other(i), image_m), mul(other(i, -1), image_m.inverse()))
                : mul(mul(image_m, other(i)), mul(image_m.inverse(), other(i, -1)));
  };

  long tested = 0;
  long stage[7] = {0, 0, 0, 0, 0, 0, 0};
  struct YKey {
    std::size_t qi;
    int sgn;
    bool y_left;
  };
  std::size_t wdone = 0;
  for (const auto& w : wcands) {
    if (++wdone % 20 == 0) {
      std::cerr << "  ...w " << wdone << "/" << wcands.size() << " found=" << found.size()
                << " rss=" << rss_mb() << "MB stages:";
      for (long c : stage) std::cerr << " " << c;
      std::cerr << "\n";
    }
    for (int eta : {-1, +1}) {
      const Word core = mul(mul(other(1), w), mul(other(2, eta), w.inverse()));
      if (static_cast<int>(core.letters().size()) < 2) continue;
      const Word core_pow[2] = {core.inverse(), core};  // index by (sgn+1)/2
      // Index all (Q, sign, side) by the delta chunk they produce on handle 2.
      std::unordered_map<Word, std::vector<YKey>> by_chunk;
      for (std::size_t qi = 0; qi < cands.size(); ++qi)
        for (int sgn : {-1, +1}) {
          const Word y = mul(mul(cands[qi], core_pow[(sgn + 1) / 2]), cands[qi].inverse());
          for (bool y_left : {false, true}) {
            const Word img = y_left ? mul(y, mov(2)) : mul(mov(2), y);
            by_chunk[chunk(img, 2)].push_back({qi, sgn, y_left});
          }
        }
      for (std::size_t pi = 0; pi < cands.size(); ++pi)
        for (int sgn : {-1, +1}) {
          const Word x = mul(mul(cands[pi], core_pow[(sgn + 1) / 2]), cands[pi].inverse());
          const Word xneg = mul(mul(cands[pi], core_pow[(1 - sgn) / 2]), cands[pi].inverse());
          for (bool x_left : {false, true}) {
            ++tested;
            const Word img = x_left ? mul(x, mov(1)) : mul(mov(1), x);
            const Word need = mul(chunk(img, 1).inverse(), d);
            auto it = by_chunk.find(need);
            if (it == by_chunk.end()) continue;
            for (const auto& yk : it->second) {
              const Word y =
                  mul(mul(cands[yk.qi], core_pow[(yk.sgn + 1) / 2]), cands[yk.qi].inverse());
              const Word yneg =
                  mul(mul(cands[yk.qi], core_pow[(1 - yk.sgn) / 2]), cands[yk.qi].inverse());
              FreeAutomorphism f = insertion_auto(s, mov_index(1), mov_index(2), x, x_left, y,
                                                  yk.y_left, xneg, yneg);
              FreeAutomorphism g = insertion_auto(s, mov_index(1), mov_index(2), xneg, x_left,
                                                  yneg, yk.y_left, x, y);
              ++stage[0];
              if (!mutually_inverse(f, g)) continue;
              ++stage[1];
              if (!(f.apply(d) == d)) continue;
              ++stage[2];
              if (abelianization_matrix(f) != transvection_matrix(s, abelianize(core))) continue;
              ++stage[3];
              if (CyclicWord(f.apply(core), false) != CyclicWord(core, false)) continue;
              ++stage[4];
              if (dual ? (!braid(f, th1) || !braid(f, th2)) : (!braid(f, r1) || !braid(f, r2)))
                continue;
              ++stage[5];
              if (dual ? (!commute(f, r1) || !commute(f, r2))
                       : (!commute(f, th1) || !commute(f, th2)))
                continue;
              ++stage[6];
              bool dup = false;
              for (const auto& c : found) dup = dup || c.fwd == f;
              if (dup) continue;
              std::string params = std::string(dual ? "[dual] " : "") +
                                   "w=" + word_to_string(w, s.names()) +
                                   " eta=" + std::to_string(eta) +
                                   " s=" + std::to_string(sgn) +
                                   " P=" + word_to_string(cands[pi], s.names()) +
                                   " xpos=" + (x_left ? "L" : "R") +
                                   " ysgn=" + std::to_string(yk.sgn) +
                                   " Q=" + word_to_string(cands[yk.qi], s.names()) +
                                   " ypos=" + (yk.y_left ? "L" : "R");
              found.push_back({core, f, g, params});
            }
          }
        }
    }
  }
  std::cout << "connector candidates tested: " << tested << ", survivors: " << found.size()
            << "\n";
  std::cout << "stage counts (chunk-match, inverse, delta, transvection, class, braid, commute): ";
  for (long c : stage) std::cout << c << " ";
  std::cout << "\n\n";

  // Chain certificates on S2_1 and cross-handle checks on S3_1.
  const SurfaceCtx s3 = SurfaceCtx::make(3, 1);
  auto transpose = [&](const Word& w, int handle) {
    // pattern letters over (a1,b1,a2,b2) -> (a_h, b_h, a_{h+1}, b_{h+1})
    const int base[4] = {s3.a_index(handle), s3.b_index(handle), s3.a_index(handle + 1),
                         s3.b_index(handle + 1)};
    WordBuilder b(s3.rank());
    for (Letter l : w.letters())
      b.push(static_cast<Letter>(letter_sign(l) * (base[letter_index(l)] + 1)));
    return b.take();
  };

  for (const auto& c : found) {
    std::cout << "== candidate: " << c.params << "\n";
    std::cout << "  rep  " << word_to_string(c.rep, s.names()) << "  letters "
              << letters_str(c.rep) << "\n";
    for (int h : {1, 2}) {
      std::cout << "  fwd " << s.name(mov_index(h)) << " -> "
                << word_to_string(c.fwd.image(mov_index(h)), s.names()) << "  letters "
                << letters_str(c.fwd.image(mov_index(h))) << "\n";
      std::cout << "  bwd " << s.name(mov_index(h)) << " -> "
                << word_to_string(c.bwd.image(mov_index(h)), s.names()) << "  letters "
                << letters_str(c.bwd.image(mov_index(h))) << "\n";
    }

    for (bool reversed : {false, true}) {
      std::vector<FreeAutomorphism> seq =
          dual ? std::vector<FreeAutomorphism>{rim_twist(s, 1), through_twist(s, 1), c.fwd,
                                               through_twist(s, 2)}
               : std::vector<FreeAutomorphism>{through_twist(s, 1), rim_twist(s, 1), c.fwd,
                                               rim_twist(s, 2)};
      if (reversed) std::reverse(seq.begin(), seq.end());
      std::cout << "  chain10 " << (reversed ? "(reversed)" : "(forward) ") << ": "
                << power_verdict(chain_product(seq), 10, d) << std::endl;
    }

    // Genus-3 transposition: adjacent connectors must commute, 6-chain.
    auto mov3 = [&](int i) { return dual ? s3.b_index(i) : s3.a_index(i); };
    auto lens_auto = [&](int handle, bool forward) {
      std::vector<Word> fwd, bwd;
      for (int i = 0; i < s3.rank(); ++i) {
        fwd.push_back(s3.gen(i));
        bwd.push_back(s3.gen(i));
      }
      const auto& src = forward ? c.fwd : c.bwd;
      const auto& dst_b = forward ? c.bwd : c.fwd;
      fwd[static_cast<std::size_t>(mov3(handle))] = transpose(src.image(mov_index(1)), handle);
      fwd[static_cast<std::size_t>(mov3(handle + 1))] = transpose(src.image(mov_index(2)), handle);
      bwd[static_cast<std::size_t>(mov3(handle))] = transpose(dst_b.image(mov_index(1)), handle);
      bwd[static_cast<std::size_t>(mov3(handle + 1))] =
          transpose(dst_b.image(mov_index(2)), handle);
      return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
    };
    const FreeAutomorphism l1 = lens_auto(1, true), l2 = lens_auto(2, true);
    std::cout << "  genus3: l1 l2 commute: " << (commute(l1, l2) ? "yes" : "NO") << std::endl;
    const Word d3 = s3.boundary_word(1);
    for (bool reversed : {false, true}) {
      std::vector<FreeAutomorphism> seq =
          dual ? std::vector<FreeAutomorphism>{rim_twist(s3, 1), through_twist(s3, 1), l1,
                                               through_twist(s3, 2), l2, through_twist(s3, 3)}
               : std::vector<FreeAutomorphism>{through_twist(s3, 1), rim_twist(s3, 1), l1,
                                               rim_twist(s3, 2), l2, rim_twist(s3, 3)};
      if (reversed) std::reverse(seq.begin(), seq.end());
      std::cout << "  chain14 " << (reversed ? "(reversed)" : "(forward) ") << ": "
                << power_verdict(chain_product(seq), 14, d3) << std::endl;
    }
    std::cout << std::endl;
  }
}

// ---------------------------------------------------------------------------

// Frozen genus-2 connector pattern (output of the conn phase), letters over
// (a1, b1, a2, b2) = (1, 2, 3, 4).
const std::vector<Letter> kRep = {2, -1, -2, 3, 4, -3, 2, 1};
const std::vector<Letter> kFwdA1 = {1, 2, -1, -2, 3, 4, -3, 2, 1};
const std::vector<Letter> kFwdA2 = {2, 1, 2, -1, -2, 3, 4};
const std::vector<Letter> kBwdA1 = {-2, 3, -4, -3, 2, 1, -2};
const std::vector<Letter> kBwdA2 = {3, -4, -3, 2, 1, -2, -1, -2, 3};

Word transpose_pattern(const SurfaceCtx& s, const std::vector<Letter>& pat, int handle) {
  const int base[4] = {s.a_index(handle), s.b_index(handle), s.a_index(handle + 1),
                       s.b_index(handle + 1)};
  WordBuilder b(s.rank());
  for (Letter l : pat) b.push(static_cast<Letter>(letter_sign(l) * (base[letter_index(l)] + 1)));
  return b.take();
}

FreeAutomorphism pattern_twist(const SurfaceCtx& s, int handle, bool forward) {
  std::vector<Word> fwd, bwd;
  for (int i = 0; i < s.rank(); ++i) {
    fwd.push_back(s.gen(i));
    bwd.push_back(s.gen(i));
  }
  const auto& f1 = forward ? kFwdA1 : kBwdA1;
  const auto& f2 = forward ? kFwdA2 : kBwdA2;
  const auto& g1 = forward ? kBwdA1 : kFwdA1;
  const auto& g2 = forward ? kBwdA2 : kFwdA2;
  fwd[static_cast<std::size_t>(s.a_index(handle))] = transpose_pattern(s, f1, handle);
  fwd[static_cast<std::size_t>(s.a_index(handle + 1))] = transpose_pattern(s, f2, handle);
  bwd[static_cast<std::size_t>(s.a_index(handle))] = transpose_pattern(s, g1, handle);
  bwd[static_cast<std::size_t>(s.a_index(handle + 1))] = transpose_pattern(s, g2, handle);
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

// Search a conjugation dressing C with t_2' = inner(C) t_2 inner(C)^{-1}
// completing the 6-chain on the genus-3 surface.
void solve_conn2() {
  const SurfaceCtx s3 = SurfaceCtx::make(3, 1);
  const Word d3 = s3.boundary_word(1);
  const FreeAutomorphism l1 = pattern_twist(s3, 1, true);
  const FreeAutomorphism l2_0 = pattern_twist(s3, 2, true);
  const FreeAutomorphism r1 = rim_twist(s3, 1), r2 = rim_twist(s3, 2), r3 = rim_twist(s3, 3);
  const FreeAutomorphism th1 = through_twist(s3, 1), th2 = through_twist(s3, 2),
                          th3 = through_twist(s3, 3);

  const int clen = std::getenv("CLEN") ? std::atoi(std::getenv("CLEN")) : 4;
  const auto cs = short_words(s3.rank(), clen);
  std::cout << "conjugator candidates: " << cs.size() << std::endl;
  long hits = 0;
  for (const auto& c : cs) {
    const FreeAutomorphism ic = FreeAutomorphism::inner(c);
    const FreeAutomorphism l2 = compose(ic, compose(l2_0, ic.inverse()));
    if (!commute(l1, l2)) continue;
    if (!braid(l2, r2) || !braid(l2, r3)) continue;
    if (!commute(l2, th2) || !commute(l2, th3)) continue;
    if (!commute(l2, r1) || !commute(l2, th1)) continue;
    std::vector<FreeAutomorphism> seq = {th1, r1, l1, r2, l2, r3};
    const std::string v_fwd = power_verdict(chain_product(seq), 14, d3);
    std::reverse(seq.begin(), seq.end());
    const std::string v_rev = power_verdict(chain_product(seq), 14, d3);
    ++hits;
    const Word rep2 = mul(mul(c, transpose_pattern(s3, kRep, 2)), c.inverse());
    std::cout << "C = " << word_to_string(c, s3.names()) << "  chain14 fwd=" << v_fwd
              << " rev=" << v_rev << "\n";
    if (v_fwd == "inner(d)" || v_rev == "inner(d)") {
      std::cout << "  rep2 " << word_to_string(rep2, s3.names()) << "  letters "
                << letters_str(rep2) << "\n";
      for (int i : {s3.a_index(2), s3.a_index(3)}) {
        std::cout << "  fwd " << s3.name(i) << " -> " << word_to_string(l2.image(i), s3.names())
                  << "  letters " << letters_str(l2.image(i)) << "\n";
        std::cout << "  bwd " << s3.name(i) << " -> "
                  << word_to_string(l2.preimage(i), s3.names()) << "  letters "
                  << letters_str(l2.preimage(i)) << "\n";
      }
    }
  }
  std::cout << "total battery-passing conjugators: " << hits << std::endl;
}

// Full meet-in-the-middle search for the second connector on the genus-3
// surface: insertions on a2, a3, all other generators fixed exactly.
void solve_conn2_full() {
  const SurfaceCtx s = SurfaceCtx::make(3, 1);
  const Word d = s.boundary_word(1);
  const FreeAutomorphism l1 = pattern_twist(s, 1, true);
  const FreeAutomorphism r1 = rim_twist(s, 1), r2 = rim_twist(s, 2), r3 = rim_twist(s, 3);
  const FreeAutomorphism th1 = through_twist(s, 1), th2 = through_twist(s, 2),
                          th3 = through_twist(s, 3);
  const Word target = mul(commutator(s.a(2), s.b(2)), commutator(s.a(3), s.b(3)));

  const int wlen = std::getenv("WLEN") ? std::atoi(std::getenv("WLEN")) : 3;
  const int plen = std::getenv("PLEN") ? std::atoi(std::getenv("PLEN")) : 3;
  const auto wcands = short_words(s.rank(), wlen);
  const auto cands = short_words(s.rank(), plen);
  std::cout << "w candidates: " << wcands.size() << ", conj candidates: " << cands.size()
            << std::endl;

  auto chunk = [&](const Word& image_a, const Word& b) {
    return mul(mul(image_a, b), mul(image_a.inverse(), b.inverse()));
  };
  auto place = [](const Word& g, const Word& ins, bool left) {
    return left ? mul(ins, g) : mul(g, ins);
  };
  auto build = [&](const Word& x, bool x_left, const Word& y, bool y_left, const Word& xi,
                   const Word& yi) {
    std::vector<Word> fwd, bwd;
    for (int i = 0; i < s.rank(); ++i) {
      fwd.push_back(s.gen(i));
      bwd.push_back(s.gen(i));
    }
    fwd[static_cast<std::size_t>(s.a_index(2))] = place(s.a(2), x, x_left);
    fwd[static_cast<std::size_t>(s.a_index(3))] = place(s.a(3), y, y_left);
    bwd[static_cast<std::size_t>(s.a_index(2))] = place(s.a(2), xi, x_left);
    bwd[static_cast<std::size_t>(s.a_index(3))] = place(s.a(3), yi, y_left);
    return FreeAutomorphism::unchecked(s.rank(), std::move(fwd), std::move(bwd));
  };

  struct YKey {
    std::size_t qi;
    int sgn;
    bool y_left;
  };
  long stage[8] = {0};
  std::vector<FreeAutomorphism> found;
  std::size_t wdone = 0;
  for (const auto& w : wcands) {
    if (++wdone % 100 == 0) {
      std::cerr << "  ...w " << wdone << "/" << wcands.size() << " found=" << found.size()
                << " rss=" << rss_mb() << "MB stages:";
      for (long c : stage) std::cerr << " " << c;
      std::cerr << std::endl;
    }
    for (int eta : {-1, +1}) {
      const Word core = mul(mul(s.b(2), w), mul(s.b(3, eta), w.inverse()));
      if (static_cast<int>(core.letters().size()) < 2) continue;
      const Word core_pow[2] = {core.inverse(), core};
      std::unordered_map<Word, std::vector<YKey>> by_chunk;
      for (std::size_t qi = 0; qi < cands.size(); ++qi)
        for (int sgn : {-1, +1}) {
          const Word y = mul(mul(cands[qi], core_pow[(sgn + 1) / 2]), cands[qi].inverse());
          for (bool y_left : {false, true}) {
            const Word img = y_left ? mul(y, s.a(3)) : mul(s.a(3), y);
            by_chunk[chunk(img, s.b(3))].push_back({qi, sgn, y_left});
          }
        }
      for (std::size_t pi = 0; pi < cands.size(); ++pi)
        for (int sgn : {-1, +1}) {
          const Word x = mul(mul(cands[pi], core_pow[(sgn + 1) / 2]), cands[pi].inverse());
          const Word xneg = mul(mul(cands[pi], core_pow[(1 - sgn) / 2]), cands[pi].inverse());
          for (bool x_left : {false, true}) {
            const Word img = x_left ? mul(x, s.a(2)) : mul(s.a(2), x);
            const Word need = mul(chunk(img, s.b(2)).inverse(), target);
            auto it = by_chunk.find(need);
            if (it == by_chunk.end()) continue;
            for (const auto& yk : it->second) {
              const Word y =
                  mul(mul(cands[yk.qi], core_pow[(yk.sgn + 1) / 2]), cands[yk.qi].inverse());
              const Word yneg =
                  mul(mul(cands[yk.qi], core_pow[(1 - yk.sgn) / 2]), cands[yk.qi].inverse());
              FreeAutomorphism f = build(x, x_left, y, yk.y_left, xneg, yneg);
              FreeAutomorphism g = build(xneg, x_left, yneg, yk.y_left, x, y);
              ++stage[0];
              if (!mutually_inverse(f, g)) continue;
              ++stage[1];
              if (!(f.apply(d) == d)) continue;
              ++stage[2];
              if (abelianization_matrix(f) != transvection_matrix(s, abelianize(core))) continue;
              ++stage[3];
              if (CyclicWord(f.apply(core), false) != CyclicWord(core, false)) continue;
              ++stage[4];
              if (!braid(f, r2) || !braid(f, r3)) continue;
              ++stage[5];
              if (!commute(f, th2) || !commute(f, th3)) continue;
              ++stage[6];
              if (!commute(f, r1) || !commute(f, th1) || !commute(f, l1)) continue;
              ++stage[7];
              bool dup = false;
              for (const auto& h : found) dup = dup || h == f;
              if (dup) continue;
              found.push_back(f);
              std::cout << "== conn2 candidate: w=" << word_to_string(w, s.names())
                        << " eta=" << eta << " core=" << word_to_string(core, s.names())
                        << "\n";
              std::cout << "  rep letters " << letters_str(core) << "\n";
              for (int idx : {s.a_index(2), s.a_index(3)}) {
                std::cout << "  fwd " << s.name(idx) << " -> "
                          << word_to_string(f.image(idx), s.names()) << "  letters "
                          << letters_str(f.image(idx)) << "\n";
                std::cout << "  bwd " << s.name(idx) << " -> "
                          << word_to_string(f.preimage(idx), s.names()) << "  letters "
                          << letters_str(f.preimage(idx)) << "\n";
              }
              std::vector<FreeAutomorphism> seq = {th1, r1, l1, r2, f, r3};
              std::cout << "  chain14 (forward) : " << power_verdict(chain_product(seq), 14, d)
                        << std::endl;
              std::reverse(seq.begin(), seq.end());
              std::cout << "  chain14 (reversed): " << power_verdict(chain_product(seq), 14, d)
                        << std::endl;
            }
          }
        }
    }
  }
  std::cout << "stage counts: ";
  for (long c : stage) std::cout << c << " ";
  std::cout << "  found " << found.size() << std::endl;
}

// BFS over the conjugation orbit of the transposed pattern under the known
// twists: the chain-compatible second connector is some twist-image of the
// standard one.
void solve_conn2_orbit() {
  const SurfaceCtx s = SurfaceCtx::make(3, 1);
  const Word d = s.boundary_word(1);
  const FreeAutomorphism l1 = pattern_twist(s, 1, true);
  const FreeAutomorphism l2_0 = pattern_twist(s, 2, true);
  const FreeAutomorphism r1 = rim_twist(s, 1), r2 = rim_twist(s, 2), r3 = rim_twist(s, 3);
  const FreeAutomorphism th1 = through_twist(s, 1), th2 = through_twist(s, 2),
                          th3 = through_twist(s, 3);

  struct Move {
    std::string name;
    FreeAutomorphism g;
  };
  std::vector<Move> moves;
  auto add_move = [&](const std::string& n, const FreeAutomorphism& g) {
    moves.push_back({n, g});
    moves.push_back({n + "^-1", g.inverse()});
  };
  add_move("r1", r1);
  add_move("r2", r2);
  add_move("r3", r3);
  add_move("th1", th1);
  add_move("th2", th2);
  add_move("th3", th3);
  add_move("l1", l1);
  add_move("l2_0", l2_0);
  add_move("s11", block_twist(s, 1, 1));
  add_move("s22", block_twist(s, 2, 2));
  add_move("s33", block_twist(s, 3, 3));
  add_move("s12", block_twist(s, 1, 2));
  add_move("s23", block_twist(s, 2, 3));

  const int depth_cap = std::getenv("DEPTH") ? std::atoi(std::getenv("DEPTH")) : 4;
  struct Node {
    FreeAutomorphism t;
    std::string path;
    int depth;
  };
  std::vector<Node> frontier = {{l2_0, "", 0}};
  std::unordered_map<std::size_t, std::vector<FreeAutomorphism>> seen;
  auto visit = [&](const FreeAutomorphism& t) {
    auto& bucket = seen[std::hash<FreeAutomorphism>{}(t)];
    for (const auto& u : bucket)
      if (u == t) return false;
    bucket.push_back(t);
    return true;
  };
  visit(l2_0);
  long nodes = 0, survivors = 0;
  for (int depth = 0; depth < depth_cap && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (const auto& mv : moves) {
        FreeAutomorphism t = compose(mv.g, compose(node.t, mv.g.inverse()));
        if (t.max_image_size() > 600) continue;
        if (!visit(t)) continue;
        ++nodes;
        std::string path = node.path.empty() ? mv.name : mv.name + " " + node.path;
        if (commute(l1, t) && braid(t, r2) && braid(t, r3) && commute(t, th2) &&
            commute(t, th3) && commute(t, r1) && commute(t, th1)) {
          std::vector<FreeAutomorphism> seq = {th1, r1, l1, r2, t, r3};
          const std::string v_fwd = power_verdict(chain_product(seq), 14, d);
          std::reverse(seq.begin(), seq.end());
          const std::string v_rev = power_verdict(chain_product(seq), 14, d);
          ++survivors;
          std::cout << "== orbit survivor F = " << path << "  chain14 fwd=" << v_fwd
                    << " rev=" << v_rev << std::endl;
          if (v_fwd == "inner(d)" || v_rev == "inner(d)") {
            for (int idx = 0; idx < s.rank(); ++idx)
              if (!(t.image(idx) == s.gen(idx))) {
                std::cout << "  fwd " << s.name(idx) << " -> "
                          << word_to_string(t.image(idx), s.names()) << "  letters "
                          << letters_str(t.image(idx)) << "\n";
                std::cout << "  bwd " << s.name(idx) << " -> "
                          << word_to_string(t.preimage(idx), s.names()) << "  letters "
                          << letters_str(t.preimage(idx)) << "\n";
              }
            std::cout << std::flush;
          }
        }
        next.push_back({std::move(t), std::move(path), depth + 1});
      }
    }
    std::cerr << "depth " << (depth + 1) << ": frontier " << next.size() << " nodes " << nodes
              << " rss=" << rss_mb() << "MB survivors " << survivors << std::endl;
    frontier = std::move(next);
    if (nodes > 3000000) {
      std::cerr << "node cap reached" << std::endl;
      break;
    }
  }
}

// Window pattern with one image slot per window generator (a_i, b_i, a_+, b_+).
struct WinPattern {
  std::vector<Letter> rep;
  std::array<std::vector<Letter>, 4> fwd, bwd;
};

FreeAutomorphism win_twist(const SurfaceCtx& s, int handle, const WinPattern& pat,
                           bool forward) {
  std::vector<Word> fwd, bwd;
  for (int i = 0; i < s.rank(); ++i) {
    fwd.push_back(s.gen(i));
    bwd.push_back(s.gen(i));
  }
  const int slots[4] = {s.a_index(handle), s.b_index(handle), s.a_index(handle + 1),
                        s.b_index(handle + 1)};
  for (int k = 0; k < 4; ++k) {
    fwd[static_cast<std::size_t>(slots[k])] =
        transpose_pattern(s, forward ? pat.fwd[k] : pat.bwd[k], handle);
    bwd[static_cast<std::size_t>(slots[k])] =
        transpose_pattern(s, forward ? pat.bwd[k] : pat.fwd[k], handle);
  }
  return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
}

// Reconstruct the depth-4 orbit survivor, derive its window pattern, and run
// the generalization battery (window 1 variant, adjacent-window commutation,
// genus-4 chain identity).
void solve_conn2_pick() {
  const SurfaceCtx s = SurfaceCtx::make(3, 1);
  const Word d = s.boundary_word(1);
  const FreeAutomorphism l1 = pattern_twist(s, 1, true);
  const FreeAutomorphism l2_0 = pattern_twist(s, 2, true);
  const FreeAutomorphism r1 = rim_twist(s, 1), r2 = rim_twist(s, 2), r3 = rim_twist(s, 3);
  const FreeAutomorphism th1 = through_twist(s, 1), th2 = through_twist(s, 2),
                          th3 = through_twist(s, 3);

  // F = r2 . th2 . th2 . r2 (rightmost applied first).
  const FreeAutomorphism F = compose(r2, compose(th2, compose(th2, r2)));
  const FreeAutomorphism t2 = compose(F, compose(l2_0, F.inverse()));
  const Word rep2 = F.apply(transpose_pattern(s, kRep, 2));

  // Translate handle-2 window images back to pattern letters.
  const int slots[4] = {s.a_index(2), s.b_index(2), s.a_index(3), s.b_index(3)};
  auto to_pattern = [&](const Word& w) {
    std::vector<Letter> out;
    for (Letter l : w.letters()) {
      int k = -1;
      for (int j = 0; j < 4; ++j)
        if (letter_index(l) == slots[j]) k = j;
      if (k < 0) throw std::runtime_error("image leaves the window");
      out.push_back(static_cast<Letter>(letter_sign(l) * (k + 1)));
    }
    return out;
  };
  WinPattern pat;
  pat.rep = to_pattern(rep2);
  for (int k = 0; k < 4; ++k) {
    pat.fwd[k] = to_pattern(t2.image(slots[k]));
    pat.bwd[k] = to_pattern(t2.preimage(slots[k]));
  }
  std::cout << "pattern rep = " << letters_str(Word::from_letters(4, pat.rep)) << "\n";
  for (int k = 0; k < 4; ++k)
    std::cout << "  slot " << k << " fwd " << letters_str(Word::from_letters(4, pat.fwd[k])) << "  bwd "
              << letters_str(Word::from_letters(4, pat.bwd[k])) << "\n";
  std::cout << "rebuild matches survivor: "
            << (win_twist(s, 2, pat, true) == t2 ? "yes" : "NO") << "\n";

  // Certificates on the survivor itself.
  std::cout << "mutual inverse: "
            << (mutually_inverse(t2, win_twist(s, 2, pat, false)) ? "yes" : "NO") << "\n";
  std::cout << "fixes boundary word exactly: " << (t2.apply(d) == d ? "yes" : "NO") << "\n";
  std::cout << "abelianization == transvection(rep): "
            << (abelianization_matrix(t2) == transvection_matrix(s, abelianize(rep2)) ? "yes"
                                                                                      : "NO")
            << "\n";
  std::cout << "fixes own curve class: "
            << (CyclicWord(t2.apply(rep2), false) == CyclicWord(rep2, false) ? "yes" : "NO")
            << "\n";
  std::cout << "commutes r1 th1 th2 th3 l1: " << commute(t2, r1) << commute(t2, th1)
            << commute(t2, th2) << commute(t2, th3) << commute(t2, l1) << "\n";
  std::cout << "braids r2 r3: " << braid(t2, r2) << braid(t2, r3) << "\n";
  {
    std::vector<FreeAutomorphism> seq = {th1, r1, l1, r2, t2, r3};
    std::cout << "chain14 fwd: " << power_verdict(chain_product(seq), 14, d) << std::endl;
    std::reverse(seq.begin(), seq.end());
    std::cout << "chain14 rev: " << power_verdict(chain_product(seq), 14, d) << std::endl;
  }

  // Does the same pattern work at window 1 (uniform family)?
  {
    const SurfaceCtx s2 = SurfaceCtx::make(2, 1);
    const Word d2 = s2.boundary_word(1);
    const FreeAutomorphism lB = win_twist(s2, 1, pat, true);
    const FreeAutomorphism q1 = rim_twist(s2, 1), q2 = rim_twist(s2, 2);
    const FreeAutomorphism u1 = through_twist(s2, 1), u2 = through_twist(s2, 2);
    std::cout << "B@1 commutes th1 th2: " << commute(lB, u1) << commute(lB, u2)
              << "  braids r1 r2: " << braid(lB, q1) << braid(lB, q2) << "\n";
    std::vector<FreeAutomorphism> seq = {u1, q1, lB, q2};
    std::cout << "B@1 chain10 fwd: " << power_verdict(chain_product(seq), 10, d2) << std::endl;
    std::reverse(seq.begin(), seq.end());
    std::cout << "B@1 chain10 rev: " << power_verdict(chain_product(seq), 10, d2) << std::endl;
  }

  // Adjacent-window behaviour on the genus-3 surface.
  {
    const FreeAutomorphism lB1 = win_twist(s, 1, pat, true);
    std::cout << "commute(B@1, B@2): " << commute(lB1, t2) << "\n";
    std::cout << "commute(A@1, B@2): " << commute(l1, t2) << "\n";
    std::vector<FreeAutomorphism> seq = {th1, r1, lB1, r2, t2, r3};
    std::cout << "chain14 with B@1 fwd: " << power_verdict(chain_product(seq), 14, d)
              << std::endl;
  }

  // Genus-4 chain: (th1 r1 lA@1 r2 lB@2 r3 lB@3 r4)^18 should be inner(d).
  {
    const SurfaceCtx s4 = SurfaceCtx::make(4, 1);
    const Word d4 = s4.boundary_word(1);
    const FreeAutomorphism lA1 = pattern_twist(s4, 1, true);
    const FreeAutomorphism lB2 = win_twist(s4, 2, pat, true);
    const FreeAutomorphism lB3 = win_twist(s4, 3, pat, true);
    std::cout << "g4 commute(B@2, B@3): " << commute(lB2, lB3)
              << "  commute(A@1, B@3): " << commute(lA1, lB3)
              << "  commute(A@1, B@2): " << commute(lA1, lB2) << "\n";
    std::vector<FreeAutomorphism> seq = {through_twist(s4, 1), rim_twist(s4, 1), lA1,
                                         rim_twist(s4, 2),     lB2,              rim_twist(s4, 3),
                                         lB3,                  rim_twist(s4, 4)};
    std::cout << "g4 chain18 fwd: " << power_verdict(chain_product(seq), 18, d4) << std::endl;
    std::reverse(seq.begin(), seq.end());
    std::cout << "g4 chain18 rev: " << power_verdict(chain_product(seq), 18, d4) << std::endl;
  }

  // Odd chains (2g+1 curves, exponent 2g+2): the extra boundary curve of the
  // chain neighbourhood bounds a disk, so the power is still inner(d).
  for (int g = 2; g <= 4; ++g) {
    const SurfaceCtx sg = SurfaceCtx::make(g, 1);
    const Word dg = sg.boundary_word(1);
    std::vector<FreeAutomorphism> seq = {through_twist(sg, 1), rim_twist(sg, 1)};
    for (int i = 1; i < g; ++i) {
      seq.push_back(i == 1 ? pattern_twist(sg, 1, true) : win_twist(sg, i, pat, true));
      seq.push_back(rim_twist(sg, i + 1));
    }
    seq.push_back(through_twist(sg, g));
    const int exp = 2 * g + 2;
    std::cout << "g" << g << " odd chain^" << exp
              << " fwd: " << power_verdict(chain_product(seq), exp, dg) << std::endl;
    std::reverse(seq.begin(), seq.end());
    std::cout << "g" << g << " odd chain^" << exp
              << " rev: " << power_verdict(chain_product(seq), exp, dg) << std::endl;
  }
}

bool conjugation_shape(const Word& w, int gen_index, Word* conjugator) {
  const auto ls = w.letters();
  if (ls.size() % 2 == 0) return false;
  const std::size_t mid = ls.size() / 2;
  if (ls[mid] != static_cast<Letter>(gen_index + 1)) return false;
  for (std::size_t i = 0; i < mid; ++i)
    if (ls[i] != -ls[ls.size() - 1 - i]) return false;
  std::vector<Letter> pre(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(mid));
  *conjugator = Word::from_letters(w.rank(), pre);
  return true;
}

void solve_lantern() {
  const SurfaceCtx s = SurfaceCtx::make(0, 4);
  const Word d = s.boundary_word(1);
  auto conj_auto = [&](const Word& u, std::vector<int> idxs) {
    std::vector<Word> fwd, bwd;
    for (int i = 0; i < s.rank(); ++i) {
      fwd.push_back(s.gen(i));
      bwd.push_back(s.gen(i));
    }
    for (int i : idxs) {
      fwd[static_cast<std::size_t>(i)] = mul(u, s.gen(i), u.inverse());
      bwd[static_cast<std::size_t>(i)] = mul(u.inverse(), s.gen(i), u);
    }
    return FreeAutomorphism::from_images(std::move(fwd), std::move(bwd));
  };

  for (int sx : {+1, -1}) {
    for (int sy : {+1, -1}) {
      const FreeAutomorphism tx = conj_auto(pow(mul(s.x(2), s.x(3)), sx),
                                            {s.x_index(2), s.x_index(3)});
      const FreeAutomorphism ty = conj_auto(pow(mul(s.x(3), s.x(4)), sy),
                                            {s.x_index(3), s.x_index(4)});
      for (int e : {+1, -1}) {
        const FreeAutomorphism D = FreeAutomorphism::inner(pow(d, e));
        // Six placements of z in the product x, y (reading left-to-right,
        // rightmost applied first): xyz, xzy, zxy, yxz, yzx, zyx.
        struct Arr {
          const char* name;
          FreeAutomorphism tz;
        };
        std::vector<Arr> arrs;
        arrs.push_back({"x y z", compose(ty.inverse(), compose(tx.inverse(), D))});
        arrs.push_back({"x z y", compose(tx.inverse(), compose(D, ty.inverse()))});
        arrs.push_back({"z x y", compose(D, compose(ty.inverse(), tx.inverse()))});
        arrs.push_back({"y x z", compose(tx.inverse(), compose(ty.inverse(), D))});
        arrs.push_back({"y z x", compose(ty.inverse(), compose(D, tx.inverse()))});
        arrs.push_back({"z y x", compose(D, compose(tx.inverse(), ty.inverse()))});
        for (const auto& ar : arrs) {
          Word z2, z3, z4;
          if (!conjugation_shape(ar.tz.image(s.x_index(2)), s.x_index(2), &z2)) continue;
          if (!conjugation_shape(ar.tz.image(s.x_index(3)), s.x_index(3), &z3)) continue;
          if (!conjugation_shape(ar.tz.image(s.x_index(4)), s.x_index(4), &z4)) continue;
          std::cout << "sx=" << sx << " sy=" << sy << " e=" << e << " order " << ar.name
                    << ": conjugation shape\n";
          std::cout << "  tz x2 -> " << word_to_string(ar.tz.image(0), s.names()) << "  letters "
                    << letters_str(ar.tz.image(0)) << "\n";
          std::cout << "  tz x3 -> " << word_to_string(ar.tz.image(1), s.names()) << "  letters "
                    << letters_str(ar.tz.image(1)) << "\n";
          std::cout << "  tz x4 -> " << word_to_string(ar.tz.image(2), s.names()) << "  letters "
                    << letters_str(ar.tz.image(2)) << "\n";
          // Representative search for the z curve: dressed x2- and x4-factors.
          const auto dress = short_words(s.rank(), 2);
          std::set<std::vector<Letter>> classes;
          for (const auto& u : dress)
            for (const auto& v : dress)
              for (int eps : {+1, -1}) {
                const Word r = mul(mul(u, s.x(2, eps), u.inverse()),
                                   mul(v, s.x(4, eps), v.inverse()));
                if (static_cast<int>(r.letters().size()) < 2) continue;
                if (CyclicWord(ar.tz.apply(r), false) != CyclicWord(r, false)) continue;
                CyclicWord cls(r, false);
                std::vector<Letter> key(cls.letters().begin(), cls.letters().end());
                if (classes.count(key)) continue;
                classes.insert(key);
                std::cout << "    fixed rep class: " << word_to_string(r, s.names())
                          << "  letters " << letters_str(r) << "\n";
              }
        }
      }
    }
  }
}

void solve_lantern_transport() {
  // Requires the frozen connector (one_boundary_atlas(3) must build).
  const SurfaceCtx s = SurfaceCtx::make(0, 4);
  auto atlas3 = one_boundary_atlas(3);
  const EmbeddingSpec emb = stabilize_to_one_boundary(s);

  // Candidate z representative printed by solve_lantern, transcribed here.
  std::vector<Letter> rz;
  {
    std::string arg = std::getenv("RZ") ? std::getenv("RZ") : "";
    if (arg.empty()) {
      std::cout << "set RZ=\"l1 l2 ...\" (letters of the z rep) first\n";
      return;
    }
    size_t pos = 0;
    while (pos < arg.size()) {
      size_t sp = arg.find(' ', pos);
      if (sp == std::string::npos) sp = arg.size();
      rz.push_back(static_cast<Letter>(std::stoi(arg.substr(pos, sp - pos))));
      pos = sp + 1;
    }
  }
  const Word z = Word::from_letters(s.rank(), rz);
  const CurveSpec src = CurveSpec::from_rep("sigma_1_2", atlas3->entry("sigma_1_2").curve.rep);
  const CurveSpec dst = CurveSpec::from_rep("z_img", emb.apply(z));
  std::cout << "target class: " << word_to_string(emb.apply(z), atlas3->ctx().names()) << "\n";
  for (int budget : {6, 8, 10}) {
    auto f = find_change_of_coords(*atlas3, std::vector<CurveSpec>{src},
                                   std::vector<CurveSpec>{dst}, budget);
    if (f) {
      std::cout << "budget " << budget << ": F = " << f->to_string() << "\n";
      return;
    }
    std::cout << "budget " << budget << ": not found\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string phase = argc > 1 ? argv[1] : "conn";
  try {
    if (phase == "conn") solve_connector();
    else if (phase == "conn2") solve_conn2();
    else if (phase == "conn2full") solve_conn2_full();
    else if (phase == "conn2orbit") solve_conn2_orbit();
    else if (phase == "conn2pick") solve_conn2_pick();
    else if (phase == "atlas") {
      for (int g = 1; g <= 4; ++g) {
        one_boundary_atlas(g)->validate();
        std::cout << "one_boundary_atlas(" << g << ") validates" << std::endl;
      }
      auto lant = lantern_atlas();
      lant->validate();
      std::cout << "lantern_atlas validates" << std::endl;
      const SurfaceCtx& s = lant->ctx();
      const Word d = s.boundary_word(1);
      const FreeAutomorphism tx = lant->twist("x"), ty = lant->twist("y"),
                             tz = lant->twist("z");
      std::cout << "lantern identity: "
                << (compose(tx, compose(ty, tz)) == FreeAutomorphism::inner(d) ? "yes" : "NO")
                << std::endl;
      const Word zrep = lant->entry("z").curve.rep;
      std::cout << "tz fixes z class: "
                << (CyclicWord(tz.apply(zrep), false) == CyclicWord(zrep, false) ? "yes" : "NO")
                << std::endl;
      std::cout << "tz images: x2 -> " << word_to_string(tz.image(0), s.names()) << " ; x3 -> "
                << word_to_string(tz.image(1), s.names()) << " ; x4 -> "
                << word_to_string(tz.image(2), s.names()) << std::endl;
    }
    else if (phase == "lantern") solve_lantern();
    else if (phase == "transport") solve_lantern_transport();
    else {
      std::cerr << "unknown phase " << phase << "\n";
      return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

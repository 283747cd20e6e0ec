#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mcg/fixtures.hpp"
#include "mcg/relator.hpp"

using namespace mcg;

namespace {

// Canonical form: parse, print, reparse, print again; both prints must agree.
std::string canon(const std::string& text) { return print_relator_file(parse_relator_file(text)); }

Relator parse_single(const std::string& text) {
  RelatorFile f = parse_relator_file(text);
  std::vector<Relator> rs = file_relators(f);
  REQUIRE(rs.size() == 1);
  return rs[0];
}

}  // namespace

TEST_CASE("grammar basics") {
  SUBCASE("empty file") {
    RelatorFile f = parse_relator_file("");
    CHECK(f.items.empty());
    CHECK(print_relator_file(f).empty());
  }
  SUBCASE("single relator with every atom form") {
    const std::string text =
        "surface g=2 b=1;\n"
        "let F = t[alpha1] t[beta1]^-2 [t[alpha2], t[beta2]];\n"
        "let G = conj(F, t[conn1]) (t[alpha1] t[alpha2])^3 id;\n"
        "rel demo: F G F^-1 G^-1 = [F, G];\n";
    RelatorFile f = parse_relator_file(text);
    CHECK(f.items.size() == 4);
    std::vector<Relator> rs = file_relators(f);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].name == "demo");
    CHECK(rs[0].ctx.label() == "S2_1");
    CHECK(rs[0].status == RelatorStatus::unverified);
  }
  SUBCASE("seven-twist relator on the four-holed sphere") {
    Relator r = parse_single(
        "surface g=0 b=4; rel lantern: "
        "t[d1]^-1 t[d2]^-1 t[d3]^-1 t[d4]^-1 t[x] t[y] t[z] = id;");
    CHECK(r.ctx == SurfaceCtx::make(0, 4));
    std::vector<std::string> atoms;
    r.lhs.collect_twists(atoms);
    CHECK(atoms == std::vector<std::string>{"d1", "d2", "d3", "d4", "x", "y", "z"});
  }
  SUBCASE("exponent one folds away") {
    CHECK(canon("surface g=1 b=1; rel a: t[alpha1]^1 = t[alpha1];") ==
          "surface g=1 b=1;\nrel a: t[alpha1] = t[alpha1];\n");
  }
}

TEST_CASE("printing round-trips") {
  const std::string text =
      "surface g=2 b=1;\n"
      "let F = t[alpha1] t[beta1]^-2 [t[alpha2], t[beta2]];\n"
      "let G = conj(F, t[conn1]) (t[alpha1] t[alpha2])^3 id;\n"
      "rel demo: F G F^-1 G^-1 = [F, G];\n"
      "surface g=1 b=2;\n"
      "rel chain: (t[beta1] t[alpha1] t[gamma])^4 = t[d1] t[d2];\n";
  const std::string once = canon(text);
  CHECK(once == canon(once));
  // Canonical text of canonical input is itself.
  CHECK(once == text);

  // Whitespace and redundant parens collapse to the same canonical form.
  const std::string messy =
      "surface   g=2   b=1;\nlet F =\n t[alpha1]\tt[beta1]^-2 [ t[alpha2] , t[beta2] ];\n"
      "let G = conj(F,t[conn1]) ((t[alpha1] t[alpha2]))^3 (id);\n"
      "rel demo: F G F^-1 G^-1 = [F,G];\n"
      "surface g=1 b=2;\nrel chain: ( t[beta1] t[alpha1] t[gamma] )^4 = t[d1] t[d2];\n";
  CHECK(canon(messy) == once);
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("dangling exponent") {
    try {
      parse_relator_file("surface g=1 b=1;\nrel bad: t[alpha1]^ = id;");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 2);
      CHECK(e.column == 21);
      CHECK(std::string(e.what()).find("exponent") != std::string::npos);
    }
  }
  SUBCASE("statement keyword required") {
    try {
      parse_relator_file("t[");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 1);
    }
  }
  SUBCASE("missing semicolon") {
    CHECK_THROWS_AS(parse_relator_file("surface g=0 b=4 rel x: id = id;"), parse_error);
  }
  SUBCASE("relator before surface declaration") {
    CHECK_THROWS_AS(parse_relator_file("rel a: id = id;"), parse_error);
  }
  SUBCASE("unbound name") {
    CHECK_THROWS_AS(parse_relator_file("surface g=1 b=1; rel a: H = id;"), parse_error);
  }
  SUBCASE("bindings do not survive a new surface declaration") {
    CHECK_THROWS_AS(parse_relator_file("surface g=1 b=1; let F = t[alpha1];"
                                       "surface g=2 b=1; rel a: F = id;"),
                    parse_error);
  }
  SUBCASE("duplicate binding") {
    CHECK_THROWS_AS(
        parse_relator_file("surface g=1 b=1; let F = t[alpha1]; let F = t[beta1];"),
        parse_error);
  }
  SUBCASE("reserved word as binding name") {
    CHECK_THROWS_AS(parse_relator_file("surface g=1 b=1; let id = t[alpha1];"), parse_error);
  }
  SUBCASE("invalid surface parameters") {
    CHECK_THROWS_AS(parse_relator_file("surface g=-1 b=1;"), parse_error);
    CHECK_THROWS_AS(parse_relator_file("surface g=1 b=0;"), parse_error);
  }
  SUBCASE("stray character") {
    CHECK_THROWS_AS(parse_relator_file("surface g=1 b=1; rel a: t[alpha1] * id = id;"),
                    parse_error);
  }
}

TEST_CASE("exact verification on one-boundary contexts") {
  auto atlas = one_boundary_atlas(1);

  SUBCASE("inverse pair cancels") {
    Relator r = parse_single("surface g=1 b=1; rel cancel: t[alpha1] t[alpha1]^-1 = id;");
    CHECK(verify_relator(r, *atlas) == RelatorStatus::exact_pass);
    CHECK(r.note.empty());
  }
  SUBCASE("once-crossing pair satisfies the braid relation") {
    Relator r = parse_single(
        "surface g=1 b=1; rel braid: "
        "t[alpha1] t[beta1] t[alpha1] = t[beta1] t[alpha1] t[beta1];");
    CHECK(verify_relator(r, *atlas) == RelatorStatus::exact_pass);
    CHECK(r.max_word_len > 0);
  }
  SUBCASE("two-curve chain power hits the boundary twist") {
    Relator r = parse_single("surface g=1 b=1; rel chain: (t[beta1] t[alpha1])^6 = t[d1];");
    CHECK(verify_relator(r, *atlas) == RelatorStatus::exact_pass);
  }
  SUBCASE("homology mismatch fails before any exact work") {
    Relator r = parse_single("surface g=1 b=1; rel broken: t[alpha1] = id;");
    CHECK(verify_relator(r, *atlas) == RelatorStatus::failed);
    CHECK(r.note == "homology mismatch");
  }
  SUBCASE("homology-invisible twist still fails exactly") {
    // The boundary class is null in homology, so transvections cannot see
    // this; only the exact check can.
    Relator r = parse_single("surface g=1 b=1; rel sneaky: t[d1] = id;");
    CHECK(verify_relator(r, *atlas) == RelatorStatus::failed);
    CHECK(r.note == "exact mismatch");
  }
  SUBCASE("moving the difference to one side changes nothing") {
    Relator lr = parse_single(
        "surface g=1 b=1; rel b1: "
        "t[alpha1] t[beta1] t[alpha1] = t[beta1] t[alpha1] t[beta1];");
    Relator moved = parse_single(
        "surface g=1 b=1; rel b2: "
        "t[alpha1] t[beta1] t[alpha1] (t[beta1] t[alpha1] t[beta1])^-1 = id;");
    CHECK(verify_relator(lr, *atlas) == verify_relator(moved, *atlas));
    Relator bad = parse_single("surface g=1 b=1; rel s1: t[d1] = id;");
    Relator bad2 = parse_single("surface g=1 b=1; rel s2: t[d1] id^-1 = id;");
    CHECK(verify_relator(bad, *atlas) == verify_relator(bad2, *atlas));
  }
  SUBCASE("context mismatch is an error") {
    Relator r = parse_single("surface g=2 b=1; rel off: t[alpha1] = t[alpha1];");
    CHECK_THROWS_AS(verify_relator(r, *atlas), atlas_error);
  }
  SUBCASE("homology-only mode stops early") {
    Relator r = parse_single(
        "surface g=1 b=1; rel braid: "
        "t[alpha1] t[beta1] t[alpha1] = t[beta1] t[alpha1] t[beta1];");
    CHECK(verify_relator(r, *atlas, nullptr, nullptr, true) == RelatorStatus::homology_pass);
    CHECK(r.max_word_len == 0);
  }
}

TEST_CASE("stabilized verification on multi-boundary contexts") {
  SUBCASE("seven-twist identity on the four-holed sphere") {
    RelatorFile f = parse_relator_file(
        "surface g=0 b=4; rel lantern: "
        "t[d1]^-1 t[d2]^-1 t[d3]^-1 t[d4]^-1 t[x] t[y] t[z] = id;");
    verify_file(f);
    std::vector<Relator> rs = file_relators(f);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].status == RelatorStatus::exact_pass);
    CHECK(rs[0].max_word_len > 0);
  }
  SUBCASE("dropping one factor is caught despite a blind homology oracle") {
    // Every curve class on the four-holed sphere is null under the pairing,
    // so the transvection oracle passes anything; the stabilized exact check
    // must still reject.
    RelatorFile f = parse_relator_file(
        "surface g=0 b=4; rel broken: "
        "t[d1]^-1 t[d2]^-1 t[d3]^-1 t[d4]^-1 t[x] t[y] = id;");
    verify_file(f);
    CHECK(file_relators(f)[0].status == RelatorStatus::failed);
    CHECK(file_relators(f)[0].note == "exact mismatch");
  }
  SUBCASE("reordering non-commuting factors is caught") {
    RelatorFile f = parse_relator_file(
        "surface g=0 b=4; rel scrambled: "
        "t[d1]^-1 t[d2]^-1 t[d3]^-1 t[d4]^-1 t[y] t[x] t[z] = id;");
    verify_file(f);
    CHECK(file_relators(f)[0].status == RelatorStatus::failed);
  }
  SUBCASE("odd chain power hits both boundary twists") {
    RelatorFile f = parse_relator_file(
        "surface g=1 b=2; rel chain: (t[beta1] t[alpha1] t[gamma])^4 = t[d1] t[d2];");
    verify_file(f);
    CHECK(file_relators(f)[0].status == RelatorStatus::exact_pass);
  }
  SUBCASE("bindings feed the stabilized route") {
    RelatorFile f = parse_relator_file(
        "surface g=1 b=2;"
        "let C = t[beta1] t[alpha1] t[gamma];"
        "rel chain: C^4 = t[d1] t[d2];"
        "rel shifted: C^2 t[d1]^-1 C^2 = t[d2];");
    verify_file(f);
    std::vector<Relator> rs = file_relators(f);
    CHECK(rs[0].status == RelatorStatus::exact_pass);
    // The boundary twist is central, so splitting the power around it works.
    CHECK(rs[1].status == RelatorStatus::exact_pass);
  }
  SUBCASE("homology-only mode never claims exactness") {
    RelatorFile f = parse_relator_file(
        "surface g=0 b=4; rel broken: t[x] t[y] = id;");
    verify_file(f, /*homology_only=*/true);
    CHECK(file_relators(f)[0].status == RelatorStatus::homology_pass);
  }
}

TEST_CASE("axioms cap verification at conditional") {
  auto atlas = one_boundary_atlas(1);
  Relator r = parse_single("surface g=1 b=1; rel cancel: t[alpha1] t[alpha1]^-1 = id;");
  r.axioms = {"closed_case_C4"};
  CHECK(verify_relator(r, *atlas) == RelatorStatus::conditional);
  CHECK(r.note.find("closed_case_C4") != std::string::npos);
}

TEST_CASE("signature ledger") {
  SUBCASE("empty derivation sums to zero") { CHECK(ledger_sigma({}) == 0); }
  SUBCASE("kind values") {
    CHECK(RelatorKind::trivial_pair().sigma() == 0);
    CHECK(RelatorKind::commutativity().sigma() == 0);
    CHECK(RelatorKind::braid().sigma() == 0);
    CHECK(RelatorKind::conjugation().sigma() == 0);
    CHECK(RelatorKind::null_twist().sigma() == 1);
    CHECK(RelatorKind::lantern().sigma() == 1);
    CHECK(RelatorKind::capping(3).sigma() == 3);
    CHECK(RelatorKind::four_holed_torus().sigma() == -4);
    CHECK(RelatorKind::eight_holed_torus().sigma() == 0);
    CHECK_FALSE(RelatorKind::chain(5).sigma().has_value());
    CHECK_FALSE(RelatorKind::axiom("C4").sigma().has_value());
    CHECK(RelatorKind::axiom("C4", -4).sigma() == -4);
  }
  SUBCASE("multiplicity scales the sum") {
    std::vector<DerivationStep> d = {{RelatorKind::lantern(), "", 6},
                                     {RelatorKind::braid(), "", 9},
                                     {RelatorKind::conjugation(), "", 4}};
    CHECK(ledger_sigma(d) == 6);
  }
  SUBCASE("zero-valued kinds alone sum to zero") {
    std::vector<DerivationStep> d = {{RelatorKind::braid(), "", 12},
                                     {RelatorKind::commutativity(), "", 7},
                                     {RelatorKind::trivial_pair(), "", 3},
                                     {RelatorKind::conjugation(), "", 5}};
    CHECK(ledger_sigma(d) == 0);
  }
  SUBCASE("the four-holed torus plus four cappings cancels") {
    std::vector<DerivationStep> d = {{RelatorKind::four_holed_torus(), "", 1},
                                     {RelatorKind::capping(1), "", 4}};
    CHECK(ledger_sigma(d) == RelatorKind::eight_holed_torus().sigma());
  }
  SUBCASE("unset values are rejected") {
    CHECK_THROWS_AS(ledger_sigma({{RelatorKind::chain(4), "", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(ledger_sigma({{RelatorKind::axiom("C4"), "", 1}}), std::invalid_argument);
  }
  SUBCASE("non-positive multiplicity is rejected") {
    CHECK_THROWS_AS(ledger_sigma({{RelatorKind::lantern(), "", 0}}), std::invalid_argument);
  }
  SUBCASE("negative-contribution lint") {
    std::vector<DerivationStep> d = {{RelatorKind::lantern(), "", 2},
                                     {RelatorKind::four_holed_torus(), "", 1},
                                     {RelatorKind::chain(3), "", 1}};
    CHECK(negative_sigma_steps(d) == std::vector<std::string>{"four_holed_torus"});
    CHECK(negative_sigma_steps({}).empty());
  }
  SUBCASE("labels") {
    CHECK(RelatorKind::capping(2).label() == "capping(2)");
    CHECK(RelatorKind::chain(4).label() == "chain(4)");
    CHECK(RelatorKind::axiom("C4").label() == "axiom(C4)");
    CHECK(RelatorKind::lantern().label() == "lantern");
  }
}

TEST_CASE("report emission") {
  SUBCASE("empty input keeps the schema header") {
    const std::string doc = emit_report({});
    CHECK(doc.find("\"schema\"") != std::string::npos);
    CHECK(doc.find("relator-report/1") != std::string::npos);
  }
  SUBCASE("statuses, ledgers, and determinism") {
    RelatorFile f = parse_relator_file(
        "surface g=1 b=1;"
        "rel braid: t[alpha1] t[beta1] t[alpha1] = t[beta1] t[alpha1] t[beta1];"
        "rel sneaky: t[d1] = id;");
    verify_file(f);
    std::vector<Relator> rs = file_relators(f);
    rs[0].derivation = {{RelatorKind::braid(), "", 1}, {RelatorKind::lantern(), "", 2}};
    rs[1].derivation = {{RelatorKind::chain(2), "", 1}};
    const std::string doc = emit_report(rs);
    CHECK(doc.find("\"status\": \"exact_pass\"") != std::string::npos);
    CHECK(doc.find("\"status\": \"failed\"") != std::string::npos);
    CHECK(doc.find("\"sigma\": 2") != std::string::npos);
    CHECK(doc.find("\"sigma\": null") != std::string::npos);
    CHECK(doc.find("\"chain(2)\": 1") != std::string::npos);
    CHECK(doc.find("\"millis\": 0") != std::string::npos);

    // Re-run the whole pipeline; bytes must match.
    RelatorFile f2 = parse_relator_file(
        "surface g=1 b=1;"
        "rel braid: t[alpha1] t[beta1] t[alpha1] = t[beta1] t[alpha1] t[beta1];"
        "rel sneaky: t[d1] = id;");
    verify_file(f2);
    std::vector<Relator> rs2 = file_relators(f2);
    rs2[0].derivation = {{RelatorKind::braid(), "", 1}, {RelatorKind::lantern(), "", 2}};
    rs2[1].derivation = {{RelatorKind::chain(2), "", 1}};
    CHECK(emit_report(rs2) == doc);
  }
}

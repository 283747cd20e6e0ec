#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mcg/surface.hpp"
#include "mcg/twist.hpp"

namespace mcg {

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line, column;
};

// Verification ladder for a relator. exact_pass implies the homology check
// passed as well; conditional means everything checkable passed but the
// relator leans on declared axioms.
enum class RelatorStatus { unverified, homology_pass, exact_pass, failed, conditional };

std::string_view relator_status_name(RelatorStatus s);

// One kind of basic relator, carrying its signature contribution. chain has
// no set signature and is usable only where the ledger is not consulted;
// axiom carries whatever value was declared for it.
struct RelatorKind {
  enum class Tag {
    trivial_pair,
    commutativity,
    braid,
    conjugation,
    null_twist,
    lantern,
    capping,
    four_holed_torus,
    eight_holed_torus,
    chain,
    axiom,
  };

  Tag tag = Tag::trivial_pair;
  int k = 0;            // capping: signature of the capped-off relation; chain: length
  std::string name;     // axiom only
  std::optional<int> declared;  // axiom only

  static RelatorKind trivial_pair() { return {Tag::trivial_pair, 0, "", std::nullopt}; }
  static RelatorKind commutativity() { return {Tag::commutativity, 0, "", std::nullopt}; }
  static RelatorKind braid() { return {Tag::braid, 0, "", std::nullopt}; }
  static RelatorKind conjugation() { return {Tag::conjugation, 0, "", std::nullopt}; }
  static RelatorKind null_twist() { return {Tag::null_twist, 0, "", std::nullopt}; }
  static RelatorKind lantern() { return {Tag::lantern, 0, "", std::nullopt}; }
  static RelatorKind capping(int k) { return {Tag::capping, k, "", std::nullopt}; }
  static RelatorKind four_holed_torus() { return {Tag::four_holed_torus, 0, "", std::nullopt}; }
  static RelatorKind eight_holed_torus() { return {Tag::eight_holed_torus, 0, "", std::nullopt}; }
  static RelatorKind chain(int k) { return {Tag::chain, k, "", std::nullopt}; }
  static RelatorKind axiom(std::string name, std::optional<int> declared = std::nullopt) {
    return {Tag::axiom, 0, std::move(name), declared};
  }

  // Signature contribution of one use; nullopt when genuinely unset.
  std::optional<int> sigma() const;
  // Stable display label, e.g. "lantern", "capping(3)", "axiom(C4)".
  std::string label() const;

  bool operator==(const RelatorKind&) const = default;
};

struct DerivationStep {
  RelatorKind kind;
  std::string note;      // free-form position/context note
  int multiplicity = 1;  // >= 1
};

// Algebraic sum of multiplicity * sigma over the steps. Throws
// std::invalid_argument on multiplicity < 1 or a step with unset sigma.
int ledger_sigma(const std::vector<DerivationStep>& steps);

// Lint helper: labels of steps with negative signature contribution, for
// callers restricting themselves to non-negative ledgers. Never an error.
std::vector<std::string> negative_sigma_steps(const std::vector<DerivationStep>& steps);

// A claimed identity between two mapping-class expressions on one surface
// context, plus the bookkeeping that travels with it: how it was derived
// (for the signature ledger), which axioms it leans on, and the verification
// outcome.
struct Relator {
  std::string name;
  SurfaceCtx ctx;
  MCExpr lhs;
  MCExpr rhs = MCExpr::id();
  std::vector<DerivationStep> derivation;
  std::vector<std::string> axioms;  // nonempty caps verification at conditional
  RelatorStatus status = RelatorStatus::unverified;
  std::string note;
  int max_word_len = 0;  // largest generator image over both sides, once evaluated
};

struct NamedExpr {
  std::string name;
  MCExpr expr;
};

using RelatorFileItem = std::variant<SurfaceCtx, NamedExpr, Relator>;

struct RelatorFile {
  std::vector<RelatorFileItem> items;
};

// Parser for the relator DSL:
//   file := (decl | binding | relator)* ;
//   decl := "surface" "g=" int "b=" int ";" ;
//   binding := "let" NAME "=" expr ";" ;
//   relator := "rel" NAME ":" expr "=" expr ";" ;
//   expr := term+ ; term := atom ("^" sint)? ;
//   atom := "t[" CURVE "]" | "[" expr "," expr "]" | "conj(" expr "," expr ")"
//         | "(" expr ")" | "id" | NAME ;
// Bindings and relators must follow a surface declaration; a new declaration
// starts a fresh scope. Name references must be bound earlier in the same
// scope. Errors carry line/column.
RelatorFile parse_relator_file(const std::string& text);

// Canonical rendering; print(parse(text)) reparses to identical objects.
std::string print_relator_file(const RelatorFile& file);

// Verify one relator against an atlas for its context: homology first
// (transvection matrices), then the exact check — direct automorphism
// equality on one-boundary contexts, equality of stabilized images
// otherwise. Declared axioms cap the result at conditional. Updates and
// returns the status.
RelatorStatus verify_relator(Relator& r, const Atlas& atlas,
                             const AutoBindings* bindings = nullptr,
                             const AutoBindings* stab_bindings = nullptr,
                             bool homology_only = false);

// Walk a parsed file: each surface declaration selects the standard atlas
// for that context and clears bindings; let-bindings are evaluated and
// recorded; relators are verified in place.
void verify_file(RelatorFile& file, bool homology_only = false);

// Relators of a file, in order.
std::vector<Relator> file_relators(const RelatorFile& file);

// Versioned JSON report over the relators, deterministic byte-for-byte:
// fields {name, ctx, status, sigma, derivation_counts, max_word_len,
// millis}. sigma is null when the derivation contains an unset-signature
// step; millis is pinned to 0 so reports are reproducible.
std::string emit_report(const std::vector<Relator>& relators);

}  // namespace mcg

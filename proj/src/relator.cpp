#include "mcg/relator.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <sstream>
#include <utility>

#include "mcg/fixtures.hpp"

namespace mcg {

std::string_view relator_status_name(RelatorStatus s) {
  switch (s) {
    case RelatorStatus::unverified: return "unverified";
    case RelatorStatus::homology_pass: return "homology_pass";
    case RelatorStatus::exact_pass: return "exact_pass";
    case RelatorStatus::failed: return "failed";
    case RelatorStatus::conditional: return "conditional";
  }
  return "unverified";
}

std::optional<int> RelatorKind::sigma() const {
  switch (tag) {
    case Tag::trivial_pair:
    case Tag::commutativity:
    case Tag::braid:
    case Tag::conjugation:
    case Tag::eight_holed_torus:
      return 0;
    case Tag::null_twist:
    case Tag::lantern:
      return 1;
    case Tag::capping:
      return k;
    case Tag::four_holed_torus:
      return -4;
    case Tag::chain:
      return std::nullopt;
    case Tag::axiom:
      return declared;
  }
  return std::nullopt;
}

std::string RelatorKind::label() const {
  switch (tag) {
    case Tag::trivial_pair: return "trivial_pair";
    case Tag::commutativity: return "commutativity";
    case Tag::braid: return "braid";
    case Tag::conjugation: return "conjugation";
    case Tag::null_twist: return "null_twist";
    case Tag::lantern: return "lantern";
    case Tag::capping: return "capping(" + std::to_string(k) + ")";
    case Tag::four_holed_torus: return "four_holed_torus";
    case Tag::eight_holed_torus: return "eight_holed_torus";
    case Tag::chain: return "chain(" + std::to_string(k) + ")";
    case Tag::axiom: return "axiom(" + name + ")";
  }
  return "";
}

int ledger_sigma(const std::vector<DerivationStep>& steps) {
  int total = 0;
  for (const DerivationStep& s : steps) {
    if (s.multiplicity < 1)
      throw std::invalid_argument("derivation step '" + s.kind.label() +
                                  "' has multiplicity " + std::to_string(s.multiplicity));
    std::optional<int> v = s.kind.sigma();
    if (!v)
      throw std::invalid_argument("derivation step '" + s.kind.label() +
                                  "' has no set signature");
    total += s.multiplicity * *v;
  }
  return total;
}

std::vector<std::string> negative_sigma_steps(const std::vector<DerivationStep>& steps) {
  std::vector<std::string> out;
  for (const DerivationStep& s : steps) {
    std::optional<int> v = s.kind.sigma();
    if (v && *v < 0) out.push_back(s.kind.label());
  }
  return out;
}

namespace {

struct Token {
  enum class Kind { name, integer, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  long value = 0;
  int line = 1, column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      out.push_back(next());
      if (out.back().kind == Token::Kind::end) return out;
    }
  }

private:
  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_'))
        advance();
      t.kind = Token::Kind::name;
      t.text = s_.substr(start, pos_ - start);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + (s_[pos_] - '0');
        if (v > 1'000'000) throw parse_error("integer literal too large", t.line, t.column);
        advance();
      }
      t.kind = Token::Kind::integer;
      t.value = v;
      return t;
    }
    if (std::string(";:=^[](),-").find(c) != std::string::npos) {
      t.kind = Token::Kind::symbol;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    throw parse_error("unexpected character '" + std::string(1, c) + "'", line_, col_);
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

bool reserved_word(const std::string& s) {
  return s == "surface" || s == "let" || s == "rel" || s == "t" || s == "id" || s == "conj";
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RelatorFile parse_file() {
    RelatorFile f;
    while (peek().kind != Token::Kind::end) {
      const Token& t = peek();
      if (t.kind != Token::Kind::name || !(t.text == "surface" || t.text == "let" ||
                                           t.text == "rel"))
        throw err("expected 'surface', 'let', or 'rel'", t);
      if (t.text == "surface")
        f.items.emplace_back(parse_decl());
      else if (t.text == "let")
        f.items.emplace_back(parse_binding());
      else
        f.items.emplace_back(parse_relator());
    }
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  static parse_error err(const std::string& msg, const Token& at) {
    return parse_error(msg, at.line, at.column);
  }

  bool at_symbol(const char* s) const {
    return peek().kind == Token::Kind::symbol && peek().text == s;
  }

  const Token& expect_symbol(const char* s) {
    if (!at_symbol(s)) throw err(std::string("expected '") + s + "'", peek());
    return take();
  }

  const Token& expect_name() {
    if (peek().kind != Token::Kind::name) throw err("expected a name", peek());
    return take();
  }

  const Token& expect_keyword(const char* kw) {
    if (peek().kind != Token::Kind::name || peek().text != kw)
      throw err(std::string("expected '") + kw + "'", peek());
    return take();
  }

  int parse_int_after_eq(const char* field) {
    const Token& nm = expect_name();
    if (nm.text != field) throw err(std::string("expected '") + field + "='", nm);
    expect_symbol("=");
    int sign = 1;
    if (at_symbol("-")) {
      take();
      sign = -1;
    }
    if (peek().kind != Token::Kind::integer) throw err("expected an integer", peek());
    return sign * static_cast<int>(take().value);
  }

  SurfaceCtx parse_decl() {
    const Token& kw = expect_keyword("surface");
    const int g = parse_int_after_eq("g");
    const int b = parse_int_after_eq("b");
    expect_symbol(";");
    SurfaceCtx ctx;
    try {
      ctx = SurfaceCtx::make(g, b);
    } catch (const bad_word& e) {
      throw err(e.what(), kw);
    }
    have_ctx_ = true;
    ctx_ = ctx;
    bound_.clear();
    return ctx;
  }

  NamedExpr parse_binding() {
    const Token& kw = expect_keyword("let");
    if (!have_ctx_) throw err("'let' before any surface declaration", kw);
    const Token& nm = expect_name();
    if (reserved_word(nm.text)) throw err("'" + nm.text + "' is a reserved word", nm);
    if (std::count(bound_.begin(), bound_.end(), nm.text))
      throw err("duplicate binding '" + nm.text + "'", nm);
    expect_symbol("=");
    MCExpr e = parse_expr();
    expect_symbol(";");
    bound_.push_back(nm.text);
    return NamedExpr{nm.text, std::move(e)};
  }

  Relator parse_relator() {
    const Token& kw = expect_keyword("rel");
    if (!have_ctx_) throw err("'rel' before any surface declaration", kw);
    const Token& nm = expect_name();
    if (reserved_word(nm.text)) throw err("'" + nm.text + "' is a reserved word", nm);
    expect_symbol(":");
    Relator r;
    r.name = nm.text;
    r.ctx = ctx_;
    r.lhs = parse_expr();
    expect_symbol("=");
    r.rhs = parse_expr();
    expect_symbol(";");
    return r;
  }

  bool starts_term() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::name)
      return !(t.text == "surface" || t.text == "let" || t.text == "rel");
    return t.kind == Token::Kind::symbol && (t.text == "[" || t.text == "(");
  }

  MCExpr parse_expr() {
    std::vector<MCExpr> terms;
    while (starts_term()) terms.push_back(parse_term());
    if (terms.empty()) throw err("expected an expression", peek());
    return MCExpr::prod(std::move(terms));
  }

  MCExpr parse_term() {
    MCExpr a = parse_atom();
    if (!at_symbol("^")) return a;
    take();
    int sign = 1;
    if (at_symbol("-")) {
      take();
      sign = -1;
    }
    if (peek().kind != Token::Kind::integer)
      throw err("expected an integer exponent after '^'", peek());
    const int n = sign * static_cast<int>(take().value);
    if (n == 1) return a;  // normalize so printing round-trips
    return MCExpr::p(std::move(a), n);
  }

  MCExpr parse_atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::name) {
      if (t.text == "t") {
        take();
        expect_symbol("[");
        const Token& curve = expect_name();
        std::string name = curve.text;
        expect_symbol("]");
        return MCExpr::t(std::move(name));
      }
      if (t.text == "id") {
        take();
        return MCExpr::id();
      }
      if (t.text == "conj") {
        take();
        expect_symbol("(");
        MCExpr a = parse_expr();
        expect_symbol(",");
        MCExpr b = parse_expr();
        expect_symbol(")");
        return MCExpr::conj(std::move(a), std::move(b));
      }
      if (!std::count(bound_.begin(), bound_.end(), t.text))
        throw err("unbound name '" + t.text + "'", t);
      return MCExpr::ref(take().text);
    }
    if (at_symbol("[")) {
      take();
      MCExpr a = parse_expr();
      expect_symbol(",");
      MCExpr b = parse_expr();
      expect_symbol("]");
      return MCExpr::comm(std::move(a), std::move(b));
    }
    if (at_symbol("(")) {
      take();
      MCExpr e = parse_expr();
      expect_symbol(")");
      return e;
    }
    throw err("expected an atom", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool have_ctx_ = false;
  SurfaceCtx ctx_;
  std::vector<std::string> bound_;
};

MCExpr substitute_refs(const MCExpr& e, const std::map<std::string, MCExpr>& env) {
  if (e.kind == MCExpr::Kind::ref) {
    auto it = env.find(e.atom);
    if (it == env.end()) throw atlas_error("unbound name '" + e.atom + "'");
    return it->second;
  }
  MCExpr out = e;
  for (MCExpr& k : out.kids) k = substitute_refs(k, env);
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace

RelatorFile parse_relator_file(const std::string& text) {
  return Parser(Lexer(text).run()).parse_file();
}

std::string print_relator_file(const RelatorFile& file) {
  std::ostringstream os;
  for (const RelatorFileItem& item : file.items) {
    if (const SurfaceCtx* c = std::get_if<SurfaceCtx>(&item)) {
      os << "surface g=" << c->genus() << " b=" << c->boundaries() << ";\n";
    } else if (const NamedExpr* b = std::get_if<NamedExpr>(&item)) {
      os << "let " << b->name << " = " << b->expr.to_string() << ";\n";
    } else {
      const Relator& r = std::get<Relator>(item);
      os << "rel " << r.name << ": " << r.lhs.to_string() << " = " << r.rhs.to_string()
         << ";\n";
    }
  }
  return os.str();
}

RelatorStatus verify_relator(Relator& r, const Atlas& atlas, const AutoBindings* bindings,
                             const AutoBindings* stab_bindings, bool homology_only) {
  if (r.ctx != atlas.ctx())
    throw atlas_error("relator '" + r.name + "' lives on " + r.ctx.label() +
                      " but the atlas is for " + atlas.ctx().label());
  r.note.clear();
  r.max_word_len = 0;
  if (expr_transvection(atlas, r.lhs, bindings) != expr_transvection(atlas, r.rhs, bindings)) {
    r.status = RelatorStatus::failed;
    r.note = "homology mismatch";
    return r.status;
  }
  if (homology_only) {
    r.status = RelatorStatus::homology_pass;
    return r.status;
  }
  bool exact = false;
  if (atlas.ctx().boundaries() == 1) {
    const FreeAutomorphism fl = eval_expr(atlas, r.lhs, bindings);
    const FreeAutomorphism fr = eval_expr(atlas, r.rhs, bindings);
    r.max_word_len = static_cast<int>(std::max(fl.max_image_size(), fr.max_image_size()));
    exact = auto_equal(fl, fr);
  } else if (atlas.has_stabilization()) {
    const FreeAutomorphism fl = eval_expr_stabilized(atlas, r.lhs, stab_bindings);
    const FreeAutomorphism fr = eval_expr_stabilized(atlas, r.rhs, stab_bindings);
    r.max_word_len = static_cast<int>(std::max(fl.max_image_size(), fr.max_image_size()));
    exact = auto_equal(fl, fr);
  } else {
    // Nothing exact can run here; say so rather than fail.
    if (r.axioms.empty()) {
      r.status = RelatorStatus::homology_pass;
      r.note = "exact check skipped: no stabilization for " + atlas.ctx().label();
    } else {
      r.status = RelatorStatus::conditional;
      r.note = "exact check skipped: no stabilization for " + atlas.ctx().label() +
               "; assumes " + join(r.axioms);
    }
    return r.status;
  }
  if (!exact) {
    r.status = RelatorStatus::failed;
    r.note = "exact mismatch";
    return r.status;
  }
  if (!r.axioms.empty()) {
    r.status = RelatorStatus::conditional;
    r.note = "exact check passed; assumes " + join(r.axioms);
    return r.status;
  }
  r.status = RelatorStatus::exact_pass;
  return r.status;
}

void verify_file(RelatorFile& file, bool homology_only) {
  std::shared_ptr<const Atlas> atlas;
  std::map<std::string, MCExpr> env;
  for (RelatorFileItem& item : file.items) {
    if (const SurfaceCtx* c = std::get_if<SurfaceCtx>(&item)) {
      atlas = standard_atlas(*c);
      env.clear();
    } else if (const NamedExpr* b = std::get_if<NamedExpr>(&item)) {
      env[b->name] = substitute_refs(b->expr, env);
    } else {
      Relator& r = std::get<Relator>(item);
      if (!atlas) throw atlas_error("relator '" + r.name + "' has no surface declaration");
      Relator closed = r;
      closed.lhs = substitute_refs(r.lhs, env);
      closed.rhs = substitute_refs(r.rhs, env);
      verify_relator(closed, *atlas, nullptr, nullptr, homology_only);
      r.status = closed.status;
      r.note = closed.note;
      r.max_word_len = closed.max_word_len;
    }
  }
}

std::vector<Relator> file_relators(const RelatorFile& file) {
  std::vector<Relator> out;
  for (const RelatorFileItem& item : file.items)
    if (const Relator* r = std::get_if<Relator>(&item)) out.push_back(*r);
  return out;
}

std::string emit_report(const std::vector<Relator>& relators) {
  nlohmann::ordered_json doc;
  doc["schema"] = "relator-report/1";
  doc["relators"] = nlohmann::ordered_json::array();
  for (const Relator& r : relators) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["ctx"] = r.ctx.label();
    j["status"] = std::string(relator_status_name(r.status));
    const bool sigma_set = std::all_of(r.derivation.begin(), r.derivation.end(),
                                       [](const DerivationStep& s) {
                                         return s.kind.sigma().has_value();
                                       });
    if (sigma_set)
      j["sigma"] = ledger_sigma(r.derivation);
    else
      j["sigma"] = nullptr;
    std::map<std::string, int> counts;
    for (const DerivationStep& s : r.derivation) counts[s.kind.label()] += s.multiplicity;
    nlohmann::ordered_json cj = nlohmann::ordered_json::object();
    for (const auto& [label, n] : counts) cj[label] = n;
    j["derivation_counts"] = std::move(cj);
    j["max_word_len"] = r.max_word_len;
    // Pinned so reports are byte-identical across runs.
    j["millis"] = 0;
    doc["relators"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace mcg

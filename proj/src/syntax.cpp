#include "aut/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace aut {

SExprPtr s_ident(std::string name, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::Ident;
  e->name = std::move(name);
  e->loc = loc;
  return e;
}

SExprPtr s_sort(SortTag tag, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::Sort;
  e->sort = tag;
  e->loc = loc;
  return e;
}

SExprPtr s_abs(std::string binder, SExprPtr ann, SExprPtr body,
               SExpr::AbsFlavor flavor, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::Abs;
  e->name = std::move(binder);
  e->flavor = flavor;
  e->a = std::move(ann);
  e->b = std::move(body);
  e->loc = loc;
  return e;
}

SExprPtr s_revapp(SExprPtr arg, SExprPtr fun, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::RevApp;
  e->a = std::move(arg);
  e->b = std::move(fun);
  e->loc = loc;
  return e;
}

SExprPtr s_app(SExprPtr fun, SExprPtr arg, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::App;
  e->a = std::move(fun);
  e->b = std::move(arg);
  e->loc = loc;
  return e;
}

SExprPtr s_inst(std::string name, std::vector<SExprPtr> args, SourceLoc loc) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExpr::Kind::Inst;
  e->name = std::move(name);
  e->args = std::move(args);
  e->loc = loc;
  return e;
}

// ---------------------------------------------------------------------------
// lexer

namespace {

const std::string kEpsilon = "\xce\xb5"; // the empty-indicator glyph

enum class Tok {
  Ident, Sort, PN, Dash,
  LParen, RParen, LBrack, RBrack, LAngle, RAngle,
  Comma, Dot, Colon, Semi, Assign, Star, Lambda, Bang, Arrow, PipeGt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SortTag sort = SortTag::Star;
  SourceLoc loc;
  bool tight_paren = false; // identifier directly followed by '('
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

std::vector<Token> lex_line(std::string_view s, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto loc_at = [&](std::size_t pos) { return SourceLoc{line_no, static_cast<int>(pos) + 1}; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t') { ++i; continue; }
    SourceLoc loc = loc_at(i);
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", {}, loc}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", {}, loc}); ++i; continue;
      case '[': out.push_back({Tok::LBrack, "[", {}, loc}); ++i; continue;
      case ']': out.push_back({Tok::RBrack, "]", {}, loc}); ++i; continue;
      case '<': out.push_back({Tok::LAngle, "<", {}, loc}); ++i; continue;
      case '>': out.push_back({Tok::RAngle, ">", {}, loc}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", {}, loc}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", {}, loc}); ++i; continue;
      case ';': out.push_back({Tok::Semi, ";", {}, loc}); ++i; continue;
      case '*': out.push_back({Tok::Star, "*", {}, loc}); ++i; continue;
      case '\\': out.push_back({Tok::Lambda, "\\", {}, loc}); ++i; continue;
      case '!': out.push_back({Tok::Bang, "!", {}, loc}); ++i; continue;
      case ':':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::Assign, ":=", {}, loc});
          i += 2;
        } else {
          out.push_back({Tok::Colon, ":", {}, loc});
          ++i;
        }
        continue;
      case '|':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::PipeGt, "|>", {}, loc});
          i += 2;
          continue;
        }
        fail(ErrKind::Parse, "unexpected character '|'", loc);
      case '-':
        if (s.substr(i, 3) == "---") {
          out.push_back({Tok::Dash, "---", {}, loc});
          i += 3;
          continue;
        }
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", {}, loc});
          i += 2;
          continue;
        }
        fail(ErrKind::Parse, "unexpected character '-'", loc);
      default: break;
    }
    if (ident_char(c)) {
      std::size_t start = i;
      while (i < s.size() && ident_char(static_cast<unsigned char>(s[i]))) ++i;
      std::string word(s.substr(start, i - start));
      bool tight = i < s.size() && s[i] == '(';
      if (word == "PROP" || word == "Prop" || word == "set")
        out.push_back({Tok::Sort, word, SortTag::Star, loc, false});
      else if (word == "Type")
        out.push_back({Tok::Sort, word, SortTag::Box, loc, false});
      else if (word == "PN")
        out.push_back({Tok::PN, word, {}, loc, false});
      else
        out.push_back({Tok::Ident, word, {}, loc, tight});
      continue;
    }
    fail(ErrKind::Parse, std::string("unexpected character '") + s[i] + "'", loc);
  }
  out.push_back({Tok::End, "", {}, loc_at(s.size())});
  return out;
}

// ---------------------------------------------------------------------------
// parser

class Parser {
public:
  Parser(std::vector<Token> tokens, Dialect dialect)
      : toks_(std::move(tokens)), dialect_(dialect) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token take() {
    Token t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(ErrKind::Parse,
           std::string("expected ") + what + ", got '" + describe(peek()) + "'",
           peek().loc);
    return take();
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  SExprPtr expr() {
    return dialect_ == Dialect::Original ? original_expr() : modern_arrow();
  }

  void expect_end() {
    if (!at(Tok::End))
      fail(ErrKind::Parse, "trailing input: '" + describe(peek()) + "'", peek().loc);
  }

private:
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of line" : t.text;
  }

  SExprPtr original_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LBrack: {
        Token open = take();
        Token binder = expect(Tok::Ident, "binder name");
        expect(Tok::Comma, "','");
        SExprPtr ann = original_expr();
        expect(Tok::RBrack, "']'");
        SExprPtr body = original_expr();
        return s_abs(binder.text, std::move(ann), std::move(body),
                     SExpr::AbsFlavor::Ambiguous, open.loc);
      }
      case Tok::LAngle: {
        Token open = take();
        SExprPtr arg = original_expr();
        expect(Tok::RAngle, "'>'");
        SExprPtr fun = original_expr();
        return s_revapp(std::move(arg), std::move(fun), open.loc);
      }
      case Tok::LParen: {
        take();
        SExprPtr inner = original_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Sort: {
        Token s = take();
        return s_sort(s.sort, s.loc);
      }
      case Tok::Ident:
        return ident_or_inst();
      default:
        fail(ErrKind::Parse, "expected expression, got '" + describe(t) + "'", t.loc);
    }
  }

  // In the modern dialect an instantiation list must touch its head,
  // IMP(A,B); a spaced '(' opens an application argument instead. The
  // original dialect has no juxtaposition, so any '(' after a name is
  // an instantiation list there.
  SExprPtr ident_or_inst() {
    Token name = expect(Tok::Ident, "identifier");
    bool inst = at(Tok::LParen) &&
                (dialect_ == Dialect::Original || name.tight_paren);
    if (!inst) return s_ident(name.text, name.loc);
    take();
    std::vector<SExprPtr> args;
    if (!at(Tok::RParen)) {
      args.push_back(expr());
      while (at(Tok::Comma)) {
        take();
        args.push_back(expr());
      }
    }
    expect(Tok::RParen, "')'");
    return s_inst(name.text, std::move(args), name.loc);
  }

  SExprPtr modern_arrow() {
    if (at(Tok::Lambda) || at(Tok::Bang)) return modern_abs();
    SExprPtr lhs = modern_app();
    if (at(Tok::Arrow)) {
      Token arrow = take();
      SExprPtr rhs = modern_arrow();
      // A -> B is the product with an unused binder
      return s_abs("_", std::move(lhs), std::move(rhs), SExpr::AbsFlavor::Pi,
                   arrow.loc);
    }
    return lhs;
  }

  SExprPtr modern_abs() {
    Token head = take(); // '\' or '!'
    Token binder = expect(Tok::Ident, "binder name");
    expect(Tok::Colon, "':'");
    SExprPtr ann = modern_arrow();
    expect(Tok::Dot, "'.'");
    SExprPtr body = modern_arrow();
    return s_abs(binder.text, std::move(ann), std::move(body),
                 head.kind == Tok::Lambda ? SExpr::AbsFlavor::Lambda
                                          : SExpr::AbsFlavor::Pi,
                 head.loc);
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::Sort:
      case Tok::Star: // '*' doubles as the star sort in modern expressions
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  SExprPtr modern_app() {
    SExprPtr e = modern_atom();
    while (atom_start()) {
      SExprPtr arg = modern_atom();
      SourceLoc loc = e->loc;
      e = s_app(std::move(e), std::move(arg), loc);
    }
    return e;
  }

  SExprPtr modern_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        return ident_or_inst();
      case Tok::Sort: {
        Token s = take();
        return s_sort(s.sort, s.loc);
      }
      case Tok::Star: {
        Token s = take();
        return s_sort(SortTag::Star, s.loc);
      }
      case Tok::LParen: {
        take();
        SExprPtr inner = modern_arrow();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail(ErrKind::Parse, "expected expression, got '" + describe(t) + "'", t.loc);
    }
  }

  std::vector<Token> toks_;
  Dialect dialect_;
  std::size_t pos_ = 0;
};

RawLine parse_raw_line(std::string_view text, Dialect dialect, int line_no) {
  Parser p(lex_line(text, line_no), dialect);
  RawLine line;
  line.text = std::string(text);
  line.loc = {line_no, 1};
  line.dialect = dialect;

  if (p.at(Tok::Star)) {
    p.take();
  } else {
    Token ind = p.expect(Tok::Ident, "context indicator or '*'");
    if (ind.text != kEpsilon) line.indicator = ind.text;
    p.expect(Tok::Star, "'*'");
  }

  Token id = p.expect(Tok::Ident, "identifier");
  line.identifier = id.text;
  p.expect(Tok::Assign, "':='");

  if (p.at(Tok::Dash)) {
    p.take();
    line.content_kind = RawLine::Content::Dash;
  } else if (p.at(Tok::PN)) {
    p.take();
    line.content_kind = RawLine::Content::PN;
  } else {
    line.content_kind = RawLine::Content::Expr;
    line.content = p.expr();
  }

  if (p.at(Tok::Semi) || p.at(Tok::Colon))
    p.take();
  else
    fail(ErrKind::Parse, "expected ':' or ';' before the category", p.peek().loc);

  line.category = p.expr();
  p.expect_end();
  return line;
}

bool blank_or_comment(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    return c == '#';
  }
  return true;
}

} // namespace

std::vector<RawLine> parse_book_text(std::string_view text, Dialect dialect) {
  std::vector<RawLine> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = (end == std::string_view::npos)
                               ? text.substr(start)
                               : text.substr(start, end - start);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (!blank_or_comment(raw)) lines.push_back(parse_raw_line(raw, dialect, line_no));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

SExprPtr parse_expr_text(std::string_view text, Dialect dialect, int line_no) {
  Parser p(lex_line(text, line_no), dialect);
  SExprPtr e = p.expr();
  p.expect_end();
  return e;
}

DenvSurfaceEntry parse_denv_entry(std::string_view line, int line_no) {
  Parser p(lex_line(line, line_no), Dialect::Modern);
  DenvSurfaceEntry entry;
  entry.loc = {line_no, 1};

  while (!p.at(Tok::PipeGt)) {
    Token name = p.expect(Tok::Ident, "parameter name or '|>'");
    p.expect(Tok::Colon, "':'");
    entry.params.emplace_back(name.text, p.expr());
    if (p.at(Tok::Comma)) {
      p.take();
      continue;
    }
    break;
  }
  p.expect(Tok::PipeGt, "'|>'");

  Token cname = p.expect(Tok::Ident, "constant name");
  entry.name = cname.text;
  p.expect(Tok::LParen, "'('");
  std::vector<std::string> heads;
  if (!p.at(Tok::RParen)) {
    heads.push_back(p.expect(Tok::Ident, "parameter name").text);
    while (p.at(Tok::Comma)) {
      p.take();
      heads.push_back(p.expect(Tok::Ident, "parameter name").text);
    }
  }
  p.expect(Tok::RParen, "')'");
  if (heads.size() != entry.params.size())
    fail(ErrKind::Parse, "parameter list of " + entry.name +
                             " does not match its telescope", cname.loc);
  for (std::size_t i = 0; i < heads.size(); ++i)
    if (heads[i] != entry.params[i].first)
      fail(ErrKind::Parse, "parameter " + heads[i] + " of " + entry.name +
                               " does not match telescope variable " +
                               entry.params[i].first, cname.loc);

  p.expect(Tok::Assign, "':='");
  if (p.at(Tok::PN))
    p.take();
  else
    entry.body = p.expr();
  p.expect(Tok::Colon, "':'");
  entry.type = p.expr();
  p.expect_end();
  return entry;
}

// ---------------------------------------------------------------------------
// parameter completion

std::vector<SExprPtr> complete_params(const std::string& cname,
                                      std::vector<SExprPtr> given,
                                      const Telescope& def_tele,
                                      const std::vector<std::string>& scope,
                                      SourceLoc loc) {
  const std::size_t n = def_tele.size();
  const std::size_t k = given.size();
  if (k > n)
    fail(ErrKind::ArityMismatch,
         cname + " expects at most " + std::to_string(n) + " parameter(s), got " +
             std::to_string(k),
         loc);
  if (k == n) return given;
  std::vector<SExprPtr> full;
  full.reserve(n);
  for (std::size_t i = 0; i < n - k; ++i) {
    const std::string& v = def_tele[i].name;
    if (std::find(scope.begin(), scope.end(), v) == scope.end())
      fail(ErrKind::IncompletableParams,
           "incomplete parameter list of " + cname + ": omitted parameter " + v +
               " is not in scope",
           loc);
    full.push_back(s_ident(v, loc));
  }
  for (auto& g : given) full.push_back(std::move(g));
  return full;
}

// ---------------------------------------------------------------------------
// elaboration

Elaborator::Elaborator(TypeChecker& checker, const Telescope& ctx)
    : tc_(checker), ctx_(ctx) {}

TermPtr Elaborator::term(const SExprPtr& e, const TermPtr& expected) {
  return elab(e, expected, false);
}

TermPtr Elaborator::type(const SExprPtr& e) { return elab(e, nullptr, true); }

std::vector<std::string> Elaborator::visible_names() const {
  std::vector<std::string> names;
  names.reserve(ctx_.size() + binders_.size());
  for (const auto& entry : ctx_) names.push_back(entry.name);
  for (const auto& b : binders_) names.push_back(b);
  return names;
}

TermPtr Elaborator::resolve_const(const std::string& name,
                                  std::vector<SExprPtr> given, const SExprPtr& e) {
  const DefEntry* entry = tc_.env().find(name);
  if (!entry)
    fail(ErrKind::UnboundIdentifier, "unknown identifier: " + name, e->loc);
  std::vector<SExprPtr> full =
      complete_params(name, std::move(given), entry->params, visible_names(), e->loc);
  Substitution prefix;
  std::vector<TermPtr> args;
  args.reserve(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    TermPtr expected_i = subst_all(entry->params[i].type, prefix);
    TermPtr arg = elab(full[i], expected_i, false);
    prefix.emplace_back(entry->params[i].name, arg);
    args.push_back(std::move(arg));
  }
  return constant(name, std::move(args));
}

TermPtr Elaborator::elab(const SExprPtr& e, const TermPtr& expected, bool type_pos) {
  switch (e->kind) {
    case SExpr::Kind::Sort:
      return sort_term(e->sort);

    case SExpr::Kind::Ident: {
      for (std::size_t i = binders_.size(); i-- > 0;)
        if (binders_[i] == e->name)
          return bvar(static_cast<int>(binders_.size() - 1 - i));
      for (std::size_t i = ctx_.size(); i-- > 0;)
        if (ctx_[i].name == e->name) return fvar(e->name);
      if (tc_.env().contains(e->name)) return resolve_const(e->name, {}, e);
      fail(ErrKind::UnboundIdentifier, "unknown identifier: " + e->name, e->loc);
    }

    case SExpr::Kind::Inst: {
      // c(L1,...,Ln) is an instantiated constant; when the head names a
      // variable instead, the parenthesized list reads as application
      TermPtr var_head;
      for (std::size_t i = binders_.size(); i-- > 0;)
        if (binders_[i] == e->name) {
          var_head = bvar(static_cast<int>(binders_.size() - 1 - i));
          break;
        }
      if (!var_head)
        for (std::size_t i = ctx_.size(); i-- > 0;)
          if (ctx_[i].name == e->name) {
            var_head = fvar(e->name);
            break;
          }
      if (var_head) {
        TermPtr out = var_head;
        for (const auto& arg : e->args) out = app(out, elab(arg, nullptr, false));
        return out;
      }
      return resolve_const(e->name, e->args, e);
    }

    case SExpr::Kind::RevApp: {
      TermPtr fun = elab(e->b, nullptr, false);
      TermPtr arg = elab(e->a, nullptr, false);
      return app(std::move(fun), std::move(arg));
    }

    case SExpr::Kind::App: {
      TermPtr fun = elab(e->a, nullptr, false);
      TermPtr arg = elab(e->b, nullptr, false);
      return app(std::move(fun), std::move(arg));
    }

    case SExpr::Kind::Abs: {
      TermPtr ann = elab(e->a, nullptr, true);
      SExpr::AbsFlavor flavor = e->flavor;
      // Only ambiguity needs the expected type reduced. Explicit flavors
      // must not force an (as yet unchecked) category through whnf.
      TermPtr expected_w;
      if (expected && flavor == SExpr::AbsFlavor::Ambiguous)
        expected_w = tc_.whnf(expected);

      if (flavor == SExpr::AbsFlavor::Ambiguous) {
        if (expected_w) {
          if (expected_w->kind == Term::Kind::Sort) {
            flavor = SExpr::AbsFlavor::Pi;
            ++counters_.ambiguous_to_pi;
          } else if (expected_w->kind == Term::Kind::Pi) {
            flavor = SExpr::AbsFlavor::Lambda;
            ++counters_.ambiguous_to_lam;
          } else {
            fail(ErrKind::TypeMismatch,
                 "abstraction cannot have type " +
                     print_term(expected, Dialect::Modern) +
                     " (neither a sort nor a product)",
                 e->loc);
          }
        } else if (type_pos) {
          flavor = SExpr::AbsFlavor::Pi; // a type-position abstraction is a product
        } else {
          fail(ErrKind::AmbiguityUnresolved,
               "cannot resolve abstraction [" + e->name +
                   ",...] without an expected type",
               e->loc);
        }
      }

      if (flavor == SExpr::AbsFlavor::Lambda) {
        TermPtr body_expected;
        if (expected_w && expected_w->kind == Term::Kind::Pi)
          body_expected = open_term(expected_w->right, fvar(e->name));
        binders_.push_back(e->name);
        TermPtr body = elab(e->b, body_expected, false);
        binders_.pop_back();
        return lam(e->name, std::move(ann), std::move(body));
      }

      TermPtr body_expected;
      bool body_type_pos = true;
      if (expected_w && expected_w->kind == Term::Kind::Sort) {
        // the sort of a product is the sort of its body
        body_expected = expected_w;
        body_type_pos = false;
      }
      binders_.push_back(e->name);
      TermPtr body = elab(e->b, body_expected, body_type_pos);
      binders_.pop_back();
      return pi(e->name, std::move(ann), std::move(body));
    }
  }
  fail(ErrKind::Internal, "unhandled surface expression");
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string choose_display(const std::string& hint, const std::set<std::string>& avoid,
                           const std::vector<std::string>& stack) {
  std::string base = hint.empty() || hint == "_" ? std::string("x") : hint;
  std::string candidate = base;
  int k = 0;
  auto taken = [&](const std::string& n) {
    return avoid.count(n) > 0 || std::find(stack.begin(), stack.end(), n) != stack.end();
  };
  while (taken(candidate)) candidate = base + std::to_string(++k);
  return candidate;
}

SExprPtr to_surface(const TermPtr& t, std::vector<std::string>& stack,
                    const std::set<std::string>& avoid) {
  switch (t->kind) {
    case Term::Kind::Sort:
      return s_sort(t->sort);
    case Term::Kind::FVar:
      return s_ident(t->name);
    case Term::Kind::BVar: {
      int i = static_cast<int>(stack.size()) - 1 - t->index;
      if (i < 0) return s_ident("#" + std::to_string(t->index));
      return s_ident(stack[static_cast<std::size_t>(i)]);
    }
    case Term::Kind::Const: {
      std::vector<SExprPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(to_surface(a, stack, avoid));
      return s_inst(t->name, std::move(args));
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
      SExprPtr ann = to_surface(t->left, stack, avoid);
      std::string display = choose_display(t->name, avoid, stack);
      stack.push_back(display);
      SExprPtr body = to_surface(t->right, stack, avoid);
      stack.pop_back();
      return s_abs(display, std::move(ann), std::move(body),
                   t->kind == Term::Kind::Lam ? SExpr::AbsFlavor::Lambda
                                              : SExpr::AbsFlavor::Pi);
    }
    case Term::Kind::App: {
      SExprPtr fun = to_surface(t->left, stack, avoid);
      SExprPtr arg = to_surface(t->right, stack, avoid);
      return s_app(std::move(fun), std::move(arg));
    }
  }
  return s_ident("?");
}

void render_original(const SExprPtr& e, std::string& out) {
  switch (e->kind) {
    case SExpr::Kind::Ident:
      out += e->name;
      return;
    case SExpr::Kind::Sort:
      out += e->sort == SortTag::Star ? "PROP" : "Type";
      return;
    case SExpr::Kind::Abs:
      out += "[" + e->name + ",";
      render_original(e->a, out);
      out += "]";
      render_original(e->b, out);
      return;
    case SExpr::Kind::RevApp:
      out += "<";
      render_original(e->a, out);
      out += ">";
      render_original(e->b, out);
      return;
    case SExpr::Kind::App:
      out += "<";
      render_original(e->b, out);
      out += ">";
      render_original(e->a, out);
      return;
    case SExpr::Kind::Inst:
      out += e->name;
      if (!e->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < e->args.size(); ++i) {
          if (i) out += ",";
          render_original(e->args[i], out);
        }
        out += ")";
      }
      return;
  }
}

// levels: 0 anything, 1 no bare abstraction, 2 atoms only
void render_modern(const SExprPtr& e, std::string& out, int level) {
  switch (e->kind) {
    case SExpr::Kind::Ident:
      out += e->name;
      return;
    case SExpr::Kind::Sort:
      out += e->sort == SortTag::Star ? "Prop" : "Type";
      return;
    case SExpr::Kind::Abs: {
      bool parens = level > 0;
      if (parens) out += "(";
      out += e->flavor == SExpr::AbsFlavor::Lambda ? "\\ " : "! ";
      out += e->name + " : ";
      render_modern(e->a, out, 1);
      out += " . ";
      render_modern(e->b, out, 0);
      if (parens) out += ")";
      return;
    }
    case SExpr::Kind::App:
    case SExpr::Kind::RevApp: {
      const SExprPtr& fun = e->kind == SExpr::Kind::App ? e->a : e->b;
      const SExprPtr& arg = e->kind == SExpr::Kind::App ? e->b : e->a;
      bool parens = level > 1;
      if (parens) out += "(";
      render_modern(fun, out, 1);
      out += " ";
      render_modern(arg, out, 2);
      if (parens) out += ")";
      return;
    }
    case SExpr::Kind::Inst:
      out += e->name;
      if (!e->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < e->args.size(); ++i) {
          if (i) out += ",";
          render_modern(e->args[i], out, 0);
        }
        out += ")";
      }
      return;
  }
}

} // namespace

SExprPtr term_to_surface(const TermPtr& t, const std::set<std::string>& avoid) {
  std::vector<std::string> stack;
  return to_surface(t, stack, avoid);
}

std::string render_expr(const SExprPtr& e, Dialect dialect) {
  std::string out;
  if (dialect == Dialect::Original)
    render_original(e, out);
  else
    render_modern(e, out, 0);
  return out;
}

std::string print_term(const TermPtr& t, Dialect dialect, std::set<std::string> avoid) {
  auto fv = free_vars(t);
  avoid.insert(fv.begin(), fv.end());
  auto cs = constants_of(t);
  avoid.insert(cs.begin(), cs.end());
  return render_expr(term_to_surface(t, avoid), dialect);
}

std::string print_line(const std::optional<std::string>& indicator,
                       const std::string& identifier, RawLine::Content kind,
                       const TermPtr& content, const TermPtr& category,
                       Dialect dialect, const std::set<std::string>& avoid) {
  std::string out;
  if (indicator) out += *indicator + " ";
  out += "* " + identifier + " := ";
  switch (kind) {
    case RawLine::Content::Dash: out += "---"; break;
    case RawLine::Content::PN: out += "PN"; break;
    case RawLine::Content::Expr: out += print_term(content, dialect, avoid); break;
  }
  out += dialect == Dialect::Original ? " ; " : " : ";
  out += print_term(category, dialect, avoid);
  return out;
}

} // namespace aut

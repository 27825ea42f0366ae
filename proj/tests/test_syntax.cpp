#include <doctest.h>

#include <functional>

#include "testutil.hpp"

using namespace aut;
using namespace testutil;

TEST_CASE("parse_book splits the four entries") {
  auto lines = parse_book_text("B * IMP := [X,A]B ; PROP", Dialect::Original);
  REQUIRE(lines.size() == 1);
  const RawLine& l = lines[0];
  CHECK(l.indicator == "B");
  CHECK(l.identifier == "IMP");
  CHECK(l.content_kind == RawLine::Content::Expr);
  REQUIRE(l.content->kind == SExpr::Kind::Abs);
  CHECK(l.content->name == "X");
  CHECK(l.content->flavor == SExpr::AbsFlavor::Ambiguous);
  CHECK(l.content->a->kind == SExpr::Kind::Ident);
  CHECK(l.category->kind == SExpr::Kind::Sort);
}

TEST_CASE("empty indicators: blank and epsilon") {
  auto lines = parse_book_text("* A := --- ; PROP\n\xce\xb5 * B := --- : PROP",
                               Dialect::Original);
  REQUIRE(lines.size() == 2);
  CHECK(!lines[0].indicator);
  CHECK(lines[0].content_kind == RawLine::Content::Dash);
  CHECK(!lines[1].indicator);
  CHECK(lines[1].loc.line == 2);
}

TEST_CASE("reversed application nests as in <<X>I>J") {
  auto lines =
      parse_book_text("J * TRIMP := [X,A]<<X>I>J ; IMP(A,C)", Dialect::Original);
  const SExprPtr& body = lines[0].content->b;
  REQUIRE(body->kind == SExpr::Kind::RevApp);
  CHECK(body->b->kind == SExpr::Kind::Ident); // fun J
  CHECK(body->b->name == "J");
  REQUIRE(body->a->kind == SExpr::Kind::RevApp); // arg <X>I
  CHECK(body->a->b->name == "I");
  CHECK(body->a->a->name == "X");
}

TEST_CASE("comments, blank lines and both category separators") {
  auto lines = parse_book_text("# a comment\n\n* A := --- ; PROP\n* B := PN : PROP\n",
                               Dialect::Original);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].loc.line == 3);
  CHECK(lines[1].content_kind == RawLine::Content::PN);
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_book_text("* A --- ; PROP", Dialect::Original);
    FAIL("missing :=");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::Parse);
    CHECK(e.loc.line == 1);
    CHECK(e.loc.col > 1);
  }
  CHECK_THROWS_AS(parse_expr_text("[X,A B", Dialect::Original), Error);
  CHECK_THROWS_AS(parse_expr_text("<X I", Dialect::Original), Error);
  CHECK_THROWS_AS(parse_expr_text("IMP(A,", Dialect::Original), Error);
  CHECK_THROWS_AS(parse_expr_text("\\ x : A", Dialect::Modern), Error);
}

TEST_CASE("modern dialect: binders, application, arrows, star") {
  SExprPtr e = parse_expr_text("\\ x : A -> B . f x (g x)", Dialect::Modern);
  REQUIRE(e->kind == SExpr::Kind::Abs);
  CHECK(e->flavor == SExpr::AbsFlavor::Lambda);
  CHECK(e->a->kind == SExpr::Kind::Abs); // A -> B is a product
  CHECK(e->a->flavor == SExpr::AbsFlavor::Pi);
  // f x (g x) associates left: (f x) applied to (g x); the latter parses
  // in instantiation shape and is reinterpreted at elaboration
  REQUIRE(e->b->kind == SExpr::Kind::App);
  CHECK(e->b->a->kind == SExpr::Kind::App);

  SExprPtr s = parse_expr_text("*", Dialect::Modern);
  CHECK(s->kind == SExpr::Kind::Sort);
  CHECK(s->sort == SortTag::Star);
  CHECK(parse_expr_text("Type", Dialect::Modern)->sort == SortTag::Box);
  CHECK(parse_expr_text("set", Dialect::Modern)->sort == SortTag::Star);
}

TEST_CASE("complete_params prepends omitted leading variables") {
  Telescope imp_tele{{"A", star()}, {"B", star()}};
  std::vector<std::string> scope{"A", "C"};

  auto one = complete_params("IMP", {s_ident("CON")}, imp_tele, scope);
  REQUIRE(one.size() == 2);
  CHECK(one[0]->name == "A");
  CHECK(one[1]->name == "CON");

  auto full = complete_params("IMP", {s_ident("A"), s_ident("C")}, imp_tele, scope);
  REQUIRE(full.size() == 2);
  CHECK(full[0]->name == "A");
  CHECK(full[1]->name == "C");

  try {
    complete_params("IMP", {s_ident("X")}, imp_tele, {"C"});
    FAIL("A is not in scope");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::IncompletableParams);
  }
  try {
    complete_params("IMP", {s_ident("A"), s_ident("B"), s_ident("C")}, imp_tele,
                    scope);
    FAIL("over-long list");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::ArityMismatch);
  }
}

TEST_CASE("elaborate resolves ambiguity from the expected type") {
  Book book = load_book("grundlagen_prefix.aut");
  TypeChecker tc(book.env());
  Telescope ctx{{"A", star()}, {"B", star()}};
  Elaborator elab(tc, ctx);

  // [X,A]B against the star sort becomes a product
  TermPtr as_pi = elab.term(parse_expr_text("[X,A]B", Dialect::Original), star());
  CHECK(alpha_eq(as_pi, pi("X", fvar("A"), fvar("B"))));
  CHECK(elab.counters().ambiguous_to_pi == 1);

  // the same shape against IMP(A,A), which unfolds to a product, becomes
  // an abstraction
  Elaborator elab2(tc, ctx);
  TermPtr as_lam = elab2.term(parse_expr_text("[X,A]X", Dialect::Original),
                              constant("IMP", {fvar("A"), fvar("A")}));
  CHECK(alpha_eq(as_lam, lam("X", fvar("A"), bvar(0))));
  CHECK(elab2.counters().ambiguous_to_lam == 1);

  // <A1>X is X applied to A1
  Telescope ctx2{{"A", star()}, {"A1", fvar("A")}, {"X", pi("q", fvar("A"), star())}};
  Elaborator elab3(tc, ctx2);
  TermPtr apped = elab3.term(parse_expr_text("<A1>X", Dialect::Original), nullptr);
  CHECK(alpha_eq(apped, app(fvar("X"), fvar("A1"))));
}

TEST_CASE("elaborate completes instantiation lists against the scope") {
  Book book = load_book("grundlagen_fragment.aut");
  TypeChecker tc(book.env());
  Telescope ctx = book.typing_context("A"); // A : Prop
  Elaborator elab(tc, ctx);

  TermPtr t = elab.term(parse_expr_text("IMP(CON)", Dialect::Original), star());
  CHECK(alpha_eq(t, constant("IMP", {fvar("A"), constant("CON")})));
}

TEST_CASE("elaborate rejects unbound names and unresolvable ambiguity") {
  Book book = load_book("grundlagen_prefix.aut");
  TypeChecker tc(book.env());
  Telescope ctx{{"A", star()}};
  Elaborator elab(tc, ctx);

  try {
    elab.term(parse_expr_text("nosuch", Dialect::Original), nullptr);
    FAIL("unbound");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::UnboundIdentifier);
  }
  try {
    elab.term(parse_expr_text("[X,A]X", Dialect::Original), nullptr);
    FAIL("no expected type");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::AmbiguityUnresolved);
  }
  try {
    elab.term(parse_expr_text("[X,A]X", Dialect::Original), fvar("A"));
    FAIL("neutral expected type");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::TypeMismatch);
  }
}

TEST_CASE("binders shadow book variables") {
  Book book = load_book("grundlagen_prefix.aut");
  TypeChecker tc(book.env());
  Telescope ctx{{"A", star()}, {"X", fvar("A")}};
  Elaborator elab(tc, ctx);
  // the binder X hides the context variable X inside the body
  TermPtr t = elab.term(parse_expr_text("[X,A]X", Dialect::Original), star());
  CHECK(alpha_eq(t, pi("X", fvar("A"), bvar(0))));
}

TEST_CASE("printing the IMP line in the modern dialect") {
  Book book = load_book("grundlagen_prefix.aut");
  const Line& imp = book.lines()[2];
  std::string s = print_line(imp.indicator, imp.identifier, RawLine::Content::Expr,
                             imp.content, imp.category, Dialect::Modern,
                             book.identifier_set());
  CHECK(s == "B * IMP := ! X : A . B : Prop");
}

TEST_CASE("printer freshens binder names that would capture") {
  // \A:*. (\A:A. A) K  printed and reparsed stays alpha-equal even though
  // hints collide with the free K and each other
  TermPtr inner = lam("A", bvar(0), bvar(0));
  TermPtr t = lam("A", star(), app(inner, fvar("K")));
  std::string s = print_term(t, Dialect::Modern);
  SExprPtr back = parse_expr_text(s, Dialect::Modern);
  Env env;
  TypeChecker tc(env);
  Telescope ctx{{"K", star()}};
  Elaborator elab(tc, ctx);
  CHECK(alpha_eq(elab.term(back, nullptr), t));
}

TEST_CASE("printing the empty book yields empty output") {
  Book empty = check_book({}, {});
  CHECK(print_book(empty, Dialect::Original).empty());
  CHECK(print_book(empty, Dialect::Modern).empty());
}

TEST_CASE("book round-trips through both dialects") {
  for (const char* corpus :
       {"grundlagen_fragment.aut", "peano.aut", "subset_lemma.aut"}) {
    Book original = load_book(corpus);
    for (Dialect d : {Dialect::Original, Dialect::Modern}) {
      CAPTURE(corpus);
      std::string printed = print_book(original, d);
      Book reparsed = check_book(parse_book_text(printed, d), {});
      REQUIRE(reparsed.lines().size() == original.lines().size());
      for (std::size_t i = 0; i < original.lines().size(); ++i) {
        const Line& a = original.lines()[i];
        const Line& b = reparsed.lines()[i];
        CHECK(a.identifier == b.identifier);
        CHECK(a.kind == b.kind);
        CHECK(alpha_eq(a.category, b.category));
        if (a.kind == Line::Kind::Definition) CHECK(alpha_eq(a.content, b.content));
      }
      // printing once more is a fixpoint
      CHECK(print_book(reparsed, d) == printed);
    }
  }
}

TEST_CASE("original dialect never yields explicit flavors or juxtaposition") {
  auto lines = parse_book_text(slurp(corpus_path("grundlagen_fragment.aut")),
                               Dialect::Original);
  std::function<void(const SExprPtr&)> walk = [&](const SExprPtr& e) {
    if (!e) return;
    if (e->kind == SExpr::Kind::Abs) CHECK(e->flavor == SExpr::AbsFlavor::Ambiguous);
    CHECK(e->kind != SExpr::Kind::App);
    walk(e->a);
    walk(e->b);
    for (const auto& a : e->args) walk(a);
  };
  for (const auto& l : lines) {
    walk(l.content);
    walk(l.category);
  }
}

TEST_CASE("the .denv entry parser checks its head against the telescope") {
  DenvSurfaceEntry e =
      parse_denv_entry("A : Prop, B : Prop |> IMP(A,B) := ! x : A . B : Prop", 1);
  CHECK(e.name == "IMP");
  CHECK(e.params.size() == 2);
  CHECK(e.body.has_value());

  DenvSurfaceEntry pn = parse_denv_entry("|> CON() := PN : Prop", 2);
  CHECK(pn.name == "CON");
  CHECK(pn.params.empty());
  CHECK(!pn.body.has_value());

  CHECK_THROWS_AS(parse_denv_entry("A : Prop |> IMP(B) := A : Prop", 3), Error);
}

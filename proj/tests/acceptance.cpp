// End-to-end acceptance suite. Each case prints one PASS/FAIL line and
// holds the stated runtime budget.

#include <doctest.h>

#include <chrono>
#include <iostream>

#include <json.hpp>

#include "aut/cli.hpp"
#include "testutil.hpp"

using namespace aut;
using namespace testutil;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::chrono::steady_clock::time_point start;
  bool finished = false;

  Criterion(int number, std::string title, double budget_seconds)
      : number(number), title(std::move(title)), budget_seconds(budget_seconds),
        start(std::chrono::steady_clock::now()) {}

  void finish() {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    CHECK(elapsed < budget_seconds);
    finished = true;
    std::printf("[criterion %2d] PASS  (%.2fs)  %s\n", number, elapsed,
                title.c_str());
  }

  ~Criterion() {
    if (!finished)
      std::printf("[criterion %2d] FAIL  %s\n", number, title.c_str());
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("criterion 1: the Grundlagen fragment checks with 8/6/2 line kinds") {
  Criterion c(1, "Grundlagen fragment golden corpus", 1.0);
  Book book = load_book("grundlagen_fragment.aut");
  LineCounts counts = book.counts();
  REQUIRE(counts.total() == 16);
  CHECK(counts.assumptions == 8);
  CHECK(counts.definitions == 6);
  CHECK(counts.primitives == 2);
  CHECK(book.env().size() == 8);
  c.finish();
}

TEST_CASE("criterion 2: the five-line prefix reproduces its checking obligations") {
  Criterion c(2, "obligation display golden file", 1.0);
  RunResult r = run_cli({"check", corpus_path("grundlagen_prefix.aut"), "--dialect",
                         "original", "--emit-obligations"});
  REQUIRE(r.code == 0);

  // the obligation block is byte-stable; the verdict line that follows
  // carries the invocation path, so it is matched separately
  std::size_t cut = r.out.find(corpus_path("grundlagen_prefix.aut") + ": ok");
  REQUIRE(cut != std::string::npos);
  CHECK(r.out.substr(0, cut) ==
        slurp(corpus_path("grundlagen_prefix.obligations.golden")));
  CHECK(r.out.find("∅ ; ∅ ⊢ Prop : Type") != std::string::npos);
  CHECK(r.out.find("IMP(A,B) := ! X : A . B : Prop ; A, B, C : Prop ⊢ "
                   "IMP(A,B) : Prop") != std::string::npos);

  // byte stability
  RunResult again = run_cli({"check", corpus_path("grundlagen_prefix.aut"),
                             "--dialect", "original", "--emit-obligations"});
  CHECK(again.out == r.out);
  c.finish();
}

TEST_CASE("criterion 3: the subset lemma checks and its proof term unfolds fully") {
  Criterion c(3, "subset transitivity lemma corpus", 1.0);
  Book book = load_book("subset_lemma.aut");
  REQUIRE(book.counts().total() == 17);

  const DefEntry& d4 = book.env().at(book.env().index_of("d4"));
  TypeChecker tc(book.env());
  TermPtr nf = tc.normalize(*d4.body);

  // \x:S. \z:(A x). v x (u x z)
  TermPtr expected =
      lam("x", fvar("S"),
          lam("z", app(fvar("A"), bvar(0)),
              app(app(fvar("v"), bvar(1)),
                  app(app(fvar("u"), bvar(1)), bvar(0)))));
  CHECK(alpha_eq(nf, expected));
  c.finish();
}

TEST_CASE("criterion 4: the Peano postulates check, with instantiated parameters") {
  Criterion c(4, "Peano corpus", 1.0);
  Book book = load_book("peano.aut");
  CHECK(book.counts().total() == 13);

  // s(0) was admitted with its one-entry parameter list filled in
  const DefEntry& one = book.env().at(book.env().index_of("1"));
  CHECK(alpha_eq(*one.body, constant("s", {constant("0")})));

  // not(...) was completed from the scope: not := imp(a, con)
  const DefEntry& noot = book.env().at(book.env().index_of("not"));
  CHECK(alpha_eq(*noot.body, constant("imp", {fvar("a"), constant("con")})));
  c.finish();
}

TEST_CASE("criterion 5: incomplete parameter lists complete from the left only") {
  Criterion c(5, "parameter completion semantics", 1.0);
  Book book = load_book("grundlagen_fragment.aut");

  {
    TypeChecker tc(book.env());
    Telescope ctx = book.typing_context("A");
    Elaborator elab(tc, ctx);
    TermPtr t = elab.term(parse_expr_text("IMP(CON)", Dialect::Original), star());
    CHECK(alpha_eq(t, constant("IMP", {fvar("A"), constant("CON")})));
  }
  {
    TypeChecker tc(book.env());
    Telescope ctx = book.typing_context("C1");
    Elaborator elab(tc, ctx);
    TermPtr t = elab.term(parse_expr_text("ET([X,NOT(A)]C1)", Dialect::Original),
                          fvar("A"));
    REQUIRE(t->kind == Term::Kind::Const);
    CHECK(t->name == "ET");
    REQUIRE(t->args.size() == 2);
    CHECK(alpha_eq(t->args[0], fvar("A")));
    CHECK(alpha_eq(t->args[1],
                   lam("X", constant("NOT", {fvar("A")}), fvar("C1"))));
  }
  {
    // a gap that is not an initial segment cannot be repaired
    TypeChecker tc(book.env());
    Telescope ctx; // empty: the leading IMP parameter A is out of scope
    Elaborator elab(tc, ctx);
    try {
      elab.term(parse_expr_text("IMP(CON)", Dialect::Original), star());
      FAIL("omitted parameter is not in scope");
    } catch (const Error& e) {
      CHECK(e.kind == ErrKind::IncompletableParams);
    }
    CHECK(run_cli({"check", corpus_path("neg/middle_gap.aut")}).code == 1);
  }
  c.finish();
}

TEST_CASE("criterion 6: dead-end removal is order independent and preserves ok") {
  Criterion c(6, "clean-book properties over 100 random books", 30.0);
  std::mt19937 seed_rng(20260808);

  for (int round = 0; round < 100; ++round) {
    BookGen gen(seed_rng());
    auto shapes = shapes_of(gen.coherent_book(40));
    REQUIRE(check_coherent(shapes).accepted());

    CleanReport parallel = clean_lines(shapes);
    for (int order = 0; order < 4; ++order) {
      std::mt19937 rng(seed_rng());
      REQUIRE(random_order_clean(shapes, rng) == parallel.kept);
    }

    // idempotence
    std::vector<LineShape> kept;
    for (std::size_t pos : parallel.kept) kept.push_back(shapes[pos]);
    REQUIRE(clean_lines(kept).removed.empty());
    REQUIRE(dead_ends(kept).empty());
  }

  for (int round = 0; round < 100; ++round) {
    BookGen gen(seed_rng());
    Book book = check_book(gen.ok_book(40), {});
    CleanedBook cleaned = clean_book(book); // re-checks the survivors
    REQUIRE(dead_ends(cleaned.book).empty());
  }
  c.finish();
}

TEST_CASE("criterion 7: book/environment translations round-trip") {
  Criterion c(7, "environment round trips over 100 generated books", 60.0);

  Book fragment = load_book("grundlagen_fragment.aut");
  RoundtripReport base = roundtrip_check(fragment);
  CHECK(base.failures.empty());
  REQUIRE(base.ok);

  std::mt19937 seed_rng(20260809);
  for (int round = 0; round < 100; ++round) {
    BookGen gen(seed_rng());
    Book book = check_book(gen.ok_book(25), {});
    Book clean = clean_book(book).book;
    RoundtripReport r = roundtrip_check(clean);
    CAPTURE(round);
    CHECK(r.failures.empty());
    REQUIRE(r.ok);
  }
  c.finish();
}

TEST_CASE("criterion 8: lazy conversion agrees with the normalization oracle") {
  Criterion c(8, "conversion oracle equivalence on 1200 terms", 60.0);
  std::mt19937 rng(20260810);
  int checked = 0, positives = 0, generated = 0;

  for (unsigned seed : {11u, 22u, 33u}) {
    WellTypedPool pool = make_pool(seed, 350);
    generated += static_cast<int>(pool.terms.size());
    for (const auto& [t, type] : pool.terms)
      REQUIRE(term_size(t) <= 25);

    for (int i = 0; i < 300; ++i) {
      const auto& [a, ta] = pool.terms[rng() % pool.terms.size()];
      const auto& [b, tb] = pool.terms[rng() % pool.terms.size()];
      bool lazy = TypeChecker(pool.env).convertible(a, b);
      bool oracle = alpha_eq(oracle_normalize(pool.env, a, rng),
                             oracle_normalize(pool.env, b, rng));
      REQUIRE(lazy == oracle);
      ++checked;
      positives += oracle;
    }

    // pairs that reduce to each other must agree on the positive side too
    for (int i = 0; i < 100; ++i) {
      const auto& [a, ta] = pool.terms[rng() % pool.terms.size()];
      TermPtr b = oracle_normalize(pool.env, a, rng);
      bool lazy = TypeChecker(pool.env).convertible(a, b);
      bool oracle = alpha_eq(oracle_normalize(pool.env, a, rng), b);
      REQUIRE(lazy == oracle);
      REQUIRE(lazy);
      ++checked;
      positives += oracle;
    }

    // confluence: randomized strategies reach the same normal form
    for (std::size_t i = 0; i < pool.terms.size(); ++i) {
      const TermPtr& t = pool.terms[i].first;
      std::mt19937 r1(seed + i), r2(seed + i + 1000), r3(seed + i + 2000);
      TermPtr n1 = oracle_normalize(pool.env, t, r1);
      REQUIRE(alpha_eq(n1, oracle_normalize(pool.env, t, r2)));
      REQUIRE(alpha_eq(n1, oracle_normalize(pool.env, t, r3)));
      REQUIRE(alpha_eq(n1, TypeChecker(pool.env).normalize(t)));
    }
  }
  CHECK(generated >= 1000);
  CHECK(checked >= 1000);
  CHECK(positives >= 300); // the sample contains genuinely convertible pairs
  c.finish();
}

TEST_CASE("criterion 9: eta stays off by default and changes no corpus verdict") {
  Criterion c(9, "eta flag behaviour", 5.0);
  KernelConfig off;
  KernelConfig on;
  on.eta_enabled = true;

  for (const char* corpus : {"grundlagen_fragment.aut", "grundlagen_prefix.aut",
                             "peano.aut", "subset_lemma.aut"}) {
    CAPTURE(corpus);
    Book plain = load_book(corpus, Dialect::Original, off);
    CHECK(plain.stats().eta == 0);
    Book with_eta = load_book(corpus, Dialect::Original, on);
    CHECK(with_eta.env().size() == plain.env().size()); // same verdict: ok
  }

  // the dedicated pair converts only under eta
  Env env;
  TermPtr expanded = lam("x", fvar("A"), app(fvar("F"), bvar(0)));
  CHECK(!TypeChecker(env, off).convertible(expanded, fvar("F")));
  TypeChecker tc(env, on);
  CHECK(tc.convertible(expanded, fvar("F")));
  CHECK(tc.stats().eta == 1);

  // and end to end through the book checker
  CHECK(run_cli({"check", corpus_path("eta_pair.aut"), "--dialect", "modern"}).code == 1);
  CHECK(run_cli({"check", corpus_path("eta_pair.aut"), "--dialect", "modern",
                 "--eta"}).code == 0);
  c.finish();
}

TEST_CASE("criterion 10: mutated books fail with their designated error class") {
  Criterion c(10, "negative suite", 5.0);
  struct Neg {
    const char* file;
    const char* dialect;
    const char* kind;
    int exit_code;
  };
  const Neg table[] = {
      {"neg/dup_identifier.aut", "original", "NotFresh", 1},
      {"neg/dangling_indicator.aut", "original", "DanglingIndicator", 1},
      {"neg/indicator_not_assumption.aut", "original", "DanglingIndicator", 1},
      {"neg/wrong_category.aut", "original", "TypeMismatch", 1},
      {"neg/type_mismatch_def.aut", "original", "TypeMismatch", 1},
      {"neg/lambda_category.aut", "modern", "TypeMismatch", 1},
      {"neg/overlong_params.aut", "original", "ArityMismatch", 1},
      {"neg/middle_gap.aut", "original", "IncompletableParams", 1},
      {"neg/unbound_ident.aut", "original", "UnboundIdentifier", 1},
      {"neg/box_assumption.aut", "original", "SortError", 1},
      {"neg/pi_applied.aut", "modern", "NotAFunction", 1},
      {"neg/ambiguous_arg.aut", "original", "AmbiguityUnresolved", 1},
      {"neg/parse_error.aut", "original", "ParseError", 2},
  };
  int count = 0;
  for (const Neg& n : table) {
    CAPTURE(n.file);
    RunResult r =
        run_cli({"check", corpus_path(n.file), "--dialect", n.dialect});
    CHECK(r.code == n.exit_code);
    CHECK(r.err.find(n.kind) != std::string::npos);
    ++count;
  }
  CHECK(count >= 10);
  c.finish();
}

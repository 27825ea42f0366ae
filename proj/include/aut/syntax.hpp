#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aut/kernel.hpp"
#include "aut/term.hpp"

namespace aut {

// The two concrete notations for books. The original one is the
// classical four-entry format with [x,A]B abstractions (lambda and Pi
// written alike) and <a>f application; the modern one spells binders
// with \ and ! and applies functions by juxtaposition.
enum class Dialect { Original, Modern };

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  enum class Kind { Ident, Sort, Abs, RevApp, App, Inst };
  enum class AbsFlavor { Ambiguous, Lambda, Pi };

  Kind kind;
  std::string name;           // Ident, Inst head, Abs binder
  SortTag sort = SortTag::Star;
  AbsFlavor flavor = AbsFlavor::Ambiguous;
  SExprPtr a, b;              // Abs: annotation, body; RevApp: arg, fun; App: fun, arg
  std::vector<SExprPtr> args; // Inst
  SourceLoc loc;
};

SExprPtr s_ident(std::string name, SourceLoc loc = {});
SExprPtr s_sort(SortTag tag, SourceLoc loc = {});
SExprPtr s_abs(std::string binder, SExprPtr ann, SExprPtr body,
               SExpr::AbsFlavor flavor, SourceLoc loc = {});
SExprPtr s_revapp(SExprPtr arg, SExprPtr fun, SourceLoc loc = {});
SExprPtr s_app(SExprPtr fun, SExprPtr arg, SourceLoc loc = {});
SExprPtr s_inst(std::string name, std::vector<SExprPtr> args, SourceLoc loc = {});

// One source line of a book, before elaboration.
struct RawLine {
  enum class Content { Dash, PN, Expr };

  std::optional<std::string> indicator; // nullopt = empty context
  std::string identifier;
  Content content_kind = Content::Dash;
  SExprPtr content; // set iff content_kind == Expr
  SExprPtr category;
  SourceLoc loc;
  std::string text;       // source text for reports
  Dialect dialect = Dialect::Original;
};

// Parses a whole book: one RawLine per non-empty, non-comment line.
// Lines starting with '#' are comments. Both ';' and ':' separate the
// content from the category. Throws Error(Parse) with a location.
std::vector<RawLine> parse_book_text(std::string_view text, Dialect dialect);

// Expression-only entry point (tests, .denv payloads).
SExprPtr parse_expr_text(std::string_view text, Dialect dialect, int line_no = 1);

// Surface form of one .denv entry: params |> name(params) := body : type.
struct DenvSurfaceEntry {
  std::string name;
  std::vector<std::pair<std::string, SExprPtr>> params;
  std::optional<SExprPtr> body; // nullopt = PN
  SExprPtr type;
  SourceLoc loc;
};
DenvSurfaceEntry parse_denv_entry(std::string_view line, int line_no);

// Completion of an omitted initial parameter segment: when fewer
// arguments are given than the definition's telescope expects, the
// leading telescope variables are inserted in front, provided they are
// all visible in the current scope.
std::vector<SExprPtr> complete_params(const std::string& cname,
                                      std::vector<SExprPtr> given,
                                      const Telescope& def_tele,
                                      const std::vector<std::string>& scope,
                                      SourceLoc loc = {});

struct ElabCounters {
  int ambiguous_to_pi = 0;  // resolved against an expected sort
  int ambiguous_to_lam = 0; // resolved against an expected product
};

// Turns surface expressions into core terms: resolves identifiers
// (binders shadow context variables, which shadow constants), fills in
// omitted parameter prefixes, and decides lambda-versus-Pi for the
// original dialect's ambiguous abstractions from the expected type.
class Elaborator {
public:
  // ctx and checker must outlive the elaborator; reductions performed
  // while steering ambiguity resolution land in checker's stats.
  Elaborator(TypeChecker& checker, const Telescope& ctx);

  TermPtr term(const SExprPtr& e, const TermPtr& expected); // expected may be null
  TermPtr type(const SExprPtr& e); // type position: ambiguous binders become Pi

  const ElabCounters& counters() const { return counters_; }

private:
  TermPtr elab(const SExprPtr& e, const TermPtr& expected, bool type_pos);
  TermPtr resolve_const(const std::string& name, std::vector<SExprPtr> given,
                        const SExprPtr& e);
  std::vector<std::string> visible_names() const;

  TypeChecker& tc_;
  const Telescope& ctx_;
  std::vector<std::string> binders_;
  ElabCounters counters_;
};

// ---------------------------------------------------------------------------
// printing

// Core term -> surface tree with explicit flavors; binder display names
// are freshened against `avoid` and enclosing binders so the output
// re-parses to an alpha-equal term.
SExprPtr term_to_surface(const TermPtr& t, const std::set<std::string>& avoid);

std::string render_expr(const SExprPtr& e, Dialect dialect);

std::string print_term(const TermPtr& t, Dialect dialect,
                       std::set<std::string> avoid = {});

std::string print_line(const std::optional<std::string>& indicator,
                       const std::string& identifier, RawLine::Content kind,
                       const TermPtr& content, const TermPtr& category,
                       Dialect dialect, const std::set<std::string>& avoid);

} // namespace aut

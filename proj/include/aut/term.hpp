#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aut/error.hpp"

namespace aut {

enum class SortTag { Star, Box };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Core expressions in locally nameless form: occurrences of bound
// variables are de Bruijn indices (BVar), context variables are names
// (FVar). Binder names are kept only as printing hints and ignored by
// alpha_eq, so alpha-equivalence is plain structural equality.
//
// Constants carry their full instantiated argument list; they are an
// atomic form, distinct from application.
struct Term {
  enum class Kind { Sort, FVar, BVar, Const, Lam, Pi, App };

  Kind kind;
  SortTag sort = SortTag::Star; // Sort
  std::string name;             // FVar name / Const name / binder hint
  int index = 0;                // BVar
  std::vector<TermPtr> args;    // Const
  TermPtr left, right;          // Lam, Pi: annotation, body; App: fun, arg
};

TermPtr star();
TermPtr box();
TermPtr sort_term(SortTag tag);
TermPtr fvar(std::string name);
TermPtr bvar(int index);
TermPtr constant(std::string name, std::vector<TermPtr> args = {});
TermPtr lam(std::string hint, TermPtr ann, TermPtr body);
TermPtr pi(std::string hint, TermPtr ann, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);

bool is_sort(const TermPtr& t, SortTag tag);

// true iff a and b are identical modulo bound-variable names
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// capture-avoiding substitution of a free variable
TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& value);

// simultaneous substitution of several free variables
using Substitution = std::vector<std::pair<std::string, TermPtr>>;
TermPtr subst_all(const TermPtr& t, const Substitution& map);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> constants_of(const TermPtr& t);

// replace BVar(0) of a binder body / re-bind a free variable
TermPtr open_term(const TermPtr& body, const TermPtr& value);
TermPtr close_term(const TermPtr& t, const std::string& x);

// rename constants (used by the env -> book translation)
TermPtr rename_constants(const TermPtr& t,
                         const std::vector<std::pair<std::string, std::string>>& map);

std::size_t term_size(const TermPtr& t);

// An ordered list of named declarations x : A; each type may mention
// only earlier variables of the same telescope. Houses both typing
// contexts and the parameter lists of definitions.
struct TeleEntry {
  std::string name;
  TermPtr type;
};
using Telescope = std::vector<TeleEntry>;

// Simultaneous substitution of args for the telescope's variables in
// target. Throws ArityMismatch when the lengths differ.
TermPtr instantiate(const Telescope& tele, const TermPtr& target,
                    const std::vector<TermPtr>& args);

} // namespace aut

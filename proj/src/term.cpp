#include "aut/term.hpp"

#include <algorithm>

namespace aut {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::Parse: return "ParseError";
    case ErrKind::Io: return "IoError";
    case ErrKind::Usage: return "UsageError";
    case ErrKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrKind::NotAFunction: return "NotAFunction";
    case ErrKind::TypeMismatch: return "TypeMismatch";
    case ErrKind::SortError: return "SortError";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::NotFresh: return "NotFresh";
    case ErrKind::DanglingIndicator: return "DanglingIndicator";
    case ErrKind::AmbiguityUnresolved: return "AmbiguityUnresolved";
    case ErrKind::IncompletableParams: return "IncompletableParams";
    case ErrKind::UnfoldPrimitive: return "UnfoldPrimitive";
    case ErrKind::FuelExhausted: return "FuelExhausted";
    case ErrKind::BookNotOk: return "BookNotOk";
    case ErrKind::IllegalEnv: return "IllegalEnv";
    case ErrKind::Coherence: return "CoherenceViolation";
    case ErrKind::Internal: return "InternalError";
  }
  return "Error";
}

TermPtr star() {
  static const TermPtr t = sort_term(SortTag::Star);
  return t;
}

TermPtr box() {
  static const TermPtr t = sort_term(SortTag::Box);
  return t;
}

TermPtr sort_term(SortTag tag) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Sort;
  t->sort = tag;
  return t;
}

TermPtr fvar(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::FVar;
  t->name = std::move(name);
  return t;
}

TermPtr bvar(int index) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::BVar;
  t->index = index;
  return t;
}

TermPtr constant(std::string name, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->name = std::move(name);
  t->args = std::move(args);
  return t;
}

static TermPtr binder(Term::Kind kind, std::string hint, TermPtr ann, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->name = std::move(hint);
  t->left = std::move(ann);
  t->right = std::move(body);
  return t;
}

TermPtr lam(std::string hint, TermPtr ann, TermPtr body) {
  return binder(Term::Kind::Lam, std::move(hint), std::move(ann), std::move(body));
}

TermPtr pi(std::string hint, TermPtr ann, TermPtr body) {
  return binder(Term::Kind::Pi, std::move(hint), std::move(ann), std::move(body));
}

TermPtr app(TermPtr fun, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->left = std::move(fun);
  t->right = std::move(arg);
  return t;
}

bool is_sort(const TermPtr& t, SortTag tag) {
  return t && t->kind == Term::Kind::Sort && t->sort == tag;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Sort: return a->sort == b->sort;
    case Term::Kind::FVar: return a->name == b->name;
    case Term::Kind::BVar: return a->index == b->index;
    case Term::Kind::Const: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_eq(a->args[i], b->args[i])) return false;
      return true;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi:
      return alpha_eq(a->left, b->left) && alpha_eq(a->right, b->right);
    case Term::Kind::App:
      return alpha_eq(a->left, b->left) && alpha_eq(a->right, b->right);
  }
  return false;
}

// Generic rewriting walk. fn is applied at each node; returning null
// means "keep descending". Unchanged subtrees are shared, not copied.
template <typename F>
static TermPtr rewrite(const TermPtr& t, const F& fn) {
  if (TermPtr r = fn(t)) return r;
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::FVar:
    case Term::Kind::BVar:
      return t;
    case Term::Kind::Const: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr a2 = rewrite(a, fn);
        changed = changed || a2 != a;
        args.push_back(std::move(a2));
      }
      return changed ? constant(t->name, std::move(args)) : t;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
      TermPtr ann = rewrite(t->left, fn);
      TermPtr body = rewrite(t->right, fn);
      if (ann == t->left && body == t->right) return t;
      return binder(t->kind, t->name, std::move(ann), std::move(body));
    }
    case Term::Kind::App: {
      TermPtr f = rewrite(t->left, fn);
      TermPtr a = rewrite(t->right, fn);
      if (f == t->left && a == t->right) return t;
      return app(std::move(f), std::move(a));
    }
  }
  return t;
}

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& value) {
  return rewrite(t, [&](const TermPtr& n) -> TermPtr {
    if (n->kind == Term::Kind::FVar && n->name == x) return value;
    return nullptr;
  });
}

TermPtr subst_all(const TermPtr& t, const Substitution& map) {
  if (map.empty()) return t;
  return rewrite(t, [&](const TermPtr& n) -> TermPtr {
    if (n->kind == Term::Kind::FVar) {
      for (const auto& [x, v] : map)
        if (n->name == x) return v;
    }
    return nullptr;
  });
}

static void collect_free(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::BVar:
      return;
    case Term::Kind::FVar:
      out.insert(t->name);
      return;
    case Term::Kind::Const:
      for (const auto& a : t->args) collect_free(a, out);
      return;
    case Term::Kind::Lam:
    case Term::Kind::Pi:
    case Term::Kind::App:
      collect_free(t->left, out);
      collect_free(t->right, out);
      return;
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

static void collect_consts(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::BVar:
    case Term::Kind::FVar:
      return;
    case Term::Kind::Const:
      out.insert(t->name);
      for (const auto& a : t->args) collect_consts(a, out);
      return;
    case Term::Kind::Lam:
    case Term::Kind::Pi:
    case Term::Kind::App:
      collect_consts(t->left, out);
      collect_consts(t->right, out);
      return;
  }
}

std::set<std::string> constants_of(const TermPtr& t) {
  std::set<std::string> out;
  collect_consts(t, out);
  return out;
}

static TermPtr open_at(const TermPtr& t, const TermPtr& value, int depth) {
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::FVar:
      return t;
    case Term::Kind::BVar:
      return t->index == depth ? value : t;
    case Term::Kind::Const: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr a2 = open_at(a, value, depth);
        changed = changed || a2 != a;
        args.push_back(std::move(a2));
      }
      return changed ? constant(t->name, std::move(args)) : t;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
      TermPtr ann = open_at(t->left, value, depth);
      TermPtr body = open_at(t->right, value, depth + 1);
      if (ann == t->left && body == t->right) return t;
      return binder(t->kind, t->name, std::move(ann), std::move(body));
    }
    case Term::Kind::App: {
      TermPtr f = open_at(t->left, value, depth);
      TermPtr a = open_at(t->right, value, depth);
      if (f == t->left && a == t->right) return t;
      return app(std::move(f), std::move(a));
    }
  }
  return t;
}

TermPtr open_term(const TermPtr& body, const TermPtr& value) {
  return open_at(body, value, 0);
}

static TermPtr close_at(const TermPtr& t, const std::string& x, int depth) {
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::BVar:
      return t;
    case Term::Kind::FVar:
      return t->name == x ? bvar(depth) : t;
    case Term::Kind::Const: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr a2 = close_at(a, x, depth);
        changed = changed || a2 != a;
        args.push_back(std::move(a2));
      }
      return changed ? constant(t->name, std::move(args)) : t;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
      TermPtr ann = close_at(t->left, x, depth);
      TermPtr body = close_at(t->right, x, depth + 1);
      if (ann == t->left && body == t->right) return t;
      return binder(t->kind, t->name, std::move(ann), std::move(body));
    }
    case Term::Kind::App: {
      TermPtr f = close_at(t->left, x, depth);
      TermPtr a = close_at(t->right, x, depth);
      if (f == t->left && a == t->right) return t;
      return app(std::move(f), std::move(a));
    }
  }
  return t;
}

TermPtr close_term(const TermPtr& t, const std::string& x) {
  return close_at(t, x, 0);
}

TermPtr rename_constants(const TermPtr& t,
                         const std::vector<std::pair<std::string, std::string>>& map) {
  if (map.empty()) return t;
  return rewrite(t, [&](const TermPtr& n) -> TermPtr {
    if (n->kind == Term::Kind::Const) {
      for (const auto& [from, to] : map) {
        if (n->name == from) {
          std::vector<TermPtr> args;
          args.reserve(n->args.size());
          for (const auto& a : n->args) args.push_back(rename_constants(a, map));
          return constant(to, std::move(args));
        }
      }
    }
    return nullptr;
  });
}

std::size_t term_size(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Sort:
    case Term::Kind::FVar:
    case Term::Kind::BVar:
      return 1;
    case Term::Kind::Const: {
      std::size_t n = 1;
      for (const auto& a : t->args) n += term_size(a);
      return n;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi:
    case Term::Kind::App:
      return 1 + term_size(t->left) + term_size(t->right);
  }
  return 1;
}

TermPtr instantiate(const Telescope& tele, const TermPtr& target,
                    const std::vector<TermPtr>& args) {
  if (tele.size() != args.size())
    fail(ErrKind::ArityMismatch,
         "expected " + std::to_string(tele.size()) + " argument(s), got " +
             std::to_string(args.size()));
  Substitution map;
  map.reserve(tele.size());
  for (std::size_t i = 0; i < tele.size(); ++i)
    map.emplace_back(tele[i].name, args[i]);
  return subst_all(target, map);
}

} // namespace aut

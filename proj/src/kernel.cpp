#include "aut/kernel.hpp"

#include <algorithm>

namespace aut {

std::size_t Env::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    fail(ErrKind::Internal, "constant not in environment: " + name);
  return it->second;
}

void Env::add(DefEntry entry) {
  if (index_.count(entry.name))
    fail(ErrKind::NotFresh, "constant already defined: " + entry.name);
  index_.emplace(entry.name, entries_.size());
  entries_.push_back(std::move(entry));
}

TermPtr delta_unfold(const Env& env, const std::string& name,
                     const std::vector<TermPtr>& args) {
  const DefEntry* entry = env.find(name);
  if (!entry)
    fail(ErrKind::UnboundIdentifier, "constant not defined: " + name);
  if (entry->is_primitive())
    fail(ErrKind::UnfoldPrimitive, "primitive notion cannot be unfolded: " + name);
  if (entry->params.size() != args.size())
    fail(ErrKind::ArityMismatch,
         name + " expects " + std::to_string(entry->params.size()) +
             " parameter(s), got " + std::to_string(args.size()));
  return instantiate(entry->params, *entry->body, args);
}

// ---------------------------------------------------------------------------
// debug printing for error messages (the real printers live in syntax)

static void debug_print(const TermPtr& t, std::vector<std::string>& binders,
                        std::string& out, bool atom_pos);

static void debug_binder(const TermPtr& t, std::vector<std::string>& binders,
                         std::string& out) {
  std::string display = t->name.empty() ? "_" : t->name;
  out += (t->kind == Term::Kind::Lam) ? "\\ " : "! ";
  out += display + " : ";
  debug_print(t->left, binders, out, false);
  out += " . ";
  binders.push_back(display);
  debug_print(t->right, binders, out, false);
  binders.pop_back();
}

static void debug_print(const TermPtr& t, std::vector<std::string>& binders,
                        std::string& out, bool atom_pos) {
  switch (t->kind) {
    case Term::Kind::Sort:
      out += (t->sort == SortTag::Star) ? "Prop" : "Type";
      return;
    case Term::Kind::FVar:
      out += t->name;
      return;
    case Term::Kind::BVar: {
      int i = static_cast<int>(binders.size()) - 1 - t->index;
      out += (i >= 0) ? binders[static_cast<std::size_t>(i)]
                      : "#" + std::to_string(t->index);
      return;
    }
    case Term::Kind::Const: {
      out += t->name;
      if (!t->args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (i) out += ",";
          debug_print(t->args[i], binders, out, false);
        }
        out += ")";
      }
      return;
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi:
      if (atom_pos) out += "(";
      debug_binder(t, binders, out);
      if (atom_pos) out += ")";
      return;
    case Term::Kind::App: {
      if (atom_pos) out += "(";
      debug_print(t->left, binders, out, t->left->kind == Term::Kind::Lam ||
                                             t->left->kind == Term::Kind::Pi);
      out += " ";
      debug_print(t->right, binders, out, t->right->kind != Term::Kind::Sort &&
                                              t->right->kind != Term::Kind::FVar &&
                                              t->right->kind != Term::Kind::BVar &&
                                              t->right->kind != Term::Kind::Const);
      if (atom_pos) out += ")";
      return;
    }
  }
}

static std::string debug_string(const TermPtr& t) {
  std::string out;
  std::vector<std::string> binders;
  debug_print(t, binders, out, false);
  return out;
}

// ---------------------------------------------------------------------------
// TypeChecker

TypeChecker::TypeChecker(const Env& env, KernelConfig cfg)
    : env_(env), cfg_(cfg), fuel_(cfg.delta_fuel) {}

void TypeChecker::spend_fuel() {
  if (!fuel_) return;
  if (*fuel_ == 0)
    fail(ErrKind::FuelExhausted, "delta fuel exhausted");
  --*fuel_;
}

TermPtr TypeChecker::fresh_fvar() {
  return fvar("%" + std::to_string(++fresh_counter_));
}

// Weak head reduction: beta-contract Lam and Pi heads, unfold defined
// constants at the head when `unfold` is set.
TermPtr TypeChecker::whnf_machine(TermPtr t, bool unfold) {
  std::vector<TermPtr> spine; // spine.back() is the innermost argument
  TermPtr cur = std::move(t);
  for (;;) {
    if (cur->kind == Term::Kind::App) {
      spine.push_back(cur->right);
      cur = cur->left;
      continue;
    }
    if ((cur->kind == Term::Kind::Lam || cur->kind == Term::Kind::Pi) &&
        !spine.empty()) {
      cur = open_term(cur->right, spine.back());
      spine.pop_back();
      ++stats_.beta;
      continue;
    }
    if (cur->kind == Term::Kind::Const && unfold) {
      if (const DefEntry* entry = env_.find(cur->name); entry && !entry->is_primitive()) {
        spend_fuel();
        cur = delta_unfold(env_, cur->name, cur->args);
        ++stats_.delta;
        continue;
      }
    }
    break;
  }
  for (std::size_t i = spine.size(); i-- > 0;) cur = app(cur, spine[i]);
  return cur;
}

TermPtr TypeChecker::whnf(TermPtr t) { return whnf_machine(std::move(t), true); }

struct SpineView {
  TermPtr head;
  std::vector<TermPtr> args;
};

static SpineView view_of(const TermPtr& t) {
  SpineView v;
  TermPtr cur = t;
  while (cur->kind == Term::Kind::App) {
    v.args.push_back(cur->right);
    cur = cur->left;
  }
  std::reverse(v.args.begin(), v.args.end()); // outermost-first order
  v.head = cur;
  return v;
}

bool TypeChecker::convertible(const TermPtr& a, const TermPtr& b) {
  return conv(a, b);
}

bool TypeChecker::try_eta(const TermPtr& lam_side, const TermPtr& other) {
  if (!cfg_.eta_enabled) return false;
  if (other->kind == Term::Kind::Lam || other->kind == Term::Kind::Pi ||
      other->kind == Term::Kind::Sort)
    return false;
  TermPtr x = fresh_fvar();
  bool ok = conv(open_term(lam_side->right, x), app(other, x));
  if (ok) ++stats_.eta;
  return ok;
}

bool TypeChecker::conv(const TermPtr& a, const TermPtr& b) {
  if (alpha_eq(a, b)) return true;

  // In eager mode constant heads are expanded up front; the lazy mode
  // keeps them and compares argument-wise first.
  TermPtr wa = whnf_machine(a, !cfg_.lazy_delta);
  TermPtr wb = whnf_machine(b, !cfg_.lazy_delta);

  SpineView va = view_of(wa);
  SpineView vb = view_of(wb);
  const TermPtr& ha = va.head;
  const TermPtr& hb = vb.head;

  auto spines_conv = [&](const SpineView& x, const SpineView& y) {
    if (x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
      if (!conv(x.args[i], y.args[i])) return false;
    return true;
  };
  auto rebuild = [](const SpineView& v) {
    TermPtr t = v.head;
    for (const auto& arg : v.args) t = app(t, arg);
    return t;
  };
  auto unfoldable = [&](const TermPtr& h) {
    if (h->kind != Term::Kind::Const) return false;
    const DefEntry* e = env_.find(h->name);
    return e && !e->is_primitive();
  };
  auto unfold = [&](const SpineView& v) {
    spend_fuel();
    ++stats_.delta;
    SpineView u;
    u.head = delta_unfold(env_, v.head->name, v.head->args);
    u.args = v.args;
    return rebuild(u);
  };

  if (ha->kind == Term::Kind::Const && hb->kind == Term::Kind::Const &&
      ha->name == hb->name) {
    // same constant: arguments first, unfold both on mismatch
    bool args_match = ha->args.size() == hb->args.size();
    if (args_match)
      for (std::size_t i = 0; i < ha->args.size(); ++i)
        if (!conv(ha->args[i], hb->args[i])) { args_match = false; break; }
    if (args_match && spines_conv(va, vb)) return true;
    if (unfoldable(ha)) return conv(unfold(va), unfold(vb));
    return false;
  }

  if (unfoldable(ha) || unfoldable(hb)) {
    // expand the younger definition first
    if (unfoldable(ha) && unfoldable(hb)) {
      if (env_.index_of(ha->name) >= env_.index_of(hb->name))
        return conv(unfold(va), rebuild(vb));
      return conv(rebuild(va), unfold(vb));
    }
    if (unfoldable(ha)) return conv(unfold(va), rebuild(vb));
    return conv(rebuild(va), unfold(vb));
  }

  // both heads stuck
  switch (ha->kind) {
    case Term::Kind::Sort:
      if (hb->kind != Term::Kind::Sort || ha->sort != hb->sort) break;
      return spines_conv(va, vb);
    case Term::Kind::FVar:
      if (hb->kind == Term::Kind::FVar && ha->name == hb->name)
        return spines_conv(va, vb);
      break;
    case Term::Kind::BVar:
      if (hb->kind == Term::Kind::BVar && ha->index == hb->index)
        return spines_conv(va, vb);
      break;
    case Term::Kind::Const:
      break; // distinct primitives here; the same-name case returned above
    case Term::Kind::Lam:
      if (hb->kind == Term::Kind::Lam) {
        if (!conv(ha->left, hb->left)) return false;
        TermPtr x = fresh_fvar();
        return conv(open_term(ha->right, x), open_term(hb->right, x));
      }
      return try_eta(ha, wb);
    case Term::Kind::Pi:
      if (hb->kind == Term::Kind::Pi) {
        if (!conv(ha->left, hb->left)) return false;
        TermPtr x = fresh_fvar();
        return conv(open_term(ha->right, x), open_term(hb->right, x));
      }
      break;
    case Term::Kind::App:
      break; // unreachable after whnf
  }
  if (hb->kind == Term::Kind::Lam && ha->kind != Term::Kind::Lam)
    return try_eta(hb, wa);
  return false;
}

TermPtr TypeChecker::infer(const Telescope& ctx, const TermPtr& t) {
  Telescope scratch = ctx;
  return infer_rec(scratch, t);
}

TermPtr TypeChecker::require_sort_type(Telescope& ctx, const TermPtr& t,
                                       const char* what) {
  TermPtr type = infer_rec(ctx, t);
  TermPtr w = whnf(type);
  if (w->kind != Term::Kind::Sort)
    fail(ErrKind::TypeMismatch,
         std::string(what) + " must be a type, but " + debug_string(t) +
             " has type " + debug_string(normalize(type)));
  return w;
}

void TypeChecker::check_against(Telescope& ctx, const TermPtr& t,
                                const TermPtr& expected) {
  TermPtr actual = infer_rec(ctx, t);
  if (!conv(actual, expected))
    fail(ErrKind::TypeMismatch,
         "type mismatch: expected " + debug_string(normalize(expected)) +
             ", got " + debug_string(normalize(actual)));
}

void TypeChecker::check(const Telescope& ctx, const TermPtr& t,
                        const TermPtr& expected) {
  Telescope scratch = ctx;
  if (!is_sort(expected, SortTag::Box))
    require_sort_type(scratch, expected, "expected type");
  check_against(scratch, t, expected);
}

TermPtr TypeChecker::infer_rec(Telescope& ctx, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Sort:
      if (t->sort == SortTag::Star) return box();
      fail(ErrKind::SortError, "Type has no type");

    case Term::Kind::FVar: {
      for (std::size_t i = ctx.size(); i-- > 0;)
        if (ctx[i].name == t->name) return ctx[i].type;
      fail(ErrKind::UnboundIdentifier, "variable not in context: " + t->name);
    }

    case Term::Kind::BVar:
      fail(ErrKind::Internal, "dangling bound variable");

    case Term::Kind::Const: {
      const DefEntry* entry = env_.find(t->name);
      if (!entry)
        fail(ErrKind::UnboundIdentifier, "constant not defined: " + t->name);
      if (entry->params.size() != t->args.size())
        fail(ErrKind::ArityMismatch,
             t->name + " expects " + std::to_string(entry->params.size()) +
                 " parameter(s), got " + std::to_string(t->args.size()));
      Substitution prefix;
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        TermPtr expected = subst_all(entry->params[i].type, prefix);
        check_against(ctx, t->args[i], expected);
        prefix.emplace_back(entry->params[i].name, t->args[i]);
      }
      return subst_all(entry->type, prefix);
    }

    case Term::Kind::Lam: {
      require_sort_type(ctx, t->left, "binder annotation");
      TermPtr x = fresh_fvar();
      ctx.push_back({x->name, t->left});
      TermPtr body_type = infer_rec(ctx, open_term(t->right, x));
      // product formation must hold for the resulting type
      TermPtr bt_sort = infer_rec(ctx, body_type);
      if (whnf(bt_sort)->kind != Term::Kind::Sort) {
        ctx.pop_back();
        fail(ErrKind::TypeMismatch,
             "abstraction body has no well-sorted type: " + debug_string(t));
      }
      ctx.pop_back();
      return pi(t->name, t->left, close_term(body_type, x->name));
    }

    case Term::Kind::Pi: {
      require_sort_type(ctx, t->left, "binder annotation");
      TermPtr x = fresh_fvar();
      ctx.push_back({x->name, t->left});
      TermPtr s2 = require_sort_type(ctx, open_term(t->right, x), "product body");
      ctx.pop_back();
      return s2; // all four (s1, s2) formation pairs are allowed
    }

    case Term::Kind::App: {
      TermPtr fun_type = infer_rec(ctx, t->left);
      TermPtr w = whnf(fun_type);
      if (w->kind != Term::Kind::Pi)
        fail(ErrKind::NotAFunction,
             "not a function: " + debug_string(t->left) + " has type " +
                 debug_string(normalize(fun_type)));
      check_against(ctx, t->right, w->left);
      return open_term(w->right, t->right);
    }
  }
  fail(ErrKind::Internal, "unhandled term kind");
}

TermPtr TypeChecker::normalize(const TermPtr& t) {
  TermPtr w = whnf_machine(t, true);
  switch (w->kind) {
    case Term::Kind::Sort:
    case Term::Kind::FVar:
    case Term::Kind::BVar:
      return w;
    case Term::Kind::Const: {
      std::vector<TermPtr> args;
      args.reserve(w->args.size());
      for (const auto& a : w->args) args.push_back(normalize(a));
      return constant(w->name, std::move(args));
    }
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
      TermPtr ann = normalize(w->left);
      TermPtr x = fresh_fvar();
      TermPtr body = close_term(normalize(open_term(w->right, x)), x->name);
      return w->kind == Term::Kind::Lam ? lam(w->name, std::move(ann), std::move(body))
                                        : pi(w->name, std::move(ann), std::move(body));
    }
    case Term::Kind::App: {
      SpineView v = view_of(w);
      TermPtr head = v.head;
      if (head->kind == Term::Kind::Const) head = normalize(head);
      TermPtr out = head;
      for (const auto& a : v.args) out = app(out, normalize(a));
      return out;
    }
  }
  return w;
}

TermPtr whnf(const Env& env, const KernelConfig& cfg, const TermPtr& t) {
  return TypeChecker(env, cfg).whnf(t);
}

bool convertible(const Env& env, const KernelConfig& cfg, const TermPtr& a,
                 const TermPtr& b) {
  return TypeChecker(env, cfg).convertible(a, b);
}

TermPtr infer_type(const Env& env, const KernelConfig& cfg, const Telescope& ctx,
                   const TermPtr& t) {
  return TypeChecker(env, cfg).infer(ctx, t);
}

TermPtr normalize(const Env& env, const KernelConfig& cfg, const TermPtr& t) {
  return TypeChecker(env, cfg).normalize(t);
}

} // namespace aut

#include "aut/translate.hpp"

#include <algorithm>

namespace aut {

const Env& env_of_book(const Book& b) {
  if (!b.ok()) fail(ErrKind::BookNotOk, "book is not ok");
  return b.env();
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

SExprPtr surface_of(const TermPtr& t, const std::set<std::string>& used) {
  std::set<std::string> avoid = used;
  auto fv = free_vars(t);
  avoid.insert(fv.begin(), fv.end());
  auto cs = constants_of(t);
  avoid.insert(cs.begin(), cs.end());
  return term_to_surface(t, avoid);
}

RawLine make_line(std::optional<std::string> indicator, std::string identifier,
                  RawLine::Content kind, SExprPtr content, SExprPtr category,
                  int line_no) {
  RawLine rl;
  rl.indicator = std::move(indicator);
  rl.identifier = std::move(identifier);
  rl.content_kind = kind;
  rl.content = std::move(content);
  rl.category = std::move(category);
  rl.loc = {line_no, 1};
  rl.dialect = Dialect::Modern;
  rl.text = (rl.indicator ? *rl.indicator + " " : "") + "* " + rl.identifier + " := ";
  switch (kind) {
    case RawLine::Content::Dash: rl.text += "---"; break;
    case RawLine::Content::PN: rl.text += "PN"; break;
    case RawLine::Content::Expr: rl.text += render_expr(rl.content, Dialect::Modern); break;
  }
  rl.text += " : " + render_expr(rl.category, Dialect::Modern);
  return rl;
}

} // namespace

EnvToBook book_of_env(const Env& env, KernelConfig cfg) {
  EnvToBook out;
  std::set<std::string> used;
  std::vector<std::pair<std::string, std::string>> const_ren;
  std::vector<std::size_t> line_entry; // generated line -> entry index
  int line_no = 0;

  for (std::size_t ei = 0; ei < env.size(); ++ei) {
    const DefEntry& entry = env.at(ei);
    std::vector<std::pair<std::string, std::string>> var_ren;
    Substitution var_subst;
    for (const auto& p : entry.params) {
      std::string nu = fresh_name(p.name, used);
      used.insert(nu);
      var_ren.emplace_back(p.name, nu);
      var_subst.emplace_back(p.name, fvar(nu));
    }
    std::string cname = fresh_name(entry.name, used);
    used.insert(cname);
    const_ren.emplace_back(entry.name, cname);

    auto transfer = [&](const TermPtr& t) {
      return rename_constants(subst_all(t, var_subst), const_ren);
    };

    std::optional<std::string> prev;
    for (std::size_t j = 0; j < entry.params.size(); ++j) {
      TermPtr type = transfer(entry.params[j].type);
      ++line_no;
      out.lines.push_back(make_line(prev, var_ren[j].second, RawLine::Content::Dash,
                                    nullptr, surface_of(type, used), line_no));
      line_entry.push_back(ei);
      prev = var_ren[j].second;
    }

    ++line_no;
    if (entry.is_primitive()) {
      out.lines.push_back(make_line(prev, cname, RawLine::Content::PN, nullptr,
                                    surface_of(transfer(entry.type), used), line_no));
    } else {
      out.lines.push_back(make_line(prev, cname, RawLine::Content::Expr,
                                    surface_of(transfer(*entry.body), used),
                                    surface_of(transfer(entry.type), used), line_no));
    }
    line_entry.push_back(ei);

    out.renaming.entry_vars.push_back(std::move(var_ren));
  }
  out.renaming.consts = std::move(const_ren);

  try {
    out.book = check_book(out.lines, cfg);
  } catch (const Error& e) {
    std::string culprit = "?";
    if (e.loc.known() &&
        static_cast<std::size_t>(e.loc.line) <= line_entry.size())
      culprit = env.at(line_entry[static_cast<std::size_t>(e.loc.line) - 1]).name;
    fail(ErrKind::IllegalEnv,
         "environment entry " + culprit + " is not legal: " + e.what());
  }
  return out;
}

void check_env(const Env& env, KernelConfig cfg) {
  Env acc;
  for (const DefEntry& entry : env) {
    try {
      TypeChecker tc(acc, cfg);
      Telescope ctx;
      for (const auto& p : entry.params) {
        for (const auto& seen : ctx)
          if (seen.name == p.name)
            fail(ErrKind::NotFresh, "duplicate telescope variable " + p.name);
        TermPtr sort = tc.whnf(tc.infer(ctx, p.type));
        if (sort->kind != Term::Kind::Sort)
          fail(ErrKind::TypeMismatch,
               "telescope type of " + p.name + " is not a type");
        ctx.push_back(p);
      }
      if (entry.is_primitive()) {
        TermPtr sort = tc.whnf(tc.infer(ctx, entry.type));
        if (sort->kind != Term::Kind::Sort)
          fail(ErrKind::TypeMismatch, "primitive type is not sorted");
      } else {
        tc.check(ctx, *entry.body, entry.type);
      }
      acc.add(entry);
    } catch (const Error& e) {
      if (e.kind == ErrKind::IllegalEnv) throw;
      fail(ErrKind::IllegalEnv,
           "environment entry " + entry.name + " is not legal: " + e.what());
    }
  }
}

bool env_alpha_equal_up_to(const RenamingMap& renaming, const Env& original,
                           const Env& renamed) {
  if (original.size() != renamed.size()) return false;
  if (renaming.entry_vars.size() != original.size()) return false;
  if (renaming.consts.size() != original.size()) return false;

  for (std::size_t i = 0; i < original.size(); ++i) {
    const DefEntry& a = original.at(i);
    const DefEntry& b = renamed.at(i);
    if (renaming.consts[i].first != a.name || renaming.consts[i].second != b.name)
      return false;
    const auto& vars = renaming.entry_vars[i];
    if (vars.size() != a.params.size() || a.params.size() != b.params.size())
      return false;

    Substitution var_subst;
    for (const auto& [from, to] : vars) var_subst.emplace_back(from, fvar(to));
    auto transfer = [&](const TermPtr& t) {
      return rename_constants(subst_all(t, var_subst), renaming.consts);
    };

    for (std::size_t j = 0; j < a.params.size(); ++j) {
      if (vars[j].first != a.params[j].name || vars[j].second != b.params[j].name)
        return false;
      if (!alpha_eq(transfer(a.params[j].type), b.params[j].type)) return false;
    }
    if (a.is_primitive() != b.is_primitive()) return false;
    if (!a.is_primitive() && !alpha_eq(transfer(*a.body), *b.body)) return false;
    if (!alpha_eq(transfer(a.type), b.type)) return false;
  }
  return true;
}

RoundtripReport roundtrip_check(const Book& b) {
  RoundtripReport report;
  auto flunk = [&](std::string msg) {
    report.ok = false;
    report.failures.push_back(std::move(msg));
  };

  if (!dead_ends(b).empty()) {
    flunk("book is not clean: it still has dead-end assumption lines");
    return report;
  }
  const Env& env = env_of_book(b);

  // (1) the extracted environment re-checks as legal
  try {
    check_env(env, b.config());
  } catch (const Error& e) {
    flunk(std::string("environment is not legal: ") + e.what());
  }

  // (2) constants and typings line up one to one
  std::vector<const Line*> intro_lines;
  for (const Line& l : b.lines())
    if (l.kind != Line::Kind::Assumption) intro_lines.push_back(&l);
  if (intro_lines.size() != env.size()) {
    flunk("entry count differs from the number of definition/primitive lines");
  } else {
    for (std::size_t i = 0; i < env.size(); ++i) {
      const DefEntry& e = env.at(i);
      const Line& l = *intro_lines[i];
      if (e.name != l.identifier)
        flunk("constant sequence mismatch at " + l.identifier);
      bool line_prim = l.kind == Line::Kind::Primitive;
      if (line_prim != e.is_primitive())
        flunk("PN marker mismatch at " + l.identifier);
      if (!line_prim && !alpha_eq(*e.body, l.content))
        flunk("content mismatch at " + l.identifier);
      if (!alpha_eq(e.type, l.category))
        flunk("category mismatch at " + l.identifier);
    }
  }

  // (3) an assumption variable appears in exactly the contexts of the
  // entries whose constant depends on it
  for (const Line& l : b.lines()) {
    if (l.kind != Line::Kind::Assumption) continue;
    const std::string& x = l.identifier;
    bool anywhere = false;
    for (std::size_t i = 0; i < env.size() && i < intro_lines.size(); ++i) {
      const DefEntry& e = env.at(i);
      const Line& intro = *intro_lines[i];
      std::vector<std::string> gamma;
      if (intro.indicator) gamma = b.subject_list(*intro.indicator);
      bool depends = std::find(gamma.begin(), gamma.end(), x) != gamma.end();
      bool in_ctx = std::any_of(e.params.begin(), e.params.end(),
                                [&](const TeleEntry& p) { return p.name == x; });
      if (depends != in_ctx)
        flunk("dependency mismatch: " + x + " vs entry " + e.name);
      anywhere = anywhere || in_ctx;
    }
    if (!anywhere)
      flunk("assumption " + x + " occurs in no entry context");
  }

  // (4) rebuild the book from the environment and compare
  try {
    EnvToBook rt = book_of_env(env, b.config());
    if (!dead_ends(rt.book).empty())
      flunk("rebuilt book is not clean");
    if (!env_alpha_equal_up_to(rt.renaming, env, rt.book.env()))
      flunk("rebuilt environment differs (up to renaming)");
  } catch (const Error& e) {
    flunk(std::string("rebuilding the book failed: ") + e.what());
  }

  return report;
}

// ---------------------------------------------------------------------------
// .denv text format

std::string print_env(const Env& env) {
  std::string out;
  for (const DefEntry& entry : env) {
    std::set<std::string> names;
    for (const auto& p : entry.params) names.insert(p.name);
    std::string line;
    for (std::size_t j = 0; j < entry.params.size(); ++j) {
      if (j) line += ", ";
      line += entry.params[j].name + " : " +
              print_term(entry.params[j].type, Dialect::Modern, names);
    }
    if (!entry.params.empty()) line += " ";
    line += "|> " + entry.name + "(";
    for (std::size_t j = 0; j < entry.params.size(); ++j) {
      if (j) line += ",";
      line += entry.params[j].name;
    }
    line += ") := ";
    line += entry.is_primitive() ? "PN"
                                 : print_term(*entry.body, Dialect::Modern, names);
    line += " : " + print_term(entry.type, Dialect::Modern, names);
    out += line + "\n";
  }
  return out;
}

Env parse_env_text(std::string_view text) {
  Env env;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = (end == std::string_view::npos)
                               ? text.substr(start)
                               : text.substr(start, end - start);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    bool blank = true;
    for (char c : raw) {
      if (c == ' ' || c == '\t') continue;
      blank = c == '#';
      break;
    }
    if (!blank) {
      DenvSurfaceEntry se = parse_denv_entry(raw, line_no);
      TypeChecker tc(env, {});
      Telescope ctx;
      Elaborator elab(tc, ctx);
      for (const auto& [name, stype] : se.params) {
        TermPtr type = elab.type(stype);
        ctx.push_back({name, type});
      }
      std::optional<TermPtr> body;
      if (se.body) body = elab.term(*se.body, nullptr);
      TermPtr type = elab.type(se.type);
      env.add({se.name, std::move(ctx), std::move(body), std::move(type)});
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return env;
}

} // namespace aut

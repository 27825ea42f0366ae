#include "aut/book.hpp"

#include <algorithm>

namespace aut {

CoherenceReport check_coherent(const std::vector<LineShape>& shapes) {
  CoherenceReport report;
  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const LineShape& s = shapes[i];
    auto [it, fresh] = first_seen.emplace(s.identifier, i);
    if (!fresh)
      report.violations.push_back(
          {i, "duplicate identifier " + s.identifier + " (already introduced at line " +
                  std::to_string(it->second + 1) + ")"});
    if (!s.indicator) continue;
    const LineShape* target = nullptr;
    for (std::size_t j = 0; j < i; ++j)
      if (shapes[j].identifier == *s.indicator) {
        target = &shapes[j];
        break;
      }
    if (!target)
      report.violations.push_back(
          {i, "indicator " + *s.indicator + " does not name an earlier line"});
    else if (!target->is_assumption)
      report.violations.push_back(
          {i, "indicator " + *s.indicator + " names a line that is not an assumption line"});
  }
  return report;
}

std::vector<LineShape> shapes_of(const std::vector<RawLine>& lines) {
  std::vector<LineShape> shapes;
  shapes.reserve(lines.size());
  for (const auto& l : lines)
    shapes.push_back({l.indicator, l.identifier,
                      l.content_kind == RawLine::Content::Dash});
  return shapes;
}

const Line& Book::line_of(const std::string& identifier) const {
  auto it = index_.find(identifier);
  if (it == index_.end())
    fail(ErrKind::UnboundIdentifier, "unknown identifier: " + identifier);
  return lines_[it->second];
}

std::vector<std::string> Book::subject_list(const std::string& z) const {
  std::vector<std::string> chain;
  std::optional<std::string> cur = z;
  while (cur) {
    auto it = index_.find(*cur);
    if (it == index_.end())
      fail(ErrKind::UnboundIdentifier, "unknown assumption identifier: " + *cur);
    const Line& line = lines_[it->second];
    if (line.kind != Line::Kind::Assumption)
      fail(ErrKind::UnboundIdentifier,
           *cur + " is not the identifier of an assumption line");
    chain.push_back(*cur);
    cur = line.indicator;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

Telescope Book::typing_context(const std::optional<std::string>& z) const {
  Telescope ctx;
  if (!z) return ctx;
  for (const std::string& v : subject_list(*z)) {
    const Line& line = lines_[index_.at(v)];
    ctx.push_back({v, line.category});
  }
  return ctx;
}

std::vector<LineShape> Book::shapes() const {
  std::vector<LineShape> shapes;
  shapes.reserve(lines_.size());
  for (const auto& l : lines_)
    shapes.push_back({l.indicator, l.identifier, l.kind == Line::Kind::Assumption});
  return shapes;
}

std::set<std::string> Book::identifier_set() const {
  std::set<std::string> names;
  for (const auto& l : lines_) names.insert(l.identifier);
  return names;
}

LineCounts Book::counts() const {
  LineCounts c;
  for (const auto& l : lines_) {
    switch (l.kind) {
      case Line::Kind::Assumption: ++c.assumptions; break;
      case Line::Kind::Definition: ++c.definitions; break;
      case Line::Kind::Primitive: ++c.primitives; break;
    }
  }
  return c;
}

Obligation Book::add_line(const RawLine& raw) {
  if (raw.indicator) {
    auto it = index_.find(*raw.indicator);
    if (it == index_.end() || lines_[it->second].kind != Line::Kind::Assumption)
      fail(ErrKind::DanglingIndicator,
           "indicator " + *raw.indicator + " does not name an earlier assumption line",
           raw.loc);
  }
  if (index_.count(raw.identifier))
    fail(ErrKind::NotFresh, "identifier already introduced: " + raw.identifier, raw.loc);

  Telescope ctx = typing_context(raw.indicator);
  TypeChecker tc(env_, cfg_);
  Elaborator elab(tc, ctx);

  Line line;
  line.indicator = raw.indicator;
  line.identifier = raw.identifier;
  line.loc = raw.loc;
  line.source_text = raw.text;

  Obligation ob;
  ob.line_index = lines_.size();
  ob.env_size = env_.size();
  ob.context = ctx;

  try {
    line.category = elab.type(raw.category);
    switch (raw.content_kind) {
      case RawLine::Content::Dash:
      case RawLine::Content::PN: {
        TermPtr sort = tc.whnf(tc.infer(ctx, line.category));
        if (sort->kind != Term::Kind::Sort)
          fail(ErrKind::TypeMismatch,
               "category of " + raw.identifier + " is not a type: " +
                   print_term(line.category, raw.dialect) + " : " +
                   print_term(sort, raw.dialect));
        ob.subject = line.category;
        ob.type = sort;
        if (raw.content_kind == RawLine::Content::PN) {
          line.kind = Line::Kind::Primitive;
          env_.add({raw.identifier, ctx, std::nullopt, line.category});
        } else {
          line.kind = Line::Kind::Assumption;
        }
        break;
      }
      case RawLine::Content::Expr: {
        line.kind = Line::Kind::Definition;
        line.content = elab.term(raw.content, line.category);
        tc.check(ctx, line.content, line.category);
        ob.subject = line.content;
        ob.type = line.category;
        env_.add({raw.identifier, ctx, line.content, line.category});
        break;
      }
    }
  } catch (Error& err) {
    if (!err.loc.known()) err.loc = raw.loc;
    if (err.judgement.empty()) {
      std::string subject = raw.content_kind == RawLine::Content::Expr
                                ? render_expr(raw.content, raw.dialect)
                                : render_expr(raw.category, raw.dialect);
      std::string type = raw.content_kind == RawLine::Content::Expr
                             ? render_expr(raw.category, raw.dialect)
                             : "s";
      err.judgement = format_context(ctx) + " ⊢ " + subject + " : " + type;
    }
    stats_ += tc.stats();
    throw;
  }

  line.ambiguous_to_pi = elab.counters().ambiguous_to_pi;
  line.ambiguous_to_lam = elab.counters().ambiguous_to_lam;
  stats_ += tc.stats();
  index_.emplace(raw.identifier, lines_.size());
  lines_.push_back(std::move(line));
  raws_.push_back(raw);
  obligations_.push_back(ob);
  return obligations_.back();
}

Book check_book(const std::vector<RawLine>& lines, KernelConfig cfg) {
  Book book(cfg);
  for (const RawLine& raw : lines) book.add_line(raw);
  return book;
}

std::string print_book(const Book& b, Dialect dialect) {
  std::set<std::string> avoid = b.identifier_set();
  std::string out;
  for (const Line& l : b.lines()) {
    RawLine::Content kind = l.kind == Line::Kind::Assumption ? RawLine::Content::Dash
                            : l.kind == Line::Kind::Primitive ? RawLine::Content::PN
                                                              : RawLine::Content::Expr;
    out += print_line(l.indicator, l.identifier, kind, l.content, l.category,
                      dialect, avoid);
    out += "\n";
  }
  return out;
}

std::string format_context(const Telescope& ctx) {
  if (ctx.empty()) return "∅";
  std::string out;
  std::size_t i = 0;
  while (i < ctx.size()) {
    std::size_t j = i;
    std::string group = ctx[i].name;
    while (j + 1 < ctx.size() && alpha_eq(ctx[j + 1].type, ctx[i].type)) {
      ++j;
      group += ", " + ctx[j].name;
    }
    out += group + " : " + print_term(ctx[i].type, Dialect::Modern);
    if (j + 1 < ctx.size()) out += ", ";
    i = j + 1;
  }
  return out;
}

std::string format_obligation(const Env& env, const Obligation& o) {
  std::set<std::string> mentioned = constants_of(o.subject);
  {
    auto more = constants_of(o.type);
    mentioned.insert(more.begin(), more.end());
    for (const auto& entry : o.context) {
      auto cs = constants_of(entry.type);
      mentioned.insert(cs.begin(), cs.end());
    }
  }

  std::string delta;
  if (o.env_size == 0) {
    delta = "∅";
  } else {
    for (std::size_t i = 0; i < o.env_size; ++i) {
      const DefEntry& e = env.at(i);
      if (i) delta += ", ";
      if (mentioned.count(e.name)) {
        delta += e.name;
        if (!e.params.empty()) {
          delta += "(";
          for (std::size_t j = 0; j < e.params.size(); ++j) {
            if (j) delta += ",";
            delta += e.params[j].name;
          }
          delta += ")";
        }
        delta += " := ";
        delta += e.is_primitive() ? "PN" : print_term(*e.body, Dialect::Modern);
        delta += " : " + print_term(e.type, Dialect::Modern);
      } else {
        delta += e.name;
      }
    }
  }

  return delta + " ; " + format_context(o.context) + " ⊢ " +
         print_term(o.subject, Dialect::Modern) + " : " +
         print_term(o.type, Dialect::Modern);
}

} // namespace aut

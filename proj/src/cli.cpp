#include "aut/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aut/book.hpp"
#include "aut/clean.hpp"
#include "aut/translate.hpp"

namespace aut::cli {

namespace {

using nlohmann::json;

int exit_code_for(const Error& e) {
  switch (e.kind) {
    case ErrKind::Parse: return 2;
    case ErrKind::Io: return 3;
    case ErrKind::Usage: return 4;
    default: return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrKind::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dialect dialect_of(const std::string& name) {
  return name == "modern" ? Dialect::Modern : Dialect::Original;
}

void report_error(const std::string& file, const Error& e, std::ostream& err) {
  err << file << ":" << e.loc.line << ":" << e.loc.col << ": error: "
      << err_kind_name(e.kind) << ": " << e.what() << "\n";
  if (!e.judgement.empty())
    err << "  while checking: " << e.judgement << "\n";
}

json error_json(const Error& e) {
  json j;
  j["kind"] = err_kind_name(e.kind);
  j["message"] = e.what();
  j["line"] = e.loc.line;
  j["col"] = e.loc.col;
  if (!e.judgement.empty()) j["judgement"] = e.judgement;
  return j;
}

const char* kind_name(Line::Kind k) {
  switch (k) {
    case Line::Kind::Assumption: return "assumption";
    case Line::Kind::Definition: return "definition";
    case Line::Kind::Primitive: return "primitive";
  }
  return "?";
}

std::string verdict_line(const std::string& file, const LineCounts& c) {
  std::ostringstream os;
  os << file << ": ok (" << c.total() << " lines: " << c.assumptions
     << " assumptions, " << c.definitions << " definitions, " << c.primitives
     << " primitives)";
  return os.str();
}

std::string stats_line(const ReductionStats& s) {
  std::ostringstream os;
  os << "reductions: beta=" << s.beta << " delta=" << s.delta << " eta=" << s.eta;
  return os.str();
}

struct CheckOptions {
  std::string dialect = "original";
  bool eta = false;
  bool emit_obligations = false;
  bool stats = false;
  bool json_output = false;
};

int check_one(const std::string& file, const CheckOptions& opt, std::ostream& out,
              std::ostream& err) {
  KernelConfig cfg;
  cfg.eta_enabled = opt.eta;

  json doc;
  doc["file"] = file;
  doc["dialect"] = opt.dialect;
  doc["eta"] = opt.eta;

  try {
    std::string text = read_file(file);
    std::vector<RawLine> raws = parse_book_text(text, dialect_of(opt.dialect));
    Book book = check_book(raws, cfg);

    LineCounts counts = book.counts();
    if (opt.json_output) {
      doc["verdict"] = "ok";
      doc["counts"] = {{"assumptions", counts.assumptions},
                       {"definitions", counts.definitions},
                       {"primitives", counts.primitives},
                       {"total", counts.total()}};
      doc["reductions"] = {{"beta", book.stats().beta},
                           {"delta", book.stats().delta},
                           {"eta", book.stats().eta}};
      json jlines = json::array();
      for (std::size_t i = 0; i < book.lines().size(); ++i) {
        const Line& l = book.lines()[i];
        json jl;
        jl["index"] = i + 1;
        jl["indicator"] = l.indicator ? json(*l.indicator) : json(nullptr);
        jl["identifier"] = l.identifier;
        jl["kind"] = kind_name(l.kind);
        jlines.push_back(std::move(jl));
      }
      doc["lines"] = std::move(jlines);
      if (opt.emit_obligations) {
        json jobs = json::array();
        for (const Obligation& ob : book.obligations()) {
          json jo;
          jo["line"] = ob.line_index + 1;
          jo["context"] = format_context(ob.context);
          jo["subject"] = print_term(ob.subject, Dialect::Modern);
          jo["type"] = print_term(ob.type, Dialect::Modern);
          jo["display"] = format_obligation(book.env(), ob);
          jobs.push_back(std::move(jo));
        }
        doc["obligations"] = std::move(jobs);
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (opt.emit_obligations) {
      std::set<std::string> avoid = book.identifier_set();
      for (std::size_t i = 0; i < book.lines().size(); ++i) {
        const Line& l = book.lines()[i];
        RawLine::Content kind = l.kind == Line::Kind::Assumption
                                    ? RawLine::Content::Dash
                                    : l.kind == Line::Kind::Primitive
                                          ? RawLine::Content::PN
                                          : RawLine::Content::Expr;
        out << "(" << (i + 1) << ") "
            << print_line(l.indicator, l.identifier, kind, l.content, l.category,
                          Dialect::Modern, avoid)
            << "\n";
        out << "    Check: " << format_obligation(book.env(), book.obligations()[i])
            << "\n";
      }
    }
    out << verdict_line(file, counts) << "\n";
    if (opt.stats) out << stats_line(book.stats()) << "\n";
    return 0;
  } catch (const Error& e) {
    if (opt.json_output) {
      doc["verdict"] = "failed";
      doc["error"] = error_json(e);
      out << doc.dump(2) << "\n";
    }
    report_error(file, e, err);
    return exit_code_for(e);
  }
}

int do_clean(const std::string& file, const std::string& dialect, std::ostream& out,
             std::ostream& err) {
  try {
    std::string text = read_file(file);
    std::vector<RawLine> raws = parse_book_text(text, dialect_of(dialect));
    CoherenceReport coherence = check_coherent(shapes_of(raws));
    if (!coherence.accepted()) {
      for (const auto& v : coherence.violations)
        err << file << ":" << raws[v.pos].loc.line << ":1: error: "
            << err_kind_name(ErrKind::Coherence) << ": " << v.message << "\n";
      return 1;
    }
    CleanReport report = clean_lines(shapes_of(raws));
    for (std::size_t pos : report.kept) out << raws[pos].text << "\n";
    if (!report.removed.empty()) {
      out << "# removed " << report.removed.size()
          << " dead-end assumption line(s):\n";
      for (const Removal& r : report.removed)
        out << "#   line " << raws[r.pos].loc.line << ": " << r.identifier
            << " (round " << r.round << ")\n";
    }
    return 0;
  } catch (const Error& e) {
    report_error(file, e, err);
    return exit_code_for(e);
  }
}

int do_to_env(const std::string& file, const std::string& dialect, std::ostream& out,
              std::ostream& err) {
  try {
    std::string text = read_file(file);
    std::vector<RawLine> raws = parse_book_text(text, dialect_of(dialect));
    Book book = check_book(raws, {});
    out << print_env(env_of_book(book));
    return 0;
  } catch (const Error& e) {
    report_error(file, e, err);
    return exit_code_for(e);
  }
}

int do_from_env(const std::string& file, const std::string& dialect,
                std::ostream& out, std::ostream& err) {
  try {
    std::string text = read_file(file);
    Env env = parse_env_text(text);
    EnvToBook result = book_of_env(env, {});
    out << print_book(result.book, dialect_of(dialect));
    return 0;
  } catch (const Error& e) {
    report_error(file, e, err);
    return exit_code_for(e);
  }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"checker for Automath books"};
  app.name("autcheck");
  app.require_subcommand(1);

  CheckOptions check_opt;
  std::vector<std::string> check_files;
  CLI::App* check = app.add_subcommand("check", "verify a book line by line");
  check->add_option("files", check_files, "book files (.aut)")->required();
  check->add_option("--dialect", check_opt.dialect, "input dialect")
      ->check(CLI::IsMember({"original", "modern"}));
  check->add_flag("--eta", check_opt.eta, "enable eta conversion");
  check->add_flag("--emit-obligations", check_opt.emit_obligations,
                  "print the judgement checked for each line");
  check->add_flag("--stats", check_opt.stats, "print reduction counters");
  check->add_flag("--json", check_opt.json_output, "machine-readable report");

  std::string clean_file, clean_dialect = "original";
  CLI::App* clean = app.add_subcommand("clean", "remove dead-end assumption lines");
  clean->add_option("file", clean_file, "book file")->required();
  clean->add_option("--dialect", clean_dialect, "input dialect")
      ->check(CLI::IsMember({"original", "modern"}));

  std::string toenv_file, toenv_dialect = "original";
  CLI::App* toenv = app.add_subcommand("to-env", "print the definition environment");
  toenv->add_option("file", toenv_file, "book file")->required();
  toenv->add_option("--dialect", toenv_dialect, "input dialect")
      ->check(CLI::IsMember({"original", "modern"}));

  std::string fromenv_file, fromenv_dialect = "modern";
  CLI::App* fromenv =
      app.add_subcommand("from-env", "expand a .denv environment into a book");
  fromenv->add_option("file", fromenv_file, "environment file (.denv)")->required();
  fromenv->add_option("--dialect", fromenv_dialect, "output dialect")
      ->check(CLI::IsMember({"original", "modern"}));

  std::vector<std::string> argv = args;
  try {
    app.parse(std::vector<std::string>(argv.rbegin(), argv.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 4;
  }

  if (*check) {
    int rc = 0;
    for (const std::string& file : check_files) {
      int r = check_one(file, check_opt, out, err);
      if (r != 0 && rc == 0) rc = r;
    }
    return rc;
  }
  if (*clean) return do_clean(clean_file, clean_dialect, out, err);
  if (*toenv) return do_to_env(toenv_file, toenv_dialect, out, err);
  if (*fromenv) return do_from_env(fromenv_file, fromenv_dialect, out, err);
  return 4;
}

} // namespace aut::cli

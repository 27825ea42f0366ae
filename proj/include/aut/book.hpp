#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "aut/kernel.hpp"
#include "aut/syntax.hpp"

namespace aut {

// One admitted book line with its elaborated terms.
struct Line {
  enum class Kind { Assumption, Definition, Primitive };

  std::optional<std::string> indicator; // nullopt = empty context
  std::string identifier;
  Kind kind = Kind::Assumption;
  TermPtr content;  // definitions only
  TermPtr category;
  SourceLoc loc;
  std::string source_text;
  int ambiguous_to_pi = 0;  // [x,A]B forms resolved in this line
  int ambiguous_to_lam = 0;
};

// The judgement Delta ; Gamma |- subject : type that admitted a line.
// Delta is captured by its length: the first env_size entries of the
// book's environment at the time the line was checked.
struct Obligation {
  std::size_t line_index = 0;
  std::size_t env_size = 0;
  Telescope context;
  TermPtr subject;
  TermPtr type;
};

// Structural view of a line, shared by the coherence checker and the
// dead-end machinery so they also run on unchecked raw lines.
struct LineShape {
  std::optional<std::string> indicator;
  std::string identifier;
  bool is_assumption = false;
};

struct CoherenceViolation {
  std::size_t pos = 0; // index into the line sequence
  std::string message;
};

struct CoherenceReport {
  std::vector<CoherenceViolation> violations;
  bool accepted() const { return violations.empty(); }
};

CoherenceReport check_coherent(const std::vector<LineShape>& shapes);
std::vector<LineShape> shapes_of(const std::vector<RawLine>& lines);

struct LineCounts {
  std::size_t assumptions = 0;
  std::size_t definitions = 0;
  std::size_t primitives = 0;
  std::size_t total() const { return assumptions + definitions + primitives; }
};

// An incrementally verified book. Lines enter through add_line, which
// either admits the line (extending the environment for definition and
// primitive lines) or throws without changing anything, so a Book value
// is ok by construction.
class Book {
public:
  explicit Book(KernelConfig cfg = {}) : cfg_(cfg) {}

  // Elaborates and checks one line against the book so far; returns the
  // judgement that was verified. Throws Error carrying the source
  // location and the attempted judgement.
  Obligation add_line(const RawLine& raw);

  bool ok() const { return true; } // failed lines are never recorded

  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<RawLine>& raw_lines() const { return raws_; }
  const Env& env() const { return env_; }
  const std::vector<Obligation>& obligations() const { return obligations_; }
  const ReductionStats& stats() const { return stats_; }
  const KernelConfig& config() const { return cfg_; }

  bool has_identifier(const std::string& name) const { return index_.count(name) > 0; }
  const Line& line_of(const std::string& identifier) const;

  // gamma_z: the chain of context variables reaching assumption z
  std::vector<std::string> subject_list(const std::string& z) const;

  // Gamma_z: the subject list with each variable's category attached;
  // the empty indicator yields the empty telescope
  Telescope typing_context(const std::optional<std::string>& z) const;

  std::vector<LineShape> shapes() const;
  std::set<std::string> identifier_set() const;
  LineCounts counts() const;

private:
  KernelConfig cfg_;
  std::vector<Line> lines_;
  std::vector<RawLine> raws_;
  std::unordered_map<std::string, std::size_t> index_;
  Env env_;
  std::vector<Obligation> obligations_;
  ReductionStats stats_;
};

// Folds add_line over the empty book; the first failing line wins.
Book check_book(const std::vector<RawLine>& lines, KernelConfig cfg = {});

std::string print_book(const Book& b, Dialect dialect);

// Display helpers in the judgement layout used by reports: contexts
// group consecutive variables of the same type ("A, B : Prop"), and the
// environment expands exactly the constants occurring in the judgement,
// eliding the others to bare names.
std::string format_context(const Telescope& ctx);
std::string format_obligation(const Env& env, const Obligation& o);

} // namespace aut

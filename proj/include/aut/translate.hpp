#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aut/book.hpp"
#include "aut/clean.hpp"

namespace aut {

// Name changes performed by the env -> book translation: one variable
// map per input entry, plus one global constant map. Every name is
// recorded, including the ones that stayed put.
struct RenamingMap {
  std::vector<std::vector<std::pair<std::string, std::string>>> entry_vars;
  std::vector<std::pair<std::string, std::string>> consts;
};

// The environment a book builds up line by line; definition lines map
// to defined entries, primitive lines to PN entries.
const Env& env_of_book(const Book& b);

struct EnvToBook {
  std::vector<RawLine> lines;
  Book book;
  RenamingMap renaming;
};

// Expands every entry x1:A1, ..., xn:An |> c(...) := M : N into n
// assumption lines chained from the empty context plus one definition
// or primitive line. Names are freshened so all identifiers of the
// output are distinct; the result is checked and comes out clean.
// Throws IllegalEnv naming the offending entry.
EnvToBook book_of_env(const Env& env, KernelConfig cfg = {});

// Validates an environment entry by entry against its own prefix.
void check_env(const Env& env, KernelConfig cfg = {});

struct RoundtripReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// The correspondence between a clean checked book and its environment:
// the environment re-checks as legal, constants and typings match the
// definition and primitive lines one to one, each assumption variable
// appears in exactly the entry contexts that depend on it, and the
// book rebuilt from the environment carries an alpha-equal environment
// up to renaming.
RoundtripReport roundtrip_check(const Book& b);

bool env_alpha_equal_up_to(const RenamingMap& renaming, const Env& original,
                           const Env& renamed);

// .denv text format, one entry per line
std::string print_env(const Env& env);
Env parse_env_text(std::string_view text);

} // namespace aut

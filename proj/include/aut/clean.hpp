#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aut/book.hpp"

namespace aut {

struct Removal {
  std::size_t pos = 0; // position in the input line sequence
  std::string identifier;
  int round = 0; // 1-based removal round
};

struct CleanReport {
  std::vector<Removal> removed;
  std::vector<std::size_t> kept; // surviving positions, in order
};

// Assumption lines whose identifier is no later line's indicator.
std::vector<std::size_t> dead_ends(const std::vector<LineShape>& shapes);
std::vector<std::size_t> dead_ends(const Book& b);

// Removes dead ends round by round until none remain. Every current
// dead end goes in one round; order independence makes this agree with
// one-at-a-time removal in any order.
CleanReport clean_lines(const std::vector<LineShape>& shapes);

struct CleanedBook {
  CleanReport report;
  Book book; // the surviving lines, re-checked from scratch
};

CleanedBook clean_book(const Book& b);

} // namespace aut

#include "aut/clean.hpp"

namespace aut {

namespace {

std::vector<std::size_t> dead_ends_among(const std::vector<LineShape>& shapes,
                                         const std::vector<bool>& present) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (!present[i] || !shapes[i].is_assumption) continue;
    bool indicated = false;
    for (std::size_t j = i + 1; j < shapes.size() && !indicated; ++j)
      indicated = present[j] && shapes[j].indicator &&
                  *shapes[j].indicator == shapes[i].identifier;
    if (!indicated) out.push_back(i);
  }
  return out;
}

} // namespace

std::vector<std::size_t> dead_ends(const std::vector<LineShape>& shapes) {
  return dead_ends_among(shapes, std::vector<bool>(shapes.size(), true));
}

std::vector<std::size_t> dead_ends(const Book& b) { return dead_ends(b.shapes()); }

CleanReport clean_lines(const std::vector<LineShape>& shapes) {
  CleanReport report;
  std::vector<bool> present(shapes.size(), true);
  for (int round = 1;; ++round) {
    std::vector<std::size_t> dead = dead_ends_among(shapes, present);
    if (dead.empty()) break;
    for (std::size_t pos : dead) {
      present[pos] = false;
      report.removed.push_back({pos, shapes[pos].identifier, round});
    }
  }
  for (std::size_t i = 0; i < shapes.size(); ++i)
    if (present[i]) report.kept.push_back(i);
  return report;
}

CleanedBook clean_book(const Book& b) {
  CleanReport report = clean_lines(b.shapes());
  std::vector<RawLine> kept;
  kept.reserve(report.kept.size());
  for (std::size_t pos : report.kept) kept.push_back(b.raw_lines()[pos]);
  Book cleaned = check_book(kept, b.config());
  return {std::move(report), std::move(cleaned)};
}

} // namespace aut

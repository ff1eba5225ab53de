// Shared fixture vocabularies and table readers for tests and the
// acceptance binary.
#ifndef MERLAB_TESTS_SUPPORT_FIXTURES_HPP
#define MERLAB_TESTS_SUPPORT_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "merlab/logic/vocabulary.hpp"

namespace fixtures {

using merlab::logic::Vocabulary;
using merlab::logic::VocabularyPtr;

inline VocabularyPtr graph() { return Vocabulary::make("G", {"V"}, {{"P", {"V"}}, {"E", {"V", "V"}}}); }
inline VocabularyPtr unary() { return Vocabulary::make("U", {"V"}, {{"P", {"V"}}}); }
inline VocabularyPtr bare() { return Vocabulary::make("Eq", {"V"}, {}); }
inline VocabularyPtr bip() { return Vocabulary::make("Bip", {"P", "Q"}, {{"G", {"P", "Q"}}}); }

inline VocabularyPtr by_name(const std::string& name) {
  if (name == "graph") return graph();
  if (name == "bip") return bip();
  if (name == "unary") return unary();
  throw std::runtime_error("unknown fixture vocabulary " + name);
}

inline std::string path(const std::string& file) { return std::string(MERLAB_FIXTURES) + "/" + file; }

struct PrefixRow {
  std::string expected, vocabulary, sentence, prenex;
};

inline std::vector<PrefixRow> prefix_table() {
  std::ifstream in(path("prefix_table.tsv"));
  if (!in) throw std::runtime_error("missing prefix_table.tsv");
  std::vector<PrefixRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');) cells.push_back(c);
    if (cells.size() != 4) throw std::runtime_error("bad prefix table row: " + line);
    rows.push_back({cells[0], cells[1], cells[2], cells[3]});
  }
  return rows;
}

}  // namespace fixtures

#endif  // MERLAB_TESTS_SUPPORT_FIXTURES_HPP

#ifndef MERLAB_LOGIC_ENUMERATE_HPP
#define MERLAB_LOGIC_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/logic/formula.hpp"
#include "merlab/logic/structure.hpp"

namespace merlab::logic {

// Named closed base-language sentences over one vocabulary.
class Theory {
 public:
  Theory(std::string name, VocabularyPtr vocab, std::vector<std::pair<std::string, Formula>> axioms = {});
  static Theory empty(VocabularyPtr vocab) { return Theory("empty", std::move(vocab)); }

  const std::string& name() const { return name_; }
  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }
  const std::vector<std::pair<std::string, Formula>>& axioms() const { return axioms_; }

  bool satisfied_by(const FiniteStructure& m) const;
  // Name of the first axiom m violates, if any.
  std::optional<std::string> first_violation(const FiniteStructure& m) const;

 private:
  std::string name_;
  VocabularyPtr vocab_;
  std::vector<std::pair<std::string, Formula>> axioms_;
  std::vector<CompiledFormula> compiled_;
};

// Number of structures on fixed universes: 2^(total tuple positions).
// Throws ResourceLimitError when that exceeds 2^62.
std::uint64_t structure_count(const Vocabulary& vocab, const std::vector<std::size_t>& sizes);

// Visits every structure on the given universes in canonical order. The
// visitor returns false to stop early. Charges one unit per structure.
void for_each_structure(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes,
                        const std::function<bool(const FiniteStructure&)>& visit, Budget& budget);

std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes,
                                                  Budget& budget);
std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes);

std::vector<FiniteStructure> models_of(const Theory& theory, const std::vector<std::size_t>& sizes, Budget& budget);
std::vector<FiniteStructure> models_of(const Theory& theory, const std::vector<std::size_t>& sizes);

// All size vectors v with lo <= v <= hi componentwise, in lexicographic order.
std::vector<std::vector<std::size_t>> size_vectors(const std::vector<std::size_t>& lo,
                                                   const std::vector<std::size_t>& hi);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_ENUMERATE_HPP

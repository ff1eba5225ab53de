#include "merlab/logic/enumerate.hpp"

#include "merlab/error.hpp"

namespace merlab::logic {

Theory::Theory(std::string name, VocabularyPtr vocab, std::vector<std::pair<std::string, Formula>> axioms)
    : name_(std::move(name)), vocab_(std::move(vocab)), axioms_(std::move(axioms)) {
  for (const auto& [ax_name, f] : axioms_) {
    if (!(f.vocabulary() == *vocab_)) throw SortError("axiom '" + ax_name + "' is over another vocabulary");
    if (!f.is_sentence()) throw ValidationError("axiom '" + ax_name + "' has free variables");
    if (uses_primes(f) || uses_links(f)) throw SortError("axiom '" + ax_name + "' is not a base-language sentence");
    compiled_.emplace_back(f);
  }
}

bool Theory::satisfied_by(const FiniteStructure& m) const { return !first_violation(m).has_value(); }

std::optional<std::string> Theory::first_violation(const FiniteStructure& m) const {
  const auto ctx = EvalContext::single(m);
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    if (!compiled_[i].eval(ctx)) return axioms_[i].first;
  }
  return std::nullopt;
}

namespace {

std::size_t total_positions(const Vocabulary& vocab, const std::vector<std::size_t>& sizes) {
  if (sizes.size() != vocab.sort_count()) throw ValidationError("size vector has the wrong number of sorts");
  std::size_t bits = 0;
  for (const auto& rel : vocab.relations()) {
    std::size_t n = 1;
    for (SortId s : rel.profile) {
      n *= sizes[s];
      if (n > 62) n = 63;  // saturate; anything past 62 bits is refused below
    }
    bits += n;
    if (bits > 62) break;
  }
  return bits;
}

}  // namespace

std::uint64_t structure_count(const Vocabulary& vocab, const std::vector<std::size_t>& sizes) {
  const std::size_t bits = total_positions(vocab, sizes);
  if (bits > 62) throw ResourceLimitError("more than 2^62 structures on these universes");
  return std::uint64_t{1} << bits;
}

void for_each_structure(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes,
                        const std::function<bool(const FiniteStructure&)>& visit, Budget& budget) {
  const std::uint64_t count = structure_count(*vocab, sizes);
  budget.require(count, "structure enumeration");
  FiniteStructure m(vocab, sizes);
  std::vector<std::pair<RelId, std::size_t>> positions;
  for (RelId r = 0; r < vocab->relation_count(); ++r) {
    for (std::size_t i = 0; i < m.tuple_count(r); ++i) positions.emplace_back(r, i);
  }
  for (std::uint64_t c = 0; c < count; ++c) {
    budget.charge(1, "structure enumeration");
    if (!visit(m)) return;
    // binary increment: clear trailing ones, set the next zero
    for (const auto& [r, i] : positions) {
      if (m.holds_index(r, i)) {
        m.set_index(r, i, false);
      } else {
        m.set_index(r, i, true);
        break;
      }
    }
  }
}

std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes,
                                                  Budget& budget) {
  std::vector<FiniteStructure> out;
  for_each_structure(
      vocab, sizes,
      [&](const FiniteStructure& m) {
        out.push_back(m);
        return true;
      },
      budget);
  return out;
}

std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes) {
  Budget budget;
  return enumerate_structures(vocab, sizes, budget);
}

std::vector<FiniteStructure> models_of(const Theory& theory, const std::vector<std::size_t>& sizes, Budget& budget) {
  std::vector<FiniteStructure> out;
  for_each_structure(
      theory.vocabulary_ptr(), sizes,
      [&](const FiniteStructure& m) {
        if (theory.satisfied_by(m)) out.push_back(m);
        return true;
      },
      budget);
  return out;
}

std::vector<FiniteStructure> models_of(const Theory& theory, const std::vector<std::size_t>& sizes) {
  Budget budget;
  return models_of(theory, sizes, budget);
}

std::vector<std::vector<std::size_t>> size_vectors(const std::vector<std::size_t>& lo,
                                                   const std::vector<std::size_t>& hi) {
  if (lo.size() != hi.size()) throw ValidationError("size bounds disagree on the number of sorts");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw ValidationError("empty size range");
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t i = cur.size();
    while (i-- > 0) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace merlab::logic

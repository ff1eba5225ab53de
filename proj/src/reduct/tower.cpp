#include "merlab/error.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::reduct {

std::string shelah_sort_name(std::size_t level) { return level <= 1 ? "S_F" : "S_F" + std::to_string(level); }

std::string shelah_relation_name(std::size_t level) {
  return level <= 1 ? "C_F" : "C_F" + std::to_string(level);
}

VocabularyPtr shelah_vocabulary(const VocabularyPtr& vocab, const PartitionedFormula& family, std::size_t level) {
  if (family.block_count() != 2) throw ValidationError("a Shelahization needs a two-block family");
  const std::string sort = shelah_sort_name(level);
  const std::string rel = shelah_relation_name(level);
  if (vocab->find_sort(sort) || vocab->find_relation(rel)) {
    throw ValidationError("vocabulary '" + vocab->name() + "' already declares " + sort + " or " + rel);
  }
  std::vector<SortId> profile{vocab->sort_count()};
  for (SortId s : family.member_sorts()) profile.push_back(s);
  return vocab->extended(vocab->name() + "+" + sort, sort, rel, profile);
}

namespace {

ShelahizedStructure expand(const FiniteStructure& m, const PartitionedFormula& family, std::size_t level,
                           const NSetValue& value) {
  auto vocab = shelah_vocabulary(m.vocabulary_ptr(), family, level);
  std::vector<std::size_t> sizes = m.sizes();
  sizes.push_back(value.members.size());
  ShelahizedStructure out{FiniteStructure(vocab, sizes), m.vocabulary().sort_count(), m.vocabulary().relation_count(),
                          {}};
  for (logic::RelId r = 0; r < m.vocabulary().relation_count(); ++r) out.structure.set_bits(r, m.bits(r));
  for (Element s = 0; s < value.members.size(); ++s) {
    const auto& set = value.members[s].tuples;
    for (const auto& t : set) {
      Tuple row{s};
      row.insert(row.end(), t.begin(), t.end());
      out.structure.set(out.membership, row);
    }
    out.member_sets.push_back(set);
  }
  return out;
}

}  // namespace

ShelahizedStructure shelahize(const FiniteStructure& m, const PartitionedFormula& family, std::size_t level,
                              Budget& budget) {
  if (family.block_count() != 2) throw ValidationError("a Shelahization needs a two-block family");
  return expand(m, family, level, nset_value(m, family, budget));
}

ShelahizedStructure shelahize(const FiniteStructure& m, const PartitionedFormula& family, std::size_t level) {
  Budget budget;
  return shelahize(m, family, level, budget);
}

FamilyTower::FamilyTower(pair::CoupledSignature sig, std::vector<PartitionedFormula> levels)
    : sig_(std::move(sig)), levels_(std::move(levels)) {
  if (levels_.empty()) throw ValidationError("a family tower needs at least one level");
  vocabs_.push_back(sig_.vocab);
  coupled_.push_back(sig_.coupled);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& level = levels_[i];
    if (!(level.formula().vocabulary() == *vocabs_[i])) {
      throw SortError("tower level " + std::to_string(i + 1) + " is not written over " + vocabs_[i]->name());
    }
    level.require_coupled_members(coupled_[i]);
    if (i + 1 == levels_.size()) break;
    if (level.block_count() != 2) {
      throw ValidationError("tower level " + std::to_string(i + 1) + " is below the top and needs two blocks");
    }
    vocabs_.push_back(shelah_vocabulary(vocabs_[i], level, i + 1));
    auto c = coupled_[i];
    c.push_back(true);
    coupled_.push_back(std::move(c));
  }
}

FamilyTower FamilyTower::parse(const pair::CoupledSignature& sig, const std::vector<std::string>& level_texts) {
  std::vector<PartitionedFormula> levels;
  VocabularyPtr vocab = sig.vocab;
  for (std::size_t i = 0; i < level_texts.size(); ++i) {
    levels.push_back(PartitionedFormula::parse(level_texts[i], vocab));
    if (i + 1 < level_texts.size()) vocab = shelah_vocabulary(vocab, levels.back(), i + 1);
  }
  return FamilyTower(sig, std::move(levels));
}

std::vector<NSetValue> tower_values(const FiniteStructure& m, const FamilyTower& tower, Budget& budget) {
  if (!(m.vocabulary() == *tower.signature().vocab)) throw SortError("structure and tower vocabularies differ");
  std::vector<NSetValue> out;
  FiniteStructure cur = m;
  const auto& levels = tower.levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out.push_back(nset_value(cur, levels[i], budget));
    if (i + 1 < levels.size()) cur = expand(cur, levels[i], i + 1, out.back()).structure;
  }
  return out;
}

std::vector<NSetValue> tower_values(const FiniteStructure& m, const FamilyTower& tower) {
  Budget budget;
  return tower_values(m, tower, budget);
}

bool tower_equivalent(const FiniteStructure& m, const FiniteStructure& n, const FamilyTower& tower) {
  if (!tower.signature().shares_coupled(m, n)) throw ValidationError("coupled universes differ");
  Budget budget;
  FiniteStructure cm = m, cn = n;
  const auto& levels = tower.levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    NSetValue a = nset_value(cm, levels[i], budget);
    NSetValue b = nset_value(cn, levels[i], budget);
    if (a != b) return false;
    if (i + 1 < levels.size()) {
      cm = expand(cm, levels[i], i + 1, a).structure;
      cn = expand(cn, levels[i], i + 1, b).structure;
    }
  }
  return true;
}

}  // namespace merlab::reduct

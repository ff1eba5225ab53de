#ifndef MERLAB_LOGIC_STRUCTURE_HPP
#define MERLAB_LOGIC_STRUCTURE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "merlab/logic/vocabulary.hpp"

namespace merlab::logic {

using Element = std::size_t;
using Tuple = std::vector<Element>;
using Permutation = std::vector<Element>;

// One map per sort. An empty optional means the identity on that sort,
// whatever its size; this is how morphisms that only move the coupled sorts
// are represented.
struct BijectionFamily {
  std::vector<std::optional<Permutation>> maps;

  static BijectionFamily identity(std::size_t sort_count) {
    return BijectionFamily{std::vector<std::optional<Permutation>>(sort_count)};
  }
  Element apply(SortId s, Element e) const { return maps[s] ? (*maps[s])[e] : e; }
  BijectionFamily inverse() const;
  // (*this) after `first`: x -> this(first(x)).
  BijectionFamily after(const BijectionFamily& first) const;
  bool is_identity() const;

  friend bool operator==(const BijectionFamily& a, const BijectionFamily& b);
};

bool is_permutation_of(const Permutation& p, std::size_t n);

// A finite interpretation of a vocabulary. Universes are {0..k-1} per sort
// (possibly empty). Each relation extent is a bitset over the relation's
// tuple space in lexicographic tuple order.
//
// Canonical order: first by the size vector, then as the binary number whose
// bit j is the j-th tuple of the concatenation of extents in declared
// relation order (tuple 0 of relation 0 is the least significant bit).
class FiniteStructure {
 public:
  FiniteStructure(VocabularyPtr vocab, std::vector<std::size_t> sizes);

  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t size(SortId s) const { return sizes_.at(s); }

  std::size_t tuple_count(RelId r) const { return bits_[r].size(); }
  const std::vector<std::size_t>& strides(RelId r) const { return strides_[r]; }
  const boost::dynamic_bitset<>& bits(RelId r) const { return bits_[r]; }

  bool holds(RelId r, std::span<const Element> tuple) const { return bits_[r].test(index_of(r, tuple)); }
  bool holds_index(RelId r, std::size_t index) const { return bits_[r].test(index); }
  void set(RelId r, std::span<const Element> tuple, bool value = true);
  void set(RelId r, std::initializer_list<Element> tuple, bool value = true) {
    set(r, std::span<const Element>(tuple.begin(), tuple.size()), value);
  }
  void set_index(RelId r, std::size_t index, bool value = true) { bits_[r][index] = value; }
  void set_bits(RelId r, boost::dynamic_bitset<> bits);

  std::size_t index_of(RelId r, std::span<const Element> tuple) const;
  Tuple tuple_at(RelId r, std::size_t index) const;
  std::vector<Tuple> extent(RelId r) const;

  // Total number of tuple positions across all relations.
  std::size_t total_bits() const;

  // The image structure: R^N = { f(t) : t in R^M }. Checks bijectivity.
  FiniteStructure image(const BijectionFamily& f) const;

  std::size_t hash() const;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);
  friend std::strong_ordering canonical_compare(const FiniteStructure& a, const FiniteStructure& b);

 private:
  VocabularyPtr vocab_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::size_t>> strides_;
  std::vector<boost::dynamic_bitset<>> bits_;
};

struct StructureLess {
  bool operator()(const FiniteStructure& a, const FiniteStructure& b) const {
    return canonical_compare(a, b) < 0;
  }
};

struct StructureHash {
  std::size_t operator()(const FiniteStructure& m) const { return m.hash(); }
};

// Lexicographic enumeration of all tuples over the given per-position sizes.
std::vector<Tuple> all_tuples(const std::vector<std::size_t>& dims);

std::string to_literal(const FiniteStructure& m);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_STRUCTURE_HPP

#ifndef MERLAB_REDUCT_REDUCT_HPP
#define MERLAB_REDUCT_REDUCT_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/logic/formula.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/logic/structure.hpp"
#include "merlab/pair/pair.hpp"

namespace merlab::reduct {

using logic::Element;
using logic::FiniteStructure;
using logic::Formula;
using logic::SortId;
using logic::Tuple;
using logic::Variable;
using logic::VocabularyPtr;

// A base-language formula with an ordered partition of its free variables.
// blocks[0] are the members, blocks.back() the outermost parameters.
// Invariant: blocks nonempty, pairwise disjoint, covering the free variables.
class PartitionedFormula {
 public:
  PartitionedFormula(Formula formula, std::vector<std::vector<Variable>> blocks);
  static PartitionedFormula parse(std::string_view text, const VocabularyPtr& vocab);

  const Formula& formula() const { return formula_; }
  const std::vector<std::vector<Variable>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Variable>& members() const { return blocks_.front(); }
  const VocabularyPtr& vocabulary_ptr() const { return formula_.vocabulary_ptr(); }
  std::vector<SortId> member_sorts() const;

  // Members must live on coupled sorts to be compared across two models.
  void require_coupled_members(const std::vector<bool>& coupled) const;

  friend bool operator==(const PartitionedFormula& a, const PartitionedFormula& b) {
    return a.formula_ == b.formula_ && a.blocks_ == b.blocks_;
  }

 private:
  Formula formula_;
  std::vector<std::vector<Variable>> blocks_;
};

std::string to_string(const PartitionedFormula& pf);

// Hereditarily finite value of a partitioned formula. Depth 1 is a sorted
// duplicate-free set of tuples; depth d+1 a sorted duplicate-free set of
// depth-d values. Equal extensions have equal representations.
struct NSetValue {
  std::size_t depth = 1;
  std::vector<Tuple> tuples;         // depth 1
  std::vector<NSetValue> members;    // depth > 1

  std::size_t size() const { return depth == 1 ? tuples.size() : members.size(); }
  // Sorts and deduplicates in place (recursively assumes members canonical).
  void canonicalize();

  friend std::strong_ordering operator<=>(const NSetValue& a, const NSetValue& b);
  friend bool operator==(const NSetValue& a, const NSetValue& b) { return (a <=> b) == 0; }
};

std::string to_string(const NSetValue& v);

NSetValue nset_value(const FiniteStructure& m, const PartitionedFormula& pf, Budget& budget);
NSetValue nset_value(const FiniteStructure& m, const PartitionedFormula& pf);

// Throws ValidationError when the depths differ.
bool nset_equal(const NSetValue& a, const NSetValue& b);

// Partial order on depth-0 elements: le[a][b] means a <= b.
struct BaseOrder {
  std::vector<std::vector<bool>> le;

  bool operator()(Element a, Element b) const { return le.at(a).at(b); }
  std::size_t size() const { return le.size(); }
  bool is_partial_order() const;
};

// a <=_k b: every member of a is dominated by some member of b; depth-1
// tuples are single elements compared by `base`.
bool nset_leq(const NSetValue& a, const NSetValue& b, const BaseOrder& base, std::size_t k);

// The pair sentence "M and N have the same n-set" for pf: a prenex
// alternation of forall-exists blocks ending in forall-members (phi <-> phi').
// For a two-block pf it is the Pi_3 sentence of the adjacency-set kind.
Formula same_nset_sentence(const PartitionedFormula& pf, const pair::CoupledSignature& sig);

// Definitional expansion by a two-block family F: a new sort with one
// element per distinct member set, and C(s, xs) for xs in set s.
struct ShelahizedStructure {
  FiniteStructure structure;
  SortId new_sort = 0;
  logic::RelId membership = 0;
  std::vector<std::vector<Tuple>> member_sets;  // indexed by new-sort element
};

// Names used by the Shelahization at tower level `level` (1-based):
// S_F / C_F at level 1, S_F<level> / C_F<level> above.
std::string shelah_sort_name(std::size_t level);
std::string shelah_relation_name(std::size_t level);
VocabularyPtr shelah_vocabulary(const VocabularyPtr& vocab, const PartitionedFormula& family, std::size_t level = 1);

// The new sort is ordered by the canonical order of the member sets.
ShelahizedStructure shelahize(const FiniteStructure& m, const PartitionedFormula& family, std::size_t level,
                              Budget& budget);
ShelahizedStructure shelahize(const FiniteStructure& m, const PartitionedFormula& family, std::size_t level = 1);

// Levels of definable families over iterated Shelahizations. Level i+1 is
// written over the expansion by level i. All levels but the last have two
// blocks; the last may have any number (one block compares extents).
class FamilyTower {
 public:
  FamilyTower(pair::CoupledSignature sig, std::vector<PartitionedFormula> levels);
  // Each text is a partitioned formula over the expansion built so far.
  static FamilyTower parse(const pair::CoupledSignature& sig, const std::vector<std::string>& level_texts);

  const pair::CoupledSignature& signature() const { return sig_; }
  const std::vector<PartitionedFormula>& levels() const { return levels_; }
  // Vocabulary and coupling that level i (0-based) is written over.
  const VocabularyPtr& level_vocabulary(std::size_t i) const { return vocabs_.at(i); }
  const std::vector<bool>& level_coupled(std::size_t i) const { return coupled_.at(i); }

 private:
  pair::CoupledSignature sig_;
  std::vector<PartitionedFormula> levels_;
  std::vector<VocabularyPtr> vocabs_;
  std::vector<std::vector<bool>> coupled_;
};

// Per-level values on the cumulative expansion. Because the new sorts are
// ordered by member set, equal lower levels align the imaginaries of M and N
// element for element, so tower equivalence is equality of these vectors.
std::vector<NSetValue> tower_values(const FiniteStructure& m, const FamilyTower& tower, Budget& budget);
std::vector<NSetValue> tower_values(const FiniteStructure& m, const FamilyTower& tower);

// Throws ValidationError when coupled universes differ.
bool tower_equivalent(const FiniteStructure& m, const FiniteStructure& n, const FamilyTower& tower);

// Two-level tower -> one base-language partitioned formula phi3 such that
//   tower_equivalent(M, N)  iff  2-sets of level1 agree and n-sets of phi3 agree.
// level2 must have one block. Each free imaginary o_i is replaced by the
// parameters p_i of level1 and contributes members y_i with level1(y_i, p_i);
// membership C(o, ys) becomes level1(ys, p_o), equality of imaginaries becomes
// coextension, and quantifiers over imaginaries range over parameters.
// Free imaginaries must be guarded (level2 forces them nonempty); otherwise
// the empty member set would hide the rest of the tuple and ValidationError
// reports the unsupported shape.
PartitionedFormula flatten_2ydlept(const PartitionedFormula& level1, const PartitionedFormula& level2);
PartitionedFormula flatten_2ydlept(const FamilyTower& tower);

// Order on one sort given by a base formula in two free variables
// (first occurrence is the smaller side).
struct OrderSpec {
  Formula order;
  std::size_t depth = 1;

  static OrderSpec parse(std::string_view text, const VocabularyPtr& vocab, std::size_t depth);
  SortId sort() const;
  // ValidationError when the relation is not a partial order on m.
  BaseOrder on(const FiniteStructure& m) const;
};

// M and N equivalent iff they carry the same order and each family n-set
// dominates the other. The family has `depth` blocks and a single member of
// the order's sort.
struct CofinalOrder {
  OrderSpec order;
  PartitionedFormula family;

  CofinalOrder(OrderSpec order, PartitionedFormula family);
  bool equivalent(const FiniteStructure& m, const FiniteStructure& n, Budget& budget) const;
};

}  // namespace merlab::reduct

#endif  // MERLAB_REDUCT_REDUCT_HPP

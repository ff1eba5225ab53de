#ifndef MERLAB_LOGIC_FORMULA_HPP
#define MERLAB_LOGIC_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "merlab/logic/vocabulary.hpp"

namespace merlab::logic {

enum class Kind { True, False, Atom, Equal, Link, Not, And, Or, Implies, Iff, Forall, Exists };

// A sorted variable. `primed` selects the second copy of a sort; it only
// occurs in pair and triple formulas.
struct Variable {
  std::string name;
  SortId sort = 0;
  bool primed = false;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::True;
  RelId relation = 0;           // Atom
  bool primed = false;          // Atom: reads the second structure
  std::vector<Variable> args;   // Atom arguments; Equal and Link operands
  Variable bound;               // Forall / Exists
  std::vector<NodePtr> children;
};

// Immutable first-order formula over a relational vocabulary. The same
// syntax houses base-language formulas, pair-language formulas (primed atoms)
// and triple-language formulas (primed atoms, primed sorts, link atoms).
class Formula {
 public:
  Formula(VocabularyPtr vocab, NodePtr node) : vocab_(std::move(vocab)), node_(std::move(node)) {}

  static Formula truth(VocabularyPtr vocab);
  static Formula falsity(VocabularyPtr vocab);
  // Checks arity and argument sorts against the relation profile.
  static Formula atom(VocabularyPtr vocab, RelId rel, std::vector<Variable> args, bool primed = false);
  static Formula equal(VocabularyPtr vocab, Variable a, Variable b);
  static Formula link(VocabularyPtr vocab, Variable from, Variable to);
  static Formula negation(const Formula& f);
  static Formula conjunction(const Formula& a, const Formula& b);
  static Formula disjunction(const Formula& a, const Formula& b);
  static Formula implication(const Formula& a, const Formula& b);
  static Formula biconditional(const Formula& a, const Formula& b);
  static Formula forall(Variable v, const Formula& body);
  static Formula exists(Variable v, const Formula& body);
  // Folds; the empty conjunction is true and the empty disjunction false.
  static Formula conjunction(VocabularyPtr vocab, const std::vector<Formula>& parts);
  static Formula disjunction(VocabularyPtr vocab, const std::vector<Formula>& parts);

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  const NodePtr& node_ptr() const { return node_; }
  const Vocabulary& vocabulary() const { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const { return vocab_; }

  RelId relation() const { return node_->relation; }
  bool primed() const { return node_->primed; }
  const std::vector<Variable>& args() const { return node_->args; }
  const Variable& bound() const { return node_->bound; }
  std::size_t child_count() const { return node_->children.size(); }
  Formula child(std::size_t i) const { return Formula(vocab_, node_->children.at(i)); }

  // Free variables in order of first occurrence (left to right).
  std::vector<Variable> free_variables() const;
  bool is_sentence() const { return free_variables().empty(); }

  // Structural equality, including variable names and sorts.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  VocabularyPtr vocab_;
  NodePtr node_;
};

bool structurally_equal(const Node& a, const Node& b);

// Maximum nesting depth of quantifiers.
std::size_t quantifier_rank(const Formula& f);

bool uses_primes(const Formula& f);
bool uses_links(const Formula& f);

// Rendering in the formula grammar; parse(print(f)) == f.
std::string to_string(const Formula& f);

// Capture-avoiding renaming of free occurrences of `from` to `to`.
Formula rename_free(const Formula& f, const Variable& from, const Variable& to);

// Every variable name (free or bound) occurring in f.
std::vector<std::string> all_variable_names(const Formula& f);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_FORMULA_HPP

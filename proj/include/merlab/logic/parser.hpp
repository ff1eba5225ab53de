#ifndef MERLAB_LOGIC_PARSER_HPP
#define MERLAB_LOGIC_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "merlab/logic/formula.hpp"
#include "merlab/logic/vocabulary.hpp"

namespace merlab::logic {

// Which copy system a formula is written in.
//  Base:   plain L-formulas; no primes, no links.
//  Pair:   (L,=,L'); primed relations read the right structure. Coupled
//          sorts are shared, so their variables are never primed; decoupled
//          sorts have a primed copy `S'`.
//  Triple: (L,+,L'); every sort has a disjoint primed copy, coupled sorts are
//          linked by `@f(x, y')`, and equality never crosses the copies.
enum class Language { Base, Pair, Triple };

struct Syntax {
  Language language = Language::Base;
  std::vector<bool> coupled;  // per sort; empty means every sort is coupled

  static Syntax base() { return {}; }
  static Syntax pair(std::vector<bool> coupled = {}) { return {Language::Pair, std::move(coupled)}; }
  static Syntax triple(std::vector<bool> coupled = {}) { return {Language::Triple, std::move(coupled)}; }
  bool is_coupled(SortId s) const { return coupled.empty() || coupled.at(s); }
};

// Grammar (lowest precedence first):
//   formula := imp ('<->' imp)*
//   imp     := or ('->' imp)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | ('forall'|'exists') binder (',' binder)* '.' formula | primary
//   binder  := var (':' Sort ["'"])?
//   primary := '(' formula ')' | 'true' | 'false' | R["'"] '(' var, ... ')'
//            | var '=' var | var '!=' var | '@f' '(' var ',' var ')'
// A quantifier body extends as far right as possible. Unannotated variable
// sorts are inferred from their atoms; a vocabulary with a single sort
// supplies the default.
Formula parse_formula(std::string_view text, const VocabularyPtr& vocab, const Syntax& syntax = {});
Formula parse_pair_formula(std::string_view text, const VocabularyPtr& vocab, std::vector<bool> coupled = {});
Formula parse_triple_formula(std::string_view text, const VocabularyPtr& vocab, std::vector<bool> coupled = {});

// A formula with an ordered partition of its free variables. blocks[0] holds
// the members, the last block the outermost parameters.
struct PartitionedSyntaxTree {
  Formula formula;
  std::vector<std::vector<Variable>> blocks;
};

// Two notations:
//   header form  `[x1, x2 : y : z] phi`   blocks listed members first;
//   atom form    `G(x : y)`               groups listed outermost parameter
//                                          first, so this reads "the sets of
//                                          y adjacent to some x".
// Without separators the formula is a single block of its free variables.
PartitionedSyntaxTree parse_partitioned(std::string_view text, const VocabularyPtr& vocab,
                                        const Syntax& syntax = {});

// Header-form rendering; parse_partitioned(to_string(...)) round-trips.
std::string to_string(const PartitionedSyntaxTree& pf);

// Checks that a programmatically built formula respects a copy system
// (same rules the parser enforces). Throws SortError / ValidationError.
void validate_language(const Formula& f, const Syntax& syntax);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_PARSER_HPP

#ifndef MERLAB_PAIR_PAIR_HPP
#define MERLAB_PAIR_PAIR_HPP

#include <optional>
#include <string>
#include <vector>

#include "merlab/logic/eval.hpp"
#include "merlab/logic/formula.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/logic/structure.hpp"

namespace merlab::pair {

using logic::Assignment;
using logic::BijectionFamily;
using logic::FiniteStructure;
using logic::Formula;
using logic::Permutation;
using logic::SortId;
using logic::VocabularyPtr;

// Which sorts two paired models share.
struct CoupledSignature {
  VocabularyPtr vocab;
  std::vector<bool> coupled;

  static CoupledSignature all(VocabularyPtr vocab);
  static CoupledSignature of(VocabularyPtr vocab, const std::vector<std::string>& sort_names);

  bool is_coupled(SortId s) const { return coupled.at(s); }
  bool all_coupled() const;
  std::vector<std::string> coupled_names() const;
  logic::Syntax pair_syntax() const { return logic::Syntax::pair(coupled); }
  logic::Syntax triple_syntax() const { return logic::Syntax::triple(coupled); }
  // Equal coupled universes: the condition for M and N to be compared.
  bool shares_coupled(const FiniteStructure& m, const FiniteStructure& n) const;

  friend bool operator==(const CoupledSignature& a, const CoupledSignature& b) {
    return *a.vocab == *b.vocab && a.coupled == b.coupled;
  }
};

// A model of (L,=,L'): unprimed symbols read `left`, primed ones `right`.
struct DoubleStructure {
  FiniteStructure left;
  FiniteStructure right;
  CoupledSignature sig;
};

DoubleStructure make_double(const FiniteStructure& m, const FiniteStructure& n, const CoupledSignature& sig);

// Primes every atom and moves decoupled-sort variables to the primed copy.
Formula prime_translate(const Formula& phi, const CoupledSignature& sig);

bool evaluate_pair(const Formula& psi, const DoubleStructure& d, const Assignment& env = {});

// R^N = { f(t) : t in R^M }. transport(transport(M, f), f^-1) = M.
FiniteStructure transport(const FiniteStructure& m, const BijectionFamily& f);

// A model of (L,+,L'): two disjoint copies and, per coupled sort, a bijection
// from the left universe onto the right one (empty entry: the identity map).
struct TripleStructure {
  FiniteStructure left;
  FiniteStructure right;
  std::vector<std::optional<Permutation>> link;
  CoupledSignature sig;
};

TripleStructure make_triple(const FiniteStructure& m, const FiniteStructure& n, const BijectionFamily& link,
                            const CoupledSignature& sig);

bool evaluate_triple(const Formula& psi, const TripleStructure& t, const Assignment& env = {});

// Pair formula -> triple formula: each primed atom reads its coupled
// arguments through the link, so that for every triple (M, N, f)
//   evaluate_pair(psi, (M, transport(N, f^-1))) = evaluate_triple(relativize(psi), (M, N, f)).
Formula relativize_to_triple(const Formula& psi, const CoupledSignature& sig);

}  // namespace merlab::pair

#endif  // MERLAB_PAIR_PAIR_HPP

#ifndef MERLAB_CATALOG_CATALOG_HPP
#define MERLAB_CATALOG_CATALOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/logic/enumerate.hpp"
#include "merlab/mer/mer.hpp"

namespace merlab::catalog {

using logic::Element;
using logic::FiniteStructure;
using logic::Formula;
using logic::Theory;
using logic::VocabularyPtr;
using mer::MerSpec;
using mer::Scale;

struct CatalogEntry {
  std::string id;
  VocabularyPtr vocabulary;
  Theory theory;
  MerSpec spec;
  std::string doc;
  Scale reference_scale;  // the entry's spec is an ER here
};

// ValidationError for an unknown id.
const CatalogEntry& catalog_get(const std::string& id);
std::vector<std::string> catalog_list();

// forall x1..xk (R(x) <-> R'(x)) for every relation, conjoined.
Formula identity_sentence(const VocabularyPtr& vocab, const std::vector<bool>& coupled);

// Bipartite graphs: sorts P, Q and G(P, Q).
VocabularyPtr bipartite_vocabulary();

struct ExtensionGraphRequest {
  std::size_t p = 0, q = 0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 200000;
};

// Level-k extension axioms: for disjoint A, A' on one side with
// |A| + |A'| <= k, some vertex on the other side is adjacent to all of A
// and none of A'. Returns the first violated (side, A, A'), if any.
struct ExtensionViolation {
  std::size_t side = 0;  // sort whose subsets are extended
  std::vector<Element> adjacent, non_adjacent;
};
std::optional<ExtensionViolation> first_extension_violation(const FiniteStructure& g, std::size_t k);

// Seeded min-conflicts search (mt19937_64). ValidationError when
// 2^k > min(|P|, |Q|) or, with the seed, when max_steps runs out.
FiniteStructure generate_extension_graph(const ExtensionGraphRequest& req);

// Exchanges the G-rows of c and c' for every pair. ValidationError when an
// element occurs twice among the pairs or lies outside P.
FiniteStructure swap_adjacency(const FiniteStructure& g, const std::vector<std::pair<Element, Element>>& pairs);

struct SwapWitness {
  FiniteStructure graph;
  std::vector<std::pair<Element, Element>> pairs;    // swaps performed
  std::vector<std::pair<Element, Element>> flipped;  // G-atoms (c, d) whose truth changed
  std::size_t disjunct = 0;                          // index in the disjunctive normal form
};

// phi quantifier-free over the bipartite vocabulary, `tuple` in the order of
// phi's free variables. Picks the first DNF disjunct with a relational
// literal that the tuple satisfies, and seeks the least partners c' (outside
// the tuple) whose rows falsify every relational literal of that disjunct
// at c. Swapping then keeps the set of rows.
std::optional<SwapWitness> find_swap_witness(const FiniteStructure& g, const Formula& phi,
                                             const std::vector<Element>& tuple);

// Graph vocabulary (A; R(A, A)) and its expansion (A, B; R, In(A, A, B), D(B)).
VocabularyPtr graph_vocabulary();
VocabularyPtr interpretation_vocabulary();

constexpr std::size_t kMaxInterpretedSize = 3;

// B = nonempty subsets of A^2 in increasing bitmask order (pair (a, a') is
// bit a*|A| + a'), In the membership relation, D the b with (A, b)
// equivalent to (A, R) under spec.
FiniteStructure expand_interpretation(const FiniteStructure& m, const MerSpec& spec);
// Checks extensionality, singletons and binary unions, then returns (A, R).
FiniteStructure forget_interpretation(const FiniteStructure& n);
// Extends f : forget(n) -> forget(n2) to the expansions, mapping each b to the
// element with the image extension.
logic::BijectionFamily lift_isomorphism(const logic::BijectionFamily& f, const FiniteStructure& n,
                                        const FiniteStructure& n2);

}  // namespace merlab::catalog

#endif  // MERLAB_CATALOG_CATALOG_HPP

#ifndef MERLAB_LOGIC_ISO_HPP
#define MERLAB_LOGIC_ISO_HPP

#include <optional>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/logic/structure.hpp"

namespace merlab::logic {

// Per sort, per element: an optional forced image.
using PartialMap = std::vector<std::vector<std::optional<Element>>>;

struct IsoOptions {
  std::size_t limit = 0;  // stop after this many results; 0 means all
  PartialMap pinned;      // empty, or one entry per sort
};

// Every sort-indexed bijection family f with f(M) = N, as explicit
// permutations on every sort, in lexicographic order of the maps.
std::vector<BijectionFamily> find_isomorphisms(const FiniteStructure& m, const FiniteStructure& n, Budget& budget,
                                               const IsoOptions& options = {});
std::vector<BijectionFamily> find_isomorphisms(const FiniteStructure& m, const FiniteStructure& n);

bool is_isomorphism(const FiniteStructure& m, const FiniteStructure& n, const BijectionFamily& f);

// All bijection families on the given universes, permuting only the sorts
// flagged in `moving` (others stay the identity). Lexicographic order.
std::vector<BijectionFamily> all_bijections(const std::vector<std::size_t>& sizes, const std::vector<bool>& moving);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_ISO_HPP

#include <map>

#include "merlab/catalog/catalog.hpp"
#include "merlab/error.hpp"

namespace merlab::catalog {

namespace {

constexpr logic::RelId kR = 0, kIn = 1, kD = 2;

void check_graph(const logic::Vocabulary& v) {
  if (v.sort_count() != 1 || v.relation_count() != 1 || v.relation(0).profile != std::vector<logic::SortId>{0, 0})
    throw ValidationError("expected a graph vocabulary (A; R(A, A)), got '" + v.name() + "'");
}

void check_interpretation(const logic::Vocabulary& v) {
  if (v.sort_count() != 2 || v.relation_count() != 3 || v.relation(kR).profile != std::vector<logic::SortId>{0, 0} ||
      v.relation(kIn).profile != std::vector<logic::SortId>{0, 0, 1} ||
      v.relation(kD).profile != std::vector<logic::SortId>{1})
    throw ValidationError("expected an interpretation vocabulary (A, B; R, In(A, A, B), D(B)), got '" + v.name() + "'");
}

// Extension of each b as a bitmask over A^2, pair (a, a') at bit a*|A| + a'.
std::vector<std::uint64_t> extensions(const FiniteStructure& n) {
  const std::size_t a = n.size(0);
  std::vector<std::uint64_t> ext(n.size(1), 0);
  for (Element b = 0; b < n.size(1); ++b)
    for (Element x = 0; x < a; ++x)
      for (Element y = 0; y < a; ++y)
        if (n.holds(kIn, std::vector<Element>{x, y, b})) ext[b] |= std::uint64_t{1} << (x * a + y);
  return ext;
}

}  // namespace

VocabularyPtr interpretation_vocabulary() {
  return logic::Vocabulary::make("Interpreted", {"A", "B"},
                                 {{"R", {"A", "A"}}, {"In", {"A", "A", "B"}}, {"D", {"B"}}});
}

FiniteStructure expand_interpretation(const FiniteStructure& m, const MerSpec& spec) {
  check_graph(m.vocabulary());
  check_graph(spec.vocabulary());
  const std::size_t a = m.size(0);
  if (a > kMaxInterpretedSize)
    throw ValidationError("interpretations are built for |A| <= " + std::to_string(kMaxInterpretedSize) + ", got " +
                          std::to_string(a));
  const std::uint64_t subsets = (std::uint64_t{1} << (a * a)) - 1;
  FiniteStructure n(interpretation_vocabulary(), {a, static_cast<std::size_t>(subsets)});
  for (const auto& t : m.extent(0)) n.set(kR, t);

  FiniteStructure base(spec.sig.vocab, {a});
  for (Element x = 0; x < a; ++x)
    for (Element y = 0; y < a; ++y)
      if (m.holds(0, std::vector<Element>{x, y})) base.set(0, {x, y});
  for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
    const Element b = static_cast<Element>(mask - 1);
    FiniteStructure g(spec.sig.vocab, {a});
    for (Element x = 0; x < a; ++x)
      for (Element y = 0; y < a; ++y)
        if ((mask >> (x * a + y)) & 1) {
          n.set(kIn, {x, y, b});
          g.set(0, {x, y});
        }
    if (mer::equivalent(spec, g, base)) n.set(kD, {b});
  }
  return n;
}

FiniteStructure forget_interpretation(const FiniteStructure& n) {
  check_interpretation(n.vocabulary());
  const std::size_t a = n.size(0);
  const auto ext = extensions(n);
  std::map<std::uint64_t, Element> by_ext;
  for (Element b = 0; b < ext.size(); ++b)
    if (!by_ext.emplace(ext[b], b).second)
      throw ValidationError("B is not extensional: elements " + std::to_string(by_ext[ext[b]]) + " and " +
                            std::to_string(b) + " have the same members");
  for (std::size_t bit = 0; bit < a * a; ++bit)
    if (!by_ext.contains(std::uint64_t{1} << bit))
      throw ValidationError("B lacks the singleton of pair (" + std::to_string(bit / a) + ", " +
                            std::to_string(bit % a) + ")");
  for (Element b = 0; b < ext.size(); ++b)
    for (Element b2 = b + 1; b2 < ext.size(); ++b2)
      if (!by_ext.contains(ext[b] | ext[b2]))
        throw ValidationError("B is not closed under the union of " + std::to_string(b) + " and " +
                              std::to_string(b2));
  FiniteStructure m(graph_vocabulary(), {a});
  for (const auto& t : n.extent(kR)) m.set(0, t);
  return m;
}

logic::BijectionFamily lift_isomorphism(const logic::BijectionFamily& f, const FiniteStructure& n,
                                        const FiniteStructure& n2) {
  check_interpretation(n.vocabulary());
  check_interpretation(n2.vocabulary());
  const std::size_t a = n.size(0);
  if (n2.size(0) != a || n2.size(1) != n.size(1)) throw ValidationError("interpretations of different sizes");
  const auto ext = extensions(n), ext2 = extensions(n2);
  std::map<std::uint64_t, Element> target;
  for (Element b = 0; b < ext2.size(); ++b) target.emplace(ext2[b], b);

  logic::Permutation on_a(a), on_b(ext.size());
  for (Element x = 0; x < a; ++x) on_a[x] = f.apply(0, x);
  for (Element b = 0; b < ext.size(); ++b) {
    std::uint64_t image = 0;
    for (std::size_t bit = 0; bit < a * a; ++bit)
      if ((ext[b] >> bit) & 1) image |= std::uint64_t{1} << (on_a[bit / a] * a + on_a[bit % a]);
    auto it = target.find(image);
    if (it == target.end()) throw ValidationError("no element of B has the image of " + std::to_string(b));
    on_b[b] = it->second;
  }
  return logic::BijectionFamily{{on_a, on_b}};
}

}  // namespace merlab::catalog

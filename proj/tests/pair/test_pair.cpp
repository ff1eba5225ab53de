#include <gtest/gtest.h>

#include <set>

#include "merlab/error.hpp"
#include "merlab/logic/enumerate.hpp"
#include "merlab/logic/iso.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/pair/pair.hpp"
#include "support/oracles.hpp"

using namespace merlab;
using namespace merlab::logic;
using namespace merlab::pair;

namespace {

VocabularyPtr unary_vocab() { return Vocabulary::make("U", {"V"}, {{"P", {"V"}}}); }
VocabularyPtr graph_vocab() { return Vocabulary::make("G", {"V"}, {{"P", {"V"}}, {"E", {"V", "V"}}}); }
VocabularyPtr bip_vocab() { return Vocabulary::make("Bip", {"P", "Q"}, {{"G", {"P", "Q"}}}); }

const char* kAdjacencySentence =
    "(forall x:P. exists x2:P. forall y:Q. (G(x,y) <-> G'(x2,y))) & "
    "(forall x2:P. exists x:P. forall y:Q. (G(x,y) <-> G'(x2,y)))";

std::set<std::set<Element>> row_set(const FiniteStructure& g) {
  std::set<std::set<Element>> rows;
  for (Element x = 0; x < g.size(0); ++x) {
    std::set<Element> row;
    for (Element y = 0; y < g.size(1); ++y) {
      if (g.holds(0, std::vector<Element>{x, y})) row.insert(y);
    }
    rows.insert(row);
  }
  return rows;
}

}  // namespace

TEST(MakeDouble, CoupledUniversesMustAgree) {
  auto u = unary_vocab();
  auto sig = CoupledSignature::all(u);
  FiniteStructure m(u, {2});
  EXPECT_NO_THROW(make_double(m, m, sig));
  EXPECT_THROW(make_double(FiniteStructure(u, {2}), FiniteStructure(u, {3}), sig), ValidationError);
  auto bip = bip_vocab();
  auto half = CoupledSignature::of(bip, {"P"});
  EXPECT_NO_THROW(make_double(FiniteStructure(bip, {2, 1}), FiniteStructure(bip, {2, 4}), half));
  EXPECT_THROW(CoupledSignature::of(bip, {"R"}), SortError);
}

TEST(PrimeTranslate, Examples) {
  auto u = graph_vocab();
  auto sig = CoupledSignature::all(u);
  EXPECT_EQ(to_string(prime_translate(parse_formula("P(x)", u), sig)), "P'(x)");
  EXPECT_EQ(to_string(prime_translate(parse_formula("forall x. E(x,x)", u), sig)), "forall x:V. E'(x, x)");
  Formula mixed = parse_formula("forall x. (P(x) -> exists y. (E(x,y) | !(x = y)))", u);
  Formula primed = prime_translate(mixed, sig);
  EXPECT_EQ(to_string(primed), "forall x:V. P'(x) -> (exists y:V. E'(x, y) | !(x = y))");
  EXPECT_EQ(parse_pair_formula(to_string(primed), u), primed);
  auto bip = bip_vocab();
  auto half = CoupledSignature::of(bip, {"P"});
  Formula d = prime_translate(parse_formula("forall x:P. exists y:Q. G(x,y)", bip), half);
  EXPECT_EQ(to_string(d), "forall x:P. exists y:Q'. G'(x, y)");
  EXPECT_EQ(parse_pair_formula(to_string(d), bip, half.coupled), d);
}

TEST(PrimeTranslate, ReadsTheRightStructure) {
  auto v = graph_vocab();
  auto sig = CoupledSignature::all(v);
  auto all = enumerate_structures(v, {2});
  Formula phi = parse_formula("exists x. forall y. (E(x,y) | P(y))", v);
  Formula primed = prime_translate(phi, sig);
  for (std::size_t i = 0; i < all.size(); i += 5) {
    for (std::size_t j = 0; j < all.size(); j += 7) {
      EXPECT_EQ(evaluate_pair(primed, make_double(all[i], all[j], sig)), evaluate(phi, all[j]));
    }
  }
}

TEST(EvaluatePair, Examples) {
  auto u = unary_vocab();
  auto sig = CoupledSignature::all(u);
  Formula same = parse_pair_formula("forall x. (P(x) <-> P'(x))", u);
  for (const auto& m : enumerate_structures(u, {2})) EXPECT_TRUE(evaluate_pair(same, make_double(m, m, sig)));
  Formula contain = parse_pair_formula("forall x. (P(x) -> P'(x))", u);
  FiniteStructure left(u, {1}), right(u, {1});
  left.set(0, {0});
  EXPECT_FALSE(evaluate_pair(contain, make_double(left, right, sig)));
  EXPECT_TRUE(evaluate_pair(contain, make_double(right, left, sig)));
}

TEST(EvaluatePair, AdjacencySentenceIsRowSetEquality) {
  auto bip = bip_vocab();
  auto sig = CoupledSignature::all(bip);
  Formula adj = parse_pair_formula(kAdjacencySentence, bip);
  for (std::size_t p = 0; p <= 2; ++p) {
    for (std::size_t q = 0; q <= 2; ++q) {
      auto all = enumerate_structures(bip, {p, q});
      for (const auto& m : all) {
        for (const auto& n : all) {
          EXPECT_EQ(evaluate_pair(adj, make_double(m, n, sig)), row_set(m) == row_set(n));
        }
      }
    }
  }
}

TEST(Transport, Examples) {
  auto u = unary_vocab();
  FiniteStructure m(u, {2});
  m.set(0, {0});
  EXPECT_EQ(transport(m, BijectionFamily::identity(1)), m);
  BijectionFamily swap{{Permutation{1, 0}}};
  FiniteStructure n = transport(m, swap);
  EXPECT_TRUE(n.holds(0, std::vector<Element>{1}));
  EXPECT_FALSE(n.holds(0, std::vector<Element>{0}));
  EXPECT_EQ(transport(n, swap.inverse()), m);
  EXPECT_THROW(transport(m, BijectionFamily{{Permutation{0, 0}}}), ValidationError);
}

TEST(Transport, Functoriality) {
  auto v = graph_vocab();
  for (std::size_t k = 0; k <= 3; ++k) {
    auto all = enumerate_structures(v, {k});
    auto perms = all_bijections({k}, {true});
    for (std::size_t i = 0; i < all.size(); i += (k == 3 ? 17 : 1)) {
      for (const auto& f : perms) {
        EXPECT_EQ(transport(transport(all[i], f), f.inverse()), all[i]);
        for (const auto& g : perms) {
          EXPECT_EQ(transport(all[i], g.after(f)), transport(transport(all[i], f), g));
        }
      }
    }
  }
}

TEST(EvaluateTriple, Examples) {
  auto u = unary_vocab();
  auto sig = CoupledSignature::all(u);
  FiniteStructure m(u, {2});
  m.set(0, {0});
  auto t = make_triple(m, m, BijectionFamily::identity(1), sig);
  EXPECT_TRUE(evaluate_triple(parse_triple_formula("@f(x, y)", u), t, {{"x", 0}, {"y", 0}}));
  EXPECT_FALSE(evaluate_triple(parse_triple_formula("@f(x, y)", u), t, {{"x", 0}, {"y", 1}}));
  EXPECT_THROW(parse_triple_formula("exists x:V. exists y:V'. x = y", u), ValidationError);

  FiniteStructure n(u, {2});
  n.set(0, {1});
  auto swapped = make_triple(m, n, BijectionFamily{{Permutation{1, 0}}}, sig);
  Formula onto = parse_triple_formula("forall x:V. (P(x) -> exists y:V'. (@f(x, y) & P'(y)))", u);
  EXPECT_TRUE(evaluate_triple(onto, swapped));
  auto straight = make_triple(m, n, BijectionFamily::identity(1), sig);
  EXPECT_FALSE(evaluate_triple(onto, straight));

  auto bip = bip_vocab();
  auto half = CoupledSignature::of(bip, {"P"});
  FiniteStructure b(bip, {1, 1});
  auto tb = make_triple(b, b, BijectionFamily::identity(2), half);
  Formula bad = Formula::link(bip, Variable{"x", 1, false}, Variable{"y", 1, true});
  EXPECT_THROW(evaluate_triple(bad, tb, {{"x", 0}, {"y", 0}}), ValidationError);
}

TEST(EvaluateTriple, AgreesWithPairThroughTransport) {
  auto bip = bip_vocab();
  const std::vector<std::pair<std::vector<std::string>, const char*>> cases = {
      {{"P", "Q"}, kAdjacencySentence},
      {{"P", "Q"}, "forall x:P. forall y:Q. (G(x,y) <-> G'(x,y))"},
      {{"P", "Q"}, "exists x:P. exists y:Q. (G(x,y) & !G'(x,y))"},
      {{"P"}, "forall x:P. ((exists y:Q. G(x,y)) <-> (exists y:Q'. G'(x,y)))"},
      {{"P"}, "forall x:P. forall x2:P. (x = x2 | exists y:Q'. (G'(x,y) & !G'(x2,y)))"},
  };
  for (const auto& [coupled, text] : cases) {
    auto sig = CoupledSignature::of(bip, coupled);
    Formula psi = parse_pair_formula(text, bip, sig.coupled);
    Formula rel = relativize_to_triple(psi, sig);
    validate_language(rel, sig.triple_syntax());
    for (std::size_t p = 0; p <= 2; ++p) {
      for (std::size_t q = 0; q <= 2; ++q) {
        auto lefts = enumerate_structures(bip, {p, q});
        for (std::size_t q2 = 0; q2 <= 2; ++q2) {
          if (sig.is_coupled(1) && q2 != q) continue;
          auto rights = enumerate_structures(bip, {p, q2});
          std::vector<bool> moving = {true, sig.is_coupled(1)};
          auto links = all_bijections({p, q2}, moving);
          for (const auto& m : lefts) {
            for (const auto& n : rights) {
              for (const auto& f : links) {
                const bool via_pair = evaluate_pair(psi, make_double(m, transport(n, f.inverse()), sig));
                const bool via_triple = evaluate_triple(rel, make_triple(m, n, f, sig));
                ASSERT_EQ(via_pair, via_triple) << text;
                // the naive oracle reads the triple directly
                std::map<std::string, Element> env;
                std::vector<std::vector<Element>> table(2);
                for (SortId s = 0; s < 2; ++s) {
                  for (Element e = 0; e < m.size(s); ++e) table[s].push_back(f.maps[s] ? (*f.maps[s])[e] : e);
                }
                ASSERT_EQ(oracle::satisfies(rel.node(), m, n, env, table), via_triple);
              }
            }
          }
        }
      }
    }
  }
}

TEST(EvaluateTriple, IdentityLinkMatchesDouble) {
  auto v = graph_vocab();
  auto sig = CoupledSignature::all(v);
  std::vector<Formula> sentences = {
      parse_pair_formula("forall x. (P(x) <-> P'(x))", v),
      parse_pair_formula("forall x, y. (E(x,y) -> E'(y,x))", v),
      parse_pair_formula("exists x. (P(x) & forall y. (E'(x,y) | x = y))", v),
  };
  auto all = enumerate_structures(v, {2});
  for (const auto& s : sentences) {
    Formula rel = relativize_to_triple(s, sig);
    for (const auto& m : all) {
      EXPECT_EQ(evaluate_pair(s, make_double(m, m, sig)),
                evaluate_triple(rel, make_triple(m, m, BijectionFamily::identity(1), sig)));
    }
  }
}

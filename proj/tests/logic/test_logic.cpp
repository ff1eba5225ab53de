#include <gtest/gtest.h>

#include <random>

#include "merlab/error.hpp"
#include "merlab/logic/enumerate.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/logic/iso.hpp"
#include "merlab/logic/parser.hpp"
#include "support/oracles.hpp"

using namespace merlab;
using namespace merlab::logic;

namespace {

VocabularyPtr graph_vocab() { return Vocabulary::make("G", {"V"}, {{"P", {"V"}}, {"E", {"V", "V"}}}); }
VocabularyPtr unary_vocab() { return Vocabulary::make("U", {"V"}, {{"P", {"V"}}}); }
VocabularyPtr binary_vocab() { return Vocabulary::make("B", {"V"}, {{"R", {"V", "V"}}}); }
VocabularyPtr bip_vocab() { return Vocabulary::make("Bip", {"P", "Q"}, {{"G", {"P", "Q"}}}); }

}  // namespace

TEST(Vocabulary, RejectsDuplicatesAndUnknownSorts) {
  EXPECT_THROW(Vocabulary("x", {"V", "V"}, {}), SortError);
  EXPECT_THROW(Vocabulary("x", {"V"}, {{"R", {"W"}}}), SortError);
  EXPECT_THROW(Vocabulary("x", {"V"}, {{"R", {}}}), SortError);
  EXPECT_THROW(Vocabulary("x", {"V"}, {{"R", {"V"}}, {"R", {"V"}}}), SortError);
}

TEST(Structure, TupleIndexingAndBounds) {
  FiniteStructure m(bip_vocab(), {2, 3});
  m.set(0, {1, 2});
  EXPECT_TRUE(m.holds(0, std::vector<Element>{1, 2}));
  EXPECT_EQ(m.index_of(0, std::vector<Element>{1, 2}), 5u);
  EXPECT_EQ(m.tuple_at(0, 5), (Tuple{1, 2}));
  EXPECT_THROW(m.set(0, {2, 0}), ValidationError);
  EXPECT_THROW(m.set(0, {0}), SortError);
  EXPECT_EQ(to_literal(m), "P = 2; Q = 3; G = {(1,2)};");
}

TEST(Parser, ExamplesAndErrors) {
  auto v = Vocabulary::make("G", {"V"}, {{"P", {"V"}}, {"E", {"V", "V"}}});
  Formula f = parse_formula("forall x:V. (P(x) -> exists y:V. E(x,y))", v);
  EXPECT_TRUE(f.is_sentence());
  EXPECT_EQ(parse_formula(to_string(f), v), f);
  EXPECT_THROW(parse_formula("forall x:V. Q(x)", v), SortError);
  EXPECT_THROW(parse_formula("E(x)", v), SortError);
  EXPECT_THROW(parse_formula("forall x:V. (P(x)", v), ParseError);
  EXPECT_THROW(parse_formula("P(x) &", v), ParseError);
  auto bip = bip_vocab();
  EXPECT_THROW(parse_formula("exists x:P. exists y:Q. x = y", bip), SortError);
  EXPECT_THROW(parse_formula("exists x. x = x", bip), SortError);  // sort not inferable
  try {
    parse_formula("P(x) $ P(y)", v);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Parser, InfersSortsAndHandlesPrecedence) {
  auto bip = bip_vocab();
  Formula f = parse_formula("forall x. exists y. G(x, y)", bip);
  EXPECT_EQ(f.bound().sort, 0u);
  EXPECT_EQ(f.child(0).bound().sort, 1u);
  auto v = graph_vocab();
  Formula g = parse_formula("P(x) | P(y) & P(z) -> P(x) <-> P(y)", v);
  EXPECT_EQ(g.kind(), Kind::Iff);
  EXPECT_EQ(g.child(0).kind(), Kind::Implies);
  EXPECT_EQ(g.child(0).child(0).kind(), Kind::Or);
  Formula h = parse_formula("P(x) -> P(y) -> P(z)", v);
  EXPECT_EQ(h.child(1).kind(), Kind::Implies);
  Formula q = parse_formula("P(x) & forall y. E(x,y) | P(y)", v);
  EXPECT_EQ(q.child(1).kind(), Kind::Forall);  // body extends right
  EXPECT_EQ(parse_formula(to_string(q), v), q);
  Formula n = parse_formula("x != y", v);
  EXPECT_EQ(n.kind(), Kind::Not);
}

TEST(Parser, RoundTripCorpus) {
  auto v = graph_vocab();
  const char* corpus[] = {
      "true",
      "false",
      "P(x)",
      "!P(x)",
      "!!P(x)",
      "!(x = y)",
      "(P(x) & P(y)) | P(z)",
      "P(x) & (P(y) | P(z))",
      "(P(x) -> P(y)) -> P(z)",
      "P(x) -> (P(y) -> P(z))",
      "(P(x) <-> P(y)) <-> P(z)",
      "P(x) <-> (P(y) <-> P(z))",
      "(forall x:V. P(x)) & P(y)",
      "!(forall x:V. P(x))",
      "forall x:V, y:V. (E(x,y) -> E(y,x))",
      "exists x. forall y. (E(x,y) | x = y)",
      "forall x. (P(x) & exists y. E(x,y))",
      "(exists x. P(x)) -> (exists y. P(y))",
      "forall x. exists x. P(x)",
  };
  for (const char* text : corpus) {
    Formula a = parse_formula(text, v);
    Formula b = parse_formula(to_string(a), v);
    EXPECT_EQ(a, b) << text << " printed as " << to_string(a);
    EXPECT_EQ(to_string(a), to_string(b));
  }
}

TEST(Parser, RandomRoundTrip) {
  auto v = graph_vocab();
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const std::string text = oracle::random_formula(rng, 3);
    Formula a = parse_formula(text, v);
    EXPECT_EQ(parse_formula(to_string(a), v), a) << text;
  }
}

TEST(Evaluate, Examples) {
  auto v = Vocabulary::make("Eq", {"V"}, {});
  EXPECT_TRUE(evaluate(parse_formula("forall x:V. x = x", v), FiniteStructure(v, {3})));
  EXPECT_TRUE(evaluate(parse_formula("forall x:V. x = x", v), FiniteStructure(v, {0})));

  auto u = unary_vocab();
  EXPECT_FALSE(evaluate(parse_formula("exists x:V. P(x)", u), FiniteStructure(u, {2})));

  auto bip = bip_vocab();
  FiniteStructure m(bip, {2, 1});
  m.set(0, {0, 0});
  EXPECT_FALSE(evaluate(parse_formula("forall x:P. exists y:Q. G(x,y)", bip), m));
}

TEST(Evaluate, EmptyUniverses) {
  auto u = unary_vocab();
  FiniteStructure empty(u, {0});
  EXPECT_TRUE(evaluate(parse_formula("forall x. P(x)", u), empty));
  EXPECT_FALSE(evaluate(parse_formula("exists x. x = x", u), empty));
}

TEST(Evaluate, EnvironmentChecks) {
  auto u = unary_vocab();
  FiniteStructure m(u, {2});
  m.set(0, {1});
  Formula f = parse_formula("P(x)", u);
  EXPECT_TRUE(evaluate(f, m, {{"x", 1}}));
  EXPECT_FALSE(evaluate(f, m, {{"x", 0}}));
  EXPECT_THROW(evaluate(f, m, {}), ValidationError);
  EXPECT_THROW(evaluate(f, m, {{"x", 2}}), ValidationError);
  EXPECT_THROW(evaluate(f, m, {{"x", 0}, {"y", 0}}), ValidationError);
}

TEST(Evaluate, AgreesWithNaiveOracleOnRandomFormulas) {
  auto v = graph_vocab();
  std::mt19937 rng(2024);
  auto structures = enumerate_structures(v, {2});
  auto threes = enumerate_structures(v, {3});
  for (int i = 0; i < 300; ++i) {
    Formula f = parse_formula(oracle::random_formula(rng, 3), v);
    ASSERT_LE(quantifier_rank(f), 3u);
    const auto& pool = (i % 2) ? structures : threes;
    for (int k = 0; k < 12; ++k) {
      const auto& m = pool[rng() % pool.size()];
      Assignment env;
      std::map<std::string, Element> oenv;
      for (const auto& var : f.free_variables()) {
        const Element e = rng() % m.size(0);
        env[var.name] = e;
        oenv[var.name] = e;
      }
      EXPECT_EQ(evaluate(f, m, env), oracle::satisfies(f, m, oenv)) << to_string(f);
      // compositionality of negation and conjunction
      Formula neg = Formula::negation(f);
      EXPECT_EQ(evaluate(neg, m, env), !evaluate(f, m, env));
      Formula both = Formula::conjunction(f, neg);
      EXPECT_FALSE(evaluate(both, m, env));
      Formula either = Formula::disjunction(f, neg);
      EXPECT_TRUE(evaluate(either, m, env));
    }
  }
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_structures(unary_vocab(), {2}).size(), 4u);
  EXPECT_EQ(enumerate_structures(binary_vocab(), {2}).size(), 16u);
  auto irreflexive = parse_formula("forall x. !R(x,x)", binary_vocab());
  std::size_t n = 0;
  for (const auto& m : enumerate_structures(binary_vocab(), {3})) {
    if (evaluate(irreflexive, m)) ++n;
  }
  EXPECT_EQ(n, 64u);
}

TEST(Enumerate, CompletenessAndCanonicalOrder) {
  auto v = graph_vocab();
  for (std::size_t k = 0; k <= 2; ++k) {
    auto all = enumerate_structures(v, {k});
    EXPECT_EQ(all.size(), std::size_t{1} << (k + k * k));
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_TRUE(canonical_compare(all[i - 1], all[i]) < 0);
  }
  auto bip = bip_vocab();
  auto all = enumerate_structures(bip, {2, 1});
  ASSERT_EQ(all.size(), 4u);
  EXPECT_TRUE(all[1].holds(0, std::vector<Element>{0, 0}));  // tuple 0 is the low bit
  EXPECT_FALSE(all[1].holds(0, std::vector<Element>{1, 0}));
}

TEST(Enumerate, ResourceCeiling) {
  Budget small(10);
  EXPECT_THROW(enumerate_structures(binary_vocab(), {2}, small), ResourceLimitError);
  EXPECT_THROW(structure_count(*binary_vocab(), {8}), ResourceLimitError);
}

TEST(ModelsOf, Examples) {
  auto u = unary_vocab();
  EXPECT_EQ(models_of(Theory::empty(u), {1}).size(), 2u);
  Theory all_p("allP", u, {{"all", parse_formula("forall x. P(x)", u)}});
  EXPECT_EQ(models_of(all_p, {2}).size(), 1u);
  auto b = binary_vocab();
  Theory irr("irr", b, {{"irreflexive", parse_formula("forall x. !R(x,x)", b)}});
  EXPECT_EQ(models_of(irr, {2}).size(), 4u);
  EXPECT_THROW(Theory("bad", u, {{"open", parse_formula("P(x)", u)}}), ValidationError);
}

TEST(Isomorphism, Examples) {
  auto eq = Vocabulary::make("Eq", {"V"}, {});
  FiniteStructure m(eq, {3});
  EXPECT_EQ(find_isomorphisms(m, m).size(), 6u);

  auto u = unary_vocab();
  FiniteStructure a(u, {2}), b(u, {2});
  a.set(0, {0});
  b.set(0, {1});
  auto isos = find_isomorphisms(a, b);
  ASSERT_EQ(isos.size(), 1u);
  EXPECT_EQ(*isos[0].maps[0], (Permutation{1, 0}));

  auto bin = binary_vocab();
  FiniteStructure cyc(bin, {3});
  cyc.set(0, {0, 1});
  cyc.set(0, {1, 2});
  cyc.set(0, {2, 0});
  EXPECT_EQ(find_isomorphisms(cyc, cyc).size(), 3u);
  EXPECT_EQ(oracle::brute_isomorphisms(cyc, cyc).size(), 3u);

  EXPECT_TRUE(find_isomorphisms(FiniteStructure(u, {2}), FiniteStructure(u, {3})).empty());
}

TEST(Isomorphism, MatchesBruteForceExhaustively) {
  auto bip = bip_vocab();
  auto all = enumerate_structures(bip, {2, 2});
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); j += 3) {
      const auto fast = find_isomorphisms(all[i], all[j]);
      const auto slow = oracle::brute_isomorphisms(all[i], all[j]);
      ASSERT_EQ(fast.size(), slow.size());
      for (std::size_t k = 0; k < fast.size(); ++k) {
        EXPECT_EQ(*fast[k].maps[0], slow[k][0]);
        EXPECT_EQ(*fast[k].maps[1], slow[k][1]);
        EXPECT_TRUE(is_isomorphism(all[i], all[j], fast[k]));
      }
    }
  }
}

TEST(Isomorphism, SentencesAreInvariant) {
  auto v = graph_vocab();
  std::mt19937 rng(99);
  std::vector<Formula> sentences;
  while (sentences.size() < 25) {
    Formula f = parse_formula(oracle::random_formula(rng, 3), v);
    if (f.is_sentence()) sentences.push_back(f);
  }
  for (std::size_t k = 0; k <= 3; ++k) {
    auto all = enumerate_structures(v, {k});
    for (std::size_t i = 0; i < all.size(); i += (k == 3 ? 7 : 1)) {
      const auto& m = all[i];
      for (const auto& f : all_bijections(m.sizes(), {true})) {
        const FiniteStructure n = m.image(f);
        ASSERT_TRUE(is_isomorphism(m, n, f));
        for (const auto& s : sentences) EXPECT_EQ(evaluate(s, m), evaluate(s, n));
      }
    }
  }
}

TEST(Isomorphism, PinnedSearch) {
  auto eq = Vocabulary::make("Eq", {"V"}, {});
  FiniteStructure m(eq, {3});
  IsoOptions opt;
  opt.pinned = {{std::nullopt, Element{2}, std::nullopt}};
  Budget budget;
  auto isos = find_isomorphisms(m, m, budget, opt);
  EXPECT_EQ(isos.size(), 2u);
  for (const auto& f : isos) EXPECT_EQ((*f.maps[0])[1], 2u);
}

TEST(QuantifierRank, Examples) {
  auto v = graph_vocab();
  EXPECT_EQ(quantifier_rank(parse_formula("E(x,y)", v)), 0u);
  EXPECT_EQ(quantifier_rank(parse_formula("forall x. exists y. E(x,y)", v)), 2u);
  EXPECT_EQ(quantifier_rank(parse_formula("forall x. (P(x) & exists y. E(x,y))", v)), 2u);
}

TEST(Formula, CaptureAvoidingRename) {
  auto v = graph_vocab();
  Formula f = parse_formula("exists y. E(x, y)", v);
  Formula g = rename_free(f, Variable{"x", 0, false}, Variable{"y", 0, false});
  EXPECT_EQ(g.free_variables().size(), 1u);
  EXPECT_EQ(g.free_variables()[0].name, "y");
  FiniteStructure m(v, {2});
  m.set(1, {1, 0});
  EXPECT_TRUE(evaluate(g, m, {{"y", 1}}));
  EXPECT_FALSE(evaluate(g, m, {{"y", 0}}));
}

TEST(Partitioned, Notations) {
  auto bip = bip_vocab();
  auto a = parse_partitioned("G(x : y)", bip);
  ASSERT_EQ(a.blocks.size(), 2u);
  EXPECT_EQ(a.blocks[0][0].name, "y");  // members
  EXPECT_EQ(a.blocks[1][0].name, "x");  // parameter
  auto b = parse_partitioned("[y : x] G(x, y)", bip);
  EXPECT_EQ(b.formula, a.formula);
  EXPECT_EQ(b.blocks[0], a.blocks[0]);
  auto c = parse_partitioned(to_string(b), bip);
  EXPECT_EQ(c.formula, b.formula);
  EXPECT_EQ(c.blocks, b.blocks);
  EXPECT_THROW(parse_partitioned("[y : x] G(x, z)", bip), SortError);
  EXPECT_THROW(parse_partitioned("G(x : y) & G(x, y)", bip), ParseError);
  EXPECT_THROW(parse_formula("G(x : y)", bip), ParseError);
  auto d = parse_partitioned("G(x, y)", bip);
  EXPECT_EQ(d.blocks.size(), 1u);
}

TEST(Parser, PairAndTripleModes) {
  auto bip = bip_vocab();
  Formula p = parse_pair_formula("forall x, y. (G(x,y) <-> G'(x,y))", bip);
  EXPECT_TRUE(uses_primes(p));
  EXPECT_THROW(parse_formula("G'(x,y)", bip), SortError);
  // Q decoupled: primed atoms need primed Q variables
  Formula d = parse_pair_formula("forall x:P. forall y:Q'. G'(x, y)", bip, {true, false});
  EXPECT_TRUE(d.child(0).bound().primed);
  EXPECT_THROW(parse_pair_formula("forall x:P. forall y:Q. G'(x, y)", bip, {true, false}), SortError);
  EXPECT_THROW(parse_pair_formula("forall x:P'. true", bip, {true, false}), SortError);
  Formula t = parse_triple_formula("forall x:P. exists y:P'. @f(x, y)", bip);
  EXPECT_TRUE(uses_links(t));
  EXPECT_THROW(parse_triple_formula("forall x:P. exists y:P'. x = y", bip), ValidationError);
  EXPECT_THROW(parse_triple_formula("forall x:Q. exists y:Q'. @f(x, y)", bip, {true, false}), ValidationError);
  EXPECT_THROW(parse_pair_formula("@f(x, y)", bip), SortError);
}

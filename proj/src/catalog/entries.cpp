#include <map>

#include "merlab/catalog/catalog.hpp"
#include "merlab/error.hpp"
#include "merlab/logic/parser.hpp"

namespace merlab::catalog {

using logic::Vocabulary;
using pair::CoupledSignature;

Formula identity_sentence(const VocabularyPtr& vocab, const std::vector<bool>& coupled) {
  Formula out = Formula::truth(vocab);
  bool first = true;
  for (const auto& rel : vocab->relations()) {
    std::string vars, args;
    for (std::size_t i = 0; i < rel.profile.size(); ++i) {
      const std::string x = "x" + std::to_string(i);
      vars += (i ? ", " : "") + x + ":" + vocab->sort_name(rel.profile[i]);
      args += (i ? ", " : "") + x;
    }
    const std::string body = rel.name + "(" + args + ") <-> " + rel.name + "'(" + args + ")";
    auto part = logic::parse_pair_formula(vars.empty() ? body : "forall " + vars + ". " + body, vocab, coupled);
    out = first ? part : Formula::conjunction(out, part);
    first = false;
  }
  return out;
}

VocabularyPtr bipartite_vocabulary() { return Vocabulary::make("Bipartite", {"P", "Q"}, {{"G", {"P", "Q"}}}); }

VocabularyPtr graph_vocabulary() { return Vocabulary::make("Graph", {"A"}, {{"R", {"A", "A"}}}); }

namespace {

VocabularyPtr digraph() { return Vocabulary::make("Digraph", {"V"}, {{"E", {"V", "V"}}}); }

Theory axioms(const std::string& name, const VocabularyPtr& v,
              const std::vector<std::pair<std::string, std::string>>& texts) {
  std::vector<std::pair<std::string, Formula>> ax;
  for (const auto& [label, text] : texts) ax.emplace_back(label, logic::parse_formula(text, v));
  return Theory(name, v, std::move(ax));
}

VocabularyPtr tower_vocabulary(std::size_t n) {
  std::vector<std::string> sorts;
  std::vector<Vocabulary::RelationDecl> rels;
  for (std::size_t i = 0; i <= n; ++i) sorts.push_back("P" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) rels.push_back({"E" + std::to_string(i), {sorts[i - 1], sorts[i]}});
  return Vocabulary::make("Layered" + std::to_string(n), sorts, rels);
}

// Level 1: the P0-neighbourhoods of P1. Level 2: for each element of P2,
// the level-1 imaginaries of its P1-neighbours.
std::vector<std::string> tower_levels(std::size_t n) {
  std::vector<std::string> out{"[x : y] E1(x, y)"};
  if (n >= 2) out.push_back("[o : z] exists y:P1. E2(y, z) & (forall x:P0. C_F(o, x) <-> E1(x, y))");
  return out;
}

MerSpec tower_mer(const std::string& id, std::size_t n) {
  auto v = tower_vocabulary(n);
  return mer::by_tower(id, reduct::FamilyTower::parse(CoupledSignature::of(v, {"P0"}), tower_levels(n)));
}

std::map<std::string, CatalogEntry> build() {
  std::map<std::string, CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.emplace(e.id, std::move(e)); };

  auto dg = digraph();
  auto dg_sig = CoupledSignature::all(dg);
  add({"identity", dg, Theory::empty(dg), mer::by_sentence("identity", dg_sig, identity_sentence(dg, dg_sig.coupled)),
       "Equality of every relation: the finest MER; its groupoid is the isomorphisms.", Scale::uniform(*dg, 3)});
  add({"trivial", dg, Theory::empty(dg),
       mer::by_sentence("trivial", dg_sig, logic::parse_pair_formula("true", dg, dg_sig.coupled)),
       "Every pair on shared universes is related: the coarsest MER; its groupoid is all bijections.",
       Scale::uniform(*dg, 3)});
  add({"has-successor", dg, Theory::empty(dg),
       mer::by_reduct("has-successor", dg_sig, {logic::parse_formula("exists y:V. E(x, y)", dg)}),
       "Reduct MER: agreement on the set of vertices with an out-edge.", Scale::uniform(*dg, 3)});

  auto bip = bipartite_vocabulary();
  auto bip_sig = CoupledSignature::all(bip);
  add({"adj-sets", bip, Theory::empty(bip),
       mer::by_tower("adj-sets", reduct::FamilyTower::parse(bip_sig, {"G(x : y)"})),
       "Same set of adjacency sets {G(c, -) : c in P}: a 1-level family tower over coupled P and Q.",
       Scale::uniform(*bip, 3)});
  add({"adj-sets-sentence", bip, Theory::empty(bip),
       mer::by_sentence("adj-sets-sentence", bip_sig,
                        logic::parse_pair_formula("(forall x:P. exists x_:P. forall y:Q. G(x, y) <-> G'(x_, y)) & "
                                                  "(forall x_:P. exists x:P. forall y:Q. G(x, y) <-> G'(x_, y))",
                                                  bip, bip_sig.coupled)),
       "The adjacency-set MER as a single Pi3 pair sentence.", Scale::uniform(*bip, 3)});

  for (std::size_t n : {1, 2}) {
    const std::string id = "tn-" + std::to_string(n);
    auto v = tower_vocabulary(n);
    add({id, v, Theory::empty(v), tower_mer(id, n),
         "Layered multi-bipartite structures P0 -E1- P1 ... -E" + std::to_string(n) + "- P" + std::to_string(n) +
             " with P0 coupled and the upper layers decoupled; related iff every level of the neighbourhood tower "
             "agrees.",
         n == 1 ? Scale::uniform(*v, 3) : Scale::uniform(*v, 2)});
  }

  auto cof = Vocabulary::make("Cofinal", {"P", "P1"}, {{"Le", {"P", "P"}}, {"Gamma", {"P", "P1"}}});
  add({"cofinal", cof,
       axioms("partial-order", cof,
              {{"reflexive", "forall x:P. Le(x, x)"},
               {"antisymmetric", "forall x:P, y:P. Le(x, y) & Le(y, x) -> x = y"},
               {"transitive", "forall x:P, y:P, z:P. Le(x, y) & Le(y, z) -> Le(x, z)"}}),
       mer::cofinal_mer("cofinal", CoupledSignature::of(cof, {"P"}), reduct::OrderSpec::parse("Le(x, y)", cof, 2),
                        reduct::PartitionedFormula::parse("[a : b] Gamma(a, b)", cof)),
       "Mutual cofinality: equal orders on P, and each family {a : Gamma(a, b)} of one side is dominated by one of "
       "the other, in both directions.",
       Scale{{3, 2}, {}}});

  auto eq = Vocabulary::make("Pairing", {"V"}, {{"R", {"V", "V"}}});
  auto eq_sig = CoupledSignature::all(eq);
  add({"eqrel-size-2", eq,
       axioms("eqrel-size-2", eq,
              {{"reflexive", "forall x:V. R(x, x)"},
               {"symmetric", "forall x:V, y:V. R(x, y) -> R(y, x)"},
               {"transitive", "forall x:V, y:V, z:V. R(x, y) & R(y, z) -> R(x, z)"},
               {"at least two", "forall x:V. exists y:V. !(x = y) & R(x, y)"},
               {"at most two", "forall x:V, y:V, z:V. R(x, y) & R(x, z) -> x = y | x = z | y = z"}}),
       mer::by_sentence("eqrel-size-2", eq_sig, identity_sentence(eq, eq_sig.coupled)),
       "Equivalence relations whose classes all have size 2, under the identity MER.", Scale::uniform(*eq, 4)});

  auto un = Vocabulary::make("Unary", {"V"}, {{"P", {"V"}}});
  add({"approx-discrete", un, Theory::empty(un),
       mer::by_approx("approx-discrete", CoupledSignature::all(un),
                      {logic::parse_formula("P(x)", un), logic::parse_formula("!P(x)", un)}, mer::Metric::discrete(2),
                      mer::Rational(1)),
       "Labels P(x) and !P(x) sent to a two-point discrete metric with eps = 1: the reduct MER of P.",
       Scale::uniform(*un, 3)});
  return out;
}

const std::map<std::string, CatalogEntry>& entries() {
  static const std::map<std::string, CatalogEntry> all = build();
  return all;
}

}  // namespace

const CatalogEntry& catalog_get(const std::string& id) {
  auto it = entries().find(id);
  if (it == entries().end()) throw ValidationError("unknown catalog entry '" + id + "'");
  return it->second;
}

std::vector<std::string> catalog_list() {
  std::vector<std::string> ids;
  for (const auto& [id, e] : entries()) ids.push_back(id);
  return ids;
}

}  // namespace merlab::catalog

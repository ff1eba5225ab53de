#include "merlab/pair/pair.hpp"

#include <set>

#include "merlab/error.hpp"

namespace merlab::pair {

using logic::Kind;
using logic::Node;
using logic::NodePtr;
using logic::Variable;

CoupledSignature CoupledSignature::all(VocabularyPtr vocab) {
  const std::size_t n = vocab->sort_count();
  return CoupledSignature{std::move(vocab), std::vector<bool>(n, true)};
}

CoupledSignature CoupledSignature::of(VocabularyPtr vocab, const std::vector<std::string>& sort_names) {
  std::vector<bool> mask(vocab->sort_count(), false);
  for (const auto& s : sort_names) {
    const SortId id = vocab->sort_id(s);
    if (mask[id]) throw ValidationError("sort '" + s + "' listed twice in the coupling");
    mask[id] = true;
  }
  return CoupledSignature{std::move(vocab), std::move(mask)};
}

bool CoupledSignature::all_coupled() const {
  for (bool c : coupled) {
    if (!c) return false;
  }
  return true;
}

std::vector<std::string> CoupledSignature::coupled_names() const {
  std::vector<std::string> out;
  for (SortId s = 0; s < coupled.size(); ++s) {
    if (coupled[s]) out.push_back(vocab->sort_name(s));
  }
  return out;
}

bool CoupledSignature::shares_coupled(const FiniteStructure& m, const FiniteStructure& n) const {
  for (SortId s = 0; s < coupled.size(); ++s) {
    if (coupled[s] && m.size(s) != n.size(s)) return false;
  }
  return true;
}

DoubleStructure make_double(const FiniteStructure& m, const FiniteStructure& n, const CoupledSignature& sig) {
  if (!(m.vocabulary() == *sig.vocab) || !(n.vocabulary() == *sig.vocab)) {
    throw SortError("double structure over a different vocabulary");
  }
  for (SortId s = 0; s < sig.coupled.size(); ++s) {
    if (sig.coupled[s] && m.size(s) != n.size(s)) {
      throw ValidationError("coupled sort '" + sig.vocab->sort_name(s) + "' has universe sizes " +
                            std::to_string(m.size(s)) + " and " + std::to_string(n.size(s)));
    }
  }
  return DoubleStructure{m, n, sig};
}

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr prime_node(const Node& n, const CoupledSignature& sig) {
  Node copy = n;
  auto move_var = [&](Variable& v) {
    if (!sig.is_coupled(v.sort)) v.primed = true;
  };
  if (n.kind == Kind::Atom) copy.primed = true;
  for (auto& v : copy.args) move_var(v);
  if (n.kind == Kind::Forall || n.kind == Kind::Exists) move_var(copy.bound);
  for (auto& c : copy.children) c = prime_node(*c, sig);
  return make(std::move(copy));
}

}  // namespace

Formula prime_translate(const Formula& phi, const CoupledSignature& sig) {
  if (!(phi.vocabulary() == *sig.vocab)) throw SortError("formula over a different vocabulary");
  logic::validate_language(phi, logic::Syntax::base());
  return Formula(phi.vocabulary_ptr(), prime_node(phi.node(), sig));
}

bool evaluate_pair(const Formula& psi, const DoubleStructure& d, const Assignment& env) {
  if (!(psi.vocabulary() == *d.sig.vocab)) throw SortError("pair formula over a different vocabulary");
  logic::validate_language(psi, d.sig.pair_syntax());
  logic::CompiledFormula c(psi);
  auto values = logic::bind_assignment(c.free_order(), env, d.left, d.right);
  return c.eval(logic::EvalContext::pair(d.left, d.right), values);
}

FiniteStructure transport(const FiniteStructure& m, const BijectionFamily& f) { return m.image(f); }

TripleStructure make_triple(const FiniteStructure& m, const FiniteStructure& n, const BijectionFamily& link,
                            const CoupledSignature& sig) {
  if (!(m.vocabulary() == *sig.vocab) || !(n.vocabulary() == *sig.vocab)) {
    throw SortError("triple structure over a different vocabulary");
  }
  if (link.maps.size() != sig.coupled.size()) throw ValidationError("link has the wrong number of sorts");
  TripleStructure t{m, n, {}, sig};
  for (SortId s = 0; s < sig.coupled.size(); ++s) {
    if (!sig.coupled[s]) {
      t.link.emplace_back();
      continue;
    }
    if (m.size(s) != n.size(s)) {
      throw ValidationError("no bijection between the universes of coupled sort '" + sig.vocab->sort_name(s) + "'");
    }
    if (link.maps[s] && !logic::is_permutation_of(*link.maps[s], m.size(s))) {
      throw ValidationError("link on sort '" + sig.vocab->sort_name(s) + "' is not a bijection");
    }
    t.link.push_back(link.maps[s]);
  }
  return t;
}

bool evaluate_triple(const Formula& psi, const TripleStructure& t, const Assignment& env) {
  if (!(psi.vocabulary() == *t.sig.vocab)) throw SortError("triple formula over a different vocabulary");
  logic::validate_language(psi, t.sig.triple_syntax());
  logic::CompiledFormula c(psi);
  auto values = logic::bind_assignment(c.free_order(), env, t.left, t.right);
  logic::EvalContext ctx = logic::EvalContext::pair(t.left, t.right);
  ctx.link = &t.link;
  return c.eval(ctx, values);
}

namespace {

class Relativizer {
 public:
  Relativizer(const Formula& psi, const CoupledSignature& sig) : sig_(sig), vocab_(psi.vocabulary_ptr()) {
    for (const auto& n : logic::all_variable_names(psi)) taken_.insert(n);
  }

  Formula run(const Node& n) {
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Equal:
        return Formula(vocab_, make(Node(n)));
      case Kind::Link:
        throw SortError("pair formulas contain no link atoms");
      case Kind::Atom: {
        if (!n.primed) return Formula(vocab_, make(Node(n)));
        std::vector<Variable> args = n.args;
        std::vector<Formula> links;
        std::vector<Variable> fresh;
        for (auto& a : args) {
          if (!sig_.is_coupled(a.sort)) continue;  // already a primed decoupled variable
          Variable y{fresh_name(a.name), a.sort, true};
          links.push_back(Formula::link(vocab_, a, y));
          fresh.push_back(y);
          a = y;
        }
        Formula body = Formula::atom(vocab_, n.relation, args, true);
        if (fresh.empty()) return body;
        links.push_back(body);
        Formula out = Formula::conjunction(vocab_, links);
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) out = Formula::exists(*it, out);
        return out;
      }
      case Kind::Not: return Formula::negation(run(*n.children[0]));
      case Kind::And: return Formula::conjunction(run(*n.children[0]), run(*n.children[1]));
      case Kind::Or: return Formula::disjunction(run(*n.children[0]), run(*n.children[1]));
      case Kind::Implies: return Formula::implication(run(*n.children[0]), run(*n.children[1]));
      case Kind::Iff: return Formula::biconditional(run(*n.children[0]), run(*n.children[1]));
      case Kind::Forall: return Formula::forall(n.bound, run(*n.children[0]));
      case Kind::Exists: return Formula::exists(n.bound, run(*n.children[0]));
    }
    throw Error("unreachable formula kind");
  }

 private:
  std::string fresh_name(const std::string& base) {
    std::string name = base + "'";
    while (taken_.count(name)) name += "'";
    taken_.insert(name);
    return name;
  }

  const CoupledSignature& sig_;
  VocabularyPtr vocab_;
  std::set<std::string> taken_;
};

}  // namespace

Formula relativize_to_triple(const Formula& psi, const CoupledSignature& sig) {
  if (!(psi.vocabulary() == *sig.vocab)) throw SortError("formula over a different vocabulary");
  logic::validate_language(psi, sig.pair_syntax());
  Relativizer r(psi, sig);
  return r.run(psi.node());
}

}  // namespace merlab::pair

#include <algorithm>
#include <set>
#include <sstream>

#include "merlab/error.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::reduct {

PartitionedFormula::PartitionedFormula(Formula formula, std::vector<std::vector<Variable>> blocks)
    : formula_(std::move(formula)), blocks_(std::move(blocks)) {
  logic::validate_language(formula_, logic::Syntax::base());
  if (blocks_.empty()) throw ValidationError("a partitioned formula needs at least one block");
  std::set<std::string> seen;
  for (const auto& b : blocks_) {
    if (b.empty()) throw ValidationError("empty block in partitioned formula");
    for (const auto& v : b) {
      if (v.primed) throw ValidationError("partitioned formulas are base-language formulas");
      if (v.sort >= formula_.vocabulary().sort_count()) throw SortError("block variable of unknown sort");
      if (!seen.insert(v.name).second) throw ValidationError("variable '" + v.name + "' appears in two blocks");
    }
  }
  for (const auto& v : formula_.free_variables()) {
    if (!seen.count(v.name)) throw ValidationError("free variable '" + v.name + "' is not assigned to any block");
    for (const auto& b : blocks_) {
      for (const auto& w : b) {
        if (w.name == v.name && w.sort != v.sort) {
          throw SortError("block variable '" + v.name + "' has a different sort than in the formula");
        }
      }
    }
  }
}

PartitionedFormula PartitionedFormula::parse(std::string_view text, const VocabularyPtr& vocab) {
  auto tree = logic::parse_partitioned(text, vocab);
  if (tree.blocks.empty()) throw ValidationError("a partitioned formula needs free variables");
  return PartitionedFormula(tree.formula, tree.blocks);
}

std::vector<SortId> PartitionedFormula::member_sorts() const {
  std::vector<SortId> out;
  for (const auto& v : members()) out.push_back(v.sort);
  return out;
}

void PartitionedFormula::require_coupled_members(const std::vector<bool>& coupled) const {
  for (const auto& v : members()) {
    if (!coupled.at(v.sort)) {
      throw ValidationError("member variable '" + v.name + "' lies on decoupled sort '" +
                            formula_.vocabulary().sort_name(v.sort) + "'");
    }
  }
}

std::string to_string(const PartitionedFormula& pf) {
  return logic::to_string(logic::PartitionedSyntaxTree{pf.formula(), pf.blocks()});
}

void NSetValue::canonicalize() {
  if (depth == 1) {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  } else {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
}

std::strong_ordering operator<=>(const NSetValue& a, const NSetValue& b) {
  if (auto c = a.depth <=> b.depth; c != 0) return c;
  if (a.depth == 1) {
    return std::lexicographical_compare_three_way(a.tuples.begin(), a.tuples.end(), b.tuples.begin(),
                                                  b.tuples.end());
  }
  return std::lexicographical_compare_three_way(a.members.begin(), a.members.end(), b.members.begin(),
                                                b.members.end());
}

namespace {

void render(std::ostream& os, const NSetValue& v) {
  os << "{";
  if (v.depth == 1) {
    for (std::size_t i = 0; i < v.tuples.size(); ++i) {
      if (i) os << ",";
      const Tuple& t = v.tuples[i];
      if (t.size() == 1) {
        os << t[0];
        continue;
      }
      os << "(";
      for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
      os << ")";
    }
  } else {
    for (std::size_t i = 0; i < v.members.size(); ++i) {
      if (i) os << ",";
      render(os, v.members[i]);
    }
  }
  os << "}";
}

struct NSetEvaluator {
  const FiniteStructure& m;
  const PartitionedFormula& pf;
  Budget& budget;
  logic::CompiledFormula compiled;
  std::vector<std::size_t> offset;
  std::vector<std::vector<Tuple>> domain;
  std::vector<Element> slots;

  NSetEvaluator(const FiniteStructure& m_, const PartitionedFormula& pf_, Budget& budget_)
      : m(m_), pf(pf_), budget(budget_) {
    std::vector<Variable> order;
    for (const auto& b : pf.blocks()) {
      offset.push_back(order.size());
      std::vector<std::size_t> dims;
      for (const auto& v : b) {
        order.push_back(v);
        dims.push_back(m.size(v.sort));
      }
      domain.push_back(logic::all_tuples(dims));
    }
    compiled = logic::CompiledFormula(pf.formula(), order);
    slots.assign(order.size(), 0);
  }

  void place(std::size_t block, const Tuple& t) { std::copy(t.begin(), t.end(), slots.begin() + offset[block]); }

  NSetValue run(std::size_t block) {
    NSetValue out;
    out.depth = block + 1;
    const auto ctx = logic::EvalContext::single(m);
    if (block == 0) {
      budget.charge(domain[0].size() + 1, "n-set evaluation");
      for (const auto& t : domain[0]) {
        place(0, t);
        if (compiled.eval(ctx, slots)) out.tuples.push_back(t);
      }
    } else {
      for (const auto& t : domain[block]) {
        place(block, t);
        out.members.push_back(run(block - 1));
      }
    }
    out.canonicalize();
    return out;
  }
};

}  // namespace

std::string to_string(const NSetValue& v) {
  std::ostringstream os;
  render(os, v);
  return os.str();
}

NSetValue nset_value(const FiniteStructure& m, const PartitionedFormula& pf, Budget& budget) {
  if (!(m.vocabulary() == pf.formula().vocabulary())) throw SortError("structure and formula vocabularies differ");
  NSetEvaluator ev(m, pf, budget);
  std::uint64_t planned = 1;
  for (const auto& d : ev.domain) planned = planned * std::max<std::uint64_t>(d.size(), 1);
  budget.require(planned, "n-set evaluation");
  return ev.run(pf.block_count() - 1);
}

NSetValue nset_value(const FiniteStructure& m, const PartitionedFormula& pf) {
  Budget budget;
  return nset_value(m, pf, budget);
}

bool nset_equal(const NSetValue& a, const NSetValue& b) {
  if (a.depth != b.depth) {
    throw ValidationError("cannot compare n-sets of depth " + std::to_string(a.depth) + " and " +
                          std::to_string(b.depth));
  }
  return a == b;
}

bool BaseOrder::is_partial_order() const {
  const std::size_t n = le.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (le[a].size() != n || !le[a][a]) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && le[a][b] && le[b][a]) return false;
      for (std::size_t c = 0; c < n; ++c) {
        if (le[a][b] && le[b][c] && !le[a][c]) return false;
      }
    }
  }
  return true;
}

namespace {

bool leq_rec(const NSetValue& a, const NSetValue& b, const BaseOrder& base) {
  if (a.depth == 1) {
    for (const auto& u : a.tuples) {
      bool found = false;
      for (const auto& v : b.tuples) {
        if (u.size() != 1 || v.size() != 1) throw ValidationError("the base order compares single elements");
        if (base(u[0], v[0])) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }
  for (const auto& u : a.members) {
    bool found = false;
    for (const auto& v : b.members) {
      if (leq_rec(u, v, base)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool nset_leq(const NSetValue& a, const NSetValue& b, const BaseOrder& base, std::size_t k) {
  if (a.depth != k || b.depth != k) {
    throw ValidationError("n-set depths " + std::to_string(a.depth) + " and " + std::to_string(b.depth) +
                          " do not match the order depth " + std::to_string(k));
  }
  return leq_rec(a, b, base);
}

Formula same_nset_sentence(const PartitionedFormula& pf, const pair::CoupledSignature& sig) {
  const auto& vocab = pf.vocabulary_ptr();
  if (!(*vocab == *sig.vocab)) throw SortError("family and coupling use different vocabularies");
  pf.require_coupled_members(sig.coupled);

  std::set<std::string> taken;
  for (const auto& n : logic::all_variable_names(pf.formula())) taken.insert(n);
  for (const auto& b : pf.blocks()) {
    for (const auto& v : b) taken.insert(v.name);
  }

  // Right-hand copies of every parameter; members stay shared.
  const auto& blocks = pf.blocks();
  std::vector<std::vector<Variable>> left(blocks.size()), right(blocks.size());
  Formula primed = pair::prime_translate(pf.formula(), sig);
  left[0] = blocks[0];
  right[0] = blocks[0];
  for (std::size_t j = 1; j < blocks.size(); ++j) {
    for (const auto& v : blocks[j]) {
      std::string name = v.name + "_";
      while (taken.count(name)) name += "_";
      taken.insert(name);
      const bool moved = !sig.is_coupled(v.sort);
      Variable l = v;
      Variable r{name, v.sort, moved};
      primed = logic::rename_free(primed, Variable{v.name, v.sort, moved}, r);
      left[j].push_back(l);
      right[j].push_back(r);
    }
  }

  auto forall_all = [](const std::vector<Variable>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = Formula::forall(*it, body);
    return body;
  };
  auto exists_all = [](const std::vector<Variable>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = Formula::exists(*it, body);
    return body;
  };

  Formula same = forall_all(blocks[0], Formula::biconditional(pf.formula(), primed));
  for (std::size_t j = 1; j < blocks.size(); ++j) {
    Formula there = forall_all(left[j], exists_all(right[j], same));
    Formula back = forall_all(right[j], exists_all(left[j], same));
    same = Formula::conjunction(there, back);
  }
  return same;
}

}  // namespace merlab::reduct

#include "merlab/logic/eval.hpp"

#include <algorithm>

#include "merlab/error.hpp"

namespace merlab::logic {

CompiledFormula::CompiledFormula(const Formula& f, std::vector<Variable> free_order) : free_(std::move(free_order)) {
  std::vector<std::pair<std::string, std::uint32_t>> scope;
  for (std::uint32_t i = 0; i < free_.size(); ++i) {
    for (std::uint32_t j = 0; j < i; ++j) {
      if (free_[j].name == free_[i].name) throw ValidationError("variable '" + free_[i].name + "' listed twice");
    }
    scope.emplace_back(free_[i].name, i);
  }
  slot_count_ = static_cast<std::uint32_t>(free_.size());
  for (const auto& v : f.free_variables()) {
    auto it = std::find_if(free_.begin(), free_.end(), [&](const Variable& w) { return w.name == v.name; });
    if (it == free_.end()) throw ValidationError("free variable '" + v.name + "' has no slot");
    if (it->sort != v.sort || it->primed != v.primed) throw SortError("free variable '" + v.name + "' has a conflicting sort");
  }
  root_ = compile(f.node(), scope);
}

std::uint32_t CompiledFormula::compile(const Node& n, std::vector<std::pair<std::string, std::uint32_t>>& scope) {
  auto lookup = [&](const std::string& name) -> std::uint32_t {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw ValidationError("variable '" + name + "' is not in scope");
  };
  Op op;
  op.kind = n.kind;
  op.relation = n.relation;
  op.primed = n.primed;
  for (const auto& a : n.args) op.slots.push_back(lookup(a.name));
  if (n.kind == Kind::Link) op.sort = n.args[0].sort;
  if (n.kind == Kind::Forall || n.kind == Kind::Exists) {
    op.bound = slot_count_++;
    op.sort = n.bound.sort;
    op.side = n.bound.primed;
    scope.emplace_back(n.bound.name, op.bound);
    op.kids.push_back(compile(*n.children[0], scope));
    scope.pop_back();
  } else {
    for (const auto& c : n.children) op.kids.push_back(compile(*c, scope));
  }
  ops_.push_back(std::move(op));
  return static_cast<std::uint32_t>(ops_.size() - 1);
}

bool CompiledFormula::run(std::uint32_t index, const EvalContext& ctx, Element* slots) const {
  const Op& op = ops_[index];
  switch (op.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      const FiniteStructure& m = *ctx.side[op.primed ? 1 : 0];
      const auto& strides = m.strides(op.relation);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < op.slots.size(); ++i) idx += slots[op.slots[i]] * strides[i];
      return m.holds_index(op.relation, idx);
    }
    case Kind::Equal: return slots[op.slots[0]] == slots[op.slots[1]];
    case Kind::Link: {
      if (!ctx.link) throw ValidationError("link atom evaluated without a link");
      const auto& map = ctx.link->at(op.sort);
      const Element a = slots[op.slots[0]];
      const Element b = slots[op.slots[1]];
      return (map ? (*map)[a] : a) == b;
    }
    case Kind::Not: return !run(op.kids[0], ctx, slots);
    case Kind::And: return run(op.kids[0], ctx, slots) && run(op.kids[1], ctx, slots);
    case Kind::Or: return run(op.kids[0], ctx, slots) || run(op.kids[1], ctx, slots);
    case Kind::Implies: return !run(op.kids[0], ctx, slots) || run(op.kids[1], ctx, slots);
    case Kind::Iff: return run(op.kids[0], ctx, slots) == run(op.kids[1], ctx, slots);
    case Kind::Forall:
    case Kind::Exists: {
      const std::size_t n = ctx.side[op.side ? 1 : 0]->size(op.sort);
      const bool want = op.kind == Kind::Exists;
      for (Element e = 0; e < n; ++e) {
        slots[op.bound] = e;
        if (run(op.kids[0], ctx, slots) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

bool CompiledFormula::eval(const EvalContext& ctx, std::span<const Element> free_values) const {
  if (free_values.size() != free_.size()) throw ValidationError("wrong number of free-variable values");
  Element small[32];
  std::vector<Element> big;
  Element* slots = small;
  if (slot_count_ > 32) {
    big.resize(slot_count_);
    slots = big.data();
  }
  std::copy(free_values.begin(), free_values.end(), slots);
  return run(root_, ctx, slots);
}

std::vector<Element> bind_assignment(const std::vector<Variable>& free, const Assignment& env,
                                     const FiniteStructure& left, const FiniteStructure& right) {
  std::vector<Element> values;
  for (const auto& v : free) {
    auto it = env.find(v.name);
    if (it == env.end()) throw ValidationError("free variable '" + v.name + "' is unassigned");
    const FiniteStructure& m = v.primed ? right : left;
    if (it->second >= m.size(v.sort)) {
      throw ValidationError("value " + std::to_string(it->second) + " of '" + v.name + "' lies outside sort '" +
                            m.vocabulary().sort_name(v.sort) + (v.primed ? "'" : "") + "'");
    }
    values.push_back(it->second);
  }
  for (const auto& [name, value] : env) {
    (void)value;
    if (std::none_of(free.begin(), free.end(), [&](const Variable& v) { return v.name == name; })) {
      throw ValidationError("assignment names '" + name + "', which is not free in the formula");
    }
  }
  return values;
}

bool evaluate(const Formula& phi, const FiniteStructure& m, const Assignment& env) {
  if (!(phi.vocabulary() == m.vocabulary())) throw SortError("formula and structure have different vocabularies");
  if (uses_primes(phi) || uses_links(phi)) throw SortError("evaluate takes a base-language formula");
  CompiledFormula c(phi);
  auto values = bind_assignment(c.free_order(), env, m, m);
  return c.eval(EvalContext::single(m), values);
}

}  // namespace merlab::logic

#include "merlab/error.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::reduct {

OrderSpec OrderSpec::parse(std::string_view text, const VocabularyPtr& vocab, std::size_t depth) {
  OrderSpec spec{logic::parse_formula(text, vocab), depth};
  spec.sort();
  if (depth == 0) throw ValidationError("order depth must be at least 1");
  return spec;
}

SortId OrderSpec::sort() const {
  auto fv = order.free_variables();
  if (fv.size() != 2 || fv[0].sort != fv[1].sort) {
    throw ValidationError("an order formula has exactly two free variables of one sort");
  }
  return fv[0].sort;
}

BaseOrder OrderSpec::on(const FiniteStructure& m) const {
  const SortId s = sort();
  logic::CompiledFormula c(order);
  const auto ctx = logic::EvalContext::single(m);
  const std::size_t n = m.size(s);
  BaseOrder out{std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element vals[2] = {a, b};
      out.le[a][b] = c.eval(ctx, vals);
    }
  }
  if (!out.is_partial_order()) {
    throw ValidationError("'" + logic::to_string(order) + "' is not a partial order on " + logic::to_literal(m));
  }
  return out;
}

CofinalOrder::CofinalOrder(OrderSpec order_, PartitionedFormula family_)
    : order(std::move(order_)), family(std::move(family_)) {
  if (!(order.order.vocabulary() == family.formula().vocabulary())) {
    throw SortError("order and family use different vocabularies");
  }
  if (family.block_count() != order.depth) {
    throw ValidationError("family has " + std::to_string(family.block_count()) + " blocks but the order depth is " +
                          std::to_string(order.depth));
  }
  if (family.members().size() != 1 || family.members()[0].sort != order.sort()) {
    throw ValidationError("cofinal families have a single member variable on the ordered sort");
  }
}

bool CofinalOrder::equivalent(const FiniteStructure& m, const FiniteStructure& n, Budget& budget) const {
  const BaseOrder om = order.on(m);
  const BaseOrder on = order.on(n);
  if (om.size() != on.size()) throw ValidationError("ordered universes differ in size");
  if (om.le != on.le) return false;
  const NSetValue a = nset_value(m, family, budget);
  const NSetValue b = nset_value(n, family, budget);
  return nset_leq(a, b, om, order.depth) && nset_leq(b, a, om, order.depth);
}

}  // namespace merlab::reduct

#ifndef MERLAB_LOGIC_EVAL_HPP
#define MERLAB_LOGIC_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "merlab/logic/formula.hpp"
#include "merlab/logic/structure.hpp"

namespace merlab::logic {

using Assignment = std::map<std::string, Element>;

// What a compiled formula reads. side[0] serves unprimed atoms and variables,
// side[1] primed ones; for base formulas both point at the same structure.
// link[s] maps the left universe of coupled sort s to the right one.
struct EvalContext {
  const FiniteStructure* side[2] = {nullptr, nullptr};
  const std::vector<std::optional<Permutation>>* link = nullptr;

  static EvalContext single(const FiniteStructure& m) { return {{&m, &m}, nullptr}; }
  static EvalContext pair(const FiniteStructure& l, const FiniteStructure& r) { return {{&l, &r}, nullptr}; }
};

// A formula flattened into slot-addressed operations for repeated
// evaluation. Free variables occupy slots 0..k-1 in the order given at
// construction; every binder owns one further slot.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  CompiledFormula(const Formula& f, std::vector<Variable> free_order);
  explicit CompiledFormula(const Formula& f) : CompiledFormula(f, f.free_variables()) {}

  const std::vector<Variable>& free_order() const { return free_; }
  bool eval(const EvalContext& ctx, std::span<const Element> free_values) const;
  bool eval(const EvalContext& ctx) const { return eval(ctx, {}); }

 private:
  struct Op {
    Kind kind = Kind::True;
    RelId relation = 0;
    bool primed = false;
    std::vector<std::uint32_t> slots;  // atom arguments, equality / link operands
    std::uint32_t bound = 0;            // quantifier slot
    SortId sort = 0;                    // quantifier sort
    bool side = false;                  // quantifier domain: right universe
    std::vector<std::uint32_t> kids;
  };
  std::uint32_t compile(const Node& n, std::vector<std::pair<std::string, std::uint32_t>>& scope);
  bool run(std::uint32_t op, const EvalContext& ctx, Element* slots) const;

  std::vector<Variable> free_;
  std::vector<Op> ops_;
  std::uint32_t root_ = 0;
  std::uint32_t slot_count_ = 0;
};

// Tarskian satisfaction of a base formula. env must assign exactly the free
// variables of phi, each inside its sort's universe.
bool evaluate(const Formula& phi, const FiniteStructure& m, const Assignment& env = {});

// Shared env checking used by the pair and triple evaluators.
std::vector<Element> bind_assignment(const std::vector<Variable>& free, const Assignment& env,
                                     const FiniteStructure& left, const FiniteStructure& right);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_EVAL_HPP

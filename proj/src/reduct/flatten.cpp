#include <map>
#include <set>

#include "merlab/error.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::reduct {

namespace {

using logic::Kind;
using logic::Node;

// Does the formula (read with the given polarity) force C(o, ...) to hold
// for some tuple, i.e. force the imaginary o to be a nonempty set?
bool guarded(const Node& n, const std::string& o, logic::RelId c, bool positive) {
  switch (n.kind) {
    case Kind::True: return !positive;
    case Kind::False: return positive;
    case Kind::Atom: return positive && n.relation == c && n.args[0].name == o;
    case Kind::Equal:
    case Kind::Link: return false;
    case Kind::Not: return guarded(*n.children[0], o, c, !positive);
    case Kind::And:
    case Kind::Or: {
      const bool a = guarded(*n.children[0], o, c, positive);
      const bool b = guarded(*n.children[1], o, c, positive);
      return (n.kind == Kind::And) == positive ? (a || b) : (a && b);
    }
    case Kind::Implies: {
      const bool a = guarded(*n.children[0], o, c, !positive);
      const bool b = guarded(*n.children[1], o, c, positive);
      return positive ? (a && b) : (a || b);
    }
    case Kind::Iff: {
      const Node& a = *n.children[0];
      const Node& b = *n.children[1];
      // positive: (a & b) | (!a & !b); negative: (a & !b) | (!a & b)
      const bool first = guarded(a, o, c, true) || guarded(b, o, c, positive);
      const bool second = guarded(a, o, c, false) || guarded(b, o, c, !positive);
      return first && second;
    }
    case Kind::Forall:
    case Kind::Exists: {
      if (n.bound.name == o) return false;
      const bool existential = (n.kind == Kind::Exists) == positive;
      return existential && guarded(*n.children[0], o, c, positive);
    }
  }
  return false;
}

class Flattener {
 public:
  Flattener(const PartitionedFormula& level1, const PartitionedFormula& level2)
      : level1_(level1), vocab_(level1.vocabulary_ptr()) {
    imaginary_ = vocab_->sort_count();
    membership_ = vocab_->relation_count();
    for (const auto& n : logic::all_variable_names(level1.formula())) taken_.insert(n);
    for (const auto& n : logic::all_variable_names(level2.formula())) taken_.insert(n);
    for (const auto& b : level1.blocks()) {
      for (const auto& v : b) taken_.insert(v.name);
    }
    for (const auto& v : level2.members()) taken_.insert(v.name);
  }

  SortId imaginary() const { return imaginary_; }
  logic::RelId membership() const { return membership_; }

  std::vector<Variable> fresh_copy(const std::vector<Variable>& vars) {
    std::vector<Variable> out;
    for (const auto& v : vars) {
      std::string name;
      for (std::size_t i = 1;; ++i) {
        name = v.name + std::to_string(i);
        if (!taken_.count(name)) break;
      }
      taken_.insert(name);
      out.push_back(Variable{name, v.sort, false});
    }
    return out;
  }

  // level1 with its members and parameters replaced simultaneously.
  Formula instantiate(const std::vector<Variable>& ys, const std::vector<Variable>& ps) const {
    std::vector<Variable> from = level1_.blocks()[0];
    from.insert(from.end(), level1_.blocks()[1].begin(), level1_.blocks()[1].end());
    std::vector<Variable> to = ys;
    to.insert(to.end(), ps.begin(), ps.end());
    Formula f = level1_.formula();
    std::vector<Variable> temps;
    for (std::size_t i = 0; i < from.size(); ++i) {
      temps.push_back(Variable{"%" + std::to_string(i), from[i].sort, false});
      f = logic::rename_free(f, from[i], temps.back());
    }
    for (std::size_t i = 0; i < from.size(); ++i) f = logic::rename_free(f, temps[i], to[i]);
    return f;
  }

  Formula translate(const Node& n, std::map<std::string, std::vector<Variable>>& env) {
    switch (n.kind) {
      case Kind::True: return Formula::truth(vocab_);
      case Kind::False: return Formula::falsity(vocab_);
      case Kind::Link: throw ValidationError("link atoms cannot occur in a tower level");
      case Kind::Atom: {
        if (n.relation != membership_) return Formula::atom(vocab_, n.relation, n.args);
        std::vector<Variable> ys(n.args.begin() + 1, n.args.end());
        return instantiate(ys, params_of(n.args[0], env));
      }
      case Kind::Equal: {
        if (n.args[0].sort != imaginary_) return Formula::equal(vocab_, n.args[0], n.args[1]);
        if (n.args[0].name == n.args[1].name) return Formula::truth(vocab_);
        const auto& pa = params_of(n.args[0], env);
        const auto& pb = params_of(n.args[1], env);
        auto zs = fresh_copy(level1_.members());
        Formula body = Formula::biconditional(instantiate(zs, pa), instantiate(zs, pb));
        for (auto it = zs.rbegin(); it != zs.rend(); ++it) body = Formula::forall(*it, body);
        return body;
      }
      case Kind::Not: return Formula::negation(translate(*n.children[0], env));
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
      case Kind::Iff: {
        Formula a = translate(*n.children[0], env);
        Formula b = translate(*n.children[1], env);
        if (n.kind == Kind::And) return Formula::conjunction(a, b);
        if (n.kind == Kind::Or) return Formula::disjunction(a, b);
        if (n.kind == Kind::Implies) return Formula::implication(a, b);
        return Formula::biconditional(a, b);
      }
      case Kind::Forall:
      case Kind::Exists: {
        const bool all = n.kind == Kind::Forall;
        auto saved = env.find(n.bound.name) == env.end() ? std::nullopt
                                                          : std::optional(env[n.bound.name]);
        std::vector<Variable> binders{n.bound};
        if (n.bound.sort == imaginary_) {
          binders = fresh_copy(level1_.blocks()[1]);
          env[n.bound.name] = binders;
        } else {
          env.erase(n.bound.name);
        }
        Formula body = translate(*n.children[0], env);
        if (saved) {
          env[n.bound.name] = *saved;
        } else {
          env.erase(n.bound.name);
        }
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          body = all ? Formula::forall(*it, body) : Formula::exists(*it, body);
        }
        return body;
      }
    }
    throw Error("unreachable formula kind");
  }

 private:
  const std::vector<Variable>& params_of(const Variable& o, const std::map<std::string, std::vector<Variable>>& env) {
    auto it = env.find(o.name);
    if (it == env.end()) throw ValidationError("imaginary variable '" + o.name + "' is not bound");
    return it->second;
  }

  const PartitionedFormula& level1_;
  VocabularyPtr vocab_;
  SortId imaginary_ = 0;
  logic::RelId membership_ = 0;
  std::set<std::string> taken_;
};

}  // namespace

PartitionedFormula flatten_2ydlept(const PartitionedFormula& level1, const PartitionedFormula& level2) {
  if (level1.block_count() != 2) throw ValidationError("level 1 of a 2-ydlept tower needs two blocks");
  if (level2.block_count() != 1) {
    throw ValidationError("flattening supports a one-block level 2 (extent of the imaginary relation)");
  }
  auto expected = shelah_vocabulary(level1.vocabulary_ptr(), level1, 1);
  if (!(level2.formula().vocabulary() == *expected)) {
    throw SortError("level 2 is not written over the Shelahization of level 1");
  }

  Flattener fl(level1, level2);
  std::vector<Variable> xs, os;
  for (const auto& v : level2.members()) (v.sort == fl.imaginary() ? os : xs).push_back(v);
  for (const auto& o : os) {
    if (!guarded(level2.formula().node(), o.name, fl.membership(), true)) {
      throw ValidationError("unsupported shape: level 2 does not force the imaginary '" + o.name +
                            "' to be a nonempty set through a positive membership atom");
    }
  }

  std::map<std::string, std::vector<Variable>> env;
  std::vector<std::vector<Variable>> ps, ys;
  for (const auto& o : os) {
    ps.push_back(fl.fresh_copy(level1.blocks()[1]));
    ys.push_back(fl.fresh_copy(level1.members()));
    env[o.name] = ps.back();
  }
  Formula d21 = fl.translate(level2.formula().node(), env);

  if (os.empty()) return PartitionedFormula(d21, {xs});

  if (os.size() == 1) {
    std::vector<SortId> xsorts;
    for (const auto& x : xs) xsorts.push_back(x.sort);
    if (xsorts == level1.member_sorts() && d21 == fl.instantiate(xs, ps[0])) return level1;
  }

  std::vector<Formula> parts;
  std::vector<Variable> members, params;
  for (std::size_t i = 0; i < os.size(); ++i) {
    parts.push_back(fl.instantiate(ys[i], ps[i]));
    members.insert(members.end(), ys[i].begin(), ys[i].end());
    params.insert(params.end(), ps[i].begin(), ps[i].end());
  }
  parts.push_back(d21);
  members.insert(members.end(), xs.begin(), xs.end());
  return PartitionedFormula(Formula::conjunction(level1.vocabulary_ptr(), parts), {members, params});
}

PartitionedFormula flatten_2ydlept(const FamilyTower& tower) {
  if (tower.levels().size() != 2) throw ValidationError("flattening needs a tower with exactly two levels");
  return flatten_2ydlept(tower.levels()[0], tower.levels()[1]);
}

}  // namespace merlab::reduct

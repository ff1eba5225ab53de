#include "merlab/logic/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "merlab/error.hpp"

namespace merlab::logic {

namespace {

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

void check_same_vocab(const Formula& a, const Formula& b) {
  if (a.vocabulary_ptr() != b.vocabulary_ptr() && !(a.vocabulary() == b.vocabulary())) {
    throw SortError("cannot combine formulas over different vocabularies");
  }
}

Formula binary(Kind k, const Formula& a, const Formula& b) {
  check_same_vocab(a, b);
  Node n;
  n.kind = k;
  n.children = {a.node_ptr(), b.node_ptr()};
  return Formula(a.vocabulary_ptr(), make_node(std::move(n)));
}

Formula quantified(Kind k, Variable v, const Formula& body) {
  if (v.sort >= body.vocabulary().sort_count()) throw SortError("quantified variable has an unknown sort");
  Node n;
  n.kind = k;
  n.bound = std::move(v);
  n.children = {body.node_ptr()};
  return Formula(body.vocabulary_ptr(), make_node(std::move(n)));
}

}  // namespace

Formula Formula::truth(VocabularyPtr vocab) {
  Node n;
  n.kind = Kind::True;
  return Formula(std::move(vocab), make_node(std::move(n)));
}

Formula Formula::falsity(VocabularyPtr vocab) {
  Node n;
  n.kind = Kind::False;
  return Formula(std::move(vocab), make_node(std::move(n)));
}

Formula Formula::atom(VocabularyPtr vocab, RelId rel, std::vector<Variable> args, bool primed) {
  const auto& sym = vocab->relation(rel);
  if (args.size() != sym.arity()) {
    throw SortError("relation '" + sym.name + "' has arity " + std::to_string(sym.arity()) + ", applied to " +
                    std::to_string(args.size()) + " argument(s)");
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort != sym.profile[i]) {
      throw SortError("argument '" + args[i].name + "' of '" + sym.name + "' has sort '" +
                      vocab->sort_name(args[i].sort) + "', expected '" + vocab->sort_name(sym.profile[i]) +
                      "'");
    }
  }
  Node n;
  n.kind = Kind::Atom;
  n.relation = rel;
  n.primed = primed;
  n.args = std::move(args);
  return Formula(std::move(vocab), make_node(std::move(n)));
}

Formula Formula::equal(VocabularyPtr vocab, Variable a, Variable b) {
  if (a.sort != b.sort) {
    throw SortError("equality between '" + a.name + "' of sort '" + vocab->sort_name(a.sort) + "' and '" + b.name +
                    "' of sort '" + vocab->sort_name(b.sort) + "'");
  }
  Node n;
  n.kind = Kind::Equal;
  n.args = {std::move(a), std::move(b)};
  return Formula(std::move(vocab), make_node(std::move(n)));
}

Formula Formula::link(VocabularyPtr vocab, Variable from, Variable to) {
  if (from.sort != to.sort) throw SortError("link atom between different sorts");
  Node n;
  n.kind = Kind::Link;
  n.args = {std::move(from), std::move(to)};
  return Formula(std::move(vocab), make_node(std::move(n)));
}

Formula Formula::negation(const Formula& f) {
  Node n;
  n.kind = Kind::Not;
  n.children = {f.node_ptr()};
  return Formula(f.vocabulary_ptr(), make_node(std::move(n)));
}

Formula Formula::conjunction(const Formula& a, const Formula& b) { return binary(Kind::And, a, b); }
Formula Formula::disjunction(const Formula& a, const Formula& b) { return binary(Kind::Or, a, b); }
Formula Formula::implication(const Formula& a, const Formula& b) { return binary(Kind::Implies, a, b); }
Formula Formula::biconditional(const Formula& a, const Formula& b) { return binary(Kind::Iff, a, b); }
Formula Formula::forall(Variable v, const Formula& body) { return quantified(Kind::Forall, std::move(v), body); }
Formula Formula::exists(Variable v, const Formula& body) { return quantified(Kind::Exists, std::move(v), body); }

Formula Formula::conjunction(VocabularyPtr vocab, const std::vector<Formula>& parts) {
  if (parts.empty()) return truth(std::move(vocab));
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

Formula Formula::disjunction(VocabularyPtr vocab, const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity(std::move(vocab));
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disjunction(acc, parts[i]);
  return acc;
}

namespace {

void collect_free(const Node& n, std::vector<Variable>& bound, std::vector<Variable>& out) {
  auto note = [&](const Variable& v) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (it->name == v.name) return;
    }
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Link:
      for (const auto& v : n.args) note(v);
      return;
    case Kind::Forall:
    case Kind::Exists:
      bound.push_back(n.bound);
      collect_free(*n.children[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : n.children) collect_free(*c, bound, out);
  }
}

}  // namespace

std::vector<Variable> Formula::free_variables() const {
  std::vector<Variable> bound;
  std::vector<Variable> out;
  collect_free(*node_, bound, out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.args != b.args || a.children.size() != b.children.size()) return false;
  if (a.kind == Kind::Atom && (a.relation != b.relation || a.primed != b.primed)) return false;
  if ((a.kind == Kind::Forall || a.kind == Kind::Exists) && a.bound != b.bound) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

bool operator==(const Formula& a, const Formula& b) {
  return a.vocabulary() == b.vocabulary() && structurally_equal(*a.node_, *b.node_);
}

std::size_t quantifier_rank(const Formula& f) {
  std::function<std::size_t(const Node&)> rank = [&](const Node& n) -> std::size_t {
    std::size_t best = 0;
    for (const auto& c : n.children) best = std::max(best, rank(*c));
    if (n.kind == Kind::Forall || n.kind == Kind::Exists) return best + 1;
    return best;
  };
  return rank(f.node());
}

namespace {

bool any_node(const Node& n, const std::function<bool(const Node&)>& pred) {
  if (pred(n)) return true;
  for (const auto& c : n.children) {
    if (any_node(*c, pred)) return true;
  }
  return false;
}

}  // namespace

bool uses_primes(const Formula& f) {
  return any_node(f.node(), [](const Node& n) {
    if (n.kind == Kind::Atom && n.primed) return true;
    if ((n.kind == Kind::Forall || n.kind == Kind::Exists) && n.bound.primed) return true;
    for (const auto& v : n.args) {
      if (v.primed) return true;
    }
    return false;
  });
}

bool uses_links(const Formula& f) {
  return any_node(f.node(), [](const Node& n) { return n.kind == Kind::Link; });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;
  }
}

bool is_binary(Kind k) { return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff; }
bool is_quantifier(Kind k) { return k == Kind::Forall || k == Kind::Exists; }

void print(const Vocabulary& v, const Node& n, std::ostream& os);

void print_operand(const Vocabulary& v, const Node& child, bool parens, std::ostream& os) {
  if (parens) os << "(";
  print(v, child, os);
  if (parens) os << ")";
}

void print(const Vocabulary& v, const Node& n, std::ostream& os) {
  switch (n.kind) {
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::Atom: {
      os << v.relation(n.relation).name << (n.primed ? "'" : "") << "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) os << (i ? ", " : "") << n.args[i].name;
      os << ")";
      return;
    }
    case Kind::Equal: os << n.args[0].name << " = " << n.args[1].name; return;
    case Kind::Link: os << "@f(" << n.args[0].name << ", " << n.args[1].name << ")"; return;
    case Kind::Not: {
      const Kind ck = n.children[0]->kind;
      os << "!";
      print_operand(v, *n.children[0], is_binary(ck) || is_quantifier(ck) || ck == Kind::Equal, os);
      return;
    }
    case Kind::Forall:
    case Kind::Exists:
      os << (n.kind == Kind::Forall ? "forall " : "exists ") << n.bound.name << ":" << v.sort_name(n.bound.sort)
         << (n.bound.primed ? "'" : "") << ". ";
      print(v, *n.children[0], os);
      return;
    default: {
      const int p = precedence(n.kind);
      const bool right_assoc = n.kind == Kind::Implies;
      const Node& l = *n.children[0];
      const Node& r = *n.children[1];
      const bool lp = is_quantifier(l.kind) ||
                      (is_binary(l.kind) && (right_assoc ? precedence(l.kind) <= p : precedence(l.kind) < p));
      const bool rp = is_quantifier(r.kind) ||
                      (is_binary(r.kind) && (right_assoc ? precedence(r.kind) < p : precedence(r.kind) <= p));
      const char* op = n.kind == Kind::And ? " & " : n.kind == Kind::Or ? " | " : n.kind == Kind::Implies ? " -> " : " <-> ";
      print_operand(v, l, lp, os);
      os << op;
      print_operand(v, r, rp, os);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(f.vocabulary(), f.node(), os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

void names_in(const Node& n, std::set<std::string>& out) {
  for (const auto& v : n.args) out.insert(v.name);
  if (is_quantifier(n.kind)) out.insert(n.bound.name);
  for (const auto& c : n.children) names_in(*c, out);
}

bool occurs_free(const Node& n, const std::string& name) {
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Link:
      return std::any_of(n.args.begin(), n.args.end(), [&](const Variable& v) { return v.name == name; });
    case Kind::Forall:
    case Kind::Exists:
      return n.bound.name != name && occurs_free(*n.children[0], name);
    default:
      return std::any_of(n.children.begin(), n.children.end(), [&](const NodePtr& c) { return occurs_free(*c, name); });
  }
}

NodePtr rename_node(const NodePtr& np, const Variable& from, const Variable& to, std::set<std::string>& taken) {
  const Node& n = *np;
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Link: {
      Node copy = n;
      for (auto& v : copy.args) {
        if (v.name == from.name) v = to;
      }
      return make_node(std::move(copy));
    }
    case Kind::Forall:
    case Kind::Exists: {
      if (n.bound.name == from.name) return np;  // shadowed
      if (!occurs_free(*n.children[0], from.name)) return np;
      Node copy = n;
      NodePtr body = n.children[0];
      if (n.bound.name == to.name) {
        std::string fresh = n.bound.name;
        while (taken.count(fresh)) fresh += "_";
        taken.insert(fresh);
        Variable nb = n.bound;
        nb.name = fresh;
        body = rename_node(body, n.bound, nb, taken);
        copy.bound = nb;
      }
      copy.children = {rename_node(body, from, to, taken)};
      return make_node(std::move(copy));
    }
    default: {
      Node copy = n;
      for (auto& c : copy.children) c = rename_node(c, from, to, taken);
      return make_node(std::move(copy));
    }
  }
}

}  // namespace

Formula rename_free(const Formula& f, const Variable& from, const Variable& to) {
  if (from.sort != to.sort) throw SortError("renaming must preserve the sort");
  std::set<std::string> taken;
  names_in(f.node(), taken);
  taken.insert(to.name);
  return Formula(f.vocabulary_ptr(), rename_node(f.node_ptr(), from, to, taken));
}

std::vector<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> s;
  names_in(f.node(), s);
  return {s.begin(), s.end()};
}

}  // namespace merlab::logic

// Independent reference implementations used as test oracles. They share no
// code with the library beyond the data types, and favour directness over
// speed.
#ifndef MERLAB_TESTS_SUPPORT_ORACLES_HPP
#define MERLAB_TESTS_SUPPORT_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "merlab/logic/formula.hpp"
#include "merlab/logic/structure.hpp"

namespace oracle {

using merlab::logic::Element;
using merlab::logic::FiniteStructure;
using merlab::logic::Kind;
using merlab::logic::Node;
using merlab::logic::Tuple;

// Direct recursive satisfaction with a name-keyed environment. `left` serves
// unprimed atoms and variables, `right` primed ones; `link` (per sort, may be
// empty) interprets @f.
inline bool satisfies(const Node& n, const FiniteStructure& left, const FiniteStructure& right,
                      std::map<std::string, Element>& env,
                      const std::vector<std::vector<Element>>& link = {}) {
  switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      Tuple t;
      for (const auto& a : n.args) t.push_back(env.at(a.name));
      const FiniteStructure& m = n.primed ? right : left;
      for (const auto& u : m.extent(n.relation)) {
        if (u == t) return true;
      }
      return false;
    }
    case Kind::Equal: return env.at(n.args[0].name) == env.at(n.args[1].name);
    case Kind::Link: {
      const auto& map = link.at(n.args[0].sort);
      return map.at(env.at(n.args[0].name)) == env.at(n.args[1].name);
    }
    case Kind::Not: return !satisfies(*n.children[0], left, right, env, link);
    case Kind::And:
      return satisfies(*n.children[0], left, right, env, link) && satisfies(*n.children[1], left, right, env, link);
    case Kind::Or:
      return satisfies(*n.children[0], left, right, env, link) || satisfies(*n.children[1], left, right, env, link);
    case Kind::Implies:
      return !satisfies(*n.children[0], left, right, env, link) || satisfies(*n.children[1], left, right, env, link);
    case Kind::Iff:
      return satisfies(*n.children[0], left, right, env, link) == satisfies(*n.children[1], left, right, env, link);
    case Kind::Forall:
    case Kind::Exists: {
      const FiniteStructure& m = n.bound.primed ? right : left;
      const bool saved_present = env.count(n.bound.name) > 0;
      const Element saved = saved_present ? env[n.bound.name] : 0;
      bool result = n.kind == Kind::Forall;
      for (Element e = 0; e < m.size(n.bound.sort); ++e) {
        env[n.bound.name] = e;
        const bool v = satisfies(*n.children[0], left, right, env, link);
        if (n.kind == Kind::Forall && !v) {
          result = false;
          break;
        }
        if (n.kind == Kind::Exists && v) {
          result = true;
          break;
        }
      }
      if (saved_present) {
        env[n.bound.name] = saved;
      } else {
        env.erase(n.bound.name);
      }
      return result;
    }
  }
  return false;
}

inline bool satisfies(const merlab::logic::Formula& f, const FiniteStructure& m,
                      std::map<std::string, Element> env = {}) {
  return satisfies(f.node(), m, m, env);
}

// Hereditary set value by direct unrolling of the definition, encoded as a
// string whose sets are std::set-sorted. blocks[0] are the members.
inline std::string nset(const Node& f, const FiniteStructure& m,
                        const std::vector<std::vector<merlab::logic::Variable>>& blocks, std::size_t j,
                        std::map<std::string, Element>& env) {
  std::set<std::string> out;
  const auto& block = blocks[j];
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == block.size()) {
      if (j == 0) {
        if (!satisfies(f, m, m, env)) return;
        std::string t = "(";
        for (const auto& v : block) t += std::to_string(env.at(v.name)) + ",";
        out.insert(t + ")");
      } else {
        out.insert(nset(f, m, blocks, j - 1, env));
      }
      return;
    }
    for (Element e = 0; e < m.size(block[i].sort); ++e) {
      env[block[i].name] = e;
      assign(i + 1);
    }
    env.erase(block[i].name);
  };
  assign(0);
  std::string s = "{";
  for (const auto& x : out) s += x + ";";
  return s + "}";
}

inline std::string nset(const merlab::logic::Formula& f, const FiniteStructure& m,
                        const std::vector<std::vector<merlab::logic::Variable>>& blocks) {
  std::map<std::string, Element> env;
  return nset(f.node(), m, blocks, blocks.size() - 1, env);
}

// Brute-force isomorphism test over all per-sort permutations.
inline std::vector<std::vector<std::vector<Element>>> brute_isomorphisms(const FiniteStructure& a,
                                                                         const FiniteStructure& b) {
  std::vector<std::vector<std::vector<Element>>> out;
  if (a.sizes() != b.sizes()) return out;
  const auto& v = a.vocabulary();
  std::vector<std::vector<Element>> perm(v.sort_count());
  for (std::size_t s = 0; s < v.sort_count(); ++s) {
    perm[s].resize(a.size(s));
    std::iota(perm[s].begin(), perm[s].end(), Element{0});
  }
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == v.sort_count()) {
      for (std::size_t r = 0; r < v.relation_count(); ++r) {
        std::set<Tuple> img;
        for (const auto& t : a.extent(r)) {
          Tuple u(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) u[i] = perm[v.relation(r).profile[i]][t[i]];
          img.insert(u);
        }
        const auto ext = b.extent(r);
        if (img != std::set<Tuple>(ext.begin(), ext.end())) return;
      }
      out.push_back(perm);
      return;
    }
    std::sort(perm[s].begin(), perm[s].end());
    do {
      rec(s + 1);
    } while (std::next_permutation(perm[s].begin(), perm[s].end()));
    std::sort(perm[s].begin(), perm[s].end());
  };
  rec(0);
  return out;
}

// Random formula text over a single sort V with unary P and binary E, using
// variables x, y, z. Quantifier depth is bounded by `depth`.
inline std::string random_formula(std::mt19937& rng, int depth) {
  static const char* vars[] = {"x", "y", "z"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const int choice = depth > 0 ? pick(9) : pick(4);
  switch (choice) {
    case 0: return std::string("P(") + vars[pick(3)] + ")";
    case 1: return std::string("E(") + vars[pick(3)] + ", " + vars[pick(3)] + ")";
    case 2: return std::string(vars[pick(3)]) + " = " + vars[pick(3)];
    case 3: return pick(2) ? "true" : "false";
    case 4: return "!(" + random_formula(rng, depth) + ")";
    case 5: return "(" + random_formula(rng, depth - 1) + " & " + random_formula(rng, depth - 1) + ")";
    case 6: return "(" + random_formula(rng, depth - 1) + " | " + random_formula(rng, depth - 1) + ")";
    case 7: {
      const char* ops[] = {" -> ", " <-> "};
      return "(" + random_formula(rng, depth - 1) + ops[pick(2)] + random_formula(rng, depth - 1) + ")";
    }
    default: {
      const char* q = pick(2) ? "forall " : "exists ";
      return std::string("(") + q + vars[pick(3)] + ":V. " + random_formula(rng, depth - 1) + ")";
    }
  }
}

// Prefix class of a formula already in prenex form: the number of
// same-kind quantifier blocks, named after the first; Pi0 without any.
inline std::string prenex_class(const merlab::logic::Formula& f) {
  std::vector<bool> kinds;
  const Node* n = &f.node();
  while (n->kind == Kind::Forall || n->kind == Kind::Exists) {
    const bool universal = n->kind == Kind::Forall;
    if (kinds.empty() || kinds.back() != universal) kinds.push_back(universal);
    n = n->children[0].get();
  }
  if (kinds.empty()) return "Pi0";
  return (kinds.front() ? "Pi" : "Sigma") + std::to_string(kinds.size());
}

}  // namespace oracle

#endif  // MERLAB_TESTS_SUPPORT_ORACLES_HPP

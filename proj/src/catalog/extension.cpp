#include <algorithm>
#include <random>

#include "merlab/catalog/catalog.hpp"
#include "merlab/error.hpp"

namespace merlab::catalog {

using logic::Kind;

namespace {

// rows[c][d] = G(c, d), c in P, d in Q.
using Matrix = std::vector<std::vector<bool>>;

struct Axiom {
  std::size_t side;
  std::vector<Element> adjacent, non_adjacent;
};

void check_bipartite(const logic::Vocabulary& v) {
  if (v.sort_count() != 2 || v.relation_count() != 1 || v.relation(0).profile != std::vector<logic::SortId>{0, 1})
    throw ValidationError("expected a bipartite vocabulary (P, Q; G(P, Q)), got '" + v.name() + "'");
}

// Order: side P then Q; subsets by size, then lexicographically; element i
// of the subset is adjacent iff bit i of the split mask is set.
std::vector<Axiom> axioms_for(std::size_t p, std::size_t q, std::size_t k) {
  std::vector<Axiom> out;
  for (std::size_t side = 0; side < 2; ++side) {
    const std::size_t n = side == 0 ? p : q;
    for (std::size_t t = 0; t <= std::min(k, n); ++t) {
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(t), true);
      std::vector<std::vector<Element>> subsets;
      do {
        std::vector<Element> s;
        for (std::size_t i = 0; i < n; ++i)
          if (pick[i]) s.push_back(i);
        subsets.push_back(std::move(s));
      } while (std::prev_permutation(pick.begin(), pick.end()));
      for (const auto& s : subsets)
        for (std::size_t mask = 0; mask < (std::size_t{1} << t); ++mask) {
          Axiom ax{side, {}, {}};
          for (std::size_t i = 0; i < t; ++i) ((mask >> i) & 1 ? ax.adjacent : ax.non_adjacent).push_back(s[i]);
          out.push_back(std::move(ax));
        }
    }
  }
  return out;
}

bool adjacent(const Matrix& rows, std::size_t side, Element a, Element w) { return side == 0 ? rows[a][w] : rows[w][a]; }

bool witnesses(const Matrix& rows, const Axiom& ax, Element w) {
  for (Element a : ax.adjacent)
    if (!adjacent(rows, ax.side, a, w)) return false;
  for (Element a : ax.non_adjacent)
    if (adjacent(rows, ax.side, a, w)) return false;
  return true;
}

bool satisfied(const Matrix& rows, std::size_t other_size, const Axiom& ax) {
  for (Element w = 0; w < other_size; ++w)
    if (witnesses(rows, ax, w)) return true;
  return false;
}

Matrix rows_of(const FiniteStructure& g) {
  Matrix rows(g.size(0), std::vector<bool>(g.size(1)));
  for (Element c = 0; c < g.size(0); ++c)
    for (Element d = 0; d < g.size(1); ++d) rows[c][d] = g.holds(0, std::vector<Element>{c, d});
  return rows;
}

FiniteStructure structure_of(const Matrix& rows, std::size_t p, std::size_t q) {
  FiniteStructure g(bipartite_vocabulary(), {p, q});
  for (Element c = 0; c < p; ++c)
    for (Element d = 0; d < q; ++d)
      if (rows[c][d]) g.set(0, {c, d});
  return g;
}

}  // namespace

std::optional<ExtensionViolation> first_extension_violation(const FiniteStructure& g, std::size_t k) {
  check_bipartite(g.vocabulary());
  const Matrix rows = rows_of(g);
  for (const auto& ax : axioms_for(g.size(0), g.size(1), k))
    if (!satisfied(rows, g.size(1 - ax.side), ax)) return ExtensionViolation{ax.side, ax.adjacent, ax.non_adjacent};
  return std::nullopt;
}

FiniteStructure generate_extension_graph(const ExtensionGraphRequest& req) {
  if (req.k >= 63 || (std::uint64_t{1} << req.k) > std::min(req.p, req.q))
    throw ValidationError("extension graphs of level " + std::to_string(req.k) + " need 2^k <= min(|P|, |Q|), got (" +
                          std::to_string(req.p) + ", " + std::to_string(req.q) + ")");
  std::mt19937_64 rng(req.seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  Matrix rows(req.p, std::vector<bool>(req.q));
  for (auto& row : rows)
    for (std::size_t d = 0; d < req.q; ++d) row[d] = (rng() & 1) != 0;

  const auto axioms = axioms_for(req.p, req.q, req.k);
  auto violated = [&](const Matrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < axioms.size(); ++i)
      if (!satisfied(m, axioms[i].side == 0 ? req.q : req.p, axioms[i])) out.push_back(i);
    return out;
  };
  auto make_witness = [&](Matrix& m, const Axiom& ax, Element w) {
    for (Element a : ax.adjacent) (ax.side == 0 ? m[a][w] : m[w][a]) = true;
    for (Element a : ax.non_adjacent) (ax.side == 0 ? m[a][w] : m[w][a]) = false;
  };

  auto bad = violated(rows);
  for (std::uint64_t step = 0; !bad.empty(); ++step) {
    if (step == req.max_steps)
      throw ValidationError("no level-" + std::to_string(req.k) + " extension graph found within " +
                            std::to_string(req.max_steps) + " steps for seed " + std::to_string(req.seed));
    const Axiom& ax = axioms[bad[below(bad.size())]];
    const std::size_t others = ax.side == 0 ? req.q : req.p;
    // Min-conflicts: repair with the witness leaving the fewest violations;
    // one step in ten takes a random witness to escape plateaus.
    Element chosen = below(others);
    std::vector<std::size_t> best_bad;
    bool have_best = false;
    if (below(10) != 0) {
      std::vector<Element> ties;
      for (Element w = 0; w < others; ++w) {
        Matrix trial = rows;
        make_witness(trial, ax, w);
        auto v = violated(trial);
        if (!have_best || v.size() < best_bad.size()) {
          best_bad = std::move(v);
          ties = {w};
          have_best = true;
        } else if (v.size() == best_bad.size()) {
          ties.push_back(w);
        }
      }
      chosen = ties[below(ties.size())];
    }
    make_witness(rows, ax, chosen);
    bad = violated(rows);
  }
  return structure_of(rows, req.p, req.q);
}

FiniteStructure swap_adjacency(const FiniteStructure& g, const std::vector<std::pair<Element, Element>>& pairs) {
  check_bipartite(g.vocabulary());
  std::vector<bool> used(g.size(0), false);
  for (const auto& [c, c2] : pairs)
    for (Element e : {c, c2}) {
      if (e >= g.size(0)) throw ValidationError("swap element " + std::to_string(e) + " lies outside P");
      if (used[e]) throw ValidationError("swap element " + std::to_string(e) + " occurs twice");
      used[e] = true;
    }
  Matrix rows = rows_of(g);
  for (const auto& [c, c2] : pairs) std::swap(rows[c], rows[c2]);
  return structure_of(rows, g.size(0), g.size(1));
}

namespace {

// Literal over the free-variable slots of a quantifier-free formula.
struct Literal {
  Kind kind = Kind::True;  // True, Atom or Equal
  bool positive = true;
  std::vector<std::size_t> slots;
};
using Conjunct = std::vector<Literal>;
using Dnf = std::vector<Conjunct>;

Dnf product(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Conjunct c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

Dnf dnf(const Formula& f, bool positive, const std::vector<logic::Variable>& free) {
  auto slot = [&](const logic::Variable& v) {
    return static_cast<std::size_t>(std::find(free.begin(), free.end(), v) - free.begin());
  };
  auto both = [&](const Formula& a, bool pa, const Formula& b, bool pb, bool conj) {
    Dnf x = dnf(a, pa, free), y = dnf(b, pb, free);
    if (conj) return product(x, y);
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  switch (f.kind()) {
    case Kind::True:
      return positive ? Dnf{{}} : Dnf{};
    case Kind::False:
      return positive ? Dnf{} : Dnf{{}};
    case Kind::Atom: {
      if (f.primed()) throw ValidationError("swap formulas are base-language formulas");
      Literal l{Kind::Atom, positive, {}};
      for (const auto& v : f.args()) l.slots.push_back(slot(v));
      return {{l}};
    }
    case Kind::Equal:
      return {{Literal{Kind::Equal, positive, {slot(f.args()[0]), slot(f.args()[1])}}}};
    case Kind::Not:
      return dnf(f.child(0), !positive, free);
    case Kind::And:
      return both(f.child(0), positive, f.child(1), positive, positive);
    case Kind::Or:
      return both(f.child(0), positive, f.child(1), positive, !positive);
    case Kind::Implies:
      return both(f.child(0), !positive, f.child(1), positive, !positive);
    case Kind::Iff: {
      // (a & b) | (!a & !b), negated: (a & !b) | (!a & b)
      Dnf x = both(f.child(0), true, f.child(1), positive, true);
      Dnf y = both(f.child(0), false, f.child(1), !positive, true);
      x.insert(x.end(), y.begin(), y.end());
      return x;
    }
    default:
      throw ValidationError("swap formulas must be quantifier-free");
  }
}

bool literal_holds(const Literal& l, const FiniteStructure& g, const std::vector<Element>& tuple) {
  bool v = true;
  if (l.kind == Kind::Atom) v = g.holds(0, std::vector<Element>{tuple[l.slots[0]], tuple[l.slots[1]]});
  if (l.kind == Kind::Equal) v = tuple[l.slots[0]] == tuple[l.slots[1]];
  return v == l.positive;
}

}  // namespace

std::optional<SwapWitness> find_swap_witness(const FiniteStructure& g, const Formula& phi,
                                             const std::vector<Element>& tuple) {
  check_bipartite(g.vocabulary());
  const auto free = phi.free_variables();
  if (free.size() != tuple.size())
    throw ValidationError("tuple has " + std::to_string(tuple.size()) + " elements for " +
                          std::to_string(free.size()) + " free variables");
  for (std::size_t i = 0; i < free.size(); ++i)
    if (tuple[i] >= g.size(free[i].sort))
      throw ValidationError("tuple element " + std::to_string(tuple[i]) + " outside sort " +
                            g.vocabulary().sort_name(free[i].sort));

  std::vector<bool> in_tuple(g.size(0), false);
  std::vector<Element> tuple_q;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (free[i].sort == 0) in_tuple[tuple[i]] = true;
    else tuple_q.push_back(tuple[i]);
  }
  std::sort(tuple_q.begin(), tuple_q.end());
  tuple_q.erase(std::unique(tuple_q.begin(), tuple_q.end()), tuple_q.end());

  const Dnf form = dnf(phi, true, free);
  for (std::size_t di = 0; di < form.size(); ++di) {
    const auto& conj = form[di];
    const bool relational =
        std::any_of(conj.begin(), conj.end(), [](const Literal& l) { return l.kind == Kind::Atom; });
    if (!relational || !std::all_of(conj.begin(), conj.end(),
                                    [&](const Literal& l) { return literal_holds(l, g, tuple); }))
      continue;

    // Per P-element c: the Q-elements d with a literal on G(c, d); the
    // partner must disagree with c on each.
    std::vector<std::pair<Element, std::vector<Element>>> demands;
    for (const auto& l : conj) {
      if (l.kind != Kind::Atom) continue;
      const Element c = tuple[l.slots[0]], d = tuple[l.slots[1]];
      auto it = std::find_if(demands.begin(), demands.end(), [&](const auto& e) { return e.first == c; });
      if (it == demands.end()) demands.push_back({c, {d}});
      else it->second.push_back(d);
    }
    std::sort(demands.begin(), demands.end());

    std::vector<Element> partner(demands.size());
    std::vector<bool> taken = in_tuple;
    auto fits = [&](std::size_t i, Element c2) {
      const Element c = demands[i].first;
      for (Element d : demands[i].second)
        if (g.holds(0, std::vector<Element>{c, d}) == g.holds(0, std::vector<Element>{c2, d})) return false;
      return true;
    };
    auto search = [&](auto&& self, std::size_t i) -> bool {
      if (i == demands.size()) return true;
      for (Element c2 = 0; c2 < g.size(0); ++c2) {
        if (taken[c2] || !fits(i, c2)) continue;
        taken[c2] = true;
        partner[i] = c2;
        if (self(self, i + 1)) return true;
        taken[c2] = false;
      }
      return false;
    };
    if (!search(search, 0)) continue;

    SwapWitness w{swap_adjacency(g, {}), {}, {}, di};
    for (std::size_t i = 0; i < demands.size(); ++i) w.pairs.push_back({demands[i].first, partner[i]});
    w.graph = swap_adjacency(g, w.pairs);
    for (const auto& [c, c2] : w.pairs)
      for (Element d : tuple_q)
        if (g.holds(0, std::vector<Element>{c, d}) != w.graph.holds(0, std::vector<Element>{c, d}))
          w.flipped.push_back({c, d});
    std::sort(w.flipped.begin(), w.flipped.end());
    return w;
  }
  return std::nullopt;
}

}  // namespace merlab::catalog

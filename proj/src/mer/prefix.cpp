#include <algorithm>

#include "merlab/mer/mer.hpp"

namespace merlab::mer {

namespace {

using logic::Kind;

// Least n with an equivalent Sigma_n (s) and Pi_n (p) prenex form reachable
// by quantifier extraction.
struct Rank {
  std::size_t s = 0, p = 0;
};

Rank normalize(Rank r) {
  r.s = std::min(r.s, r.p + 1);
  r.p = std::min(r.p, r.s + 1);
  return r;
}

Rank rank(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Link:
      return {};
    case Kind::Not: {
      const Rank c = rank(f.child(0));
      return {c.p, c.s};
    }
    case Kind::And:
    case Kind::Or: {
      const Rank a = rank(f.child(0)), b = rank(f.child(1));
      return normalize({std::max(a.s, b.s), std::max(a.p, b.p)});
    }
    case Kind::Implies: {
      const Rank a = rank(f.child(0)), b = rank(f.child(1));
      return normalize({std::max(a.p, b.s), std::max(a.s, b.p)});
    }
    case Kind::Iff: {
      const Rank a = rank(f.child(0)), b = rank(f.child(1));
      const std::size_t m = std::max({a.s, a.p, b.s, b.p});
      return normalize({m, m});
    }
    case Kind::Forall: {
      const Rank c = rank(f.child(0));
      const std::size_t p = std::min(std::max<std::size_t>(1, c.p), c.s + 1);
      return {p + 1, p};
    }
    case Kind::Exists: {
      const Rank c = rank(f.child(0));
      const std::size_t s = std::min(std::max<std::size_t>(1, c.s), c.p + 1);
      return {s, s + 1};
    }
  }
  return {};
}

}  // namespace

PrefixClass classify_prefix(const Formula& sentence) {
  const Rank r = rank(sentence);
  if (r.p <= r.s) return PrefixClass{true, r.p};
  return PrefixClass{false, r.s};
}

}  // namespace merlab::mer

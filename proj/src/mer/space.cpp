#include <map>

#include "merlab/error.hpp"
#include "merlab/logic/iso.hpp"
#include "merlab/mer/mer.hpp"
#include "merlab/parallel.hpp"

namespace merlab::mer {

using logic::SortId;

void Scale::validate(std::size_t sort_count) const {
  if (max.size() != sort_count) throw ValidationError("scale has the wrong number of sorts");
  if (!min.empty() && min.size() != sort_count) throw ValidationError("scale has the wrong number of sorts");
  for (SortId s = 0; s < sort_count; ++s) {
    if (lower(s) > max[s]) throw ValidationError("scale lower bound exceeds its upper bound");
  }
}

std::vector<std::vector<std::size_t>> coupled_assignments(const CoupledSignature& sig, const Scale& scale) {
  const std::size_t n = sig.vocab->sort_count();
  scale.validate(n);
  std::vector<std::size_t> lo(n, 0), hi(n, 0);
  for (SortId s = 0; s < n; ++s) {
    if (sig.is_coupled(s)) {
      lo[s] = scale.lower(s);
      hi[s] = scale.max[s];
    }
  }
  return logic::size_vectors(lo, hi);
}

namespace {

std::vector<std::vector<std::size_t>> universe_plans(const CoupledSignature& sig, const std::vector<std::size_t>& omega,
                                                     const Scale& scale) {
  const std::size_t n = sig.vocab->sort_count();
  std::vector<std::size_t> lo(n), hi(n);
  for (SortId s = 0; s < n; ++s) {
    lo[s] = sig.is_coupled(s) ? omega.at(s) : scale.lower(s);
    hi[s] = sig.is_coupled(s) ? omega.at(s) : scale.max.at(s);
  }
  // size_vectors is lexicographic over all sorts; with coupled entries fixed
  // that is the lexicographic order of the decoupled sizes.
  return logic::size_vectors(lo, hi);
}

}  // namespace

ModelSpace::ModelSpace(const MerSpec& spec, const Theory& theory, const std::vector<std::size_t>& omega,
                       const Scale& scale, Budget& budget, unsigned threads)
    : omega_(omega), coupled_(spec.sig.coupled) {
  if (!(theory.vocabulary() == spec.vocabulary())) throw SortError("theory and MER use different vocabularies");
  for (const auto& sizes : universe_plans(spec.sig, omega, scale)) {
    for (auto& m : logic::models_of(theory, sizes, budget)) models_.push_back(std::move(m));
  }
  build(spec, budget, threads);
}

ModelSpace::ModelSpace(const MerSpec& spec, const Theory& theory, const std::vector<std::size_t>& sizes,
                       Budget& budget, unsigned threads)
    : omega_(sizes), coupled_(spec.sig.coupled) {
  if (!(theory.vocabulary() == spec.vocabulary())) throw SortError("theory and MER use different vocabularies");
  models_ = logic::models_of(theory, sizes, budget);
  build(spec, budget, threads);
}

void ModelSpace::build(const MerSpec& spec, Budget& budget, unsigned threads) {
  const std::size_t n = models_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(models_[i], i);
  Comparator cmp(spec);
  prepared_.resize(n, Prepared{models_.empty() ? FiniteStructure(spec.sig.vocab, omega_) : models_[0], {}, {}, {}, {}, {}});
  parallel_for(n, threads, [&](std::size_t i) { prepared_[i] = cmp.prepare(models_[i], budget); });
  rows_.assign(n, boost::dynamic_bitset<>(n));
  if (first_invalid()) return;
  budget.require(static_cast<std::uint64_t>(n) * n, "relation matrix");
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) rows_[i][j] = cmp.compare(prepared_[i], prepared_[j], budget);
  });
}

std::optional<std::size_t> ModelSpace::first_invalid() const {
  for (std::size_t i = 0; i < prepared_.size(); ++i) {
    if (!prepared_[i].invalid.empty()) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ModelSpace::index_of(const FiniteStructure& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<BijectionFamily>& ModelSpace::bijections() const {
  if (bijections_.empty()) {
    std::vector<std::size_t> sizes(coupled_.size(), 0);
    for (SortId s = 0; s < coupled_.size(); ++s) {
      if (coupled_[s]) sizes[s] = omega_[s];
    }
    bijections_ = logic::all_bijections(sizes, coupled_);
    for (const auto& f : bijections_) {
      const auto inv = f.inverse();
      for (std::size_t g = 0; g < bijections_.size(); ++g) {
        if (bijections_[g] == inv) {
          inverse_.push_back(g);
          break;
        }
      }
    }
  }
  return bijections_;
}

std::size_t ModelSpace::inverse_of(std::size_t f) const {
  bijections();
  return inverse_.at(f);
}

void ModelSpace::build_actions() const {
  const auto& bij = bijections();
  act_.assign(bij.size(), std::vector<std::size_t>(models_.size()));
  for (std::size_t f = 0; f < bij.size(); ++f) {
    for (std::size_t i = 0; i < models_.size(); ++i) {
      auto it = index_.find(models_[i].image(bij[f]));
      if (it == index_.end()) throw ValidationError("the theory is not closed under isomorphism at this scale");
      act_[f][i] = it->second;
    }
  }
}

std::size_t ModelSpace::act(std::size_t f, std::size_t i) const {
  if (act_.empty()) build_actions();
  return act_[f][i];
}

namespace {

ErVerdict failure(const char* kind, std::vector<FiniteStructure> witnesses, std::string detail = {}) {
  ErVerdict v;
  v.holds = false;
  v.kind = kind;
  v.witnesses = std::move(witnesses);
  v.detail = std::move(detail);
  return v;
}

}  // namespace

std::optional<ErVerdict> verify_space(const ModelSpace& sp) {
  const std::size_t n = sp.size();
  if (auto bad = sp.first_invalid()) {
    return failure("not-well-defined", {sp.model(*bad)}, sp.invalid_reason(*bad));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!sp.related(i, i)) return failure("reflexivity", {sp.model(i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = sp.row(i);
    for (auto j = row.find_first(); j != boost::dynamic_bitset<>::npos; j = row.find_next(j)) {
      if (!sp.related(j, i)) return failure("symmetry", {sp.model(i), sp.model(j)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = sp.row(i);
    for (auto j = row.find_first(); j != boost::dynamic_bitset<>::npos; j = row.find_next(j)) {
      if (sp.row(j).is_subset_of(row)) continue;
      const auto k = (sp.row(j) - row).find_first();
      return failure("transitivity", {sp.model(i), sp.model(j), sp.model(k)});
    }
  }
  return std::nullopt;
}

ErVerdict check_equivalence_relation(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                     unsigned threads) {
  ErVerdict out;
  for (const auto& omega : coupled_assignments(spec.sig, scale)) {
    ModelSpace sp(spec, theory, omega, scale, budget, threads);
    out.models_checked += sp.size();
    ++out.assignments_checked;
    if (auto bad = verify_space(sp)) {
      bad->models_checked = out.models_checked;
      bad->assignments_checked = out.assignments_checked;
      return *bad;
    }
  }
  return out;
}

ErVerdict check_equivalence_relation(const MerSpec& spec, const Theory& theory, const Scale& scale) {
  Budget budget;
  return check_equivalence_relation(spec, theory, scale, budget);
}

bool replay_counterexample(const MerSpec& spec, const ErVerdict& verdict) {
  if (verdict.holds) return false;
  Budget budget;
  Comparator c(spec);
  std::vector<Prepared> p;
  for (const auto& w : verdict.witnesses) p.push_back(c.prepare(w, budget));
  auto e = [&](std::size_t a, std::size_t b) {
    if (!spec.sig.shares_coupled(p[a].model, p[b].model)) throw ValidationError("witnesses do not share coupled universes");
    return c.compare(p[a], p[b], budget);
  };
  if (verdict.kind == "not-well-defined") return p.size() == 1 && !p[0].invalid.empty();
  for (const auto& x : p) {
    if (!x.invalid.empty()) return false;
  }
  if (verdict.kind == "reflexivity") return p.size() == 1 && !e(0, 0);
  if (verdict.kind == "symmetry") return p.size() == 2 && e(0, 1) && !e(1, 0);
  if (verdict.kind == "transitivity") return p.size() == 3 && e(0, 1) && e(1, 2) && !e(0, 2);
  return false;
}

std::vector<BijectionFamily> groupoid_morphisms(const MerSpec& spec, const FiniteStructure& m,
                                                const FiniteStructure& n, Budget& budget) {
  if (!spec.sig.shares_coupled(m, n)) throw ValidationError("coupled universes differ");
  std::vector<std::size_t> sizes(m.sizes().size(), 0);
  for (SortId s = 0; s < sizes.size(); ++s) {
    if (spec.sig.is_coupled(s)) sizes[s] = m.size(s);
  }
  Comparator c(spec);
  const Prepared pm = c.prepare(m, budget);
  std::vector<BijectionFamily> out;
  for (const auto& f : logic::all_bijections(sizes, spec.sig.coupled)) {
    budget.charge(1, "morphism search");
    if (c.compare(pm, c.prepare(pair::transport(n, f.inverse()), budget), budget)) out.push_back(f);
  }
  return out;
}

std::vector<BijectionFamily> groupoid_morphisms(const MerSpec& spec, const FiniteStructure& m,
                                                const FiniteStructure& n) {
  Budget budget;
  return groupoid_morphisms(spec, m, n, budget);
}

namespace {

std::optional<GroupoidVerdict> verify_laws(const ModelSpace& sp, Budget& budget) {
  auto fail = [](const char* law, std::vector<FiniteStructure> w, std::vector<BijectionFamily> f) {
    GroupoidVerdict v;
    v.holds = false;
    v.law = law;
    v.witnesses = std::move(w);
    v.morphisms = std::move(f);
    return v;
  };
  const std::size_t n = sp.size();
  if (auto bad = sp.first_invalid()) return fail("not-well-defined", {sp.model(*bad)}, {});
  if (n == 0) return std::nullopt;
  const auto& bij = sp.bijections();
  for (std::size_t i = 0; i < n; ++i) {
    if (!sp.related(i, sp.act(0, i))) return fail("identity", {sp.model(i), sp.model(i)}, {bij[0]});
  }
  // f in G(M, N) iff f^-1 N in row(M): N ranges over f(row(M)).
  budget.require(static_cast<std::uint64_t>(bij.size()) * n * n, "groupoid law check");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = sp.row(i);
    for (std::size_t f = 0; f < bij.size(); ++f) {
      for (auto k = row.find_first(); k != boost::dynamic_bitset<>::npos; k = row.find_next(k)) {
        const std::size_t j = sp.act(f, k);
        // f^-1 in G(N, M) iff f M in row(N)
        if (!sp.related(j, sp.act(f, i))) return fail("inverse", {sp.model(i), sp.model(j)}, {bij[f]});
      }
    }
  }
  // With N1 = f^-1 N and K1 = g^-1 K, closure reads: for N1 in row(M) and
  // K1 in row(f N1), f^-1 K1 in row(M). Only row(M) matters, so each distinct
  // row is checked once, at its least model; g = id realizes any failure.
  std::map<boost::dynamic_bitset<>, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = sp.row(i);
    if (!seen.emplace(row, i).second) continue;
    for (auto n1 = row.find_first(); n1 != boost::dynamic_bitset<>::npos; n1 = row.find_next(n1)) {
      for (std::size_t f = 0; f < bij.size(); ++f) {
        const std::size_t mid = sp.act(f, n1);
        const auto& next = sp.row(mid);
        budget.charge(next.count() + 1, "groupoid law check");
        const std::size_t finv = sp.inverse_of(f);
        for (auto k1 = next.find_first(); k1 != boost::dynamic_bitset<>::npos; k1 = next.find_next(k1)) {
          if (!row[sp.act(finv, k1)]) {
            return fail("composition", {sp.model(i), sp.model(mid), sp.model(k1)}, {bij[f], bij[0]});
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

GroupoidVerdict check_groupoid_laws(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                    unsigned threads) {
  GroupoidVerdict out;
  for (const auto& omega : coupled_assignments(spec.sig, scale)) {
    ModelSpace sp(spec, theory, omega, scale, budget, threads);
    out.models_checked += sp.size();
    if (auto bad = verify_laws(sp, budget)) {
      bad->models_checked = out.models_checked;
      return *bad;
    }
  }
  return out;
}

GroupoidVerdict check_groupoid_laws(const MerSpec& spec, const Theory& theory, const Scale& scale) {
  Budget budget;
  return check_groupoid_laws(spec, theory, scale, budget);
}

std::vector<std::vector<FiniteStructure>> mer_classes(const MerSpec& spec, const Theory& theory,
                                                      const std::vector<std::size_t>& sizes, Budget& budget,
                                                      unsigned threads) {
  ModelSpace sp(spec, theory, sizes, budget, threads);
  if (auto bad = verify_space(sp)) {
    std::string w;
    for (const auto& m : bad->witnesses) w += " " + logic::to_literal(m);
    throw ValidationError("'" + spec.name + "' is not an equivalence relation here (" + bad->kind + " fails at" + w +
                          ")");
  }
  std::vector<std::vector<FiniteStructure>> classes;
  boost::dynamic_bitset<> done(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (done[i]) continue;
    const auto& row = sp.row(i);
    std::vector<FiniteStructure> cls;
    for (auto j = row.find_first(); j != boost::dynamic_bitset<>::npos; j = row.find_next(j)) cls.push_back(sp.model(j));
    done |= row;
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::vector<FiniteStructure>> mer_classes(const MerSpec& spec, const Theory& theory,
                                                      const std::vector<std::size_t>& sizes) {
  Budget budget;
  return mer_classes(spec, theory, sizes, budget);
}

ApproxReport check_approx_reduct(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                 unsigned threads) {
  const auto* ap = std::get_if<ByApproxReduct>(&spec.effective().form);
  if (!ap) throw ValidationError("'" + spec.name + "' is not an approximate reduct");
  if (ap->eps <= Rational(0)) throw ValidationError("eps must be positive");
  ap->metric.validate();
  Comparator c(spec);
  for (const auto& omega : coupled_assignments(spec.sig, scale)) {
    for (const auto& sizes : universe_plans(spec.sig, omega, scale)) {
      for (const auto& m : logic::models_of(theory, sizes, budget)) {
        auto p = c.prepare(m, budget);
        if (!p.invalid.empty()) throw ValidationError(p.invalid);
      }
    }
  }
  ApproxReport out{check_equivalence_relation(spec, theory, scale, budget, threads), Rational(0)};
  for (const auto& row : ap->metric.d) {
    for (const auto& x : row) {
      if (x < ap->eps && x > out.tightest_below_eps) out.tightest_below_eps = x;
    }
  }
  return out;
}

}  // namespace merlab::mer

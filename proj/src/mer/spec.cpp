#include <charconv>
#include <set>

#include "merlab/error.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/mer/mer.hpp"

namespace merlab::mer {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(whole) + "'");
    r = Rational(parse_int(text.substr(0, slash), whole), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw ValidationError("too many decimals in '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t ip = dot == 0 ? 0 : parse_int(text.substr(0, dot), whole);
    const std::int64_t fp = frac.empty() ? 0 : parse_int(frac, whole);
    r = Rational(ip * scale + fp, scale);
  } else {
    r = Rational(parse_int(text, whole));
  }
  if (r < Rational(0)) throw ValidationError("not a rational number: '" + std::string(whole) + "'");
  return negative ? -r : r;
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Metric Metric::discrete(std::size_t n) {
  Metric m{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(1)))};
  for (std::size_t i = 0; i < n; ++i) m.d[i][i] = Rational(0);
  return m;
}

Metric Metric::line(const std::vector<Rational>& xs) {
  Metric m{std::vector<std::vector<Rational>>(xs.size(), std::vector<Rational>(xs.size()))};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) m.d[i][j] = xs[i] > xs[j] ? xs[i] - xs[j] : xs[j] - xs[i];
  }
  return m;
}

void Metric::validate() const {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw ValidationError("metric table is not square");
    if (d[i][i] != Rational(0)) throw ValidationError("metric has d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (d[i][j] != d[j][i]) throw ValidationError("metric is not symmetric at " + at);
      if (i != j && d[i][j] <= Rational(0)) throw ValidationError("metric distance at " + at + " is not positive");
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][k] > d[i][j] + d[j][k]) {
          throw ValidationError("metric violates the triangle inequality: d(" + std::to_string(i) + "," +
                                std::to_string(k) + ") > d" + at + " + d(" + std::to_string(j) + "," +
                                std::to_string(k) + ")");
        }
      }
    }
  }
}

const MerSpec& MerSpec::effective() const {
  const MerSpec* s = this;
  for (int hops = 0; const auto* b = std::get_if<Builtin>(&s->form); ++hops) {
    if (!b->resolved || hops > 16) throw ValidationError("builtin MER '" + b->id + "' is not resolved");
    s = b->resolved.get();
  }
  return *s;
}

std::string MerSpec::kind() const {
  static const char* names[] = {"sentence", "reduct", "family", "approx", "cofinal", "builtin"};
  return names[form.index()];
}

namespace {

void require_vocab(const Formula& f, const CoupledSignature& sig) {
  if (!(f.vocabulary() == *sig.vocab)) throw SortError("formula is not over vocabulary '" + sig.vocab->name() + "'");
}

void require_coupled_free(const Formula& f, const CoupledSignature& sig, const char* what) {
  logic::validate_language(f, logic::Syntax::base());
  for (const auto& v : f.free_variables()) {
    if (!sig.is_coupled(v.sort)) {
      throw ValidationError(std::string(what) + " variable '" + v.name + "' lies on decoupled sort '" +
                            sig.vocab->sort_name(v.sort) + "'");
    }
  }
}

}  // namespace

MerSpec by_sentence(std::string name, CoupledSignature sig, Formula sentence) {
  require_vocab(sentence, sig);
  logic::validate_language(sentence, sig.pair_syntax());
  if (!sentence.is_sentence()) throw ValidationError("a MER sentence must be closed");
  return MerSpec{std::move(name), std::move(sig), BySentence{std::move(sentence)}};
}

MerSpec by_reduct(std::string name, CoupledSignature sig, std::vector<Formula> formulas) {
  for (const auto& f : formulas) {
    require_vocab(f, sig);
    require_coupled_free(f, sig, "reduct");
  }
  return MerSpec{std::move(name), std::move(sig), ByReduct{std::move(formulas)}};
}

MerSpec by_tower(std::string name, reduct::FamilyTower tower) {
  CoupledSignature sig = tower.signature();
  return MerSpec{std::move(name), std::move(sig), ByFamilyTower{std::move(tower)}};
}

MerSpec by_approx(std::string name, CoupledSignature sig, std::vector<Formula> labels, Metric metric, Rational eps) {
  if (labels.empty()) throw ValidationError("an approximate reduct needs at least one label");
  if (eps <= Rational(0)) throw ValidationError("eps must be positive");
  metric.validate();
  if (metric.size() != labels.size()) {
    throw ValidationError("labeling has " + std::to_string(labels.size()) + " labels but the metric has " +
                          std::to_string(metric.size()) + " points");
  }
  std::vector<Variable> vars;
  std::set<std::string> seen;
  for (const auto& f : labels) {
    require_vocab(f, sig);
    require_coupled_free(f, sig, "label");
    for (const auto& v : f.free_variables()) {
      if (seen.insert(v.name).second) vars.push_back(v);
    }
  }
  return MerSpec{std::move(name), std::move(sig),
                 ByApproxReduct{std::move(labels), std::move(vars), std::move(metric), eps}};
}

MerSpec cofinal_mer(std::string name, CoupledSignature sig, reduct::OrderSpec order, reduct::PartitionedFormula family) {
  require_vocab(order.order, sig);
  if (!sig.is_coupled(order.sort())) throw ValidationError("the ordered sort must be coupled");
  family.require_coupled_members(sig.coupled);
  reduct::CofinalOrder cof(std::move(order), std::move(family));
  return MerSpec{std::move(name), std::move(sig), ByCofinalOrder{std::move(cof)}};
}

MerSpec builtin(std::string name, std::string id, std::shared_ptr<const MerSpec> resolved) {
  if (!resolved) throw ValidationError("builtin MER '" + id + "' is not resolved");
  CoupledSignature sig = resolved->sig;
  return MerSpec{std::move(name), std::move(sig), Builtin{std::move(id), std::move(resolved)}};
}

Comparator::Comparator(const MerSpec& spec) : spec_(spec.effective()) {
  if (const auto* s = std::get_if<BySentence>(&spec_.form)) {
    sentence_.emplace(s->sentence);
  } else if (const auto* r = std::get_if<ByReduct>(&spec_.form)) {
    for (const auto& f : r->formulas) compiled_.emplace_back(f);
  } else if (const auto* a = std::get_if<ByApproxReduct>(&spec_.form)) {
    for (const auto& f : a->labels) compiled_.emplace_back(f, a->variables);
  }
}

namespace {

std::vector<logic::Tuple> tuples_over(const FiniteStructure& m, const std::vector<Variable>& vars) {
  std::vector<std::size_t> dims;
  for (const auto& v : vars) dims.push_back(m.size(v.sort));
  return logic::all_tuples(dims);
}

}  // namespace

Prepared Comparator::prepare(const FiniteStructure& m, Budget& budget) const {
  if (!(m.vocabulary() == spec_.vocabulary())) throw SortError("structure is not over the MER's vocabulary");
  Prepared p{m, {}, {}, {}, {}, {}};
  const auto ctx = logic::EvalContext::single(m);
  if (std::holds_alternative<ByReduct>(spec_.form)) {
    for (const auto& c : compiled_) {
      auto tuples = tuples_over(m, c.free_order());
      budget.charge(tuples.size() + 1, "reduct extent");
      boost::dynamic_bitset<> ext(tuples.size());
      for (std::size_t i = 0; i < tuples.size(); ++i) ext[i] = c.eval(ctx, tuples[i]);
      p.extents.push_back(std::move(ext));
    }
  } else if (const auto* t = std::get_if<ByFamilyTower>(&spec_.form)) {
    p.values = reduct::tower_values(m, t->tower, budget);
  } else if (const auto* a = std::get_if<ByApproxReduct>(&spec_.form)) {
    auto tuples = tuples_over(m, a->variables);
    budget.charge((tuples.size() + 1) * compiled_.size(), "labeling");
    for (const auto& tup : tuples) {
      std::uint32_t count = 0, label = 0;
      for (std::uint32_t l = 0; l < compiled_.size(); ++l) {
        if (compiled_[l].eval(ctx, tup)) {
          ++count;
          label = l;
        }
      }
      if (count != 1) {
        std::string at;
        for (std::size_t i = 0; i < tup.size(); ++i) at += (i ? "," : "") + std::to_string(tup[i]);
        p.invalid = "labeling is not a partition on " + logic::to_literal(m) + ": tuple (" + at + ") has " +
                    std::to_string(count) + " labels";
        return p;
      }
      p.labels.push_back(label);
    }
  } else if (const auto* c = std::get_if<ByCofinalOrder>(&spec_.form)) {
    try {
      p.order = c->cofinal.order.on(m);
    } catch (const ValidationError& e) {
      p.invalid = e.what();
      return p;
    }
    p.values.push_back(reduct::nset_value(m, c->cofinal.family, budget));
  }
  return p;
}

bool Comparator::compare(const Prepared& a, const Prepared& b, Budget& budget) const {
  if (!a.invalid.empty()) throw ValidationError(a.invalid);
  if (!b.invalid.empty()) throw ValidationError(b.invalid);
  budget.charge(1, "pair comparison");
  switch (spec_.form.index()) {
    case 0:
      return sentence_->eval(logic::EvalContext::pair(a.model, b.model));
    case 1:
      return a.extents == b.extents;
    case 2:
      return a.values == b.values;
    case 3: {
      const auto& ap = std::get<ByApproxReduct>(spec_.form);
      for (std::size_t i = 0; i < a.labels.size(); ++i) {
        if (!(ap.metric.d[a.labels[i]][b.labels[i]] < ap.eps)) return false;
      }
      return true;
    }
    case 4: {
      const auto& cof = std::get<ByCofinalOrder>(spec_.form).cofinal;
      if (a.order->le != b.order->le) return false;
      return reduct::nset_leq(a.values[0], b.values[0], *a.order, cof.order.depth) &&
             reduct::nset_leq(b.values[0], a.values[0], *a.order, cof.order.depth);
    }
  }
  throw Error("unresolved builtin MER");
}

bool equivalent(const MerSpec& spec, const FiniteStructure& m, const FiniteStructure& n) {
  if (!spec.sig.shares_coupled(m, n)) throw ValidationError("coupled universes differ");
  Budget budget;
  Comparator c(spec);
  return c.compare(c.prepare(m, budget), c.prepare(n, budget), budget);
}

}  // namespace merlab::mer

#ifndef MERLAB_MER_MER_HPP
#define MERLAB_MER_MER_HPP

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/logic/enumerate.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/logic/structure.hpp"
#include "merlab/pair/pair.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::mer {

using logic::BijectionFamily;
using logic::FiniteStructure;
using logic::Formula;
using logic::Theory;
using logic::Variable;
using logic::Vocabulary;
using pair::CoupledSignature;

// Compare only against Rational values: Boost 1.74 mixed rational/int
// comparisons recurse forever under C++20 rewritten operators.
using Rational = boost::rational<std::int64_t>;

// Accepts "3", "-2", "3/5" and "0.6".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Finite metric space on points 0..n-1 with exact distances.
struct Metric {
  std::vector<std::vector<Rational>> d;

  static Metric discrete(std::size_t n);
  // Points on a line; d(i, j) = |x_i - x_j|.
  static Metric line(const std::vector<Rational>& xs);
  std::size_t size() const { return d.size(); }
  // Symmetric, zero exactly on the diagonal, triangle inequality.
  void validate() const;
};

struct BySentence {
  Formula sentence;
};

struct ByReduct {
  std::vector<Formula> formulas;
};

struct ByFamilyTower {
  reduct::FamilyTower tower;
};

// Label i (a formula in the shared coupled variables) maps to point i.
// M and N are equivalent iff d(label_M(a), label_N(a)) < eps for every a.
struct ByApproxReduct {
  std::vector<Formula> labels;
  std::vector<Variable> variables;  // free variables of the labels, first occurrence order
  Metric metric;
  Rational eps;
};

struct ByCofinalOrder {
  reduct::CofinalOrder cofinal;
};

struct MerSpec;

struct Builtin {
  std::string id;
  std::shared_ptr<const MerSpec> resolved;
};

using MerForm = std::variant<BySentence, ByReduct, ByFamilyTower, ByApproxReduct, ByCofinalOrder, Builtin>;

struct MerSpec {
  std::string name;
  CoupledSignature sig;
  MerForm form;

  const Vocabulary& vocabulary() const { return *sig.vocab; }
  // Follows Builtin indirections.
  const MerSpec& effective() const;
  std::string kind() const;
};

// Validating constructors.
MerSpec by_sentence(std::string name, CoupledSignature sig, Formula sentence);
MerSpec by_reduct(std::string name, CoupledSignature sig, std::vector<Formula> formulas);
MerSpec by_tower(std::string name, reduct::FamilyTower tower);
MerSpec by_approx(std::string name, CoupledSignature sig, std::vector<Formula> labels, Metric metric, Rational eps);
MerSpec cofinal_mer(std::string name, CoupledSignature sig, reduct::OrderSpec order, reduct::PartitionedFormula family);
MerSpec builtin(std::string name, std::string id, std::shared_ptr<const MerSpec> resolved);

// Per-model data from which the relation is decided pairwise.
struct Prepared {
  FiniteStructure model;
  std::vector<boost::dynamic_bitset<>> extents;  // ByReduct
  std::vector<reduct::NSetValue> values;         // ByFamilyTower, ByCofinalOrder
  std::vector<std::uint32_t> labels;             // ByApproxReduct, per coupled tuple
  std::optional<reduct::BaseOrder> order;        // ByCofinalOrder
  std::string invalid;                           // nonempty: relation not defined on this model
};

class Comparator {
 public:
  explicit Comparator(const MerSpec& spec);

  Prepared prepare(const FiniteStructure& m, Budget& budget) const;
  // Both sides must be valid and share coupled universes.
  bool compare(const Prepared& a, const Prepared& b, Budget& budget) const;
  const MerSpec& spec() const { return spec_; }

 private:
  const MerSpec& spec_;
  std::optional<logic::CompiledFormula> sentence_;
  std::vector<logic::CompiledFormula> compiled_;
};

// Throws ValidationError on a coupled mismatch or a model where the
// relation is not defined (non-partition labeling, non-order).
bool equivalent(const MerSpec& spec, const FiniteStructure& m, const FiniteStructure& n);

// Per-sort bounds on universe sizes; `min` empty means 0 everywhere.
struct Scale {
  std::vector<std::size_t> max;
  std::vector<std::size_t> min;

  static Scale uniform(const Vocabulary& v, std::size_t n) { return Scale{std::vector<std::size_t>(v.sort_count(), n), {}}; }
  static Scale exact(std::vector<std::size_t> sizes) { return Scale{sizes, sizes}; }
  std::size_t lower(logic::SortId s) const { return min.empty() ? 0 : min.at(s); }
  // Lower bounds checked against the upper ones; ValidationError otherwise.
  void validate(std::size_t sort_count) const;
};

// Every coupled-size assignment (Omega) at the scale, in lexicographic order.
std::vector<std::vector<std::size_t>> coupled_assignments(const CoupledSignature& sig, const Scale& scale);

// All models of the theory whose coupled universes have the sizes of
// `omega`, decoupled sizes up to the scale. Order: decoupled sizes
// lexicographically, then canonical order. The relation is materialized as
// one bitset row per model.
class ModelSpace {
 public:
  ModelSpace(const MerSpec& spec, const Theory& theory, const std::vector<std::size_t>& omega, const Scale& scale,
             Budget& budget, unsigned threads = 1);
  // Exactly the given universes.
  ModelSpace(const MerSpec& spec, const Theory& theory, const std::vector<std::size_t>& sizes, Budget& budget,
             unsigned threads = 1);

  std::size_t size() const { return models_.size(); }
  const std::vector<FiniteStructure>& models() const { return models_; }
  const FiniteStructure& model(std::size_t i) const { return models_[i]; }
  const std::vector<std::size_t>& omega() const { return omega_; }
  // Index of the first model where the relation is undefined, if any.
  std::optional<std::size_t> first_invalid() const;
  const std::string& invalid_reason(std::size_t i) const { return prepared_[i].invalid; }
  bool related(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const boost::dynamic_bitset<>& row(std::size_t i) const { return rows_[i]; }
  std::optional<std::size_t> index_of(const FiniteStructure& m) const;

  // Coupled-sort bijections at omega, lexicographic; index 0 is the identity.
  const std::vector<BijectionFamily>& bijections() const;
  // act(f, i) = index of transport(model i, bijection f).
  std::size_t act(std::size_t f, std::size_t i) const;
  std::size_t inverse_of(std::size_t f) const;

 private:
  void build(const MerSpec& spec, Budget& budget, unsigned threads);
  void build_actions() const;

  std::vector<std::size_t> omega_;
  std::vector<bool> coupled_;
  std::vector<FiniteStructure> models_;
  std::vector<Prepared> prepared_;
  std::vector<boost::dynamic_bitset<>> rows_;
  std::unordered_map<FiniteStructure, std::size_t, logic::StructureHash> index_;
  mutable std::vector<BijectionFamily> bijections_;
  mutable std::vector<std::size_t> inverse_;
  mutable std::vector<std::vector<std::size_t>> act_;
};

struct ErVerdict {
  bool holds = true;
  std::string kind;  // reflexivity | symmetry | transitivity | not-well-defined
  std::vector<FiniteStructure> witnesses;
  std::string detail;
  std::size_t models_checked = 0;
  std::size_t assignments_checked = 0;
};

// Per Omega in order: not-well-defined, reflexivity, symmetry (first pair),
// transitivity (first triple). The first failing Omega decides.
ErVerdict check_equivalence_relation(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                     unsigned threads = 1);
ErVerdict check_equivalence_relation(const MerSpec& spec, const Theory& theory, const Scale& scale);

// The ER check on one materialized space; nullopt when it holds there.
std::optional<ErVerdict> verify_space(const ModelSpace& space);

// Re-decides a reported counterexample from its witness structures.
bool replay_counterexample(const MerSpec& spec, const ErVerdict& verdict);

// f in G(M, N) iff equivalent(M, transport(N, f^-1)). Coupled sorts only;
// decoupled maps are the identity.
std::vector<BijectionFamily> groupoid_morphisms(const MerSpec& spec, const FiniteStructure& m,
                                                const FiniteStructure& n, Budget& budget);
std::vector<BijectionFamily> groupoid_morphisms(const MerSpec& spec, const FiniteStructure& m,
                                                const FiniteStructure& n);

struct GroupoidVerdict {
  bool holds = true;
  std::string law;  // identity | inverse | composition | not-well-defined
  std::vector<FiniteStructure> witnesses;
  std::vector<BijectionFamily> morphisms;
  std::size_t models_checked = 0;
};

// Identity in G(M,M); f in G(M,N) => f^-1 in G(N,M); f in G(M,N), g in G(N,K)
// => g.f in G(M,K). Checked in that order per Omega.
GroupoidVerdict check_groupoid_laws(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                    unsigned threads = 1);
GroupoidVerdict check_groupoid_laws(const MerSpec& spec, const Theory& theory, const Scale& scale);

// Quotient of the models on fixed universes; classes in canonical order,
// sorted by least member. ValidationError (with the witness) unless the
// relation is an equivalence there.
std::vector<std::vector<FiniteStructure>> mer_classes(const MerSpec& spec, const Theory& theory,
                                                      const std::vector<std::size_t>& sizes, Budget& budget,
                                                      unsigned threads = 1);
std::vector<std::vector<FiniteStructure>> mer_classes(const MerSpec& spec, const Theory& theory,
                                                      const std::vector<std::size_t>& sizes);

// Sigma_n / Pi_n with atoms at rank 0.
struct PrefixClass {
  bool universal = true;  // Pi
  std::size_t n = 0;

  std::string name() const { return (universal ? "Pi" : "Sigma") + std::to_string(n); }
  friend bool operator==(const PrefixClass&, const PrefixClass&) = default;
};

// Implications and biconditionals are eliminated, the result is put in
// negation normal form, and quantifiers are pulled out with the extraction
// order that merges same-kind blocks of sibling conjuncts and disjuncts, so
// the least alternation count is reported. When both classes have the same
// n (or the sentence is quantifier-free) Pi is reported.
PrefixClass classify_prefix(const Formula& sentence);

struct ApproxReport {
  ErVerdict verdict;
  // Largest metric distance strictly below eps (0 when none): eps minus this
  // is the slack before some equivalent pair would separate.
  Rational tightest_below_eps;
};

// Validates eps and the metric, checks that the labeling is a partition on
// every model at scale (ValidationError otherwise), then runs the ER check.
ApproxReport check_approx_reduct(const MerSpec& spec, const Theory& theory, const Scale& scale, Budget& budget,
                                 unsigned threads = 1);

}  // namespace merlab::mer

#endif  // MERLAB_MER_MER_HPP

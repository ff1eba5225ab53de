#ifndef MERLAB_SYNTH_SYNTH_HPP
#define MERLAB_SYNTH_SYNTH_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merlab/budget.hpp"
#include "merlab/mer/mer.hpp"

namespace merlab::synth {

using logic::BijectionFamily;
using logic::Element;
using logic::FiniteStructure;
using logic::SortId;
using logic::Theory;
using mer::MerSpec;
using mer::Scale;

using Point = std::pair<SortId, Element>;
using PointTuple = std::vector<Point>;

// Points of the flagged sorts in sort order, elements ascending. Tuples of
// length l are indexed lexicographically over this list.
std::vector<Point> points_of(const FiniteStructure& m, const std::vector<bool>& on);
std::size_t tuple_count(std::size_t points, std::size_t len);
PointTuple tuple_at(const std::vector<Point>& points, std::size_t len, std::size_t index);

// Isomorphism class of a pointed structure, by its least member: the
// canonical-least image of the structure, then the least tuple among the
// images of the original tuple under maps realizing that image.
struct TypePoint {
  FiniteStructure model;
  PointTuple tuple;

  std::string encoding() const;
  friend bool operator==(const TypePoint&, const TypePoint&) = default;
};

// Canonical representatives of pointed models at scale with tuples of
// exactly `len` points on the flagged sorts (empty: all sorts). Order:
// canonical order of the structure, then the tuple.
std::vector<TypePoint> type_space(const Theory& theory, const Scale& scale, std::size_t len,
                                  const std::vector<bool>& on, Budget& budget);
std::vector<TypePoint> type_space(const Theory& theory, const Scale& scale, std::size_t len,
                                  const std::vector<bool>& on = {});

// One union performed by the closure. `left` E `right` on shared coupled
// universes and the identity link carries the tuple across: every morphism
// f in G(M, M') factors as M E f^-1 M' followed by the isomorphism f.
struct ProvenanceEdge {
  std::size_t a = 0, b = 0;  // type point ids
  FiniteStructure left, right;
  BijectionFamily morphism;
};

class TypePartition {
 public:
  struct CanonEntry {
    std::vector<BijectionFamily> automorphisms;
    // per length, per tuple index: type point id
    std::vector<std::vector<std::size_t>> ids;
  };

  const std::vector<TypePoint>& points() const { return points_; }
  // Class label per point; classes numbered by their least point.
  const std::vector<std::size_t>& labels() const { return labels_; }
  std::size_t class_count() const { return class_count_; }
  std::vector<std::vector<std::size_t>> classes() const;
  const std::vector<ProvenanceEdge>& edges() const { return edges_; }
  std::size_t max_len() const { return max_len_; }
  const std::vector<bool>& on() const { return on_; }
  const Scale& scale() const { return scale_; }

  // Type point ids of all tuples of `m` of length len. ValidationError when
  // m lies outside the partition's scale or theory.
  std::vector<std::size_t> type_ids(const FiniteStructure& m, std::size_t len) const;
  // type_ids for every length 0..max_len.
  std::vector<std::vector<std::size_t>> all_type_ids(const FiniteStructure& m, std::size_t max_len) const;

 private:
  friend class PartitionBuilder;

  std::vector<TypePoint> points_;
  std::vector<std::size_t> labels_;
  std::size_t class_count_ = 0;
  std::vector<ProvenanceEdge> edges_;
  std::size_t max_len_ = 0;
  std::vector<bool> on_;
  Scale scale_;
  std::map<FiniteStructure, CanonEntry, logic::StructureLess> canon_;
};

// Closure of the type-point relation under the groupoid of an ER-passing
// spec over every model at scale, tuples of length 0..max_len on the
// coupled sorts. ValidationError (with the witness) if the spec is not an
// ER at scale.
TypePartition groupoid_type_quotient(const MerSpec& spec, const Theory& theory, const Scale& scale,
                                     std::size_t max_len, Budget& budget, unsigned threads = 1);
TypePartition groupoid_type_quotient(const MerSpec& spec, const Theory& theory, const Scale& scale,
                                     std::size_t max_len);

struct InvariantProfile {
  // classes[l][i] = class label of the i-th l-tuple; classes[0] has the
  // label of the structure itself.
  std::vector<std::vector<std::size_t>> classes;

  std::string to_string() const;
  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

InvariantProfile invariant_profile(const FiniteStructure& m, const TypePartition& partition, std::size_t max_len);

struct YdleptVerdict {
  bool determined = true;
  std::optional<std::pair<FiniteStructure, FiniteStructure>> counterexample;
  std::size_t models_checked = 0;
  std::size_t class_count = 0;
};

// Determined iff equal profiles imply equivalence for all pairs on shared
// coupled universes at scale; otherwise the least such inequivalent pair.
YdleptVerdict ydlept_at_scale(const MerSpec& spec, const Theory& theory, const Scale& scale, std::size_t max_len,
                              Budget& budget, unsigned threads = 1);
YdleptVerdict ydlept_at_scale(const MerSpec& spec, const Theory& theory, const Scale& scale, std::size_t max_len);

struct DensityReport {
  std::size_t tuple_len = 0;
  std::vector<PointTuple> tuples;
  std::vector<std::vector<std::size_t>> orbits;           // of G(M,M), tuple indices
  std::vector<std::vector<std::size_t>> profile_classes;  // tuple indices
  bool refines = true;  // every orbit inside one profile class
  bool equal = true;
};

// G(M,M)-orbits against profile classes on the tuple_len-tuples of m.
DensityReport density_report(const MerSpec& spec, const FiniteStructure& m, const TypePartition& partition,
                             std::size_t tuple_len);

}  // namespace merlab::synth

#endif  // MERLAB_SYNTH_SYNTH_HPP

#include "merlab/synth/synth.hpp"

#include <boost/pending/disjoint_sets.hpp>
#include <algorithm>
#include <set>

#include "merlab/error.hpp"
#include "merlab/logic/iso.hpp"
#include "merlab/parallel.hpp"

namespace merlab::synth {

std::vector<Point> points_of(const FiniteStructure& m, const std::vector<bool>& on) {
  std::vector<Point> out;
  for (SortId s = 0; s < m.sizes().size(); ++s) {
    if (!on.empty() && !on.at(s)) continue;
    for (Element e = 0; e < m.size(s); ++e) out.emplace_back(s, e);
  }
  return out;
}

std::size_t tuple_count(std::size_t points, std::size_t len) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < len; ++i) n *= points;
  return n;
}

PointTuple tuple_at(const std::vector<Point>& points, std::size_t len, std::size_t index) {
  PointTuple t(len);
  for (std::size_t i = len; i-- > 0;) {
    t[i] = points[index % points.size()];
    index /= points.size();
  }
  return t;
}

std::string TypePoint::encoding() const {
  std::string s = logic::to_literal(model) + " @ (";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    s += (i ? ", " : "") + model.vocabulary().sort_name(tuple[i].first) + ":" + std::to_string(tuple[i].second);
  }
  return s + ")";
}

std::vector<std::vector<std::size_t>> TypePartition::classes() const {
  std::vector<std::vector<std::size_t>> out(class_count_);
  for (std::size_t p = 0; p < labels_.size(); ++p) out[labels_[p]].push_back(p);
  return out;
}

namespace {

// Tuple indices are base-|points| numerals; a bijection family acts point-wise.
class TupleMap {
 public:
  TupleMap(const FiniteStructure& m, const std::vector<bool>& on) {
    std::size_t offset = 0;
    for (SortId s = 0; s < m.sizes().size(); ++s) {
      offset_.push_back(offset);
      if (on.empty() || on.at(s)) offset += m.size(s);
    }
    points_ = points_of(m, on);
  }

  std::size_t points() const { return points_.size(); }

  std::size_t apply(const BijectionFamily& f, std::size_t len, std::size_t index) const {
    const std::size_t p = points_.size();
    std::size_t out = 0, scale = 1;
    for (std::size_t i = 0; i < len; ++i) {
      const auto [s, e] = points_[index % p];
      out += (offset_[s] + f.apply(s, e)) * scale;
      scale *= p;
      index /= p;
    }
    return out;
  }

 private:
  std::vector<std::size_t> offset_;
  std::vector<Point> points_;
};

struct Canonical {
  FiniteStructure form;
  BijectionFamily to_form;  // to_form(m) = form
};

Canonical canonical_form(const FiniteStructure& m, Budget& budget) {
  const auto bij = logic::all_bijections(m.sizes(), std::vector<bool>(m.sizes().size(), true));
  budget.charge(bij.size(), "canonical form");
  std::optional<Canonical> best;
  for (const auto& f : bij) {
    auto img = m.image(f);
    if (!best || canonical_compare(img, best->form) < 0) best = Canonical{std::move(img), f};
  }
  return *best;
}

}  // namespace

// Builds the canonical table and the type point numbering shared by
// type_space and the quotient.
class PartitionBuilder {
 public:
  PartitionBuilder(TypePartition& out, std::vector<bool> on, std::size_t max_len, Scale scale) : out_(out) {
    out_.on_ = std::move(on);
    out_.max_len_ = max_len;
    out_.scale_ = std::move(scale);
  }

  void add(const FiniteStructure& m, Budget& budget) {
    auto c = canonical_form(m, budget);
    out_.canon_.try_emplace(std::move(c.form));
  }

  // Orbit representatives under the automorphisms; ids in (length,
  // structure, tuple) order.
  void number(Budget& budget) {
    std::vector<std::vector<std::vector<std::size_t>>> reps;  // per canon, per len, per tuple: rep index
    for (auto& [form, entry] : out_.canon_) {
      entry.automorphisms.clear();
      for (const auto& f : logic::all_bijections(form.sizes(), std::vector<bool>(form.sizes().size(), true))) {
        if (form.image(f) == form) entry.automorphisms.push_back(f);
      }
      const TupleMap tm(form, out_.on_);
      std::vector<std::vector<std::size_t>> per_len(out_.max_len_ + 1);
      for (std::size_t len = 0; len <= out_.max_len_; ++len) {
        const std::size_t n = tuple_count(tm.points(), len);
        budget.charge(n * entry.automorphisms.size() + 1, "type space");
        per_len[len].resize(n);
        for (std::size_t t = 0; t < n; ++t) {
          std::size_t best = t;
          for (const auto& g : entry.automorphisms) best = std::min(best, tm.apply(g, len, t));
          per_len[len][t] = best;
        }
      }
      reps.push_back(std::move(per_len));
    }
    for (std::size_t len = 0; len <= out_.max_len_; ++len) {
      std::size_t c = 0;
      for (auto& [form, entry] : out_.canon_) {
        entry.ids.resize(out_.max_len_ + 1);
        const auto& rep = reps[c++][len];
        entry.ids[len].assign(rep.size(), 0);
        const auto points = points_of(form, out_.on_);
        for (std::size_t t = 0; t < rep.size(); ++t) {
          if (rep[t] != t) continue;
          entry.ids[len][t] = out_.points_.size();
          out_.points_.push_back(TypePoint{form, tuple_at(points, len, t)});
        }
        for (std::size_t t = 0; t < rep.size(); ++t) entry.ids[len][t] = entry.ids[len][rep[t]];
      }
    }
  }

  void close(const std::vector<mer::ModelSpace>& spaces, Budget& budget) {
    boost::disjoint_sets_with_storage<> uf(out_.points_.size());
    for (const auto& sp : spaces) {
      boost::dynamic_bitset<> done(sp.size());
      for (std::size_t i = 0; i < sp.size(); ++i) {
        if (done[i]) continue;
        const auto& row = sp.row(i);
        done |= row;
        const auto base = out_.all_type_ids(sp.model(i), out_.max_len_);
        for (auto k = row.find_next(i); k != boost::dynamic_bitset<>::npos; k = row.find_next(k)) {
          const auto all = out_.all_type_ids(sp.model(k), out_.max_len_);
          for (std::size_t len = 0; len <= out_.max_len_; ++len) {
            const auto& ids = all[len];
            budget.charge(ids.size() + 1, "type quotient");
            for (std::size_t t = 0; t < ids.size(); ++t) {
              const auto ra = uf.find_set(base[len][t]), rb = uf.find_set(ids[t]);
              if (ra == rb) continue;
              uf.link(ra, rb);
              out_.edges_.push_back(ProvenanceEdge{std::min(base[len][t], ids[t]), std::max(base[len][t], ids[t]),
                                                   sp.model(i), sp.model(k),
                                                   BijectionFamily::identity(sp.model(i).sizes().size())});
            }
          }
        }
      }
    }
    std::map<std::size_t, std::size_t> label_of_root;
    out_.labels_.resize(out_.points_.size());
    for (std::size_t p = 0; p < out_.points_.size(); ++p) {
      const auto root = uf.find_set(p);
      auto it = label_of_root.try_emplace(root, label_of_root.size()).first;
      out_.labels_[p] = it->second;
    }
    out_.class_count_ = label_of_root.size();
  }

 private:
  TypePartition& out_;
};

std::vector<std::size_t> TypePartition::type_ids(const FiniteStructure& m, std::size_t len) const {
  return all_type_ids(m, len)[len];
}

std::vector<std::vector<std::size_t>> TypePartition::all_type_ids(const FiniteStructure& m, std::size_t max_len) const {
  if (max_len > max_len_) throw ValidationError("tuple length exceeds the partition's max_len");
  for (SortId s = 0; s < m.sizes().size(); ++s) {
    if (s >= scale_.max.size() || m.size(s) > scale_.max[s] || m.size(s) < scale_.lower(s)) {
      throw ValidationError("structure lies outside the partition's scale");
    }
  }
  Budget budget;
  const auto c = canonical_form(m, budget);
  auto it = canon_.find(c.form);
  if (it == canon_.end()) throw ValidationError("structure is not a model covered by the partition");
  const TupleMap tm(m, on_);
  std::vector<std::vector<std::size_t>> out(max_len + 1);
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::size_t n = tuple_count(tm.points(), len);
    out[len].resize(n);
    for (std::size_t t = 0; t < n; ++t) out[len][t] = it->second.ids[len][tm.apply(c.to_form, len, t)];
  }
  return out;
}

namespace {

std::vector<FiniteStructure> models_at(const Theory& theory, const Scale& scale, Budget& budget) {
  const std::size_t n = theory.vocabulary().sort_count();
  scale.validate(n);
  std::vector<std::size_t> lo(n);
  for (SortId s = 0; s < n; ++s) lo[s] = scale.lower(s);
  std::vector<FiniteStructure> out;
  for (const auto& sizes : logic::size_vectors(lo, scale.max)) {
    for (auto& m : logic::models_of(theory, sizes, budget)) out.push_back(std::move(m));
  }
  return out;
}

std::string witness_text(const mer::ErVerdict& v) {
  std::string w;
  for (const auto& m : v.witnesses) w += " [" + logic::to_literal(m) + "]";
  return w;
}

struct Built {
  TypePartition partition;
  std::vector<mer::ModelSpace> spaces;
};

Built build(const MerSpec& spec, const Theory& theory, const Scale& scale, std::size_t max_len, Budget& budget,
            unsigned threads) {
  Built b;
  for (const auto& omega : mer::coupled_assignments(spec.sig, scale)) {
    b.spaces.emplace_back(spec, theory, omega, scale, budget, threads);
    if (auto bad = mer::verify_space(b.spaces.back())) {
      throw ValidationError("'" + spec.name + "' is not an equivalence relation at this scale (" + bad->kind +
                            " fails at" + witness_text(*bad) + ")");
    }
  }
  PartitionBuilder pb(b.partition, spec.sig.coupled, max_len, scale);
  for (const auto& sp : b.spaces) {
    for (const auto& m : sp.models()) pb.add(m, budget);
  }
  pb.number(budget);
  pb.close(b.spaces, budget);
  return b;
}

}  // namespace

std::vector<TypePoint> type_space(const Theory& theory, const Scale& scale, std::size_t len,
                                  const std::vector<bool>& on, Budget& budget) {
  TypePartition tp;
  PartitionBuilder pb(tp, on, len, scale);
  for (const auto& m : models_at(theory, scale, budget)) pb.add(m, budget);
  pb.number(budget);
  std::vector<TypePoint> out;
  for (const auto& p : tp.points()) {
    if (p.tuple.size() == len) out.push_back(p);
  }
  return out;
}

std::vector<TypePoint> type_space(const Theory& theory, const Scale& scale, std::size_t len,
                                  const std::vector<bool>& on) {
  Budget budget;
  return type_space(theory, scale, len, on, budget);
}

TypePartition groupoid_type_quotient(const MerSpec& spec, const Theory& theory, const Scale& scale,
                                     std::size_t max_len, Budget& budget, unsigned threads) {
  return build(spec, theory, scale, max_len, budget, threads).partition;
}

TypePartition groupoid_type_quotient(const MerSpec& spec, const Theory& theory, const Scale& scale,
                                     std::size_t max_len) {
  Budget budget;
  return groupoid_type_quotient(spec, theory, scale, max_len, budget);
}

std::string InvariantProfile::to_string() const {
  std::string s;
  for (std::size_t len = 0; len < classes.size(); ++len) {
    s += (len ? " | " : "") + std::to_string(len) + ":";
    for (std::size_t i = 0; i < classes[len].size(); ++i) s += (i ? "," : "") + std::to_string(classes[len][i]);
  }
  return s;
}

InvariantProfile invariant_profile(const FiniteStructure& m, const TypePartition& partition, std::size_t max_len) {
  if (max_len > partition.max_len()) throw ValidationError("profile length exceeds the partition's max_len");
  InvariantProfile p{partition.all_type_ids(m, max_len)};
  for (auto& ids : p.classes) {
    for (auto& id : ids) id = partition.labels()[id];
  }
  return p;
}

YdleptVerdict ydlept_at_scale(const MerSpec& spec, const Theory& theory, const Scale& scale, std::size_t max_len,
                              Budget& budget, unsigned threads) {
  const Built b = build(spec, theory, scale, max_len, budget, threads);
  YdleptVerdict v;
  v.class_count = b.partition.class_count();
  for (const auto& sp : b.spaces) {
    v.models_checked += sp.size();
    std::vector<InvariantProfile> profiles(sp.size());
    parallel_for(sp.size(), threads,
                 [&](std::size_t i) { profiles[i] = invariant_profile(sp.model(i), b.partition, max_len); });
    std::map<std::vector<std::vector<std::size_t>>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < sp.size(); ++i) groups[profiles[i].classes].push_back(i);
    std::optional<std::pair<std::size_t, std::size_t>> least;
    for (const auto& [key, members] : groups) {
      bool found = false;
      for (std::size_t a = 0; a < members.size() && !found; ++a) {
        for (std::size_t c = a + 1; c < members.size(); ++c) {
          if (!sp.related(members[a], members[c])) {
            const std::pair<std::size_t, std::size_t> cand{members[a], members[c]};
            if (!least || cand < *least) least = cand;
            found = true;
            break;
          }
        }
      }
    }
    if (least) {
      v.determined = false;
      v.counterexample = std::make_pair(sp.model(least->first), sp.model(least->second));
      return v;
    }
  }
  return v;
}

YdleptVerdict ydlept_at_scale(const MerSpec& spec, const Theory& theory, const Scale& scale, std::size_t max_len) {
  Budget budget;
  return ydlept_at_scale(spec, theory, scale, max_len, budget);
}

DensityReport density_report(const MerSpec& spec, const FiniteStructure& m, const TypePartition& partition,
                             std::size_t tuple_len) {
  DensityReport r;
  r.tuple_len = tuple_len;
  const auto points = points_of(m, partition.on());
  const std::size_t n = tuple_count(points.size(), tuple_len);
  for (std::size_t t = 0; t < n; ++t) r.tuples.push_back(tuple_at(points, tuple_len, t));

  const TupleMap tm(m, partition.on());
  boost::disjoint_sets_with_storage<> uf(n);
  for (const auto& f : mer::groupoid_morphisms(spec, m, m)) {
    for (std::size_t t = 0; t < n; ++t) uf.union_set(t, tm.apply(f, tuple_len, t));
  }
  std::map<std::size_t, std::size_t> orbit_of_root;
  for (std::size_t t = 0; t < n; ++t) {
    auto it = orbit_of_root.try_emplace(uf.find_set(t), r.orbits.size()).first;
    if (it->second == r.orbits.size()) r.orbits.emplace_back();
    r.orbits[it->second].push_back(t);
  }

  const auto profile = invariant_profile(m, partition, tuple_len).classes[tuple_len];
  std::map<std::size_t, std::size_t> class_index;
  for (std::size_t t = 0; t < n; ++t) {
    auto it = class_index.try_emplace(profile[t], r.profile_classes.size()).first;
    if (it->second == r.profile_classes.size()) r.profile_classes.emplace_back();
    r.profile_classes[it->second].push_back(t);
  }
  for (const auto& orbit : r.orbits) {
    for (std::size_t t : orbit) {
      if (profile[t] != profile[orbit.front()]) r.refines = false;
    }
  }
  r.equal = r.refines && r.orbits.size() == r.profile_classes.size();
  return r;
}

}  // namespace merlab::synth

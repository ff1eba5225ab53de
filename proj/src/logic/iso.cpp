#include "merlab/logic/iso.hpp"

#include <algorithm>
#include <numeric>

#include "merlab/error.hpp"

namespace merlab::logic {

namespace {

// Occurrence counts of an element per (relation, position) of its sort.
std::vector<std::vector<std::vector<std::size_t>>> signatures(const FiniteStructure& m) {
  const auto& v = m.vocabulary();
  std::vector<std::vector<std::vector<std::size_t>>> sig(v.sort_count());
  std::vector<std::vector<std::size_t>> slot(v.relation_count());
  std::vector<std::size_t> width(v.sort_count(), 0);
  for (RelId r = 0; r < v.relation_count(); ++r) {
    for (SortId s : v.relation(r).profile) slot[r].push_back(width[s]++);
  }
  for (SortId s = 0; s < v.sort_count(); ++s) sig[s].assign(m.size(s), std::vector<std::size_t>(width[s], 0));
  for (RelId r = 0; r < v.relation_count(); ++r) {
    const auto& prof = v.relation(r).profile;
    for (const auto& t : m.extent(r)) {
      for (std::size_t i = 0; i < t.size(); ++i) ++sig[prof[i]][t[i]][slot[r][i]];
    }
  }
  return sig;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteStructure& m, const FiniteStructure& n, Budget& budget, const IsoOptions& opt)
      : m_(m), n_(n), v_(m.vocabulary()), budget_(budget), opt_(opt) {
    sig_m_ = signatures(m);
    sig_n_ = signatures(n);
    for (SortId s = 0; s < v_.sort_count(); ++s) {
      for (Element e = 0; e < m.size(s); ++e) order_.emplace_back(s, e);
      map_.emplace_back(m.size(s), 0);
      used_.emplace_back(n.size(s), false);
    }
  }

  std::vector<BijectionFamily> run() {
    extend(0);
    return std::move(out_);
  }

 private:
  bool done() const { return opt_.limit != 0 && out_.size() >= opt_.limit; }

  void extend(std::size_t k) {
    if (done()) return;
    if (k == order_.size()) {
      BijectionFamily f;
      for (const auto& p : map_) f.maps.emplace_back(p);
      out_.push_back(std::move(f));
      return;
    }
    const auto [s, e] = order_[k];
    std::optional<Element> pin;
    if (!opt_.pinned.empty()) pin = opt_.pinned.at(s).at(e);
    for (Element c = 0; c < n_.size(s); ++c) {
      if (used_[s][c] || (pin && *pin != c) || sig_m_[s][e] != sig_n_[s][c]) continue;
      budget_.charge(1, "isomorphism search");
      map_[s][e] = c;
      if (!consistent(s, e)) continue;
      used_[s][c] = true;
      extend(k + 1);
      used_[s][c] = false;
      if (done()) return;
    }
  }

  std::size_t assigned_count(SortId t, SortId s, Element e) const {
    if (t < s) return m_.size(t);
    if (t == s) return e + 1;
    return 0;
  }

  // Every tuple that involves (s,e) and otherwise only assigned elements
  // must be preserved in both directions.
  bool consistent(SortId s, Element e) const {
    for (RelId r = 0; r < v_.relation_count(); ++r) {
      const auto& prof = v_.relation(r).profile;
      for (std::size_t i = 0; i < prof.size(); ++i) {
        if (prof[i] != s) continue;
        std::vector<std::size_t> range(prof.size());
        bool empty = false;
        for (std::size_t j = 0; j < prof.size(); ++j) {
          range[j] = j == i ? 1 : assigned_count(prof[j], s, e);
          if (range[j] == 0) empty = true;
        }
        if (empty) continue;
        Tuple t(prof.size(), 0);
        Tuple img(prof.size(), 0);
        while (true) {
          for (std::size_t j = 0; j < prof.size(); ++j) {
            const Element x = j == i ? e : t[j];
            img[j] = map_[prof[j]][x];
            t[j] = x;
          }
          if (m_.holds(r, t) != n_.holds(r, img)) return false;
          // odometer over the non-pinned positions
          std::size_t j = prof.size();
          while (j-- > 0) {
            if (j == i) continue;
            if (++t[j] < range[j]) break;
            t[j] = 0;
          }
          if (j == static_cast<std::size_t>(-1)) break;
        }
      }
    }
    return true;
  }

  const FiniteStructure& m_;
  const FiniteStructure& n_;
  const Vocabulary& v_;
  Budget& budget_;
  const IsoOptions& opt_;
  std::vector<std::vector<std::vector<std::size_t>>> sig_m_, sig_n_;
  std::vector<std::pair<SortId, Element>> order_;
  std::vector<Permutation> map_;
  std::vector<std::vector<bool>> used_;
  std::vector<BijectionFamily> out_;
};

}  // namespace

std::vector<BijectionFamily> find_isomorphisms(const FiniteStructure& m, const FiniteStructure& n, Budget& budget,
                                               const IsoOptions& options) {
  if (!(m.vocabulary() == n.vocabulary())) throw SortError("isomorphism between structures over different vocabularies");
  if (m.sizes() != n.sizes()) return {};
  if (!options.pinned.empty() && options.pinned.size() != m.sizes().size()) {
    throw ValidationError("pinned map has the wrong number of sorts");
  }
  for (RelId r = 0; r < m.vocabulary().relation_count(); ++r) {
    if (m.bits(r).count() != n.bits(r).count()) return {};
  }
  return IsoSearch(m, n, budget, options).run();
}

std::vector<BijectionFamily> find_isomorphisms(const FiniteStructure& m, const FiniteStructure& n) {
  Budget budget;
  return find_isomorphisms(m, n, budget);
}

bool is_isomorphism(const FiniteStructure& m, const FiniteStructure& n, const BijectionFamily& f) {
  if (!(m.vocabulary() == n.vocabulary()) || m.sizes() != n.sizes()) return false;
  if (f.maps.size() != m.sizes().size()) return false;
  for (SortId s = 0; s < m.sizes().size(); ++s) {
    if (f.maps[s] && !is_permutation_of(*f.maps[s], m.size(s))) return false;
  }
  return m.image(f) == n;
}

std::vector<BijectionFamily> all_bijections(const std::vector<std::size_t>& sizes, const std::vector<bool>& moving) {
  if (moving.size() != sizes.size()) throw ValidationError("sort mask has the wrong length");
  std::vector<std::vector<Permutation>> per_sort(sizes.size());
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    Permutation p(sizes[s]);
    std::iota(p.begin(), p.end(), Element{0});
    if (!moving[s]) {
      per_sort[s].push_back(p);
      continue;
    }
    do {
      per_sort[s].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<BijectionFamily> out;
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    BijectionFamily f;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      if (moving[s]) {
        f.maps.emplace_back(per_sort[s][idx[s]]);
      } else {
        f.maps.emplace_back();
      }
    }
    out.push_back(std::move(f));
    std::size_t s = sizes.size();
    while (s-- > 0) {
      if (++idx[s] < per_sort[s].size()) break;
      idx[s] = 0;
    }
    if (s == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace merlab::logic

#include "merlab/logic/structure.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "merlab/error.hpp"

namespace merlab::logic {

bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Element e : p) {
    if (e >= n || seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

BijectionFamily BijectionFamily::inverse() const {
  BijectionFamily inv;
  inv.maps.reserve(maps.size());
  for (const auto& m : maps) {
    if (!m) {
      inv.maps.emplace_back();
      continue;
    }
    Permutation p(m->size());
    for (Element i = 0; i < m->size(); ++i) p[(*m)[i]] = i;
    inv.maps.emplace_back(std::move(p));
  }
  return inv;
}

BijectionFamily BijectionFamily::after(const BijectionFamily& first) const {
  BijectionFamily out;
  for (std::size_t s = 0; s < maps.size(); ++s) {
    const auto& g = maps[s];
    const auto& f = first.maps.at(s);
    if (!g && !f) {
      out.maps.emplace_back();
    } else if (!g) {
      out.maps.push_back(f);
    } else if (!f) {
      out.maps.push_back(g);
    } else {
      Permutation p(f->size());
      for (Element i = 0; i < f->size(); ++i) p[i] = (*g).at((*f)[i]);
      out.maps.emplace_back(std::move(p));
    }
  }
  return out;
}

bool BijectionFamily::is_identity() const {
  for (const auto& m : maps) {
    if (!m) continue;
    for (Element i = 0; i < m->size(); ++i) {
      if ((*m)[i] != i) return false;
    }
  }
  return true;
}

bool operator==(const BijectionFamily& a, const BijectionFamily& b) {
  if (a.maps.size() != b.maps.size()) return false;
  for (std::size_t s = 0; s < a.maps.size(); ++s) {
    const auto& x = a.maps[s];
    const auto& y = b.maps[s];
    if (x && y) {
      if (*x != *y) return false;
      continue;
    }
    // identity placeholder versus explicit permutation
    const auto& explicit_map = x ? x : y;
    if (!explicit_map) continue;
    for (Element i = 0; i < explicit_map->size(); ++i) {
      if ((*explicit_map)[i] != i) return false;
    }
  }
  return true;
}

std::vector<Tuple> all_tuples(const std::vector<std::size_t>& dims) {
  std::vector<Tuple> out;
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (total == 0) return out;
  out.reserve(total);
  Tuple cur(dims.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    out.push_back(cur);
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (++cur[i] < dims[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

FiniteStructure::FiniteStructure(VocabularyPtr vocab, std::vector<std::size_t> sizes)
    : vocab_(std::move(vocab)), sizes_(std::move(sizes)) {
  if (!vocab_) throw ValidationError("structure needs a vocabulary");
  if (sizes_.size() != vocab_->sort_count()) {
    throw ValidationError("structure over '" + vocab_->name() + "' needs " +
                          std::to_string(vocab_->sort_count()) + " universe sizes, got " +
                          std::to_string(sizes_.size()));
  }
  for (const auto& rel : vocab_->relations()) {
    std::vector<std::size_t> strides(rel.arity());
    std::size_t count = 1;
    for (std::size_t i = rel.arity(); i-- > 0;) {
      strides[i] = count;
      count *= sizes_[rel.profile[i]];
    }
    strides_.push_back(std::move(strides));
    bits_.emplace_back(count);
  }
}

std::size_t FiniteStructure::index_of(RelId r, std::span<const Element> tuple) const {
  const auto& rel = vocab_->relation(r);
  if (tuple.size() != rel.arity()) {
    throw SortError("relation '" + rel.name + "' has arity " + std::to_string(rel.arity()) +
                    ", got a tuple of length " + std::to_string(tuple.size()));
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= sizes_[rel.profile[i]]) {
      throw ValidationError("element " + std::to_string(tuple[i]) + " outside universe of sort '" +
                            vocab_->sort_name(rel.profile[i]) + "' in relation '" + rel.name + "'");
    }
    idx += tuple[i] * strides_[r][i];
  }
  return idx;
}

Tuple FiniteStructure::tuple_at(RelId r, std::size_t index) const {
  const auto& rel = vocab_->relation(r);
  Tuple t(rel.arity());
  for (std::size_t i = 0; i < rel.arity(); ++i) {
    t[i] = index / strides_[r][i];
    index %= strides_[r][i];
  }
  return t;
}

void FiniteStructure::set(RelId r, std::span<const Element> tuple, bool value) {
  bits_.at(r)[index_of(r, tuple)] = value;
}

void FiniteStructure::set_bits(RelId r, boost::dynamic_bitset<> bits) {
  if (bits.size() != bits_.at(r).size()) throw ValidationError("extent bitset has the wrong size");
  bits_[r] = std::move(bits);
}

std::vector<Tuple> FiniteStructure::extent(RelId r) const {
  std::vector<Tuple> out;
  for (auto i = bits_[r].find_first(); i != boost::dynamic_bitset<>::npos; i = bits_[r].find_next(i)) {
    out.push_back(tuple_at(r, i));
  }
  return out;
}

std::size_t FiniteStructure::total_bits() const {
  std::size_t n = 0;
  for (const auto& b : bits_) n += b.size();
  return n;
}

FiniteStructure FiniteStructure::image(const BijectionFamily& f) const {
  if (f.maps.size() != sizes_.size()) throw ValidationError("bijection family has the wrong number of sorts");
  for (SortId s = 0; s < sizes_.size(); ++s) {
    if (f.maps[s] && !is_permutation_of(*f.maps[s], sizes_[s])) {
      throw ValidationError("map on sort '" + vocab_->sort_name(s) + "' is not a bijection of its universe");
    }
  }
  FiniteStructure out(vocab_, sizes_);
  for (RelId r = 0; r < bits_.size(); ++r) {
    const auto& rel = vocab_->relation(r);
    const auto& src = bits_[r];
    for (auto i = src.find_first(); i != boost::dynamic_bitset<>::npos; i = src.find_next(i)) {
      std::size_t rest = i;
      std::size_t target = 0;
      for (std::size_t k = 0; k < rel.arity(); ++k) {
        const Element e = rest / strides_[r][k];
        rest %= strides_[r][k];
        target += f.apply(rel.profile[k], e) * strides_[r][k];
      }
      out.bits_[r].set(target);
    }
  }
  return out;
}

std::size_t FiniteStructure::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (auto s : sizes_) mix(s);
  for (const auto& b : bits_) {
    std::vector<boost::dynamic_bitset<>::block_type> blocks;
    boost::to_block_range(b, std::back_inserter(blocks));
    for (auto w : blocks) mix(static_cast<std::size_t>(w));
    mix(b.size());
  }
  return h;
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.sizes_ == b.sizes_ && a.bits_ == b.bits_ && *a.vocab_ == *b.vocab_;
}

std::strong_ordering canonical_compare(const FiniteStructure& a, const FiniteStructure& b) {
  if (auto c = a.sizes_ <=> b.sizes_; c != 0) return c;
  for (std::size_t r = a.bits_.size(); r-- > 0;) {
    const auto& x = a.bits_[r];
    const auto& y = b.bits_[r];
    for (std::size_t i = x.size(); i-- > 0;) {
      if (x[i] != y[i]) return x[i] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::string to_literal(const FiniteStructure& m) {
  std::ostringstream os;
  const auto& v = m.vocabulary();
  bool first = true;
  for (SortId s = 0; s < v.sort_count(); ++s) {
    os << (first ? "" : " ") << v.sort_name(s) << " = " << m.size(s) << ";";
    first = false;
  }
  for (RelId r = 0; r < v.relation_count(); ++r) {
    os << (first ? "" : " ") << v.relation(r).name << " = {";
    first = false;
    bool first_tuple = true;
    for (const auto& t : m.extent(r)) {
      os << (first_tuple ? "" : ", ") << "(";
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
      os << ")";
      first_tuple = false;
    }
    os << "};";
  }
  return os.str();
}

}  // namespace merlab::logic

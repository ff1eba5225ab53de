#include "merlab/logic/vocabulary.hpp"

#include <cctype>
#include <set>

#include "merlab/error.hpp"

namespace merlab::logic {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

Vocabulary::Vocabulary(std::string name, std::vector<std::string> sorts,
                       std::vector<RelationDecl> relations)
    : name_(std::move(name)), sorts_(std::move(sorts)) {
  std::set<std::string> seen;
  for (const auto& s : sorts_) {
    if (!is_identifier(s)) throw SortError("invalid sort name '" + s + "'");
    if (!seen.insert(s).second) throw SortError("duplicate sort '" + s + "'");
  }
  std::set<std::string> rel_seen;
  for (auto& [rel_name, profile] : relations) {
    if (!is_identifier(rel_name)) throw SortError("invalid relation name '" + rel_name + "'");
    if (!rel_seen.insert(rel_name).second) throw SortError("duplicate relation '" + rel_name + "'");
    if (profile.empty()) throw SortError("relation '" + rel_name + "' needs a nonempty sort profile");
    RelationSymbol sym{rel_name, {}};
    for (const auto& s : profile) {
      auto id = find_sort(s);
      if (!id) throw SortError("relation '" + rel_name + "' uses undeclared sort '" + s + "'");
      sym.profile.push_back(*id);
    }
    relations_.push_back(std::move(sym));
  }
}

std::optional<SortId> Vocabulary::find_sort(std::string_view name) const {
  for (SortId i = 0; i < sorts_.size(); ++i) {
    if (sorts_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<RelId> Vocabulary::find_relation(std::string_view name) const {
  for (RelId i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

SortId Vocabulary::sort_id(std::string_view name) const {
  if (auto id = find_sort(name)) return *id;
  throw SortError("unknown sort '" + std::string(name) + "'");
}

RelId Vocabulary::relation_id(std::string_view name) const {
  if (auto id = find_relation(name)) return *id;
  throw SortError("unknown relation '" + std::string(name) + "'");
}

std::shared_ptr<const Vocabulary> Vocabulary::extended(const std::string& name,
                                                       const std::string& new_sort,
                                                       const std::string& new_relation,
                                                       const std::vector<SortId>& new_profile) const {
  std::vector<std::string> sorts = sorts_;
  sorts.push_back(new_sort);
  std::vector<RelationDecl> rels;
  for (const auto& r : relations_) {
    std::vector<std::string> prof;
    for (SortId s : r.profile) prof.push_back(sorts_[s]);
    rels.emplace_back(r.name, std::move(prof));
  }
  std::vector<std::string> prof;
  for (SortId s : new_profile) prof.push_back(sorts.at(s));
  rels.emplace_back(new_relation, std::move(prof));
  return make(name, std::move(sorts), std::move(rels));
}

}  // namespace merlab::logic

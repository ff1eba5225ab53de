#ifndef MERLAB_LOGIC_VOCABULARY_HPP
#define MERLAB_LOGIC_VOCABULARY_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace merlab::logic {

using SortId = std::size_t;
using RelId = std::size_t;

struct RelationSymbol {
  std::string name;
  std::vector<SortId> profile;

  std::size_t arity() const { return profile.size(); }
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

// A multi-sorted relational signature. Relational only: no function or
// constant symbols. Sort and relation names are unique; order is significant
// (it fixes the canonical enumeration order of structures).
class Vocabulary {
 public:
  using RelationDecl = std::pair<std::string, std::vector<std::string>>;

  Vocabulary(std::string name, std::vector<std::string> sorts, std::vector<RelationDecl> relations);

  static std::shared_ptr<const Vocabulary> make(std::string name, std::vector<std::string> sorts,
                                                std::vector<RelationDecl> relations) {
    return std::make_shared<const Vocabulary>(std::move(name), std::move(sorts), std::move(relations));
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }
  std::size_t sort_count() const { return sorts_.size(); }
  std::size_t relation_count() const { return relations_.size(); }
  const std::string& sort_name(SortId s) const { return sorts_.at(s); }
  const RelationSymbol& relation(RelId r) const { return relations_.at(r); }

  std::optional<SortId> find_sort(std::string_view name) const;
  std::optional<RelId> find_relation(std::string_view name) const;
  // Throwing lookups (SortError naming the missing symbol).
  SortId sort_id(std::string_view name) const;
  RelId relation_id(std::string_view name) const;

  // Copy with one more sort and one more relation appended.
  std::shared_ptr<const Vocabulary> extended(const std::string& name, const std::string& new_sort,
                                             const std::string& new_relation,
                                             const std::vector<SortId>& new_profile) const;

  // Structural equality; the display name is ignored.
  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.sorts_ == b.sorts_ && a.relations_ == b.relations_;
  }

 private:
  std::string name_;
  std::vector<std::string> sorts_;
  std::vector<RelationSymbol> relations_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

bool is_identifier(std::string_view s);

}  // namespace merlab::logic

#endif  // MERLAB_LOGIC_VOCABULARY_HPP

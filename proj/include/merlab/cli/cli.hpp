#ifndef MERLAB_CLI_CLI_HPP
#define MERLAB_CLI_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "merlab/logic/enumerate.hpp"
#include "merlab/mer/mer.hpp"

namespace merlab::cli {

using logic::FiniteStructure;
using logic::Theory;
using logic::VocabularyPtr;
using mer::MerSpec;

inline constexpr const char* kVersion = "1.0.0";

struct SourcePos {
  std::size_t line = 0, column = 0;
};

// A loaded DSL file. Every cross-reference is resolved and every
// declaration validated; names are unique per kind.
struct Workspace {
  std::filesystem::path path;
  std::map<std::string, VocabularyPtr> vocabularies;
  std::map<std::string, Theory> theories;
  std::map<std::string, FiniteStructure> structures;
  std::map<std::string, MerSpec> mers;
  std::map<std::string, SourcePos> positions;  // "kind name" -> declaration site

  const MerSpec& mer(const std::string& name) const;
  const Theory& theory(const std::string& name) const;
  const FiniteStructure& structure(const std::string& name) const;
};

// ParseError with line:column for syntax and resolution failures; relative
// metric paths resolve against base_dir.
Workspace parse_workspace(std::string_view text, const std::filesystem::path& base_dir);
Workspace load_workspace(const std::filesystem::path& path);

// Body of a structure literal, "S = 3; R = {(0,1),(1,2)};", as printed by
// logic::to_literal.
FiniteStructure parse_structure_literal(std::string_view text, const VocabularyPtr& vocab);

// Square table of rationals, one row per line; '#' starts a comment.
mer::Metric parse_metric(std::string_view text);

// The merlab command line. Exit codes: 0 when the command ran, whatever the
// verdict; 2 on usage, parse and validation errors; 3 when the resource
// ceiling aborts the run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace merlab::cli

#endif  // MERLAB_CLI_CLI_HPP

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "merlab/catalog/catalog.hpp"
#include "merlab/cli/cli.hpp"
#include "merlab/error.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/reduct/reduct.hpp"

namespace merlab::cli {

using logic::Vocabulary;
using pair::CoupledSignature;

namespace {

enum class Tok { Ident, String, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

// Identifiers may contain '-', '.', '/' and a trailing prime so that catalog
// ids, file names and primed sort names lex as one token.
std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (c == '"') {
      t.kind = Tok::String;
      advance();
      while (true) {
        if (i >= src.size()) throw ParseError("unterminated string", t.pos.line, t.pos.column);
        if (src[i] == '"') break;
        if (src[i] == '\\' && i + 1 < src.size()) advance();
        t.text += src[i];
        advance();
      }
      advance();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '/' || src[i] == '.')) {
        t.text += src[i];
        advance();
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      t.kind = Tok::Ident;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '-' ||
                                src[i] == '.' || src[i] == '/' || src[i] == '\'')) {
        t.text += src[i];
        advance();
      }
    } else if (std::string_view("{}();:,=").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", {line, col}});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::filesystem::path base) : toks_(lex(text)), base_(std::move(base)) {}

  Workspace parse() {
    Workspace ws;
    while (peek().kind != Tok::End) {
      const Token kw = expect_ident();
      if (kw.text == "vocab") vocab(ws);
      else if (kw.text == "theory") theory(ws);
      else if (kw.text == "structure") structure(ws);
      else if (kw.text == "mer") mer(ws);
      else fail(kw, "expected 'vocab', 'theory', 'structure' or 'mer', got '" + kw.text + "'");
    }
    return ws;
  }

  // Structure bodies are shared with the literal parser.
  FiniteStructure structure_body(const VocabularyPtr& v, const SourcePos& at) {
    std::vector<std::optional<std::size_t>> sizes(v->sort_count());
    std::vector<std::pair<Token, std::vector<logic::Tuple>>> rels;
    while (peek().kind != Tok::End && !is_punct("}")) {
      const Token name = expect_ident();
      expect_punct("=");
      if (auto s = v->find_sort(name.text)) {
        if (sizes[*s]) fail(name, "sort '" + name.text + "' sized twice");
        sizes[*s] = number(expect(Tok::Number, "a size"));
      } else if (v->find_relation(name.text)) {
        rels.emplace_back(name, tuple_set());
      } else {
        fail(name, "'" + name.text + "' is neither a sort nor a relation of '" + v->name() + "'");
      }
      accept_punct(";");
    }
    std::vector<std::size_t> concrete;
    for (logic::SortId s = 0; s < v->sort_count(); ++s) {
      if (!sizes[s]) throw ParseError("no size for sort '" + v->sort_name(s) + "'", at.line, at.column);
      concrete.push_back(*sizes[s]);
    }
    FiniteStructure m(v, concrete);
    std::vector<bool> seen(v->relation_count(), false);
    for (const auto& [name, tuples] : rels) {
      const auto r = *v->find_relation(name.text);
      if (seen[r]) fail(name, "relation '" + name.text + "' given twice");
      seen[r] = true;
      const auto& profile = v->relation(r).profile;
      for (const auto& t : tuples) {
        if (t.size() != profile.size())
          fail(name, "tuple of arity " + std::to_string(t.size()) + " for '" + name.text + "'");
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t[i] >= concrete[profile[i]])
            fail(name, "element " + std::to_string(t[i]) + " outside sort '" + v->sort_name(profile[i]) + "'");
        m.set(r, t);
      }
    }
    return m;
  }

  bool at_end() const { return toks_[pos_].kind == Tok::End; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.pos.line, t.pos.column);
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(peek(), std::string("expected ") + what + (peek().kind == Tok::End ? ", got end of input"
                                                                              : ", got '" + peek().text + "'"));
    return next();
  }
  Token expect_ident() { return expect(Tok::Ident, "a name"); }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "'");
    next();
  }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(peek(), std::string("expected '") + w + "'");
    next();
  }

  static std::size_t number(const Token& t) {
    if (t.text.find_first_of("/.") != std::string::npos) fail(t, "expected a whole number, got '" + t.text + "'");
    return std::stoull(t.text);
  }

  std::vector<logic::Tuple> tuple_set() {
    std::vector<logic::Tuple> out;
    expect_punct("{");
    while (!is_punct("}")) {
      logic::Tuple t;
      if (accept_punct("(")) {
        while (!is_punct(")")) {
          t.push_back(number(expect(Tok::Number, "an element")));
          if (!accept_punct(",")) break;
        }
        expect_punct(")");
      } else {
        t.push_back(number(expect(Tok::Number, "an element")));
      }
      out.push_back(std::move(t));
      if (!accept_punct(",")) break;
    }
    expect_punct("}");
    return out;
  }

  // Runs a formula-level parser on a string token, shifting its positions
  // to the token's place in the file.
  template <class F>
  auto embedded(const Token& str, F&& f) -> decltype(f(str.text)) {
    try {
      return f(str.text);
    } catch (const ParseError& e) {
      const std::string msg = strip_position(e.what());
      if (e.line() <= 1) throw ParseError(msg, str.pos.line, str.pos.column + 1 + (e.column() ? e.column() - 1 : 0));
      throw ParseError(msg, str.pos.line + e.line() - 1, e.column());
    } catch (const Error& e) {
      throw ParseError(e.what(), str.pos.line, str.pos.column);
    }
  }

  static std::string strip_position(const std::string& s) {
    const auto c1 = s.find(':');
    if (c1 == std::string::npos || c1 == 0 || !std::isdigit(static_cast<unsigned char>(s[0]))) return s;
    const auto c2 = s.find(": ", c1 + 1);
    return c2 == std::string::npos ? s : s.substr(c2 + 2);
  }

  template <class Map>
  void declare(Workspace& ws, Map& map, const char* kind, const Token& name) {
    if (map.contains(name.text)) fail(name, std::string("duplicate ") + kind + " '" + name.text + "'");
    ws.positions[std::string(kind) + " " + name.text] = name.pos;
  }

  VocabularyPtr over(const Workspace& ws) {
    expect_word("over");
    const Token v = expect_ident();
    auto it = ws.vocabularies.find(v.text);
    if (it == ws.vocabularies.end()) fail(v, "unknown vocabulary '" + v.text + "'");
    return it->second;
  }

  void vocab(Workspace& ws) {
    const Token name = expect_ident();
    declare(ws, ws.vocabularies, "vocab", name);
    std::vector<std::string> sorts;
    std::vector<Vocabulary::RelationDecl> rels;
    expect_punct("{");
    while (!accept_punct("}")) {
      const Token kw = expect_ident();
      if (kw.text == "sort") {
        do sorts.push_back(expect_ident().text);
        while (accept_punct(","));
      } else if (kw.text == "rel") {
        Vocabulary::RelationDecl r{expect_ident().text, {}};
        expect_punct("(");
        while (!is_punct(")")) {
          r.second.push_back(expect_ident().text);
          if (!accept_punct(",")) break;
        }
        expect_punct(")");
        rels.push_back(std::move(r));
      } else {
        fail(kw, "expected 'sort' or 'rel', got '" + kw.text + "'");
      }
      accept_punct(";");
    }
    try {
      ws.vocabularies.emplace(name.text, Vocabulary::make(name.text, sorts, rels));
    } catch (const Error& e) {
      fail(name, e.what());
    }
  }

  void theory(Workspace& ws) {
    const Token name = expect_ident();
    declare(ws, ws.theories, "theory", name);
    auto v = over(ws);
    std::vector<std::pair<std::string, logic::Formula>> axioms;
    expect_punct("{");
    while (!accept_punct("}")) {
      expect_word("axiom");
      Token text = expect(Tok::String, "an axiom");
      std::string label = "axiom " + std::to_string(axioms.size() + 1);
      if (accept_punct(":")) {
        label = text.text;
        text = expect(Tok::String, "an axiom formula");
      }
      auto f = embedded(text, [&](const std::string& s) { return logic::parse_formula(s, v); });
      if (!f.is_sentence()) fail(text, "axiom '" + label + "' has free variables");
      axioms.emplace_back(label, std::move(f));
      accept_punct(";");
    }
    ws.theories.emplace(name.text, Theory(name.text, v, std::move(axioms)));
  }

  void structure(Workspace& ws) {
    const Token name = expect_ident();
    declare(ws, ws.structures, "structure", name);
    auto v = over(ws);
    expect_punct("{");
    auto m = structure_body(v, name.pos);
    expect_punct("}");
    ws.structures.emplace(name.text, std::move(m));
  }

  std::vector<Token> strings() {
    std::vector<Token> out;
    while (peek().kind == Tok::String) {
      out.push_back(next());
      if (!accept_punct(",")) accept_punct(";");
    }
    return out;
  }

  mer::Rational rational(const Token& t) {
    try {
      return mer::parse_rational(t.text);
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }

  void mer(Workspace& ws) {
    const Token name = expect_ident();
    declare(ws, ws.mers, "mer", name);
    auto v = over(ws);
    CoupledSignature sig = CoupledSignature::all(v);
    if (is_word("coupled")) {
      const Token at = next();
      std::vector<std::string> names;
      expect_punct("(");
      while (!is_punct(")")) {
        names.push_back(expect_ident().text);
        if (!accept_punct(",")) break;
      }
      expect_punct(")");
      try {
        sig = CoupledSignature::of(v, names);
      } catch (const Error& e) {
        fail(at, e.what());
      }
    }
    expect_punct("{");
    const Token kw = expect_ident();
    auto build = [&]() -> MerSpec {
      if (kw.text == "sentence") {
        const Token s = expect(Tok::String, "a pair sentence");
        auto f = embedded(s, [&](const std::string& t) { return logic::parse_pair_formula(t, v, sig.coupled); });
        return embedded(s, [&](const std::string&) { return mer::by_sentence(name.text, sig, f); });
      }
      if (kw.text == "reduct") {
        const auto ss = strings();
        if (ss.empty()) fail(kw, "reduct needs at least one formula");
        std::vector<logic::Formula> fs;
        for (const auto& s : ss)
          fs.push_back(embedded(s, [&](const std::string& t) { return logic::parse_formula(t, v); }));
        return embedded(ss[0], [&](const std::string&) { return mer::by_reduct(name.text, sig, fs); });
      }
      if (kw.text == "family") {
        const auto ss = strings();
        if (ss.empty()) fail(kw, "family needs at least one level");
        std::vector<std::string> levels;
        for (const auto& s : ss) levels.push_back(s.text);
        return embedded(ss[0], [&](const std::string&) {
          return mer::by_tower(name.text, reduct::FamilyTower::parse(sig, levels));
        });
      }
      if (kw.text == "approx") return approx(name, v, sig);
      if (kw.text == "cofinal") {
        expect_word("order");
        const Token order = expect(Tok::String, "an order formula");
        expect_word("depth");
        const std::size_t depth = number(expect(Tok::Number, "a depth"));
        accept_punct(";");
        expect_word("family");
        const Token fam = expect(Tok::String, "a family");
        accept_punct(";");
        auto o = embedded(order, [&](const std::string& t) { return reduct::OrderSpec::parse(t, v, depth); });
        auto pf = embedded(fam, [&](const std::string& t) { return reduct::PartitionedFormula::parse(t, v); });
        return embedded(fam, [&](const std::string&) { return mer::cofinal_mer(name.text, sig, o, pf); });
      }
      if (kw.text == "builtin") {
        const Token id = expect_ident();
        accept_punct(";");
        const catalog::CatalogEntry* entry = nullptr;
        try {
          entry = &catalog::catalog_get(id.text);
        } catch (const Error& e) {
          fail(id, e.what());
        }
        if (!(*entry->vocabulary == *v))
          fail(id, "builtin '" + id.text + "' is over a vocabulary of a different shape than '" + v->name() + "'");
        if (entry->spec.sig.coupled != sig.coupled)
          fail(id, "builtin '" + id.text + "' couples " + join(entry->spec.sig.coupled_names()));
        return mer::builtin(name.text, id.text, std::make_shared<const MerSpec>(entry->spec));
      }
      fail(kw, "expected 'sentence', 'reduct', 'family', 'approx', 'cofinal' or 'builtin', got '" + kw.text + "'");
    };
    MerSpec spec = build();
    accept_punct(";");
    expect_punct("}");
    ws.mers.emplace(name.text, std::move(spec));
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s + ")";
  }

  // approx metric (FILE | discrete N | line(x, ...)) eps Q; labels "...", ...
  MerSpec approx(const Token& name, const VocabularyPtr& v, const CoupledSignature& sig) {
    expect_word("metric");
    const Token how = peek();
    mer::Metric metric;
    if (how.kind == Tok::Ident && how.text == "discrete") {
      next();
      metric = mer::Metric::discrete(number(expect(Tok::Number, "a point count")));
    } else if (how.kind == Tok::Ident && how.text == "line") {
      next();
      std::vector<mer::Rational> xs;
      expect_punct("(");
      while (!is_punct(")")) {
        xs.push_back(rational(expect(Tok::Number, "a coordinate")));
        if (!accept_punct(",")) break;
      }
      expect_punct(")");
      metric = mer::Metric::line(xs);
    } else {
      const Token file = how.kind == Tok::String ? next() : expect_ident();
      const auto path = base_.empty() ? std::filesystem::path(file.text) : base_ / file.text;
      std::ifstream in(path);
      if (!in) fail(file, "cannot read metric file '" + path.string() + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        metric = parse_metric(buf.str());
      } catch (const Error& e) {
        fail(file, path.filename().string() + ": " + e.what());
      }
    }
    expect_word("eps");
    const mer::Rational eps = rational(expect(Tok::Number, "a threshold"));
    accept_punct(";");
    expect_word("labels");
    const auto ss = strings();
    if (ss.empty()) fail(name, "approx needs labels");
    std::vector<logic::Formula> labels;
    for (const auto& s : ss) labels.push_back(embedded(s, [&](const std::string& t) { return logic::parse_formula(t, v); }));
    return embedded(ss[0], [&](const std::string&) { return mer::by_approx(name.text, sig, labels, metric, eps); });
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::filesystem::path base_;
};

}  // namespace

const MerSpec& Workspace::mer(const std::string& name) const {
  auto it = mers.find(name);
  if (it == mers.end()) throw ValidationError("no mer named '" + name + "' in " + path.string());
  return it->second;
}

const Theory& Workspace::theory(const std::string& name) const {
  auto it = theories.find(name);
  if (it == theories.end()) throw ValidationError("no theory named '" + name + "' in " + path.string());
  return it->second;
}

const FiniteStructure& Workspace::structure(const std::string& name) const {
  auto it = structures.find(name);
  if (it == structures.end()) throw ValidationError("no structure named '" + name + "' in " + path.string());
  return it->second;
}

Workspace parse_workspace(std::string_view text, const std::filesystem::path& base_dir) {
  Workspace ws = Parser(text, base_dir).parse();
  return ws;
}

Workspace load_workspace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Workspace ws;
  try {
    ws = parse_workspace(buf.str(), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what(), 0, 0);
  }
  ws.path = path;
  return ws;
}

FiniteStructure parse_structure_literal(std::string_view text, const VocabularyPtr& vocab) {
  Parser p(text, {});
  auto m = p.structure_body(vocab, {1, 1});
  if (!p.at_end()) throw ParseError("trailing text after structure literal", 0, 0);
  return m;
}

mer::Metric parse_metric(std::string_view text) {
  mer::Metric m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream row(line);
    std::vector<mer::Rational> xs;
    for (std::string cell; row >> cell;) {
      try {
        xs.push_back(mer::parse_rational(cell));
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 1);
      }
    }
    if (!xs.empty()) m.d.push_back(std::move(xs));
  }
  for (std::size_t i = 0; i < m.d.size(); ++i)
    if (m.d[i].size() != m.d.size())
      throw ValidationError("metric row " + std::to_string(i + 1) + " has " + std::to_string(m.d[i].size()) +
                            " entries, expected " + std::to_string(m.d.size()));
  m.validate();
  return m;
}

}  // namespace merlab::cli

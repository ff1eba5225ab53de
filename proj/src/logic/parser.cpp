#include "merlab/logic/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "merlab/error.hpp"

namespace merlab::logic {

namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, Comma, Dot, Colon, Bang, Amp, Bar, Arrow, DArrow, Eq, Neq, At, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      while (j < src.size() && src[j] == '\'') ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    std::size_t len = 1;
    if (two("<->")) {
      t.kind = Tok::DArrow;
      len = 3;
    } else if (two("->")) {
      t.kind = Tok::Arrow;
      len = 2;
    } else if (two("!=")) {
      t.kind = Tok::Neq;
      len = 2;
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBrack; break;
        case ']': t.kind = Tok::RBrack; break;
        case ',': t.kind = Tok::Comma; break;
        case '.': t.kind = Tok::Dot; break;
        case ':': t.kind = Tok::Colon; break;
        case '!': t.kind = Tok::Bang; break;
        case '&': t.kind = Tok::Amp; break;
        case '|': t.kind = Tok::Bar; break;
        case '=': t.kind = Tok::Eq; break;
        case '@': t.kind = Tok::At; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

std::string at(std::size_t line, std::size_t col) {
  return " at " + std::to_string(line) + ":" + std::to_string(col);
}

struct RawVar {
  std::string name;
  std::size_t inst = 0;
  std::size_t line = 0, col = 0;
};

struct RawNode {
  Kind kind = Kind::True;
  RelId relation = 0;
  bool primed = false;
  std::vector<RawVar> args;
  RawVar bound;
  std::vector<std::unique_ptr<RawNode>> children;
  std::size_t line = 0, col = 0;
};

using RawPtr = std::unique_ptr<RawNode>;

// Union-find carrying an optional value per class.
template <typename T>
class ValueUnion {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    value_.emplace_back();
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Returns false on a value conflict.
  bool set(std::size_t x, const T& v) {
    auto& slot = value_[find(x)];
    if (slot && *slot != v) return false;
    slot = v;
    return true;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (value_[a] && value_[b] && *value_[a] != *value_[b]) return false;
    if (!value_[a]) value_[a] = value_[b];
    parent_[b] = a;
    return true;
  }
  std::optional<T> get(std::size_t x) { return value_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::optional<T>> value_;
};

class Parser {
 public:
  Parser(std::string_view text, const VocabularyPtr& vocab, const Syntax& syntax, bool allow_groups)
      : toks_(lex(text)), vocab_(vocab), syntax_(syntax), allow_groups_(allow_groups) {
    if (!syntax_.coupled.empty() && syntax_.coupled.size() != vocab_->sort_count()) {
      throw ValidationError("coupling mask has the wrong number of sorts");
    }
  }

  std::vector<std::vector<RawVar>> parse_header() {
    std::vector<std::vector<RawVar>> blocks;
    if (peek().kind != Tok::LBrack) return blocks;
    next();
    blocks.emplace_back();
    std::set<std::string> seen;
    while (true) {
      const Token& t = expect(Tok::Ident, "a variable name in the block header");
      if (!seen.insert(t.text).second) throw ParseError("variable '" + t.text + "' listed twice", t.line, t.col);
      blocks.back().push_back(free_var(t));
      if (peek().kind == Tok::Comma) {
        next();
      } else if (peek().kind == Tok::Colon) {
        next();
        blocks.emplace_back();
      } else {
        expect(Tok::RBrack, "',', ':' or ']'");
        break;
      }
    }
    return blocks;
  }

  RawPtr parse_all() {
    RawPtr f = parse_formula();
    if (peek().kind != Tok::End) {
      const Token& t = peek();
      throw ParseError("unexpected '" + t.text + "' after the formula", t.line, t.col);
    }
    return f;
  }

  const std::vector<std::vector<RawVar>>& groups() const { return groups_; }

  // Resolves inferred sorts and builds the checked formula.
  Formula build(const RawNode& root) {
    resolve();
    return convert(root);
  }

  Variable resolved(const RawVar& v) const { return resolved_.at(v.inst); }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  const Token& expect(Tok k, const char* what) {
    const Token& t = peek();
    if (t.kind != k) {
      throw ParseError(std::string("expected ") + what + (t.kind == Tok::End ? ", found end of input" : ", found '" + t.text + "'"),
                       t.line, t.col);
    }
    return next();
  }

  std::size_t new_instance(const std::string& name) {
    const std::size_t id = sorts_.add();
    primes_.add();
    names_.push_back(name);
    return id;
  }

  RawVar free_var(const Token& t) {
    auto it = free_.find(t.text);
    if (it == free_.end()) it = free_.emplace(t.text, new_instance(t.text)).first;
    return RawVar{t.text, it->second, t.line, t.col};
  }

  RawVar use_var(const Token& t) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->first == t.text) return RawVar{t.text, it->second, t.line, t.col};
    }
    return free_var(t);
  }

  void require_sort(const RawVar& v, SortId s) {
    if (!sorts_.set(v.inst, s)) {
      throw SortError("variable '" + v.name + "' is used with sort '" + vocab_->sort_name(s) +
                      "' and with sort '" + vocab_->sort_name(*sorts_.get(v.inst)) + "'" + at(v.line, v.col));
    }
  }
  void require_primed(const RawVar& v, bool p) {
    if (!primes_.set(v.inst, p)) {
      throw SortError("variable '" + v.name + "' is used in both the primed and the unprimed copy" + at(v.line, v.col));
    }
  }

  RawPtr node(Kind k, const Token& t) {
    auto n = std::make_unique<RawNode>();
    n->kind = k;
    n->line = t.line;
    n->col = t.col;
    return n;
  }

  RawPtr parse_formula() {
    RawPtr lhs = parse_imp();
    while (peek().kind == Tok::DArrow) {
      const Token& op = next();
      RawPtr rhs = parse_imp();
      RawPtr n = node(Kind::Iff, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(std::move(rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  RawPtr parse_imp() {
    RawPtr lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      const Token& op = next();
      RawPtr rhs = parse_imp();
      RawPtr n = node(Kind::Implies, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(std::move(rhs));
      return n;
    }
    return lhs;
  }

  RawPtr parse_or() {
    RawPtr lhs = parse_and();
    while (peek().kind == Tok::Bar) {
      const Token& op = next();
      RawPtr n = node(Kind::Or, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(parse_and());
      lhs = std::move(n);
    }
    return lhs;
  }

  RawPtr parse_and() {
    RawPtr lhs = parse_unary();
    while (peek().kind == Tok::Amp) {
      const Token& op = next();
      RawPtr n = node(Kind::And, op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(parse_unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  RawPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      next();
      RawPtr n = node(Kind::Not, t);
      n->children.push_back(parse_unary());
      return n;
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) return parse_quantifier();
    return parse_primary();
  }

  RawPtr parse_quantifier() {
    const Token& q = next();
    const Kind kind = q.text == "forall" ? Kind::Forall : Kind::Exists;
    std::vector<RawVar> binders;
    while (true) {
      const Token& v = expect(Tok::Ident, "a bound variable");
      check_not_keyword(v);
      RawVar rv{v.text, new_instance(v.text), v.line, v.col};
      if (peek().kind == Tok::Colon) {
        next();
        const Token& s = expect(Tok::Ident, "a sort name");
        std::string name = s.text;
        bool primed = false;
        if (!name.empty() && name.back() == '\'') {
          name.pop_back();
          primed = true;
          if (!name.empty() && name.back() == '\'') throw ParseError("sort '" + s.text + "' has too many primes", s.line, s.col);
        }
        auto sid = vocab_->find_sort(name);
        if (!sid) throw SortError("unknown sort '" + name + "'" + at(s.line, s.col));
        if (primed && syntax_.language == Language::Base) {
          throw SortError("primed sort '" + s.text + "' in a base-language formula" + at(s.line, s.col));
        }
        if (primed && syntax_.language == Language::Pair && syntax_.is_coupled(*sid)) {
          throw SortError("sort '" + name + "' is coupled and has no primed copy" + at(s.line, s.col));
        }
        require_sort(rv, *sid);
        require_primed(rv, primed);
      }
      binders.push_back(rv);
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.' after the quantifier prefix");
    for (const auto& b : binders) scopes_.emplace_back(b.name, b.inst);
    RawPtr body = parse_formula();
    for (std::size_t i = 0; i < binders.size(); ++i) scopes_.pop_back();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      RawPtr n = node(kind, q);
      n->bound = *it;
      n->children.push_back(std::move(body));
      body = std::move(n);
    }
    return body;
  }

  void check_not_keyword(const Token& t) {
    static const std::set<std::string> kw = {"forall", "exists", "true", "false"};
    if (kw.count(t.text)) throw ParseError("keyword '" + t.text + "' used as a name", t.line, t.col);
  }

  RawPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      RawPtr f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::At) return parse_link();
    if (t.kind != Tok::Ident) {
      throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.line, t.col);
    }
    if (t.text == "true" || t.text == "false") {
      next();
      return node(t.text == "true" ? Kind::True : Kind::False, t);
    }
    const Token& name = next();
    if (peek().kind == Tok::LParen) return parse_atom(name);
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      const bool negated = next().kind == Tok::Neq;
      const Token& rhs = expect(Tok::Ident, "a variable after '='");
      check_not_keyword(rhs);
      RawPtr eq = node(Kind::Equal, name);
      RawVar a = use_var(name);
      RawVar b = use_var(rhs);
      if (!sorts_.unite(a.inst, b.inst)) {
        throw SortError("equality between '" + a.name + "' and '" + b.name + "' across distinct sorts" + at(name.line, name.col));
      }
      if (syntax_.language != Language::Triple && !primes_.unite(a.inst, b.inst)) {
        throw SortError("equality between '" + a.name + "' and '" + b.name + "' mixes a sort with its primed copy" +
                        at(name.line, name.col));
      }
      eq->args = {a, b};
      if (!negated) return eq;
      RawPtr n = node(Kind::Not, name);
      n->children.push_back(std::move(eq));
      return n;
    }
    throw ParseError("expected '(' or '=' after '" + name.text + "'", peek().line, peek().col);
  }

  RawPtr parse_atom(const Token& name) {
    std::string rel = name.text;
    bool primed = false;
    if (rel.back() == '\'') {
      rel.pop_back();
      primed = true;
      if (!rel.empty() && rel.back() == '\'') throw ParseError("relation '" + name.text + "' has too many primes", name.line, name.col);
    }
    auto rid = vocab_->find_relation(rel);
    if (!rid) throw SortError("unknown relation '" + rel + "'" + at(name.line, name.col));
    if (primed && syntax_.language == Language::Base) {
      throw SortError("primed relation '" + name.text + "' in a base-language formula" + at(name.line, name.col));
    }
    next();  // '('
    RawPtr n = node(Kind::Atom, name);
    n->relation = *rid;
    n->primed = primed;
    std::vector<std::vector<RawVar>> groups(1);
    bool saw_group = false;
    if (peek().kind != Tok::RParen) {
      while (true) {
        const Token& v = expect(Tok::Ident, "a variable");
        check_not_keyword(v);
        n->args.push_back(use_var(v));
        groups.back().push_back(n->args.back());
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        if (peek().kind == Tok::Colon) {
          const Token& c = next();
          if (!allow_groups_) throw ParseError("block separator ':' is only allowed in a partitioned formula", c.line, c.col);
          saw_group = true;
          groups.emplace_back();
          continue;
        }
        break;
      }
    }
    expect(Tok::RParen, "')' closing the argument list");
    const auto& sym = vocab_->relation(*rid);
    if (n->args.size() != sym.arity()) {
      throw SortError("relation '" + rel + "' has arity " + std::to_string(sym.arity()) + ", applied to " +
                      std::to_string(n->args.size()) + " argument(s)" + at(name.line, name.col));
    }
    for (std::size_t i = 0; i < n->args.size(); ++i) {
      const SortId s = sym.profile[i];
      require_sort(n->args[i], s);
      bool want_prime = false;
      if (syntax_.language == Language::Triple) want_prime = primed;
      if (syntax_.language == Language::Pair) want_prime = primed && !syntax_.is_coupled(s);
      require_primed(n->args[i], want_prime);
    }
    if (saw_group) {
      if (!groups_.empty()) throw ParseError("only one atom may carry block separators", name.line, name.col);
      groups_ = std::move(groups);
      grouped_atom_ = n.get();
    }
    return n;
  }

  RawPtr parse_link() {
    const Token& at_tok = next();
    const Token& f = expect(Tok::Ident, "'f' after '@'");
    if (f.text != "f") throw ParseError("link atoms are written @f(x, y)", f.line, f.col);
    if (syntax_.language != Language::Triple) {
      throw SortError("link atom outside a triple-language formula" + at(at_tok.line, at_tok.col));
    }
    expect(Tok::LParen, "'('");
    const Token& a = expect(Tok::Ident, "a variable");
    expect(Tok::Comma, "','");
    const Token& b = expect(Tok::Ident, "a variable");
    expect(Tok::RParen, "')'");
    RawPtr n = node(Kind::Link, at_tok);
    RawVar x = use_var(a);
    RawVar y = use_var(b);
    if (!sorts_.unite(x.inst, y.inst)) throw SortError("link atom between different sorts" + at(at_tok.line, at_tok.col));
    require_primed(x, false);
    require_primed(y, true);
    n->args = {x, y};
    return n;
  }

  void resolve() {
    resolved_.resize(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      auto s = sorts_.get(i);
      if (!s) {
        if (vocab_->sort_count() == 1) {
          s = 0;
        } else {
          throw SortError("cannot infer the sort of variable '" + names_[i] + "'; annotate it as " + names_[i] + ":Sort");
        }
      }
      const bool p = primes_.get(i).value_or(false);
      if (p && syntax_.language == Language::Pair && syntax_.is_coupled(*s)) {
        throw SortError("variable '" + names_[i] + "' of coupled sort '" + vocab_->sort_name(*s) + "' cannot be primed");
      }
      resolved_[i] = Variable{names_[i], *s, p};
    }
  }

  Formula convert(const RawNode& n) {
    switch (n.kind) {
      case Kind::True: return Formula::truth(vocab_);
      case Kind::False: return Formula::falsity(vocab_);
      case Kind::Atom: {
        std::vector<Variable> args;
        for (const auto& a : n.args) args.push_back(resolved_[a.inst]);
        return Formula::atom(vocab_, n.relation, std::move(args), n.primed);
      }
      case Kind::Equal: {
        const Variable a = resolved_[n.args[0].inst];
        const Variable b = resolved_[n.args[1].inst];
        if (a.primed != b.primed) {
          throw ValidationError("equality between '" + a.name + "' and '" + b.name +
                                "' crosses the two copies; the copies share no elements" + at(n.line, n.col));
        }
        return Formula::equal(vocab_, a, b);
      }
      case Kind::Link: {
        const Variable a = resolved_[n.args[0].inst];
        const Variable b = resolved_[n.args[1].inst];
        if (!syntax_.is_coupled(a.sort)) {
          throw ValidationError("link atom on decoupled sort '" + vocab_->sort_name(a.sort) + "'" + at(n.line, n.col));
        }
        return Formula::link(vocab_, a, b);
      }
      case Kind::Not: return Formula::negation(convert(*n.children[0]));
      case Kind::And: return Formula::conjunction(convert(*n.children[0]), convert(*n.children[1]));
      case Kind::Or: return Formula::disjunction(convert(*n.children[0]), convert(*n.children[1]));
      case Kind::Implies: return Formula::implication(convert(*n.children[0]), convert(*n.children[1]));
      case Kind::Iff: return Formula::biconditional(convert(*n.children[0]), convert(*n.children[1]));
      case Kind::Forall: return Formula::forall(resolved_[n.bound.inst], convert(*n.children[0]));
      case Kind::Exists: return Formula::exists(resolved_[n.bound.inst], convert(*n.children[0]));
    }
    throw Error("unreachable formula kind");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VocabularyPtr vocab_;
  Syntax syntax_;
  bool allow_groups_;
  ValueUnion<SortId> sorts_;
  ValueUnion<bool> primes_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> free_;
  std::vector<std::pair<std::string, std::size_t>> scopes_;
  std::vector<std::vector<RawVar>> groups_;
  const RawNode* grouped_atom_ = nullptr;
  std::vector<Variable> resolved_;

 public:
  const RawNode* grouped_atom() const { return grouped_atom_; }
};

}  // namespace

Formula parse_formula(std::string_view text, const VocabularyPtr& vocab, const Syntax& syntax) {
  Parser p(text, vocab, syntax, false);
  RawPtr root = p.parse_all();
  return p.build(*root);
}

Formula parse_pair_formula(std::string_view text, const VocabularyPtr& vocab, std::vector<bool> coupled) {
  return parse_formula(text, vocab, Syntax::pair(std::move(coupled)));
}

Formula parse_triple_formula(std::string_view text, const VocabularyPtr& vocab, std::vector<bool> coupled) {
  return parse_formula(text, vocab, Syntax::triple(std::move(coupled)));
}

PartitionedSyntaxTree parse_partitioned(std::string_view text, const VocabularyPtr& vocab, const Syntax& syntax) {
  Parser p(text, vocab, syntax, true);
  auto header = p.parse_header();
  RawPtr root = p.parse_all();
  if (!header.empty() && !p.groups().empty()) {
    throw ParseError("use either a block header or atom separators, not both", root->line, root->col);
  }
  if (!p.groups().empty() && p.grouped_atom() != root.get()) {
    throw ParseError("atom block separators need the formula to be that single atom; use the [..] header form",
                     root->line, root->col);
  }
  Formula f = p.build(*root);
  PartitionedSyntaxTree out{f, {}};
  std::set<std::string> placed;
  auto place = [&](const std::vector<RawVar>& block) {
    std::vector<Variable> vars;
    for (const auto& rv : block) {
      if (!placed.insert(rv.name).second) {
        throw ParseError("variable '" + rv.name + "' appears in two blocks", rv.line, rv.col);
      }
      vars.push_back(p.resolved(rv));
    }
    if (vars.empty()) throw ParseError("empty block in partitioned formula", root->line, root->col);
    out.blocks.push_back(std::move(vars));
  };
  if (!header.empty()) {
    for (const auto& b : header) place(b);
  } else if (!p.groups().empty()) {
    const auto& g = p.groups();
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
      // repeated variables inside one group are the same variable
      std::vector<RawVar> uniq;
      std::set<std::string> local;
      for (const auto& v : *it) {
        if (local.insert(v.name).second) uniq.push_back(v);
      }
      place(uniq);
    }
  } else {
    auto fv = f.free_variables();
    if (!fv.empty()) out.blocks.push_back(fv);
    return out;
  }
  for (const auto& v : f.free_variables()) {
    if (!placed.count(v.name)) throw SortError("free variable '" + v.name + "' is not assigned to any block");
  }
  return out;
}

std::string to_string(const PartitionedSyntaxTree& pf) {
  std::ostringstream os;
  os << "[";
  for (std::size_t b = 0; b < pf.blocks.size(); ++b) {
    if (b) os << " : ";
    for (std::size_t i = 0; i < pf.blocks[b].size(); ++i) os << (i ? ", " : "") << pf.blocks[b][i].name;
  }
  os << "] " << to_string(pf.formula);
  return os.str();
}

namespace {

void validate_node(const Vocabulary& v, const Node& n, const Syntax& syn) {
  auto check_var = [&](const Variable& x) {
    if (!x.primed) return;
    if (syn.language == Language::Base) throw SortError("primed variable '" + x.name + "' in a base-language formula");
    if (syn.language == Language::Pair && syn.is_coupled(x.sort)) {
      throw SortError("variable '" + x.name + "' of coupled sort '" + v.sort_name(x.sort) + "' cannot be primed");
    }
  };
  switch (n.kind) {
    case Kind::Atom:
      if (n.primed && syn.language == Language::Base) throw SortError("primed relation in a base-language formula");
      for (const auto& x : n.args) {
        check_var(x);
        bool want = false;
        if (syn.language == Language::Triple) want = n.primed;
        if (syn.language == Language::Pair) want = n.primed && !syn.is_coupled(x.sort);
        if (x.primed != want) throw SortError("variable '" + x.name + "' is in the wrong copy for its atom");
      }
      return;
    case Kind::Equal:
      for (const auto& x : n.args) check_var(x);
      if (n.args[0].primed != n.args[1].primed) {
        if (syn.language == Language::Triple) throw ValidationError("equality crosses the two copies");
        throw SortError("equality mixes a sort with its primed copy");
      }
      return;
    case Kind::Link:
      if (syn.language != Language::Triple) throw SortError("link atom outside a triple-language formula");
      if (!syn.is_coupled(n.args[0].sort)) {
        throw ValidationError("link atom on decoupled sort '" + v.sort_name(n.args[0].sort) + "'");
      }
      if (n.args[0].primed || !n.args[1].primed) throw SortError("link atoms go from the unprimed to the primed copy");
      return;
    case Kind::Forall:
    case Kind::Exists:
      check_var(n.bound);
      break;
    default:
      break;
  }
  for (const auto& c : n.children) validate_node(v, *c, syn);
}

}  // namespace

void validate_language(const Formula& f, const Syntax& syntax) {
  if (!syntax.coupled.empty() && syntax.coupled.size() != f.vocabulary().sort_count()) {
    throw ValidationError("coupling mask has the wrong number of sorts");
  }
  validate_node(f.vocabulary(), f.node(), syntax);
}

}  // namespace merlab::logic

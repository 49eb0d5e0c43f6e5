#include "hyperbmc/predicate.hpp"

#include <algorithm>
#include <cctype>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

using Kind = RelationalPredicate::Kind;

RelationalPredicate RelationalPredicate::constant(bool value) {
  return RelationalPredicate(value ? Kind::True : Kind::False, {}, {});
}
RelationalPredicate RelationalPredicate::left(std::string prop) { return RelationalPredicate(Kind::Left, std::move(prop), {}); }
RelationalPredicate RelationalPredicate::right(std::string prop) {
  return RelationalPredicate(Kind::Right, std::move(prop), {});
}
RelationalPredicate RelationalPredicate::match_all() { return RelationalPredicate(Kind::MatchAll, {}, {}); }
RelationalPredicate RelationalPredicate::negation(RelationalPredicate operand) {
  return RelationalPredicate(Kind::Not, {}, {std::move(operand)});
}
RelationalPredicate RelationalPredicate::binary(Kind kind, RelationalPredicate lhs, RelationalPredicate rhs) {
  if (kind != Kind::And && kind != Kind::Or && kind != Kind::Implies && kind != Kind::Iff)
    throw Error("binary(): not a binary connective");
  return RelationalPredicate(kind, {}, {std::move(lhs), std::move(rhs)});
}

RelationalPredicate operator!(RelationalPredicate p) { return RelationalPredicate::negation(std::move(p)); }
RelationalPredicate operator&&(RelationalPredicate a, RelationalPredicate b) {
  return RelationalPredicate::binary(Kind::And, std::move(a), std::move(b));
}
RelationalPredicate operator||(RelationalPredicate a, RelationalPredicate b) {
  return RelationalPredicate::binary(Kind::Or, std::move(a), std::move(b));
}
RelationalPredicate implies(RelationalPredicate a, RelationalPredicate b) {
  return RelationalPredicate::binary(Kind::Implies, std::move(a), std::move(b));
}
RelationalPredicate iff(RelationalPredicate a, RelationalPredicate b) {
  return RelationalPredicate::binary(Kind::Iff, std::move(a), std::move(b));
}

std::string RelationalPredicate::to_string() const {
  switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Left: return "l." + prop_;
    case Kind::Right: return "r." + prop_;
    case Kind::MatchAll: return "match-all";
    case Kind::Not: return "!" + operands_[0].to_string();
    default: break;
  }
  const char* op = kind_ == Kind::And ? " & " : kind_ == Kind::Or ? " | " : kind_ == Kind::Implies ? " -> " : " <-> ";
  return "(" + operands_[0].to_string() + op + operands_[1].to_string() + ")";
}

namespace {

enum class Tok { End, LAtom, RAtom, True, False, MatchAll, Not, And, Or, Implies, Iff, LParen, RParen };

struct Token {
  Tok kind;
  std::string prop;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = base + i;
    if (c == '(') {
      out.push_back({Tok::LParen, {}, at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, {}, at});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::Not, {}, at});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, {}, at});
      i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
    } else if (c == '|') {
      out.push_back({Tok::Or, {}, at});
      i += (i + 1 < text.size() && text[i + 1] == '|') ? 2 : 1;
    } else if (text.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, {}, at});
      i += 2;
    } else if (text.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, {}, at});
      i += 3;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (ident_char(text[j]) || text[j] == '-')) {
        // allow the hyphen only inside the match-all keyword
        if (text[j] == '-' && text.substr(i, j - i) != "match") break;
        ++j;
      }
      std::string word(text.substr(i, j - i));
      if ((word == "l" || word == "r") && j < text.size() && text[j] == '.') {
        std::size_t k = j + 1;
        while (k < text.size() && ident_char(text[k])) ++k;
        std::string prop(text.substr(j + 1, k - j - 1));
        if (!is_identifier(prop)) throw ParseError("expected a proposition after '" + word + ".'", 0, base + j + 1);
        out.push_back({word == "l" ? Tok::LAtom : Tok::RAtom, std::move(prop), at});
        i = k;
      } else if (word == "true") {
        out.push_back({Tok::True, {}, at});
        i = j;
      } else if (word == "false") {
        out.push_back({Tok::False, {}, at});
        i = j;
      } else if (word == "match-all") {
        out.push_back({Tok::MatchAll, {}, at});
        i = j;
      } else {
        throw ParseError("unexpected word '" + word + "' (atoms are l.<prop> or r.<prop>)", 0, at);
      }
    } else {
      std::size_t j = i;
      while (j < text.size() && std::ispunct(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')')
        ++j;
      throw UnknownOperatorError("unknown operator '" + std::string(text.substr(i, std::max<std::size_t>(1, j - i))) + "'",
                                 0, at);
    }
  }
  out.push_back({Tok::End, {}, base + text.size()});
  return out;
}

class PredicateParser {
 public:
  explicit PredicateParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  RelationalPredicate parse() {
    auto p = iff_level();
    if (peek().kind != Tok::End) throw ParseError("unexpected token", 0, peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  RelationalPredicate iff_level() {
    auto lhs = implies_level();
    while (accept(Tok::Iff)) lhs = iff(std::move(lhs), implies_level());
    return lhs;
  }
  RelationalPredicate implies_level() {
    auto lhs = or_level();
    if (accept(Tok::Implies)) return implies(std::move(lhs), implies_level());
    return lhs;
  }
  RelationalPredicate or_level() {
    auto lhs = and_level();
    while (accept(Tok::Or)) lhs = std::move(lhs) || and_level();
    return lhs;
  }
  RelationalPredicate and_level() {
    auto lhs = unary();
    while (accept(Tok::And)) lhs = std::move(lhs) && unary();
    return lhs;
  }
  RelationalPredicate unary() {
    if (accept(Tok::Not)) return !unary();
    const Token t = peek();
    switch (t.kind) {
      case Tok::LAtom: ++pos_; return RelationalPredicate::left(t.prop);
      case Tok::RAtom: ++pos_; return RelationalPredicate::right(t.prop);
      case Tok::True: ++pos_; return RelationalPredicate::constant(true);
      case Tok::False: ++pos_; return RelationalPredicate::constant(false);
      case Tok::MatchAll: ++pos_; return RelationalPredicate::match_all();
      case Tok::LParen: {
        ++pos_;
        auto inner = iff_level();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", 0, peek().pos);
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of predicate", 0, t.pos);
      default: throw ParseError("expected an atom, literal, '!' or '('", 0, t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool contains(const Label& l, const std::string& p) { return std::binary_search(l.begin(), l.end(), p); }

}  // namespace

RelationalPredicate parse_predicate(std::string_view text) { return PredicateParser(tokenize(text, 0)).parse(); }

bool eval_predicate(const RelationalPredicate& pred, const Label& left, const Label& right) {
  const auto& ops = pred.operands();
  switch (pred.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Left: return contains(left, pred.prop());
    case Kind::Right: return contains(right, pred.prop());
    case Kind::Not: return !eval_predicate(ops[0], left, right);
    case Kind::And: return eval_predicate(ops[0], left, right) && eval_predicate(ops[1], left, right);
    case Kind::Or: return eval_predicate(ops[0], left, right) || eval_predicate(ops[1], left, right);
    case Kind::Implies: return !eval_predicate(ops[0], left, right) || eval_predicate(ops[1], left, right);
    case Kind::Iff: return eval_predicate(ops[0], left, right) == eval_predicate(ops[1], left, right);
    case Kind::MatchAll: throw Error("match-all must be bound to proposition sets before evaluation");
  }
  return false;
}

RelationalPredicate bind_predicate(const RelationalPredicate& pred, const std::vector<std::string>& left_ap,
                                   const std::vector<std::string>& right_ap) {
  auto declared = [](const std::vector<std::string>& ap, const std::string& p) {
    return std::find(ap.begin(), ap.end(), p) != ap.end();
  };
  switch (pred.kind()) {
    case Kind::True:
    case Kind::False: return pred;
    case Kind::Left:
      if (!declared(left_ap, pred.prop()))
        throw ModelError("unknown-prop", pred.prop(), "proposition '" + pred.prop() + "' is not declared by the left structure");
      return pred;
    case Kind::Right:
      if (!declared(right_ap, pred.prop()))
        throw ModelError("unknown-prop", pred.prop(),
                         "proposition '" + pred.prop() + "' is not declared by the right structure");
      return pred;
    case Kind::MatchAll: {
      std::vector<RelationalPredicate> parts;
      for (const auto& p : left_ap) {
        if (declared(right_ap, p)) parts.push_back(iff(RelationalPredicate::left(p), RelationalPredicate::right(p)));
      }
      if (parts.empty()) return RelationalPredicate::constant(true);
      RelationalPredicate acc = std::move(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) acc = std::move(acc) && std::move(parts[i]);
      return acc;
    }
    case Kind::Not: return !bind_predicate(pred.operands()[0], left_ap, right_ap);
    default:
      return RelationalPredicate::binary(pred.kind(), bind_predicate(pred.operands()[0], left_ap, right_ap),
                                         bind_predicate(pred.operands()[1], left_ap, right_ap));
  }
}

std::string to_string(Pattern p) { return p == Pattern::ForallExists ? "forall exists" : "exists forall"; }

std::string HyperProperty::to_string() const { return hyperbmc::to_string(pattern) + ". G " + body.to_string(); }

HyperProperty parse_property(std::string_view raw) {
  std::string text;
  {
    // strip '#' comments, keep offsets stable by blanking them
    text.assign(raw);
    bool in_comment = false;
    for (char& c : text) {
      if (c == '\n') in_comment = false;
      else if (c == '#') in_comment = true;
      if (in_comment) c = ' ';
    }
  }
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto word = [&] {
    skip();
    std::size_t start = i;
    while (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])))) ++i;
    return text.substr(start, i - start);
  };

  const std::string q1 = word();
  const std::string q2 = word();
  auto quantifier = [](const std::string& w) { return w == "forall" || w == "exists"; };
  if (!quantifier(q1) || !quantifier(q2))
    throw FragmentError("unsupported quantifier prefix '" + q1 + " " + q2 +
                        "': expected 'forall exists' or 'exists forall'");
  if (q1 == q2)
    throw FragmentError("unsupported quantifier prefix '" + q1 + " " + q2 +
                        "': exactly one quantifier alternation is supported");
  skip();
  if (i < text.size() && text[i] != '.') {
    const std::size_t save = i;
    if (quantifier(word()))
      throw FragmentError("unsupported quantifier prefix: only two quantifiers (one alternation) are supported");
    i = save;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
  } else {
    throw ParseError("expected '.' after the quantifier prefix", 0, i);
  }
  skip();
  if (i >= text.size() || text[i] != 'G' ||
      (i + 1 < text.size() && (std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_'))) {
    // Anything but a single leading G (F, X, U, nested operators) is out of the fragment.
    throw FragmentError("unsupported temporal shape: the body must be a single G over a relational predicate");
  }
  ++i;
  std::string_view rest = std::string_view(text).substr(i);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    // Temporal operators nested inside the predicate
    const char c = rest[j];
    const bool boundary_before = j == 0 || !(std::isalnum(static_cast<unsigned char>(rest[j - 1])) || rest[j - 1] == '_' || rest[j - 1] == '.');
    const bool boundary_after = j + 1 >= rest.size() || !(std::isalnum(static_cast<unsigned char>(rest[j + 1])) || rest[j + 1] == '_');
    if ((c == 'G' || c == 'F' || c == 'X' || c == 'U' || c == 'R') && boundary_before && boundary_after)
      throw FragmentError(std::string("unsupported temporal operator '") + c + "' inside the predicate");
  }
  HyperProperty hp;
  hp.pattern = q1 == "forall" ? Pattern::ForallExists : Pattern::ExistsForall;
  hp.body = PredicateParser(tokenize(rest, i)).parse();
  return hp;
}

PredicateTable::PredicateTable(const RelationalPredicate& pred, const KripkeStructure& left,
                               const KripkeStructure& right)
    : rows_(left.size()), columns_(right.size()), table_(left.size() * right.size(), false) {
  const RelationalPredicate bound = bind_predicate(pred, left.ap(), right.ap());
  for (StateIndex p = 0; p < rows_; ++p) {
    for (StateIndex q = 0; q < columns_; ++q) table_[p * columns_ + q] = eval_predicate(bound, left.label(p), right.label(q));
  }
}

}  // namespace hyperbmc

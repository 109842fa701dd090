#include "snawb/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>

namespace snawb::dsl {

namespace {

enum class Tok {
  ident,
  integer,
  real,
  kw_rel,
  kw_attr,
  kw_on,
  kw_if,
  kw_then,
  kw_else,
  kw_and,
  kw_or,
  kw_not,
  kw_true,
  kw_false,
  lparen,
  rparen,
  comma,
  colon,
  semicolon,
  assign,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  plus,
  minus,
  star,
  slash,
  end,
  invalid,
};

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::real: return "number";
    case Tok::kw_rel: return "'rel'";
    case Tok::kw_attr: return "'attr'";
    case Tok::kw_on: return "'on'";
    case Tok::kw_if: return "'if'";
    case Tok::kw_then: return "'then'";
    case Tok::kw_else: return "'else'";
    case Tok::kw_and: return "'and'";
    case Tok::kw_or: return "'or'";
    case Tok::kw_not: return "'not'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::semicolon: return "';'";
    case Tok::assign: return "'='";
    case Tok::eq: return "'=='";
    case Tok::ne: return "'!='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::end: return "end of input";
    case Tok::invalid: return "invalid character";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok = next();
      out.push_back(tok);
      if (tok.kind == Tok::end) break;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.span.begin = {line_, column_};
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok.kind = Tok::end;
      tok.span.end = tok.span.begin;
      return tok;
    }
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      tok.text = std::string(src_.substr(start, pos_ - start));
      tok.kind = keyword(tok.text);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Tok::integer;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        tok.kind = Tok::real;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        tok.kind = Tok::real;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      tok.text = std::string(src_.substr(start, pos_ - start));
    } else {
      tok.kind = punct();
      if (tok.kind == Tok::invalid) advance();
      tok.text = std::string(src_.substr(start, pos_ - start));
    }
    tok.span.end = {line_, column_};
    return tok;
  }

  Tok punct() {
    const char c = peek();
    const char n = peek(1);
    auto two = [this](Tok kind) {
      advance();
      advance();
      return kind;
    };
    auto one = [this](Tok kind) {
      advance();
      return kind;
    };
    switch (c) {
      case '(': return one(Tok::lparen);
      case ')': return one(Tok::rparen);
      case ',': return one(Tok::comma);
      case ':': return one(Tok::colon);
      case ';': return one(Tok::semicolon);
      case '+': return one(Tok::plus);
      case '-': return one(Tok::minus);
      case '*': return one(Tok::star);
      case '/': return one(Tok::slash);
      case '=': return n == '=' ? two(Tok::eq) : one(Tok::assign);
      case '!': return n == '=' ? two(Tok::ne) : Tok::invalid;
      case '<': return n == '=' ? two(Tok::le) : one(Tok::lt);
      case '>': return n == '=' ? two(Tok::ge) : one(Tok::gt);
      default: return Tok::invalid;
    }
  }

  static Tok keyword(std::string_view word) {
    if (word == "rel") return Tok::kw_rel;
    if (word == "attr") return Tok::kw_attr;
    if (word == "on") return Tok::kw_on;
    if (word == "if") return Tok::kw_if;
    if (word == "then") return Tok::kw_then;
    if (word == "else") return Tok::kw_else;
    if (word == "and") return Tok::kw_and;
    if (word == "or") return Tok::kw_or;
    if (word == "not") return Tok::kw_not;
    if (word == "true") return Tok::kw_true;
    if (word == "false") return Tok::kw_false;
    return Tok::ident;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct SyntaxError {
  Diagnostic diagnostic;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParseResult parse_all() {
    ParseResult result;
    while (!at(Tok::end)) {
      if (!at(Tok::kw_rel) && !at(Tok::kw_attr)) {
        result.diagnostics.push_back(
            syntax_at(cur(), "expected a definition", {describe(Tok::kw_rel), describe(Tok::kw_attr)}));
        synchronize();
        continue;
      }
      try {
        result.definitions.push_back(parse_definition());
      } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
        synchronize();
      }
    }
    return result;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok kind) const { return cur().kind == kind; }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }

  Span prev_end_span(const Span& begin) const {
    return {begin.begin, toks_[pos_ == 0 ? 0 : pos_ - 1].span.end};
  }

  static Diagnostic syntax_at(const Token& tok, std::string message, std::vector<std::string> expected) {
    Diagnostic d;
    d.code = DiagnosticCode::syntax;
    d.span = tok.span;
    if (tok.kind == Tok::end) {
      d.message = std::move(message) + ", found end of input";
    } else if (tok.kind == Tok::invalid) {
      d.message = std::move(message) + ", found invalid character '" + tok.text + "'";
    } else {
      d.message = std::move(message) + ", found '" + tok.text + "'";
    }
    d.expected = std::move(expected);
    return d;
  }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected) const {
    throw SyntaxError{syntax_at(cur(), std::move(message), std::move(expected))};
  }

  const Token& expect(Tok kind, const char* context) {
    if (!at(kind)) fail(std::string("expected ") + describe(kind) + " " + context, {describe(kind)});
    return take();
  }

  // Skips to the next definition keyword. Callers have always consumed at
  // least one token since the last synchronization point.
  void synchronize() {
    while (!at(Tok::end) && !at(Tok::kw_rel) && !at(Tok::kw_attr)) take();
  }

  Definition parse_definition() {
    const Token& head = take();
    if (head.kind == Tok::kw_rel) {
      RelationshipDefinition def;
      const Token& name = expect(Tok::ident, "after 'rel'");
      def.name = name.text;
      def.name_span = name.span;
      expect(Tok::kw_on, "before the roster question");
      const Token& question = expect(Tok::ident, "naming the roster question");
      def.roster_question_id = question.text;
      def.question_span = question.span;
      expect(Tok::colon, "before the relationship body");
      def.body = parse_expr();
      finish_definition();
      def.span = {head.span.begin, def.body->span.end};
      return def;
    }
    AttributeDefinition def;
    const Token& name = expect(Tok::ident, "after 'attr'");
    def.name = name.text;
    def.name_span = name.span;
    expect(Tok::colon, "before the result type");
    if (!at(Tok::ident) || (cur().text != "bool" && cur().text != "int" && cur().text != "real")) {
      fail("expected a result type", {"'bool'", "'int'", "'real'"});
    }
    const std::string type = take().text;
    def.result_type = type == "bool" ? ResultType::boolean : type == "int" ? ResultType::integer : ResultType::real;
    expect(Tok::assign, "before the attribute body");
    def.body = parse_expr();
    finish_definition();
    def.span = {head.span.begin, def.body->span.end};
    return def;
  }

  void finish_definition() {
    if (at(Tok::semicolon)) take();
    if (!at(Tok::end) && !at(Tok::kw_rel) && !at(Tok::kw_attr)) {
      fail("expected the end of the definition",
           {"an operator", describe(Tok::kw_rel), describe(Tok::kw_attr), describe(Tok::end)});
    }
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    Span span{lhs->span.begin, rhs->span.end};
    return make_expr(Binary{op, std::move(lhs), std::move(rhs)}, span);
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at(Tok::kw_or)) {
      take();
      lhs = binary(BinaryOp::logical_or, lhs, parse_and());
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_not();
    while (at(Tok::kw_and)) {
      take();
      lhs = binary(BinaryOp::logical_and, lhs, parse_not());
    }
    return lhs;
  }

  ExprPtr parse_not() {
    if (at(Tok::kw_not)) {
      const Span begin = take().span;
      ExprPtr operand = parse_not();
      Span span{begin.begin, operand->span.end};
      return make_expr(Unary{UnaryOp::logical_not, std::move(operand)}, span);
    }
    return parse_comparison();
  }

  static std::optional<BinaryOp> comparison_op(Tok kind) {
    switch (kind) {
      case Tok::eq: return BinaryOp::eq;
      case Tok::ne: return BinaryOp::ne;
      case Tok::lt: return BinaryOp::lt;
      case Tok::le: return BinaryOp::le;
      case Tok::gt: return BinaryOp::gt;
      case Tok::ge: return BinaryOp::ge;
      default: return std::nullopt;
    }
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_additive();
    if (auto op = comparison_op(cur().kind)) {
      take();
      lhs = binary(*op, lhs, parse_additive());
      if (comparison_op(cur().kind)) {
        fail("comparisons cannot be chained; add parentheses", {});
      }
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (at(Tok::plus) || at(Tok::minus)) {
      const BinaryOp op = take().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
      lhs = binary(op, lhs, parse_multiplicative());
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (at(Tok::star) || at(Tok::slash)) {
      const BinaryOp op = take().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
      lhs = binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at(Tok::minus)) {
      const Span begin = take().span;
      ExprPtr operand = parse_unary();
      Span span{begin.begin, operand->span.end};
      return make_expr(Unary{UnaryOp::negate, std::move(operand)}, span);
    }
    return parse_primary();
  }

  static std::vector<std::string> expression_starts() {
    return {"identifier", "number", "'('", "'if'", "'not'", "'-'", "'true'", "'false'"};
  }

  // Fails at the opening parenthesis when input ends inside it.
  void check_unclosed(const Token& open) const {
    if (at(Tok::end)) {
      Diagnostic d;
      d.code = DiagnosticCode::syntax;
      d.span = open.span;
      d.message = "unclosed '(' reaches end of input";
      d.expected = {"')'"};
      throw SyntaxError{d};
    }
  }

  ExprPtr parse_primary() {
    const Token& tok = cur();
    switch (tok.kind) {
      case Tok::integer: {
        take();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
          throw SyntaxError{{DiagnosticCode::syntax, tok.span, "integer literal out of range", {}, {}}};
        }
        return make_expr(IntLiteral{value}, tok.span);
      }
      case Tok::real: {
        take();
        return make_expr(RealLiteral{std::strtod(tok.text.c_str(), nullptr)}, tok.span);
      }
      case Tok::kw_true:
      case Tok::kw_false:
        take();
        return make_expr(BoolLiteral{tok.kind == Tok::kw_true}, tok.span);
      case Tok::kw_attr:
      case Tok::ident: {
        // A bare 'attr' most likely starts the next definition; leave it
        // for recovery.
        if (tok.kind == Tok::kw_attr && toks_[pos_ + 1].kind != Tok::lparen) {
          fail("expected an expression", {"an expression"});
        }
        const Token& name = take();
        if (at(Tok::lparen)) return parse_call(name);
        return make_expr(Name{name.text}, name.span);
      }
      case Tok::lparen: {
        const Token& open = take();
        check_unclosed(open);
        ExprPtr inner = parse_expr();
        check_unclosed(open);
        expect(Tok::rparen, "to close the group");
        return inner;
      }
      case Tok::kw_if: {
        const Span begin = take().span;
        ExprPtr condition = parse_expr();
        expect(Tok::kw_then, "after the if condition");
        ExprPtr then_branch = parse_expr();
        expect(Tok::kw_else, "after the then branch; every if needs an else");
        ExprPtr else_branch = parse_expr();
        Span span{begin.begin, else_branch->span.end};
        return make_expr(Conditional{std::move(condition), std::move(then_branch), std::move(else_branch)}, span);
      }
      default:
        fail("expected an expression", expression_starts());
    }
  }

  ExprPtr parse_call(const Token& name) {
    const Token& open = take();
    Call call;
    call.function = name.text;
    check_unclosed(open);
    if (!at(Tok::rparen)) {
      for (;;) {
        call.args.push_back(parse_expr());
        check_unclosed(open);
        if (at(Tok::comma)) {
          take();
          check_unclosed(open);
          continue;
        }
        break;
      }
    }
    if (!at(Tok::rparen)) fail("expected ',' or ')' in argument list", {"','", "')'"});
    const Token& close = take();
    return make_expr(std::move(call), Span{name.span.begin, close.span.end});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse_definitions(std::string_view source) {
  Parser parser(Lexer(source).run());
  return parser.parse_all();
}

SingleParseResult parse_definition(std::string_view source) {
  ParseResult all = parse_definitions(source);
  SingleParseResult result;
  result.diagnostics = std::move(all.diagnostics);
  if (!result.diagnostics.empty()) return result;
  if (all.definitions.size() != 1) {
    Diagnostic d;
    d.code = DiagnosticCode::syntax;
    if (all.definitions.empty()) {
      d.message = "expected a definition, found end of input";
      d.expected = {"'rel'", "'attr'"};
    } else {
      d.span = std::visit([](const auto& def) { return def.span; }, all.definitions[1]);
      d.message = "expected exactly one definition, found " + std::to_string(all.definitions.size());
    }
    result.diagnostics.push_back(std::move(d));
    return result;
  }
  result.definition = std::move(all.definitions.front());
  return result;
}

}  // namespace snawb::dsl

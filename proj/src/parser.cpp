#include "parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace evcheck {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  KwInt,
  KwVoid,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  EqEq,
  NotEq,
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  OrOr,
  Not,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (at_end()) {
        tok.kind = Tok::End;
        out.push_back(tok);
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_'))
          tok.text += advance();
        tok.kind = keyword(tok.text);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          tok.text += advance();
        tok.kind = Tok::Number;
      } else {
        tok.kind = symbol(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
        advance();
      if (!at_end() && peek() == '/' && peek2() == '/') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (!at_end() && peek() == '/' && peek2() == '*') {
        int line = line_, column = column_;
        advance();
        advance();
        for (;;) {
          if (at_end())
            throw ParseError("unterminated comment", line, column);
          if (peek() == '*' && peek2() == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
        continue;
      }
      return;
    }
  }

  static Tok keyword(const std::string& word) {
    if (word == "int") return Tok::KwInt;
    if (word == "void") return Tok::KwVoid;
    if (word == "if") return Tok::KwIf;
    if (word == "else") return Tok::KwElse;
    if (word == "while") return Tok::KwWhile;
    if (word == "return") return Tok::KwReturn;
    return Tok::Ident;
  }

  Tok symbol(Token& tok) {
    char c = advance();
    switch (c) {
      case '(':
        return Tok::LParen;
      case ')':
        return Tok::RParen;
      case '{':
        return Tok::LBrace;
      case '}':
        return Tok::RBrace;
      case ';':
        return Tok::Semi;
      case ',':
        return Tok::Comma;
      case '+':
        return Tok::Plus;
      case '-':
        return Tok::Minus;
      case '*':
        return Tok::Star;
      case '/':
        return Tok::Slash;
      case '%':
        return Tok::Percent;
      case '=':
        if (!at_end() && peek() == '=') {
          advance();
          return Tok::EqEq;
        }
        return Tok::Assign;
      case '!':
        if (!at_end() && peek() == '=') {
          advance();
          return Tok::NotEq;
        }
        return Tok::Not;
      case '<':
        if (!at_end() && peek() == '=') {
          advance();
          return Tok::Le;
        }
        return Tok::Lt;
      case '>':
        if (!at_end() && peek() == '=') {
          advance();
          return Tok::Ge;
        }
        return Tok::Gt;
      case '&':
        if (!at_end() && peek() == '&') {
          advance();
          return Tok::AndAnd;
        }
        throw ParseError("expected '&&'", tok.line, tok.column);
      case '|':
        if (!at_end() && peek() == '|') {
          advance();
          return Tok::OrOr;
        }
        throw ParseError("expected '||'", tok.line, tok.column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         tok.line, tok.column);
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ast::Program run() {
    ast::Program program;
    while (!check(Tok::End)) {
      if (!check(Tok::KwInt) && !check(Tok::KwVoid))
        fail("expected declaration or function definition");
      bool returns_int = check(Tok::KwInt);
      Token type_tok = advance();
      Token name = expect(Tok::Ident, "name");
      if (check(Tok::LParen)) {
        program.functions.push_back(
            parse_function(returns_int, name, type_tok));
      } else {
        if (!returns_int) fail_at(type_tok, "global variables must be int");
        ast::Global global;
        global.name = name.text;
        global.pos = pos_of(name);
        if (match(Tok::Assign)) global.init = parse_expr();
        expect(Tok::Semi, "';'");
        program.globals.push_back(std::move(global));
      }
    }
    return program;
  }

 private:
  static ast::Pos pos_of(const Token& tok) { return {tok.line, tok.column}; }

  const Token& peek() const { return toks_[idx_]; }
  bool check(Tok kind) const { return peek().kind == kind; }

  Token advance() { return toks_[idx_++]; }

  bool match(Tok kind) {
    if (!check(kind)) return false;
    ++idx_;
    return true;
  }

  Token expect(Tok kind, const std::string& what) {
    if (!check(kind)) fail("expected " + what);
    return advance();
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& tok = peek();
    throw ParseError(message, tok.line, tok.column);
  }

  [[noreturn]] static void fail_at(const Token& tok,
                                   const std::string& message) {
    throw ParseError(message, tok.line, tok.column);
  }

  ast::Function parse_function(bool returns_int, const Token& name,
                               const Token& type_tok) {
    ast::Function fn;
    fn.name = name.text;
    fn.returns_int = returns_int;
    fn.pos = pos_of(type_tok);
    expect(Tok::LParen, "'('");
    if (!check(Tok::RParen)) {
      do {
        expect(Tok::KwInt, "'int' parameter type");
        Token param = expect(Tok::Ident, "parameter name");
        fn.params.push_back({param.text, pos_of(param)});
      } while (match(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    if (match(Tok::Semi)) {
      fn.is_prototype = true;
      return fn;
    }
    expect(Tok::LBrace, "'{'");
    fn.body = parse_block_body();
    return fn;
  }

  // Consumes statements up to and including the closing brace.
  std::vector<ast::StmtPtr> parse_block_body() {
    std::vector<ast::StmtPtr> out;
    while (!match(Tok::RBrace)) {
      if (check(Tok::End)) fail("unterminated block");
      ast::StmtPtr stmt = parse_stmt();
      if (stmt) out.push_back(std::move(stmt));
    }
    return out;
  }

  // Returns null for the empty statement ';'.
  ast::StmtPtr parse_stmt() {
    if (match(Tok::Semi)) return nullptr;
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::KwInt:
        return parse_decl();
      case Tok::KwIf:
        return parse_if();
      case Tok::KwWhile:
        return parse_while();
      case Tok::KwReturn:
        return parse_return();
      case Tok::LBrace: {
        advance();
        auto stmt = std::make_unique<ast::Stmt>();
        stmt->kind = ast::Stmt::Kind::Block;
        stmt->pos = pos_of(tok);
        stmt->body = parse_block_body();
        return stmt;
      }
      case Tok::Ident:
        return parse_assign_or_call();
      default:
        fail("expected statement");
    }
  }

  ast::StmtPtr parse_decl() {
    Token kw = expect(Tok::KwInt, "'int'");
    Token name = expect(Tok::Ident, "variable name");
    auto stmt = std::make_unique<ast::Stmt>();
    stmt->kind = ast::Stmt::Kind::Decl;
    stmt->pos = pos_of(kw);
    stmt->name = name.text;
    if (match(Tok::Assign)) stmt->value = parse_rhs();
    expect(Tok::Semi, "';'");
    return stmt;
  }

  ast::StmtPtr parse_assign_or_call() {
    Token name = advance();
    auto stmt = std::make_unique<ast::Stmt>();
    stmt->pos = pos_of(name);
    stmt->name = name.text;
    if (match(Tok::Assign)) {
      stmt->kind = ast::Stmt::Kind::Assign;
      stmt->value = parse_rhs();
      expect(Tok::Semi, "';'");
      return stmt;
    }
    if (check(Tok::LParen)) {
      stmt->kind = ast::Stmt::Kind::Call;
      stmt->args = parse_call_args();
      expect(Tok::Semi, "';'");
      return stmt;
    }
    fail("expected '=' or '(' after identifier");
  }

  ast::StmtPtr parse_if() {
    Token kw = advance();
    auto stmt = std::make_unique<ast::Stmt>();
    stmt->kind = ast::Stmt::Kind::If;
    stmt->pos = pos_of(kw);
    expect(Tok::LParen, "'('");
    stmt->cond = parse_cond();
    expect(Tok::RParen, "')'");
    stmt->body = parse_branch();
    if (match(Tok::KwElse)) stmt->else_body = parse_branch();
    return stmt;
  }

  ast::StmtPtr parse_while() {
    Token kw = advance();
    auto stmt = std::make_unique<ast::Stmt>();
    stmt->kind = ast::Stmt::Kind::While;
    stmt->pos = pos_of(kw);
    expect(Tok::LParen, "'('");
    stmt->cond = parse_cond();
    expect(Tok::RParen, "')'");
    stmt->body = parse_branch();
    return stmt;
  }

  ast::StmtPtr parse_return() {
    Token kw = advance();
    auto stmt = std::make_unique<ast::Stmt>();
    stmt->kind = ast::Stmt::Kind::Return;
    stmt->pos = pos_of(kw);
    if (!check(Tok::Semi)) stmt->value = parse_expr();
    expect(Tok::Semi, "';'");
    return stmt;
  }

  // A branch body: either a braced block or a single statement.
  std::vector<ast::StmtPtr> parse_branch() {
    std::vector<ast::StmtPtr> out;
    if (match(Tok::LBrace)) return parse_block_body();
    ast::StmtPtr stmt = parse_stmt();
    if (stmt) out.push_back(std::move(stmt));
    return out;
  }

  // Assignment right-hand side: plain expression or a single call.
  ast::ExprPtr parse_rhs() {
    // A call is only valid as the entire right-hand side; nondet() is an
    // ordinary expression leaf and may appear anywhere.
    if (check(Tok::Ident) && peek().text != "nondet" &&
        toks_[idx_ + 1].kind == Tok::LParen) {
      Token name = advance();
      auto expr = std::make_unique<ast::Expr>();
      expr->kind = ast::Expr::Kind::Call;
      expr->pos = pos_of(name);
      expr->name = name.text;
      expr->args = parse_call_args();
      return expr;
    }
    return parse_expr();
  }

  std::vector<ast::ExprPtr> parse_call_args() {
    expect(Tok::LParen, "'('");
    std::vector<ast::ExprPtr> args;
    if (!check(Tok::RParen)) {
      do {
        args.push_back(parse_expr());
      } while (match(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  ast::CondPtr parse_cond() { return parse_or(); }

  ast::CondPtr parse_or() {
    ast::CondPtr cond = parse_and();
    while (check(Tok::OrOr)) {
      Token op = advance();
      auto node = std::make_unique<ast::Cond>();
      node->kind = ast::Cond::Kind::Or;
      node->pos = pos_of(op);
      node->a = std::move(cond);
      node->b = parse_and();
      cond = std::move(node);
    }
    return cond;
  }

  ast::CondPtr parse_and() {
    ast::CondPtr cond = parse_cond_atom();
    while (check(Tok::AndAnd)) {
      Token op = advance();
      auto node = std::make_unique<ast::Cond>();
      node->kind = ast::Cond::Kind::And;
      node->pos = pos_of(op);
      node->a = std::move(cond);
      node->b = parse_cond_atom();
      cond = std::move(node);
    }
    return cond;
  }

  ast::CondPtr parse_cond_atom() {
    if (check(Tok::Not)) {
      Token op = advance();
      auto node = std::make_unique<ast::Cond>();
      node->kind = ast::Cond::Kind::Not;
      node->pos = pos_of(op);
      node->a = parse_cond_atom();
      return node;
    }
    if (check(Tok::LParen)) {
      // Ambiguous: '(' may open a parenthesized condition or the left
      // expression of a comparison.  Try the comparison first and fall back.
      std::size_t saved = idx_;
      try {
        return parse_comparison();
      } catch (const ParseError&) {
        idx_ = saved;
      }
      expect(Tok::LParen, "'('");
      ast::CondPtr cond = parse_cond();
      expect(Tok::RParen, "')'");
      return cond;
    }
    return parse_comparison();
  }

  ast::CondPtr parse_comparison() {
    auto node = std::make_unique<ast::Cond>();
    node->kind = ast::Cond::Kind::Cmp;
    node->pos = {peek().line, peek().column};
    node->lhs = parse_expr();
    switch (peek().kind) {
      case Tok::EqEq:
        node->cmp = ast::Cond::CmpKind::Eq;
        break;
      case Tok::NotEq:
        node->cmp = ast::Cond::CmpKind::Ne;
        break;
      case Tok::Lt:
        node->cmp = ast::Cond::CmpKind::Lt;
        break;
      case Tok::Le:
        node->cmp = ast::Cond::CmpKind::Le;
        break;
      case Tok::Gt:
        node->cmp = ast::Cond::CmpKind::Gt;
        break;
      case Tok::Ge:
        node->cmp = ast::Cond::CmpKind::Ge;
        break;
      default:
        fail("expected comparison operator");
    }
    advance();
    node->rhs = parse_expr();
    return node;
  }

  ast::ExprPtr parse_expr() {
    ast::ExprPtr expr = parse_term();
    while (check(Tok::Plus) || check(Tok::Minus)) {
      Token op = advance();
      auto node = std::make_unique<ast::Expr>();
      node->kind = op.kind == Tok::Plus ? ast::Expr::Kind::Add
                                        : ast::Expr::Kind::Sub;
      node->pos = pos_of(op);
      node->lhs = std::move(expr);
      node->rhs = parse_term();
      expr = std::move(node);
    }
    return expr;
  }

  ast::ExprPtr parse_term() {
    ast::ExprPtr expr = parse_factor();
    while (check(Tok::Star) || check(Tok::Slash) || check(Tok::Percent)) {
      Token op = advance();
      auto node = std::make_unique<ast::Expr>();
      node->kind = op.kind == Tok::Star    ? ast::Expr::Kind::Mul
                   : op.kind == Tok::Slash ? ast::Expr::Kind::Div
                                           : ast::Expr::Kind::Mod;
      node->pos = pos_of(op);
      node->lhs = std::move(expr);
      node->rhs = parse_factor();
      expr = std::move(node);
    }
    return expr;
  }

  ast::ExprPtr parse_factor() {
    const Token& tok = peek();
    if (match(Tok::Minus)) {
      auto node = std::make_unique<ast::Expr>();
      node->kind = ast::Expr::Kind::Neg;
      node->pos = pos_of(tok);
      node->lhs = parse_factor();
      return node;
    }
    if (match(Tok::LParen)) {
      ast::ExprPtr inner = parse_expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (check(Tok::Number)) {
      Token num = advance();
      auto node = std::make_unique<ast::Expr>();
      node->kind = ast::Expr::Kind::Literal;
      node->pos = pos_of(num);
      node->literal = Int(num.text);
      return node;
    }
    if (check(Tok::Ident)) {
      Token name = advance();
      if (name.text == "nondet") {
        expect(Tok::LParen, "'('");
        expect(Tok::RParen, "')'");
        auto node = std::make_unique<ast::Expr>();
        node->kind = ast::Expr::Kind::Nondet;
        node->pos = pos_of(name);
        return node;
      }
      if (check(Tok::LParen))
        fail_at(name, "calls cannot appear inside expressions");
      auto node = std::make_unique<ast::Expr>();
      node->kind = ast::Expr::Kind::Var;
      node->pos = pos_of(name);
      node->name = name.text;
      return node;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace

ast::Program parse(const std::string& source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.run();
}

}  // namespace evcheck

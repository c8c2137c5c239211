#include "olspace/expr.hpp"

#include <cctype>
#include <cmath>
#include <set>

namespace olspace::expr {

namespace {

bool known_function(const std::string& name) {
  static const std::set<std::string> fns{"log", "exp", "sqrt", "min", "max", "abs"};
  return fns.count(name) > 0;
}

int arity(const std::string& name) { return (name == "min" || name == "max") ? 2 : 1; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  if (src.empty()) throw lex_error(1, "<empty input>");
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          ++k;
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      std::string lexeme(src.substr(i, j - i));
      out.push_back({TokKind::Number, lexeme, col, std::stod(lexeme)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({TokKind::Ident, std::string(src.substr(i, j - i)), col});
      i = j;
      continue;
    }
    TokKind kind;
    switch (c) {
      case '+': kind = TokKind::Plus; break;
      case '-': kind = TokKind::Minus; break;
      case '*': kind = TokKind::Star; break;
      case '/': kind = TokKind::Slash; break;
      case '^': kind = TokKind::Caret; break;
      case '(': kind = TokKind::LParen; break;
      case ')': kind = TokKind::RParen; break;
      case ',': kind = TokKind::Comma; break;
      default: throw lex_error(col, std::string(1, c));
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  if (out.empty()) throw lex_error(1, "<only whitespace>");
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  AstPtr run() {
    AstPtr e = expr();
    if (pos_ < toks_.size()) throw parse_error(toks_[pos_].position, "end of input");
    return e;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;

  bool at(TokKind k) const { return pos_ < toks_.size() && toks_[pos_].kind == k; }
  const Token& peek() const { return toks_[pos_]; }
  int here() const {
    return pos_ < toks_.size() ? toks_[pos_].position
                               : toks_.back().position + static_cast<int>(toks_.back().lexeme.size());
  }
  Token take() { return toks_[pos_++]; }
  void expect(TokKind k, const char* what) {
    if (!at(k)) throw parse_error(here(), what);
    ++pos_;
  }

  static AstPtr make(Ast::Kind kind, std::vector<AstPtr> args) {
    auto n = std::make_shared<Ast>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
  }

  AstPtr expr() {
    AstPtr lhs = term();
    while (at(TokKind::Plus) || at(TokKind::Minus)) {
      bool plus = take().kind == TokKind::Plus;
      AstPtr rhs = term();
      lhs = make(plus ? Ast::Kind::Add : Ast::Kind::Sub, {lhs, rhs});
    }
    return lhs;
  }

  AstPtr term() {
    AstPtr lhs = factor();
    while (at(TokKind::Star) || at(TokKind::Slash)) {
      bool mul = take().kind == TokKind::Star;
      AstPtr rhs = factor();
      lhs = make(mul ? Ast::Kind::Mul : Ast::Kind::Div, {lhs, rhs});
    }
    return lhs;
  }

  AstPtr factor() {
    // unary minus binds looser than '^': -u^2 reads as -(u^2)
    if (at(TokKind::Minus)) {
      take();
      return make(Ast::Kind::Neg, {factor()});
    }
    AstPtr base = atom();
    if (at(TokKind::Caret)) {
      take();
      AstPtr exp = factor();  // right-associative
      return make(Ast::Kind::Pow, {base, exp});
    }
    return base;
  }

  AstPtr atom() {
    if (at(TokKind::Number)) {
      Token t = take();
      auto n = std::make_shared<Ast>();
      n->kind = Ast::Kind::Const;
      n->value = t.number;
      return n;
    }
    if (at(TokKind::Ident)) {
      Token t = take();
      if (at(TokKind::LParen)) {
        if (!known_function(t.lexeme)) throw parse_error(t.position, "a known function name");
        take();
        std::vector<AstPtr> args;
        args.push_back(expr());
        while (at(TokKind::Comma)) {
          take();
          args.push_back(expr());
        }
        expect(TokKind::RParen, "')'");
        if (static_cast<int>(args.size()) != arity(t.lexeme))
          throw parse_error(t.position, t.lexeme + " takes " + std::to_string(arity(t.lexeme)) +
                                            " argument(s)");
        auto n = std::make_shared<Ast>();
        n->kind = Ast::Kind::Call;
        n->name = t.lexeme;
        n->args = std::move(args);
        return n;
      }
      auto n = std::make_shared<Ast>();
      n->kind = Ast::Kind::Var;
      n->name = t.lexeme;
      return n;
    }
    if (at(TokKind::LParen)) {
      take();
      AstPtr inner = expr();
      expect(TokKind::RParen, "')'");
      return inner;
    }
    throw parse_error(here(), "a number, identifier or '('");
  }
};

}  // namespace

AstPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

AstPtr parse(std::string_view src) { return parse(tokenize(src)); }

double eval_ast(const Ast& ast, std::string_view var, double x) {
  switch (ast.kind) {
    case Ast::Kind::Const:
      return ast.value;
    case Ast::Kind::Var:
      if (ast.name != var) throw eval_domain_error("unbound variable " + ast.name, x);
      return x;
    case Ast::Kind::Neg:
      return -eval_ast(*ast.args[0], var, x);
    case Ast::Kind::Add:
      return eval_ast(*ast.args[0], var, x) + eval_ast(*ast.args[1], var, x);
    case Ast::Kind::Sub:
      return eval_ast(*ast.args[0], var, x) - eval_ast(*ast.args[1], var, x);
    case Ast::Kind::Mul:
      return eval_ast(*ast.args[0], var, x) * eval_ast(*ast.args[1], var, x);
    case Ast::Kind::Div: {
      double a = eval_ast(*ast.args[0], var, x);
      double b = eval_ast(*ast.args[1], var, x);
      double r = a / b;
      if (std::isnan(r)) throw eval_domain_error("division", b);
      return r;
    }
    case Ast::Kind::Pow: {
      double a = eval_ast(*ast.args[0], var, x);
      double b = eval_ast(*ast.args[1], var, x);
      double r = std::pow(a, b);
      if (std::isnan(r)) throw eval_domain_error("pow", a);
      return r;
    }
    case Ast::Kind::Call: {
      double a = eval_ast(*ast.args[0], var, x);
      if (ast.name == "log") {
        if (!(a > 0.0)) throw eval_domain_error("log", a);
        return std::log(a);
      }
      if (ast.name == "exp") return std::exp(a);
      if (ast.name == "sqrt") {
        if (a < 0.0) throw eval_domain_error("sqrt", a);
        return std::sqrt(a);
      }
      if (ast.name == "abs") return std::abs(a);
      double b = eval_ast(*ast.args[1], var, x);
      if (ast.name == "min") return std::min(a, b);
      return std::max(a, b);
    }
  }
  throw eval_domain_error("unknown node", x);
}

namespace {

void print(const Ast& ast, std::string& out) {
  switch (ast.kind) {
    case Ast::Kind::Const: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", ast.value);
      out += buf;
      return;
    }
    case Ast::Kind::Var:
      out += ast.name;
      return;
    case Ast::Kind::Neg:
      out += "-(";
      print(*ast.args[0], out);
      out += ')';
      return;
    case Ast::Kind::Add:
    case Ast::Kind::Sub:
    case Ast::Kind::Mul:
    case Ast::Kind::Div:
    case Ast::Kind::Pow: {
      const char* op = ast.kind == Ast::Kind::Add   ? "+"
                       : ast.kind == Ast::Kind::Sub ? "-"
                       : ast.kind == Ast::Kind::Mul ? "*"
                       : ast.kind == Ast::Kind::Div ? "/"
                                                    : "^";
      out += '(';
      print(*ast.args[0], out);
      out += op;
      print(*ast.args[1], out);
      out += ')';
      return;
    }
    case Ast::Kind::Call:
      out += ast.name;
      out += '(';
      for (std::size_t i = 0; i < ast.args.size(); ++i) {
        if (i) out += ',';
        print(*ast.args[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Ast& ast) {
  std::string out;
  print(ast, out);
  return out;
}

bool structurally_equal(const Ast& a, const Ast& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == Ast::Kind::Const && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

namespace {
void collect_vars(const Ast& ast, std::set<std::string>& vars) {
  if (ast.kind == Ast::Kind::Var) vars.insert(ast.name);
  for (const AstPtr& a : ast.args) collect_vars(*a, vars);
}
}  // namespace

std::vector<std::string> free_variables(const Ast& ast) {
  std::set<std::string> vars;
  collect_vars(ast, vars);
  return {vars.begin(), vars.end()};
}

}  // namespace olspace::expr

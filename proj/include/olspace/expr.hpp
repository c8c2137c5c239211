#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "olspace/errors.hpp"

namespace olspace::expr {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma };

struct Token {
  TokKind kind;
  std::string lexeme;
  int position;  // 1-based column
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view src);

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double value = 0.0;        // Const
  std::string name;          // Var / Call
  std::vector<AstPtr> args;  // operands
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?         -- '^' right-associative
///   unary  := '-' unary | atom            -- unary minus binds looser than '^'
///   atom   := Number | Ident | Ident '(' expr (',' expr)* ')' | '(' expr ')'
AstPtr parse(const std::vector<Token>& tokens);
AstPtr parse(std::string_view src);

/// IEEE evaluation with the single variable `var` bound to x. log/exp/sqrt
/// domain violations raise eval_domain_error instead of returning NaN.
double eval_ast(const Ast& ast, std::string_view var, double x);

std::string to_string(const Ast& ast);

bool structurally_equal(const Ast& a, const Ast& b);

/// Names of the variables appearing in the expression (for role checks).
std::vector<std::string> free_variables(const Ast& ast);

}  // namespace olspace::expr

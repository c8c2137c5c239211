#include <doctest.h>

#include <cmath>

#include "olspace/expr.hpp"
#include "olspace/orlicz.hpp"

using namespace olspace;
using namespace olspace::expr;

TEST_CASE("tokenizer") {
  auto toks = tokenize("u^2");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].kind == TokKind::Ident);
  CHECK(toks[0].lexeme == "u");
  CHECK(toks[1].kind == TokKind::Caret);
  CHECK(toks[2].kind == TokKind::Number);
  CHECK(toks[2].number == 2.0);

  auto toks2 = tokenize("log(1+u)");
  REQUIRE(toks2.size() == 6);
  CHECK(toks2[0].lexeme == "log");
  CHECK(toks2[1].kind == TokKind::LParen);
  CHECK(toks2[2].number == 1.0);
  CHECK(toks2[3].kind == TokKind::Plus);
  CHECK(toks2[4].lexeme == "u");
  CHECK(toks2[5].kind == TokKind::RParen);

  CHECK(tokenize("1.5e-3")[0].number == doctest::Approx(1.5e-3));

  try {
    tokenize("u $ 2");
    FAIL("expected lex error");
  } catch (const lex_error& e) {
    CHECK(e.position == 3);
  }
}

TEST_CASE("parser shapes") {
  AstPtr a = parse("u^2*log(1+u)");
  CHECK(a->kind == Ast::Kind::Mul);
  CHECK(a->args[0]->kind == Ast::Kind::Pow);
  CHECK(a->args[1]->kind == Ast::Kind::Call);
  CHECK(a->args[1]->name == "log");

  // unary minus binds looser than ^
  AstPtr b = parse("-u^2");
  CHECK(b->kind == Ast::Kind::Neg);
  CHECK(b->args[0]->kind == Ast::Kind::Pow);

  // ^ is right-associative
  AstPtr c = parse("u^2^3");
  CHECK(c->kind == Ast::Kind::Pow);
  CHECK(c->args[1]->kind == Ast::Kind::Pow);

  try {
    parse("1+");
    FAIL("expected parse error");
  } catch (const parse_error& e) {
    CHECK(e.position >= 2);
  }
}

TEST_CASE("evaluation and domain errors") {
  CHECK(eval_ast(*parse("u^2"), "u", 3.0) == doctest::Approx(9.0));
  CHECK(eval_ast(*parse("log(1+u)"), "u", 0.0) == doctest::Approx(0.0));
  CHECK(eval_ast(*parse("min(u,2)*max(u,2)"), "u", 3.0) == doctest::Approx(6.0));
  CHECK(eval_ast(*parse("abs(0-u)"), "u", 4.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(eval_ast(*parse("sqrt(u-1)"), "u", 0.0), eval_domain_error);
  CHECK_THROWS_AS(eval_ast(*parse("log(u-5)"), "u", 1.0), eval_domain_error);
  CHECK_THROWS_AS(eval_ast(*parse("t"), "u", 1.0), eval_domain_error);
}

TEST_CASE("print/parse round trip is structurally stable") {
  for (const char* src : {"u^2*log(1+u)", "-u^2+3/u", "min(u,max(1,u^0.5))",
                          "exp(u)-1", "(u+1)*(u+2)^3", "1.5e-3*u"}) {
    AstPtr a = parse(src);
    AstPtr b = parse(to_string(*a));
    CHECK(structurally_equal(*a, *b));
  }
}

TEST_CASE("precedence is total over operator pairs") {
  // every adjacent operator pair parses without ambiguity errors
  const char* ops[] = {"+", "-", "*", "/", "^"};
  for (const char* a : ops)
    for (const char* b : ops) {
      std::string src = std::string("2") + a + "3" + b + "4";
      AstPtr ast = parse(src);
      CHECK(ast != nullptr);
      double v = eval_ast(*ast, "u", 0.0);
      CHECK(std::isfinite(v));
    }
}

TEST_CASE("malformed input corpus yields positioned errors") {
  const char* corpus[] = {
      "",        " ",       "u $ 2",    "1+",      "*3",       "(u",        "u)",
      "log(",    "log()",   "log(1,2)", "min(1)",  "max(1)",   "fn(2)",     "2u",
      "u 2",     "1..2",    "^2",       "u^",      "u**2",     "//",        "u//2",
      "()",      "1,2",     "u+*2",     "log 1",   "abs(,1)",  "min(1,)",   "@",
      "u^^2",    "3e",
  };
  int positioned = 0;
  for (const char* src : corpus) {
    try {
      parse(src);
      FAIL("parsed malformed input: ", src);
    } catch (const lex_error& e) {
      CHECK(e.position >= 1);
      ++positioned;
    } catch (const parse_error& e) {
      CHECK(e.position >= 1);
      ++positioned;
    }
  }
  CHECK(positioned == 30);
}

TEST_CASE("parsed families agree with built-ins") {
  OrliczFn builtin = OrliczFn::power(2.0);
  OrliczFn parsed = OrliczFn::parsed("u^2");
  for (double u : Grid{1e-8, 1e8, 64}.nodes())
    CHECK(std::abs(parsed.eval(u) - builtin.eval(u)) <= 1e-12 * builtin.eval(u));

  // literal 1+u / exp(u)-1 evaluation is ill-conditioned below u ~ 1e-3, so
  // the strict relative comparison starts there
  OrliczFn builtin_pl = OrliczFn::power_log(2.0, 1.0);
  OrliczFn parsed_pl = OrliczFn::parsed("u^2*log(1+u)");
  OrliczFn builtin_e = OrliczFn::exp_minus_one();
  OrliczFn parsed_e = OrliczFn::parsed("exp(u)-1");
  for (double u : Grid{1e-3, 1e2, 64}.nodes()) {
    CHECK(std::abs(parsed_pl.eval(u) - builtin_pl.eval(u)) <= 1e-12 * builtin_pl.eval(u));
    CHECK(std::abs(parsed_e.eval(u) - builtin_e.eval(u)) <= 1e-12 * builtin_e.eval(u));
  }
}

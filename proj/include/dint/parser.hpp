#pragma once

// Expression front end for operators, polynomials and integrands.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := integer | ident | ident '(' expr ')' | '(' expr ')'
//
// Products are kept in written order, so "dt*t" is t*dt + 1.

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dint/coeff.hpp"
#include "dint/hyperexp.hpp"
#include "dint/weyl.hpp"

namespace dint {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace ast {

enum class Kind { number, ident, add, sub, mul, div, pow, neg, call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  Integer value;     // number
  std::string name;  // ident, call
  NodePtr lhs, rhs;  // binary operands; neg and call use lhs
  std::size_t line = 1, column = 1;
};

}  // namespace ast

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  ast::NodePtr parse() {
    skip_space();
    if (pos_ >= src_.size()) fail("empty expression");
    auto e = expr();
    skip_space();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  std::shared_ptr<ast::Node> make(ast::Kind k, ast::NodePtr l, ast::NodePtr r, std::size_t line,
                                  std::size_t col) const {
    auto n = std::make_shared<ast::Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    n->line = line;
    n->column = col;
    return n;
  }

  ast::NodePtr expr() {
    auto lhs = term();
    while (true) {
      skip_space();
      const auto l = line_, c = col_;
      if (accept('+')) lhs = make(ast::Kind::add, lhs, term(), l, c);
      else if (accept('-')) lhs = make(ast::Kind::sub, lhs, term(), l, c);
      else return lhs;
    }
  }

  ast::NodePtr term() {
    auto lhs = unary();
    while (true) {
      skip_space();
      const auto l = line_, c = col_;
      if (accept('*')) lhs = make(ast::Kind::mul, lhs, unary(), l, c);
      else if (accept('/')) lhs = make(ast::Kind::div, lhs, unary(), l, c);
      else return lhs;
    }
  }

  ast::NodePtr unary() {
    skip_space();
    const auto l = line_, c = col_;
    if (accept('-')) return make(ast::Kind::neg, unary(), nullptr, l, c);
    if (accept('+')) return unary();
    return power();
  }

  ast::NodePtr power() {
    auto base = primary();
    skip_space();
    const auto l = line_, c = col_;
    if (accept('^')) return make(ast::Kind::pow, base, unary(), l, c);
    return base;
  }

  ast::NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const auto l = line_, c = col_;
    const char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_];
        advance();
      }
      auto n = make(ast::Kind::number, nullptr, nullptr, l, c);
      n->value = Integer(digits);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        name += src_[pos_];
        advance();
      }
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        advance();
        auto arg = expr();
        if (!accept(')')) fail("expected ')'");
        auto n = make(ast::Kind::call, arg, nullptr, l, c);
        n->name = name;
        return n;
      }
      auto n = make(ast::Kind::ident, nullptr, nullptr, l, c);
      n->name = name;
      return n;
    }
    if (accept('(')) {
      auto e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected '") + ch + "'");
  }
};

[[noreturn]] inline void node_error(const ast::Node& n, const std::string& msg) {
  throw ParseError(msg, n.line, n.column);
}

inline long param_index(const std::vector<std::string>& params, const std::string& name) {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] == name) return static_cast<long>(i);
  return -1;
}

// Evaluates an integer exponent.
inline long integer_value(const ast::Node& n) {
  switch (n.kind) {
    case ast::Kind::number:
      if (!n.value.fits_slong_p()) node_error(n, "exponent too large");
      return n.value.get_si();
    case ast::Kind::neg: return -integer_value(*n.lhs);
    case ast::Kind::add: return integer_value(*n.lhs) + integer_value(*n.rhs);
    case ast::Kind::sub: return integer_value(*n.lhs) - integer_value(*n.rhs);
    case ast::Kind::mul: return integer_value(*n.lhs) * integer_value(*n.rhs);
    default: node_error(n, "exponent must be an integer");
  }
}

}  // namespace detail

inline ast::NodePtr parse_expression(const std::string& src) { return detail::Parser(src).parse(); }

/// Constant expression in the declared parameters.
template <Field K>
K to_coefficient(const ast::Node& n, const std::vector<std::string>& params) {
  switch (n.kind) {
    case ast::Kind::number: return coeff_traits<K>::from_integer(n.value);
    case ast::Kind::ident: {
      const long p = detail::param_index(params, n.name);
      if (p < 0) detail::node_error(n, "unknown identifier '" + n.name + "'");
      return field_ops<K>::from_param_poly(ParamPoly::variable(static_cast<std::size_t>(p)));
    }
    case ast::Kind::add: return to_coefficient<K>(*n.lhs, params) + to_coefficient<K>(*n.rhs, params);
    case ast::Kind::sub: return to_coefficient<K>(*n.lhs, params) - to_coefficient<K>(*n.rhs, params);
    case ast::Kind::mul: return to_coefficient<K>(*n.lhs, params) * to_coefficient<K>(*n.rhs, params);
    case ast::Kind::div: {
      const K d = to_coefficient<K>(*n.rhs, params);
      if (coeff_traits<K>::is_zero(d)) detail::node_error(n, "division by zero");
      return to_coefficient<K>(*n.lhs, params) / d;
    }
    case ast::Kind::neg: return -to_coefficient<K>(*n.lhs, params);
    case ast::Kind::pow: {
      const long e = detail::integer_value(*n.rhs);
      K b = to_coefficient<K>(*n.lhs, params);
      if (e < 0) {
        if (coeff_traits<K>::is_zero(b)) detail::node_error(n, "division by zero");
        b = coeff_traits<K>::one() / b;
      }
      K r = coeff_traits<K>::one();
      for (long i = 0; i < std::abs(e); ++i) r = r * b;
      return r;
    }
    case ast::Kind::call: detail::node_error(n, "function calls are not allowed here");
  }
  detail::node_error(n, "invalid expression");
}

template <Field K>
K parse_coefficient(const std::string& src, const std::vector<std::string>& params) {
  return to_coefficient<K>(*parse_expression(src), params);
}

/// Operator in D; products respect the written order.
template <Field K>
WeylElement<K> to_weyl(const ast::Node& n, const SignaturePtr& sig) {
  using W = WeylElement<K>;
  switch (n.kind) {
    case ast::Kind::number: return W::constant(sig, coeff_traits<K>::from_integer(n.value));
    case ast::Kind::ident: {
      for (std::size_t i = 0; i < sig->n(); ++i) {
        if (n.name == sig->vars[i]) return W::x(sig, i);
        if (n.name == sig->derivative_name(i)) return W::d(sig, i);
      }
      if (detail::param_index(sig->params, n.name) >= 0) return W::constant(sig, to_coefficient<K>(n, sig->params));
      detail::node_error(n, "unknown identifier '" + n.name + "'");
    }
    case ast::Kind::add: return to_weyl<K>(*n.lhs, sig) + to_weyl<K>(*n.rhs, sig);
    case ast::Kind::sub: return to_weyl<K>(*n.lhs, sig) - to_weyl<K>(*n.rhs, sig);
    case ast::Kind::mul: return to_weyl<K>(*n.lhs, sig) * to_weyl<K>(*n.rhs, sig);
    case ast::Kind::neg: return -to_weyl<K>(*n.lhs, sig);
    case ast::Kind::div: {
      const W d = to_weyl<K>(*n.rhs, sig);
      if (d.is_zero()) detail::node_error(n, "division by zero");
      if (d.size() != 1 || !d.terms().begin()->first.is_one()) detail::node_error(n, "operators can only be divided by constants");
      return to_weyl<K>(*n.lhs, sig).scaled(coeff_traits<K>::one() / d.terms().begin()->second);
    }
    case ast::Kind::pow: {
      const long e = detail::integer_value(*n.rhs);
      if (e < 0) detail::node_error(n, "negative powers of operators are not allowed");
      return to_weyl<K>(*n.lhs, sig).pow(static_cast<unsigned>(e));
    }
    case ast::Kind::call: detail::node_error(n, "function calls are not allowed in operators");
  }
  detail::node_error(n, "invalid expression");
}

template <Field K>
WeylElement<K> parse_operator(const std::string& src, const SignaturePtr& sig) {
  return to_weyl<K>(*parse_expression(src), sig);
}

/// Commutative polynomial in the x-variables of sig.
template <Field K>
MPoly<K> to_polynomial(const ast::Node& n, const SignaturePtr& sig) {
  using P = MPoly<K>;
  switch (n.kind) {
    case ast::Kind::number: return P::constant(coeff_traits<K>::from_integer(n.value));
    case ast::Kind::ident:
      for (std::size_t i = 0; i < sig->n(); ++i)
        if (n.name == sig->vars[i]) return P::variable(i);
      if (detail::param_index(sig->params, n.name) >= 0) return P::constant(to_coefficient<K>(n, sig->params));
      detail::node_error(n, "unknown identifier '" + n.name + "'");
    case ast::Kind::add: return to_polynomial<K>(*n.lhs, sig) + to_polynomial<K>(*n.rhs, sig);
    case ast::Kind::sub: return to_polynomial<K>(*n.lhs, sig) - to_polynomial<K>(*n.rhs, sig);
    case ast::Kind::mul: return to_polynomial<K>(*n.lhs, sig) * to_polynomial<K>(*n.rhs, sig);
    case ast::Kind::neg: return -to_polynomial<K>(*n.lhs, sig);
    case ast::Kind::div: {
      const P d = to_polynomial<K>(*n.rhs, sig);
      if (d.is_zero()) detail::node_error(n, "division by zero");
      if (!d.is_constant()) detail::node_error(n, "polynomials can only be divided by constants");
      return to_polynomial<K>(*n.lhs, sig).scaled(coeff_traits<K>::one() / d.constant_term());
    }
    case ast::Kind::pow: {
      const long e = detail::integer_value(*n.rhs);
      if (e < 0) detail::node_error(n, "negative powers are not allowed in polynomials");
      return to_polynomial<K>(*n.lhs, sig).pow(static_cast<unsigned>(e));
    }
    case ast::Kind::call: detail::node_error(n, "function calls are not allowed in polynomials");
  }
  detail::node_error(n, "invalid expression");
}

template <Field K>
MPoly<K> parse_polynomial(const std::string& src, const SignaturePtr& sig) {
  return to_polynomial<K>(*parse_expression(src), sig);
}

/// Integrand r * exp(g): rational r, polynomial g, written with exp(...).
template <Field K>
HyperexpFunction<K> to_integrand(const ast::Node& n, const SignaturePtr& sig) {
  using H = HyperexpFunction<K>;
  switch (n.kind) {
    case ast::Kind::number:
    case ast::Kind::ident: return H::polynomial(to_polynomial<K>(n, sig));
    case ast::Kind::add: return to_integrand<K>(*n.lhs, sig) + to_integrand<K>(*n.rhs, sig);
    case ast::Kind::sub: return to_integrand<K>(*n.lhs, sig) - to_integrand<K>(*n.rhs, sig);
    case ast::Kind::mul: return to_integrand<K>(*n.lhs, sig) * to_integrand<K>(*n.rhs, sig);
    case ast::Kind::neg: return -to_integrand<K>(*n.lhs, sig);
    case ast::Kind::div: {
      const H d = to_integrand<K>(*n.rhs, sig);
      if (d.is_zero()) detail::node_error(n, "division by zero");
      return to_integrand<K>(*n.lhs, sig) / d;
    }
    case ast::Kind::pow: return to_integrand<K>(*n.lhs, sig).pow(detail::integer_value(*n.rhs));
    case ast::Kind::call:
      if (n.name != "exp") detail::node_error(n, "unknown function '" + n.name + "'");
      return H::exp(to_polynomial<K>(*n.lhs, sig));
  }
  detail::node_error(n, "invalid expression");
}

template <Field K>
HyperexpFunction<K> parse_integrand(const std::string& src, const SignaturePtr& sig) {
  const auto node = parse_expression(src);
  try {
    return to_integrand<K>(*node, sig);
  } catch (const NotHyperexponential& e) {
    throw ParseError(e.what(), node->line, node->column);
  }
}

}  // namespace dint

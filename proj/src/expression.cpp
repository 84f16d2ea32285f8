#include "sturmkit/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "sturmkit/format.hpp"
#include "sturmkit/error.hpp"

namespace sturmkit {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Sqrt, Abs };

struct Expression::Node {
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Expression::Node>(Expression::Node{op, 0.0, std::move(lhs), std::move(rhs)});
}

NodePtr make_number(double v) {
  return std::make_shared<const Expression::Node>(Expression::Node{Op::Number, v, nullptr, nullptr});
}

// The grammar has no negative literals, so a negative constant is Neg(|v|).
NodePtr make_signed(double v) {
  return std::signbit(v) ? make(Op::Neg, make_number(-v)) : make_number(v);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError("expression error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::Add, lhs, term());
      else if (accept('-')) lhs = make(Op::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string tail(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - tail.c_str());
    return make_number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return make(Op::Var);
    if (name == "pi") return make_number(std::numbers::pi);
    Op fn;
    if (name == "sin") fn = Op::Sin;
    else if (name == "cos") fn = Op::Cos;
    else if (name == "sqrt") fn = Op::Sqrt;
    else if (name == "abs") fn = Op::Abs;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return make(fn, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, double t) {
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Var: return t;
    case Op::Neg: return -eval(*n.lhs, t);
    case Op::Add: return eval(*n.lhs, t) + eval(*n.rhs, t);
    case Op::Sub: return eval(*n.lhs, t) - eval(*n.rhs, t);
    case Op::Mul: return eval(*n.lhs, t) * eval(*n.rhs, t);
    case Op::Div: return eval(*n.lhs, t) / eval(*n.rhs, t);
    case Op::Pow: return std::pow(eval(*n.lhs, t), eval(*n.rhs, t));
    case Op::Sin: return std::sin(eval(*n.lhs, t));
    case Op::Cos: return std::cos(eval(*n.lhs, t));
    case Op::Sqrt: return std::sqrt(eval(*n.lhs, t));
    case Op::Abs: return std::abs(eval(*n.lhs, t));
  }
  return 0.0;
}

bool uses_var(const Expression::Node& n) {
  if (n.op == Op::Var) return true;
  return (n.lhs && uses_var(*n.lhs)) || (n.rhs && uses_var(*n.rhs));
}

bool same(const Expression::Node& x, const Expression::Node& y) {
  if (x.op != y.op) return false;
  if (x.op == Op::Number) return x.value == y.value;
  if (static_cast<bool>(x.lhs) != static_cast<bool>(y.lhs)) return false;
  if (static_cast<bool>(x.rhs) != static_cast<bool>(y.rhs)) return false;
  return (!x.lhs || same(*x.lhs, *y.lhs)) && (!x.rhs || same(*x.rhs, *y.rhs));
}

std::string render(const Expression::Node& n) {
  auto bin = [&](const char* op) { return "(" + render(*n.lhs) + " " + op + " " + render(*n.rhs) + ")"; };
  auto fn = [&](const char* name) { return std::string(name) + "(" + render(*n.lhs) + ")"; };
  switch (n.op) {
    case Op::Number: return format_real(n.value);
    case Op::Var: return "t";
    case Op::Neg: return "(-" + render(*n.lhs) + ")";
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Pow: return bin("^");
    case Op::Sin: return fn("sin");
    case Op::Cos: return fn("cos");
    case Op::Sqrt: return fn("sqrt");
    case Op::Abs: return fn("abs");
  }
  return {};
}

NodePtr substitute(const NodePtr& n, const NodePtr& replacement) {
  if (n->op == Op::Var) return replacement;
  if (!n->lhs) return n;
  return std::make_shared<const Expression::Node>(Expression::Node{
      n->op, n->value, substitute(n->lhs, replacement), n->rhs ? substitute(n->rhs, replacement) : nullptr});
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse(), std::string(text));
}

Expression Expression::constant(double value) {
  NodePtr n = make_signed(value);
  std::string text = render(*n);
  return Expression(std::move(n), std::move(text));
}

double Expression::operator()(double t) const { return eval(*root_, t); }

bool Expression::depends_on_t() const { return uses_var(*root_); }

Expression Expression::affine_substitute(double k, double offset, double scale) const {
  NodePtr arg = make(Op::Add, make_signed(offset), make(Op::Mul, make_signed(scale), make(Op::Var)));
  NodePtr root = make(Op::Mul, make_signed(k), substitute(root_, arg));
  std::string text = render(*root);
  return Expression(std::move(root), std::move(text));
}

bool operator==(const Expression& x, const Expression& y) { return same(*x.root_, *y.root_); }

double evaluate_constant(std::string_view text) {
  const Expression e = Expression::parse(text);
  if (e.depends_on_t()) throw SpecError("expected a constant expression, got '" + std::string(text) + "'");
  return e(0.0);
}

}  // namespace sturmkit

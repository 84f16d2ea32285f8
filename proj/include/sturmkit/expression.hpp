#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace sturmkit {

/// Arithmetic expression in the single variable `t`.
///
/// Grammar (lowest to highest precedence):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | sqrt | abs
///
/// Immutable; copies share the tree.
class Expression {
 public:
  struct Node;

  /// Throws SpecError carrying the byte offset of the first bad token.
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  double operator()(double t) const;

  /// Source text. For parsed expressions this is the input verbatim; for
  /// derived ones it is a fully parenthesized rendering that parses back to
  /// an identical tree.
  const std::string& text() const { return text_; }

  bool depends_on_t() const;

  /// k * e(offset + scale * t)
  Expression affine_substitute(double k, double offset, double scale) const;

  /// Structural equality of the trees (not of the source texts).
  friend bool operator==(const Expression& x, const Expression& y);

 private:
  Expression(std::shared_ptr<const Node> root, std::string text);

  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Evaluates a constant expression such as "pi/2" or "3*pi - 0.5".
/// Throws SpecError if the text references `t`.
double evaluate_constant(std::string_view text);

}  // namespace sturmkit

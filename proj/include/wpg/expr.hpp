#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpg/error.hpp"
#include "wpg/jet.hpp"

namespace wpg {

enum class Function { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };

/// Immutable expression tree node. Built only by the parser and the
/// combinators below.
struct Node {
  enum class Kind { Literal, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call };

  Kind kind;
  double literal = 0.0;
  std::string name;  // variable name
  int index = -1;    // variable position in the bound coordinate list
  Function function = Function::Sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

/// Scalar formula over an ordered list of chart coordinates.
class Expression {
 public:
  /// The constant zero over no coordinates.
  Expression();

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  /// Coordinates actually referenced, in coordinate order.
  std::vector<std::string> free_vars() const;
  const Node& root() const { return *root_; }
  bool is_constant() const { return free_vars().empty(); }
  /// Structurally the literal 0.
  bool is_zero() const;

  /// Same tree re-bound to another coordinate list. Every free variable must
  /// appear in `coordinates`.
  Expression rebind(std::vector<std::string> coordinates) const;

  double eval(std::span<const double> point) const;
  Jet2<double> eval_jet2(std::span<const double> point) const;

  /// Fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  static Expression constant(double value, std::vector<std::string> coordinates = {});

  friend bool operator==(const Expression& a, const Expression& b);
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);

 private:
  friend Expression parse(std::string_view source, std::vector<std::string> coordinates);
  Expression(std::shared_ptr<const Node> root, std::vector<std::string> coordinates);

  std::shared_ptr<const Node> root_;
  std::vector<std::string> coordinates_;
};

/// Parses `source` against the given coordinate names.
///
/// Grammar (whitespace insignificant):
///   expr    := term (("+"|"-") term)*
///   term    := factor (("*"|"/") factor)*
///   factor  := "-" factor | power
///   power   := primary ("^" factor)?          right-associative, binds tighter than "-"
///   primary := number | ident | ident "(" expr ")" | "(" expr ")"
///
/// Throws ParseError, UnknownIdentifier or ArityError.
Expression parse(std::string_view source, std::vector<std::string> coordinates);

bool structurally_equal(const Node& a, const Node& b);

}  // namespace wpg

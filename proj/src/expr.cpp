#include "wpg/expr.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace wpg {
namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_literal(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Literal;
  n->literal = v;
  return n;
}

NodePtr make_variable(std::string name, int index) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  n->name = std::move(name);
  n->index = index;
  return n;
}

NodePtr make_node(Node::Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_call(Function f, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Call;
  n->function = f;
  n->lhs = std::move(arg);
  return n;
}

struct FunctionName {
  std::string_view name;
  Function function;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Function::Sin},   {"cos", Function::Cos},   {"tan", Function::Tan},
    {"sinh", Function::Sinh}, {"cosh", Function::Cosh}, {"tanh", Function::Tanh},
    {"exp", Function::Exp},   {"log", Function::Log},   {"sqrt", Function::Sqrt},
};

const FunctionName* find_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return &f;
  return nullptr;
}

std::string_view function_name(Function f) {
  for (const auto& e : kFunctions)
    if (e.function == f) return e.name;
  return "?";
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords) : src_(src), coords_(coords) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    const std::string found = pos_ < src_.size() ? fmt::format("'{}'", src_[pos_]) : "end of input";
    throw ParseError(pos_, std::move(expected),
                     fmt::format("syntax error at offset {}: expected {}, found {}", pos_, list, found));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(Node::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = make_node(Node::Kind::Subtract, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make_node(Node::Kind::Multiply, lhs, factor());
      else if (accept('/'))
        lhs = make_node(Node::Kind::Divide, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_node(Node::Kind::Negate, factor());
    NodePtr base = primary();
    if (accept('^')) return make_node(Node::Kind::Power, base, factor());
    return base;
  }

  NodePtr primary() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail({"')'"});
      return e;
    }
    fail({"number", "identifier", "'('", "'-'"});
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail({"digit"});
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail({"exponent digit"});
    }
    const std::string text(src_.substr(start, pos_ - start));
    return make_literal(std::strtod(text.c_str(), nullptr));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));

    if (const FunctionName* f = find_function(name)) {
      if (!accept('(')) fail({"'('"});
      if (peek() == ')')
        throw ArityError(fmt::format("function '{}' at offset {} takes 1 argument, got 0", name, start));
      NodePtr arg = expr();
      if (peek() == ',')
        throw ArityError(fmt::format("function '{}' at offset {} takes 1 argument", name, start));
      if (!accept(')')) fail({"')'"});
      return make_call(f->function, arg);
    }

    auto it = std::find(coords_.begin(), coords_.end(), name);
    if (it == coords_.end()) throw UnknownIdentifier(name, start);
    return make_variable(std::move(name), static_cast<int>(it - coords_.begin()));
  }

  std::string_view src_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

void collect_vars(const Node& n, std::set<int>& out) {
  if (n.kind == Node::Kind::Variable) out.insert(n.index);
  if (n.lhs) collect_vars(*n.lhs, out);
  if (n.rhs) collect_vars(*n.rhs, out);
}

bool has_vars(const Node& n) {
  if (n.kind == Node::Kind::Variable) return true;
  return (n.lhs && has_vars(*n.lhs)) || (n.rhs && has_vars(*n.rhs));
}

std::string print(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Literal:
      return fmt::format("{:.17g}", n.literal);
    case Node::Kind::Variable:
      return n.name;
    case Node::Kind::Negate:
      return "(-" + print(*n.lhs) + ")";
    case Node::Kind::Add:
      return "(" + print(*n.lhs) + "+" + print(*n.rhs) + ")";
    case Node::Kind::Subtract:
      return "(" + print(*n.lhs) + "-" + print(*n.rhs) + ")";
    case Node::Kind::Multiply:
      return "(" + print(*n.lhs) + "*" + print(*n.rhs) + ")";
    case Node::Kind::Divide:
      return "(" + print(*n.lhs) + "/" + print(*n.rhs) + ")";
    case Node::Kind::Power:
      return "(" + print(*n.lhs) + "^" + print(*n.rhs) + ")";
    case Node::Kind::Call:
      return std::string(function_name(n.function)) + "(" + print(*n.lhs) + ")";
  }
  return {};
}

NodePtr rebind_node(const NodePtr& n, const std::vector<std::string>& coords) {
  if (n->kind == Node::Kind::Variable) {
    auto it = std::find(coords.begin(), coords.end(), n->name);
    if (it == coords.end()) throw UnknownIdentifier(n->name, 0);
    return make_variable(n->name, static_cast<int>(it - coords.begin()));
  }
  if (!n->lhs) return n;
  auto copy = std::make_shared<Node>(*n);
  copy->lhs = rebind_node(n->lhs, coords);
  if (n->rhs) copy->rhs = rebind_node(n->rhs, coords);
  return copy;
}

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

/// Shared evaluator for plain values (T = double) and jets (T = Jet2<double>).
template <typename T>
class Evaluator {
 public:
  Evaluator(std::span<const double> point) : point_(point) {}

  T eval(const Node& n) const {
    switch (n.kind) {
      case Node::Kind::Literal:
        return constant(n.literal);
      case Node::Kind::Variable:
        return variable(n.index);
      case Node::Kind::Negate:
        return checked(n, -eval(*n.lhs));
      case Node::Kind::Add:
        return checked(n, eval(*n.lhs) + eval(*n.rhs));
      case Node::Kind::Subtract:
        return checked(n, eval(*n.lhs) - eval(*n.rhs));
      case Node::Kind::Multiply:
        return checked(n, eval(*n.lhs) * eval(*n.rhs));
      case Node::Kind::Divide: {
        T den = eval(*n.rhs);
        if (value(den) == 0.0) throw DomainError(print(n), "division by zero");
        return checked(n, eval(*n.lhs) / den);
      }
      case Node::Kind::Power:
        return power(n);
      case Node::Kind::Call:
        return call(n);
    }
    return constant(0.0);
  }

 private:
  static double value(double v) { return v; }
  static double value(const Jet2<double>& j) { return j.value(); }

  T constant(double v) const {
    if constexpr (std::is_same_v<T, double>)
      return v;
    else
      return Jet2<double>::constant(v, static_cast<Eigen::Index>(point_.size()));
  }

  T variable(int index) const {
    if constexpr (std::is_same_v<T, double>)
      return point_[index];
    else
      return Jet2<double>::variable(point_[index], index, static_cast<Eigen::Index>(point_.size()));
  }

  static bool finite(double v) { return std::isfinite(v); }
  static bool finite(const Jet2<double>& j) {
    return std::isfinite(j.value()) && j.gradient().allFinite() && j.packed_hessian().allFinite();
  }

  T checked(const Node& n, T result) const {
    if (!finite(result)) throw DomainError(print(n), "non-finite result");
    return result;
  }

  T power(const Node& n) const {
    using std::exp;
    using std::log;
    using std::pow;
    T base = eval(*n.lhs);
    const double b = value(base);
    if (!has_vars(*n.rhs)) {
      const double p = Evaluator<double>(point_).eval(*n.rhs);
      if (b < 0.0 && !is_integer(p)) throw DomainError(print(n), "negative base with non-integer exponent");
      if (b == 0.0 && p < 2.0 && p != 0.0 && p != 1.0)
        throw DomainError(print(n), "power not differentiable at zero");
      return checked(n, pow(base, p));
    }
    if (b <= 0.0) throw DomainError(print(n), "non-positive base with variable exponent");
    return checked(n, exp(eval(*n.rhs) * log(base)));
  }

  T call(const Node& n) const {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    using std::tanh;
    T u = eval(*n.lhs);
    switch (n.function) {
      case Function::Sin:
        return checked(n, sin(u));
      case Function::Cos:
        return checked(n, cos(u));
      case Function::Tan:
        return checked(n, tan(u));
      case Function::Sinh:
        return checked(n, sinh(u));
      case Function::Cosh:
        return checked(n, cosh(u));
      case Function::Tanh:
        return checked(n, tanh(u));
      case Function::Exp:
        return checked(n, exp(u));
      case Function::Log:
        if (value(u) <= 0.0) throw DomainError(print(n), "log of non-positive value");
        return checked(n, log(u));
      case Function::Sqrt:
        if (value(u) <= 0.0) throw DomainError(print(n), "sqrt of non-positive value");
        return checked(n, sqrt(u));
    }
    return u;
  }

  std::span<const double> point_;
};

}  // namespace

Expression::Expression() : root_(make_literal(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> root, std::vector<std::string> coordinates)
    : root_(std::move(root)), coordinates_(std::move(coordinates)) {}

Expression Expression::constant(double value, std::vector<std::string> coordinates) {
  return Expression(make_literal(value), std::move(coordinates));
}

std::vector<std::string> Expression::free_vars() const {
  std::set<int> idx;
  collect_vars(*root_, idx);
  std::vector<std::string> out;
  for (int i : idx) out.push_back(coordinates_[i]);
  return out;
}

bool Expression::is_zero() const { return root_->kind == Node::Kind::Literal && root_->literal == 0.0; }

Expression Expression::rebind(std::vector<std::string> coordinates) const {
  NodePtr root = rebind_node(root_, coordinates);
  return Expression(std::move(root), std::move(coordinates));
}

double Expression::eval(std::span<const double> point) const {
  if (point.size() != coordinates_.size())
    throw InvalidArgument(fmt::format("expression over {} coordinates evaluated at a point of length {}",
                                      coordinates_.size(), point.size()));
  return Evaluator<double>(point).eval(*root_);
}

Jet2<double> Expression::eval_jet2(std::span<const double> point) const {
  if (point.size() != coordinates_.size())
    throw InvalidArgument(fmt::format("expression over {} coordinates evaluated at a point of length {}",
                                      coordinates_.size(), point.size()));
  return Evaluator<Jet2<double>>(point).eval(*root_);
}

std::string Expression::to_string() const { return print(*root_); }

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Literal:
      return a.literal == b.literal;
    case Node::Kind::Variable:
      return a.name == b.name && a.index == b.index;
    case Node::Kind::Call:
      return a.function == b.function && structurally_equal(*a.lhs, *b.lhs);
    case Node::Kind::Negate:
      return structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

bool operator==(const Expression& a, const Expression& b) {
  return a.coordinates_ == b.coordinates_ && structurally_equal(*a.root_, *b.root_);
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.coordinates_ != b.coordinates_) throw InvalidArgument("adding expressions over different coordinates");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expression(make_node(Node::Kind::Add, a.root_, b.root_), a.coordinates_);
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.coordinates_ != b.coordinates_)
    throw InvalidArgument("multiplying expressions over different coordinates");
  if (a.is_zero() || b.is_zero()) return Expression::constant(0.0, a.coordinates_);
  return Expression(make_node(Node::Kind::Multiply, a.root_, b.root_), a.coordinates_);
}

Expression parse(std::string_view source, std::vector<std::string> coordinates) {
  std::set<std::string> seen;
  for (const auto& c : coordinates) {
    if (!seen.insert(c).second) throw InvalidArgument("duplicate coordinate name '" + c + "'");
    if (find_function(c)) throw InvalidArgument("coordinate name '" + c + "' shadows a function");
  }
  Parser p(source, coordinates);
  NodePtr root = p.parse();
  return Expression(std::move(root), std::move(coordinates));
}

}  // namespace wpg

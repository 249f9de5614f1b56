#include "broadwell/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "broadwell/errors.hpp"

namespace broadwell {

struct Expression::Node {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp };
  Kind kind;
  double number = 0.0;
  int variable = -1;
  int lhs = -1;
  int rhs = -1;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  int parse_all(std::vector<Node>& nodes) {
    nodes_ = &nodes;
    const int root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(text_) + "': " + what + " at position " +
                      std::to_string(pos_));
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

  int push(Node n) {
    nodes_->push_back(n);
    return static_cast<int>(nodes_->size()) - 1;
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = push({Kind::Add, 0.0, -1, lhs, term()});
      } else if (accept('-')) {
        lhs = push({Kind::Sub, 0.0, -1, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = push({Kind::Mul, 0.0, -1, lhs, unary()});
      } else if (accept('/')) {
        lhs = push({Kind::Div, 0.0, -1, lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept('-')) return push({Kind::Neg, 0.0, -1, unary(), -1});
    if (accept('+')) return unary();
    return primary();
  }

  int primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      const int inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected character");
  }

  int number() {
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const auto res = std::from_chars(first, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return push({Kind::Number, v, -1, -1, -1});
  }

  int name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id(text_.substr(start, pos_ - start));
    if (id == "sin" || id == "cos" || id == "exp") {
      if (!accept('(')) fail("expected '(' after " + id);
      const int arg = expr();
      if (!accept(')')) fail("expected ')'");
      const Kind k = id == "sin" ? Kind::Sin : id == "cos" ? Kind::Cos : Kind::Exp;
      return push({k, 0.0, -1, arg, -1});
    }
    if (id == "pi") return push({Kind::Number, std::numbers::pi, -1, -1, -1});
    if (id == "e") return push({Kind::Number, std::numbers::e, -1, -1, -1});
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      if (variables_[v] == id) return push({Kind::Variable, 0.0, static_cast<int>(v), -1, -1});
    }
    pos_ = start;
    fail("unknown name '" + id + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  std::vector<Node>* nodes_ = nullptr;
  std::size_t pos_ = 0;
};

struct Dual {
  double v;
  double d0;
  double d1;
};

double eval(const std::vector<Node>& nodes, int n, std::span<const double> vars) {
  const Node& node = nodes[n];
  switch (node.kind) {
    case Kind::Number:
      return node.number;
    case Kind::Variable:
      return vars[node.variable];
    case Kind::Add:
      return eval(nodes, node.lhs, vars) + eval(nodes, node.rhs, vars);
    case Kind::Sub:
      return eval(nodes, node.lhs, vars) - eval(nodes, node.rhs, vars);
    case Kind::Mul:
      return eval(nodes, node.lhs, vars) * eval(nodes, node.rhs, vars);
    case Kind::Div:
      return eval(nodes, node.lhs, vars) / eval(nodes, node.rhs, vars);
    case Kind::Neg:
      return -eval(nodes, node.lhs, vars);
    case Kind::Sin:
      return std::sin(eval(nodes, node.lhs, vars));
    case Kind::Cos:
      return std::cos(eval(nodes, node.lhs, vars));
    case Kind::Exp:
      return std::exp(eval(nodes, node.lhs, vars));
  }
  return 0.0;
}

Dual eval_dual(const std::vector<Node>& nodes, int n, std::span<const double> vars,
               std::span<const std::array<double, 2>> seeds) {
  const Node& node = nodes[n];
  auto arg = [&](int m) { return eval_dual(nodes, m, vars, seeds); };
  switch (node.kind) {
    case Kind::Number:
      return {node.number, 0.0, 0.0};
    case Kind::Variable:
      return {vars[node.variable], seeds[node.variable][0], seeds[node.variable][1]};
    case Kind::Add: {
      const Dual a = arg(node.lhs), b = arg(node.rhs);
      return {a.v + b.v, a.d0 + b.d0, a.d1 + b.d1};
    }
    case Kind::Sub: {
      const Dual a = arg(node.lhs), b = arg(node.rhs);
      return {a.v - b.v, a.d0 - b.d0, a.d1 - b.d1};
    }
    case Kind::Mul: {
      const Dual a = arg(node.lhs), b = arg(node.rhs);
      return {a.v * b.v, a.d0 * b.v + a.v * b.d0, a.d1 * b.v + a.v * b.d1};
    }
    case Kind::Div: {
      const Dual a = arg(node.lhs), b = arg(node.rhs);
      const double q = a.v / b.v;
      return {q, (a.d0 - q * b.d0) / b.v, (a.d1 - q * b.d1) / b.v};
    }
    case Kind::Neg: {
      const Dual a = arg(node.lhs);
      return {-a.v, -a.d0, -a.d1};
    }
    case Kind::Sin: {
      const Dual a = arg(node.lhs);
      const double c = std::cos(a.v);
      return {std::sin(a.v), c * a.d0, c * a.d1};
    }
    case Kind::Cos: {
      const Dual a = arg(node.lhs);
      const double s = -std::sin(a.v);
      return {std::cos(a.v), s * a.d0, s * a.d1};
    }
    case Kind::Exp: {
      const Dual a = arg(node.lhs);
      const double e = std::exp(a.v);
      return {e, e * a.d0, e * a.d1};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
  auto nodes = std::make_shared<std::vector<Node>>();
  Parser parser(text, variables);
  Expression e;
  e.root_ = parser.parse_all(*nodes);
  e.text_ = std::string(text);
  e.arity_ = variables.size();
  e.nodes_ = std::move(nodes);
  return e;
}

double Expression::evaluate(std::span<const double> vars) const {
  if (vars.size() != arity_) throw UsageError("expression: wrong number of variables");
  return eval(*nodes_, root_, vars);
}

Gradient2 Expression::evaluate_with_gradient(std::span<const double> vars,
                                             std::span<const std::array<double, 2>> seeds) const {
  if (vars.size() != arity_ || seeds.size() != arity_) {
    throw UsageError("expression: wrong number of variables");
  }
  const Dual d = eval_dual(*nodes_, root_, vars, seeds);
  return {d.v, {d.d0, d.d1}};
}

}  // namespace broadwell

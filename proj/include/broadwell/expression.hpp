#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace broadwell {

/// Value and gradient with respect to the expression's variables.
struct Gradient2 {
  double value = 0.0;
  std::array<double, 2> grad{};
};

/// Arithmetic expression over a small closed grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | primary
///   primary := number | name | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp
///
/// Names are either the constants `pi` and `e` or one of the variable names
/// supplied at parse time. Evaluation is thread-safe.
class Expression {
 public:
  /// Throws ConfigError with the offending position on a syntax error or an
  /// unknown name.
  static Expression parse(std::string_view text, const std::vector<std::string>& variables);

  const std::string& text() const { return text_; }
  std::size_t arity() const { return arity_; }

  double evaluate(std::span<const double> vars) const;

  /// Value plus forward-mode derivatives. `seeds[v]` holds d(var v)/d(arg0)
  /// and d(var v)/d(arg1), so composite arguments such as x - u t can be
  /// differentiated through.
  Gradient2 evaluate_with_gradient(std::span<const double> vars,
                                   std::span<const std::array<double, 2>> seeds) const;

  struct Node;

 private:
  std::string text_;
  std::size_t arity_ = 0;
  std::shared_ptr<const std::vector<Node>> nodes_;
  int root_ = -1;
};

}  // namespace broadwell

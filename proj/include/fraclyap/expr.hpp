#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fraclyap {

enum class Variable { T, U };
enum class Constant { Pi, E };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Exp, Log, Abs, Sqrt, Pow, Gamma, Max, Min };

struct ExprNode;

// Immutable arithmetic expression over t and u. Copies share the tree.
class Expr {
 public:
  static Expr number(double value);
  static Expr constant(Constant c);
  static Expr variable(Variable v);
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  // Throws DomainError when the argument count does not match the function.
  static Expr call(Function fn, std::vector<Expr> args);

  const ExprNode& node() const noexcept { return *node_; }

  bool references(Variable v) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct NumberNode {
  double value;
};
struct ConstantNode {
  Constant constant;
};
struct VariableNode {
  Variable variable;
};
struct NegateNode {
  Expr operand;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct CallNode {
  Function fn;
  std::vector<Expr> args;
};

struct ExprNode
    : std::variant<NumberNode, ConstantNode, VariableNode, NegateNode, BinaryNode, CallNode> {
  using variant::variant;
};

// Structural equality (numbers compared bitwise-equal as doubles).
bool operator==(const Expr& lhs, const Expr& rhs);

std::size_t arity(Function fn);
std::string_view function_name(Function fn);

// Recursive-descent parser. Precedence from loosest: + -, * /, unary -, ^
// (right-associative). Throws ParseError carrying the byte offset.
Expr parse(std::string_view source);

// Throws EvalError for a missing u binding or a domain violation (log of a
// nonpositive number, 0 to a negative power, ...); never returns NaN/Inf.
double eval(const Expr& e, double t, std::optional<double> u = std::nullopt);

// Minimal-parenthesis rendering that parses back to the same tree.
std::string to_string(const Expr& e);

}  // namespace fraclyap

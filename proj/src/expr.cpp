#include "fraclyap/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "fraclyap/error.hpp"
#include "fraclyap/gamma.hpp"

namespace fraclyap {
namespace {

struct FunctionInfo {
  Function fn;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FunctionInfo, 10> kFunctions = {{
    {Function::Sin, "sin", 1},
    {Function::Cos, "cos", 1},
    {Function::Exp, "exp", 1},
    {Function::Log, "log", 1},
    {Function::Abs, "abs", 1},
    {Function::Sqrt, "sqrt", 1},
    {Function::Pow, "pow", 2},
    {Function::Gamma, "gamma", 1},
    {Function::Max, "max", 2},
    {Function::Min, "min", 2},
}};

const FunctionInfo& info(Function fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f;
  }
  throw std::logic_error("unknown function enumerator");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Parser

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) fail("expected operator or end of input, found '" + current() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  std::string current() const {
    return pos_ < src_.size() ? std::string(1, src_[pos_]) : std::string("end of input");
  }

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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "', found " + describe_current());
  }

  std::string describe_current() const {
    return pos_ < src_.size() ? "'" + current() + "'" : "end of input";
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected operand, found end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    fail("expected operand, found '" + current() + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && is_digit(src_[look])) {
        pos_ = look;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::number(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const FunctionInfo* fn = nullptr;
      for (const auto& f : kFunctions) {
        if (f.name == name) fn = &f;
      }
      if (fn == nullptr) {
        pos_ = start;
        fail("unknown function '" + std::string(name) + "'");
      }
      ++pos_;
      std::vector<Expr> args;
      args.push_back(parse_sum());
      while (accept(',')) args.push_back(parse_sum());
      if (args.size() != fn->arity) {
        fail(std::string(fn->name) + " takes " + std::to_string(fn->arity) + " argument(s), got " +
             std::to_string(args.size()));
      }
      expect(')');
      return Expr::call(fn->fn, std::move(args));
    }
    if (name == "t") return Expr::variable(Variable::T);
    if (name == "u") return Expr::variable(Variable::U);
    if (name == "pi") return Expr::constant(Constant::Pi);
    if (name == "e") return Expr::constant(Constant::E);
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPower = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
  return std::visit(overloaded{
                        [](const NegateNode&) { return kPrecUnary; },
                        [](const BinaryNode& b) {
                          switch (b.op) {
                            case BinaryOp::Add:
                            case BinaryOp::Sub:
                              return kPrecSum;
                            case BinaryOp::Mul:
                            case BinaryOp::Div:
                              return kPrecProduct;
                            case BinaryOp::Pow:
                              return kPrecPower;
                          }
                          return kPrecAtom;
                        },
                        [](const auto&) { return kPrecAtom; },
                    },
                    static_cast<const ExprNode::variant&>(e.node()));
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return '+';
    case BinaryOp::Sub:
      return '-';
    case BinaryOp::Mul:
      return '*';
    case BinaryOp::Div:
      return '/';
    case BinaryOp::Pow:
      return '^';
  }
  return '?';
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const NumberNode& n) { out += format_number(n.value); },
                 [&](const ConstantNode& c) { out += c.constant == Constant::Pi ? "pi" : "e"; },
                 [&](const VariableNode& v) { out += v.variable == Variable::T ? "t" : "u"; },
                 [&](const NegateNode& n) {
                   out += '-';
                   print_wrapped(n.operand, precedence(n.operand) < kPrecUnary, out);
                 },
                 [&](const BinaryNode& b) {
                   if (b.op == BinaryOp::Pow) {
                     print_wrapped(b.lhs, precedence(b.lhs) <= kPrecPower, out);
                     out += '^';
                     print_wrapped(b.rhs, precedence(b.rhs) < kPrecUnary, out);
                     return;
                   }
                   const int prec = precedence(e);
                   print_wrapped(b.lhs, precedence(b.lhs) < prec, out);
                   out += ' ';
                   out += op_char(b.op);
                   out += ' ';
                   print_wrapped(b.rhs, precedence(b.rhs) <= prec, out);
                 },
                 [&](const CallNode& c) {
                   out += function_name(c.fn);
                   out += '(';
                   for (std::size_t i = 0; i < c.args.size(); ++i) {
                     if (i > 0) out += ", ";
                     print(c.args[i], out);
                   }
                   out += ')';
                 },
             },
             static_cast<const ExprNode::variant&>(e.node()));
}

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_error(const Expr& e, const std::string& what) {
  throw EvalError("domain error in '" + to_string(e) + "': " + what);
}

double evaluate(const Expr& e, double t, const std::optional<double>& u) {
  const double value = std::visit(
      overloaded{
          [&](const NumberNode& n) { return n.value; },
          [&](const ConstantNode& c) {
            return c.constant == Constant::Pi ? std::numbers::pi : std::numbers::e;
          },
          [&](const VariableNode& v) {
            if (v.variable == Variable::T) return t;
            if (!u) throw EvalError("variable 'u' is not bound");
            return *u;
          },
          [&](const NegateNode& n) { return -evaluate(n.operand, t, u); },
          [&](const BinaryNode& b) {
            const double x = evaluate(b.lhs, t, u);
            const double y = evaluate(b.rhs, t, u);
            switch (b.op) {
              case BinaryOp::Add:
                return x + y;
              case BinaryOp::Sub:
                return x - y;
              case BinaryOp::Mul:
                return x * y;
              case BinaryOp::Div:
                if (y == 0.0) domain_error(e, "division by zero");
                return x / y;
              case BinaryOp::Pow:
                if (x == 0.0 && y < 0.0) domain_error(e, "zero raised to a negative power");
                if (x < 0.0 && std::floor(y) != y) {
                  domain_error(e, "negative base raised to a non-integer power");
                }
                return std::pow(x, y);
            }
            return 0.0;
          },
          [&](const CallNode& c) {
            const double x = evaluate(c.args[0], t, u);
            switch (c.fn) {
              case Function::Sin:
                return std::sin(x);
              case Function::Cos:
                return std::cos(x);
              case Function::Exp:
                return std::exp(x);
              case Function::Log:
                if (!(x > 0.0)) domain_error(e, "logarithm of a nonpositive number");
                return std::log(x);
              case Function::Abs:
                return std::abs(x);
              case Function::Sqrt:
                if (x < 0.0) domain_error(e, "square root of a negative number");
                return std::sqrt(x);
              case Function::Gamma:
                if (is_nonpositive_integer(x)) domain_error(e, "gamma pole");
                return gamma(x);
              case Function::Pow: {
                const double y = evaluate(c.args[1], t, u);
                if (x == 0.0 && y < 0.0) domain_error(e, "zero raised to a negative power");
                if (x < 0.0 && std::floor(y) != y) {
                  domain_error(e, "negative base raised to a non-integer power");
                }
                return std::pow(x, y);
              }
              case Function::Max:
                return std::max(x, evaluate(c.args[1], t, u));
              case Function::Min:
                return std::min(x, evaluate(c.args[1], t, u));
            }
            return 0.0;
          },
      },
      static_cast<const ExprNode::variant&>(e.node()));
  if (!std::isfinite(value)) domain_error(e, "result is not finite");
  return value;
}

}  // namespace

Expr Expr::number(double value) { return Expr(std::make_shared<const ExprNode>(NumberNode{value})); }

Expr Expr::constant(Constant c) { return Expr(std::make_shared<const ExprNode>(ConstantNode{c})); }

Expr Expr::variable(Variable v) { return Expr(std::make_shared<const ExprNode>(VariableNode{v})); }

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const ExprNode>(NegateNode{std::move(operand)}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(BinaryNode{op, std::move(lhs), std::move(rhs)}));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
  if (args.size() != arity(fn)) {
    throw DomainError(std::string(function_name(fn)) + ": wrong number of arguments");
  }
  return Expr(std::make_shared<const ExprNode>(CallNode{fn, std::move(args)}));
}

bool Expr::references(Variable v) const {
  return std::visit(overloaded{
                        [&](const VariableNode& n) { return n.variable == v; },
                        [&](const NegateNode& n) { return n.operand.references(v); },
                        [&](const BinaryNode& b) { return b.lhs.references(v) || b.rhs.references(v); },
                        [&](const CallNode& c) {
                          for (const Expr& a : c.args) {
                            if (a.references(v)) return true;
                          }
                          return false;
                        },
                        [](const auto&) { return false; },
                    },
                    static_cast<const ExprNode::variant&>(node()));
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  const auto& l = static_cast<const ExprNode::variant&>(lhs.node());
  const auto& r = static_cast<const ExprNode::variant&>(rhs.node());
  if (l.index() != r.index()) return false;
  return std::visit(
      overloaded{
          [&](const NumberNode& a) { return a.value == std::get<NumberNode>(r).value; },
          [&](const ConstantNode& a) { return a.constant == std::get<ConstantNode>(r).constant; },
          [&](const VariableNode& a) { return a.variable == std::get<VariableNode>(r).variable; },
          [&](const NegateNode& a) { return a.operand == std::get<NegateNode>(r).operand; },
          [&](const BinaryNode& a) {
            const auto& b = std::get<BinaryNode>(r);
            return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
          },
          [&](const CallNode& a) {
            const auto& b = std::get<CallNode>(r);
            return a.fn == b.fn && a.args == b.args;
          },
      },
      l);
}

std::size_t arity(Function fn) { return info(fn).arity; }

std::string_view function_name(Function fn) { return info(fn).name; }

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

double eval(const Expr& e, double t, std::optional<double> u) { return evaluate(e, t, u); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace fraclyap

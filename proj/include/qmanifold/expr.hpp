#pragma once

// Metric-coefficient expressions: parsing, canonical printing, and evaluation
// to values (any floating type) or second-order jets.
//
// Grammar (whitespace is insignificant between tokens):
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative via unary
//   primary := number | variable | function '(' expr ')' | '(' expr ')'
//   number  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]  |  '.' digits ...
//   variable:= 'x1' | 'x2' | 'x3'
//   function:= 'sin' | 'cos' | 'sinh' | 'cosh' | 'tanh' | 'exp' | 'log' | 'sqrt'
//
// so '^' binds tighter than unary minus: "-x1^2" is -(x1^2), "2^-x1" is 2^(-x1).

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "qmanifold/error.hpp"
#include "qmanifold/jet.hpp"
#include "qmanifold/tensor.hpp"

namespace qmf::expr {

enum class NodeKind { Number, Variable, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Sinh, Cosh, Tanh, Exp, Log, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression-tree node. `lhs` is the operand of Negate and Call.
struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::size_t variable = 0;  // 0-based: x1 -> 0
  BinaryOp op = BinaryOp::Add;
  Func func = Func::Sin;
  NodePtr lhs;
  NodePtr rhs;
  bool depends_on_variables = false;
};

inline constexpr std::string_view func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

inline std::optional<Func> func_from_name(std::string_view name) {
  constexpr std::array<Func, 8> all{Func::Sin, Func::Cos, Func::Sinh, Func::Cosh,
                                    Func::Tanh, Func::Exp, Func::Log, Func::Sqrt};
  for (Func f : all)
    if (func_name(f) == name) return f;
  return std::nullopt;
}

inline NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

inline NodePtr make_variable(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->variable = index;
  n->depends_on_variables = true;
  return n;
}

inline NodePtr make_negate(NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Negate;
  n->depends_on_variables = operand->depends_on_variables;
  n->lhs = std::move(operand);
  return n;
}

inline NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->op = op;
  n->depends_on_variables = a->depends_on_variables || b->depends_on_variables;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

inline NodePtr make_call(Func f, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->depends_on_variables = arg->depends_on_variables;
  n->lhs = std::move(arg);
  return n;
}

inline bool same_structure(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Number: return a.number == b.number;
    case NodeKind::Variable: return a.variable == b.variable;
    case NodeKind::Negate: return same_structure(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.func == b.func && same_structure(*a.lhs, *b.lhs);
    case NodeKind::Binary:
      return a.op == b.op && same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

/// Shortest decimal text that reads back as exactly `v`.
inline std::string format_number(double v) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// Precedence levels, loosest first.
enum Level { kSum = 0, kProduct = 1, kUnary = 2, kPrimary = 3 };

inline Level level_of(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Variable:
    case NodeKind::Call: return kPrimary;
    case NodeKind::Negate: return kUnary;
    case NodeKind::Binary:
      switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return kSum;
        case BinaryOp::Mul:
        case BinaryOp::Div: return kProduct;
        case BinaryOp::Pow: return kUnary;  // a power parses wherever a unary may appear
      }
  }
  return kPrimary;
}

void print_into(const Node& n, std::string& out);

/// Prints `n`, parenthesized unless its level is at least `min_level`.
inline void print_at(const Node& n, Level min_level, std::string& out) {
  if (level_of(n) >= min_level) {
    print_into(n, out);
  } else {
    out += '(';
    print_into(n, out);
    out += ')';
  }
}

inline void print_into(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.number); return;
    case NodeKind::Variable:
      out += 'x';
      out += static_cast<char>('1' + n.variable);
      return;
    case NodeKind::Negate:
      out += '-';
      print_at(*n.lhs, kUnary, out);
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      print_into(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::Binary:
      switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          print_at(*n.lhs, kSum, out);
          out += n.op == BinaryOp::Add ? " + " : " - ";
          print_at(*n.rhs, kProduct, out);
          return;
        case BinaryOp::Mul:
        case BinaryOp::Div:
          print_at(*n.lhs, kProduct, out);
          out += n.op == BinaryOp::Mul ? "*" : "/";
          print_at(*n.rhs, kUnary, out);
          return;
        case BinaryOp::Pow: {
          // The base must be a primary; a Pow or Negate base needs parentheses.
          print_at(*n.lhs, kPrimary, out);
          out += '^';
          print_at(*n.rhs, kUnary, out);
          return;
        }
      }
  }
}

}  // namespace detail

/// Canonical text: minimal parentheses, single spaces around + and -.
inline std::string print(const Node& n) {
  std::string out;
  detail::print_into(n, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr e = parse_sum();
    skip_space();
    if (pos_ != src_.size())
      throw SyntaxError(pos_, std::string("unexpected '") + src_[pos_] + "' after expression");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+'))
        lhs = make_binary(BinaryOp::Add, lhs, parse_product());
      else if (accept('-'))
        lhs = make_binary(BinaryOp::Sub, lhs, parse_product());
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make_binary(BinaryOp::Mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = make_binary(BinaryOp::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_negate(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError(pos_, "expected expression, found end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(pos_, std::string("expected expression, found '") + c + "'");
  }

  void expect(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return;
    }
    if (pos_ == src_.size())
      throw SyntaxError(pos_, std::string("expected '") + c + "', found end of input");
    throw SyntaxError(pos_, std::string("expected '") + c + "', found '" + src_[pos_] + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError(pos_, "malformed exponent in number");
    }
    const std::string text(src_.substr(start, pos_ - start));
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v)) throw SyntaxError(start, "number out of range: " + text);
    return make_number(v);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x1" || name == "x2" || name == "x3")
      return make_variable(static_cast<std::size_t>(name[1] - '1'));
    if (auto f = func_from_name(name)) {
      skip_space();
      if (pos_ >= src_.size() || src_[pos_] != '(')
        throw SyntaxError(pos_, "expected '(' after function '" + std::string(name) + "'");
      ++pos_;
      NodePtr arg = parse_sum();
      expect(')');
      return make_call(*f, arg);
    }
    throw UnknownIdentifier(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Numeric-type adapters so one evaluator serves floating types and jets.
template <class T>
struct NumTraits {
  static double value(T v) { return static_cast<double>(v); }
  static T constant(double c) { return static_cast<T>(c); }
  static bool finite(T v) { return std::isfinite(v); }
};

template <class T>
struct NumTraits<Jet2<T>> {
  static double value(const Jet2<T>& v) { return static_cast<double>(v.value); }
  static Jet2<T> constant(double c) { return Jet2<T>::constant(static_cast<T>(c)); }
  static bool finite(const Jet2<T>& v) { return v.all_finite(); }
};

template <class Num, class Point>
std::string describe_point(const Point& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", static_cast<double>(p[0]),
                static_cast<double>(p[1]), static_cast<double>(p[2]));
  return buf;
}

inline bool is_integral_value(double c) { return std::nearbyint(c) == c; }

template <class Num>
Num evaluate(const Node& n, const std::array<Num, kDim>& vars, const std::string& where) {
  using Tr = NumTraits<Num>;
  auto domain = [&](const std::string& what) -> DomainError {
    return DomainError(what + " in '" + print(n) + "' at point " + where);
  };
  Num result{};
  switch (n.kind) {
    case NodeKind::Number: result = Tr::constant(n.number); break;
    case NodeKind::Variable: result = vars[n.variable]; break;
    case NodeKind::Negate: result = -evaluate(*n.lhs, vars, where); break;
    case NodeKind::Call: {
      using std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tanh;
      const Num a = evaluate(*n.lhs, vars, where);
      const double av = Tr::value(a);
      switch (n.func) {
        case Func::Sin: result = sin(a); break;
        case Func::Cos: result = cos(a); break;
        case Func::Sinh: result = sinh(a); break;
        case Func::Cosh: result = cosh(a); break;
        case Func::Tanh: result = tanh(a); break;
        case Func::Exp: result = exp(a); break;
        case Func::Log:
          if (!(av > 0.0)) throw domain("log of non-positive value " + format_number(av));
          result = log(a);
          break;
        case Func::Sqrt:
          if (!(av >= 0.0)) throw domain("sqrt of negative value " + format_number(av));
          result = sqrt(a);
          break;
      }
      break;
    }
    case NodeKind::Binary: {
      const Num a = evaluate(*n.lhs, vars, where);
      const Num b = evaluate(*n.rhs, vars, where);
      switch (n.op) {
        case BinaryOp::Add: result = a + b; break;
        case BinaryOp::Sub: result = a - b; break;
        case BinaryOp::Mul: result = a * b; break;
        case BinaryOp::Div:
          if (Tr::value(b) == 0.0) throw domain("division by zero");
          result = a / b;
          break;
        case BinaryOp::Pow: {
          using std::pow;
          const double base = Tr::value(a);
          if (!n.rhs->depends_on_variables) {
            const double c = Tr::value(b);
            if (base < 0.0 && !is_integral_value(c))
              throw domain("negative base " + format_number(base) + " with non-integer exponent");
            if (base == 0.0 && c < 0.0) throw domain("zero base with negative exponent");
            if constexpr (std::is_floating_point_v<Num>) {
              result = pow(a, b);
            } else {
              result = pow(a, static_cast<decltype(a.value)>(c));
            }
          } else {
            if (!(base > 0.0))
              throw domain("non-positive base " + format_number(base) +
                           " with variable exponent");
            result = pow(a, b);
          }
          break;
        }
      }
      break;
    }
  }
  if (!Tr::finite(result)) throw NonFinite("non-finite result of '" + print(n) + "' at point " + where);
  return result;
}

}  // namespace detail

/// A parsed metric coefficient. Immutable after construction and safe to
/// evaluate concurrently.
class ScalarField {
 public:
  static ScalarField parse(std::string_view source) {
    return ScalarField(std::string(source), detail::Parser(source).parse());
  }

  const std::string& source() const noexcept { return source_; }
  const Node& root() const noexcept { return *root_; }
  std::string print() const { return expr::print(*root_); }

  /// Which of x1, x2, x3 occur in the expression.
  std::array<bool, kDim> free_variables() const {
    std::array<bool, kDim> used{};
    collect(*root_, used);
    return used;
  }

  /// Value at a point, in any floating type.
  template <class F = double>
  F value(const std::array<F, kDim>& point) const {
    return detail::evaluate<F>(*root_, point, detail::describe_point<F>(point));
  }

  double value(const Vec3& point) const {
    return value<double>(std::array<double, kDim>{point(0), point(1), point(2)});
  }

  /// Value, gradient and Hessian at `point` by forward jet propagation.
  Jet eval_jet2(const Vec3& point) const {
    const std::array<Jet, kDim> vars{Jet::variable(0, point(0)), Jet::variable(1, point(1)),
                                     Jet::variable(2, point(2))};
    const std::array<double, kDim> p{point(0), point(1), point(2)};
    return detail::evaluate<Jet>(*root_, vars, detail::describe_point<double>(p));
  }

 private:
  ScalarField(std::string source, NodePtr root) : source_(std::move(source)), root_(std::move(root)) {}

  static void collect(const Node& n, std::array<bool, kDim>& used) {
    if (n.kind == NodeKind::Variable) used[n.variable] = true;
    if (n.lhs) collect(*n.lhs, used);
    if (n.rhs) collect(*n.rhs, used);
  }

  std::string source_;
  NodePtr root_;
};

inline ScalarField parse(std::string_view source) { return ScalarField::parse(source); }

inline Jet eval_jet2(const ScalarField& field, const Vec3& point) { return field.eval_jet2(point); }

/// Central-difference estimate of value, gradient and Hessian, O(step²) in
/// both. Test oracle only: it shares nothing with the jet path except the
/// tree walk. Stencil values are taken in long double so the Hessian's
/// rounding term (≈ eps/step²) stays well below the truncation term.
inline Jet fd_oracle(const ScalarField& field, const Vec3& point, double step) {
  if (!(step > 0.0)) throw DomainError("fd_oracle: step must be positive");
  using LD = long double;
  const LD h = step;
  auto f = [&](int di, int si, int dj, int sj) {
    std::array<LD, kDim> p{point(0), point(1), point(2)};
    if (si != 0) p[static_cast<std::size_t>(di)] += si * h;
    if (sj != 0) p[static_cast<std::size_t>(dj)] += sj * h;
    return field.value<LD>(p);
  };
  Jet j;
  const LD f0 = f(0, 0, 0, 0);
  j.value = static_cast<double>(f0);
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const LD fp = f(i, 1, 0, 0), fm = f(i, -1, 0, 0);
    j.grad[ui] = static_cast<double>((fp - fm) / (2 * h));
    j.set_hess(ui, ui, static_cast<double>((fp - 2 * f0 + fm) / (h * h)));
    for (int k = i + 1; k < 3; ++k) {
      const LD d = f(i, 1, k, 1) - f(i, 1, k, -1) - f(i, -1, k, 1) + f(i, -1, k, -1);
      j.set_hess(ui, static_cast<std::size_t>(k), static_cast<double>(d / (4 * h * h)));
    }
  }
  return j;
}

}  // namespace qmf::expr

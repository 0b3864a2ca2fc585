// Small arithmetic expression language over the variables t, x1, x2 used to
// define coefficient functions in configuration files. Comparisons return
// 1.0 / 0.0 so piecewise coefficients can be written as indicator products.

#ifndef LDG_EXPRLANG_HPP
#define LDG_EXPRLANG_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/fields.hpp"

namespace ldg {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace expr_detail {

enum class NodeKind { kConst, kVar, kNeg, kBinary, kCall };

struct Node {
  NodeKind kind;
  double value = 0.0;       // kConst
  int var = 0;              // kVar: 0 = t, 1 = x1, 2 = x2
  std::string op;           // kBinary operator or kCall function name
  std::vector<std::shared_ptr<Node>> args;
};

using NodePtr = std::shared_ptr<Node>;

inline NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kConst;
  n->value = v;
  return n;
}

inline NodePtr make_var(int v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kVar;
  n->var = v;
  return n;
}

inline NodePtr make_neg(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kNeg;
  n->args = {std::move(a)};
  return n;
}

inline NodePtr make_binary(std::string op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kBinary;
  n->op = std::move(op);
  n->args = {std::move(a), std::move(b)};
  return n;
}

inline NodePtr make_call(std::string fn, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kCall;
  n->op = std::move(fn);
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError("syntax error at byte " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) != 0) return false;
    // Do not split a two-character operator: "<" must not match "<=".
    if ((tok == "<" || tok == ">") && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=')
      return false;
    if (tok == "=" ) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  NodePtr parse_or() {
    NodePtr e = parse_and();
    while (accept("||")) e = make_binary("||", e, parse_and());
    return e;
  }

  NodePtr parse_and() {
    NodePtr e = parse_cmp();
    while (accept("&&")) e = make_binary("&&", e, parse_cmp());
    return e;
  }

  NodePtr parse_cmp() {
    NodePtr e = parse_add();
    for (;;) {
      if (accept("<=")) e = make_binary("<=", e, parse_add());
      else if (accept(">=")) e = make_binary(">=", e, parse_add());
      else if (accept("==")) e = make_binary("==", e, parse_add());
      else if (accept("<")) e = make_binary("<", e, parse_add());
      else if (accept(">")) e = make_binary(">", e, parse_add());
      else return e;
    }
  }

  NodePtr parse_add() {
    NodePtr e = parse_mul();
    for (;;) {
      if (accept("+")) e = make_binary("+", e, parse_mul());
      else if (accept("-")) e = make_binary("-", e, parse_mul());
      else return e;
    }
  }

  NodePtr parse_mul() {
    NodePtr e = parse_unary();
    for (;;) {
      if (accept("*")) e = make_binary("*", e, parse_unary());
      else if (accept("/")) e = make_binary("/", e, parse_unary());
      else return e;
    }
  }

  NodePtr parse_unary() {
    if (accept("-")) return make_neg(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept("^")) return make_binary("^", base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_or();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t exp_pos = pos_ + 1;
      if (exp_pos < text_.size() && (text_[exp_pos] == '+' || text_[exp_pos] == '-')) ++exp_pos;
      if (exp_pos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp_pos]))) {
        pos_ = exp_pos;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
    }
    try {
      return make_const(std::stod(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  NodePtr parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "t") return make_var(0);
    if (name == "x1") return make_var(1);
    if (name == "x2") return make_var(2);
    if (name == "pi") return make_const(M_PI);

    static const std::vector<std::string> kUnary = {"sin", "cos", "exp", "ln", "sqrt", "abs"};
    static const std::vector<std::string> kBinaryFns = {"min", "max"};
    bool is_unary = std::find(kUnary.begin(), kUnary.end(), name) != kUnary.end();
    bool is_binary = std::find(kBinaryFns.begin(), kBinaryFns.end(), name) != kBinaryFns.end();
    if (!is_unary && !is_binary) {
      pos_ = start;
      fail("unknown identifier or function '" + name + "'");
    }
    expect('(');
    std::vector<NodePtr> args;
    args.push_back(parse_or());
    if (is_binary) {
      expect(',');
      args.push_back(parse_or());
    }
    expect(')');
    return make_call(name, std::move(args));
  }

  const std::string& text_;
  size_t pos_ = 0;
};

inline double eval_node(const Node& n, double t, double x1, double x2) {
  auto arg = [&](int i) { return eval_node(*n.args[i], t, x1, x2); };
  auto where = [&]() {
    std::ostringstream os;
    os << " at (t = " << t << ", x1 = " << x1 << ", x2 = " << x2 << ")";
    return os.str();
  };
  switch (n.kind) {
    case NodeKind::kConst: return n.value;
    case NodeKind::kVar: return n.var == 0 ? t : (n.var == 1 ? x1 : x2);
    case NodeKind::kNeg: return -arg(0);
    case NodeKind::kBinary: {
      double a = arg(0), b = arg(1);
      if (n.op == "+") return a + b;
      if (n.op == "-") return a - b;
      if (n.op == "*") return a * b;
      if (n.op == "/") {
        if (b == 0.0) throw ExprError("division by zero" + where());
        return a / b;
      }
      if (n.op == "^") return std::pow(a, b);
      if (n.op == "<") return a < b ? 1.0 : 0.0;
      if (n.op == "<=") return a <= b ? 1.0 : 0.0;
      if (n.op == ">") return a > b ? 1.0 : 0.0;
      if (n.op == ">=") return a >= b ? 1.0 : 0.0;
      if (n.op == "==") return a == b ? 1.0 : 0.0;
      if (n.op == "&&") return (a != 0.0 && b != 0.0) ? 1.0 : 0.0;
      if (n.op == "||") return (a != 0.0 || b != 0.0) ? 1.0 : 0.0;
      throw ExprError("unknown operator " + n.op);
    }
    case NodeKind::kCall: {
      double a = arg(0);
      if (n.op == "sin") return std::sin(a);
      if (n.op == "cos") return std::cos(a);
      if (n.op == "exp") return std::exp(a);
      if (n.op == "ln") {
        if (a <= 0.0) throw ExprError("ln of non-positive value" + where());
        return std::log(a);
      }
      if (n.op == "sqrt") {
        if (a < 0.0) throw ExprError("sqrt of negative value" + where());
        return std::sqrt(a);
      }
      if (n.op == "abs") return std::abs(a);
      if (n.op == "min") return std::min(a, arg(1));
      if (n.op == "max") return std::max(a, arg(1));
      throw ExprError("unknown function " + n.op);
    }
  }
  throw ExprError("corrupt expression node");
}

inline void print_node(const Node& n, std::ostream& os) {
  switch (n.kind) {
    case NodeKind::kConst: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      os << tmp.str();
      return;
    }
    case NodeKind::kVar:
      os << (n.var == 0 ? "t" : (n.var == 1 ? "x1" : "x2"));
      return;
    case NodeKind::kNeg:
      os << "(-";
      print_node(*n.args[0], os);
      os << ")";
      return;
    case NodeKind::kBinary:
      os << "(";
      print_node(*n.args[0], os);
      os << " " << n.op << " ";
      print_node(*n.args[1], os);
      os << ")";
      return;
    case NodeKind::kCall:
      os << n.op << "(";
      for (size_t i = 0; i < n.args.size(); ++i) {
        if (i) os << ", ";
        print_node(*n.args[i], os);
      }
      os << ")";
      return;
  }
}

}  // namespace expr_detail

/// Parsed, immutable expression over t, x1, x2.
class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& text) {
    Expr e;
    e.root_ = expr_detail::Parser(text).parse();
    e.source_ = text;
    return e;
  }

  double operator()(double t, double x1, double x2) const {
    if (!root_) throw ExprError("evaluating an empty expression");
    return expr_detail::eval_node(*root_, t, x1, x2);
  }

  std::vector<double> evaluate(double t, const std::vector<Point2>& points) const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& pnt : points) out.push_back((*this)(t, pnt[0], pnt[1]));
    return out;
  }

  /// Fully parenthesized form; re-parsing it evaluates identically.
  std::string pretty() const {
    if (!root_) return "";
    std::ostringstream os;
    expr_detail::print_node(*root_, os);
    return os.str();
  }

  const std::string& source() const { return source_; }

  /// Adapter to the coefficient-function contract.
  ScalarFunc as_function() const {
    Expr copy = *this;
    return [copy](double t, double x1, double x2) { return copy(t, x1, x2); };
  }

 private:
  expr_detail::NodePtr root_;
  std::string source_;
};

}  // namespace ldg

#endif  // LDG_EXPRLANG_HPP

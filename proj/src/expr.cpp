#include "cfkit/expr.hpp"

#include "cfkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cfkit::expr {

namespace {

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind kind, std::size_t offset) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->offset = offset;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    if (text_.empty()) throw ParseError("empty expression", 0);
    NodePtr root = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      const std::size_t at = (skip_ws(), pos_);
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      NodePtr n = make_node(Node::Kind::Bin, at);
      n->op = c == '+' ? BinOp::Add : BinOp::Sub;
      n->lhs = std::move(lhs);
      n->rhs = parse_product();
      lhs = std::move(n);
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      const std::size_t at = (skip_ws(), pos_);
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      NodePtr n = make_node(Node::Kind::Bin, at);
      n->op = c == '*' ? BinOp::Mul : BinOp::Div;
      n->lhs = std::move(lhs);
      n->rhs = parse_unary();
      lhs = std::move(n);
    }
  }

  // unary minus binds looser than ^, so -2^2 = -(2^2)
  NodePtr parse_unary() {
    const std::size_t at = (skip_ws(), pos_);
    if (consume('-')) {
      NodePtr n = make_node(Node::Kind::Neg, at);
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    const std::size_t at = (skip_ws(), pos_);
    if (consume('^')) {
      NodePtr n = make_node(Node::Kind::Bin, at);
      n->op = BinOp::Pow;
      n->lhs = std::move(base);
      n->rhs = parse_unary();  // right-associative, exponent may be signed
      return n;
    }
    return base;
  }

  NodePtr parse_primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (pos_ == text_.size()) throw ParseError("unexpected end of input: expected a value", at);

    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      if (!consume(')')) throw ParseError("expected ')'", (skip_ws(), pos_));
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(at);
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier(at);
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  NodePtr parse_number(std::size_t at) {
    double value = 0.0;
    const char* first = text_.data() + at;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr == first) throw ParseError("malformed number", at);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    NodePtr n = make_node(Node::Kind::Number, at);
    n->number = value;
    return n;
  }

  NodePtr parse_identifier(std::size_t at) {
    std::size_t end = at;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string_view name = text_.substr(at, end - at);
    pos_ = end;

    if (name == "t") return make_node(Node::Kind::VarT, at);
    if (name == "x") return make_node(Node::Kind::VarX, at);

    static const std::pair<std::string_view, FuncId> kFuncs[] = {
        {"sin", FuncId::Sin}, {"cos", FuncId::Cos},  {"exp", FuncId::Exp},
        {"ln", FuncId::Ln},   {"sqrt", FuncId::Sqrt}, {"abs", FuncId::Abs},
    };
    for (const auto& [fname, id] : kFuncs) {
      if (name == fname) {
        if (!consume('(')) throw ParseError("expected '(' after function name", (skip_ws(), pos_));
        NodePtr n = make_node(Node::Kind::Call, at);
        n->fn = id;
        n->lhs = parse_sum();
        if (!consume(')')) throw ParseError("expected ')'", (skip_ws(), pos_));
        return n;
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* bin_op_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Pow: return "^";
  }
  return "?";
}

const char* func_name(FuncId fn) {
  switch (fn) {
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Exp: return "exp";
    case FuncId::Ln: return "ln";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Abs: return "abs";
  }
  return "?";
}

[[noreturn]] void eval_fail(const std::string& what, const Node& n) {
  throw EvalError(what + " at offset " + std::to_string(n.offset));
}

double check_finite(double v, const char* what, const Node& n) {
  if (!std::isfinite(v)) eval_fail(std::string("non-finite result from '") + what + "'", n);
  return v;
}

double eval_node(const Node& n, double t, double x) {
  switch (n.kind) {
    case Node::Kind::Number: return n.number;
    case Node::Kind::VarT: return t;
    case Node::Kind::VarX: return x;
    case Node::Kind::Neg: return -eval_node(*n.lhs, t, x);
    case Node::Kind::Bin: {
      const double l = eval_node(*n.lhs, t, x);
      const double r = eval_node(*n.rhs, t, x);
      switch (n.op) {
        case BinOp::Add: return check_finite(l + r, "+", n);
        case BinOp::Sub: return check_finite(l - r, "-", n);
        case BinOp::Mul: return check_finite(l * r, "*", n);
        case BinOp::Div:
          if (r == 0.0) eval_fail("division by zero", n);
          return check_finite(l / r, "/", n);
        case BinOp::Pow: return check_finite(std::pow(l, r), "^", n);
      }
      eval_fail("bad operator", n);
    }
    case Node::Kind::Call: {
      const double a = eval_node(*n.lhs, t, x);
      switch (n.fn) {
        case FuncId::Sin: return std::sin(a);
        case FuncId::Cos: return std::cos(a);
        case FuncId::Exp: return check_finite(std::exp(a), "exp", n);
        case FuncId::Ln:
          if (!(a > 0.0)) eval_fail("ln of a non-positive value", n);
          return check_finite(std::log(a), "ln", n);
        case FuncId::Sqrt:
          if (a < 0.0) eval_fail("sqrt of a negative value", n);
          return std::sqrt(a);
        case FuncId::Abs: return std::abs(a);
      }
      eval_fail("bad function", n);
    }
  }
  throw EvalError("corrupt expression tree");
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Bin:
      switch (n.op) {
        case BinOp::Add:
        case BinOp::Sub: return 1;
        case BinOp::Mul:
        case BinOp::Div: return 2;
        case BinOp::Pow: return 4;
      }
      return 0;
    case Node::Kind::Neg: return 3;
    default: return 5;
  }
}

void print_node(const Node& n, std::ostream& os);

void print_child(const Node& child, std::ostream& os, int min_prec) {
  if (precedence(child) < min_prec) {
    os << '(';
    print_node(child, os);
    os << ')';
  } else {
    print_node(child, os);
  }
}

void print_node(const Node& n, std::ostream& os) {
  switch (n.kind) {
    case Node::Kind::Number: os << format_value(n.number); return;
    case Node::Kind::VarT: os << 't'; return;
    case Node::Kind::VarX: os << 'x'; return;
    case Node::Kind::Neg:
      os << '-';
      print_child(*n.lhs, os, 3);
      return;
    case Node::Kind::Bin: {
      const int p = precedence(n);
      if (n.op == BinOp::Pow) {
        // right-associative: a^b^c prints without parens, (a^b)^c with
        print_child(*n.lhs, os, p + 1);
        os << '^';
        print_child(*n.rhs, os, p);
      } else {
        print_child(*n.lhs, os, p);
        os << bin_op_name(n.op);
        print_child(*n.rhs, os, p + 1);
      }
      return;
    }
    case Node::Kind::Call:
      os << func_name(n.fn) << '(';
      print_node(*n.lhs, os);
      os << ')';
      return;
  }
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  return Expr(std::shared_ptr<const Node>(Parser(text).run().release()));
}

double Expr::eval(double t, double x) const { return eval_node(*root_, t, x); }

std::string Expr::to_string() const {
  std::ostringstream os;
  print_node(*root_, os);
  return os.str();
}

double estimate_lipschitz(const Expr& e, std::pair<double, double> t_range,
                          std::pair<double, double> x_range, int samples) {
  if (samples < 4) throw std::invalid_argument("estimate_lipschitz: samples must be >= 4");
  if (!(t_range.second > t_range.first) || !(x_range.second > x_range.first))
    throw std::invalid_argument("estimate_lipschitz: ranges must be nondegenerate");

  const double h = 1e-6 * (x_range.second - x_range.first);
  const double dt = (t_range.second - t_range.first) / (samples - 1);
  const double dx = (x_range.second - x_range.first) / (samples - 1);
  double max_slope = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = t_range.first + i * dt;
    for (int j = 0; j < samples; ++j) {
      const double x = x_range.first + j * dx;
      const double slope = std::abs(e.eval(t, x + h) - e.eval(t, x - h)) / (2.0 * h);
      max_slope = std::max(max_slope, slope);
    }
  }
  return 1.1 * max_slope;
}

}  // namespace cfkit::expr

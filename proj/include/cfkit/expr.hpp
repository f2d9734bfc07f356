#ifndef CFKIT_EXPR_HPP
#define CFKIT_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cfkit::expr {

/// Syntax error; offset() is the byte position in the input string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Numerical-domain error during evaluation (division by zero, ln/sqrt of a
/// negative value, overflow); the message names the offending node.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Sin, Cos, Exp, Ln, Sqrt, Abs };

struct Node {
  enum class Kind { Number, VarT, VarX, Neg, Bin, Call };
  Kind kind;
  double number = 0.0;
  BinOp op = BinOp::Add;
  FuncId fn = FuncId::Sin;
  std::size_t offset = 0;  // source position, reported by eval errors
  std::unique_ptr<Node> lhs, rhs;
};

/// A parsed right-hand side phi(t, x). Immutable and cheap to copy; eval is
/// pure, so one Expr may be shared across threads.
///
/// Grammar: + - over * / over unary - over right-associative ^;
/// parentheses; numbers; variables t and x; sin cos exp ln sqrt abs.
class Expr {
 public:
  static Expr parse(std::string_view text);

  double eval(double t, double x) const;

  /// Minimal-parenthesis form that reparses to the identical tree.
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// max |dphi/dx| over a samples x samples lattice, by central difference
/// with step 1e-6 * (x range width), inflated by the safety factor 1.1.
/// An underestimated Lipschitz constant silently breaks the solver's
/// contraction window; the inflation plus the solver's residual check make
/// that failure loud instead.
double estimate_lipschitz(const Expr& e, std::pair<double, double> t_range,
                          std::pair<double, double> x_range, int samples = 64);

}  // namespace cfkit::expr

#endif

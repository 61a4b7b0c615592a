#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "effham/scalar.hpp"

namespace effham {

// Immutable real-valued expression DAG.  Structurally identical subtrees are
// interned to one node, so sharing is the default and node_count measures
// true algebraic size.  The node vocabulary is closed under field ops plus
// sqrt/abs; no trigonometry ever enters a graph (rotation coefficients are
// built through the algebraic t-route).
class Expr {
 public:
  enum class Kind : std::uint8_t {
    Constant,
    Parameter,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Sqrt,
    Abs,
  };

  struct Node;
  using NodeRef = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    double value = 0.0;  // Constant
    std::string name;    // Parameter
    NodeRef a, b;        // children (a only for unary)
    std::uint64_t id = 0;
  };

  Expr() = default;  // empty handle; using it is a bug

  static Expr constant(double v);
  static Expr parameter(std::string name);
  static Expr sqrt(const Expr& x);
  static Expr abs(const Expr& x);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  bool valid() const { return n_ != nullptr; }
  const Node* node() const { return n_.get(); }
  NodeRef ref() const { return n_; }
  Kind kind() const { return n_->kind; }
  std::uint64_t id() const { return n_->id; }

  bool is_constant(double v) const {
    return n_ && n_->kind == Kind::Constant && n_->value == v;
  }

  static const char* kind_name(Kind k);

 private:
  explicit Expr(NodeRef n) : n_(std::move(n)) {}
  static Expr intern(Kind k, double value, std::string name, NodeRef a,
                     NodeRef b);

  NodeRef n_;
};

// name -> value bindings for evaluation.  Ordered so diagnostics are stable.
using ParamEnv = std::map<std::string, double, std::less<>>;

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Recursive evaluation, memoized per call so shared subgraphs cost one visit.
// Unbound parameters, sqrt of a negative and division by zero all throw
// ExprError naming the offending node and the path from the root to it.
double eval(const Expr& e, const ParamEnv& env);

// Local, semantics-preserving rewriting: constant folding plus the identity
// rules x+0, x-0, x*1, x*0, x/1, -(-x), sqrt(c) for constant c >= 0.
Expr simplify(const Expr& e);

std::size_t node_count(const Expr& e);

std::string emit_infix(const Expr& e);
Expr parse_infix(std::string_view text);

// Layered graph export; `layers` (node id -> layer) tags nodes produced by a
// pipeline stage, parameters sit in layer 0.  Schema:
// {"nodes":[{"id","kind","children",value?,name?,layer?}],"root":id}
std::string emit_graph_json(const Expr& e,
                            const std::map<std::uint64_t, int>* layers = nullptr);

template <>
struct field_traits<Expr> {
  using real_type = double;
  static constexpr bool is_symbolic = true;
  static constexpr bool is_complex = false;
  static Expr zero() { return Expr::constant(0.0); }
  static Expr one() { return Expr::constant(1.0); }
  static Expr from_real(double x) { return Expr::constant(x); }
  static Expr conj(const Expr& x) { return x; }
  static Expr sqrt(const Expr& x) { return Expr::sqrt(x); }
  static bool is_zero(const Expr& x) { return x.is_constant(0.0); }
  // Structural stand-ins; real magnitudes do not exist symbolically.
  static double abs2(const Expr&) = delete;
  static double real_part(const Expr&) = delete;
};

}  // namespace effham

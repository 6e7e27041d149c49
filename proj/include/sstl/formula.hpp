#pragma once

#include "sstl/time.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sstl {

// ---------------------------------------------------------------------------
// Arithmetic expressions inside atomic predicates

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct Number {
  double value;
};
struct Variable {
  std::string name;
};
struct Negate {
  Expr arg;
};
enum class ArithOp : char { Add = '+', Sub = '-', Mul = '*', Div = '/' };
struct Binary {
  ArithOp op;
  Expr lhs;
  Expr rhs;
};

struct ExprNode : std::variant<Number, Variable, Negate, Binary> {
  using variant::variant;
};

Expr make_number(double v);
Expr make_variable(std::string name);
Expr make_negate(Expr arg);
Expr make_binary(ArithOp op, Expr lhs, Expr rhs);

// ---------------------------------------------------------------------------
// Formulas

enum class Comparison { Ge, Gt, Le, Lt, Eq };

struct TimeBounds {
  Time lo;
  Time hi;
  bool operator==(const TimeBounds&) const = default;
};

/// Distance bounds; `hi` may be +inf.
struct DistanceBounds {
  double lo;
  double hi;
  bool operator==(const DistanceBounds&) const = default;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct Constant {
  bool value;
};
/// lhs <op> rhs, i.e. the predicate f >= 0 / f > 0 with f = lhs - rhs
/// (or rhs - lhs for <= and <).
struct Atom {
  Expr lhs;
  Comparison op;
  Expr rhs;
};
struct Not {
  Formula arg;
};
struct And {
  Formula lhs;
  Formula rhs;
};
struct Or {
  Formula lhs;
  Formula rhs;
};
struct Until {
  Formula lhs;
  Formula rhs;
  TimeBounds bounds;
};
struct Eventually {
  Formula arg;
  TimeBounds bounds;
};
struct Globally {
  Formula arg;
  TimeBounds bounds;
};
struct Somewhere {
  Formula arg;
  DistanceBounds bounds;
};
struct Everywhere {
  Formula arg;
  DistanceBounds bounds;
};
struct Surround {
  Formula lhs;
  Formula rhs;
  DistanceBounds bounds;
};

struct FormulaNode : std::variant<Constant, Atom, Not, And, Or, Until, Eventually, Globally,
                                  Somewhere, Everywhere, Surround> {
  using variant::variant;
};

// Constructors validate bounds and throw std::invalid_argument on a negative
// or reversed interval.
Formula make_constant(bool value);
Formula make_atom(Expr lhs, Comparison op, Expr rhs);
Formula make_not(Formula arg);
Formula make_and(Formula lhs, Formula rhs);
Formula make_or(Formula lhs, Formula rhs);
/// !lhs | rhs
Formula make_implies(Formula lhs, Formula rhs);
Formula make_until(Formula lhs, Formula rhs, TimeBounds bounds);
Formula make_eventually(Formula arg, TimeBounds bounds);
Formula make_globally(Formula arg, TimeBounds bounds);
Formula make_somewhere(Formula arg, DistanceBounds bounds);
Formula make_everywhere(Formula arg, DistanceBounds bounds);
Formula make_surround(Formula lhs, Formula rhs, DistanceBounds bounds);

/// Evaluate an expression for one sample. `values` is indexed like `names`.
/// Throws EvaluationError on division by zero or an unknown variable.
double evaluate(const Expr& e, const std::vector<std::string>& names,
                const std::vector<double>& values);

/// Structural equality (not pointer identity).
bool equal(const Formula& a, const Formula& b);
bool equal(const Expr& a, const Expr& b);

/// Longest look-ahead: Until/F/G add their upper bound, everything else adds 0.
Time temporal_depth(const Formula& f);

/// Number of temporal operators; F and G count as one until each.
std::size_t until_count(const Formula& f);

/// Variables referenced by atomic predicates.
std::set<std::string> variables(const Formula& f);

/// True if some atom uses '=='.
bool has_equality(const Formula& f);

/// Rewrites F[a,b] p as true U[a,b] p and G[a,b] p as !(true U[a,b] !p).
Formula desugar(const Formula& f);

/// Canonical, fully parenthesised text that `parse_formula` reads back to an
/// equal AST.
std::string to_string(const Formula& f);
std::string to_string(const Expr& e);

} // namespace sstl

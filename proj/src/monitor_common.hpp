#pragma once

#include "sstl/errors.hpp"
#include "sstl/formula.hpp"
#include "sstl/space.hpp"
#include "sstl/trace.hpp"

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sstl::detail {

inline void check_inputs(const Formula& formula, const Trace& trace, const SpaceModel& space) {
  if (!formula) throw std::invalid_argument("null formula");
  if (trace.locations() != space.size()) {
    throw SchemaError("trace has " + std::to_string(trace.locations()) + " locations, space has " +
                      std::to_string(space.size()));
  }
  for (const auto& name : variables(formula)) {
    bool found = false;
    for (const auto& v : trace.variables()) found = found || v == name;
    if (!found) throw SchemaError("trace has no variable '" + name + "'");
  }
  const Time depth = temporal_depth(formula);
  if (depth > trace.end_time()) {
    throw HorizonError("formula looks ahead " + to_string(depth) + " but the trace ends at " +
                       to_string(trace.end_time()));
  }
}

/// Expression with variable names resolved to trace columns.
class CompiledExpr {
public:
  CompiledExpr(const Expr& e, const Trace& trace) { root_ = compile(e, trace); }

  double operator()(std::span<const double> sample) const { return eval(root_, sample); }

private:
  struct Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div } kind;
    double value = 0.0;
    std::size_t var = 0;
    int lhs = -1;
    int rhs = -1;
  };
  std::vector<Node> nodes_;
  int root_ = -1;

  int compile(const Expr& e, const Trace& trace) {
    Node n{Node::Num};
    if (const auto* num = std::get_if<Number>(e.get())) {
      n.value = num->value;
    } else if (const auto* v = std::get_if<Variable>(e.get())) {
      n.kind = Node::Var;
      n.var = trace.variable_index(v->name);
    } else if (const auto* neg = std::get_if<Negate>(e.get())) {
      n.kind = Node::Neg;
      n.lhs = compile(neg->arg, trace);
    } else {
      const auto& b = std::get<Binary>(*e);
      switch (b.op) {
        case ArithOp::Add: n.kind = Node::Add; break;
        case ArithOp::Sub: n.kind = Node::Sub; break;
        case ArithOp::Mul: n.kind = Node::Mul; break;
        case ArithOp::Div: n.kind = Node::Div; break;
      }
      n.lhs = compile(b.lhs, trace);
      n.rhs = compile(b.rhs, trace);
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size() - 1);
  }

  double eval(int i, std::span<const double> s) const {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case Node::Num: return n.value;
      case Node::Var: return s[n.var];
      case Node::Neg: return -eval(n.lhs, s);
      case Node::Add: return eval(n.lhs, s) + eval(n.rhs, s);
      case Node::Sub: return eval(n.lhs, s) - eval(n.rhs, s);
      case Node::Mul: return eval(n.lhs, s) * eval(n.rhs, s);
      case Node::Div: {
        const double d = eval(n.rhs, s);
        if (d == 0.0) throw EvaluationError("division by zero");
        return eval(n.lhs, s) / d;
      }
    }
    return 0.0;
  }
};

/// Atom `lhs op rhs` as the predicate f >= 0 (or f > 0), with f = lhs - rhs
/// for >= and >, rhs - lhs for <= and <.
class CompiledAtom {
public:
  CompiledAtom(const Atom& atom, const Trace& trace)
      : lhs_(atom.lhs, trace), rhs_(atom.rhs, trace), op_(atom.op) {}

  Comparison op() const noexcept { return op_; }

  double value(std::span<const double> sample) const {
    const double a = lhs_(sample);
    const double b = rhs_(sample);
    const double f = (op_ == Comparison::Le || op_ == Comparison::Lt) ? b - a : a - b;
    if (std::isnan(f)) throw EvaluationError("atom evaluates to NaN");
    return f;
  }

  bool holds(std::span<const double> sample) const {
    if (op_ == Comparison::Eq) {
      const double a = lhs_(sample);
      const double b = rhs_(sample);
      if (std::isnan(a) || std::isnan(b)) throw EvaluationError("atom evaluates to NaN");
      return a == b;
    }
    const double f = value(sample);
    return (op_ == Comparison::Ge || op_ == Comparison::Le) ? f >= 0.0 : f > 0.0;
  }

private:
  CompiledExpr lhs_;
  CompiledExpr rhs_;
  Comparison op_;
};

} // namespace sstl::detail

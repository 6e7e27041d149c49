#include "sstl/formula.hpp"

#include "sstl/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sstl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check(const TimeBounds& b) {
  if (b.lo < Time(0)) throw std::invalid_argument("time bound " + to_string(b.lo) + " is negative");
  if (b.lo > b.hi) {
    throw std::invalid_argument("time interval [" + to_string(b.lo) + "," + to_string(b.hi) +
                                "] is reversed");
  }
}

void check(const DistanceBounds& b) {
  if (std::isnan(b.lo) || std::isnan(b.hi)) throw std::invalid_argument("distance bound is NaN");
  if (b.lo < 0.0) throw std::invalid_argument("distance bound is negative");
  if (std::isinf(b.lo)) throw std::invalid_argument("distance lower bound must be finite");
  if (b.lo > b.hi) throw std::invalid_argument("distance interval is reversed");
}

Formula node(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

std::string number_text(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string distance_text(double v) { return std::isinf(v) ? "inf" : number_text(v); }

std::string bounds_text(const TimeBounds& b) {
  return "[" + to_string(b.lo) + "," + to_string(b.hi) + "]";
}
std::string bounds_text(const DistanceBounds& b) {
  return "[" + distance_text(b.lo) + "," + distance_text(b.hi) + "]";
}

const char* comparison_text(Comparison op) {
  switch (op) {
    case Comparison::Ge: return ">=";
    case Comparison::Gt: return ">";
    case Comparison::Le: return "<=";
    case Comparison::Lt: return "<";
    case Comparison::Eq: return "==";
  }
  return "?";
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const Number&) {},
                 [&](const Variable& v) { out.insert(v.name); },
                 [&](const Negate& n) { collect_variables(n.arg, out); },
                 [&](const Binary& b) {
                   collect_variables(b.lhs, out);
                   collect_variables(b.rhs, out);
                 },
             },
             static_cast<const ExprNode::variant&>(*e));
}

} // namespace

Expr make_number(double v) { return std::make_shared<const ExprNode>(Number{v}); }
Expr make_variable(std::string name) {
  return std::make_shared<const ExprNode>(Variable{std::move(name)});
}
Expr make_negate(Expr arg) {
  if (const auto* n = std::get_if<Number>(arg.get())) return make_number(-n->value);
  return std::make_shared<const ExprNode>(Negate{std::move(arg)});
}
Expr make_binary(ArithOp op, Expr lhs, Expr rhs) {
  return std::make_shared<const ExprNode>(Binary{op, std::move(lhs), std::move(rhs)});
}

Formula make_constant(bool value) { return node(Constant{value}); }
Formula make_atom(Expr lhs, Comparison op, Expr rhs) {
  return node(Atom{std::move(lhs), op, std::move(rhs)});
}
Formula make_not(Formula arg) { return node(Not{std::move(arg)}); }
Formula make_and(Formula lhs, Formula rhs) { return node(And{std::move(lhs), std::move(rhs)}); }
Formula make_or(Formula lhs, Formula rhs) { return node(Or{std::move(lhs), std::move(rhs)}); }
Formula make_implies(Formula lhs, Formula rhs) {
  return make_or(make_not(std::move(lhs)), std::move(rhs));
}
Formula make_until(Formula lhs, Formula rhs, TimeBounds bounds) {
  check(bounds);
  return node(Until{std::move(lhs), std::move(rhs), bounds});
}
Formula make_eventually(Formula arg, TimeBounds bounds) {
  check(bounds);
  return node(Eventually{std::move(arg), bounds});
}
Formula make_globally(Formula arg, TimeBounds bounds) {
  check(bounds);
  return node(Globally{std::move(arg), bounds});
}
Formula make_somewhere(Formula arg, DistanceBounds bounds) {
  check(bounds);
  return node(Somewhere{std::move(arg), bounds});
}
Formula make_everywhere(Formula arg, DistanceBounds bounds) {
  check(bounds);
  return node(Everywhere{std::move(arg), bounds});
}
Formula make_surround(Formula lhs, Formula rhs, DistanceBounds bounds) {
  check(bounds);
  return node(Surround{std::move(lhs), std::move(rhs), bounds});
}

double evaluate(const Expr& e, const std::vector<std::string>& names,
                const std::vector<double>& values) {
  return std::visit(
      overloaded{
          [](const Number& n) { return n.value; },
          [&](const Variable& v) {
            for (std::size_t i = 0; i < names.size(); ++i) {
              if (names[i] == v.name) return values[i];
            }
            throw EvaluationError("unknown variable '" + v.name + "'");
          },
          [&](const Negate& n) { return -evaluate(n.arg, names, values); },
          [&](const Binary& b) {
            const double x = evaluate(b.lhs, names, values);
            const double y = evaluate(b.rhs, names, values);
            switch (b.op) {
              case ArithOp::Add: return x + y;
              case ArithOp::Sub: return x - y;
              case ArithOp::Mul: return x * y;
              case ArithOp::Div:
                if (y == 0.0) throw EvaluationError("division by zero in atomic predicate");
                return x / y;
            }
            return 0.0;
          },
      },
      static_cast<const ExprNode::variant&>(*e));
}

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->index() != b->index()) return false;
  return std::visit(
      overloaded{
          [&](const Number& x) { return x.value == std::get<Number>(*b).value; },
          [&](const Variable& x) { return x.name == std::get<Variable>(*b).name; },
          [&](const Negate& x) { return equal(x.arg, std::get<Negate>(*b).arg); },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(*b);
            return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
      },
      static_cast<const ExprNode::variant&>(*a));
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->index() != b->index()) return false;
  return std::visit(
      overloaded{
          [&](const Constant& x) { return x.value == std::get<Constant>(*b).value; },
          [&](const Atom& x) {
            const auto& y = std::get<Atom>(*b);
            return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Not& x) { return equal(x.arg, std::get<Not>(*b).arg); },
          [&](const And& x) {
            const auto& y = std::get<And>(*b);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Or& x) {
            const auto& y = std::get<Or>(*b);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Until& x) {
            const auto& y = std::get<Until>(*b);
            return x.bounds == y.bounds && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Eventually& x) {
            const auto& y = std::get<Eventually>(*b);
            return x.bounds == y.bounds && equal(x.arg, y.arg);
          },
          [&](const Globally& x) {
            const auto& y = std::get<Globally>(*b);
            return x.bounds == y.bounds && equal(x.arg, y.arg);
          },
          [&](const Somewhere& x) {
            const auto& y = std::get<Somewhere>(*b);
            return x.bounds == y.bounds && equal(x.arg, y.arg);
          },
          [&](const Everywhere& x) {
            const auto& y = std::get<Everywhere>(*b);
            return x.bounds == y.bounds && equal(x.arg, y.arg);
          },
          [&](const Surround& x) {
            const auto& y = std::get<Surround>(*b);
            return x.bounds == y.bounds && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
      },
      static_cast<const FormulaNode::variant&>(*a));
}

Time temporal_depth(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Constant&) { return Time(0); },
          [](const Atom&) { return Time(0); },
          [](const Not& x) { return temporal_depth(x.arg); },
          [](const And& x) { return std::max(temporal_depth(x.lhs), temporal_depth(x.rhs)); },
          [](const Or& x) { return std::max(temporal_depth(x.lhs), temporal_depth(x.rhs)); },
          [](const Until& x) {
            return x.bounds.hi + std::max(temporal_depth(x.lhs), temporal_depth(x.rhs));
          },
          [](const Eventually& x) { return x.bounds.hi + temporal_depth(x.arg); },
          [](const Globally& x) { return x.bounds.hi + temporal_depth(x.arg); },
          [](const Somewhere& x) { return temporal_depth(x.arg); },
          [](const Everywhere& x) { return temporal_depth(x.arg); },
          [](const Surround& x) {
            return std::max(temporal_depth(x.lhs), temporal_depth(x.rhs));
          },
      },
      static_cast<const FormulaNode::variant&>(*f));
}

std::size_t until_count(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Constant&) -> std::size_t { return 0; },
          [](const Atom&) -> std::size_t { return 0; },
          [](const Not& x) { return until_count(x.arg); },
          [](const And& x) { return until_count(x.lhs) + until_count(x.rhs); },
          [](const Or& x) { return until_count(x.lhs) + until_count(x.rhs); },
          [](const Until& x) { return 1 + until_count(x.lhs) + until_count(x.rhs); },
          [](const Eventually& x) { return 1 + until_count(x.arg); },
          [](const Globally& x) { return 1 + until_count(x.arg); },
          [](const Somewhere& x) { return until_count(x.arg); },
          [](const Everywhere& x) { return until_count(x.arg); },
          [](const Surround& x) { return until_count(x.lhs) + until_count(x.rhs); },
      },
      static_cast<const FormulaNode::variant&>(*f));
}

namespace {

template <class Fn>
void for_each_child(const Formula& f, Fn&& fn) {
  std::visit(overloaded{
                 [](const Constant&) {},
                 [](const Atom&) {},
                 [&](const Not& x) { fn(x.arg); },
                 [&](const And& x) { fn(x.lhs), fn(x.rhs); },
                 [&](const Or& x) { fn(x.lhs), fn(x.rhs); },
                 [&](const Until& x) { fn(x.lhs), fn(x.rhs); },
                 [&](const Eventually& x) { fn(x.arg); },
                 [&](const Globally& x) { fn(x.arg); },
                 [&](const Somewhere& x) { fn(x.arg); },
                 [&](const Everywhere& x) { fn(x.arg); },
                 [&](const Surround& x) { fn(x.lhs), fn(x.rhs); },
             },
             static_cast<const FormulaNode::variant&>(*f));
}

} // namespace

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  if (const auto* a = std::get_if<Atom>(f.get())) {
    collect_variables(a->lhs, out);
    collect_variables(a->rhs, out);
  }
  for_each_child(f, [&](const Formula& c) { out.merge(variables(c)); });
  return out;
}

bool has_equality(const Formula& f) {
  if (const auto* a = std::get_if<Atom>(f.get()); a && a->op == Comparison::Eq) return true;
  bool found = false;
  for_each_child(f, [&](const Formula& c) { found = found || has_equality(c); });
  return found;
}

Formula desugar(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Constant&) { return f; },
          [&](const Atom&) { return f; },
          [](const Not& x) { return make_not(desugar(x.arg)); },
          [](const And& x) { return make_and(desugar(x.lhs), desugar(x.rhs)); },
          [](const Or& x) { return make_or(desugar(x.lhs), desugar(x.rhs)); },
          [](const Until& x) { return make_until(desugar(x.lhs), desugar(x.rhs), x.bounds); },
          [](const Eventually& x) {
            return make_until(make_constant(true), desugar(x.arg), x.bounds);
          },
          [](const Globally& x) {
            return make_not(make_until(make_constant(true), make_not(desugar(x.arg)), x.bounds));
          },
          [](const Somewhere& x) { return make_somewhere(desugar(x.arg), x.bounds); },
          [](const Everywhere& x) { return make_everywhere(desugar(x.arg), x.bounds); },
          [](const Surround& x) {
            return make_surround(desugar(x.lhs), desugar(x.rhs), x.bounds);
          },
      },
      static_cast<const FormulaNode::variant&>(*f));
}

std::string to_string(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Number& n) { return number_text(n.value); },
          [](const Variable& v) { return v.name; },
          [](const Negate& n) { return "(-" + to_string(n.arg) + ")"; },
          [](const Binary& b) {
            return "(" + to_string(b.lhs) + " " + static_cast<char>(b.op) + " " +
                   to_string(b.rhs) + ")";
          },
      },
      static_cast<const ExprNode::variant&>(*e));
}

std::string to_string(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Constant& x) -> std::string { return x.value ? "true" : "false"; },
          [](const Atom& x) {
            return "(" + to_string(x.lhs) + " " + comparison_text(x.op) + " " +
                   to_string(x.rhs) + ")";
          },
          [](const Not& x) { return "!" + to_string(x.arg); },
          [](const And& x) { return "(" + to_string(x.lhs) + " & " + to_string(x.rhs) + ")"; },
          [](const Or& x) { return "(" + to_string(x.lhs) + " | " + to_string(x.rhs) + ")"; },
          [](const Until& x) {
            return "(" + to_string(x.lhs) + " U" + bounds_text(x.bounds) + " " +
                   to_string(x.rhs) + ")";
          },
          [](const Eventually& x) { return "F" + bounds_text(x.bounds) + " " + to_string(x.arg); },
          [](const Globally& x) { return "G" + bounds_text(x.bounds) + " " + to_string(x.arg); },
          [](const Somewhere& x) {
            return "somewhere" + bounds_text(x.bounds) + " " + to_string(x.arg);
          },
          [](const Everywhere& x) {
            return "everywhere" + bounds_text(x.bounds) + " " + to_string(x.arg);
          },
          [](const Surround& x) {
            return "(" + to_string(x.lhs) + " S" + bounds_text(x.bounds) + " " +
                   to_string(x.rhs) + ")";
          },
      },
      static_cast<const FormulaNode::variant&>(*f));
}

} // namespace sstl

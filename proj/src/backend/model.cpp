/*
 * Copyright (C) 2026 The ComSat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <comsat/backend/model.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace comsat {
namespace backend {

//==============================================================================
LinearExpr::LinearExpr(std::int64_t constant)
: _constant(constant)
{
}

//==============================================================================
LinearExpr::LinearExpr(int constant)
: _constant(constant)
{
}

//==============================================================================
LinearExpr::LinearExpr(IntVar var)
: _terms{{var.index, 1}}
{
}

//==============================================================================
LinearExpr::LinearExpr(BoolVar var)
: _terms{{var.index, 1}}
{
}

//==============================================================================
LinearExpr::LinearExpr(Literal lit)
{
  if (lit.positive())
  {
    _terms.push_back({lit.var(), 1});
  }
  else
  {
    _terms.push_back({lit.var(), -1});
    _constant = 1;
  }
}

//==============================================================================
LinearExpr LinearExpr::term(int var, std::int64_t coef)
{
  LinearExpr e;
  e._terms.push_back({var, coef});
  return e;
}

//==============================================================================
LinearExpr& LinearExpr::operator+=(const LinearExpr& other)
{
  _terms.insert(_terms.end(), other._terms.begin(), other._terms.end());
  _constant += other._constant;
  return *this;
}

//==============================================================================
LinearExpr& LinearExpr::operator-=(const LinearExpr& other)
{
  for (const auto& t : other._terms)
    _terms.push_back({t.var, -t.coef});
  _constant -= other._constant;
  return *this;
}

//==============================================================================
LinearExpr& LinearExpr::operator*=(std::int64_t factor)
{
  for (auto& t : _terms)
    t.coef *= factor;
  _constant *= factor;
  return *this;
}

//==============================================================================
LinearExpr LinearExpr::normalized() const
{
  std::map<int, std::int64_t> merged;
  for (const auto& t : _terms)
    merged[t.var] += t.coef;

  LinearExpr out;
  out._constant = _constant;
  for (const auto& [var, coef] : merged)
  {
    if (coef != 0)
      out._terms.push_back({var, coef});
  }
  return out;
}

LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
LinearExpr operator-(LinearExpr a) { return a *= -1; }
LinearExpr operator*(LinearExpr a, std::int64_t f) { return a *= f; }
LinearExpr operator*(std::int64_t f, LinearExpr a) { return a *= f; }

LinearConstraint operator>=(const LinearExpr& a, const LinearExpr& b)
{
  return {a - b, Relation::GreaterEqual};
}

LinearConstraint operator<=(const LinearExpr& a, const LinearExpr& b)
{
  return {a - b, Relation::LessEqual};
}

LinearConstraint operator==(const LinearExpr& a, const LinearExpr& b)
{
  return {a - b, Relation::Equal};
}

//==============================================================================
Constraint exactly_one(std::span<const Literal> literals)
{
  if (literals.empty())
    throw std::invalid_argument("exactly_one over an empty set");

  return Cardinality{{literals.begin(), literals.end()}, 1};
}

//==============================================================================
Constraint exactly_n(std::span<const Literal> literals, std::int64_t n)
{
  if (n < 0 || n > static_cast<std::int64_t>(literals.size()))
  {
    throw std::invalid_argument(
      "exactly_n: count " + std::to_string(n) + " outside [0, "
      + std::to_string(literals.size()) + "]");
  }

  return Cardinality{{literals.begin(), literals.end()}, n};
}

//==============================================================================
Constraint any_of(std::span<const Literal> literals)
{
  return Clause{{literals.begin(), literals.end()}};
}

//==============================================================================
Constraint implies(Literal guard, LinearConstraint constraint)
{
  return Implication{guard, std::move(constraint)};
}

//==============================================================================
BoolVar Model::new_bool(std::string name)
{
  _variables.push_back({std::move(name), true, 0, 1});
  return BoolVar{static_cast<int>(_variables.size()) - 1};
}

//==============================================================================
IntVar Model::new_int(std::int64_t lb, std::int64_t ub, std::string name)
{
  if (lb > ub)
  {
    throw std::invalid_argument(
      "empty domain [" + std::to_string(lb) + ", " + std::to_string(ub)
      + "] for " + name);
  }

  _variables.push_back({std::move(name), false, lb, ub});
  return IntVar{static_cast<int>(_variables.size()) - 1};
}

//==============================================================================
void Model::_check_var(int var) const
{
  if (var < 0 || var >= static_cast<int>(_variables.size()))
    throw std::out_of_range("variable does not belong to this model");
}

//==============================================================================
void Model::add(Constraint constraint)
{
  std::visit(
    [this](const auto& c)
    {
      using T = std::decay_t<decltype(c)>;
      if constexpr (std::is_same_v<T, Implication>)
      {
        if (c.guard)
          _check_var(c.guard->var());
        for (const auto& t : c.constraint.expr.terms())
          _check_var(t.var);
      }
      else
      {
        for (const auto& l : c.literals)
        {
          _check_var(l.var());
          if (!_variables[l.var()].is_bool)
            throw std::invalid_argument("literal over an integer variable");
        }
      }
    }, constraint);

  _constraints.push_back(std::move(constraint));
}

//==============================================================================
void Model::add(LinearConstraint constraint)
{
  add(Implication{std::nullopt, std::move(constraint)});
}

//==============================================================================
std::pair<std::int64_t, std::int64_t> Model::bounds(const LinearExpr& expr) const
{
  std::int64_t lo = expr.constant();
  std::int64_t hi = expr.constant();
  for (const auto& t : expr.terms())
  {
    _check_var(t.var);
    const auto& v = _variables[t.var];
    if (t.coef >= 0)
    {
      lo += t.coef * v.lb;
      hi += t.coef * v.ub;
    }
    else
    {
      lo += t.coef * v.ub;
      hi += t.coef * v.lb;
    }
  }
  return {lo, hi};
}

//==============================================================================
LinearExpr Model::ite(
  Literal condition, const LinearExpr& a, const LinearExpr& b)
{
  _check_var(condition.var());
  if (a.is_constant() && b.is_constant())
  {
    // b + (a - b) * condition
    return LinearExpr(b.constant())
      + LinearExpr(condition) * (a.constant() - b.constant());
  }

  const auto [alo, ahi] = bounds(a);
  const auto [blo, bhi] = bounds(b);
  const auto aux = new_int(
    std::min(alo, blo), std::max(ahi, bhi),
    "ite_" + std::to_string(_variables.size()));

  add(implies(condition, LinearExpr(aux) == a));
  add(implies(!condition, LinearExpr(aux) == b));
  return aux;
}

//==============================================================================
void Model::minimize(LinearExpr objective)
{
  for (const auto& t : objective.terms())
    _check_var(t.var);
  _objective = std::move(objective);
}

//==============================================================================
void Model::set_hint(BoolVar var, ValueHint hint)
{
  _check_var(var.index);
  _variables[var.index].hint = hint;
}

//==============================================================================
namespace {

std::string smt_name(const std::vector<VariableInfo>& vars, int index)
{
  std::string clean;
  for (char c : vars[index].name)
    clean.push_back((c == '|' || c == '\\') ? '_' : c);
  return "|" + clean + "#" + std::to_string(index) + "|";
}

std::string smt_int(std::int64_t v)
{
  if (v < 0)
    return "(- " + std::to_string(-v) + ")";
  return std::to_string(v);
}

std::string smt_lit(const std::vector<VariableInfo>& vars, const Literal& l)
{
  const auto name = smt_name(vars, l.var());
  return l.positive() ? name : "(not " + name + ")";
}

std::string smt_expr(
  const std::vector<VariableInfo>& vars, const LinearExpr& expr)
{
  const auto e = expr.normalized();
  std::ostringstream out;
  out << "(+";
  for (const auto& t : e.terms())
  {
    const auto name = smt_name(vars, t.var);
    const auto value = vars[t.var].is_bool ? "(ite " + name + " 1 0)" : name;
    out << " (* " << smt_int(t.coef) << " " << value << ")";
  }
  out << " " << smt_int(e.constant()) << ")";
  return out.str();
}

std::string smt_linear(
  const std::vector<VariableInfo>& vars, const LinearConstraint& c)
{
  const char* op = c.relation == Relation::GreaterEqual ? ">="
    : c.relation == Relation::LessEqual ? "<=" : "=";
  return std::string("(") + op + " " + smt_expr(vars, c.expr) + " 0)";
}

} // anonymous namespace

//==============================================================================
std::string Model::to_smtlib() const
{
  std::ostringstream out;
  out << "(set-logic QF_LIA)\n";
  for (std::size_t i = 0; i < _variables.size(); ++i)
  {
    const auto& v = _variables[i];
    const auto name = smt_name(_variables, static_cast<int>(i));
    if (v.is_bool)
    {
      out << "(declare-const " << name << " Bool)\n";
    }
    else
    {
      out << "(declare-const " << name << " Int)\n";
      out << "(assert (and (>= " << name << " " << smt_int(v.lb) << ") (<= "
          << name << " " << smt_int(v.ub) << ")))\n";
    }
  }

  for (const auto& constraint : _constraints)
  {
    std::visit(
      [&](const auto& c)
      {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Clause>)
        {
          out << "(assert (or false";
          for (const auto& l : c.literals)
            out << " " << smt_lit(_variables, l);
          out << "))\n";
        }
        else if constexpr (std::is_same_v<T, Cardinality>)
        {
          out << "(assert (= (+ 0";
          for (const auto& l : c.literals)
            out << " (ite " << smt_lit(_variables, l) << " 1 0)";
          out << ") " << c.count << "))\n";
        }
        else
        {
          if (c.guard)
          {
            out << "(assert (=> " << smt_lit(_variables, *c.guard) << " "
                << smt_linear(_variables, c.constraint) << "))\n";
          }
          else
          {
            out << "(assert " << smt_linear(_variables, c.constraint) << ")\n";
          }
        }
      }, constraint);
  }

  if (_objective)
    out << "(minimize " << smt_expr(_variables, *_objective) << ")\n";
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

//==============================================================================
Solution::Solution(std::vector<std::int64_t> values)
: _values(std::move(values))
{
}

bool Solution::value(BoolVar var) const { return _values.at(var.index) != 0; }

bool Solution::value(Literal lit) const
{
  return (_values.at(lit.var()) != 0) == lit.positive();
}

std::int64_t Solution::value(IntVar var) const { return _values.at(var.index); }

std::int64_t Solution::evaluate(const LinearExpr& expr) const
{
  std::int64_t total = expr.constant();
  for (const auto& t : expr.terms())
    total += t.coef * _values.at(t.var);
  return total;
}

//==============================================================================
bool satisfies(const Constraint& constraint, const Solution& solution)
{
  return std::visit(
    [&](const auto& c) -> bool
    {
      using T = std::decay_t<decltype(c)>;
      if constexpr (std::is_same_v<T, Clause>)
      {
        return std::any_of(c.literals.begin(), c.literals.end(),
          [&](const Literal& l) { return solution.value(l); });
      }
      else if constexpr (std::is_same_v<T, Cardinality>)
      {
        const auto n = std::count_if(c.literals.begin(), c.literals.end(),
          [&](const Literal& l) { return solution.value(l); });
        return n == c.count;
      }
      else
      {
        if (c.guard && !solution.value(*c.guard))
          return true;
        const auto v = solution.evaluate(c.constraint.expr);
        switch (c.constraint.relation)
        {
          case Relation::GreaterEqual: return v >= 0;
          case Relation::LessEqual: return v <= 0;
          case Relation::Equal: return v == 0;
        }
        return false;
      }
    }, constraint);
}

//==============================================================================
std::vector<std::size_t> violations(const Model& model, const Solution& solution)
{
  std::vector<std::size_t> out;
  const auto& constraints = model.constraints();
  for (std::size_t i = 0; i < constraints.size(); ++i)
  {
    if (!satisfies(constraints[i], solution))
      out.push_back(i);
  }

  const auto& vars = model.variables();
  for (std::size_t i = 0; i < vars.size(); ++i)
  {
    const auto v = solution.values().at(i);
    if (v < vars[i].lb || v > vars[i].ub)
      out.push_back(constraints.size() + i);
  }
  return out;
}

} // namespace backend
} // namespace comsat

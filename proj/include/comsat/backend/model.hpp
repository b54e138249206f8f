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

#ifndef COMSAT__BACKEND__MODEL_HPP
#define COMSAT__BACKEND__MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace comsat {
namespace backend {

//==============================================================================
/// Handle to a boolean decision variable. Booleans take part in linear
/// arithmetic as 0/1.
struct BoolVar
{
  int index = -1;
};

/// Handle to a bounded integer decision variable.
struct IntVar
{
  int index = -1;
};

//==============================================================================
class Literal
{
public:

  Literal() = default;

  // Implicit on purpose: a BoolVar is usable wherever a positive literal is.
  Literal(BoolVar var, bool positive = true)
  : _var(var.index), _positive(positive)
  {
  }

  int var() const { return _var; }
  bool positive() const { return _positive; }

  Literal operator!() const
  {
    return Literal(BoolVar{_var}, !_positive);
  }

  bool operator==(const Literal&) const = default;

private:
  int _var = -1;
  bool _positive = true;
};

//==============================================================================
struct Term
{
  int var;
  std::int64_t coef;
};

/// Sum of coefficient-weighted variables plus a constant.
class LinearExpr
{
public:

  LinearExpr() = default;
  LinearExpr(std::int64_t constant);
  LinearExpr(int constant);
  LinearExpr(IntVar var);
  LinearExpr(BoolVar var);
  LinearExpr(Literal lit);

  static LinearExpr term(int var, std::int64_t coef);

  const std::vector<Term>& terms() const { return _terms; }
  std::int64_t constant() const { return _constant; }
  bool is_constant() const { return _terms.empty(); }

  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(std::int64_t factor);

  /// Merges repeated variables and drops zero coefficients.
  LinearExpr normalized() const;

private:
  std::vector<Term> _terms;
  std::int64_t _constant = 0;
};

LinearExpr operator+(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a);
LinearExpr operator*(LinearExpr a, std::int64_t factor);
LinearExpr operator*(std::int64_t factor, LinearExpr a);

//==============================================================================
enum class Relation
{
  GreaterEqual,
  LessEqual,
  Equal
};

/// `expr rel 0`
struct LinearConstraint
{
  LinearExpr expr;
  Relation relation;
};

LinearConstraint operator>=(const LinearExpr& a, const LinearExpr& b);
LinearConstraint operator<=(const LinearExpr& a, const LinearExpr& b);
LinearConstraint operator==(const LinearExpr& a, const LinearExpr& b);

//==============================================================================
// Constraints in the form they were asserted. The engine compiles them into
// propagators; the evaluator and the SMT-LIB printer read them directly.

struct Clause
{
  std::vector<Literal> literals;
};

struct Cardinality
{
  std::vector<Literal> literals;
  std::int64_t count;
};

struct Implication
{
  /// Unset means the linear constraint holds unconditionally.
  std::optional<Literal> guard;
  LinearConstraint constraint;
};

using Constraint = std::variant<Clause, Cardinality, Implication>;

/// Exactly one of `literals` is true. Throws std::invalid_argument on an
/// empty set.
Constraint exactly_one(std::span<const Literal> literals);

/// Exactly `n` of `literals` are true. Throws std::invalid_argument unless
/// 0 <= n <= |literals|.
Constraint exactly_n(std::span<const Literal> literals, std::int64_t n);

/// Disjunction. An empty clause is unsatisfiable.
Constraint any_of(std::span<const Literal> literals);

/// `guard => constraint`
Constraint implies(Literal guard, LinearConstraint constraint);

//==============================================================================
enum class ValueHint
{
  /// Try true first.
  True,
  /// Try false first.
  False,
  /// Try true first when every constraint guarded by the variable holds at
  /// the current lower bounds, otherwise false first.
  Consistent
};

struct VariableInfo
{
  std::string name;
  bool is_bool;
  std::int64_t lb;
  std::int64_t ub;
  ValueHint hint = ValueHint::True;
};

//==============================================================================
/// A satisfiability context over booleans and bounded integers with linear
/// constraints and an optional linear objective to minimize.
class Model
{
public:

  BoolVar new_bool(std::string name);

  /// Throws std::invalid_argument if lb > ub.
  IntVar new_int(std::int64_t lb, std::int64_t ub, std::string name);

  void add(Constraint constraint);
  void add(LinearConstraint constraint);

  /// Linear term equal to `a` when `condition` holds and `b` otherwise. When
  /// both branches are constant no auxiliary variable is introduced.
  LinearExpr ite(Literal condition, const LinearExpr& a, const LinearExpr& b);

  void minimize(LinearExpr objective);

  void set_hint(BoolVar var, ValueHint hint);

  const std::vector<VariableInfo>& variables() const { return _variables; }
  const std::vector<Constraint>& constraints() const { return _constraints; }
  const std::optional<LinearExpr>& objective() const { return _objective; }

  /// Smallest and largest values `expr` can take over the variable domains.
  std::pair<std::int64_t, std::int64_t> bounds(const LinearExpr& expr) const;

  /// Dump in SMT-LIB 2 concrete syntax (QF_LIA with a minimize directive).
  std::string to_smtlib() const;

private:
  void _check_var(int var) const;

  std::vector<VariableInfo> _variables;
  std::vector<Constraint> _constraints;
  std::optional<LinearExpr> _objective;
};

//==============================================================================
class Solution
{
public:

  Solution() = default;
  explicit Solution(std::vector<std::int64_t> values);

  bool value(BoolVar var) const;
  bool value(Literal lit) const;
  std::int64_t value(IntVar var) const;
  std::int64_t evaluate(const LinearExpr& expr) const;

  const std::vector<std::int64_t>& values() const { return _values; }

private:
  std::vector<std::int64_t> _values;
};

/// Direct evaluation of an asserted constraint under a full assignment.
bool satisfies(const Constraint& constraint, const Solution& solution);

/// Indices of every constraint (and out-of-domain variable, reported as
/// constraints().size() + var) that `solution` violates.
std::vector<std::size_t> violations(const Model& model, const Solution& solution);

} // namespace backend
} // namespace comsat

#endif // COMSAT__BACKEND__MODEL_HPP

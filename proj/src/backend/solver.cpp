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

#include <comsat/backend/solver.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

// Finite-domain bounds propagation with depth-first binary branching.
//
// Every asserted constraint is compiled into one or more propagators of the
// form   guard => sum(a_i * x_i) >= rhs   where booleans are 0/1 integers.
// Boolean terms of a propagator that belong to the same exactly-one group are
// bundled into a "cell" whose contribution is bounded by the best remaining
// member, which gives the objective bound of separable selection problems its
// full strength. Minimization runs as branch-and-bound with a tightening
// objective cut.

namespace comsat {
namespace backend {

const char* to_string(Status status)
{
  switch (status)
  {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Timeout: return "timeout";
  }
  return "?";
}

namespace {

using i64 = std::int64_t;

constexpr i64 kNegInf = std::numeric_limits<i64>::min() / 4;

i64 floor_div(i64 a, i64 b)
{
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

//==============================================================================
struct Cell
{
  std::vector<Term> terms;
  bool complete;
};

struct Propagator
{
  std::vector<Term> singles;
  std::vector<Cell> cells;
  i64 rhs = 0;
  int guard_var = -1;
  bool guard_positive = true;
  bool active = true;
  i64 weight = 1;
};

//==============================================================================
class Engine
{
public:

  Engine(const Model& model, const Limits& limits)
  : _model(model), _limits(limits)
  {
    const auto& vars = model.variables();
    const auto n = vars.size();
    _lb.resize(n);
    _ub.resize(n);
    _watches.resize(n);
    _guarded.resize(n);
    _wdeg.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
    {
      _lb[i] = vars[i].lb;
      _ub[i] = vars[i].ub;
      if (vars[i].is_bool)
        _bools.push_back(static_cast<int>(i));
    }

    _collect_groups();
    for (const auto& c : model.constraints())
      _compile(c);

    if (model.objective())
    {
      const auto obj = model.objective()->normalized();
      Propagator p;
      std::vector<Term> terms;
      for (const auto& t : obj.terms())
        terms.push_back({t.var, -t.coef});
      _objective_constant = obj.constant();
      p.active = false;
      _objective_prop = _add_propagator(std::move(p), std::move(terms), -1);
    }

    _in_queue.assign(_props.size(), 0);
  }

  CheckResult run();

private:

  //----------------------------------------------------------------------------
  void _collect_groups()
  {
    _var_groups.resize(_model.variables().size());
    for (const auto& c : _model.constraints())
    {
      const auto* card = std::get_if<Cardinality>(&c);
      if (!card || card->count != 1)
        continue;

      std::vector<int> members;
      bool ok = true;
      for (const auto& l : card->literals)
      {
        if (!l.positive())
        {
          ok = false;
          break;
        }
        members.push_back(l.var());
      }
      std::sort(members.begin(), members.end());
      if (!ok || std::adjacent_find(members.begin(), members.end())
        != members.end())
      {
        continue;
      }

      // Identical member sets share one group so that every cardinality
      // defining it skips it (see _compile).
      if (std::find(_groups.begin(), _groups.end(), members) != _groups.end())
        continue;

      const int g = static_cast<int>(_groups.size());
      for (int v : members)
        _var_groups[v].push_back(g);
      _groups.push_back(std::move(members));
    }
  }

  //----------------------------------------------------------------------------
  int _add_propagator(Propagator p, std::vector<Term> terms, int skip_group)
  {
    // Bundle boolean terms that share an exactly-one group into cells.
    std::vector<char> used(terms.size(), 0);
    while (true)
    {
      std::map<int, std::vector<std::size_t>> by_group;
      for (std::size_t i = 0; i < terms.size(); ++i)
      {
        if (used[i])
          continue;
        for (int g : _var_groups[terms[i].var])
        {
          if (g != skip_group)
            by_group[g].push_back(i);
        }
      }

      int best = -1;
      std::size_t best_size = 1;
      for (const auto& [g, members] : by_group)
      {
        if (members.size() > best_size)
        {
          best = g;
          best_size = members.size();
        }
      }
      if (best < 0)
        break;

      Cell cell;
      for (auto i : by_group[best])
      {
        cell.terms.push_back(terms[i]);
        used[i] = 1;
      }
      cell.complete = cell.terms.size() == _groups[best].size();
      p.cells.push_back(std::move(cell));
    }

    for (std::size_t i = 0; i < terms.size(); ++i)
    {
      if (!used[i])
        p.singles.push_back(terms[i]);
    }

    const int index = static_cast<int>(_props.size());
    auto watch = [&](int var)
      {
        auto& w = _watches[var];
        if (w.empty() || w.back() != index)
          w.push_back(index);
      };
    for (const auto& t : p.singles)
      watch(t.var);
    for (const auto& c : p.cells)
    {
      for (const auto& t : c.terms)
        watch(t.var);
    }
    if (p.guard_var >= 0)
    {
      watch(p.guard_var);
      _guarded[p.guard_var].push_back(index);
    }

    _props.push_back(std::move(p));
    for (const auto& t : _terms_of(index))
      _wdeg[t.var] += 1;
    return index;
  }

  //----------------------------------------------------------------------------
  std::vector<Term> _terms_of(int index) const
  {
    const auto& p = _props[index];
    std::vector<Term> out = p.singles;
    for (const auto& c : p.cells)
      out.insert(out.end(), c.terms.begin(), c.terms.end());
    return out;
  }

  //----------------------------------------------------------------------------
  void _add_linear(
    const LinearExpr& raw, i64 rhs_shift, std::optional<Literal> guard,
    int skip_group)
  {
    // sum(terms) + constant >= 0
    const auto e = raw.normalized();
    Propagator p;
    p.rhs = -e.constant() + rhs_shift;
    if (guard)
    {
      p.guard_var = guard->var();
      p.guard_positive = guard->positive();
    }
    _add_propagator(std::move(p), e.terms(), skip_group);
  }

  //----------------------------------------------------------------------------
  void _compile(const Constraint& constraint)
  {
    if (const auto* clause = std::get_if<Clause>(&constraint))
    {
      LinearExpr sum;
      for (const auto& l : clause->literals)
        sum += LinearExpr(l);
      _add_linear(sum - LinearExpr(1), 0, std::nullopt, -1);
      return;
    }

    if (const auto* card = std::get_if<Cardinality>(&constraint))
    {
      LinearExpr sum;
      for (const auto& l : card->literals)
        sum += LinearExpr(l);

      // The group a cardinality defines must not be used to strengthen that
      // same cardinality: it is what enforces the at-most-one property.
      int own_group = -1;
      if (card->count == 1 && !card->literals.empty())
      {
        const int v = card->literals.front().var();
        for (int g : _var_groups[v])
        {
          if (_groups[g].size() == card->literals.size())
          {
            bool same = true;
            for (const auto& l : card->literals)
            {
              same = same && std::binary_search(
                _groups[g].begin(), _groups[g].end(), l.var());
            }
            if (same)
              own_group = g;
          }
        }
      }

      _add_linear(sum - LinearExpr(card->count), 0, std::nullopt,
        own_group);
      _add_linear(LinearExpr(card->count) - sum, 0, std::nullopt,
        own_group);
      return;
    }

    const auto& imp = std::get<Implication>(constraint);
    const auto& lin = imp.constraint;
    switch (lin.relation)
    {
      case Relation::GreaterEqual:
        _add_linear(lin.expr, 0, imp.guard, -1);
        break;
      case Relation::LessEqual:
        _add_linear(-lin.expr, 0, imp.guard, -1);
        break;
      case Relation::Equal:
        _add_linear(lin.expr, 0, imp.guard, -1);
        _add_linear(-lin.expr, 0, imp.guard, -1);
        break;
    }
  }

  //----------------------------------------------------------------------------
  bool _fixed(int var) const { return _lb[var] == _ub[var]; }

  /// 1 true, 0 false, -1 unknown
  int _guard_state(const Propagator& p) const
  {
    if (p.guard_var < 0)
      return 1;
    if (!_fixed(p.guard_var))
      return -1;
    return ((_lb[p.guard_var] == 1) == p.guard_positive) ? 1 : 0;
  }

  void _enqueue(int prop)
  {
    if (!_in_queue[prop])
    {
      _in_queue[prop] = 1;
      _queue.push_back(prop);
    }
  }

  void _notify(int var)
  {
    for (int p : _watches[var])
      _enqueue(p);
  }

  bool _set_lb(int var, i64 v)
  {
    if (v <= _lb[var])
      return true;
    if (v > _ub[var])
      return false;
    _trail.push_back({var, _lb[var], _ub[var]});
    _lb[var] = v;
    _notify(var);
    return true;
  }

  bool _set_ub(int var, i64 v)
  {
    if (v >= _ub[var])
      return true;
    if (v < _lb[var])
      return false;
    _trail.push_back({var, _lb[var], _ub[var]});
    _ub[var] = v;
    _notify(var);
    return true;
  }

  //----------------------------------------------------------------------------
  bool _propagate_one(int index)
  {
    auto& p = _props[index];
    if (!p.active)
      return true;

    const int gs = _guard_state(p);
    if (gs == 0)
      return true;

    ++_stats.propagations;

    i64 maxsum = 0;
    for (const auto& t : p.singles)
      maxsum += t.coef > 0 ? t.coef * _ub[t.var] : t.coef * _lb[t.var];

    _cell_max.resize(p.cells.size());
    for (std::size_t c = 0; c < p.cells.size(); ++c)
    {
      const auto& cell = p.cells[c];
      int n_true = 0;
      i64 best = cell.complete ? kNegInf : 0;
      i64 fixed_value = 0;
      for (const auto& t : cell.terms)
      {
        if (_lb[t.var] == 1)
        {
          ++n_true;
          fixed_value = t.coef;
        }
        else if (_ub[t.var] == 1)
        {
          best = std::max(best, t.coef);
        }
      }

      if (n_true > 1)
        return false;
      if (n_true == 1)
        best = fixed_value;
      else if (best == kNegInf)
        return false;

      _cell_max[c] = best;
      maxsum += best;
    }

    if (maxsum < p.rhs)
    {
      if (gs == 1)
        return false;
      // Guard must be false.
      return p.guard_positive ? _set_ub(p.guard_var, 0) : _set_lb(p.guard_var, 1);
    }

    if (gs != 1)
      return true;

    const i64 slack = maxsum - p.rhs;
    for (const auto& t : p.singles)
    {
      if (t.coef > 0)
      {
        if (!_set_lb(t.var, _ub[t.var] - floor_div(slack, t.coef)))
          return false;
      }
      else
      {
        if (!_set_ub(t.var, _lb[t.var] + floor_div(slack, -t.coef)))
          return false;
      }
    }

    for (std::size_t c = 0; c < p.cells.size(); ++c)
    {
      const auto& cell = p.cells[c];
      const i64 cmax = _cell_max[c];

      bool has_true = false;
      for (const auto& t : cell.terms)
        has_true = has_true || _lb[t.var] == 1;
      if (has_true)
        continue;

      int options = 0;
      int last_option = -1;
      for (const auto& t : cell.terms)
      {
        if (_ub[t.var] == 0)
          continue;
        if (cmax - t.coef > slack)
        {
          if (!_set_ub(t.var, 0))
            return false;
        }
        else
        {
          ++options;
          last_option = t.var;
        }
      }

      const bool zero_ok = !cell.complete && cmax <= slack;
      if (!zero_ok)
      {
        if (options == 0)
          return false;
        if (options == 1 && !_set_lb(last_option, 1))
          return false;
      }
    }

    return true;
  }

  //----------------------------------------------------------------------------
  bool _propagate()
  {
    while (!_queue.empty())
    {
      const int p = _queue.front();
      _queue.pop_front();
      _in_queue[p] = 0;
      if (!_propagate_one(p))
      {
        _on_conflict(p);
        for (int q : _queue)
          _in_queue[q] = 0;
        _queue.clear();
        return false;
      }
    }
    return true;
  }

  void _on_conflict(int prop)
  {
    ++_stats.failures;
    auto& p = _props[prop];
    p.weight += 1;
    for (const auto& t : p.singles)
      _wdeg[t.var] += 1;
    for (const auto& c : p.cells)
    {
      for (const auto& t : c.terms)
        _wdeg[t.var] += 1;
    }
    if (p.guard_var >= 0)
      _wdeg[p.guard_var] += 1;
  }

  //----------------------------------------------------------------------------
  bool _holds_at_lower_bounds(const Propagator& p) const
  {
    i64 sum = 0;
    for (const auto& t : p.singles)
      sum += t.coef * _lb[t.var];
    for (const auto& c : p.cells)
    {
      for (const auto& t : c.terms)
        sum += t.coef * _lb[t.var];
    }
    return sum >= p.rhs;
  }

  /// Returns an integer variable to split on, or -1 when the lower-bound
  /// assignment satisfies every active propagator.
  int _check_lower_bounds() const
  {
    for (const auto& p : _props)
    {
      if (!p.active || _guard_state(p) != 1)
        continue;
      if (_holds_at_lower_bounds(p))
        continue;

      for (const auto& t : p.singles)
      {
        if (!_fixed(t.var))
          return t.var;
      }
      for (const auto& c : p.cells)
      {
        for (const auto& t : c.terms)
        {
          if (!_fixed(t.var))
            return t.var;
        }
      }
    }
    return -1;
  }

  //----------------------------------------------------------------------------
  int _select_bool() const
  {
    int best = -1;
    i64 best_w = -1;
    for (int v : _bools)
    {
      if (_fixed(v))
        continue;
      if (_wdeg[v] > best_w)
      {
        best = v;
        best_w = _wdeg[v];
      }
    }
    return best;
  }

  i64 _first_value(int var) const
  {
    switch (_model.variables()[var].hint)
    {
      case ValueHint::True: return 1;
      case ValueHint::False: return 0;
      case ValueHint::Consistent: break;
    }

    int broken_if_true = 0;
    int broken_if_false = 0;
    for (int index : _guarded[var])
    {
      const auto& p = _props[index];
      if (!p.active || _holds_at_lower_bounds(p))
        continue;
      if (p.guard_positive)
        ++broken_if_true;
      else
        ++broken_if_false;
    }
    return broken_if_true <= broken_if_false ? 1 : 0;
  }

  //----------------------------------------------------------------------------
  struct Decision
  {
    int var;
    bool is_split;
    i64 value; // assigned value, or upper bound of the left split branch
  };

  bool _apply(const Decision& d)
  {
    if (d.is_split)
      return _set_ub(d.var, d.value);
    return _set_lb(d.var, d.value) && _set_ub(d.var, d.value);
  }

  bool _apply_refutation(const Decision& d)
  {
    if (d.is_split)
      return _set_lb(d.var, d.value + 1);
    const i64 other = d.value == 1 ? 0 : 1;
    return _set_lb(d.var, other) && _set_ub(d.var, other);
  }

  void _undo_level()
  {
    const auto mark = _levels.back();
    _levels.pop_back();
    while (_trail.size() > mark)
    {
      const auto& e = _trail.back();
      _lb[e.var] = e.lb;
      _ub[e.var] = e.ub;
      _trail.pop_back();
    }
  }

  bool _out_of_budget() const
  {
    if (_limits.max_nodes != 0 && _stats.nodes >= _limits.max_nodes)
      return true;
    if (_limits.deadline && (_stats.nodes & 0xFF) == 0
      && std::chrono::steady_clock::now() >= *_limits.deadline)
    {
      return true;
    }
    return false;
  }

  //----------------------------------------------------------------------------
  struct TrailEntry
  {
    int var;
    i64 lb;
    i64 ub;
  };

  const Model& _model;
  Limits _limits;

  std::vector<i64> _lb;
  std::vector<i64> _ub;
  std::vector<TrailEntry> _trail;
  std::vector<std::size_t> _levels;
  std::vector<Decision> _decisions;

  std::vector<Propagator> _props;
  std::vector<std::vector<int>> _watches;
  std::vector<std::vector<int>> _guarded;
  std::deque<int> _queue;
  std::vector<char> _in_queue;
  std::vector<i64> _cell_max;

  std::vector<std::vector<int>> _groups;
  std::vector<std::vector<int>> _var_groups;

  std::vector<int> _bools;
  std::vector<i64> _wdeg;

  int _objective_prop = -1;
  i64 _objective_constant = 0;

  SearchStats _stats;
};

//==============================================================================
CheckResult Engine::run()
{
  CheckResult result;
  std::optional<Solution> best;
  std::optional<i64> best_objective;

  auto finish = [&](Status exhausted_status) -> CheckResult
    {
      result.stats = _stats;
      if (exhausted_status == Status::Timeout)
      {
        result.status = Status::Timeout;
        result.solution = std::move(best);
        result.objective = best_objective;
        return result;
      }
      if (best)
      {
        result.status = Status::Sat;
        result.solution = std::move(best);
        result.objective = best_objective;
      }
      else
      {
        result.status = Status::Unsat;
      }
      return result;
    };

  for (std::size_t i = 0; i < _props.size(); ++i)
    _enqueue(static_cast<int>(i));

  bool ok = _propagate();
  while (true)
  {
    if (ok)
    {
      if (_out_of_budget())
        return finish(Status::Timeout);

      Decision d{-1, false, 0};
      const int b = _select_bool();
      if (b >= 0)
      {
        d = {b, false, _first_value(b)};
      }
      else
      {
        const int split = _check_lower_bounds();
        if (split >= 0)
        {
          d = {split, true, _lb[split] + (_ub[split] - _lb[split]) / 2};
        }
        else
        {
          ++_stats.solutions;
          best = Solution(_lb);
          if (!_model.objective())
          {
            best_objective.reset();
            return finish(Status::Sat);
          }

          best_objective = best->evaluate(*_model.objective());
          auto& obj = _props[_objective_prop];
          obj.active = true;
          // -(terms) >= constant - (best - 1)
          obj.rhs = _objective_constant - (*best_objective - 1);
          // The lower-bound point is one member of this node's subtree; keep
          // searching here under the tightened cut.
          _enqueue(_objective_prop);
          ok = _propagate();
          continue;
        }
      }

      if (ok)
      {
        ++_stats.nodes;
        _levels.push_back(_trail.size());
        _decisions.push_back(d);
        ok = _apply(d) && _propagate();
        if (!ok)
          ++_stats.failures;
        continue;
      }
    }

    // Backtrack to the most recent decision that still has an untried branch.
    while (!ok)
    {
      if (_decisions.empty())
        return finish(Status::Unsat);

      const auto d = _decisions.back();
      _decisions.pop_back();
      _undo_level();
      for (int q : _queue)
        _in_queue[q] = 0;
      _queue.clear();
      if (_objective_prop >= 0)
        _enqueue(_objective_prop);
      ok = _apply_refutation(d) && _propagate();
    }
  }
}

} // anonymous namespace

//==============================================================================
CheckResult check_minimize(const Model& model, const Limits& limits)
{
  Engine engine(model, limits);
  return engine.run();
}

} // namespace backend
} // namespace comsat

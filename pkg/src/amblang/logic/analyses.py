"""Syntactic analyses on formulas and predicates.

``is_harrop`` detects trivial computational content: no disjunction, free
predicate variable, restriction, or concurrency operator at a strictly
positive position.  When judging a fixed point, its own bound variable acts
as a predicate constant; in every other judgment a predicate variable
occurrence is content-bearing.

``tau`` computes the realizer type, ``is_strict`` the class of formulas
whose realizers are never bottom or choice-headed, ``is_admissible`` the
class for which the computed data parts realize the erased formula, and
``erase_minus`` that erasure: concurrency dropped, restriction turned into
(double-negated, when the premise has content) implication.
"""

from __future__ import annotations

from .. import types as Y
from . import syntax as L


def _is_pred_side(a):
    return isinstance(a, L.Predicate)


def is_harrop(a, _consts=frozenset()):
    if _is_pred_side(a):
        return _pred_harrop(a, _consts)
    if isinstance(a, L.Atom):
        return True
    if isinstance(a, L.And):
        return is_harrop(a.l, _consts) and is_harrop(a.r, _consts)
    if isinstance(a, L.Or):
        return False
    if isinstance(a, L.Implies):
        return is_harrop(a.r, _consts)
    if isinstance(a, (L.Forall, L.Exists)):
        return is_harrop(a.body, _consts)
    if isinstance(a, (L.Restriction, L.Conc)):
        return False
    if isinstance(a, L.PredApp):
        return _pred_harrop(a.pred, _consts)
    raise TypeError(a)


def _pred_harrop(p, consts):
    if isinstance(p, L.PredVar):
        return p.name in consts
    if isinstance(p, L.PredConst):
        return True
    if isinstance(p, L.Compr):
        return is_harrop(p.body, consts)
    if isinstance(p, (L.Mu, L.Nu)):
        return _pred_harrop(p.op.body, consts | {p.op.var})
    raise TypeError(p)


def is_strict(a):
    """Realizers of a strict formula are never bottom or choice-headed."""
    if _is_pred_side(a):
        return _pred_strict(a)
    if is_harrop(a):
        return True
    if isinstance(a, L.Or):
        return True
    if isinstance(a, L.And):
        hl, hr = is_harrop(a.l), is_harrop(a.r)
        if not hl and not hr:
            return True
        if hl:
            return is_strict(a.r)
        return is_strict(a.l)
    if isinstance(a, L.Implies):
        return not is_harrop(a.l)
    if isinstance(a, (L.Forall, L.Exists)):
        return is_strict(a.body)
    if isinstance(a, (L.Restriction, L.Conc)):
        return False
    if isinstance(a, L.PredApp):
        return _pred_strict(a.pred)
    raise TypeError(a)


def _pred_strict(p):
    if isinstance(p, L.PredVar):
        return False
    if isinstance(p, L.PredConst):
        return True
    if isinstance(p, L.Compr):
        return is_strict(p.body)
    if isinstance(p, (L.Mu, L.Nu)):
        return _pred_strict(p.op.body)
    raise TypeError(p)


# Strict positivity, shared between fixed point well-formedness and the
# admissibility traversal.  A position is strictly positive unless it sits
# inside an implication premise or a restriction premise.

def operator_strictly_positive(op):
    return _sp_pred(op.body, op.var, True)


def _sp_formula(a, var, sp):
    if isinstance(a, L.Atom):
        return True
    if isinstance(a, (L.And, L.Or)):
        return _sp_formula(a.l, var, sp) and _sp_formula(a.r, var, sp)
    if isinstance(a, L.Implies):
        return _sp_formula(a.l, var, False) and _sp_formula(a.r, var, sp)
    if isinstance(a, (L.Forall, L.Exists)):
        return _sp_formula(a.body, var, sp)
    if isinstance(a, L.Restriction):
        return (_sp_formula(a.premise, var, False)
                and _sp_formula(a.body, var, sp))
    if isinstance(a, L.Conc):
        return _sp_formula(a.body, var, sp)
    if isinstance(a, L.PredApp):
        return _sp_pred(a.pred, var, sp)
    raise TypeError(a)


def _sp_pred(p, var, sp):
    if isinstance(p, L.PredVar):
        return sp or p.name != var
    if isinstance(p, L.PredConst):
        return True
    if isinstance(p, L.Compr):
        return _sp_formula(p.body, var, sp)
    if isinstance(p, (L.Mu, L.Nu)):
        if p.op.var == var:
            return True  # shadowed
        return _sp_pred(p.op.body, var, sp)
    raise TypeError(p)


# Realizer types.

def tau(a, tyvars=None):
    """The type of potential realizers.

    ``tyvars`` maps predicate variable names to type variable names; by
    default each predicate variable X uses a type variable named after it.
    """
    tyvars = dict(tyvars or {})
    return _tau(a, tyvars)


def _tau(a, tyvars):
    if _is_pred_side(a):
        return _tau_pred(a, tyvars)
    if is_harrop(a):
        return Y.UNIT
    if isinstance(a, L.Or):
        return Y.Sum(_tau(a.l, tyvars), _tau(a.r, tyvars))
    if isinstance(a, L.And):
        hl, hr = is_harrop(a.l), is_harrop(a.r)
        if hl:
            return _tau(a.r, tyvars)
        if hr:
            return _tau(a.l, tyvars)
        return Y.Prod(_tau(a.l, tyvars), _tau(a.r, tyvars))
    if isinstance(a, L.Implies):
        if is_harrop(a.l):
            return _tau(a.r, tyvars)
        return Y.Arrow(_tau(a.l, tyvars), _tau(a.r, tyvars))
    if isinstance(a, (L.Forall, L.Exists)):
        return _tau(a.body, tyvars)
    if isinstance(a, L.Restriction):
        return _tau(a.body, tyvars)
    if isinstance(a, L.Conc):
        return Y.AmbT(_tau(a.body, tyvars))
    if isinstance(a, L.PredApp):
        return _tau_pred(a.pred, tyvars)
    raise TypeError(a)


def _tau_pred(p, tyvars):
    if isinstance(p, L.PredVar):
        return Y.TVar(tyvars.get(p.name, p.name))
    if isinstance(p, L.PredConst):
        return Y.UNIT
    if isinstance(p, L.Compr):
        return _tau(p.body, tyvars)
    if isinstance(p, (L.Mu, L.Nu)):
        if _pred_harrop(p, frozenset()):
            return Y.UNIT
        name = tyvars.get(p.op.var, p.op.var)
        inner = dict(tyvars)
        inner[p.op.var] = name
        return Y.fix(name, _tau_pred(p.op.body, inner))
    raise TypeError(p)


# Erasure to the concurrency-free fragment.

def erase_minus(a):
    """Delete concurrency and turn restriction into implication.

    A restriction with a content-bearing premise erases to a double-negated
    implication so that realizers are preserved.
    """
    if _is_pred_side(a):
        return _erase_pred(a)
    if isinstance(a, L.Atom):
        return a
    if isinstance(a, L.And):
        return L.And(erase_minus(a.l), erase_minus(a.r))
    if isinstance(a, L.Or):
        return L.Or(erase_minus(a.l), erase_minus(a.r))
    if isinstance(a, L.Implies):
        return L.Implies(erase_minus(a.l), erase_minus(a.r))
    if isinstance(a, (L.Forall, L.Exists)):
        return type(a)(a.var, erase_minus(a.body))
    if isinstance(a, L.Restriction):
        prem = erase_minus(a.premise)
        if not is_harrop(prem):
            prem = L.neg(L.neg(prem))
        return L.Implies(prem, erase_minus(a.body))
    if isinstance(a, L.Conc):
        return erase_minus(a.body)
    if isinstance(a, L.PredApp):
        return L.PredApp(_erase_pred(a.pred), a.args)
    raise TypeError(a)


def _erase_pred(p):
    if isinstance(p, (L.PredVar, L.PredConst)):
        return p
    if isinstance(p, L.Compr):
        return L.Compr(p.vars, erase_minus(p.body))
    if isinstance(p, L.Mu):
        return L.Mu(L.Op(p.op.var, _erase_pred(p.op.body)), check_sp=False)
    if isinstance(p, L.Nu):
        return L.Nu(L.Op(p.op.var, _erase_pred(p.op.body)), check_sp=False)
    raise TypeError(p)


# Admissibility.

def is_admissible(a):
    """No free predicate variables; concurrency and restriction only at
    strictly positive positions; restriction premises without content; and
    every functional implication inside some subexpression that is free of
    predicate variables, concurrency, and restriction."""
    if _free_predvars(a):
        return False
    if not _conc_rest_sp(a, True):
        return False
    return _functional_implications_contained(a, barrier=False)


def _free_predvars(a, bound=frozenset()):
    if _is_pred_side(a):
        return _free_predvars_pred(a, bound)
    if isinstance(a, L.Atom):
        return set()
    if isinstance(a, (L.And, L.Or, L.Implies)):
        return _free_predvars(a.l, bound) | _free_predvars(a.r, bound)
    if isinstance(a, (L.Forall, L.Exists)):
        return _free_predvars(a.body, bound)
    if isinstance(a, L.Restriction):
        return _free_predvars(a.premise, bound) | _free_predvars(a.body, bound)
    if isinstance(a, L.Conc):
        return _free_predvars(a.body, bound)
    if isinstance(a, L.PredApp):
        return _free_predvars_pred(a.pred, bound)
    raise TypeError(a)


def _free_predvars_pred(p, bound):
    if isinstance(p, L.PredVar):
        return set() if p.name in bound else {p.name}
    if isinstance(p, L.PredConst):
        return set()
    if isinstance(p, L.Compr):
        return _free_predvars(p.body, bound)
    if isinstance(p, (L.Mu, L.Nu)):
        return _free_predvars_pred(p.op.body, bound | {p.op.var})
    raise TypeError(p)


def _conc_rest_sp(a, sp):
    if _is_pred_side(a):
        return _conc_rest_sp_pred(a, sp)
    if isinstance(a, L.Atom):
        return True
    if isinstance(a, (L.And, L.Or)):
        return _conc_rest_sp(a.l, sp) and _conc_rest_sp(a.r, sp)
    if isinstance(a, L.Implies):
        return _conc_rest_sp(a.l, False) and _conc_rest_sp(a.r, sp)
    if isinstance(a, (L.Forall, L.Exists)):
        return _conc_rest_sp(a.body, sp)
    if isinstance(a, L.Restriction):
        if not sp or not is_harrop(a.premise):
            return False
        return _conc_rest_sp(a.premise, False) and _conc_rest_sp(a.body, sp)
    if isinstance(a, L.Conc):
        return sp and _conc_rest_sp(a.body, sp)
    if isinstance(a, L.PredApp):
        return _conc_rest_sp_pred(a.pred, sp)
    raise TypeError(a)


def _conc_rest_sp_pred(p, sp):
    if isinstance(p, (L.PredVar, L.PredConst)):
        return True
    if isinstance(p, L.Compr):
        return _conc_rest_sp(p.body, sp)
    if isinstance(p, (L.Mu, L.Nu)):
        return _conc_rest_sp_pred(p.op.body, sp)
    raise TypeError(p)


def _is_functional_implication(a):
    return (isinstance(a, L.Implies)
            and not is_harrop(a.l) and not is_harrop(a.r))


def _clean(a):
    """Free of predicate variables, concurrency, and restriction."""
    if _free_predvars(a):
        return False
    return _no_conc_rest(a)


def _no_conc_rest(a):
    if _is_pred_side(a):
        if isinstance(a, (L.PredVar, L.PredConst)):
            return True
        if isinstance(a, L.Compr):
            return _no_conc_rest(a.body)
        return _no_conc_rest(a.op.body)
    if isinstance(a, L.Atom):
        return True
    if isinstance(a, (L.And, L.Or, L.Implies)):
        return _no_conc_rest(a.l) and _no_conc_rest(a.r)
    if isinstance(a, (L.Forall, L.Exists)):
        return _no_conc_rest(a.body)
    if isinstance(a, (L.Restriction, L.Conc)):
        return False
    if isinstance(a, L.PredApp):
        return _no_conc_rest(a.pred)
    raise TypeError(a)


def _functional_implications_contained(a, barrier):
    """Every functional implication must sit under a clean subexpression.

    ``barrier`` is True once an enclosing clean subexpression has been seen,
    which licenses everything below it.
    """
    if not barrier and _clean(a):
        barrier = True
    if not _is_pred_side(a) and _is_functional_implication(a) and not barrier:
        return False
    if _is_pred_side(a):
        if isinstance(a, (L.PredVar, L.PredConst)):
            return True
        if isinstance(a, L.Compr):
            return _functional_implications_contained(a.body, barrier)
        return _functional_implications_contained(a.op.body, barrier)
    if isinstance(a, L.Atom):
        return True
    if isinstance(a, (L.And, L.Or, L.Implies)):
        return (_functional_implications_contained(a.l, barrier)
                and _functional_implications_contained(a.r, barrier))
    if isinstance(a, (L.Forall, L.Exists)):
        return _functional_implications_contained(a.body, barrier)
    if isinstance(a, L.Restriction):
        return (_functional_implications_contained(a.premise, barrier)
                and _functional_implications_contained(a.body, barrier))
    if isinstance(a, L.Conc):
        return _functional_implications_contained(a.body, barrier)
    if isinstance(a, L.PredApp):
        return _functional_implications_contained(a.pred, barrier)
    raise TypeError(a)

"""The named predicates used throughout the case study.

All are over one real variable; ``t`` is the tent map ``t(x) = 1 - 2|x|``.

* ``N``      naturals, inductively.
* ``SD``     the three signed digits.
* ``S``      has a signed-digit representation (coinductive stream).
* ``S2``     the concurrent variant: the step is wrapped in concurrency.
* ``G``      has a binary-digit code: every tent iterate has a sign witness.
* ``D``      sign witness away from zero; ``DPRIME`` its restriction form.
* ``E``      sign witnesses for x and t(x).
* ``CONSD``  concurrent first-digit analysis.
* ``PHI_S2`` the operator whose greatest fixed point is S2.
"""

from __future__ import annotations

from fractions import Fraction

from . import syntax as L


def _x():
    return L.RVar("x")


def _num(v):
    return L.Num(Fraction(v))


def le(a, b):
    return L.Atom("<=", (a, b))


def eq(a, b):
    return L.Atom("=", (a, b))


def neq(a, b):
    return L.neg(eq(a, b))


x = _x()
d = L.RVar("d")

# N(x): x = 0 or N(x - 1), inductively.
N = L.Mu(L.Op("X", L.Compr(("x",), L.Or(
    eq(x, _num(0)),
    L.PredApp(L.PredVar("X"), (L.sub(x, _num(1)),))))))

# SD(d): (d = -1 or d = 1) or d = 0.
SD = L.Compr(("d",), L.Or(
    L.Or(eq(d, _num(-1)), eq(d, _num(1))),
    eq(d, _num(0))))


def _sd_step(predvar):
    # exists d (SD(d) and X(2x - d))
    return L.Exists("d", L.And(
        L.PredApp(SD, (d,)),
        L.PredApp(L.PredVar(predvar), (L.sub(L.mul(_num(2), x), d),))))


_BOUND = le(L.absv(x), _num(1))

# S(x): |x| <= 1 and exists d in SD, S(2x - d), coinductively.
S = L.Nu(L.Op("X", L.Compr(("x",), L.And(_BOUND, _sd_step("X")))))

# S2(x): |x| <= 1 and conc(exists d in SD, S2(2x - d)).
S2 = L.Nu(L.Op("X", L.Compr(("x",), L.And(_BOUND, L.Conc(_sd_step("X"))))))

PHI_S2 = L.Op("X", L.Compr(("x",), L.And(_BOUND, L.Conc(_sd_step("X")))))

# D(x): x /= 0 -> (x <= 0 or x >= 0).
_SIGNS = L.Or(le(x, _num(0)), le(_num(0), x))
D = L.Compr(("x",), L.Implies(neq(x, _num(0)), _SIGNS))

# D'(x): x /= 0 |> (x <= 0 or x >= 0).
DPRIME = L.Compr(("x",), L.Restriction(neq(x, _num(0)), _SIGNS))

# E(x): D(x) and D(t(x)).
E = L.Compr(("x",), L.And(
    L.PredApp(D, (x,)),
    L.PredApp(D, (L.tent_term(x),))))

# G(x): |x| <= 1 and D(x) and G(t(x)), coinductively.
G = L.Nu(L.Op("X", L.Compr(("x",), L.And(
    _BOUND,
    L.And(L.PredApp(D, (x,)),
          L.PredApp(L.PredVar("X"), (L.tent_term(x),)))))))

# ConSD(x): conc((x <= 0 or x >= 0) or |x| <= 1/2).
CONSD = L.Compr(("x",), L.Conc(L.Or(
    _SIGNS,
    le(L.absv(x), _num(Fraction(1, 2))))))

PREDICATES = {
    "N": N,
    "SD": SD,
    "S": S,
    "S2": S2,
    "G": G,
    "D": D,
    "Dprime": DPRIME,
    "E": E,
    "ConSD": CONSD,
}

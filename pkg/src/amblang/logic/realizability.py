"""The realizability translation into the extended first-order language.

``translate(A)`` produces, for a formula over the real signature, the
predicate of potential realizers: a domain-sorted binder together with a
formula over an extended signature with typing atoms ``a : tau``,
definedness atoms ``a down``, and equations between domain terms.  Harrop
formulas translate through ``H`` (realizability without the witness).

The output is a plain syntax tree with a pretty printer; nothing consumes
it mechanically, it exists for inspection and golden tests.
"""

from __future__ import annotations

from .. import types as Y
from . import syntax as L
from .analyses import is_harrop, tau


# Domain terms.

class DTerm:
    __slots__ = ()

    def __repr__(self):
        return dterm_to_source(self)


class DVar(DTerm):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class DCon(DTerm):
    __slots__ = ("tag", "args")

    def __init__(self, tag, args=()):
        self.tag = tag
        self.args = tuple(args)


class DApp(DTerm):
    __slots__ = ("fun", "arg")

    def __init__(self, fun, arg):
        self.fun = fun
        self.arg = arg


def dterm_to_source(t):
    if isinstance(t, DVar):
        return t.name
    if isinstance(t, DCon):
        if not t.args:
            return t.tag
        if (t.tag in ("Left", "Right") and len(t.args) == 1
                and isinstance(t.args[0], DCon) and t.args[0].tag == "Nil"):
            return t.tag
        return "%s(%s)" % (t.tag, ", ".join(dterm_to_source(a) for a in t.args))
    if isinstance(t, DApp):
        return "(%s %s)" % (dterm_to_source(t.fun), dterm_to_source(t.arg))
    raise TypeError(t)


# Realizability formulas.

class RFormula:
    __slots__ = ()

    def __repr__(self):
        return rformula_to_source(self)


class RAtom(RFormula):
    """An embedded object-level formula."""

    __slots__ = ("formula",)

    def __init__(self, formula):
        self.formula = formula


class RAnd(RFormula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class ROr(RFormula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class RImp(RFormula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class RForallObj(RFormula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class RExistsObj(RFormula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class RForallD(RFormula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class RExistsD(RFormula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class REq(RFormula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class RTyped(RFormula):
    __slots__ = ("term", "type")

    def __init__(self, term, type_):
        self.term = term
        self.type = type_


class RDefined(RFormula):
    __slots__ = ("term",)

    def __init__(self, term):
        self.term = term


class RFixApp(RFormula):
    """An applied translated fixed point, displayed with its defining body."""

    __slots__ = ("kind", "name", "obj_params", "dvar", "body", "obj_args", "darg")

    def __init__(self, kind, name, obj_params, dvar, body, obj_args, darg):
        self.kind = kind
        self.name = name
        self.obj_params = tuple(obj_params)
        self.dvar = dvar
        self.body = body
        self.obj_args = tuple(obj_args)
        self.darg = darg


class RPredVarApp(RFormula):
    """Realizer predicate variable application, for bound fixed point vars."""

    __slots__ = ("name", "obj_args", "darg")

    def __init__(self, name, obj_args, darg):
        self.name = name
        self.obj_args = tuple(obj_args)
        self.darg = darg


class Realizer:
    """The translated predicate: a domain binder over a formula."""

    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body

    def __repr__(self):
        return "\\%s. %s" % (self.var, rformula_to_source(self.body))


class _Names:
    def __init__(self):
        self.n = 0

    def fresh(self, base="a"):
        self.n += 1
        if self.n <= 8 and base == "a":
            return "abcdefgh"[self.n - 1]
        return "%s%d" % (base, self.n)


def realizability_translate(f, var="a"):
    """Translate a formula to its realizer predicate."""
    names = _Names()
    body = _R(f, DVar(var), names, {})
    return Realizer(var, body)


def _r_some(f, names, tyenv):
    """Realizability of a formula: H for Harrop, existential otherwise."""
    if is_harrop(f):
        return _H(f, names, tyenv)
    v = names.fresh()
    return RExistsD(v, _R(f, DVar(v), names, tyenv))


def _subst_tau(f, tyenv):
    t = tau(f)
    for name, rep in tyenv.items():
        t = _tvar_subst(t, name, rep)
    return t


def _tvar_subst(t, name, rep):
    if isinstance(t, Y.TVar):
        return rep if t.name == name else t
    if isinstance(t, (Y.TBVar, Y.TFlex, Y._Unit)):
        return t
    if isinstance(t, Y.Sum):
        return Y.Sum(_tvar_subst(t.l, name, rep), _tvar_subst(t.r, name, rep))
    if isinstance(t, Y.Prod):
        return Y.Prod(_tvar_subst(t.l, name, rep), _tvar_subst(t.r, name, rep))
    if isinstance(t, Y.Arrow):
        return Y.Arrow(_tvar_subst(t.dom, name, rep),
                       _tvar_subst(t.cod, name, rep))
    if isinstance(t, Y.AmbT):
        return Y.AmbT(_tvar_subst(t.body, name, rep))
    if isinstance(t, Y.Fix):
        return Y.Fix(t.hint, _tvar_subst(t.body, name, rep))
    raise TypeError(t)


def _R(f, a, names, tyenv):
    if is_harrop(f):
        return RAnd(REq(a, DCon("Nil")), _H(f, names, tyenv))
    if isinstance(f, L.PredApp):
        return _R_pred(f.pred, f.args, a, names, tyenv)
    if isinstance(f, L.Or):
        u = names.fresh()
        v = names.fresh()
        return ROr(
            RExistsD(u, RAnd(REq(a, DCon("Left", (DVar(u),))),
                             _R(f.l, DVar(u), names, tyenv))),
            RExistsD(v, RAnd(REq(a, DCon("Right", (DVar(v),))),
                             _R(f.r, DVar(v), names, tyenv))))
    if isinstance(f, L.And):
        hl, hr = is_harrop(f.l), is_harrop(f.r)
        if not hl and not hr:
            u = names.fresh()
            v = names.fresh()
            return RExistsD(u, RExistsD(v, RAnd(
                REq(a, DCon("Pair", (DVar(u), DVar(v)))),
                RAnd(_R(f.l, DVar(u), names, tyenv),
                     _R(f.r, DVar(v), names, tyenv)))))
        if hr:
            return RAnd(_R(f.l, a, names, tyenv), _H(f.r, names, tyenv))
        return RAnd(_H(f.l, names, tyenv), _R(f.r, a, names, tyenv))
    if isinstance(f, L.Implies):
        if is_harrop(f.l):
            return RAnd(RTyped(a, _subst_tau(f.r, tyenv)),
                        RImp(_H(f.l, names, tyenv), _R(f.r, a, names, tyenv)))
        u = names.fresh()
        return RAnd(
            RTyped(a, Y.Arrow(_subst_tau(f.l, tyenv), _subst_tau(f.r, tyenv))),
            RForallD(u, RImp(_R(f.l, DVar(u), names, tyenv),
                             _R(f.r, DApp(a, DVar(u)), names, tyenv))))
    if isinstance(f, L.Forall):
        return RForallObj(f.var, _R(f.body, a, names, tyenv))
    if isinstance(f, L.Exists):
        return RExistsObj(f.var, _R(f.body, a, names, tyenv))
    if isinstance(f, L.Restriction):
        return RAnd(
            RTyped(a, _subst_tau(f.body, tyenv)),
            RAnd(RImp(_r_some(f.premise, names, tyenv), RDefined(a)),
                 RImp(RDefined(a), _R(f.body, a, names, tyenv))))
    if isinstance(f, L.Conc):
        u = names.fresh()
        v = names.fresh()
        ty = _subst_tau(f.body, tyenv)
        return RExistsD(u, RExistsD(v, RAnd(
            REq(a, DCon("Amb", (DVar(u), DVar(v)))),
            RAnd(RAnd(RTyped(DVar(u), ty), RTyped(DVar(v), ty)),
                 RAnd(ROr(RDefined(DVar(u)), RDefined(DVar(v))),
                      RAnd(RImp(RDefined(DVar(u)),
                                _R(f.body, DVar(u), names, tyenv)),
                           RImp(RDefined(DVar(v)),
                                _R(f.body, DVar(v), names, tyenv))))))))
    raise TypeError(f)


def _R_pred(p, args, a, names, tyenv):
    if isinstance(p, L.PredVar):
        return RPredVarApp("~" + p.name, args, a)
    if isinstance(p, L.Compr):
        return _R(L.apply_pred(p, args), a, names, tyenv)
    if isinstance(p, (L.Mu, L.Nu)):
        kind = "mu" if isinstance(p, L.Mu) else "nu"
        var = p.op.var
        inner = p.op.body
        if isinstance(inner, L.Compr):
            params = inner.vars
            body_formula = inner.body
        else:
            params = ()
            body_formula = L.PredApp(inner, ())
        fixtype = _tau_of_fix(p)
        inner_env = dict(tyenv)
        inner_env[var] = fixtype
        rv = names.fresh()
        body = _R(body_formula, DVar(rv), names, inner_env)
        return RFixApp(kind, "~" + var, params, rv, body, args, a)
    raise TypeError(p)


def _tau_of_fix(p):
    from .analyses import tau as tau_fn
    return tau_fn(p)


def _H(f, names, tyenv):
    if isinstance(f, L.Atom):
        return RAtom(f)
    if L.is_falsum(f):
        return RAtom(f)
    if isinstance(f, L.And):
        return RAnd(_H(f.l, names, tyenv), _H(f.r, names, tyenv))
    if isinstance(f, L.Implies):
        return RImp(_r_some(f.l, names, tyenv), _H(f.r, names, tyenv))
    if isinstance(f, L.Forall):
        return RForallObj(f.var, _H(f.body, names, tyenv))
    if isinstance(f, L.Exists):
        return RExistsObj(f.var, _H(f.body, names, tyenv))
    if isinstance(f, L.PredApp):
        if isinstance(f.pred, L.PredConst):
            return RAtom(f)
        if isinstance(f.pred, L.Compr):
            return _H(L.apply_pred(f.pred, f.args), names, tyenv)
        if isinstance(f.pred, L.PredVar):
            return RAtom(f)
        # A Harrop fixed point: translate its body with the variable read as
        # a predicate constant.
        return RAtom(f)
    raise TypeError(f)


def rformula_to_source(r, prec=0):
    if isinstance(r, RAtom):
        return L.formula_to_source(r.formula)
    if isinstance(r, RAnd):
        s = "%s /\\ %s" % (rformula_to_source(r.l, 2), rformula_to_source(r.r, 1))
        return _wrap(s, prec, 1)
    if isinstance(r, ROr):
        s = "%s \\/ %s" % (rformula_to_source(r.l, 3), rformula_to_source(r.r, 2))
        return _wrap(s, prec, 2)
    if isinstance(r, RImp):
        s = "%s -> %s" % (rformula_to_source(r.l, 1), rformula_to_source(r.r, 0))
        return _wrap(s, prec, 0)
    if isinstance(r, RForallObj):
        return _wrap("forall %s. %s" % (r.var, rformula_to_source(r.body)), prec, 0)
    if isinstance(r, RExistsObj):
        return _wrap("exists %s. %s" % (r.var, rformula_to_source(r.body)), prec, 0)
    if isinstance(r, RForallD):
        return _wrap("forall %s:D. %s" % (r.var, rformula_to_source(r.body)), prec, 0)
    if isinstance(r, RExistsD):
        return _wrap("exists %s:D. %s" % (r.var, rformula_to_source(r.body)), prec, 0)
    if isinstance(r, REq):
        return "%s = %s" % (dterm_to_source(r.l), dterm_to_source(r.r))
    if isinstance(r, RTyped):
        return "%s : %s" % (dterm_to_source(r.term), Y.type_to_source(r.type))
    if isinstance(r, RDefined):
        return "%s down" % dterm_to_source(r.term)
    if isinstance(r, RPredVarApp):
        args = [L.term_to_source(t) for t in r.obj_args]
        args.append(dterm_to_source(r.darg))
        return "%s(%s)" % (r.name, ", ".join(args))
    if isinstance(r, RFixApp):
        args = [L.term_to_source(t) for t in r.obj_args]
        args.append(dterm_to_source(r.darg))
        head = "(%s %s(%s). %s)" % (
            r.kind, r.name,
            ", ".join(list(r.obj_params) + [r.dvar]),
            rformula_to_source(r.body))
        return "%s(%s)" % (head, ", ".join(args))
    raise TypeError(r)


def _wrap(s, prec, own):
    return "(%s)" % s if own < prec else s

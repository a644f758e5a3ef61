"""Formulas and predicates of the concurrent fixed point logic.

The object language is first order over one sort of real numbers with exact
rational constants; ``Atom`` covers the base relations.  Predicates are
predicate constants, predicate variables, comprehensions, and least/greatest
fixed points of strictly positive operators.  On top of plain intuitionistic
connectives there are two propositional operators: ``Restriction(A, B)``
("B restricted to A", a strengthened implication) and ``Conc(B)`` (total
concurrency, realized by a binary choice whose defined sides all realize B).

Both operators require a strict body; constructors enforce that, so the
negative examples of the analyses live at positions where strictness is not
required.
"""

from __future__ import annotations

from fractions import Fraction


# First-order terms over the real signature.

class FOTerm:
    __slots__ = ()

    def __repr__(self):
        return term_to_source(self)


class RVar(FOTerm):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class Num(FOTerm):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = Fraction(value)


class FOOp(FOTerm):
    """Function application; ``op`` is one of + - * / neg abs t, or a free
    function symbol."""

    __slots__ = ("op", "args")

    def __init__(self, op, args):
        self.op = op
        self.args = tuple(args)


def add(a, b):
    return FOOp("+", (a, b))


def sub(a, b):
    return FOOp("-", (a, b))


def mul(a, b):
    return FOOp("*", (a, b))


def div(a, b):
    return FOOp("/", (a, b))


def absv(a):
    return FOOp("abs", (a,))


def tent_term(a):
    return FOOp("t", (a,))


def term_to_source(t):
    if isinstance(t, RVar):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, FOOp):
        if t.op in ("+", "-", "*", "/") and len(t.args) == 2:
            return "(%s %s %s)" % (term_to_source(t.args[0]), t.op,
                                   term_to_source(t.args[1]))
        if t.op == "neg":
            return "(-%s)" % term_to_source(t.args[0])
        if t.op == "abs":
            return "abs(%s)" % term_to_source(t.args[0])
        return "%s(%s)" % (t.op, ", ".join(term_to_source(a) for a in t.args))
    raise TypeError(t)


def term_subst(t, env):
    if isinstance(t, RVar):
        return env.get(t.name, t)
    if isinstance(t, Num):
        return t
    if isinstance(t, FOOp):
        return FOOp(t.op, tuple(term_subst(a, env) for a in t.args))
    raise TypeError(t)


def term_eq(s, t, env=None):
    env = env or {}
    if isinstance(s, RVar) and isinstance(t, RVar):
        return env.get(s.name, s.name) == t.name
    if isinstance(s, Num) and isinstance(t, Num):
        return s.value == t.value
    if isinstance(s, FOOp) and isinstance(t, FOOp):
        return (s.op == t.op and len(s.args) == len(t.args)
                and all(term_eq(a, b, env) for a, b in zip(s.args, t.args)))
    return False


# Formulas.

class Formula:
    __slots__ = ()

    def __repr__(self):
        return formula_to_source(self)


class Atom(Formula):
    """Base relation over real terms; always without computational content."""

    __slots__ = ("rel", "args")

    def __init__(self, rel, args):
        if rel not in ("=", "<=", "<"):
            raise ValueError("unknown relation %r" % rel)
        self.rel = rel
        self.args = tuple(args)


class And(Formula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class Or(Formula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class Implies(Formula):
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r


class Forall(Formula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class Exists(Formula):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body


class PredApp(Formula):
    __slots__ = ("pred", "args")

    def __init__(self, pred, args=()):
        self.pred = pred
        self.args = tuple(args)


class Restriction(Formula):
    """Strengthened implication: terminates when the premise is realizable,
    and is correct whenever it terminates.  The body must be strict."""

    __slots__ = ("premise", "body")

    def __init__(self, premise, body):
        from .analyses import is_strict
        if not is_strict(body):
            raise ValueError("restriction body must be strict")
        self.premise = premise
        self.body = body


class Conc(Formula):
    """Total concurrency: realized by a choice with a defined, correct side.
    The body must be strict."""

    __slots__ = ("body",)

    def __init__(self, body):
        from .analyses import is_strict
        if not is_strict(body):
            raise ValueError("concurrency body must be strict")
        self.body = body


# Predicates.

class Predicate:
    __slots__ = ()

    def __repr__(self):
        return pred_to_source(self)


class PredVar(Predicate):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class PredConst(Predicate):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class Compr(Predicate):
    __slots__ = ("vars", "body")

    def __init__(self, vars_, body):
        self.vars = tuple(vars_)
        self.body = body


class Op:
    """An operator binding one predicate variable in a predicate body."""

    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body

    def __repr__(self):
        return "\\%s. %s" % (self.var, pred_to_source(self.body))


class Mu(Predicate):
    __slots__ = ("op",)

    def __init__(self, op, check_sp=True):
        if check_sp:
            from .analyses import operator_strictly_positive
            if not operator_strictly_positive(op):
                raise ValueError("fixed point body is not strictly positive in %s"
                                 % op.var)
        self.op = op


class Nu(Predicate):
    __slots__ = ("op",)

    def __init__(self, op, check_sp=True):
        if check_sp:
            from .analyses import operator_strictly_positive
            if not operator_strictly_positive(op):
                raise ValueError("fixed point body is not strictly positive in %s"
                                 % op.var)
        self.op = op


def falsum():
    """The empty inductive proposition."""
    return PredApp(Mu(Op("X", PredVar("X"))), ())


def neg(f):
    return Implies(f, falsum())


def is_falsum(f):
    return (isinstance(f, PredApp) and isinstance(f.pred, Mu)
            and isinstance(f.pred.op.body, PredVar)
            and f.pred.op.body.name == f.pred.op.var)


# Substitution of object terms in formulas (capture avoided by freshening).

def formula_subst(f, env):
    if not env:
        return f
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(term_subst(a, env) for a in f.args))
    if isinstance(f, And):
        return And(formula_subst(f.l, env), formula_subst(f.r, env))
    if isinstance(f, Or):
        return Or(formula_subst(f.l, env), formula_subst(f.r, env))
    if isinstance(f, Implies):
        return Implies(formula_subst(f.l, env), formula_subst(f.r, env))
    if isinstance(f, (Forall, Exists)):
        inner = {k: v for k, v in env.items() if k != f.var}
        cls = type(f)
        return cls(f.var, formula_subst(f.body, inner))
    if isinstance(f, PredApp):
        return PredApp(pred_subst(f.pred, env),
                       tuple(term_subst(a, env) for a in f.args))
    if isinstance(f, Restriction):
        return Restriction(formula_subst(f.premise, env),
                           formula_subst(f.body, env))
    if isinstance(f, Conc):
        return Conc(formula_subst(f.body, env))
    raise TypeError(f)


def pred_subst(p, env):
    if isinstance(p, (PredVar, PredConst)):
        return p
    if isinstance(p, Compr):
        inner = {k: v for k, v in env.items() if k not in p.vars}
        return Compr(p.vars, formula_subst(p.body, inner))
    if isinstance(p, Mu):
        return Mu(Op(p.op.var, pred_subst(p.op.body, env)), check_sp=False)
    if isinstance(p, Nu):
        return Nu(Op(p.op.var, pred_subst(p.op.body, env)), check_sp=False)
    raise TypeError(p)


def apply_pred(p, args):
    """Beta-reduce a comprehension application to a formula."""
    if isinstance(p, Compr):
        if len(args) != len(p.vars):
            raise ValueError("arity mismatch")
        return formula_subst(p.body, dict(zip(p.vars, args)))
    return PredApp(p, args)


# Alpha-equality over both object and predicate binders.

def formula_eq(a, b, oenv=None, penv=None):
    oenv = oenv or {}
    penv = penv or {}
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        return a.rel == b.rel and all(term_eq(s, t, oenv)
                                      for s, t in zip(a.args, b.args))
    if isinstance(a, (And, Or, Implies)):
        return (formula_eq(a.l, b.l, oenv, penv)
                and formula_eq(a.r, b.r, oenv, penv))
    if isinstance(a, (Forall, Exists)):
        inner = dict(oenv)
        inner[a.var] = b.var
        return formula_eq(a.body, b.body, inner, penv)
    if isinstance(a, PredApp):
        return (pred_eq(a.pred, b.pred, oenv, penv)
                and len(a.args) == len(b.args)
                and all(term_eq(s, t, oenv) for s, t in zip(a.args, b.args)))
    if isinstance(a, Restriction):
        return (formula_eq(a.premise, b.premise, oenv, penv)
                and formula_eq(a.body, b.body, oenv, penv))
    if isinstance(a, Conc):
        return formula_eq(a.body, b.body, oenv, penv)
    raise TypeError(a)


def pred_eq(a, b, oenv=None, penv=None):
    oenv = oenv or {}
    penv = penv or {}
    if type(a) is not type(b):
        return False
    if isinstance(a, PredVar):
        return penv.get(a.name, a.name) == b.name
    if isinstance(a, PredConst):
        return a.name == b.name
    if isinstance(a, Compr):
        if len(a.vars) != len(b.vars):
            return False
        inner = dict(oenv)
        inner.update(dict(zip(a.vars, b.vars)))
        return formula_eq(a.body, b.body, inner, penv)
    if isinstance(a, (Mu, Nu)):
        inner = dict(penv)
        inner[a.op.var] = b.op.var
        return pred_eq(a.op.body, b.op.body, oenv, inner)
    raise TypeError(a)


# Printing.

def formula_to_source(f, prec=0):
    if isinstance(f, Atom):
        return "%s %s %s" % (term_to_source(f.args[0]), f.rel,
                             term_to_source(f.args[1]))
    if is_falsum(f):
        return "False"
    if isinstance(f, And):
        s = "%s /\\ %s" % (formula_to_source(f.l, 2), formula_to_source(f.r, 1))
        return _wrap(s, prec, 1)
    if isinstance(f, Or):
        s = "%s \\/ %s" % (formula_to_source(f.l, 3), formula_to_source(f.r, 2))
        return _wrap(s, prec, 2)
    if isinstance(f, Implies):
        if is_falsum(f.r):
            return _wrap("~%s" % formula_to_source(f.l, 4), prec, 3)
        s = "%s -> %s" % (formula_to_source(f.l, 1), formula_to_source(f.r, 0))
        return _wrap(s, prec, 0)
    if isinstance(f, Restriction):
        s = "%s |> %s" % (formula_to_source(f.premise, 1),
                          formula_to_source(f.body, 0))
        return _wrap(s, prec, 0)
    if isinstance(f, Conc):
        return "conc(%s)" % formula_to_source(f.body, 0)
    if isinstance(f, Forall):
        return _wrap("forall %s. %s" % (f.var, formula_to_source(f.body, 0)),
                     prec, 0)
    if isinstance(f, Exists):
        return _wrap("exists %s. %s" % (f.var, formula_to_source(f.body, 0)),
                     prec, 0)
    if isinstance(f, PredApp):
        head = pred_to_source(f.pred, atom=True)
        if not f.args:
            return head
        return "%s(%s)" % (head, ", ".join(term_to_source(a) for a in f.args))
    raise TypeError(f)


def pred_to_source(p, atom=False):
    if isinstance(p, (PredVar, PredConst)):
        return p.name
    if isinstance(p, Compr):
        return "{ %s | %s }" % (", ".join(p.vars), formula_to_source(p.body, 0))
    if isinstance(p, (Mu, Nu)):
        kind = "mu" if isinstance(p, Mu) else "nu"
        inner = p.op.body
        if isinstance(inner, Compr):
            s = "%s %s(%s). %s" % (kind, p.op.var, ", ".join(inner.vars),
                                   formula_to_source(inner.body, 0))
        else:
            s = "%s %s. %s" % (kind, p.op.var, pred_to_source(inner))
        return "(%s)" % s if atom else s
    raise TypeError(p)


def _wrap(s, prec, own):
    return "(%s)" % s if own < prec else s

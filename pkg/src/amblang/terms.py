"""Term syntax for the target language.

Terms are stored locally nameless: bound variables are de Bruijn indices
(``BVar``), free variables carry names (``Var``).  Binders keep the surface
name as a printing hint only; hints never influence equality, so structural
equality of two locally closed terms is alpha-equivalence.

A ``case`` clause binds exactly the arity of its constructor.  Binders listed
left to right receive decreasing indices, i.e. in ``Pair(a, b) -> N`` the
variable ``a`` is index 1 and ``b`` is index 0 inside ``N``.

Every node carries two precomputed integers used by the reduction engine:

``max_bvar``
    One plus the largest dangling de Bruijn index (0 for locally closed
    subterms).  Substitution skips subtrees whose indices cannot reach the
    binder being instantiated, which preserves sharing.

``stable``
    True when every parallel reduction step maps the term to itself: lambdas,
    ``bot``, fully evaluated data, and ``Amb(bot, bot)``.  The engine skips
    stable subtrees.
"""

from __future__ import annotations

from .errors import OpenTermError

CONSTRUCTORS = {"Nil": 0, "Left": 1, "Right": 1, "Pair": 2, "Amb": 2}
DATA_CONSTRUCTORS = ("Nil", "Left", "Right", "Pair")


class Program:
    __slots__ = ()
    max_bvar = 0
    stable = False

    def __repr__(self):
        return to_source(self)


class Var(Program):
    """Free variable."""

    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name):
        self.name = name


class BVar(Program):
    """Bound variable as a de Bruijn index."""

    __slots__ = ("k", "max_bvar")
    __match_args__ = ("k",)

    def __init__(self, k):
        self.k = k
        self.max_bvar = k + 1


class Lam(Program):
    __slots__ = ("hint", "body", "max_bvar")
    __match_args__ = ("hint", "body")
    stable = True

    def __init__(self, hint, body):
        self.hint = hint
        self.body = body
        self.max_bvar = max(0, body.max_bvar - 1)


class App(Program):
    __slots__ = ("fun", "arg", "max_bvar")
    __match_args__ = ("fun", "arg")

    def __init__(self, fun, arg):
        self.fun = fun
        self.arg = arg
        self.max_bvar = max(fun.max_bvar, arg.max_bvar)


class SApp(Program):
    """Strict application: the argument is forced to w.h.n.f. first."""

    __slots__ = ("fun", "arg", "max_bvar")
    __match_args__ = ("fun", "arg")

    def __init__(self, fun, arg):
        self.fun = fun
        self.arg = arg
        self.max_bvar = max(fun.max_bvar, arg.max_bvar)


class Rec(Program):
    __slots__ = ("body", "max_bvar")
    __match_args__ = ("body",)

    def __init__(self, body):
        self.body = body
        self.max_bvar = body.max_bvar


class _Bottom(Program):
    __slots__ = ()
    stable = True

    def __repr__(self):
        return "bot"


BOTTOM = _Bottom()


class Con(Program):
    """Constructor application; ``tag`` is one of the five constructor names."""

    __slots__ = ("tag", "args", "max_bvar", "stable")
    __match_args__ = ("tag", "args")

    def __init__(self, tag, args=()):
        args = tuple(args)
        if CONSTRUCTORS[tag] != len(args):
            raise ValueError("constructor %s expects %d arguments, got %d"
                             % (tag, CONSTRUCTORS[tag], len(args)))
        self.tag = tag
        self.args = args
        if len(args) == 2:
            a, b = args
            self.max_bvar = a.max_bvar if a.max_bvar > b.max_bvar else b.max_bvar
            if tag == "Amb":
                self.stable = a is BOTTOM and b is BOTTOM
            else:
                self.stable = a.stable and b.stable
        elif len(args) == 1:
            self.max_bvar = args[0].max_bvar
            self.stable = args[0].stable
        else:
            self.max_bvar = 0
            self.stable = True


class Clause:
    __slots__ = ("tag", "hints", "body", "max_bvar")

    def __init__(self, tag, hints, body):
        hints = tuple(hints)
        if CONSTRUCTORS[tag] != len(hints):
            raise ValueError("clause for %s must bind %d variables"
                             % (tag, CONSTRUCTORS[tag]))
        self.tag = tag
        self.hints = hints
        self.body = body
        self.max_bvar = max(0, body.max_bvar - len(hints))

    def __repr__(self):
        return "<clause %s>" % self.tag


class Case(Program):
    __slots__ = ("scrut", "clauses", "max_bvar")
    __match_args__ = ("scrut", "clauses")

    def __init__(self, scrut, clauses):
        clauses = tuple(clauses)
        seen = set()
        for cl in clauses:
            if cl.tag in seen:
                raise ValueError("duplicate case clause for %s" % cl.tag)
            seen.add(cl.tag)
        self.scrut = scrut
        self.clauses = clauses
        self.max_bvar = max(scrut.max_bvar,
                            max((c.max_bvar for c in clauses), default=0))

    def clause_for(self, tag):
        for cl in self.clauses:
            if cl.tag == tag:
                return cl
        return None


# Construction helpers.

def nil():
    return Con("Nil")


def left(m=None):
    return Con("Left", (m if m is not None else nil(),))


def right(m=None):
    return Con("Right", (m if m is not None else nil(),))


def pair(a, b):
    return Con("Pair", (a, b))


def amb(a, b):
    return Con("Amb", (a, b))


def numeral(n):
    m = left()
    for _ in range(n):
        m = right(m)
    return m


def numeral_value(m):
    """Return n when the term is the literal numeral n, else None."""
    k = 0
    while isinstance(m, Con) and m.tag == "Right":
        m = m.args[0]
        k += 1
    if isinstance(m, Con) and m.tag == "Left":
        inner = m.args[0]
        if isinstance(inner, Con) and inner.tag == "Nil":
            return k
    return None


def bind(m, names, depth=0):
    """Abstract the free variables ``names`` into indices at ``depth``.

    The leftmost name receives the highest index, matching the clause binder
    convention.
    """
    n = len(names)
    if isinstance(m, Var):
        if m.name in names:
            return BVar(depth + (n - 1 - names.index(m.name)))
        return m
    if isinstance(m, BVar) or m is BOTTOM:
        return m
    if isinstance(m, Lam):
        return Lam(m.hint, bind(m.body, names, depth + 1))
    if isinstance(m, App):
        return App(bind(m.fun, names, depth), bind(m.arg, names, depth))
    if isinstance(m, SApp):
        return SApp(bind(m.fun, names, depth), bind(m.arg, names, depth))
    if isinstance(m, Rec):
        return Rec(bind(m.body, names, depth))
    if isinstance(m, Con):
        return Con(m.tag, tuple(bind(a, names, depth) for a in m.args))
    if isinstance(m, Case):
        return Case(bind(m.scrut, names, depth),
                    tuple(Clause(c.tag, c.hints,
                                 bind(c.body, names, depth + len(c.hints)))
                          for c in m.clauses))
    raise TypeError(m)


def lam(name, body):
    """Lambda over a named body: ``lam("a", Var("a"))`` is the identity."""
    return Lam(name, bind(body, (name,)))


def clause(tag, names, body):
    return Clause(tag, names, bind(body, tuple(names)))


def case(scrut, *clauses):
    return Case(scrut, clauses)


def instantiate(m, args, depth=0):
    """Replace indices ``depth .. depth+len(args)-1`` by ``args``.

    ``args[i]`` replaces index ``depth + i``; the arguments must be locally
    closed, so no shifting of the substituted terms is needed.  Subtrees
    without reachable indices are returned unchanged, preserving sharing.
    """
    if m.max_bvar <= depth:
        return m
    n = len(args)
    if isinstance(m, BVar):
        if m.k < depth:
            return m
        if m.k < depth + n:
            return args[m.k - depth]
        return BVar(m.k - n)
    if isinstance(m, Lam):
        return Lam(m.hint, instantiate(m.body, args, depth + 1))
    if isinstance(m, App):
        return App(instantiate(m.fun, args, depth),
                   instantiate(m.arg, args, depth))
    if isinstance(m, SApp):
        return SApp(instantiate(m.fun, args, depth),
                    instantiate(m.arg, args, depth))
    if isinstance(m, Rec):
        return Rec(instantiate(m.body, args, depth))
    if isinstance(m, Con):
        return Con(m.tag, tuple(instantiate(a, args, depth) for a in m.args))
    if isinstance(m, Case):
        return Case(instantiate(m.scrut, args, depth),
                    tuple(Clause(c.tag, c.hints,
                                 instantiate(c.body, args,
                                             depth + len(c.hints)))
                          for c in m.clauses))
    raise TypeError(m)


def open_clause(cl, children):
    """Instantiate a clause body with the constructor children in order."""
    return instantiate(cl.body, tuple(reversed(children)))


def subst(m, name, value):
    """Capture-avoiding substitution of ``value`` for the free ``name``.

    Capture cannot occur because binders are indices; the result simply has
    ``value`` grafted at every occurrence of the variable.
    """
    if isinstance(m, Var):
        return value if m.name == name else m
    if isinstance(m, BVar) or m is BOTTOM:
        return m
    if isinstance(m, Lam):
        return Lam(m.hint, subst(m.body, name, value))
    if isinstance(m, App):
        return App(subst(m.fun, name, value), subst(m.arg, name, value))
    if isinstance(m, SApp):
        return SApp(subst(m.fun, name, value), subst(m.arg, name, value))
    if isinstance(m, Rec):
        return Rec(subst(m.body, name, value))
    if isinstance(m, Con):
        return Con(m.tag, tuple(subst(a, name, value) for a in m.args))
    if isinstance(m, Case):
        return Case(subst(m.scrut, name, value),
                    tuple(Clause(c.tag, c.hints, subst(c.body, name, value))
                          for c in m.clauses))
    raise TypeError(m)


def free_vars(m):
    out = set()
    stack = [m]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            out.add(t.name)
        elif isinstance(t, Lam):
            stack.append(t.body)
        elif isinstance(t, (App, SApp)):
            stack.append(t.fun)
            stack.append(t.arg)
        elif isinstance(t, Rec):
            stack.append(t.body)
        elif isinstance(t, Con):
            stack.extend(t.args)
        elif isinstance(t, Case):
            stack.append(t.scrut)
            stack.extend(c.body for c in t.clauses)
    return out


def require_closed(m):
    if m.max_bvar:
        raise OpenTermError("term has dangling bound variables")
    fv = free_vars(m)
    if fv:
        raise OpenTermError("term has free variables: %s" % ", ".join(sorted(fv)))


def term_eq(m, n):
    """Alpha-equivalence: structural equality that ignores binder hints."""
    if m is n:
        return True
    if type(m) is not type(n):
        return False
    if isinstance(m, Var):
        return m.name == n.name
    if isinstance(m, BVar):
        return m.k == n.k
    if m is BOTTOM:
        return n is BOTTOM
    if isinstance(m, Lam):
        return term_eq(m.body, n.body)
    if isinstance(m, (App, SApp)):
        return term_eq(m.fun, n.fun) and term_eq(m.arg, n.arg)
    if isinstance(m, Rec):
        return term_eq(m.body, n.body)
    if isinstance(m, Con):
        return m.tag == n.tag and all(term_eq(a, b)
                                      for a, b in zip(m.args, n.args))
    if isinstance(m, Case):
        if not term_eq(m.scrut, n.scrut) or len(m.clauses) != len(n.clauses):
            return False
        return all(a.tag == b.tag and term_eq(a.body, b.body)
                   for a, b in zip(m.clauses, n.clauses))
    raise TypeError(m)


# Printing.  ``parse(to_source(m))`` is alpha-equivalent to ``m``.

_ATOM, _APP, _SAPP, _TOP = range(4)


def _fresh(hint, used):
    name = hint if hint else "x"
    while name in used:
        name += "'"
    return name


def to_source(m, width=None):
    """Render a term in the surface syntax.

    ``width`` optionally caps the output length (an ellipsis marks the cut);
    used by trace printing.
    """
    text = _pp(m, [], free_vars(m), _TOP)
    if width is not None and len(text) > width:
        text = text[: max(0, width - 3)] + "..."
    return text


def _pp(m, env, used, prec):
    if isinstance(m, Var):
        return m.name
    if isinstance(m, BVar):
        if m.k < len(env):
            return env[m.k]
        return "#%d" % m.k
    if m is BOTTOM:
        return "bot"
    if isinstance(m, Lam):
        name = _fresh(m.hint, used)
        body = _pp(m.body, [name] + env, used | {name}, _TOP)
        return _wrap("\\%s. %s" % (name, body), prec, _TOP)
    if isinstance(m, App):
        s = "%s %s" % (_pp(m.fun, env, used, _APP), _pp(m.arg, env, used, _ATOM))
        return _wrap(s, prec, _APP)
    if isinstance(m, SApp):
        # Strict constructor lifts print back in their sugared form.
        f = m.fun
        if (isinstance(f, Lam) and isinstance(f.body, Con)
                and f.body.tag in ("Left", "Right")
                and isinstance(f.body.args[0], BVar) and f.body.args[0].k == 0):
            s = "%s $ %s" % (f.body.tag, _pp(m.arg, env, used, _APP))
        else:
            s = "%s $ %s" % (_pp(m.fun, env, used, _APP),
                             _pp(m.arg, env, used, _SAPP))
        return _wrap(s, prec, _SAPP)
    if isinstance(m, Rec):
        return _wrap("rec %s" % _pp(m.body, env, used, _TOP), prec, _TOP)
    if isinstance(m, Con):
        n = numeral_value(m)
        if n is not None:
            return str(n)
        if m.tag == "Nil":
            return "Nil"
        if m.tag in ("Left", "Right"):
            inner = m.args[0]
            if isinstance(inner, Con) and inner.tag == "Nil":
                return m.tag
            return "%s(%s)" % (m.tag, _pp(inner, env, used, _TOP))
        return "%s(%s, %s)" % (m.tag, _pp(m.args[0], env, used, _TOP),
                               _pp(m.args[1], env, used, _TOP))
    if isinstance(m, Case):
        parts = []
        for cl in m.clauses:
            names = []
            inner_used = set(used)
            for h in cl.hints:
                name = _fresh(h, inner_used)
                inner_used.add(name)
                names.append(name)
            body = _pp(cl.body, list(reversed(names)) + env, inner_used, _TOP)
            if names:
                parts.append("%s(%s) -> %s" % (cl.tag, ", ".join(names), body))
            else:
                parts.append("%s -> %s" % (cl.tag, body))
        s = "case %s { %s }" % (_pp(m.scrut, env, used, _TOP), "; ".join(parts))
        return _wrap(s, prec, _ATOM)
    raise TypeError(m)


def _wrap(s, prec, own):
    return "(%s)" % s if prec < own else s

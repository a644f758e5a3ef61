"""Recursive type expressions and the regularity checks.

Types are locally nameless like terms: ``TVar`` is a named free variable,
``TBVar`` a de Bruijn index bound by the nearest ``Fix``.  Fixpoints unfold
equirecursively; ``unfold`` memoizes per node so that repeated unfolding
reaches a finite set of representatives, which keeps the coinductive
equality check terminating.
"""

from __future__ import annotations

from .errors import NonRegularTypeError


class Type:
    __slots__ = ("_key",)
    max_tbvar = 0

    def __repr__(self):
        return type_to_source(self)


class TVar(Type):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name):
        self.name = name


class TBVar(Type):
    __slots__ = ("k", "max_tbvar")
    __match_args__ = ("k",)

    def __init__(self, k):
        self.k = k
        self.max_tbvar = k + 1


class TFlex(Type):
    """Checker-internal unification variable; never appears in parsed types."""

    __slots__ = ("uid",)
    __match_args__ = ("uid",)

    def __init__(self, uid):
        self.uid = uid


class _Unit(Type):
    __slots__ = ()


UNIT = _Unit()


class Sum(Type):
    __slots__ = ("l", "r", "max_tbvar")
    __match_args__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r
        self.max_tbvar = max(l.max_tbvar, r.max_tbvar)


class Prod(Type):
    __slots__ = ("l", "r", "max_tbvar")
    __match_args__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r
        self.max_tbvar = max(l.max_tbvar, r.max_tbvar)


class Arrow(Type):
    __slots__ = ("dom", "cod", "max_tbvar")
    __match_args__ = ("dom", "cod")

    def __init__(self, dom, cod):
        self.dom = dom
        self.cod = cod
        self.max_tbvar = max(dom.max_tbvar, cod.max_tbvar)


class AmbT(Type):
    __slots__ = ("body", "max_tbvar")
    __match_args__ = ("body",)

    def __init__(self, body):
        self.body = body
        self.max_tbvar = body.max_tbvar


class Fix(Type):
    __slots__ = ("hint", "body", "max_tbvar", "_unfolded")
    __match_args__ = ("hint", "body")

    def __init__(self, hint, body):
        self.hint = hint
        self.body = body
        self.max_tbvar = max(0, body.max_tbvar - 1)
        self._unfolded = None


def tbind(t, name, depth=0):
    """Abstract the free type variable ``name`` into an index at ``depth``."""
    if isinstance(t, TVar):
        return TBVar(depth) if t.name == name else t
    if isinstance(t, (TBVar, TFlex, _Unit)):
        return t
    if isinstance(t, Sum):
        return Sum(tbind(t.l, name, depth), tbind(t.r, name, depth))
    if isinstance(t, Prod):
        return Prod(tbind(t.l, name, depth), tbind(t.r, name, depth))
    if isinstance(t, Arrow):
        return Arrow(tbind(t.dom, name, depth), tbind(t.cod, name, depth))
    if isinstance(t, AmbT):
        return AmbT(tbind(t.body, name, depth))
    if isinstance(t, Fix):
        return Fix(t.hint, tbind(t.body, name, depth + 1))
    raise TypeError(t)


def fix(name, body):
    return Fix(name, tbind(body, name))


def tinstantiate(t, value, depth=0):
    if t.max_tbvar <= depth:
        return t
    if isinstance(t, TBVar):
        if t.k < depth:
            return t
        if t.k == depth:
            return value
        return TBVar(t.k - 1)
    if isinstance(t, Sum):
        return Sum(tinstantiate(t.l, value, depth), tinstantiate(t.r, value, depth))
    if isinstance(t, Prod):
        return Prod(tinstantiate(t.l, value, depth), tinstantiate(t.r, value, depth))
    if isinstance(t, Arrow):
        return Arrow(tinstantiate(t.dom, value, depth),
                     tinstantiate(t.cod, value, depth))
    if isinstance(t, AmbT):
        return AmbT(tinstantiate(t.body, value, depth))
    if isinstance(t, Fix):
        return Fix(t.hint, tinstantiate(t.body, value, depth + 1))
    raise TypeError(t)


def unfold(t):
    """One equirecursive unfolding of a fixpoint, memoized per node."""
    if not isinstance(t, Fix):
        raise TypeError("unfold expects a fixpoint type")
    if t._unfolded is None:
        t._unfolded = tinstantiate(t.body, t)
    return t._unfolded


def expose(t, limit=64):
    """Unfold leading fixpoints until a structural head appears."""
    seen = 0
    while isinstance(t, Fix):
        if seen >= limit:
            raise NonRegularTypeError("fixpoint never exposes a structural head: %r" % t)
        t = unfold(t)
        seen += 1
    return t


def type_eq(s, t):
    """Structural equality ignoring binder hints (no unfolding)."""
    if s is t:
        return True
    if type(s) is not type(t):
        return False
    if isinstance(s, TVar):
        return s.name == t.name
    if isinstance(s, TBVar):
        return s.k == t.k
    if isinstance(s, TFlex):
        return s.uid == t.uid
    if isinstance(s, _Unit):
        return True
    if isinstance(s, (Sum, Prod)):
        return type_eq(s.l, t.l) and type_eq(s.r, t.r)
    if isinstance(s, Arrow):
        return type_eq(s.dom, t.dom) and type_eq(s.cod, t.cod)
    if isinstance(s, AmbT):
        return type_eq(s.body, t.body)
    if isinstance(s, Fix):
        return type_eq(s.body, t.body)
    raise TypeError(s)


def tkey(t):
    """Canonical string key, cached; used by the coinductive equality check."""
    try:
        k = t._key
    except AttributeError:
        k = None
    if k is None:
        k = _tkey_build(t)
        t._key = k
    return k


def _tkey_build(t):
    if isinstance(t, TVar):
        return "v:" + t.name
    if isinstance(t, TBVar):
        return "#%d" % t.k
    if isinstance(t, TFlex):
        return "?%d" % t.uid
    if isinstance(t, _Unit):
        return "1"
    if isinstance(t, Sum):
        return "(+ %s %s)" % (tkey(t.l), tkey(t.r))
    if isinstance(t, Prod):
        return "(* %s %s)" % (tkey(t.l), tkey(t.r))
    if isinstance(t, Arrow):
        return "(-> %s %s)" % (tkey(t.dom), tkey(t.cod))
    if isinstance(t, AmbT):
        return "(A %s)" % tkey(t.body)
    if isinstance(t, Fix):
        return "(fix %s)" % tkey(t.body)
    raise TypeError(t)


def free_tvars(t):
    out = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, TVar):
            out.add(s.name)
        elif isinstance(s, (Sum, Prod)):
            stack.append(s.l)
            stack.append(s.r)
        elif isinstance(s, Arrow):
            stack.append(s.dom)
            stack.append(s.cod)
        elif isinstance(s, (AmbT, Fix)):
            stack.append(s.body)
    return out


def is_determined(t):
    """A chain of fixpoints over a unit, sum, product, or arrow head."""
    while isinstance(t, Fix):
        t = t.body
    return isinstance(t, (_Unit, Sum, Prod, Arrow))


def _properly_sp(t, depth, left_of_arrow=False):
    """Occurrences of index ``depth`` are strictly positive within ``t``."""
    if isinstance(t, TBVar):
        return not (t.k == depth and left_of_arrow)
    if isinstance(t, (TVar, TFlex, _Unit)):
        return True
    if isinstance(t, (Sum, Prod)):
        return (_properly_sp(t.l, depth, left_of_arrow)
                and _properly_sp(t.r, depth, left_of_arrow))
    if isinstance(t, Arrow):
        return (_properly_sp(t.dom, depth, True)
                and _properly_sp(t.cod, depth, left_of_arrow))
    if isinstance(t, AmbT):
        return _properly_sp(t.body, depth, left_of_arrow)
    if isinstance(t, Fix):
        return _properly_sp(t.body, depth + 1, left_of_arrow)
    raise TypeError(t)


def _mentions(t, depth):
    if isinstance(t, TBVar):
        return t.k == depth
    if isinstance(t, (TVar, TFlex, _Unit)):
        return False
    if isinstance(t, (Sum, Prod)):
        return _mentions(t.l, depth) or _mentions(t.r, depth)
    if isinstance(t, Arrow):
        return _mentions(t.dom, depth) or _mentions(t.cod, depth)
    if isinstance(t, AmbT):
        return _mentions(t.body, depth)
    if isinstance(t, Fix):
        return _mentions(t.body, depth + 1)
    raise TypeError(t)


def is_regular(t, free_vars_determined=False):
    """Check the two formation restrictions.

    Every choice type body must be determined, and every fixpoint body must be
    properly strictly positive in its binder: it mentions the binder, is not
    the bare binder, and keeps it off the left of arrows.

    With ``free_vars_determined`` named free variables are treated as standing
    for determined types, which is how polymorphic combinator types are read.
    """
    if isinstance(t, (TVar, TBVar, TFlex, _Unit)):
        return True
    if isinstance(t, (Sum, Prod)):
        return (is_regular(t.l, free_vars_determined)
                and is_regular(t.r, free_vars_determined))
    if isinstance(t, Arrow):
        return (is_regular(t.dom, free_vars_determined)
                and is_regular(t.cod, free_vars_determined))
    if isinstance(t, AmbT):
        body_ok = is_determined(t.body) or (free_vars_determined
                                            and isinstance(t.body, TVar))
        return body_ok and is_regular(t.body, free_vars_determined)
    if isinstance(t, Fix):
        b = t.body
        if isinstance(b, TBVar):
            return False
        if not _mentions(b, 0) or not _properly_sp(b, 0):
            return False
        return is_regular(b, free_vars_determined)
    raise TypeError(t)


def type_equal(s, t, _assumed=None):
    """Equality of the regular trees denoted by two closed types.

    Coinductive: a pair already under consideration is assumed equal, and
    fixpoints are unfolded until both sides show structural heads.
    """
    if _assumed is None:
        _assumed = set()
    if s is t or type_eq(s, t):
        return True
    key = (tkey(s), tkey(t))
    if key in _assumed:
        return True
    _assumed.add(key)
    s = expose(s)
    t = expose(t)
    if type(s) is not type(t):
        return False
    if isinstance(s, TVar):
        return s.name == t.name
    if isinstance(s, _Unit):
        return True
    if isinstance(s, (Sum, Prod)):
        return (type_equal(s.l, t.l, _assumed)
                and type_equal(s.r, t.r, _assumed))
    if isinstance(s, Arrow):
        return (type_equal(s.dom, t.dom, _assumed)
                and type_equal(s.cod, t.cod, _assumed))
    if isinstance(s, AmbT):
        return type_equal(s.body, t.body, _assumed)
    if isinstance(s, (TBVar, TFlex)):
        return type_eq(s, t)
    raise TypeError(s)


# Common abbreviations.

def nat_type():
    return fix("t", Sum(UNIT, TVar("t")))


def two_type():
    return Sum(UNIT, UNIT)


def three_type():
    return Sum(two_type(), UNIT)


def stream(t):
    return fix("s", Prod(t, TVar("s")))


def strip_amb(t):
    """Delete every choice layer from a type."""
    if isinstance(t, (TVar, TBVar, TFlex, _Unit)):
        return t
    if isinstance(t, Sum):
        return Sum(strip_amb(t.l), strip_amb(t.r))
    if isinstance(t, Prod):
        return Prod(strip_amb(t.l), strip_amb(t.r))
    if isinstance(t, Arrow):
        return Arrow(strip_amb(t.dom), strip_amb(t.cod))
    if isinstance(t, AmbT):
        return strip_amb(t.body)
    if isinstance(t, Fix):
        return Fix(t.hint, strip_amb(t.body))
    raise TypeError(t)


_SARROW, _SSUM, _SPROD, _SATOM = range(4)


def type_to_source(t):
    return _tpp(t, [], free_tvars(t), _SARROW)


def _tfresh(hint, used):
    name = hint if hint else "t"
    while name in used:
        name += "'"
    return name


def _tpp(t, env, used, prec):
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TBVar):
        return env[t.k] if t.k < len(env) else "#%d" % t.k
    if isinstance(t, TFlex):
        return "?%d" % t.uid
    if isinstance(t, _Unit):
        return "1"
    if isinstance(t, Sum):
        if type_eq(t, two_type()):
            return "2"
        if type_eq(t, three_type()):
            return "3"
        s = "%s + %s" % (_tpp(t.l, env, used, _SPROD), _tpp(t.r, env, used, _SSUM))
        return _twrap(s, prec, _SSUM)
    if isinstance(t, Prod):
        s = "%s * %s" % (_tpp(t.l, env, used, _SATOM), _tpp(t.r, env, used, _SPROD))
        return _twrap(s, prec, _SPROD)
    if isinstance(t, Arrow):
        s = "%s -> %s" % (_tpp(t.dom, env, used, _SSUM),
                          _tpp(t.cod, env, used, _SARROW))
        return _twrap(s, prec, _SARROW)
    if isinstance(t, AmbT):
        return "A(%s)" % _tpp(t.body, env, used, _SARROW)
    if isinstance(t, Fix):
        if type_eq(t, nat_type()):
            return "nat"
        if (isinstance(t.body, Prod) and isinstance(t.body.r, TBVar)
                and t.body.r.k == 0 and t.body.l.max_tbvar == 0):
            return "stream(%s)" % _tpp(t.body.l, env, used, _SARROW)
        name = _tfresh(t.hint, used)
        s = "fix %s. %s" % (name, _tpp(t.body, [name] + env, used | {name}, _SARROW))
        return _twrap(s, prec, _SARROW)
    raise TypeError(t)


def _twrap(s, prec, own):
    return "(%s)" % s if own < prec else s

"""Finite approximations of the value domain.

The interpretation domain is the solution of

    D = (Nil + Left(D) + Right(D) + Pair(D x D) + Amb(D x D) + Fun(D -> D))_bot

``FiniteData`` trees are its compact elements: every node is one of ``BOT``,
``NIL``, ``Le``, ``Ri``, ``Pair``, ``AmbD``, or ``FunTag``.  Functions are
opaque: a ``FunTag`` wraps the source lambda and two tags compare equal
exactly when the wrapped terms are alpha-equivalent.

``denote_fuel`` computes a finite approximation of a program's denotation by
head reduction.  The fuel is a per-head-normalization budget: each node along
the data skeleton gets the full budget, so one divergent sibling cannot
starve the others.  The result grows with both fuel and depth.
"""

from __future__ import annotations

import itertools

from . import terms as T
from .errors import BudgetError


class FiniteData:
    __slots__ = ("_hash",)

    def __repr__(self):
        return data_to_source(self)


class _Bot(FiniteData):
    __slots__ = ()

    def __hash__(self):
        return 11

    def __eq__(self, other):
        return other is BOT


class _Nil(FiniteData):
    __slots__ = ()

    def __hash__(self):
        return 13

    def __eq__(self, other):
        return other is NIL


BOT = _Bot()
NIL = _Nil()


class _Unary(FiniteData):
    __slots__ = ("a",)
    _tag = "?"

    def __init__(self, a):
        self.a = a
        self._hash = None

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._tag, self.a))
        return self._hash

    def __eq__(self, other):
        return type(other) is type(self) and self.a == other.a


class Le(_Unary):
    __slots__ = ()
    _tag = "Le"


class Ri(_Unary):
    __slots__ = ()
    _tag = "Ri"


class _Binary(FiniteData):
    __slots__ = ("a", "b")
    _tag = "?"

    def __init__(self, a, b):
        self.a = a
        self.b = b
        self._hash = None

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._tag, self.a, self.b))
        return self._hash

    def __eq__(self, other):
        return (type(other) is type(self)
                and self.a == other.a and self.b == other.b)


class Pair(_Binary):
    __slots__ = ()
    _tag = "Pair"


class AmbD(_Binary):
    __slots__ = ()
    _tag = "AmbD"


class FunTag(FiniteData):
    """Opaque function value; equal only to tags wrapping the same term."""

    __slots__ = ("term",)

    def __init__(self, term):
        self.term = term
        self._hash = None

    def __hash__(self):
        if self._hash is None:
            # Alpha-invariant because printing ignores original hints only
            # when they collide; cheap enough for the rare function value.
            self._hash = hash(("Fun", T.to_source(self.term)))
        return self._hash

    def __eq__(self, other):
        return isinstance(other, FunTag) and T.term_eq(self.term, other.term)


def is_data_elem(a):
    """No choice node anywhere in the tree."""
    if a is BOT or a is NIL or isinstance(a, FunTag):
        return True
    if isinstance(a, (Le, Ri)):
        return is_data_elem(a.a)
    if isinstance(a, Pair):
        return is_data_elem(a.a) and is_data_elem(a.b)
    return False  # AmbD


def is_reg_elem(a):
    """Choice nodes allowed, but never directly under another choice node."""
    if a is BOT or a is NIL or isinstance(a, FunTag):
        return True
    if isinstance(a, (Le, Ri)):
        return is_reg_elem(a.a)
    if isinstance(a, Pair):
        return is_reg_elem(a.a) and is_reg_elem(a.b)
    if isinstance(a, AmbD):
        for side in (a.a, a.b):
            if isinstance(side, AmbD):
                return False
        return is_reg_elem(a.a) and is_reg_elem(a.b)
    raise TypeError(a)


def leq(a, b):
    """The pointwise information order: BOT below everything."""
    if a is BOT:
        return True
    if type(a) is not type(b):
        return False
    if a is NIL:
        return True
    if isinstance(a, FunTag):
        return a == b
    if isinstance(a, (Le, Ri)):
        return leq(a.a, b.a)
    return leq(a.a, b.a) and leq(a.b, b.b)


def lub(a, b):
    """Least upper bound of two consistent elements, else None."""
    if a is BOT:
        return b
    if b is BOT:
        return a
    if type(a) is not type(b):
        return None
    if a is NIL:
        return NIL
    if isinstance(a, FunTag):
        return a if a == b else None
    if isinstance(a, (Le, Ri)):
        inner = lub(a.a, b.a)
        return None if inner is None else type(a)(inner)
    l = lub(a.a, b.a)
    if l is None:
        return None
    r = lub(a.b, b.b)
    return None if r is None else type(a)(l, r)


def rank(a):
    """Height measure: bot and function values are rank 0."""
    if a is BOT or isinstance(a, FunTag):
        return 0
    if a is NIL:
        return 1
    if isinstance(a, (Le, Ri)):
        return 1 + rank(a.a)
    return 1 + max(rank(a.a), rank(a.b))


def truncate(a, depth):
    """Cut the tree below ``depth``; the boundary becomes BOT."""
    if depth <= 0:
        return BOT
    if a is BOT or a is NIL or isinstance(a, FunTag):
        return a
    if isinstance(a, (Le, Ri)):
        return type(a)(truncate(a.a, depth - 1))
    return type(a)(truncate(a.a, depth - 1), truncate(a.b, depth - 1))


def data_set(a, depth=None, budget=200000):
    """All deterministic values obtainable by resolving choice nodes.

    A choice node contributes the values of each non-bot side, or just BOT
    when both sides are bot; data constructors are resolved childwise; BOT
    and function values stand for themselves.  On finite trees this
    structural recursion computes the full relation.
    """
    if depth is not None:
        a = truncate(a, depth)
    counter = itertools.count()

    def go(x):
        if next(counter) > budget:
            raise BudgetError("data_set exceeded its node budget")
        if x is BOT or x is NIL or isinstance(x, FunTag):
            return {x}
        if isinstance(x, (Le, Ri)):
            return {type(x)(d) for d in go(x.a)}
        if isinstance(x, Pair):
            return {Pair(l, r) for l in go(x.a) for r in go(x.b)}
        if isinstance(x, AmbD):
            out = set()
            if x.a is not BOT:
                out |= go(x.a)
            if x.b is not BOT:
                out |= go(x.b)
            if x.a is BOT and x.b is BOT:
                out.add(BOT)
            return out
        raise TypeError(x)

    return go(a)


def select_data(chain):
    """Pick one element of ``data_set`` of the last chain entry.

    ``chain`` is a nonempty increasing list of finite elements.  The choice
    follows the constructive selection used to show the relation nonempty:
    at a choice node the side that defined itself no later than the other is
    kept, so the picks made along a growing chain cohere.
    """
    a_n = chain[-1]
    prefix = chain[:-1]
    if a_n is BOT or a_n is NIL or isinstance(a_n, FunTag):
        return a_n
    if isinstance(a_n, (Le, Ri)):
        sub = [x.a if type(x) is type(a_n) else BOT for x in prefix]
        return type(a_n)(select_data(sub + [a_n.a]))
    if isinstance(a_n, Pair):
        ls = [x.a if isinstance(x, Pair) else BOT for x in prefix]
        rs = [x.b if isinstance(x, Pair) else BOT for x in prefix]
        return Pair(select_data(ls + [a_n.a]), select_data(rs + [a_n.b]))
    # Choice node.
    bs = [x.a if isinstance(x, AmbD) else BOT for x in prefix]
    cs = [x.b if isinstance(x, AmbD) else BOT for x in prefix]
    b_n, c_n = a_n.a, a_n.b
    if b_n is BOT and c_n is BOT:
        return BOT
    if b_n is not BOT and all(c is BOT for b, c in zip(bs, cs) if b is BOT):
        return select_data(bs + [b_n])
    return select_data(cs + [c_n])


# Projection and fuel-bounded denotation live here because both target
# FiniteData; the reduction engine itself is in opsem.

def project_MD(m):
    """The already-computed data part of a term.

    Data constructors project childwise, lambdas become opaque function
    values, and everything else, including choice-headed terms, is BOT.
    """
    if isinstance(m, T.Con):
        if m.tag == "Nil":
            return NIL
        if m.tag == "Left":
            return Le(project_MD(m.args[0]))
        if m.tag == "Right":
            return Ri(project_MD(m.args[0]))
        if m.tag == "Pair":
            return Pair(project_MD(m.args[0]), project_MD(m.args[1]))
        return BOT  # choice constructor
    if isinstance(m, T.Lam):
        return FunTag(m)
    return BOT


def denote_fuel(m, fuel, depth):
    """Finite approximation of the denotation.

    Head-normalizes with the deterministic reduction, then recurses into
    constructor children down to ``depth``.  Every head normalization gets
    its own ``fuel`` budget.  Exhausted budgets yield BOT, so the result is
    monotone in both parameters.
    """
    from .opsem import head_normalize

    T.require_closed(m)

    def go(term, d):
        if d <= 0:
            return BOT
        v = head_normalize(term, fuel)
        if v is None:
            return BOT
        if isinstance(v, T.Lam):
            return FunTag(v)
        if v.tag == "Nil":
            return NIL
        if v.tag == "Left":
            return Le(go(v.args[0], d - 1))
        if v.tag == "Right":
            return Ri(go(v.args[0], d - 1))
        if v.tag == "Pair":
            return Pair(go(v.args[0], d - 1), go(v.args[1], d - 1))
        return AmbD(go(v.args[0], d - 1), go(v.args[1], d - 1))

    return go(m, depth)


def data_to_source(a):
    """Canonical printed form; numeral-shaped trees print as numbers."""
    n = _numeral_of(a)
    if n is not None:
        return str(n)
    if a is BOT:
        return "bot"
    if a is NIL:
        return "Nil"
    if isinstance(a, Le):
        if a.a is NIL:
            return "Left"
        return "Left(%s)" % data_to_source(a.a)
    if isinstance(a, Ri):
        if a.a is NIL:
            return "Right"
        return "Right(%s)" % data_to_source(a.a)
    if isinstance(a, Pair):
        return "Pair(%s, %s)" % (data_to_source(a.a), data_to_source(a.b))
    if isinstance(a, AmbD):
        return "Amb(%s, %s)" % (data_to_source(a.a), data_to_source(a.b))
    if isinstance(a, FunTag):
        return "<fun>"
    raise TypeError(a)


def _numeral_of(a):
    k = 0
    while isinstance(a, Ri):
        a = a.a
        k += 1
    if isinstance(a, Le) and a.a is NIL:
        return k
    return None

"""The shipped program corpus: combinators and conversion programs.

Each entry is written in the surface syntax below and parsed at import.
Functions defined by pattern matching on a stream head, ``f (a:t) = M``, are
expanded by hand into their ``case`` form.  Stream digits use the encodings

* binary digits: ``-1`` is ``Left``, ``1`` is ``Right``;
* signed digits: ``-1`` is ``Left(Left)``, ``1`` is ``Left(Right)``,
  ``0`` is ``Right``.

``check_corpus`` verifies every entry against its declared type; runtime
consumers use the inlined, closed bodies.
"""

from __future__ import annotations

from . import parser as P
from . import typecheck as TC

CORPUS_SOURCE = r"""
-- Core combinators ---------------------------------------------------------

-- Maps a function strictly over both branches of a choice, so the whole
-- surrounding computation races on both results.
def mapamb : (a -> b) -> A(a) -> A(b) =
  \f. \c. case c { Amb(x, y) -> Amb(f $ x, f $ y) };

-- Collapses a sum to its shape, forgetting the payload.
def leftright : (a + b) -> 1 + 1 =
  \c. case c { Left(_) -> Left; Right(_) -> Right };

-- Forces the first argument, then returns the second.
def seq : a -> b -> b =
  \x. \y. (\z. y) $ x;

-- Defined on 0, undefined on every successor.
def f : nat -> nat =
  \a. case a { Left(_) -> Left; Right(_) -> bot };

-- Countable choice: some natural number.
def random_nat : fix t. A(1 + t) =
  rec \a. Amb(Left, Right(a));

-- Realizers of binary classical reasoning ----------------------------------

def rest_mon : (a -> b) -> a -> b =
  \g. \x. g $ x;

def class_orelim : a -> a -> A(a) =
  \x. \y. Amb(x, y);

def class_orelim_sum : a -> b -> A(a + b) =
  \x. \y. Amb(Left $ x, Right $ y);

def rest_efq_arrow : a -> b =
  \x. bot;

def or_drop_left : (a + b) -> b =
  \c. case c { Left(_) -> bot; Right(y) -> y };

-- First-digit analysis of a real in [-1,1] ---------------------------------

-- From definedness witnesses for "sign of x" and "sign of t(x)", produce a
-- always-productive three-way choice: x <= 0, x >= 0, or |x| <= 1/2.
def conSD : 2 * 2 -> A(3) =
  \c. case c { Pair(a, b) ->
        Amb(Left $ leftright a,
            Right $ case b { Left(_) -> bot; Right(_) -> Nil }) };

-- Same analysis starting from a binary-digit stream.
def gscomp : stream(2) -> A(3) =
  \p. case p { Pair(a, t1) -> case t1 { Pair(b, _) -> conSD (Pair(a, b)) } };

def not : 2 -> 2 =
  \d. case d { Left(_) -> Right; Right(_) -> Left };

-- Negate the head of a stream.
def nh : stream(2) -> stream(2) =
  \p. case p { Pair(a, t) -> Pair(not a, t) };

-- Given the input stream and a three-way verdict, emit one signed digit
-- and the stream to continue from.
def onedigit : stream(2) -> 3 -> 3 * stream(2) =
  \p. case p { Pair(a, t1) -> case t1 { Pair(b, t) ->
    \c. case c {
      Left(d) -> case d { Left(_)  -> Pair(Left(Left),  Pair(b, t));
                          Right(_) -> Pair(Left(Right), Pair(not b, t)) };
      Right(_) -> Pair(Right, Pair(a, nh t)) } } };

-- One conversion step: a choice of (digit, rest-of-input) pairs.
def s : stream(2) -> A(3 * stream(2)) =
  \p. mapamb (onedigit p) (gscomp p);

-- Push a function into the tail slot under the choice.
def mon : (a -> b) -> A(3 * a) -> A(3 * b) =
  \g. \p. mapamb (\q. case q { Pair(d, t) -> Pair(d, g t) }) p;

-- Stream conversion by coiteration over the step function.
def gtos : stream(2) -> fix t. A(3 * t) =
  rec \g. \p. mon g (s p);

-- The same conversion with the step unrolled into one definition.
def gtos_simple : stream(2) -> fix t. A(3 * t) =
  rec \g. \p. case p { Pair(a, t1) -> case t1 { Pair(b, t) ->
    Amb(case a { Left(_)  -> Pair(Left(Left),  g (Pair(b, t)));
                 Right(_) -> Pair(Left(Right), g (Pair(not b, t))) },
        case b { Right(_) -> Pair(Right, g (Pair(a, nh t))) }) } };

-- Coiteration combinator at the conversion instance: builds the recursive
-- converter from a monotonicity witness and a step function.
def coind : ((stream(2) -> fix t. A(3 * t))
               -> A(3 * stream(2)) -> A(3 * (fix t. A(3 * t))))
            -> (stream(2) -> A(3 * stream(2)))
            -> stream(2) -> fix t. A(3 * t) =
  \m. \st. rec \g. \p. m g (st p);
"""


class NamedProgram:
    """A corpus entry: name, closed body, declared type, and a short note."""

    __slots__ = ("name", "program", "declared", "source_body", "note")

    def __init__(self, name, program, declared, source_body, note=""):
        self.name = name
        self.program = program
        self.declared = declared
        self.source_body = source_body
        self.note = note

    def __repr__(self):
        return "<program %s : %r>" % (self.name, self.declared)


_NOTES = {
    "mapamb": "choice functor; carries whole-computation racing",
    "leftright": "sum-shape realizer for guarded binary case analysis",
    "seq": "strict sequencing",
    "f": "partial successor test: defined on 0 only",
    "random_nat": "countable choice via recursion through the choice node",
    "rest_mon": "strict composition under a guard",
    "class_orelim": "binary choice of two guarded alternatives",
    "class_orelim_sum": "tagged binary choice",
    "rest_efq_arrow": "vacuous guard realizer",
    "or_drop_left": "drop the impossible branch of a sum",
    "conSD": "first signed digit from two sign witnesses",
    "gscomp": "first signed digit from a binary-digit stream",
    "not": "digit flip",
    "nh": "flip the stream head",
    "onedigit": "one output digit plus continuation stream",
    "s": "single conversion step under the choice",
    "mon": "map over the tail slot under the choice",
    "gtos": "binary-digit stream to signed-digit stream, by coiteration",
    "gtos_simple": "the conversion with the step unrolled",
    "coind": "coiteration combinator at the conversion instance",
}


def _load():
    defs = P.parse_file(CORPUS_SOURCE)
    inlined = P.inline_definitions(defs)
    programs = {}
    for d in defs:
        programs[d.name] = NamedProgram(
            d.name, inlined[d.name].body, d.declared, d.body,
            _NOTES.get(d.name, ""))
    return programs


PROGRAMS = _load()


def program(name):
    """The closed, inlined body of a corpus entry."""
    return PROGRAMS[name].program


def declared_type(name):
    return PROGRAMS[name].declared


def definitions():
    """The corpus as parsed definitions, for the type checker."""
    return P.parse_file(CORPUS_SOURCE)


def check_corpus():
    """Type-check every corpus entry; returns the report rows."""
    return TC.check_definitions(definitions())

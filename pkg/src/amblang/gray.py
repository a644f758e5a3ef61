"""Exact-rational digit oracles and end-to-end stream conversion runs.

A binary-digit code of ``x`` in [-1, 1] has digit ``i`` equal to the sign of
the i-th iterate of the tent map ``t(x) = 1 - 2|x|``; when the iterate is 0
the digit is undefined (at most one iterate can be 0).  A signed-digit
representation is a stream over {-1, 0, 1} denoting ``sum d_i 2^-(i+1)``.

All arithmetic is exact via ``fractions.Fraction``; no floating point.

Digit terms carry a step-counted delay: a digit with delay ``k`` needs
exactly ``k`` head reductions to reach its constructor, built by wrapping
the constructor in ``k`` identity redexes.  Delay 0, like an undefined
digit, is a diverging term.
"""

from __future__ import annotations

from fractions import Fraction

from . import terms as T
from .errors import (FuelExhaustedError, MalformedOutputError, OutOfRangeError)
from . import domain as D
from . import opsem as O
from . import stdlib as S

BOT_DIGIT = None


def tent(x):
    return 1 - 2 * abs(Fraction(x))


def gray_oracle(x, n):
    """First ``n`` digits of the binary-digit code of ``x``.

    Digit ``i`` is the exact sign of the i-th tent iterate; a zero iterate
    yields None (the undefined digit), which can happen at most once.
    """
    x = Fraction(x)
    if abs(x) > 1:
        raise OutOfRangeError("|%s| > 1" % x)
    digits = []
    for _ in range(n):
        if x > 0:
            digits.append(1)
        elif x < 0:
            digits.append(-1)
        else:
            digits.append(BOT_DIGIT)
        x = tent(x)
    return digits


def sd_value(prefix):
    """Exact partial sum of a signed-digit prefix."""
    total = Fraction(0)
    for i, d in enumerate(prefix):
        if d not in (-1, 0, 1):
            raise ValueError("not a signed digit: %r" % (d,))
        total += Fraction(d, 2 ** (i + 1))
    return total


def sd_valid_prefix(x, prefix):
    """Whether the prefix can start a signed-digit representation of ``x``."""
    x = Fraction(x)
    if abs(x) > 1:
        raise OutOfRangeError("|%s| > 1" % x)
    return abs(x - sd_value(prefix)) <= Fraction(1, 2 ** len(prefix))


# Building input terms.

_IDENT = T.Lam("a", T.BVar(0))


def _spin(term, k):
    """Wrap so that exactly ``k`` head reductions reach the constructor."""
    for _ in range(k):
        term = T.App(_IDENT, term)
    return term


_DIVERGE = T.Rec(_IDENT)


def gray_digit_term(digit, delay=1):
    """A single binary-digit term: -1 or 1 with a step delay, None for bot."""
    if digit is BOT_DIGIT or delay == 0:
        return _DIVERGE
    if digit == -1:
        base = T.left()
    elif digit == 1:
        base = T.right()
    else:
        raise ValueError("binary digit must be -1, 1, or None")
    return _spin(base, delay)


def gray_program(digits, length=None):
    """Build the stream term for a list of (digit, delay) entries.

    ``digits`` may also contain bare digits, which get delay 1.  When
    ``length`` exceeds the list, the final digit is repeated with delay 1.
    The chain past ``length`` is a diverging tail.
    """
    norm = []
    for d in digits:
        if isinstance(d, tuple):
            norm.append(d)
        else:
            norm.append((d, 1))
    if length is not None:
        if not norm:
            raise ValueError("cannot extend an empty digit list")
        last = norm[-1][0]
        while len(norm) < length:
            norm.append((last, 1))
    term = T.BOTTOM
    for digit, delay in reversed(norm):
        term = T.pair(gray_digit_term(digit, delay), term)
    return term


class DigitStream:
    """A rational in [-1, 1] with per-digit delay budgets.

    Delay 0 forces the digit undefined; entries beyond the delay list use
    ``default_delay``.  ``term(n)`` builds the n-digit input stream whose
    digits come from the exact oracle.
    """

    def __init__(self, x, delays=(), default_delay=1):
        self.x = Fraction(x)
        if abs(self.x) > 1:
            raise OutOfRangeError("|%s| > 1" % self.x)
        self.delays = tuple(int(d) for d in delays)
        if any(d < 0 for d in self.delays):
            raise ValueError("delays must be nonnegative")
        self.default_delay = int(default_delay)

    def delay(self, i):
        return self.delays[i] if i < len(self.delays) else self.default_delay

    def digits(self, n):
        return [(d, self.delay(i))
                for i, d in enumerate(gray_oracle(self.x, n))]

    def term(self, n):
        return gray_program(self.digits(n))


# Decoding run output.

_SD_DECODE = {
    D.Le(D.Le(D.NIL)): -1,
    D.Le(D.Ri(D.NIL)): 1,
    D.Ri(D.NIL): 0,
}


def decode_sd(data, limit=None):
    """Read signed digits off a finite data chain.

    Stops at the first bot (unfinished tail or undecided digit).  Raises
    MalformedOutputError on any node that is neither a pair chain nor a
    signed-digit encoding, which would indicate an engine bug.
    """
    out = []
    while isinstance(data, D.Pair):
        digit = _SD_DECODE.get(data.a)
        if digit is None:
            if data.a is D.BOT or _partial_digit(data.a):
                return out
            raise MalformedOutputError("not a signed digit: %r" % data.a)
        out.append(digit)
        if limit is not None and len(out) >= limit:
            return out
        data = data.b
    if data is D.BOT:
        return out
    raise MalformedOutputError("not a digit chain: %r" % data)


def _partial_digit(a):
    """True for digit prefixes cut by fuel or depth, e.g. Le(bot)."""
    if isinstance(a, D.Le):
        return a.a is D.BOT or (isinstance(a.a, (D.Le, D.Ri)) and a.a.a is D.BOT)
    if isinstance(a, D.Ri):
        return a.a is D.BOT
    return False


def gtos_run(x, delays, schedule, n, fuel=20000, program=None,
             input_digits=None):
    """Convert ``n`` digits of the binary-digit code of ``x``.

    Builds the delayed input stream, applies the conversion program (the
    corpus ``gtos`` unless another is supplied), runs the scheduled parallel
    reduction, and decodes the leading signed digits.  Raises
    FuelExhaustedError carrying the partial output when fewer than ``n``
    digits were produced.
    """
    if n < 1:
        raise ValueError("need at least one digit")
    stream = DigitStream(x, delays or ())
    m = max(n + 4, (input_digits or 0))
    term = T.App(program if program is not None else S.program("gtos"),
                 stream.term(m))
    depth = 3 * n + 8
    data, trace = O.run_extract(term, schedule, fuel, depth,
                                record_trace=False,
                                stop=lambda cur: _chain_len(cur, n) >= n)
    digits = decode_sd(data, limit=n)
    if len(digits) < n:
        raise FuelExhaustedError(
            "produced %d of %d digits within fuel %d" % (len(digits), n, fuel),
            partial=digits)
    return digits


def _chain_len(m, limit):
    """Number of fully evaluated leading digits of a pair chain."""
    k = 0
    while (k < limit and isinstance(m, T.Con) and m.tag == "Pair"
           and m.args[0].stable):
        k += 1
        m = m.args[1]
    return k


def format_digits(digits):
    """Render digits the way the interactive runs print them."""
    tokens = {1: " 1", -1: "-1", 0: " 0"}
    return "".join(tokens.get(d, " bot") for d in digits)

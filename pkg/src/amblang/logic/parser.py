"""Parser for formula definition files.

Grammar::

    file    ::= (("pred" | "formula") NAME ":=" body ";")*
    pred    ::= "mu" NAME "(" names ")" "." formula
              | "nu" NAME "(" names ")" "." formula
              | "{" names "|" formula "}"
    formula ::= quant | imp
    quant   ::= ("forall" | "exists") NAME "." formula
    imp     ::= or (("->" | "|>") formula)?
    or      ::= and ("\\/" or)?
    and     ::= unary ("/\\" and)?
    unary   ::= "~" unary | "conc" "(" formula ")" | atomf
    atomf   ::= "False" | NAME "(" terms ")" | term REL term | "(" formula ")"
    REL     ::= "=" | "/=" | "<=" | "<" | ">=" | ">"
    term    ::= sum;  sum ::= prod (("+" | "-") sum)?
    prod    ::= factor (("*" | "/") prod)?
    factor  ::= NUM | NAME | NAME "(" terms ")" | "-" factor | "(" term ")"

``x /= y`` abbreviates ``~(x = y)`` and ``s >= t`` is ``t <= s``.  Names
applied to terms refer to predicates defined earlier in the file, to the
enclosing fixed point variable, or to free function symbols (lowercase).
Comments run from ``--`` to end of line.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from . import syntax as L

_SYMS = ("|>", "->", "/\\", "\\/", "<=", ">=", "/=", ":=",
         "(", ")", "{", "}", ";", ",", ".", "|", "~", "=", "<", ">",
         "+", "-", "*", "/")

_KEYWORDS = {"pred", "formula", "mu", "nu", "forall", "exists", "conc",
             "False", "abs"}


def _lex(src):
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("num", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            word = src[i:j]
            toks.append(("kw" if word in _KEYWORDS else "name", word, line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMS:
            if src.startswith(sym, i):
                toks.append(("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError("unexpected character %r" % c, line, col)
    toks.append(("eof", "", line, col))
    return toks


class _P:
    def __init__(self, src, defs=None):
        self.toks = _lex(src)
        self.pos = 0
        self.defs = dict(defs or {})
        self.bound_preds = []

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, kind, text=None):
        k, x, _l, _c = self.peek()
        return k == kind and (text is None or x == text)

    def eat(self, kind, text=None):
        if not self.at(kind, text):
            k, x, l, c = self.peek()
            raise ParseError("unexpected %r" % (x or "end of input"), l, c,
                             expected=[text or kind])
        return self.next()

    def fail(self, expected):
        k, x, l, c = self.peek()
        raise ParseError("unexpected %r" % (x or "end of input"), l, c,
                         expected=expected)

    # Definitions.

    def file(self):
        items = []
        while not self.at("eof"):
            if self.at("kw", "pred"):
                self.next()
                name = self.eat("name")[1]
                self.eat("sym", ":=")
                value = self.predicate()
                self.eat("sym", ";")
            elif self.at("kw", "formula"):
                self.next()
                name = self.eat("name")[1]
                self.eat("sym", ":=")
                value = self.formula()
                self.eat("sym", ";")
            else:
                self.fail(["pred", "formula"])
            self.defs[name] = value
            items.append((name, value))
        return items

    def predicate(self):
        if self.at("kw", "mu") or self.at("kw", "nu"):
            kind = self.next()[1]
            pv = self.eat("name")[1]
            self.eat("sym", "(")
            params = [self.eat("name")[1]]
            while self.at("sym", ","):
                self.next()
                params.append(self.eat("name")[1])
            self.eat("sym", ")")
            self.eat("sym", ".")
            self.bound_preds.append(pv)
            body = self.formula()
            self.bound_preds.pop()
            op = L.Op(pv, L.Compr(tuple(params), body))
            return L.Mu(op) if kind == "mu" else L.Nu(op)
        if self.at("sym", "{"):
            self.next()
            params = [self.eat("name")[1]]
            while self.at("sym", ","):
                self.next()
                params.append(self.eat("name")[1])
            self.eat("sym", "|")
            body = self.formula()
            self.eat("sym", "}")
            return L.Compr(tuple(params), body)
        if self.at("name"):
            name = self.next()[1]
            if name in self.defs and isinstance(self.defs[name], L.Predicate):
                return self.defs[name]
            self.fail(["a predicate"])
        self.fail(["mu", "nu", "{", "a predicate name"])

    # Formulas.

    def formula(self):
        if self.at("kw", "forall") or self.at("kw", "exists"):
            kind = self.next()[1]
            var = self.eat("name")[1]
            self.eat("sym", ".")
            body = self.formula()
            return (L.Forall if kind == "forall" else L.Exists)(var, body)
        return self.implication()

    def implication(self):
        l = self.disjunction()
        if self.at("sym", "->"):
            self.next()
            return L.Implies(l, self.formula())
        if self.at("sym", "|>"):
            self.next()
            return L.Restriction(l, self.formula())
        return l

    def disjunction(self):
        l = self.conjunction()
        if self.at("sym", "\\/"):
            self.next()
            return L.Or(l, self.disjunction())
        return l

    def conjunction(self):
        l = self.unary()
        if self.at("sym", "/\\"):
            self.next()
            return L.And(l, self.conjunction())
        return l

    def unary(self):
        if self.at("sym", "~"):
            self.next()
            return L.neg(self.unary())
        if self.at("kw", "conc"):
            self.next()
            self.eat("sym", "(")
            body = self.formula()
            self.eat("sym", ")")
            return L.Conc(body)
        if self.at("kw", "False"):
            self.next()
            return L.falsum()
        if self.at("kw", "forall") or self.at("kw", "exists"):
            return self.formula()
        return self.atom_formula()

    def atom_formula(self):
        if self.at("sym", "("):
            save = self.pos
            self.next()
            try:
                f = self.formula()
                self.eat("sym", ")")
                if self._at_rel():
                    # It was a parenthesized term after all.
                    raise ParseError("term", 0, 0)
                return f
            except ParseError:
                self.pos = save
        if self.at("name"):
            k, name, l, c = self.peek()
            nxt = self.toks[self.pos + 1]
            if nxt[0] == "sym" and nxt[1] == "(":
                looked = self._pred_lookup(name)
                if looked is not None:
                    self.next()
                    self.next()
                    args = [self.term()]
                    while self.at("sym", ","):
                        self.next()
                        args.append(self.term())
                    self.eat("sym", ")")
                    return L.PredApp(looked, tuple(args))
        lhs = self.term()
        rel = self._rel()
        rhs = self.term()
        if rel == "=":
            return L.Atom("=", (lhs, rhs))
        if rel == "/=":
            return L.neg(L.Atom("=", (lhs, rhs)))
        if rel == "<=":
            return L.Atom("<=", (lhs, rhs))
        if rel == "<":
            return L.Atom("<", (lhs, rhs))
        if rel == ">=":
            return L.Atom("<=", (rhs, lhs))
        return L.Atom("<", (rhs, lhs))

    def _pred_lookup(self, name):
        if name in self.bound_preds:
            return L.PredVar(name)
        if name in self.defs and isinstance(self.defs[name], L.Predicate):
            return self.defs[name]
        if name[:1].isupper():
            return L.PredVar(name)
        return None

    def _at_rel(self):
        return (self.at("sym", "=") or self.at("sym", "/=")
                or self.at("sym", "<=") or self.at("sym", "<")
                or self.at("sym", ">=") or self.at("sym", ">"))

    def _rel(self):
        for r in ("=", "/=", "<=", ">=", "<", ">"):
            if self.at("sym", r):
                self.next()
                return r
        self.fail(["a relation"])

    # Terms.

    def term(self):
        l = self.prod_term()
        while self.at("sym", "+") or self.at("sym", "-"):
            op = self.next()[1]
            r = self.prod_term()
            l = L.FOOp(op, (l, r))
        return l

    def prod_term(self):
        l = self.factor()
        while self.at("sym", "*") or self.at("sym", "/"):
            op = self.next()[1]
            r = self.factor()
            l = L.FOOp(op, (l, r))
        return l

    def factor(self):
        if self.at("sym", "-"):
            self.next()
            inner = self.factor()
            if isinstance(inner, L.Num):
                return L.Num(-inner.value)
            return L.FOOp("neg", (inner,))
        if self.at("num"):
            return L.Num(Fraction(int(self.next()[1])))
        if self.at("kw", "abs"):
            self.next()
            self.eat("sym", "(")
            t = self.term()
            self.eat("sym", ")")
            return L.FOOp("abs", (t,))
        if self.at("name"):
            name = self.next()[1]
            if self.at("sym", "("):
                self.next()
                args = [self.term()]
                while self.at("sym", ","):
                    self.next()
                    args.append(self.term())
                self.eat("sym", ")")
                return L.FOOp(name, tuple(args))
            return L.RVar(name)
        if self.at("sym", "("):
            self.next()
            t = self.term()
            self.eat("sym", ")")
            return t
        self.fail(["a term"])


def parse_formula_file(text, defs=None):
    """Parse a definition file; returns the ordered (name, value) items."""
    return _P(text, defs).file()


def parse_formula(text, defs=None):
    p = _P(text, defs)
    f = p.formula()
    p.eat("eof")
    return f

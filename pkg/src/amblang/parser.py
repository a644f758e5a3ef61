"""Surface syntax for programs, types, and definition files.

Grammar sketch::

    file    ::= (def | main)*
    def     ::= "def" NAME [":" type] "=" term ";"
    main    ::= "main" "=" term ";"
    term    ::= "\\" NAME "." term | "rec" term | strict
    strict  ::= app ("$" strict)?
    app     ::= atom atom*
    atom    ::= NAME | NUMBER | "bot" | ctor | caseexpr | "(" term ")"
    ctor    ::= "Nil" | "Left" ["(" term ")"] | "Right" ["(" term ")"]
              | "Pair" "(" term "," term ")" | "Amb" "(" term "," term ")"
    caseexpr::= "case" term "{" clause (";" clause)* [";"] "}"
    clause  ::= TAG ["(" pat ("," pat)* ")"] "->" term
    type    ::= tsum ("->" type)? | "fix" NAME "." type
    tsum    ::= tprod ("+" tsum)?
    tprod   ::= tatom ("*" tprod)?
    tatom   ::= "1" | "2" | "3" | "nat" | NAME | "A" "(" type ")"
              | "stream" "(" type ")" | "(" type ")"

Bare ``Left`` and ``Right`` abbreviate ``Left(Nil)`` and ``Right(Nil)``;
numerals abbreviate ``Left``, ``Right(Left)``, and so on.  In ``Left $ m``
the bare constructor is read as the function ``\\a. Left(a)`` applied
strictly, matching the usual shorthand.  Comments run from ``--`` to the end
of the line.
"""

from __future__ import annotations

from . import terms as T
from . import types as Y
from .errors import ParseError

_KEYWORDS = {"def", "main", "case", "rec", "bot", "fix",
             "Nil", "Left", "Right", "Pair", "Amb", "A", "nat", "stream"}

_SYMBOLS = ("->", "\\", ".", "(", ")", "{", "}", ";", ",", "$", ":",
            "=", "+", "*", "_")


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "%s(%r)" % (self.kind, self.text)


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
            toks.append(_Tok("num", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            word = src[i:j]
            kind = "kw" if word in _KEYWORDS else "name"
            if word == "_":
                kind = "wild"
            toks.append(_Tok(kind, word, line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if src.startswith(sym, i):
                toks.append(_Tok("sym", sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise ParseError("unexpected character %r" % c, line, col)
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src):
        self.toks = _lex(src)
        self.pos = 0

    # Token plumbing.

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def at(self, kind, text=None):
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def at_sym(self, text):
        return self.at("sym", text)

    def eat(self, kind, text=None):
        if not self.at(kind, text):
            tok = self.peek()
            raise ParseError("unexpected %r" % (tok.text or "end of input"),
                             tok.line, tok.col,
                             expected=[text or kind])
        return self.next()

    def fail(self, expected):
        tok = self.peek()
        raise ParseError("unexpected %r" % (tok.text or "end of input"),
                         tok.line, tok.col, expected=expected)

    # Terms.  ``env`` maps bound names to binder depth for index resolution.

    def term(self, env):
        if self.at_sym("\\"):
            self.next()
            name = self.binder_name()
            self.eat("sym", ".")
            body = self.term(_push(env, name))
            return T.Lam(name, body)
        if self.at("kw", "rec"):
            self.next()
            return T.Rec(self.term(env))
        return self.strict(env)

    def strict(self, env):
        fun = self.app(env)
        if self.at_sym("$"):
            self.next()
            arg = self.strict(env)
            return T.SApp(fun, arg)
        return fun

    def app(self, env):
        m = self.atom_for_app(env)
        while self.starts_atom():
            m = T.App(m, self.atom(env))
        return m

    def atom_for_app(self, env):
        # A bare Left/Right immediately followed by `$` is the constructor
        # as a strict function, not the zero-argument abbreviation.
        if self.at("kw", "Left") or self.at("kw", "Right"):
            tag = self.peek().text
            nxt = self.toks[self.pos + 1]
            if nxt.kind == "sym" and nxt.text == "$":
                self.next()
                return T.Lam("a", T.Con(tag, (T.BVar(0),)))
        return self.atom(env)

    def starts_atom(self):
        tok = self.peek()
        if tok.kind in ("name", "num"):
            return True
        if tok.kind == "kw":
            return tok.text in ("case", "bot", "Nil", "Left", "Right",
                                "Pair", "Amb")
        return tok.kind == "sym" and tok.text == "("

    def atom(self, env):
        tok = self.peek()
        if tok.kind == "name":
            self.next()
            if tok.text in env:
                return T.BVar(env[tok.text][-1])
            return T.Var(tok.text)
        if tok.kind == "num":
            self.next()
            return T.numeral(int(tok.text))
        if tok.kind == "kw":
            if tok.text == "bot":
                self.next()
                return T.BOTTOM
            if tok.text == "Nil":
                self.next()
                return T.nil()
            if tok.text in ("Left", "Right"):
                self.next()
                if self.at_sym("("):
                    self.next()
                    inner = self.term(env)
                    self.eat("sym", ")")
                    return T.Con(tok.text, (inner,))
                return T.Con(tok.text, (T.nil(),))
            if tok.text in ("Pair", "Amb"):
                self.next()
                self.eat("sym", "(")
                a = self.term(env)
                self.eat("sym", ",")
                b = self.term(env)
                self.eat("sym", ")")
                return T.Con(tok.text, (a, b))
            if tok.text == "case":
                return self.case_expr(env)
        if self.at_sym("("):
            self.next()
            m = self.term(env)
            self.eat("sym", ")")
            return m
        self.fail(["a term"])

    def case_expr(self, env):
        self.eat("kw", "case")
        scrut = self.term(env)
        self.eat("sym", "{")
        clauses = []
        while True:
            clauses.append(self.clause(env))
            if self.at_sym(";"):
                self.next()
                if self.at_sym("}"):
                    break
                continue
            break
        self.eat("sym", "}")
        try:
            return T.Case(scrut, clauses)
        except ValueError as e:
            tok = self.peek()
            raise ParseError(str(e), tok.line, tok.col)

    def clause(self, env):
        tok = self.peek()
        if not (tok.kind == "kw"
                and tok.text in ("Nil", "Left", "Right", "Pair", "Amb")):
            self.fail(["a constructor clause"])
        self.next()
        tag = tok.text
        arity = T.CONSTRUCTORS[tag]
        names = []
        if arity > 0:
            self.eat("sym", "(")
            for i in range(arity):
                if i:
                    self.eat("sym", ",")
                names.append(self.binder_name())
            self.eat("sym", ")")
        self.eat("sym", "->")
        inner = env
        for name in names:
            inner = _push(inner, name)
        body = self.term(inner)
        return T.Clause(tag, names, body)

    def binder_name(self):
        tok = self.peek()
        if tok.kind == "name":
            self.next()
            return tok.text
        if tok.kind == "wild":
            self.next()
            return "_"
        self.fail(["a variable name"])

    # Types.

    def type_(self, env):
        if self.at("kw", "fix"):
            self.next()
            name = self.eat("name").text
            self.eat("sym", ".")
            body = self.type_(_push(env, name))
            return Y.Fix(name, body)
        t = self.tsum(env)
        if self.at_sym("->"):
            self.next()
            return Y.Arrow(t, self.type_(env))
        return t

    def tsum(self, env):
        t = self.tprod(env)
        if self.at_sym("+"):
            self.next()
            return Y.Sum(t, self.tsum(env))
        return t

    def tprod(self, env):
        t = self.tatom(env)
        if self.at_sym("*"):
            self.next()
            return Y.Prod(t, self.tprod(env))
        return t

    def tatom(self, env):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            n = int(tok.text)
            if n == 1:
                return Y.UNIT
            if n == 2:
                return Y.two_type()
            if n == 3:
                return Y.three_type()
            raise ParseError("no such base type %r" % tok.text,
                             tok.line, tok.col, expected=["1", "2", "3"])
        if tok.kind == "kw":
            if tok.text == "nat":
                self.next()
                return Y.nat_type()
            if tok.text == "A":
                self.next()
                self.eat("sym", "(")
                body = self.type_(env)
                self.eat("sym", ")")
                return Y.AmbT(body)
            if tok.text == "stream":
                self.next()
                self.eat("sym", "(")
                body = self.type_(env)
                self.eat("sym", ")")
                return Y.stream(body)
        if tok.kind == "name":
            self.next()
            if tok.text in env:
                return Y.TBVar(env[tok.text][-1])
            return Y.TVar(tok.text)
        if self.at_sym("("):
            self.next()
            t = self.type_(env)
            self.eat("sym", ")")
            return t
        self.fail(["a type"])

    # Files.

    def file(self):
        defs = []
        while not self.at("eof"):
            if self.at("kw", "def"):
                self.next()
                name = self.eat("name").text
                decl = None
                if self.at_sym(":"):
                    self.next()
                    decl = self.type_({})
                self.eat("sym", "=")
                body = self.term({})
                self.eat("sym", ";")
                defs.append(Definition(name, decl, body))
            elif self.at("kw", "main"):
                self.next()
                self.eat("sym", "=")
                body = self.term({})
                self.eat("sym", ";")
                defs.append(Definition("main", None, body))
            else:
                self.fail(["def", "main"])
        return defs


def _push(env, name):
    """Shift every binder depth up by one and bind ``name`` at depth 0.

    Environments map names to a stack of depths so shadowing works; depths
    stored are relative to the next binder, hence the global shift.
    """
    out = {k: [d + 1 for d in v] for k, v in env.items()}
    out[name] = out.get(name, []) + [0]
    return out


class Definition:
    __slots__ = ("name", "declared", "body")

    def __init__(self, name, declared, body):
        self.name = name
        self.declared = declared
        self.body = body

    def __repr__(self):
        return "<def %s>" % self.name


def parse_program(text):
    """Parse a single term; raises ParseError with position on bad input."""
    p = _Parser(text)
    m = p.term({})
    p.eat("eof")
    return m


def parse_type(text):
    p = _Parser(text)
    t = p.type_({})
    p.eat("eof")
    return t


def parse_file(text):
    """Parse a definition file into a list of Definitions."""
    return _Parser(text).file()


def inline_definitions(defs):
    """Resolve definition names, producing closed bodies.

    Returns an ordered dict name -> Definition whose bodies have every
    earlier definition substituted in.  Later definitions may reference
    earlier ones; self reference is only available through ``rec``.
    """
    out = {}
    closed = {}
    for d in defs:
        body = d.body
        for name in sorted(T.free_vars(body)):
            if name in closed:
                body = T.subst(body, name, closed[name])
        out[d.name] = Definition(d.name, d.declared, body)
        closed[d.name] = body
    return out

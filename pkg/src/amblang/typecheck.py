"""Bidirectional type checking against the equirecursive typing rules.

Checking, not inference: variables, applications, and constructors applied
to synthesizable children synthesize; everything else checks against an
expected type, with a fixpoint unfolded whenever its head disagrees with the
term form.  References to earlier definitions are polymorphic: the free type
variables of a definition's declared type are instantiated fresh at every
use and solved by first-order matching against the arguments.  That local
instantiation is the only inference performed; there is no generalization.
"""

from __future__ import annotations

from contextlib import contextmanager

from . import terms as T
from . import types as Y
from .errors import NonRegularTypeError


class TypingReport:
    """Outcome of a typing judgment; rejected reports carry a locus."""

    def __init__(self, accepted, locus=(), message="", expected=None, actual=None):
        self.accepted = accepted
        self.locus = tuple(locus)
        self.message = message
        self.expected = expected
        self.actual = actual

    def __bool__(self):
        return self.accepted

    def __repr__(self):
        if self.accepted:
            return "accepted"
        where = " > ".join(self.locus) or "top level"
        extra = ""
        if self.expected is not None:
            extra = " (expected %r" % self.expected
            extra += ", got %r)" % self.actual if self.actual is not None else ")"
        return "rejected at %s: %s%s" % (where, self.message, extra)


class _Reject(Exception):
    def __init__(self, message, locus, expected=None, actual=None):
        super().__init__(message)
        self.report = TypingReport(False, locus, message, expected, actual)


class _Checker:
    def __init__(self, globals_=None):
        self.globals = dict(globals_ or {})
        self.bindings = {}
        self._fresh = 0
        self.locus = []

    # Flexible variables.

    def new_flex(self):
        self._fresh += 1
        return Y.TFlex(self._fresh)

    def fresh_name(self, hint):
        self._fresh += 1
        return "%s#%d" % (hint or "x", self._fresh)

    def resolve(self, t):
        while isinstance(t, Y.TFlex) and t.uid in self.bindings:
            t = self.bindings[t.uid]
        return t

    def zonk(self, t):
        t = self.resolve(t)
        if isinstance(t, (Y.TVar, Y.TBVar, Y.TFlex, Y._Unit)):
            return t
        if isinstance(t, Y.Sum):
            return Y.Sum(self.zonk(t.l), self.zonk(t.r))
        if isinstance(t, Y.Prod):
            return Y.Prod(self.zonk(t.l), self.zonk(t.r))
        if isinstance(t, Y.Arrow):
            return Y.Arrow(self.zonk(t.dom), self.zonk(t.cod))
        if isinstance(t, Y.AmbT):
            return Y.AmbT(self.zonk(t.body))
        if isinstance(t, Y.Fix):
            return Y.Fix(t.hint, self.zonk(t.body))
        raise TypeError(t)

    def has_flex(self, t):
        t = self.resolve(t)
        if isinstance(t, Y.TFlex):
            return True
        if isinstance(t, (Y.TVar, Y.TBVar, Y._Unit)):
            return False
        if isinstance(t, (Y.Sum, Y.Prod)):
            return self.has_flex(t.l) or self.has_flex(t.r)
        if isinstance(t, Y.Arrow):
            return self.has_flex(t.dom) or self.has_flex(t.cod)
        if isinstance(t, (Y.AmbT, Y.Fix)):
            return self.has_flex(t.body)
        raise TypeError(t)

    def instantiate_global(self, t):
        """Freshen the free type variables of a definition's declared type."""
        mapping = {}
        for name in sorted(Y.free_tvars(t)):
            mapping[name] = self.new_flex()
        if not mapping:
            return t

        def go(s):
            if isinstance(s, Y.TVar):
                return mapping.get(s.name, s)
            if isinstance(s, (Y.TBVar, Y.TFlex, Y._Unit)):
                return s
            if isinstance(s, Y.Sum):
                return Y.Sum(go(s.l), go(s.r))
            if isinstance(s, Y.Prod):
                return Y.Prod(go(s.l), go(s.r))
            if isinstance(s, Y.Arrow):
                return Y.Arrow(go(s.dom), go(s.cod))
            if isinstance(s, Y.AmbT):
                return Y.AmbT(go(s.body))
            if isinstance(s, Y.Fix):
                return Y.Fix(s.hint, go(s.body))
            raise TypeError(s)

        return go(t)

    # Error plumbing.

    @contextmanager
    def at(self, what):
        self.locus.append(what)
        try:
            yield
        finally:
            self.locus.pop()

    def reject(self, message, expected=None, actual=None):
        raise _Reject(message, tuple(self.locus), expected, actual)

    # Unification restricted to solving flexible variables.

    def unify(self, s, t, _depth=0):
        s = self.resolve(s)
        t = self.resolve(t)
        if _depth > 128:
            self.reject("type matching did not terminate")
        if isinstance(s, Y.TFlex):
            if isinstance(t, Y.TFlex) and t.uid == s.uid:
                return
            if self._occurs(s.uid, t):
                self.reject("cyclic type constraint")
            self.bindings[s.uid] = t
            return
        if isinstance(t, Y.TFlex):
            self.unify(t, s, _depth + 1)
            return
        if Y.type_eq(s, t):
            return
        if not (self.has_flex(s) or self.has_flex(t)):
            if Y.type_equal(self.zonk(s), self.zonk(t)):
                return
            self.reject("type mismatch", expected=self.zonk(s), actual=self.zonk(t))
        if isinstance(s, Y.Fix) and not isinstance(t, Y.Fix):
            self.unify(Y.unfold(s), t, _depth + 1)
            return
        if isinstance(t, Y.Fix) and not isinstance(s, Y.Fix):
            self.unify(s, Y.unfold(t), _depth + 1)
            return
        if type(s) is not type(t):
            self.reject("type mismatch", expected=self.zonk(s), actual=self.zonk(t))
        if isinstance(s, (Y.Sum, Y.Prod)):
            self.unify(s.l, t.l, _depth + 1)
            self.unify(s.r, t.r, _depth + 1)
            return
        if isinstance(s, Y.Arrow):
            self.unify(s.dom, t.dom, _depth + 1)
            self.unify(s.cod, t.cod, _depth + 1)
            return
        if isinstance(s, Y.AmbT):
            self.unify(s.body, t.body, _depth + 1)
            return
        if isinstance(s, Y.Fix):
            self.unify(s.body, t.body, _depth + 1)
            return
        self.reject("type mismatch", expected=self.zonk(s), actual=self.zonk(t))

    def _occurs(self, uid, t):
        t = self.resolve(t)
        if isinstance(t, Y.TFlex):
            return t.uid == uid
        if isinstance(t, (Y.TVar, Y.TBVar, Y._Unit)):
            return False
        if isinstance(t, (Y.Sum, Y.Prod)):
            return self._occurs(uid, t.l) or self._occurs(uid, t.r)
        if isinstance(t, Y.Arrow):
            return self._occurs(uid, t.dom) or self._occurs(uid, t.cod)
        if isinstance(t, (Y.AmbT, Y.Fix)):
            return self._occurs(uid, t.body)
        raise TypeError(t)

    def expose(self, t):
        """Resolve bindings and unfold leading fixpoints."""
        t = self.resolve(t)
        guard = 0
        while isinstance(t, Y.Fix):
            guard += 1
            if guard > 64:
                self.reject("fixpoint never exposes a structural head")
            t = Y.unfold(t)
        return t

    # Synthesis.

    def synth(self, ctx, m):
        if isinstance(m, T.Var):
            if m.name in ctx:
                return ctx[m.name]
            if m.name in self.globals:
                return self.instantiate_global(self.globals[m.name])
            self.reject("unknown variable %r" % m.name)
        if isinstance(m, (T.App, T.SApp)):
            return self.synth_spine(ctx, m)
        if isinstance(m, T.Con):
            if m.tag == "Nil":
                return Y.UNIT
            if m.tag == "Pair":
                return Y.Prod(self.synth(ctx, m.args[0]), self.synth(ctx, m.args[1]))
            if m.tag == "Amb":
                l = self.synth(ctx, m.args[0])
                with self.at("second choice argument"):
                    self.unify(l, self.synth(ctx, m.args[1]))
                return Y.AmbT(l)
            self.reject("cannot synthesize a type for constructor %s" % m.tag)
        if isinstance(m, T.Case):
            st = self.synth(ctx, m.scrut)
            result = None
            for cl, ctx2, body in self.open_clauses(ctx, m, st):
                with self.at("clause %s" % cl.tag):
                    s = self.synth(ctx2, body)
                    if result is None:
                        result = s
                    else:
                        self.unify(result, s)
            return result
        if isinstance(m, T.Rec):
            s = self.expose(self.synth(ctx, m.body))
            if isinstance(s, Y.Arrow):
                self.unify(s.dom, s.cod)
                return s.dom
            self.reject("recursion needs a function body")
        if m is T.BOTTOM:
            self.reject("cannot synthesize a type for bot")
        if isinstance(m, T.Lam):
            self.reject("cannot synthesize a type for a lambda")
        raise TypeError(m)

    def try_synth(self, ctx, m):
        saved_bindings = dict(self.bindings)
        saved_fresh = self._fresh
        try:
            return self.synth(ctx, m)
        except _Reject:
            self.bindings = saved_bindings
            self._fresh = saved_fresh
            return None

    def spine_of(self, m):
        args = []
        while isinstance(m, (T.App, T.SApp)):
            args.append((isinstance(m, T.SApp), m.arg))
            m = m.fun
        args.reverse()
        return m, args

    def synth_spine(self, ctx, m):
        head, args = self.spine_of(m)
        if isinstance(head, T.Lam) and len(args) == 1:
            return self.lam_redex(ctx, head, args[0][1], expected=None)
        with self.at("function position"):
            fty = self.synth(ctx, head)
        doms = []
        for i in range(len(args)):
            fty = self.expose(fty)
            if isinstance(fty, Y.TFlex):
                d, c = self.new_flex(), self.new_flex()
                self.unify(fty, Y.Arrow(d, c))
                fty = Y.Arrow(d, c)
            if not isinstance(fty, Y.Arrow):
                with self.at("argument %d" % (i + 1)):
                    self.reject("too many arguments", actual=self.zonk(fty))
            doms.append(fty.dom)
            fty = fty.cod
        # Arguments whose expected type is already concrete are checked;
        # synthesizable arguments solve the remaining flexible slots.
        pending = list(range(len(args)))
        while pending:
            progressed = False
            for i in list(pending):
                dom = self.zonk(doms[i])
                arg = args[i][1]
                if not self.has_flex(dom):
                    with self.at("argument %d" % (i + 1)):
                        self.check(ctx, arg, dom)
                    pending.remove(i)
                    progressed = True
                    continue
                got = self.try_synth(ctx, arg)
                if got is not None:
                    with self.at("argument %d" % (i + 1)):
                        self.unify(dom, got)
                    pending.remove(i)
                    progressed = True
            if not progressed:
                break
        for i in pending:
            with self.at("argument %d" % (i + 1)):
                self.check(ctx, args[i][1], self.zonk(doms[i]))
        return fty

    def lam_redex(self, ctx, lam, arg, expected):
        """An immediately applied lambda, checked like a local binding."""
        got = self.try_synth(ctx, arg)
        if got is None:
            got = self.new_flex()
            deferred = True
        else:
            deferred = False
        name = self.fresh_name(lam.hint)
        body = T.instantiate(lam.body, (T.Var(name),))
        ctx2 = dict(ctx)
        ctx2[name] = got
        if expected is None:
            result = self.synth(ctx2, body)
        else:
            with self.at("body of applied lambda"):
                self.check(ctx2, body, expected)
            result = expected
        if deferred:
            solved = self.zonk(got)
            if self.has_flex(solved):
                with self.at("strictly applied argument"):
                    self.reject("cannot determine the argument type")
            with self.at("strictly applied argument"):
                self.check(ctx, arg, solved)
        return result

    def open_clauses(self, ctx, m, scrut_type):
        """Yield (clause, extended context, opened body) with checked shapes."""
        sh = self.expose(scrut_type)
        out = []
        for cl in m.clauses:
            if cl.tag == "Nil":
                if not isinstance(sh, Y._Unit):
                    with self.at("clause Nil"):
                        self.reject("scrutinee is not a unit", actual=self.zonk(sh))
                comps = []
            elif cl.tag in ("Left", "Right"):
                if not isinstance(sh, Y.Sum):
                    with self.at("clause %s" % cl.tag):
                        self.reject("scrutinee is not a sum", actual=self.zonk(sh))
                comps = [sh.l if cl.tag == "Left" else sh.r]
            elif cl.tag == "Pair":
                if not isinstance(sh, Y.Prod):
                    with self.at("clause Pair"):
                        self.reject("scrutinee is not a product", actual=self.zonk(sh))
                comps = [sh.l, sh.r]
            else:
                if not isinstance(sh, Y.AmbT):
                    with self.at("clause Amb"):
                        self.reject("scrutinee is not a choice type",
                                    actual=self.zonk(sh))
                comps = [sh.body, sh.body]
            names = [self.fresh_name(h) for h in cl.hints]
            ctx2 = dict(ctx)
            for n, c in zip(names, comps):
                ctx2[n] = c
            body = T.open_clause(cl, [T.Var(n) for n in names])
            out.append((cl, ctx2, body))
        return out

    # Checking.

    def check(self, ctx, m, t):
        if m is T.BOTTOM:
            return
        if isinstance(m, T.Lam):
            h = self.expose(t)
            if isinstance(h, Y.TFlex):
                d, c = self.new_flex(), self.new_flex()
                self.unify(h, Y.Arrow(d, c))
                h = Y.Arrow(d, c)
            if not isinstance(h, Y.Arrow):
                self.reject("a lambda cannot have this type", expected=self.zonk(t))
            name = self.fresh_name(m.hint)
            ctx2 = dict(ctx)
            ctx2[name] = h.dom
            with self.at("body of \\%s" % (m.hint or "_")):
                self.check(ctx2, T.instantiate(m.body, (T.Var(name),)), h.cod)
            return
        if isinstance(m, T.Con):
            h = self.expose(t)
            if isinstance(h, Y.TFlex):
                made = {
                    "Nil": lambda: Y.UNIT,
                    "Left": lambda: Y.Sum(self.new_flex(), self.new_flex()),
                    "Right": lambda: Y.Sum(self.new_flex(), self.new_flex()),
                    "Pair": lambda: Y.Prod(self.new_flex(), self.new_flex()),
                    "Amb": lambda: Y.AmbT(self.new_flex()),
                }[m.tag]()
                self.unify(h, made)
                h = made
            if m.tag == "Nil":
                if not isinstance(h, Y._Unit):
                    self.reject("Nil only has the unit type", expected=self.zonk(t))
                return
            if m.tag in ("Left", "Right"):
                if not isinstance(h, Y.Sum):
                    self.reject("%s needs a sum type" % m.tag, expected=self.zonk(t))
                comp = h.l if m.tag == "Left" else h.r
                with self.at("under %s" % m.tag):
                    self.check(ctx, m.args[0], comp)
                return
            if m.tag == "Pair":
                if not isinstance(h, Y.Prod):
                    self.reject("Pair needs a product type", expected=self.zonk(t))
                with self.at("first pair component"):
                    self.check(ctx, m.args[0], h.l)
                with self.at("second pair component"):
                    self.check(ctx, m.args[1], h.r)
                return
            # Amb checks only against choice types.
            if not isinstance(h, Y.AmbT):
                self.reject("a choice term needs a choice type",
                            expected=self.zonk(t))
            with self.at("first choice argument"):
                self.check(ctx, m.args[0], h.body)
            with self.at("second choice argument"):
                self.check(ctx, m.args[1], h.body)
            return
        if isinstance(m, T.Rec):
            with self.at("recursion body"):
                self.check(ctx, m.body, Y.Arrow(t, t))
            return
        if isinstance(m, T.Case):
            with self.at("case scrutinee"):
                st = self.synth(ctx, m.scrut)
            for cl, ctx2, body in self.open_clauses(ctx, m, st):
                with self.at("clause %s" % cl.tag):
                    self.check(ctx2, body, t)
            return
        if isinstance(m, (T.App, T.SApp)):
            head, args = self.spine_of(m)
            if isinstance(head, T.Lam) and len(args) == 1:
                self.lam_redex(ctx, head, args[0][1], expected=t)
                return
            got = self.synth_spine(ctx, m)
            self.unify(t, got)
            return
        if isinstance(m, T.Var):
            got = self.synth(ctx, m)
            self.unify(t, got)
            return
        raise TypeError(m)


def check(ctx, m, t, globals_=None):
    """Check a judgment; returns a TypingReport.

    ``ctx`` maps free term variables to types.  ``globals_`` optionally maps
    definition names to declared types used polymorphically.  The expected
    type and every context entry must be regular (free type variables are
    read as standing for determined types); otherwise NonRegularTypeError.
    """
    for name, ty in list((ctx or {}).items()):
        if not Y.is_regular(ty, free_vars_determined=True):
            raise NonRegularTypeError("context entry %s has a non-regular type" % name)
    if not Y.is_regular(t, free_vars_determined=True):
        raise NonRegularTypeError("expected type is not regular: %r" % t)
    checker = _Checker(globals_)
    try:
        checker.check(dict(ctx or {}), m, t)
    except _Reject as r:
        return r.report
    return TypingReport(True)


def check_definitions(defs):
    """Check a definition list in order; returns (name, type, report) rows.

    Definitions without a declared type get report None; they cannot be
    referenced by later definitions.
    """
    rows = []
    globals_ = {}
    for d in defs:
        if d.declared is None:
            rows.append((d.name, None, None))
            continue
        report = check({}, d.body, d.declared, globals_=globals_)
        rows.append((d.name, d.declared, report))
        if report.accepted:
            globals_[d.name] = d.declared
    return rows

"""Small-step operational semantics with fair choice scheduling.

Three layers of reduction:

* the deterministic head reduction (tags ``s-i`` .. ``s-ix``),
* the choice layer at a choice-headed focus (tags ``c-i``, ``c-ii``,
  ``c-ii'``, ``c-iii``, ``c-iii'``), and
* the parallel layer that steps every child of a data constructor at once
  (tags ``p-i``, ``p-ii``, ``p-iii``).

A *locus* is a choice-headed position reachable from the root through data
constructors only; one parallel step resolves one choice action per locus,
chosen by the schedule.  Stable subterms (values, ``bot``, ``Amb(bot,bot)``)
only ever step to themselves, so the engine skips them; a run whose whole
term is stable has converged and further steps are identity.
"""

from __future__ import annotations

import random

from . import terms as T
from .errors import (BudgetError, InvalidPickError, OpenTermError,
                     UnfairScheduleError)
from .domain import project_MD, truncate


def is_whnf(m):
    """Constructor-headed (including the choice constructor) or a lambda."""
    return isinstance(m, (T.Con, T.Lam))


def is_dwhnf(m):
    """A w.h.n.f. that does not begin with the choice constructor."""
    if isinstance(m, T.Lam):
        return True
    return isinstance(m, T.Con) and m.tag != "Amb"


def is_bot_like(m):
    """Shapes whose denotation is forced to bot.

    These are ``bot`` itself, a constructor applied as a function (strictly
    or not), a case over a lambda, and a case over a constructor with no
    matching clause.  W.h.n.f.s are never bot-like.
    """
    if m is T.BOTTOM:
        return True
    if isinstance(m, (T.App, T.SApp)):
        return isinstance(m.fun, T.Con)
    if isinstance(m, T.Case):
        s = m.scrut
        if isinstance(s, T.Lam):
            return True
        return isinstance(s, T.Con) and m.clause_for(s.tag) is None
    return False


def _head_step(m, path=()):
    """The unique head successor with its rule tag and redex position.

    Returns None on a w.h.n.f.  Raises OpenTermError at a free variable in
    reducible position.
    """
    if isinstance(m, T.Var):
        raise OpenTermError("free variable %r in head position" % m.name)
    if is_whnf(m):
        return None
    if is_bot_like(m):
        return T.BOTTOM, "s-ix", path
    if isinstance(m, T.App):
        f = m.fun
        if isinstance(f, T.Lam):
            return T.instantiate(f.body, (m.arg,)), "s-i", path
        f2, tag, at = _head_step(f, path + (0,))
        return T.App(f2, m.arg), tag, at
    if isinstance(m, T.SApp):
        if is_whnf(m.arg):
            f = m.fun
            if isinstance(f, T.Lam):
                return T.instantiate(f.body, (m.arg,)), "s-iii", path
            f2, tag, at = _head_step(f, path + (0,))
            return T.SApp(f2, m.arg), tag, at
        a2, tag, at = _head_step(m.arg, path + (1,))
        return T.SApp(m.fun, a2), tag, at
    if isinstance(m, T.Rec):
        return T.App(m.body, m), "s-vi", path
    if isinstance(m, T.Case):
        s = m.scrut
        if isinstance(s, T.Con):
            cl = m.clause_for(s.tag)
            return T.open_clause(cl, s.args), "s-vii", path
        s2, tag, at = _head_step(s, path + (0,))
        return T.Case(s2, m.clauses), tag, at
    raise TypeError(m)


def step_head(m):
    """Public head step: the successor program, or None on a w.h.n.f."""
    r = _head_step(m)
    return None if r is None else r[0]


def head_normalize(m, fuel):
    """Iterate head steps up to ``fuel``; None when no w.h.n.f. was reached.

    ``bot`` is its own successor, so it is treated as already divergent
    rather than burning the budget.
    """
    for _ in range(fuel):
        if m is T.BOTTOM:
            return None
        if is_whnf(m):
            return m
        m = _head_step(m)[0]
    return m if is_whnf(m) else None


# Choice layer.  Actions are named so schedules can be written down.

STEP_LEFT = "left"
STEP_RIGHT = "right"
COMMIT_LEFT = "commit-left"
COMMIT_RIGHT = "commit-right"


def _choice_options(m):
    """Available actions at a choice-headed term, with tags and results.

    Returns a list of (action, tag, successor).  A side that can head-step
    supports the stepping action; a side in w.h.n.f. supports the commit.
    Every closed side supports exactly one of the two.
    """
    l, r = m.args
    opts = []
    sl = None if is_whnf(l) else _head_step(l)
    if sl is not None:
        opts.append((STEP_LEFT, "c-ii", T.Con("Amb", (sl[0], r))))
    sr = None if is_whnf(r) else _head_step(r)
    if sr is not None:
        opts.append((STEP_RIGHT, "c-ii'", T.Con("Amb", (l, sr[0]))))
    if is_whnf(l):
        opts.append((COMMIT_LEFT, "c-iii", l))
    if is_whnf(r):
        opts.append((COMMIT_RIGHT, "c-iii'", r))
    return opts


def step_choice_successors(m):
    """All choice-layer successors as (tag, program) pairs.

    Empty exactly on deterministic w.h.n.f.s.
    """
    T.require_closed(m)
    if isinstance(m, T.Con) and m.tag == "Amb":
        return [(tag, res) for (_a, tag, res) in _choice_options(m)]
    if is_dwhnf(m):
        return []
    step = _head_step(m)
    return [("c-i", step[0])] if step is not None else []


# Schedules.

class Schedule:
    """Scheduling policy plus fairness window.

    ``policy`` is ``"round-robin"``, ``"seeded"`` or ``"explicit"``.  The
    fairness window ``k`` bounds how long a live, serviceable side may go
    unserved: generated policies never exceed ``k - 1`` consecutive actions
    that ignore such a side, and explicit pick lists are checked against the
    same bound while they run.
    """

    def __init__(self, policy, k, seed=None, picks=None):
        if k < 1:
            raise ValueError("fairness window must be at least 1")
        self.policy = policy
        self.k = k
        self.seed = seed
        self.picks = list(picks) if picks is not None else None

    @classmethod
    def round_robin(cls, k=2):
        return cls("round-robin", k)

    @classmethod
    def seeded(cls, seed, k=4):
        return cls("seeded", k, seed=seed)

    @classmethod
    def explicit(cls, picks, k=2):
        return cls("explicit", k, picks=picks)

    def __repr__(self):
        if self.policy == "seeded":
            return "Schedule(seeded, seed=%r, k=%d)" % (self.seed, self.k)
        return "Schedule(%s, k=%d)" % (self.policy, self.k)


class _SchedulerState:
    """Per-run mutable scheduling state: turn bits and starvation counters."""

    def __init__(self, schedule):
        self.schedule = schedule
        self.turn = {}
        self.starved = {}
        self.queue = list(schedule.picks) if schedule.picks is not None else []
        self.step_index = 0

    def decide(self, path, options):
        avail = [o[0] for o in options]
        sched = self.schedule
        if sched.policy == "explicit" and self.queue:
            want = self.queue.pop(0)
            for opt in options:
                if opt[0] == want:
                    self._note(path, avail, want)
                    self._validate(path)
                    return opt
            raise InvalidPickError("pick %r not available at locus %r; have %s"
                                   % (want, path, avail))
        if sched.policy == "seeded":
            forced = self._forced(path, avail)
            if forced is not None:
                choice = forced
            else:
                rng = random.Random("%s:%d:%r" % (sched.seed, self.step_index, path))
                choice = rng.choice(avail)
            self._note(path, avail, choice)
            for opt in options:
                if opt[0] == choice:
                    return opt
        # Round robin (also the fallback after an explicit list runs out):
        # act on the side whose turn it is, stepping when possible and
        # committing when the side is already a value.
        side = self.turn.get(path, 0)
        self.turn[path] = 1 - side
        prefer = ((STEP_LEFT, COMMIT_LEFT) if side == 0
                  else (STEP_RIGHT, COMMIT_RIGHT))
        for want in prefer:
            for opt in options:
                if opt[0] == want:
                    self._note(path, avail, opt[0])
                    return opt
        # The preferred side has no action only if the term is malformed.
        raise InvalidPickError("no action available for side %d at %r"
                               % (side, path))

    def _side_of(self, action):
        return 0 if action in (STEP_LEFT, COMMIT_LEFT) else 1

    def _note(self, path, avail, chosen):
        counts = self.starved.setdefault(path, [0, 0])
        chosen_side = self._side_of(chosen)
        for side, acts in ((0, (STEP_LEFT, COMMIT_LEFT)),
                           (1, (STEP_RIGHT, COMMIT_RIGHT))):
            has_action = any(a in avail for a in acts)
            if side == chosen_side:
                counts[side] = 0
            elif has_action:
                counts[side] += 1

    def _forced(self, path, avail):
        counts = self.starved.get(path, [0, 0])
        k = self.schedule.k
        for side, acts in ((0, (STEP_LEFT, COMMIT_LEFT)),
                           (1, (STEP_RIGHT, COMMIT_RIGHT))):
            if counts[side] >= k - 1:
                for a in acts:
                    if a in avail:
                        return a
        return None

    def _validate(self, path):
        counts = self.starved.get(path, [0, 0])
        k = self.schedule.k
        if counts[0] >= k or counts[1] >= k:
            raise UnfairScheduleError(
                "explicit schedule starves a live side at locus %r beyond "
                "window %d" % (path, k))


# Parallel layer.

class TraceStep:
    __slots__ = ("tag", "path", "program", "actions")

    def __init__(self, tag, path, program, actions):
        self.tag = tag
        self.path = path
        self.program = program
        self.actions = actions

    def __repr__(self):
        return "<step %s at %r>" % (self.tag, self.path)


class Trace:
    """A recorded parallel-reduction prefix.

    ``steps[i].program`` is the term after step ``i``; ``actions`` lists the
    individual (tag, path, available-actions) leaf rewrites of a composite
    step.  Snapshots of the data part are computed on demand and form an
    increasing chain.
    """

    def __init__(self, initial):
        self.initial = initial
        self.steps = []
        self.converged_at = None
        self.dwhnf_at = 0 if is_dwhnf(initial) else None
        self._final = initial

    @property
    def final(self):
        return self._final

    @property
    def converged(self):
        return self.converged_at is not None

    def programs(self):
        yield self.initial
        for s in self.steps:
            yield s.program

    def md_snapshots(self):
        for p in self.programs():
            yield project_MD(p)


def _parallel_step(m, path, decide, actions):
    """One parallel step; ``decide(path, options)`` resolves choice loci."""
    if m.stable:
        return m
    if isinstance(m, T.Con):
        if m.tag == "Amb":
            options = _choice_options(m)
            action, tag, result = decide(path, options)
            actions.append((tag, path, tuple(o[0] for o in options)))
            return result
        kids = m.args
        if len(kids) == 2:
            a, b = kids
            a2 = a if a.stable else _parallel_step(a, path + (0,), decide, actions)
            b2 = b if b.stable else _parallel_step(b, path + (1,), decide, actions)
            if a2 is a and b2 is b:
                return m
            return T.Con(m.tag, (a2, b2))
        k = kids[0]
        k2 = _parallel_step(k, path + (0,), decide, actions)
        if k2 is k:
            return m
        return T.Con(m.tag, (k2,))
    # Lambdas are stable and bot self-steps; anything else head-steps.
    res, tag, at = _head_step(m, path)
    actions.append((tag, at, ()))
    return res


def step_parallel(m, picks):
    """One parallel step under explicit picks.

    ``picks`` maps locus paths to action names, or is a list of action names
    consumed in locus order, or a callable ``(path, available) -> action``.
    """
    T.require_closed(m)
    if isinstance(picks, dict):
        def decide(path, options):
            if path in picks:
                want = picks[path]
                for opt in options:
                    if opt[0] == want:
                        return opt
                raise InvalidPickError("pick %r not available at %r"
                                       % (want, path))
            raise InvalidPickError("no pick supplied for locus %r" % path)
    elif callable(picks):
        def decide(path, options):
            want = picks(path, [o[0] for o in options])
            for opt in options:
                if opt[0] == want:
                    return opt
            raise InvalidPickError("pick %r not available at %r" % (want, path))
    else:
        queue = list(picks)

        def decide(path, options):
            if not queue:
                raise InvalidPickError("ran out of picks at locus %r" % path)
            want = queue.pop(0)
            for opt in options:
                if opt[0] == want:
                    return opt
            raise InvalidPickError("pick %r not available at %r" % (want, path))

    actions = []
    return _parallel_step(m, (), decide, actions)


def run_extract(m, schedule, fuel, depth, record_trace=True, stop=None):
    """Run the parallel reduction under a schedule and project the result.

    Performs at most ``fuel`` parallel steps, stopping early once the whole
    term is stable (all further steps are identity) or once the optional
    ``stop`` predicate accepts the current term.  Returns the final data
    part truncated at ``depth`` together with the trace.
    """
    T.require_closed(m)
    if fuel < 0 or depth < 0:
        raise ValueError("fuel and depth must be nonnegative")
    state = _SchedulerState(schedule)
    trace = Trace(m)
    cur = m
    for i in range(fuel):
        if cur.stable:
            trace.converged_at = i
            break
        if stop is not None and stop(cur):
            break
        state.step_index = i
        actions = []
        nxt = _parallel_step(cur, (), state.decide, actions)
        if record_trace:
            if isinstance(cur, T.Con) and cur.tag != "Amb":
                step = TraceStep("p-ii", (), nxt, tuple(actions))
            else:
                tag, at, _avail = actions[0]
                step = TraceStep(tag, at, nxt, tuple(actions))
            trace.steps.append(step)
        cur = nxt
        trace._final = cur
        if trace.dwhnf_at is None and is_dwhnf(cur):
            trace.dwhnf_at = i + 1
    if cur.stable and trace.converged_at is None:
        trace.converged_at = fuel
    return truncate(project_MD(cur), depth), trace


def enumerate_schedules(m, steps, node_budget=20000):
    """All data parts reachable within ``steps`` parallel steps.

    Exhaustively explores every combination of choice actions, deduplicating
    states by their printed form.  Intended for tiny programs; raises
    BudgetError when the explored frontier exceeds ``node_budget`` states.
    """
    T.require_closed(m)
    seen = {T.to_source(m): m}
    frontier = [m]
    results = {project_MD(m)}
    visited = 1
    for _ in range(steps):
        nxt = []
        for term in frontier:
            if term.stable:
                continue
            for succ in _all_parallel_successors(term):
                key = T.to_source(succ)
                if key in seen:
                    continue
                visited += 1
                if visited > node_budget:
                    raise BudgetError("schedule enumeration exceeded %d states"
                                      % node_budget)
                seen[key] = succ
                results.add(project_MD(succ))
                nxt.append(succ)
        if not nxt:
            break
        frontier = nxt
    return results


def _all_parallel_successors(m):
    if m.stable:
        return [m]
    if isinstance(m, T.Con):
        if m.tag == "Amb":
            return [res for (_a, _t, res) in _choice_options(m)]
        per_child = [_all_parallel_successors(k) for k in m.args]
        out = []
        _product(per_child, 0, [], lambda kids: out.append(T.Con(m.tag, tuple(kids))))
        return out
    return [_head_step(m)[0]]


def _product(lists, i, acc, emit):
    if i == len(lists):
        emit(list(acc))
        return
    for x in lists[i]:
        acc.append(x)
        _product(lists, i + 1, acc, emit)
        acc.pop()


def check_fair_window(trace, k):
    """Verify no recorded locus starved a serviceable side beyond ``k - 1``.

    Looks at the per-locus sequence of choice actions: a violation is more
    than ``k - 1`` consecutive actions ignoring a side while that side had an
    available action.  Returns the list of violations (empty when fair).
    """
    runs = {}
    violations = []
    for step in trace.steps:
        for tag, path, avail in step.actions:
            if not tag.startswith("c-") or tag == "c-i":
                continue
            left_act = tag in ("c-ii", "c-iii")
            counts = runs.setdefault(path, [0, 0])
            for side, acts in ((0, (STEP_LEFT, COMMIT_LEFT)),
                               (1, (STEP_RIGHT, COMMIT_RIGHT))):
                chosen = (side == 0) == left_act
                has_action = any(a in avail for a in acts)
                if chosen:
                    counts[side] = 0
                elif has_action:
                    counts[side] += 1
                    if counts[side] > k - 1:
                        violations.append((path, side, counts[side]))
            if tag in ("c-iii", "c-iii'"):
                runs.pop(path, None)
    return violations


# Thread-racing backend.  Semantically the same extraction, implemented with
# one worker per choice side racing to a once-writable commit slot.  Its
# interleavings are wall-clock dependent, so it is excluded from the
# oracle-equivalence tests and offered behind an explicit opt-in.

def run_extract_parallel(m, fuel, depth):
    import threading

    T.require_closed(m)

    def extract(term, budget):
        v = head_normalize(term, budget)
        if v is None:
            return None  # divergent within budget
        if isinstance(v, T.Lam):
            return project_MD(v)
        if v.tag == "Amb":
            slot = {}
            lock = threading.Lock()
            done = threading.Event()

            def race(side_term, name):
                w = head_normalize(side_term, budget)
                if w is not None:
                    with lock:
                        if "winner" not in slot:
                            slot["winner"] = w
                            done.set()

            ts = [threading.Thread(target=race, args=(s, i), daemon=True)
                  for i, s in enumerate(v.args)]
            for t in ts:
                t.start()
            done.wait(timeout=30.0)
            if "winner" not in slot:
                return None
            return extract(slot["winner"], budget)
        out = []
        for child in v.args:
            got = extract(child, budget)
            out.append(got)
        from . import domain as D
        if v.tag == "Nil":
            return D.NIL
        if v.tag == "Left":
            return D.Le(out[0] if out[0] is not None else D.BOT)
        if v.tag == "Right":
            return D.Ri(out[0] if out[0] is not None else D.BOT)
        return D.Pair(out[0] if out[0] is not None else D.BOT,
                      out[1] if out[1] is not None else D.BOT)

    got = extract(m, fuel)
    from .domain import BOT
    return truncate(got if got is not None else BOT, depth)

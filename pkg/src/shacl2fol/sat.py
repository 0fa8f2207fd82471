"""Small CDCL SAT solver with two-watched-literal propagation.

Clauses are tuples of nonzero integers (negative = negated variable), as
in DIMACS.  Implements first-UIP clause learning with backjumping,
activity-based branching, saved phases, and geometric restarts — enough
to handle the groundings the built-in prover produces.
"""

from __future__ import annotations

import time
from typing import Iterable, Optional


class TimeBudgetExceeded(Exception):
    pass


def solve(
    clauses: Iterable[tuple[int, ...]],
    deadline: Optional[float] = None,
) -> Optional[dict[int, bool]]:
    """Return a satisfying assignment (may omit don't-care vars) or None.

    Raises TimeBudgetExceeded when the wall-clock deadline passes.
    """
    cls: list[list[int]] = []
    units: list[int] = []
    all_vars: set[int] = set()
    for c in clauses:
        c = list(dict.fromkeys(c))
        all_vars.update(abs(l) for l in c)
        if any(-lit in c for lit in c):
            continue
        if not c:
            return None
        if len(c) == 1:
            units.append(c[0])
            continue
        cls.append(c)

    watches: dict[int, list[int]] = {}
    for idx, c in enumerate(cls):
        watches.setdefault(c[0], []).append(idx)
        watches.setdefault(c[1], []).append(idx)

    assign: dict[int, bool] = {}
    level: dict[int, int] = {}
    reason: dict[int, Optional[int]] = {}
    trail: list[int] = []
    trail_lim: list[int] = []
    qhead = 0
    phase: dict[int, bool] = {}

    activity: dict[int, float] = {v: 0.0 for v in all_vars}
    for c in cls:
        for lit in c:
            activity[abs(lit)] += 1.0
    var_inc = 1.0

    def value(lit: int) -> Optional[bool]:
        v = assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def enqueue(lit: int, why: Optional[int]) -> bool:
        v = value(lit)
        if v is not None:
            return v
        var = abs(lit)
        assign[var] = lit > 0
        level[var] = len(trail_lim)
        reason[var] = why
        trail.append(lit)
        return True

    def propagate() -> Optional[int]:
        """Unit propagation; returns a conflicting clause index or None."""
        nonlocal qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            falsified = -p
            ws = watches.get(falsified)
            if not ws:
                continue
            new_ws: list[int] = []
            for pos, ci in enumerate(ws):
                c = cls[ci]
                if c[0] == falsified:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) is True:
                    new_ws.append(ci)
                    continue
                moved = False
                for k in range(2, len(c)):
                    if value(c[k]) is not False:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                new_ws.append(ci)
                if value(c[0]) is False:
                    new_ws.extend(ws[pos + 1:])
                    watches[falsified] = new_ws
                    qhead = len(trail)
                    return ci
                enqueue(c[0], ci)
            watches[falsified] = new_ws
        return None

    def bump(var: int) -> None:
        nonlocal var_inc
        activity[var] += var_inc
        if activity[var] > 1e100:
            for v in activity:
                activity[v] *= 1e-100
            var_inc *= 1e-100

    def backtrack(to_level: int) -> None:
        nonlocal qhead
        while len(trail_lim) > to_level:
            mark = trail_lim.pop()
            while len(trail) > mark:
                lit = trail.pop()
                var = abs(lit)
                phase[var] = assign[var]
                del assign[var], level[var], reason[var]
        qhead = len(trail)

    def analyze(confl: int) -> tuple[list[int], int]:
        """First-UIP learned clause and the level to backjump to."""
        learnt: list[int] = []
        seen: set[int] = set()
        counter = 0
        p: Optional[int] = None
        idx = len(trail) - 1
        current = len(trail_lim)
        reason_clause = cls[confl]
        while True:
            for q in reason_clause:
                if p is not None and q == p:
                    continue
                var = abs(q)
                if var in seen or level[var] == 0:
                    continue
                seen.add(var)
                bump(var)
                if level[var] == current:
                    counter += 1
                else:
                    learnt.append(q)
            while abs(trail[idx]) not in seen:
                idx -= 1
            p = trail[idx]
            var = abs(p)
            seen.discard(var)
            counter -= 1
            if counter == 0:
                break
            reason_clause = cls[reason[var]]
            idx -= 1
        learnt.insert(0, -p)
        if len(learnt) == 1:
            return learnt, 0
        # second-highest decision level among the learned literals
        jump = max(level[abs(q)] for q in learnt[1:])
        hi = max(range(1, len(learnt)), key=lambda i: level[abs(learnt[i])])
        learnt[1], learnt[hi] = learnt[hi], learnt[1]
        return learnt, jump

    for u in units:
        if not enqueue(u, None):
            return None
    if propagate() is not None:
        return None

    conflicts = 0
    restart_limit = 100.0
    since_restart = 0
    while True:
        confl = propagate()
        if confl is not None:
            conflicts += 1
            since_restart += 1
            if deadline is not None and conflicts % 64 == 0 \
                    and time.monotonic() > deadline:
                raise TimeBudgetExceeded()
            if not trail_lim:
                return None
            learnt, jump = analyze(confl)
            var_inc /= 0.95
            backtrack(jump)
            if len(learnt) == 1:
                if not enqueue(learnt[0], None):
                    return None
            else:
                cls.append(learnt)
                ci = len(cls) - 1
                watches.setdefault(learnt[0], []).append(ci)
                watches.setdefault(learnt[1], []).append(ci)
                enqueue(learnt[0], ci)
            continue
        if since_restart >= restart_limit:
            since_restart = 0
            restart_limit *= 1.5
            backtrack(0)
            continue
        var = None
        best = -1.0
        for v in all_vars:
            if v not in assign and activity[v] > best:
                best = activity[v]
                var = v
        if var is None:
            return dict(assign)
        trail_lim.append(len(trail))
        enqueue(var if phase.get(var, False) else -var, None)

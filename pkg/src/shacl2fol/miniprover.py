"""Built-in desk-scale prover for the emitted TPTP problems.

Two sound, incomplete procedures over the clausal form:

* finite model search: MACE-style flattening, then propositional grounding
  over increasing domain sizes; any model found is a genuine first-order
  model, so the answer Satisfiable is sound.
* ground refutation: clause instantiation over a bounded Herbrand universe
  plus ground equality axioms; a propositionally unsatisfiable grounding
  witnesses first-order unsatisfiability, so Unsatisfiable is sound.

If neither procedure concludes within its bounds the status is GaveUp
(or Timeout when the wall clock ran out).  The command-line entry point
prints a standard `% SZS status <Status>` line.
"""

from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import sat
from .clausify import EQ, Clause, Literal, clause_vars, clausify
from .fol import Const, Func, Term, Var
from .tptp_parse import parse_tptp


@dataclass
class ProverResult:
    status: str  # Satisfiable | Unsatisfiable | GaveUp | Timeout
    detail: str = ""


# --- MACE-style flattening --------------------------------------------------

def _flatten_clause(cl: Clause, fresh: "_FreshVars") -> list[Literal]:
    """Rewrite so every literal is variable-only except one shallow term.

    Allowed literal shapes afterwards: P(vars...), var=var, var=const,
    var=f(vars...), and their negations.
    """
    lits = list(cl)
    changed = True
    while changed:
        changed = False
        for i, lit in enumerate(lits):
            if lit.pred == EQ:
                left, right = lit.args
                if not isinstance(left, Var) and not isinstance(right, Var):
                    z = Var(fresh.next())
                    lits[i] = Literal(lit.positive, EQ, (z, right))
                    lits.append(Literal(False, EQ, (z, left)))
                    changed = True
                    break
                if isinstance(right, Var) and not isinstance(left, Var):
                    lits[i] = Literal(lit.positive, EQ, (right, left))
                    changed = True
                    break
                # var = f(...) with a non-var argument inside
                if isinstance(right, Func):
                    for j, a in enumerate(right.args):
                        if not isinstance(a, Var):
                            z = Var(fresh.next())
                            new_args = right.args[:j] + (z,) + right.args[j + 1:]
                            lits[i] = Literal(lit.positive, EQ, (left, Func(right.name, new_args)))
                            lits.append(Literal(False, EQ, (z, a)))
                            changed = True
                            break
                    if changed:
                        break
            else:
                for j, a in enumerate(lit.args):
                    if not isinstance(a, Var):
                        z = Var(fresh.next())
                        new_args = lit.args[:j] + (z,) + lit.args[j + 1:]
                        lits[i] = Literal(lit.positive, lit.pred, new_args)
                        lits.append(Literal(False, EQ, (z, a)))
                        changed = True
                        break
                if changed:
                    break
    return lits


class _FreshVars:
    def __init__(self):
        self.n = 0

    def next(self) -> str:
        self.n += 1
        return f"FL{self.n}"


def _collect_signature(clauses: list[Clause]):
    preds: dict[str, int] = {}
    consts: set[str] = set()
    funcs: dict[str, int] = {}

    def scan(t: Term):
        if isinstance(t, Const):
            consts.add(t.name)
        elif isinstance(t, Func):
            funcs[t.name] = len(t.args)
            for a in t.args:
                scan(a)

    for cl in clauses:
        for lit in cl:
            if lit.pred != EQ:
                preds[lit.pred] = len(lit.args)
            for a in lit.args:
                scan(a)
    return preds, consts, funcs


# --- finite model search ----------------------------------------------------

class _VarPool:
    def __init__(self):
        self.ids: dict[tuple, int] = {}

    def get(self, key: tuple) -> int:
        if key not in self.ids:
            self.ids[key] = len(self.ids) + 1
        return self.ids[key]


def find_model(
    clauses: list[Clause],
    domain_size: int,
    deadline: Optional[float] = None,
) -> Optional[dict]:
    """Search for a model over a fixed domain size; None if none exists."""
    fresh = _FreshVars()
    flat = [_flatten_clause(cl, fresh) for cl in clauses]
    preds, consts, funcs = _collect_signature(clauses)
    domain = range(domain_size)
    pool = _VarPool()
    prop: list[tuple[int, ...]] = []

    def lit_code(lit: Literal, env: dict[str, int]) -> Optional[int]:
        """Propositional literal; None = literal true, 0 = literal false."""
        sign = 1 if lit.positive else -1
        if lit.pred == EQ:
            left, right = lit.args
            lv = env[left.name]
            if isinstance(right, Var):
                truth = (lv == env[right.name]) == lit.positive
                return None if truth else 0
            if isinstance(right, Const):
                return sign * pool.get(("a", right.name, lv))
            assert isinstance(right, Func)
            args = tuple(env[a.name] for a in right.args)
            return sign * pool.get(("f", right.name, args, lv))
        args = tuple(env[a.name] for a in lit.args)
        return sign * pool.get(("p", lit.pred, args))

    for lits in flat:
        vs = sorted({v.name for lit in lits for a in lit.args for v in _vars_of(a)})
        if len(domain) ** len(vs) > 400_000:
            raise sat.TimeBudgetExceeded()
        for values in itertools.product(domain, repeat=len(vs)):
            env = dict(zip(vs, values))
            out = []
            is_true = False
            for lit in lits:
                code = lit_code(lit, env)
                if code is None:
                    is_true = True
                    break
                if code == 0:
                    continue
                out.append(code)
            if is_true:
                continue
            prop.append(tuple(out))
        if deadline is not None and time.monotonic() > deadline:
            raise sat.TimeBudgetExceeded()

    # totality and functionality for constants and skolem functions
    for c in consts:
        row = [pool.get(("a", c, d)) for d in domain]
        prop.append(tuple(row))
        for x, y in itertools.combinations(row, 2):
            prop.append((-x, -y))
    for fname, arity in funcs.items():
        for args in itertools.product(domain, repeat=arity):
            row = [pool.get(("f", fname, args, d)) for d in domain]
            prop.append(tuple(row))
            for x, y in itertools.combinations(row, 2):
                prop.append((-x, -y))

    model = sat.solve(prop, deadline=deadline)
    if model is None:
        return None
    table = {key: model.get(vid, False) for key, vid in pool.ids.items()}
    return {"size": domain_size, "table": table}


def _vars_of(t: Term):
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Func):
        for a in t.args:
            yield from _vars_of(a)


# --- ground refutation ------------------------------------------------------

def refute(
    clauses: list[Clause],
    max_universe: int = 24,
    max_ground_clauses: int = 400_000,
    deadline: Optional[float] = None,
    with_skolem_terms: bool = True,
) -> Optional[bool]:
    """True if a bounded grounding is propositionally unsatisfiable.

    Returns None when the grounding was satisfiable or too large (both
    inconclusive for the first-order question).
    """
    preds, consts, funcs = _collect_signature(clauses)
    base: list[Term] = [Const(c) for c in sorted(consts)]
    if not base:
        base = [Const("herbrand_c0")]
    universe: list[Term] = list(base)
    if with_skolem_terms:
        for fname, arity in sorted(funcs.items()):
            for args in itertools.product(base, repeat=arity):
                if len(universe) >= max_universe:
                    break
                universe.append(Func(fname, tuple(args)))

    pool = _VarPool()
    term_ids = {t: i for i, t in enumerate(universe)}

    def ground_term(t: Term, env: dict[str, Term]) -> Optional[Term]:
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Const):
            return t
        args = [ground_term(a, env) for a in t.args]
        if any(a is None for a in args):
            return None
        gt = Func(t.name, tuple(args))
        return gt if gt in term_ids else None

    def eq_code(a: Term, b: Term, positive: bool) -> Optional[int]:
        if a == b:
            return None if positive else 0  # None = literal true, 0 = literal false
        ia, ib = term_ids[a], term_ids[b]
        if ia > ib:
            ia, ib = ib, ia
        v = pool.get(("e", ia, ib))
        return v if positive else -v

    prop: list[tuple[int, ...]] = []

    def emit(lits: list[Optional[int]]) -> None:
        out = []
        for code in lits:
            if code is None:
                return  # clause true
            if code == 0:
                continue  # literal false
            out.append(code)
        prop.append(tuple(out))

    for cl in clauses:
        vs = sorted(clause_vars(cl))
        n_inst = len(universe) ** len(vs)
        if n_inst * max(len(cl), 1) > max_ground_clauses:
            return None
        for values in itertools.product(universe, repeat=len(vs)):
            env = dict(zip(vs, values))
            codes: list[Optional[int]] = []
            skip = False
            for lit in cl:
                if lit.pred == EQ:
                    a = ground_term(lit.args[0], env)
                    b = ground_term(lit.args[1], env)
                    if a is None or b is None:
                        skip = True  # instance mentions a term outside the universe
                        break
                    codes.append(eq_code(a, b, lit.positive))
                else:
                    args = [ground_term(a, env) for a in lit.args]
                    if any(a is None for a in args):
                        skip = True
                        break
                    ids = tuple(term_ids[a] for a in args)
                    v = pool.get(("p", lit.pred, ids))
                    codes.append(v if lit.positive else -v)
            if not skip:
                emit(codes)
        if deadline is not None and time.monotonic() > deadline:
            raise sat.TimeBudgetExceeded()

    # ground equality theory: transitivity and congruence (symmetry and
    # reflexivity are folded into the canonical eq_code encoding)
    ids = list(range(len(universe)))
    if len(ids) <= 16:
        for triple in itertools.combinations(ids, 3):
            # one clause per choice of conclusion pair: the other two
            # canonical atoms jointly imply it
            for k in range(3):
                rest = [t for i, t in enumerate(triple) if i != k]
                conclusion = pool.get(("e", *sorted(rest)))
                shared = triple[k]
                e1 = pool.get(("e", *sorted((shared, rest[0]))))
                e2 = pool.get(("e", *sorted((shared, rest[1]))))
                prop.append((-e1, -e2, conclusion))
    # predicate congruence, one argument position at a time
    for pname, arity in sorted(preds.items()):
        if len(universe) ** (arity + 1) * arity > max_ground_clauses:
            continue
        for args in itertools.product(ids, repeat=arity):
            pa = pool.get(("p", pname, args))
            for pos in range(arity):
                for other in ids:
                    if other == args[pos]:
                        continue
                    new_args = args[:pos] + (other,) + args[pos + 1:]
                    pb = pool.get(("p", pname, new_args))
                    e = pool.get(("e", *sorted((args[pos], other))))
                    prop.append((-pa, -e, pb))
    # skolem function congruence over universe members
    for t in universe:
        if isinstance(t, Func):
            for u in universe:
                if isinstance(u, Func) and u.name == t.name and u != t:
                    arg_eqs = []
                    ok = True
                    for a, b in zip(t.args, u.args):
                        if a == b:
                            continue
                        arg_eqs.append(pool.get(("e", *sorted((term_ids[a], term_ids[b])))))
                    it, iu = sorted((term_ids[t], term_ids[u]))
                    prop.append(tuple(-e for e in arg_eqs) + (pool.get(("e", it, iu)),))

    if len(prop) > max_ground_clauses:
        return None
    result = sat.solve(prop, deadline=deadline)
    if result is None:
        return True
    return None


# --- orchestration ----------------------------------------------------------

def decide_clauses(
    clauses: list[Clause],
    timeout_s: float = 10.0,
    max_domain: Optional[int] = None,
) -> ProverResult:
    start = time.monotonic()
    deadline = start + timeout_s
    _, consts, _ = _collect_signature(clauses)
    lower = max(1, len(consts))
    if max_domain is None:
        max_domain = lower + 3

    try:
        # cheap refutation pass without skolem-term instances
        got = refute(
            clauses, deadline=min(deadline, time.monotonic() + timeout_s * 0.25),
            with_skolem_terms=False,
        )
        if got:
            return ProverResult("Unsatisfiable", "ground refutation (constants)")
    except sat.TimeBudgetExceeded:
        pass

    for size in range(lower, max_domain + 1):
        if time.monotonic() > deadline:
            return ProverResult("Timeout")
        try:
            model = find_model(
                clauses, size,
                deadline=min(deadline, time.monotonic() + timeout_s * 0.4),
            )
        except sat.TimeBudgetExceeded:
            break
        if model is not None:
            return ProverResult("Satisfiable", f"finite model of size {size}")

    if time.monotonic() > deadline:
        return ProverResult("Timeout")
    try:
        got = refute(clauses, deadline=deadline, with_skolem_terms=True)
        if got:
            return ProverResult("Unsatisfiable", "ground refutation (skolem depth 1)")
    except sat.TimeBudgetExceeded:
        return ProverResult("Timeout")
    if time.monotonic() > deadline:
        return ProverResult("Timeout")
    return ProverResult("GaveUp")


def decide_tptp_text(text: str, timeout_s: float = 10.0) -> ProverResult:
    units = parse_tptp(text)
    formulas = [u.body for u in units if u.role in ("axiom", "hypothesis", "definition")]
    conjectures = [u.body for u in units if u.role == "conjecture"]
    if conjectures:
        from .fol import NotN

        formulas.extend(NotN(c) for c in conjectures)
    clauses = clausify(formulas)
    result = decide_clauses(clauses, timeout_s=timeout_s)
    if conjectures and result.status in ("Satisfiable", "Unsatisfiable"):
        status = "CounterSatisfiable" if result.status == "Satisfiable" else "Theorem"
        return ProverResult(status, result.detail)
    return result


def main(argv: Optional[list[str]] = None) -> int:
    import argparse

    ap = argparse.ArgumentParser(
        prog="shacl2fol-miniprover",
        description="Desk-scale TPTP prover: sound Satisfiable/Unsatisfiable answers "
        "on small problems, GaveUp otherwise.",
    )
    ap.add_argument("problem", help="TPTP problem file")
    ap.add_argument("--timeout", type=float, default=10.0, help="seconds of wall clock")
    ap.add_argument("--parse-only", action="store_true", help="only check TPTP syntax")
    args = ap.parse_args(argv)
    with open(args.problem, encoding="utf-8") as fh:
        text = fh.read()
    if args.parse_only:
        try:
            parse_tptp(text)
        except Exception as exc:
            print(f"% SZS status SyntaxError for {args.problem} : {exc}")
            return 1
        print(f"% SZS status Success for {args.problem}")
        return 0
    result = decide_tptp_text(text, timeout_s=args.timeout)
    print(f"% SZS status {result.status} for {args.problem}")
    if result.detail:
        print(f"% {result.detail}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

import pytest

from shacl2fol import miniprover
from shacl2fol.clausify import clausify
from shacl2fol.fol import (
    Atom, Const, Eq, Exists, Forall, Implies, NotN, OrN, Var,
)

A, B, C = Const("a"), Const("b"), Const("c")
X, Y = Var("X"), Var("Y")


def decide(formulas, **kw):
    return miniprover.decide_clauses(clausify(formulas), **kw)


class TestDecideClauses:
    def test_empty_theory_satisfiable(self):
        assert decide([]).status == "Satisfiable"

    def test_single_fact_satisfiable(self):
        assert decide([Atom("p", (A,))]).status == "Satisfiable"

    def test_direct_contradiction(self):
        got = decide([Atom("p", (A,)), NotN(Atom("p", (A,)))])
        assert got.status == "Unsatisfiable"

    def test_universal_contradiction(self):
        got = decide([
            Forall(("X",), Implies(Atom("p", (X,)), Atom("q", (X,)))),
            Atom("p", (A,)),
            NotN(Atom("q", (A,))),
        ])
        assert got.status == "Unsatisfiable"

    def test_existential_witness_satisfiable(self):
        got = decide([
            Exists(("X",), Atom("p", (X,))),
            NotN(Atom("p", (A,))),
        ])
        assert got.status == "Satisfiable"

    def test_equality_chain_refuted(self):
        got = decide([Eq(A, B), Eq(B, C), NotN(Eq(A, C))])
        assert got.status == "Unsatisfiable"

    def test_predicate_congruence(self):
        got = decide([Eq(A, B), Atom("p", (A,)), NotN(Atom("p", (B,)))])
        assert got.status == "Unsatisfiable"

    def test_skolem_congruence(self):
        # ![X]: ?[Y]: r(X, Y) gives a skolem f; a = b forces f(a) = f(b)
        got = decide([
            Forall(("X",), Exists(("Y",), Atom("r", (X, Y)))),
            Eq(A, B),
            Forall(("X",), Implies(Atom("r", (A, X)), Atom("g", (X,)))),
            Forall(("X",), Implies(Atom("r", (B, X)), NotN(Atom("g", (X,))))),
        ])
        assert got.status == "Unsatisfiable"

    def test_distinct_constants_still_satisfiable(self):
        got = decide([NotN(Eq(A, B)), NotN(Eq(B, C)), NotN(Eq(A, C))])
        assert got.status == "Satisfiable"

    def test_disjunction_case_split(self):
        got = decide([
            OrN((Atom("p", (A,)), Atom("q", (A,)))),
            NotN(Atom("p", (A,))),
            NotN(Atom("q", (A,))),
        ])
        assert got.status == "Unsatisfiable"


class TestFindModel:
    def test_model_size_matters(self):
        # p(a) and ~p(b) force a and b apart: size 1 fails, size 2 works
        clauses = clausify([Atom("p", (A,)), NotN(Atom("p", (B,)))])
        assert miniprover.find_model(clauses, 1) is None
        assert miniprover.find_model(clauses, 2) is not None

    def test_collapsing_model(self):
        # without disagreement a single element suffices even for two names
        clauses = clausify([Atom("p", (A,)), Atom("p", (B,))])
        assert miniprover.find_model(clauses, 1) is not None


SAT_PROBLEM = """
fof(one, axiom, p(a)).
fof(two, axiom, ~q(a)).
"""

UNSAT_PROBLEM = """
fof(one, axiom, ![X]: (p(X) => q(X))).
fof(two, axiom, p(a)).
fof(three, axiom, ~q(a)).
"""

CONJECTURE_PROBLEM = """
fof(one, axiom, ![X]: (p(X) => q(X))).
fof(two, axiom, p(a)).
fof(goal, conjecture, q(a)).
"""

BAD_CONJECTURE_PROBLEM = """
fof(one, axiom, p(a)).
fof(goal, conjecture, q(a)).
"""


class TestTptpEntry:
    def test_axioms_only(self):
        assert miniprover.decide_tptp_text(SAT_PROBLEM).status == "Satisfiable"
        assert miniprover.decide_tptp_text(UNSAT_PROBLEM).status == "Unsatisfiable"

    def test_conjecture_statuses(self):
        assert miniprover.decide_tptp_text(CONJECTURE_PROBLEM).status == "Theorem"
        assert (
            miniprover.decide_tptp_text(BAD_CONJECTURE_PROBLEM).status
            == "CounterSatisfiable"
        )


class TestMain:
    def test_szs_line(self, tmp_path, capsys):
        f = tmp_path / "problem.p"
        f.write_text(UNSAT_PROBLEM)
        assert miniprover.main([str(f)]) == 0
        out = capsys.readouterr().out
        assert f"% SZS status Unsatisfiable for {f}" in out

    def test_parse_only(self, tmp_path, capsys):
        good = tmp_path / "good.p"
        good.write_text(SAT_PROBLEM)
        assert miniprover.main([str(good), "--parse-only"]) == 0
        assert "SZS status Success" in capsys.readouterr().out

        bad = tmp_path / "bad.p"
        bad.write_text("fof(broken, axiom, p(a).")
        assert miniprover.main([str(bad), "--parse-only"]) == 1
        assert "SZS status SyntaxError" in capsys.readouterr().out

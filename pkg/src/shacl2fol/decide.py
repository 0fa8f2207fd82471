"""Assembly of the three decision problems and prover integration.

Each task builds one axiom-only TPTP problem; the verdict is read off the
prover's SZS status line.  External provers (E, Vampire) are driven as
child processes with a wall-clock timeout; the built-in prover runs in
process but writes the identical problem file first, so `emit` followed by
a manual prover run reproduces the integrated result bit for bit.
"""

from __future__ import annotations

import os
import re
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

from . import miniprover, scl, shapes, translate as tr
from .errors import InvalidOptions, ProverNotFound, ProverProtocolError
from .rdf import Graph, RdfTerm
from .scl import SclSentence, ShapeDef, TARGET_TYPES
from .shapes import ShapeGraph
from .tptp import (
    Emitter, EmitOptions, SHAPE_PRED, TptpDocument, attach_ambient_axioms,
    emit_graph_axioms, render,
)

SHAPE_PRED_B = "hasShapeB"

E_PATH_ENV = "SHACL2FOL_E_PATH"
VAMPIRE_PATH_ENV = "SHACL2FOL_VAMPIRE_PATH"

_SZS_RE = re.compile(r"SZS status (\w+)")

_UNKNOWN_STATUSES = {"Timeout", "GaveUp", "Error", "ResourceOut", "Unknown", "NotRun"}
_SAT_STATUSES = {"Satisfiable", "CounterSatisfiable"}
_UNSAT_STATUSES = {"Unsatisfiable", "Theorem", "ContradictoryAxioms"}


class TaskKind(Enum):
    SATISFIABILITY = "satisfiability"
    CONTAINMENT = "containment"
    VALIDATION = "validation"


class Verdict(Enum):
    SATISFIABLE = "Satisfiable"
    UNSATISFIABLE = "Unsatisfiable"
    CONTAINED = "Contained"
    NOT_CONTAINED = "NotContained"
    CONFORMS = "Conforms"
    DOES_NOT_CONFORM = "DoesNotConform"
    UNKNOWN = "Unknown"


POSITIVE_VERDICTS = {Verdict.SATISFIABLE, Verdict.CONTAINED, Verdict.CONFORMS}


@dataclass
class ProverConfig:
    kind: str = "auto"  # e | vampire | builtin | none | auto
    executable: Optional[str] = None
    timeout_s: float = 60.0

    def resolve(self) -> "ProverConfig":
        if self.kind != "auto":
            return self
        e = os.environ.get(E_PATH_ENV) or shutil.which("eprover") or shutil.which("E")
        if e:
            return ProverConfig("e", e, self.timeout_s)
        v = os.environ.get(VAMPIRE_PATH_ENV) or shutil.which("vampire")
        if v:
            return ProverConfig("vampire", v, self.timeout_s)
        return ProverConfig("builtin", None, self.timeout_s)


@dataclass
class DecisionTask:
    kind: TaskKind
    shape_graph_a: ShapeGraph
    shape_graph_b: Optional[ShapeGraph] = None
    data_graph: Optional[Graph] = None
    options: EmitOptions = field(default_factory=EmitOptions)
    strong_sat_shapes: Optional[list[RdfTerm]] = None  # None = off, [] = all
    prover: ProverConfig = field(default_factory=ProverConfig)
    problem_path: Optional[str] = None

    def __post_init__(self):
        if self.kind is TaskKind.CONTAINMENT and self.shape_graph_b is None:
            raise InvalidOptions("containment requires a second shape graph")
        if self.kind is not TaskKind.CONTAINMENT and self.shape_graph_b is not None:
            raise InvalidOptions("only containment takes a second shape graph")
        if self.kind is TaskKind.VALIDATION and self.data_graph is None:
            raise InvalidOptions("validation requires a data graph")
        if self.kind is not TaskKind.VALIDATION and self.data_graph is not None:
            raise InvalidOptions("only validation takes a data graph")


@dataclass
class DecisionResult:
    verdict: Verdict
    approximate: bool
    szs_status: str
    problem_file: str
    prover_time_ms: int
    prover_kind: str = ""

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "approximate": self.approximate,
            "szsStatus": self.szs_status,
            "problemFile": self.problem_file,
            "proverTimeMs": self.prover_time_ms,
            "prover": self.prover_kind,
        }


# --- problem assembly -------------------------------------------------------

def build_problem(task: DecisionTask) -> TptpDocument:
    if task.kind is TaskKind.SATISFIABILITY:
        return _build_satisfiability(task)
    if task.kind is TaskKind.CONTAINMENT:
        return _build_containment(task)
    return _build_validation(task)


def _strong_sat_selection(task: DecisionTask, theory: list[SclSentence]) -> list[SclSentence]:
    if task.strong_sat_shapes is None:
        return theory
    selected = task.strong_sat_shapes
    if not selected:
        selected = [s.shape_name for s in theory if isinstance(s, ShapeDef)]
    return tr.add_strong_satisfiability_targets(theory, selected)


def _build_satisfiability(task: DecisionTask) -> TptpDocument:
    theory = tr.translate(task.shape_graph_a)
    theory = _strong_sat_selection(task, theory)
    doc = TptpDocument(dialect=task.options.dialect,
                       header=["task: satisfiability"])
    emitter = Emitter(task.options, known_constants=scl.theory_constants(theory))
    for s in theory:
        hint = "shape_def" if isinstance(s, ShapeDef) else "target"
        doc.add(hint, emitter.sentence_formula(s))
    attach_ambient_axioms(doc, emitter, task.options)
    return doc


def _build_containment(task: DecisionTask) -> TptpDocument:
    sig_a = tr.signature_of(task.shape_graph_a)
    sig_b = tr.signature_of(task.shape_graph_b)
    theory_a = tr.translate(task.shape_graph_a, extra_signature=sig_b)
    theory_b = tr.translate(task.shape_graph_b, extra_signature=sig_a)
    doc = TptpDocument(dialect=task.options.dialect, header=["task: containment"])
    constants = scl.theory_constants(theory_a) | scl.theory_constants(theory_b)
    emitter = Emitter(task.options, known_constants=constants)
    for s in theory_a:
        hint = "shape_def_a" if isinstance(s, ShapeDef) else "target_a"
        doc.add(hint, emitter.sentence_formula(s, shape_pred=SHAPE_PRED))
    from .fol import conj, neg

    b_targets = []
    for s in theory_b:
        if isinstance(s, ShapeDef):
            doc.add("shape_def_b", emitter.sentence_formula(s, shape_pred=SHAPE_PRED_B))
        else:
            b_targets.append(emitter.sentence_formula(s, shape_pred=SHAPE_PRED_B))
    # a witness graph conforms to A but violates B's target obligations
    doc.add("neg_targets_b", neg(conj(b_targets)))
    attach_ambient_axioms(doc, emitter, task.options)
    return doc


def _build_validation(task: DecisionTask) -> TptpDocument:
    g = task.data_graph
    data_roles = {tr.role_name(p) for p in g.predicate_names()}
    theory = tr.translate(task.shape_graph_a, extra_signature=g.predicate_names())
    doc = TptpDocument(dialect=task.options.dialect, header=["task: validation"])
    constants = scl.theory_constants(theory) | g.constants()
    emitter = Emitter(task.options, data_graph=g, known_constants=constants)
    for s in theory:
        hint = "shape_def" if isinstance(s, ShapeDef) else "target"
        doc.add(hint, emitter.sentence_formula(s))
    signature = scl.theory_roles(theory) | data_roles
    doc.extend(emit_graph_axioms(g, signature))
    attach_ambient_axioms(doc, emitter, task.options)
    return doc


# --- prover execution -------------------------------------------------------

def write_problem(doc: TptpDocument, path: Optional[str] = None) -> str:
    text = render(doc)
    if path is None:
        fd, path = tempfile.mkstemp(suffix=".p", prefix="shacl2fol_")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
    return path


def prover_command(config: ProverConfig, problem_file: str) -> list[str]:
    timeout = max(1, int(config.timeout_s))
    if config.kind == "e":
        exe = config.executable or os.environ.get(E_PATH_ENV) or shutil.which("eprover")
        if not exe:
            raise ProverNotFound("no E executable found")
        return [exe, "--auto", "--silent", f"--soft-cpu-limit={timeout}", problem_file]
    if config.kind == "vampire":
        exe = config.executable or os.environ.get(VAMPIRE_PATH_ENV) or shutil.which("vampire")
        if not exe:
            raise ProverNotFound("no Vampire executable found")
        return [exe, "--mode", "casc_sat", "--time_limit", str(timeout), problem_file]
    if config.kind == "custom":
        if not config.executable:
            raise ProverNotFound("custom prover requires an executable")
        return [config.executable, problem_file]
    raise ProverNotFound(f"unknown prover kind {config.kind!r}")


def run_prover(doc: TptpDocument, config: ProverConfig,
               problem_path: Optional[str] = None) -> tuple[str, str, str, int]:
    """Returns (szs_status, raw_output, problem_file, elapsed_ms)."""
    config = config.resolve()
    problem_file = write_problem(doc, problem_path)
    start = time.monotonic()
    if config.kind == "none":
        return "NotRun", "", problem_file, 0
    if config.kind == "builtin":
        result = miniprover.decide_tptp_text(render(doc), timeout_s=config.timeout_s)
        elapsed = int((time.monotonic() - start) * 1000)
        raw = f"% SZS status {result.status} for {problem_file}\n"
        return result.status, raw, problem_file, elapsed
    argv = prover_command(config, problem_file)
    try:
        proc = subprocess.run(
            argv, capture_output=True, text=True,
            timeout=config.timeout_s + 5,
        )
    except FileNotFoundError as exc:
        raise ProverNotFound(str(exc)) from exc
    except subprocess.TimeoutExpired:
        elapsed = int((time.monotonic() - start) * 1000)
        return "Timeout", "", problem_file, elapsed
    elapsed = int((time.monotonic() - start) * 1000)
    output = proc.stdout + "\n" + proc.stderr
    m = _SZS_RE.search(output)
    if m is None:
        raise ProverProtocolError(
            f"no SZS status line in prover output (exit {proc.returncode})"
        )
    return m.group(1), output, problem_file, elapsed


# --- verdict mapping --------------------------------------------------------

def _verdict(kind: TaskKind, szs: str) -> Verdict:
    if szs in _UNKNOWN_STATUSES:
        return Verdict.UNKNOWN
    if szs in _SAT_STATUSES:
        sat = True
    elif szs in _UNSAT_STATUSES:
        sat = False
    else:
        raise ProverProtocolError(f"unrecognized SZS status {szs!r}")
    if kind is TaskKind.SATISFIABILITY:
        return Verdict.SATISFIABLE if sat else Verdict.UNSATISFIABLE
    if kind is TaskKind.CONTAINMENT:
        return Verdict.NOT_CONTAINED if sat else Verdict.CONTAINED
    return Verdict.CONFORMS if sat else Verdict.DOES_NOT_CONFORM


def run_task(task: DecisionTask) -> DecisionResult:
    doc = build_problem(task)
    config = task.prover.resolve()
    szs, _raw, problem_file, elapsed = run_prover(doc, config, task.problem_path)
    return DecisionResult(
        verdict=_verdict(task.kind, szs),
        approximate=doc.approximate,
        szs_status=szs,
        problem_file=problem_file,
        prover_time_ms=elapsed,
        prover_kind=config.kind,
    )


def check_satisfiability(task: DecisionTask) -> DecisionResult:
    assert task.kind is TaskKind.SATISFIABILITY
    return run_task(task)


def check_containment(task: DecisionTask) -> DecisionResult:
    assert task.kind is TaskKind.CONTAINMENT
    return run_task(task)


def check_validation(task: DecisionTask) -> DecisionResult:
    assert task.kind is TaskKind.VALIDATION
    return run_task(task)

"""Direct validation of a data graph against a shape graph.

This evaluator works straight on the constraint AST and the RDF graph,
with no logic translation involved, so it can cross-check the verdicts
the prover pipeline produces.  It only handles non-recursive shape
graphs, mirroring the scope of the translation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import RecursiveShapeGraph
from .rdf import Graph, RDF_TYPE, RdfTerm, XSD_NS
from .shapes import (
    Alternative, And, Closed, Constraint, DisjointProp, EqConst, EqualsProp,
    HasShape, Inverse, MaxCount, MinCount, NodeKind, NodeKindValue, Not, OneOrMore,
    OrderOp, OrderProp, Predicate, PropertyPath, Sequence, Shape, ShapeGraph,
    SomeThrough, TargetDecl, TargetKind, TrueC, ZeroOrMore, ZeroOrOne,
    detect_recursion,
)

_NUMERIC_DATATYPES = {
    XSD_NS + "integer", XSD_NS + "decimal", XSD_NS + "double",
    XSD_NS + "float", XSD_NS + "int", XSD_NS + "long",
}


@dataclass(frozen=True)
class Violation:
    shape_name: RdfTerm
    focus_node: RdfTerm


@dataclass
class ValidationReport:
    conforms: bool
    violations: list[Violation] = field(default_factory=list)


# --- property paths ---------------------------------------------------------

def path_eval(path: PropertyPath, g: Graph, node: RdfTerm) -> set[RdfTerm]:
    """All nodes reachable from `node` along `path`."""
    return _step(path, g, {node})


def _step(path: PropertyPath, g: Graph, nodes: set[RdfTerm]) -> set[RdfTerm]:
    if isinstance(path, Predicate):
        return {
            t.object for t in g.triples
            if t.predicate.lexical == path.iri and t.subject in nodes
        }
    if isinstance(path, Inverse):
        # x is an inverse-successor of the set when x steps into it
        return {
            x for x in g.constants()
            if _step(path.path, g, {x}) & nodes
        }
    if isinstance(path, Sequence):
        return _step(path.right, g, _step(path.left, g, nodes))
    if isinstance(path, Alternative):
        return _step(path.left, g, nodes) | _step(path.right, g, nodes)
    if isinstance(path, ZeroOrOne):
        return nodes | _step(path.path, g, nodes)
    if isinstance(path, ZeroOrMore):
        reached = set(nodes)
        frontier = set(nodes)
        while frontier:
            nxt = _step(path.path, g, frontier) - reached
            reached |= nxt
            frontier = nxt
        return reached
    if isinstance(path, OneOrMore):
        return _step(ZeroOrMore(path.path), g, _step(path.path, g, nodes))
    raise TypeError(f"not a property path: {path!r}")


# --- ordering ---------------------------------------------------------------

def _order_holds(a: RdfTerm, b: RdfTerm, op: OrderOp) -> Optional[bool]:
    """Compare two terms; None when the pair is not comparable."""
    if not (a.is_literal and b.is_literal):
        return None
    a_num = a.datatype in _NUMERIC_DATATYPES
    b_num = b.datatype in _NUMERIC_DATATYPES
    if a_num and b_num:
        try:
            x, y = float(a.lexical), float(b.lexical)
        except ValueError:
            return None
    elif not a_num and not b_num and a.lang is None and b.lang is None \
            and a.datatype in (None, XSD_NS + "string") \
            and b.datatype in (None, XSD_NS + "string"):
        x, y = a.lexical, b.lexical
    else:
        return None
    return x < y if op is OrderOp.LT else x <= y


# --- constraint evaluation --------------------------------------------------

class _Evaluator:
    def __init__(self, sg: ShapeGraph, g: Graph):
        self.g = g
        self.shapes = {s.name: s for s in sg.shapes}
        self.memo: dict[tuple[RdfTerm, RdfTerm], bool] = {}

    def holds(self, c: Constraint, node: RdfTerm) -> bool:
        g = self.g
        if isinstance(c, TrueC):
            return True
        if isinstance(c, Not):
            return not self.holds(c.operand, node)
        if isinstance(c, And):
            return self.holds(c.left, node) and self.holds(c.right, node)
        if isinstance(c, EqConst):
            return node == c.term
        if isinstance(c, NodeKind):
            if c.kind is NodeKindValue.IRI:
                return node.is_iri
            if c.kind is NodeKindValue.LITERAL:
                return node.is_literal
            return node.is_blank
        if isinstance(c, HasShape):
            return self.shape_holds(c.shape_name, node)
        if isinstance(c, SomeThrough):
            return any(
                self.holds(c.constraint, v) for v in path_eval(c.path, g, node)
            )
        if isinstance(c, MinCount):
            hits = sum(
                1 for v in path_eval(c.path, g, node) if self.holds(c.constraint, v)
            )
            return hits >= c.n
        if isinstance(c, MaxCount):
            hits = sum(
                1 for v in path_eval(c.path, g, node) if self.holds(c.constraint, v)
            )
            return hits <= c.n
        if isinstance(c, EqualsProp):
            return path_eval(c.path, g, node) == set(g.objects(node, c.predicate))
        if isinstance(c, DisjointProp):
            return not (path_eval(c.path, g, node) & set(g.objects(node, c.predicate)))
        if isinstance(c, OrderProp):
            lefts = path_eval(c.path, g, node)
            rights = set(g.objects(node, c.predicate))
            for v in lefts:
                for w in rights:
                    pair = (w, v) if c.inverted else (v, w)
                    if _order_holds(*pair, c.op) is not True:
                        return False
            return True
        if isinstance(c, Closed):
            for t in g.triples:
                if t.subject != node:
                    continue
                p = t.predicate.lexical
                if p != RDF_TYPE and p not in c.allowed_predicates:
                    return False
            return True
        raise TypeError(f"not a constraint: {c!r}")

    def shape_holds(self, name: RdfTerm, node: RdfTerm) -> bool:
        key = (name, node)
        if key not in self.memo:
            self.memo[key] = self.holds(self.shapes[name].constraint, node)
        return self.memo[key]


def target_nodes(target: TargetDecl, g: Graph) -> set[RdfTerm]:
    if target.kind is TargetKind.NODE:
        return {target.argument}
    if target.kind is TargetKind.CLASS:
        return set(g.subjects(RDF_TYPE, target.argument))
    if target.kind is TargetKind.SUBJECTS_OF:
        return g.subjects_of(target.argument.lexical)
    return {
        t.object for t in g.triples
        if t.predicate.lexical == target.argument.lexical
    }


def evaluate(sg: ShapeGraph, g: Graph) -> ValidationReport:
    """Check every targeted node of every shape; conforms iff no violations."""
    cycles = detect_recursion(sg)
    if cycles:
        raise RecursiveShapeGraph(f"recursive shape graph: {cycles[0]}")
    ev = _Evaluator(sg, g)
    violations = []
    for shape in sg.shapes:
        for target in shape.targets:
            for node in sorted(target_nodes(target, g)):
                if not ev.shape_holds(shape.name, node):
                    violations.append(Violation(shape.name, node))
    seen = set()
    unique = []
    for v in violations:
        if (v.shape_name, v.focus_node) not in seen:
            seen.add((v.shape_name, v.focus_node))
            unique.append(v)
    return ValidationReport(conforms=not unique, violations=unique)

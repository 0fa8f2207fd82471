"""SHACL shape-graph AST and its extraction from an RDF graph.

The extractor recognizes the constraint components that map into the
constraint algebra: targets, cardinalities, node kind, value-equality
(`sh:in`, `sh:hasValue`), shape references (`sh:node`, `sh:not`, `sh:and`,
`sh:or`), property pair components (`sh:equals`, `sh:disjoint`,
`sh:lessThan`, `sh:lessThanOrEquals`), `sh:class`, `sh:closed`, and the
full property-path vocabulary.  Anything else that is a known SHACL
constraint parameter raises UnsupportedComponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from . import rdf
from .errors import MalformedShape, UnsupportedComponent
from .rdf import Graph, RdfTerm, SH_NS, RDF_TYPE, TermKind

SH = SH_NS


def _sh(local: str) -> str:
    return SH + local


# --- Property paths --------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    iri: str


@dataclass(frozen=True)
class Inverse:
    path: "PropertyPath"


@dataclass(frozen=True)
class Sequence:
    left: "PropertyPath"
    right: "PropertyPath"


@dataclass(frozen=True)
class Alternative:
    left: "PropertyPath"
    right: "PropertyPath"


@dataclass(frozen=True)
class ZeroOrOne:
    path: "PropertyPath"


@dataclass(frozen=True)
class ZeroOrMore:
    path: "PropertyPath"


@dataclass(frozen=True)
class OneOrMore:
    path: "PropertyPath"


PropertyPath = Union[Predicate, Inverse, Sequence, Alternative, ZeroOrOne, ZeroOrMore, OneOrMore]


def normalize_path(p: PropertyPath) -> PropertyPath:
    """Rewrite OneOrMore(p) into Sequence(p, ZeroOrMore(p)); idempotent."""
    if isinstance(p, Predicate):
        return p
    if isinstance(p, Inverse):
        return Inverse(normalize_path(p.path))
    if isinstance(p, Sequence):
        return Sequence(normalize_path(p.left), normalize_path(p.right))
    if isinstance(p, Alternative):
        return Alternative(normalize_path(p.left), normalize_path(p.right))
    if isinstance(p, ZeroOrOne):
        return ZeroOrOne(normalize_path(p.path))
    if isinstance(p, ZeroOrMore):
        return ZeroOrMore(normalize_path(p.path))
    if isinstance(p, OneOrMore):
        inner = normalize_path(p.path)
        return Sequence(inner, ZeroOrMore(inner))
    raise TypeError(f"not a property path: {p!r}")


# --- Constraints -----------------------------------------------------------

class NodeKindValue(Enum):
    IRI = "iri"
    LITERAL = "literal"
    BLANK = "blank"


class OrderOp(Enum):
    LT = "<"
    LEQ = "<="


@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class Not:
    operand: "Constraint"


@dataclass(frozen=True)
class And:
    left: "Constraint"
    right: "Constraint"


@dataclass(frozen=True)
class EqConst:
    term: RdfTerm


@dataclass(frozen=True)
class NodeKind:
    kind: NodeKindValue


@dataclass(frozen=True)
class HasShape:
    shape_name: RdfTerm


@dataclass(frozen=True)
class SomeThrough:
    path: PropertyPath
    constraint: "Constraint"


@dataclass(frozen=True)
class MinCount:
    n: int
    path: PropertyPath
    constraint: "Constraint"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("MinCount requires n >= 1")


@dataclass(frozen=True)
class MaxCount:
    n: int
    path: PropertyPath
    constraint: "Constraint"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("MaxCount requires n >= 0")


@dataclass(frozen=True)
class EqualsProp:
    path: PropertyPath
    predicate: str


@dataclass(frozen=True)
class DisjointProp:
    path: PropertyPath
    predicate: str


@dataclass(frozen=True)
class OrderProp:
    path: PropertyPath
    predicate: str
    op: OrderOp
    inverted: bool = False


@dataclass(frozen=True)
class Closed:
    allowed_predicates: frozenset[str]


Constraint = Union[
    TrueC, Not, And, EqConst, NodeKind, HasShape, SomeThrough,
    MinCount, MaxCount, EqualsProp, DisjointProp, OrderProp, Closed,
]


def conjoin(constraints: list[Constraint]) -> Constraint:
    if not constraints:
        return TrueC()
    out = constraints[0]
    for c in constraints[1:]:
        out = And(out, c)
    return out


def or_of(constraints: list[Constraint]) -> Constraint:
    """Disjunction encoded through the Not/And closure."""
    if not constraints:
        return Not(TrueC())
    if len(constraints) == 1:
        return constraints[0]
    negated = [Not(c) for c in constraints]
    return Not(conjoin(negated))


# --- Shapes ----------------------------------------------------------------

class TargetKind(Enum):
    NODE = "node"
    CLASS = "class"
    SUBJECTS_OF = "subjectsOf"
    OBJECTS_OF = "objectsOf"


@dataclass(frozen=True)
class TargetDecl:
    kind: TargetKind
    argument: RdfTerm

    def __post_init__(self):
        if self.kind in (TargetKind.SUBJECTS_OF, TargetKind.OBJECTS_OF) and not self.argument.is_iri:
            raise ValueError("subjects-of/objects-of target argument must be an IRI")
        if self.kind is TargetKind.CLASS and self.argument.is_literal:
            raise ValueError("class target argument must be an IRI or blank node")


@dataclass(frozen=True)
class Shape:
    name: RdfTerm
    targets: tuple[TargetDecl, ...]
    constraint: Constraint

    def __post_init__(self):
        if self.name.is_literal:
            raise ValueError("shape name must be an IRI or blank node")


@dataclass
class ShapeGraph:
    shapes: list[Shape] = field(default_factory=list)

    def shape_names(self) -> list[RdfTerm]:
        return [s.name for s in self.shapes]

    def shape(self, name: RdfTerm) -> Shape:
        for s in self.shapes:
            if s.name == name:
                return s
        raise KeyError(name)

    def __iter__(self):
        return iter(self.shapes)


# --- Extraction ------------------------------------------------------------

_TARGET_PREDICATES = {
    _sh("targetNode"): TargetKind.NODE,
    _sh("targetClass"): TargetKind.CLASS,
    _sh("targetSubjectsOf"): TargetKind.SUBJECTS_OF,
    _sh("targetObjectsOf"): TargetKind.OBJECTS_OF,
}

_NODEKIND_VALUES = {
    _sh("IRI"): [NodeKindValue.IRI],
    _sh("Literal"): [NodeKindValue.LITERAL],
    _sh("BlankNode"): [NodeKindValue.BLANK],
    _sh("IRIOrLiteral"): [NodeKindValue.IRI, NodeKindValue.LITERAL],
    _sh("BlankNodeOrIRI"): [NodeKindValue.BLANK, NodeKindValue.IRI],
    _sh("BlankNodeOrLiteral"): [NodeKindValue.BLANK, NodeKindValue.LITERAL],
}

# recognized constraint parameters, used to find anonymous shapes
_CONSTRAINT_PARAMS = {
    _sh(p) for p in (
        "class", "nodeKind", "minCount", "maxCount", "equals", "disjoint",
        "lessThan", "lessThanOrEquals", "not", "and", "or", "node",
        "property", "hasValue", "in", "closed", "ignoredProperties",
        "qualifiedValueShape", "qualifiedMinCount", "qualifiedMaxCount",
    )
}

# known SHACL parameters we reject explicitly rather than ignore
_UNSUPPORTED_PARAMS = {
    _sh(p) for p in (
        "pattern", "minLength", "maxLength", "languageIn", "uniqueLang",
        "minInclusive", "minExclusive", "maxInclusive", "maxExclusive",
        "datatype", "xone", "sparql", "flags",
    )
}


class _Extractor:
    def __init__(self, g: Graph):
        self.g = g
        self.shapes: dict[RdfTerm, Shape] = {}
        self.in_progress: set[RdfTerm] = set()

    def run(self) -> ShapeGraph:
        roots = self.find_shape_nodes()
        for node in sorted(roots):
            self.shape_for(node)
        sg = ShapeGraph(sorted(self.shapes.values(), key=lambda s: str(s.name)))
        self.check_references(sg)
        return sg

    def find_shape_nodes(self) -> set[RdfTerm]:
        nodes: set[RdfTerm] = set()
        for t in self.g:
            if t.predicate.lexical in _TARGET_PREDICATES:
                nodes.add(t.subject)
            elif t.predicate.lexical in (_sh("node"), _sh("qualifiedValueShape"), _sh("not")):
                nodes.add(t.subject)
                nodes.add(t.object)
            elif t.predicate.lexical in (_sh("and"), _sh("or")):
                nodes.add(t.subject)
                for member in self.g.walk_list(t.object):
                    nodes.add(member)
            elif t.predicate.lexical == _sh("property"):
                nodes.add(t.subject)
            elif t.predicate.lexical in _CONSTRAINT_PARAMS or t.predicate.lexical in _UNSUPPORTED_PARAMS:
                nodes.add(t.subject)
        # property shapes hang off sh:property and are folded into their
        # parent, not promoted to named shapes, unless independently targeted
        property_objects = {
            t.object for t in self.g if t.predicate.lexical == _sh("property")
        }
        targeted = {
            t.subject for t in self.g if t.predicate.lexical in _TARGET_PREDICATES
        }
        # explicitly declared shapes without any parameter still count
        for t in self.g:
            if t.predicate.lexical == RDF_TYPE and t.object.is_iri and t.object.lexical in (
                _sh("NodeShape"), _sh("PropertyShape")
            ):
                nodes.add(t.subject)
        return (nodes - property_objects) | targeted

    def is_deactivated(self, node: RdfTerm) -> bool:
        v = self.g.object(node, _sh("deactivated"))
        return v is not None and v.is_literal and v.lexical == "true"

    def shape_for(self, node: RdfTerm) -> Optional[Shape]:
        if node in self.shapes or node in self.in_progress:
            return self.shapes.get(node)
        if self.is_deactivated(node):
            return None
        self.in_progress.add(node)
        try:
            targets = self.extract_targets(node)
            constraint = self.extract_constraints(node)
        finally:
            self.in_progress.discard(node)
        shape = Shape(node, tuple(targets), constraint)
        self.shapes[node] = shape
        return shape

    def extract_targets(self, node: RdfTerm) -> list[TargetDecl]:
        targets = []
        for pred_iri, kind in _TARGET_PREDICATES.items():
            for obj in self.g.objects(node, pred_iri):
                try:
                    targets.append(TargetDecl(kind, obj))
                except ValueError as exc:
                    raise MalformedShape(str(exc)) from exc
        return targets

    def extract_constraints(self, node: RdfTerm, path: Optional[PropertyPath] = None) -> Constraint:
        """Collect the constraint conjunction for a node or property shape.

        `path` is None for node shapes; for property shapes each component
        is interpreted over the value nodes of the path.
        """
        conjuncts: list[Constraint] = []
        params = sorted(
            (t.predicate.lexical, t.object)
            for t in self.g
            if t.subject == node and t.predicate.lexical.startswith(SH)
        )
        for pred_iri, obj in params:
            local = pred_iri[len(SH):]
            if pred_iri in _UNSUPPORTED_PARAMS:
                raise UnsupportedComponent(pred_iri)
            if pred_iri in _TARGET_PREDICATES or local in (
                "deactivated", "path", "name", "description", "message",
                "severity", "order", "group", "ignoredProperties",
                "qualifiedMinCount", "qualifiedMaxCount",
            ):
                continue
            handler = getattr(self, "c_" + local, None)
            if handler is None:
                continue  # labels, comments, unknown non-parameter vocabulary
            c = handler(node, obj, path)
            if c is not None:
                conjuncts.append(c)
        return conjoin(conjuncts)

    # --- component handlers (c_<shacl local name>) ---

    def at_values(self, path: Optional[PropertyPath], inner: Constraint) -> Constraint:
        """Universal lift of a node constraint over a property path."""
        if path is None:
            return inner
        return Not(SomeThrough(path, Not(inner)))

    def c_property(self, node, obj, path) -> Constraint:
        if path is not None:
            raise MalformedShape(f"nested sh:property under a property shape at {node}")
        ppath_term = self.g.object(obj, _sh("path"))
        if ppath_term is None:
            raise MalformedShape(f"property shape {obj} has no sh:path")
        if self.is_deactivated(obj):
            return TrueC()
        ppath = normalize_path(self.parse_path(ppath_term))
        c = self.extract_constraints(obj, path=ppath)
        # cardinalities are about the path itself, handled inside via path
        return c

    def c_node(self, node, obj, path) -> Constraint:
        self.require_shape(obj)
        return self.at_values(path, HasShape(obj))

    def c_not(self, node, obj, path) -> Constraint:
        self.require_shape(obj)
        return self.at_values(path, Not(HasShape(obj)))

    def c_and(self, node, obj, path) -> Constraint:
        members = self.g.walk_list(obj)
        for m in members:
            self.require_shape(m)
        return self.at_values(path, conjoin([HasShape(m) for m in members]))

    def c_or(self, node, obj, path) -> Constraint:
        members = self.g.walk_list(obj)
        for m in members:
            self.require_shape(m)
        return self.at_values(path, or_of([HasShape(m) for m in members]))

    def c_nodeKind(self, node, obj, path) -> Constraint:
        if not obj.is_iri or obj.lexical not in _NODEKIND_VALUES:
            raise MalformedShape(f"bad sh:nodeKind value {obj}")
        kinds = _NODEKIND_VALUES[obj.lexical]
        return self.at_values(path, or_of([NodeKind(k) for k in kinds]))

    def c_hasValue(self, node, obj, path) -> Constraint:
        if path is None:
            return EqConst(obj)
        # at least one value node equals the given term
        return SomeThrough(path, EqConst(obj))

    def c_in(self, node, obj, path) -> Constraint:
        members = self.g.walk_list(obj)
        return self.at_values(path, or_of([EqConst(m) for m in members]))

    def c_class(self, node, obj, path) -> Constraint:
        member = SomeThrough(Predicate(RDF_TYPE), EqConst(obj))
        return self.at_values(path, member)

    def c_minCount(self, node, obj, path) -> Constraint:
        n = self.int_param(obj, "sh:minCount")
        if path is None:
            raise MalformedShape("sh:minCount outside a property shape")
        if n == 0:
            return TrueC()
        return MinCount(n, path, TrueC())

    def c_maxCount(self, node, obj, path) -> Constraint:
        n = self.int_param(obj, "sh:maxCount")
        if path is None:
            raise MalformedShape("sh:maxCount outside a property shape")
        return MaxCount(n, path, TrueC())

    def c_qualifiedValueShape(self, node, obj, path) -> Constraint:
        if path is None:
            raise MalformedShape("sh:qualifiedValueShape outside a property shape")
        self.require_shape(obj)
        conjuncts = []
        qmin = self.g.object(node, _sh("qualifiedMinCount"))
        qmax = self.g.object(node, _sh("qualifiedMaxCount"))
        if qmin is not None:
            n = self.int_param(qmin, "sh:qualifiedMinCount")
            if n >= 1:
                conjuncts.append(MinCount(n, path, HasShape(obj)))
        if qmax is not None:
            n = self.int_param(qmax, "sh:qualifiedMaxCount")
            conjuncts.append(MaxCount(n, path, HasShape(obj)))
        if not conjuncts:
            raise MalformedShape("sh:qualifiedValueShape without qualified counts")
        return conjoin(conjuncts)

    def c_equals(self, node, obj, path) -> Constraint:
        return EqualsProp(self.pair_path(path), self.pred_param(obj, "sh:equals"))

    def c_disjoint(self, node, obj, path) -> Constraint:
        return DisjointProp(self.pair_path(path), self.pred_param(obj, "sh:disjoint"))

    def c_lessThan(self, node, obj, path) -> Constraint:
        return OrderProp(self.pair_path(path), self.pred_param(obj, "sh:lessThan"), OrderOp.LT)

    def c_lessThanOrEquals(self, node, obj, path) -> Constraint:
        return OrderProp(
            self.pair_path(path), self.pred_param(obj, "sh:lessThanOrEquals"), OrderOp.LEQ
        )

    def c_closed(self, node, obj, path) -> Constraint:
        if not (obj.is_literal and obj.lexical in ("true", "false")):
            raise MalformedShape("sh:closed expects a boolean")
        if obj.lexical == "false":
            return TrueC()
        allowed: set[str] = set()
        for pshape in self.g.objects(node, _sh("property")):
            ppath = self.g.object(pshape, _sh("path"))
            if ppath is not None and ppath.is_iri:
                allowed.add(ppath.lexical)
        ignored = self.g.object(node, _sh("ignoredProperties"))
        if ignored is not None:
            for m in self.g.walk_list(ignored):
                if not m.is_iri:
                    raise MalformedShape("sh:ignoredProperties must list IRIs")
                allowed.add(m.lexical)
        return Closed(frozenset(allowed))

    # --- parameter helpers ---

    def pair_path(self, path: Optional[PropertyPath]) -> PropertyPath:
        if path is None:
            raise MalformedShape("property-pair component outside a property shape")
        return path

    def int_param(self, obj: RdfTerm, name: str) -> int:
        if not obj.is_literal:
            raise MalformedShape(f"{name} expects an integer literal")
        try:
            return int(obj.lexical)
        except ValueError as exc:
            raise MalformedShape(f"{name} expects an integer literal") from exc

    def pred_param(self, obj: RdfTerm, name: str) -> str:
        if not obj.is_iri:
            raise MalformedShape(f"{name} expects a predicate IRI")
        return obj.lexical

    def require_shape(self, node: RdfTerm):
        if node.is_literal:
            raise MalformedShape(f"shape reference to literal {node}")
        self.shape_for(node)

    def parse_path(self, term: RdfTerm) -> PropertyPath:
        if term.is_iri:
            inv = self.g.object(term, _sh("inversePath"))
            if inv is None:
                return Predicate(term.lexical)
        if term.is_literal:
            raise MalformedShape("property path must not be a literal")
        for local, ctor in (
            ("inversePath", Inverse),
            ("zeroOrMorePath", ZeroOrMore),
            ("oneOrMorePath", OneOrMore),
            ("zeroOrOnePath", ZeroOrOne),
        ):
            inner = self.g.object(term, _sh(local))
            if inner is not None:
                return ctor(self.parse_path(inner))
        alt = self.g.object(term, _sh("alternativePath"))
        if alt is not None:
            members = [self.parse_path(m) for m in self.g.walk_list(alt)]
            if len(members) < 2:
                raise MalformedShape("sh:alternativePath needs at least two members")
            out = members[-1]
            for m in reversed(members[:-1]):
                out = Alternative(m, out)
            return out
        # a blank node heading an rdf list is a sequence path
        try:
            members = [self.parse_path(m) for m in self.g.walk_list(term)]
        except ValueError as exc:
            raise MalformedShape(f"unrecognized property path at {term}") from exc
        if len(members) < 2:
            raise MalformedShape("sequence path needs at least two members")
        out = members[-1]
        for m in reversed(members[:-1]):
            out = Sequence(m, out)
        return out

    def check_references(self, sg: ShapeGraph):
        names = set(sg.shape_names())
        for shape in sg:
            for ref in constraint_shape_refs(shape.constraint):
                if ref not in names:
                    raise MalformedShape(f"dangling shape reference {ref}")


def constraint_shape_refs(c: Constraint) -> set[RdfTerm]:
    if isinstance(c, HasShape):
        return {c.shape_name}
    if isinstance(c, Not):
        return constraint_shape_refs(c.operand)
    if isinstance(c, And):
        return constraint_shape_refs(c.left) | constraint_shape_refs(c.right)
    if isinstance(c, SomeThrough):
        return constraint_shape_refs(c.constraint)
    if isinstance(c, (MinCount, MaxCount)):
        return constraint_shape_refs(c.constraint)
    return set()


def constraint_predicates(c: Constraint) -> set[str]:
    """Predicate IRIs used by paths and pair components of one constraint."""
    out: set[str] = set()

    def path_preds(p: PropertyPath):
        if isinstance(p, Predicate):
            out.add(p.iri)
        elif isinstance(p, (Inverse, ZeroOrOne, ZeroOrMore, OneOrMore)):
            path_preds(p.path)
        elif isinstance(p, (Sequence, Alternative)):
            path_preds(p.left)
            path_preds(p.right)

    def walk(c: Constraint):
        if isinstance(c, Not):
            walk(c.operand)
        elif isinstance(c, And):
            walk(c.left)
            walk(c.right)
        elif isinstance(c, SomeThrough):
            path_preds(c.path)
            walk(c.constraint)
        elif isinstance(c, (MinCount, MaxCount)):
            path_preds(c.path)
            walk(c.constraint)
        elif isinstance(c, (EqualsProp, DisjointProp, OrderProp)):
            path_preds(c.path)
            out.add(c.predicate)
        elif isinstance(c, Closed):
            out.update(c.allowed_predicates)

    walk(c)
    return out


def extract_shape_graph(g: Graph) -> ShapeGraph:
    """Extract the shape AST from an RDF graph."""
    return _Extractor(g).run()


def detect_recursion(sg: ShapeGraph) -> list[list[RdfTerm]]:
    """All elementary cycles in the shape-reference digraph, [] iff non-recursive."""
    import networkx as nx

    dg = nx.DiGraph()
    dg.add_nodes_from(sg.shape_names())
    for shape in sg:
        for ref in constraint_shape_refs(shape.constraint):
            dg.add_edge(shape.name, ref)
    return [cycle for cycle in nx.simple_cycles(dg)]

import pytest

from conftest import load_shapes
from shacl2fol.errors import MalformedShape, UnsupportedComponent
from shacl2fol.rdf import iri, literal
from shacl2fol.shapes import (
    Alternative, And, Closed, DisjointProp, EqConst, EqualsProp, HasShape,
    Inverse, MaxCount, MinCount, NodeKind, NodeKindValue, Not, OneOrMore,
    OrderOp, OrderProp, Predicate, Sequence, SomeThrough, TargetKind, TrueC,
    ZeroOrMore, ZeroOrOne, detect_recursion, normalize_path,
)

PREFIX = """\
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix ex: <http://example.org/> .
"""

EX = "http://example.org/"


def shape_named(sg, local):
    return next(s for s in sg.shapes if s.name == iri(EX + local))


class TestTargets:
    def test_all_four_target_kinds(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:targetNode ex:a ;
          sh:targetClass ex:C ;
          sh:targetSubjectsOf ex:p ;
          sh:targetObjectsOf ex:q .
        """)
        kinds = {(t.kind, t.argument) for t in shape_named(sg, "S").targets}
        assert kinds == {
            (TargetKind.NODE, iri(EX + "a")),
            (TargetKind.CLASS, iri(EX + "C")),
            (TargetKind.SUBJECTS_OF, iri(EX + "p")),
            (TargetKind.OBJECTS_OF, iri(EX + "q")),
        }

    def test_untargeted_shape_kept(self):
        sg = load_shapes(PREFIX + "ex:S a sh:NodeShape ; sh:nodeKind sh:IRI .")
        assert shape_named(sg, "S").targets == ()


class TestConstraintExtraction:
    def test_min_count_lowered(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:minCount 2 ] .
        """)
        c = shape_named(sg, "S").constraint
        assert c == MinCount(2, Predicate(EX + "p"), TrueC())

    def test_max_count_lowered(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:maxCount 0 ] .
        """)
        assert shape_named(sg, "S").constraint == MaxCount(0, Predicate(EX + "p"), TrueC())

    def test_node_kind_on_values_is_universal(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:nodeKind sh:Literal ] .
        """)
        c = shape_named(sg, "S").constraint
        # every value is a literal == no value is a non-literal
        assert c == Not(SomeThrough(Predicate(EX + "p"),
                                    Not(NodeKind(NodeKindValue.LITERAL))))

    def test_has_value(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:hasValue "v" ] .
        """)
        assert shape_named(sg, "S").constraint == SomeThrough(
            Predicate(EX + "p"), EqConst(literal("v"))
        )

    def test_class_constraint(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:class ex:C ] .
        """)
        c = shape_named(sg, "S").constraint
        inner = SomeThrough(
            Predicate("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
            EqConst(iri(EX + "C")),
        )
        assert c == Not(SomeThrough(Predicate(EX + "p"), Not(inner)))

    def test_property_pairs(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ; sh:equals ex:q ] ;
          sh:property [ sh:path ex:p ; sh:disjoint ex:r ] ;
          sh:property [ sh:path ex:p ; sh:lessThan ex:s ] ;
          sh:property [ sh:path ex:p ; sh:lessThanOrEquals ex:t ] .
        """)
        c = shape_named(sg, "S").constraint
        found = set()

        def walk(x):
            if isinstance(x, And):
                walk(x.left)
                walk(x.right)
            else:
                found.add(x)

        walk(c)
        assert EqualsProp(Predicate(EX + "p"), EX + "q") in found
        assert DisjointProp(Predicate(EX + "p"), EX + "r") in found
        assert OrderProp(Predicate(EX + "p"), EX + "s", OrderOp.LT) in found
        assert OrderProp(Predicate(EX + "p"), EX + "t", OrderOp.LEQ) in found

    def test_closed_with_ignored(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ; sh:closed true ;
          sh:ignoredProperties ( ex:extra ) ;
          sh:property [ sh:path ex:p ; sh:minCount 1 ] .
        """)
        c = shape_named(sg, "S").constraint
        closed = [x for x in _flatten(c) if isinstance(x, Closed)]
        assert closed and closed[0].allowed_predicates == frozenset(
            {EX + "p", EX + "extra"}
        )

    def test_shape_reference(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ; sh:node ex:T .
        ex:T a sh:NodeShape ; sh:nodeKind sh:IRI .
        """)
        assert shape_named(sg, "S").constraint == HasShape(iri(EX + "T"))
        assert shape_named(sg, "T").constraint == NodeKind(NodeKindValue.IRI)

    def test_deactivated_dropped(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ; sh:deactivated true ; sh:nodeKind sh:IRI .
        """)
        assert iri(EX + "S") not in {s.name for s in sg.shapes}

    def test_qualified_counts(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path ex:p ;
            sh:qualifiedValueShape [ sh:nodeKind sh:IRI ] ;
            sh:qualifiedMinCount 2 ; sh:qualifiedMaxCount 3 ] .
        """)
        parts = _flatten(shape_named(sg, "S").constraint)
        mins = [x for x in parts if isinstance(x, MinCount)]
        maxs = [x for x in parts if isinstance(x, MaxCount)]
        assert mins[0].n == 2 and maxs[0].n == 3
        # the qualified value shape becomes an anonymous referenced shape
        assert isinstance(mins[0].constraint, HasShape)
        qualified = next(s for s in sg.shapes
                         if s.name == mins[0].constraint.shape_name)
        assert qualified.constraint == NodeKind(NodeKindValue.IRI)


class TestPaths:
    def test_all_constructors(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ;
          sh:property [ sh:path [ sh:inversePath ex:p ] ; sh:minCount 1 ] ;
          sh:property [ sh:path ( ex:p ex:q ) ; sh:minCount 1 ] ;
          sh:property [ sh:path [ sh:alternativePath ( ex:p ex:q ) ] ; sh:minCount 1 ] ;
          sh:property [ sh:path [ sh:zeroOrOnePath ex:p ] ; sh:minCount 1 ] ;
          sh:property [ sh:path [ sh:zeroOrMorePath ex:p ] ; sh:minCount 1 ] ;
          sh:property [ sh:path [ sh:oneOrMorePath ex:p ] ; sh:minCount 1 ] .
        """)
        paths = {x.path for x in _flatten(shape_named(sg, "S").constraint)
                 if isinstance(x, MinCount)}
        p, q = Predicate(EX + "p"), Predicate(EX + "q")
        # one-or-more is normalized into a sequence with a star tail
        assert paths == {
            Inverse(p), Sequence(p, q), Alternative(p, q),
            ZeroOrOne(p), ZeroOrMore(p), Sequence(p, ZeroOrMore(p)),
        }

    def test_normalize_one_or_more(self):
        p = Predicate(EX + "p")
        assert normalize_path(OneOrMore(p)) == Sequence(p, ZeroOrMore(p))
        # idempotent
        assert normalize_path(normalize_path(OneOrMore(p))) == normalize_path(OneOrMore(p))


class TestErrors:
    def test_unsupported_component(self):
        with pytest.raises(UnsupportedComponent):
            load_shapes(PREFIX + """
            ex:S a sh:NodeShape ;
              sh:property [ sh:path ex:p ; sh:pattern "^x" ] .
            """)

    def test_pair_component_needs_property_shape(self):
        with pytest.raises(MalformedShape):
            load_shapes(PREFIX + "ex:S a sh:NodeShape ; sh:equals ex:q .")

    def test_min_count_needs_integer(self):
        with pytest.raises(MalformedShape):
            load_shapes(PREFIX + """
            ex:S a sh:NodeShape ;
              sh:property [ sh:path ex:p ; sh:minCount "two" ] .
            """)


class TestRecursion:
    def test_mutual_recursion_detected(self):
        sg = load_shapes(PREFIX + """
        ex:S1 a sh:NodeShape ; sh:node ex:S2 .
        ex:S2 a sh:NodeShape ; sh:node ex:S1 .
        """)
        cycles = detect_recursion(sg)
        assert cycles and {iri(EX + "S1"), iri(EX + "S2")} == set(cycles[0])

    def test_self_loop_detected(self):
        sg = load_shapes(PREFIX + "ex:S a sh:NodeShape ; sh:node ex:S .")
        assert detect_recursion(sg)

    def test_dag_is_fine(self):
        sg = load_shapes(PREFIX + """
        ex:S a sh:NodeShape ; sh:node ex:T .
        ex:T a sh:NodeShape ; sh:nodeKind sh:IRI .
        """)
        assert detect_recursion(sg) == []


def _flatten(c):
    if isinstance(c, And):
        return _flatten(c.left) + _flatten(c.right)
    return [c]

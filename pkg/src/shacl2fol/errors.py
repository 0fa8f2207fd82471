"""Exception types shared across the toolkit."""


class Shacl2FolError(Exception):
    """Base class for all toolkit errors."""


class RdfSyntaxError(Shacl2FolError):
    """Malformed RDF input; carries the 1-based source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnsupportedFeature(Shacl2FolError):
    """Turtle construct outside the supported subset."""


class UnsupportedComponent(Shacl2FolError):
    """SHACL constraint component outside the supported fragment."""

    def __init__(self, component_iri):
        self.component_iri = component_iri
        super().__init__(f"unsupported SHACL component: {component_iri}")


class MalformedShape(Shacl2FolError):
    """Dangling shape reference or ill-typed constraint parameter."""


class RecursiveShapeGraph(Shacl2FolError):
    """The direct evaluator only handles non-recursive shape graphs."""


class InvalidOptions(Shacl2FolError):
    """Inconsistent emission options (e.g. $distinct with FOF)."""


class CardinalityLimitExceeded(Shacl2FolError):
    """A cardinality bound above the configured expansion limit."""

    def __init__(self, n, limit):
        self.n = n
        self.limit = limit
        super().__init__(f"cardinality {n} exceeds expansion limit {limit}")


class ProverNotFound(Shacl2FolError):
    """No usable theorem prover executable could be located."""


class ProverProtocolError(Shacl2FolError):
    """Prover output did not contain a parseable SZS status line."""

"""Exception types shared across the package."""


class AnalysisError(Exception):
    """Base class for structured analysis failures."""


class ToleranceAmbiguityError(AnalysisError):
    """Clustering cannot decide a split at the given tolerance.

    Raised when two values are separated by a gap in (tol, 2*tol], or when
    a chain of nearby values drifts further apart than tol.
    """


class DenseLimitError(AnalysisError):
    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(
            f"dense computation refused for n={n} > limit {limit}; "
            f"raise the limit explicitly to proceed"
        )


class SchemeAxiomError(AnalysisError):
    """A relation partition violates one of the defining scheme axioms."""

    def __init__(self, axiom: int, message: str, witnesses=()):
        self.axiom = axiom
        self.witnesses = list(witnesses)
        super().__init__(f"axiom {axiom}: {message}")


class DegenerateElementError(AnalysisError):
    """Every seeded generic algebra element had too few distinct eigenvalues."""


class MethodsDisagreeError(AnalysisError):
    """Two routes that must agree produced different answers."""


class SchurDisconnectedError(AnalysisError):
    def __init__(self, max_degree: int):
        self.max_degree = max_degree
        super().__init__(
            f"no full-rank combination of entrywise powers up to degree {max_degree}"
        )


class GraphStructureError(AnalysisError):
    """The graph lacks structure required by the operation (regularity, connectivity)."""


class GramError(AnalysisError):
    """The matrix is not the Gram matrix of distinct unit vectors."""


class ParseError(AnalysisError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")

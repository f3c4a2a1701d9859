"""Dense symmetric-matrix kernel: eigenvalue clustering, numerical rank,
and the ordinary/entrywise polynomial calculus used by the rest of the
package.

All tolerances are absolute.  The default of 1e-9 suits matrices whose
entries are O(1)..O(1e3), which covers every catalog object here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DenseLimitError, ToleranceAmbiguityError

DEFAULT_TOL = 1e-9
DEFAULT_MAX_DENSE = 5000


def check_dense_limit(n: int, max_dense: int | None = DEFAULT_MAX_DENSE) -> None:
    """Refuse dense O(n^3) work above the cap; pass max_dense=None to lift it."""
    if max_dense is not None and n > max_dense:
        raise DenseLimitError(n, max_dense)


class SymMatrix:
    """Immutable dense real symmetric matrix.

    Input is symmetrized as (A + A')/2 and frozen.  Entries must be finite.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] == 0:
            raise ValueError("matrix must have at least one row")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        self._a = a

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def a(self) -> np.ndarray:
        """The underlying (read-only) ndarray."""
        return self._a

    def __getitem__(self, key):
        return self._a[key]

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n})"

    @staticmethod
    def identity(n: int) -> "SymMatrix":
        return SymMatrix(np.eye(n))

    @staticmethod
    def ones(n: int) -> "SymMatrix":
        return SymMatrix(np.ones((n, n)))


def as_sym(m) -> SymMatrix:
    return m if isinstance(m, SymMatrix) else SymMatrix(m)


def max_abs_diff(x, y) -> float:
    return float(np.max(np.abs(as_sym(x).a - as_sym(y).a)))


def snap_to_int(x: float, tol: float = DEFAULT_TOL) -> float:
    """Round to the nearest integer when within tol, else leave unchanged."""
    r = round(x)
    return float(r) if abs(x - r) <= tol else float(x)


def cluster_values(raw, tol: float = DEFAULT_TOL):
    """Group reals into clusters of spread <= tol separated by gaps > 2*tol.

    Returns (values, counts, labels): cluster means in decreasing order,
    member counts, and for each input value the index of its cluster.

    A gap between neighbours inside (tol, 2*tol] is ambiguous at this
    tolerance and raises ToleranceAmbiguityError, as does a chain of
    close values whose total spread exceeds tol.
    """
    arr = np.asarray(raw, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("cannot cluster an empty value list")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    order = np.argsort(-arr, kind="stable")
    svals = arr[order]
    groups = [[0]]
    for pos in range(1, svals.size):
        gap = svals[pos - 1] - svals[pos]
        if gap <= tol:
            groups[-1].append(pos)
        elif gap <= 2 * tol:
            raise ToleranceAmbiguityError(
                f"values {svals[pos]!r} and {svals[pos - 1]!r} are separated by "
                f"{gap!r}, inside ({tol!r}, {2 * tol!r}]; adjust the tolerance"
            )
        else:
            groups.append([pos])
    values: list[float] = []
    counts: list[int] = []
    labels = np.empty(arr.size, dtype=int)
    for gi, members in enumerate(groups):
        spread = svals[members[0]] - svals[members[-1]]
        if spread > tol:
            raise ToleranceAmbiguityError(
                f"cluster of {len(members)} values spreads over {spread!r} > "
                f"tol {tol!r}; adjust the tolerance"
            )
        values.append(float(np.mean(svals[members])))
        counts.append(len(members))
        labels[order[members]] = gi
    return values, counts, labels


@dataclass(frozen=True)
class EigenClusters:
    """Distinct (clustered) eigenvalues in decreasing order with multiplicities.

    Representatives within tol of an integer are snapped to it; raw clusters
    are separated by gaps > 2*tolerance, which keeps the snapped values
    strictly decreasing.
    """

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    tolerance: float

    def __post_init__(self):
        if len(self.values) != len(self.multiplicities):
            raise ValueError("values and multiplicities must have equal length")
        if not self.values:
            raise ValueError("at least one eigenvalue cluster required")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        for a, b in zip(self.values, self.values[1:]):
            if not a > b:
                raise ValueError("cluster values must be strictly decreasing")

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def s(self) -> int:
        """Number of distinct eigenvalues minus one."""
        return len(self.values) - 1

    def multiplicity_of(self, value: float, tol: float | None = None) -> int:
        """Multiplicity of the cluster within tol of value, 0 if none."""
        t = self.tolerance if tol is None else tol
        for v, m in zip(self.values, self.multiplicities):
            if abs(v - value) <= t:
                return m
        return 0


def eigen_clusters(
    m,
    tol: float = DEFAULT_TOL,
    *,
    snap: bool = True,
    max_dense: int | None = DEFAULT_MAX_DENSE,
) -> EigenClusters:
    """Clustered spectrum of a symmetric matrix, in decreasing order."""
    m = as_sym(m)
    check_dense_limit(m.n, max_dense)
    w = np.linalg.eigvalsh(m.a)
    values, counts, _ = cluster_values(w, tol)
    if snap:
        values = [snap_to_int(v, tol) for v in values]
    return EigenClusters(tuple(values), tuple(counts), tol)


def rank_tol(m, tol: float = DEFAULT_TOL, max_dense: int | None = DEFAULT_MAX_DENSE) -> int:
    """Number of eigenvalues of magnitude > tol."""
    m = as_sym(m)
    check_dense_limit(m.n, max_dense)
    w = np.linalg.eigvalsh(m.a)
    return int(np.count_nonzero(np.abs(w) > tol))


def hadamard_power(m, t: int) -> SymMatrix:
    """Entrywise power M^(t); t = 0 gives the all-ones matrix.

    Computed by repeated entrywise multiplication so that splitting the
    exponent never changes the result on exactly-representable entries.
    """
    m = as_sym(m)
    if t < 0:
        raise ValueError("exponent must be nonnegative")
    out = np.ones_like(m.a)
    for _ in range(t):
        out = out * m.a
    return SymMatrix(out)


def eval_matrix_poly(coeffs, m, mode: str = "ordinary") -> SymMatrix:
    """Evaluate sum_t coeffs[t] * M^t by Horner's rule.

    mode "ordinary" uses matrix powers (degree-0 term is the identity);
    mode "hadamard" uses entrywise powers (degree-0 term is all-ones).
    """
    m = as_sym(m)
    cs = [float(c) for c in coeffs]
    if not cs:
        raise ValueError("coefficient list must be nonempty")
    n = m.n
    acc = np.zeros((n, n))
    if mode == "ordinary":
        eye = np.eye(n)
        for c in reversed(cs):
            acc = acc @ m.a + c * eye
    elif mode == "hadamard":
        ones = np.ones((n, n))
        for c in reversed(cs):
            acc = acc * m.a + c * ones
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'ordinary' or 'hadamard'")
    return SymMatrix(acc)


def poly_from_roots(roots, scale: float = 1.0) -> list[float]:
    """Coefficients, constant term first, of scale * prod (x - r)."""
    coeffs = [1.0]
    for r in roots:
        nxt = [0.0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] -= r * c
            nxt[i + 1] += c
        coeffs = nxt
    return [scale * c for c in coeffs]

"""Symmetric association schemes: axiom validation with witnesses, the
primitive idempotents of the adjacency algebra, eigenmatrices and Krein
parameters, and a parametric route that needs only the intersection
numbers.

Class 0 is always the identity relation.  Eigenmatrix convention: row j,
column i holds the value of class i on eigenspace j, so row 0 of the first
eigenmatrix lists the degrees and row 0 of the second the multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateElementError,
    ParseError,
    SchemeAxiomError,
    ToleranceAmbiguityError,
)
from .graphs import DistanceData
from .numerics import (
    DEFAULT_MAX_DENSE,
    DEFAULT_TOL,
    SymMatrix,
    check_dense_limit,
    cluster_values,
)

DEFAULT_SEEDS = (20839, 61409, 92821)


@dataclass(frozen=True)
class RelationPartition:
    """Partition of X x X into classes 0..d, as an n x n label matrix.

    Construction checks only shape and label range; the scheme axioms
    themselves are checked by validate_scheme so that invalid partitions
    can be represented and rejected with witnesses.
    """

    labels: np.ndarray
    d: int

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @staticmethod
    def from_matrix(labels, d: int | None = None) -> "RelationPartition":
        arr = np.array(labels, dtype=int)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("label matrix must be square")
        n = arr.shape[0]
        if n < 2:
            raise ValueError("schemes need at least two points")
        if arr.min() < 0:
            raise ValueError("labels must be nonnegative")
        if d is None:
            d = int(arr.max())
        elif arr.max() > d:
            raise ValueError(f"label {arr.max()} exceeds declared class count {d}")
        if d < 1:
            raise ValueError("schemes need at least one class besides the identity")
        arr.setflags(write=False)
        return RelationPartition(arr, d)

    def adjacency(self, i: int) -> np.ndarray:
        """0/1 integer indicator matrix of class i."""
        if not 0 <= i <= self.d:
            raise ValueError(f"class {i} outside 0..{self.d}")
        return (self.labels == i).astype(np.int64)

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(int(np.count_nonzero(self.labels == i)) for i in range(self.d + 1))


def from_distance_data(dd: DistanceData) -> RelationPartition:
    """Distance partition of a connected graph as a relation partition."""
    if not dd.is_connected():
        raise ValueError("distance partition of a disconnected graph is not a relation partition")
    return RelationPartition.from_matrix(np.array(dd.dist), d=dd.diameter)


def validate_scheme(rel: RelationPartition) -> np.ndarray:
    """Check the defining axioms and return the intersection numbers
    p[i, j, k] as exact integers.

    Axioms checked: class 0 is the identity (1); every class is nonempty
    (2); the partition is symmetric (3); for each (i, j, k) the count of
    z with label(x, z) = i and label(z, y) = j is the same for every pair
    (x, y) in class k (4).  Violations raise SchemeAxiomError carrying the
    offending pairs.
    """
    lab = rel.labels
    n, d = rel.n, rel.d
    diag = np.diag(lab)
    bad = np.nonzero(diag != 0)[0]
    if bad.size:
        x = int(bad[0])
        raise SchemeAxiomError(1, f"diagonal pair ({x}, {x}) has label {int(diag[x])}, not 0",
                               [(x, x)])
    off_zero = np.argwhere((lab == 0) & ~np.eye(n, dtype=bool))
    if off_zero.size:
        x, y = (int(v) for v in off_zero[0])
        raise SchemeAxiomError(1, f"off-diagonal pair ({x}, {y}) lies in the identity class",
                               [(x, y)])
    asym = np.argwhere(lab != lab.T)
    if asym.size:
        x, y = (int(v) for v in asym[0])
        raise SchemeAxiomError(
            3, f"pair ({x}, {y}) has label {int(lab[x, y])} but ({y}, {x}) has {int(lab[y, x])}",
            [(x, y), (y, x)])
    for i in range(d + 1):
        if not np.any(lab == i):
            raise SchemeAxiomError(2, f"class {i} is empty", [])
    adj = [rel.adjacency(i) for i in range(d + 1)]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(i, d + 1):
            counts = adj[i] @ adj[j]
            for k in range(d + 1):
                mask = lab == k
                vals = counts[mask]
                first = int(vals[0])
                if np.any(vals != first):
                    pairs = np.argwhere(mask)
                    offender = pairs[np.nonzero(vals != first)[0][0]]
                    x1, y1 = (int(v) for v in pairs[0])
                    x2, y2 = (int(v) for v in offender)
                    raise SchemeAxiomError(
                        4,
                        f"not a scheme: p_{{{i},{j}}}^{{{k}}} differs between pairs "
                        f"({x1}, {y1}) and ({x2}, {y2}): {first} vs {int(counts[x2, y2])}",
                        [(x1, y1), (x2, y2)])
                p[i, j, k] = first
                p[j, i, k] = first
    return p


def _canonical_order(projs, mults, a1, tol):
    """Identity-eigenspace projector first, then decreasing eigenvalue on
    class 1, ties broken by increasing rank."""
    n = a1.shape[0]
    ones = np.ones(n)
    weights = [float(ones @ e @ ones) for e in projs]
    j0 = int(np.argmax(weights))
    rest = []
    for idx in range(len(projs)):
        if idx == j0:
            continue
        lam = float(np.tensordot(a1, projs[idx]) / mults[idx])
        rest.append((round(lam / max(tol, 1e-12)), mults[idx], idx))
    rest.sort(key=lambda t: (-t[0], t[1]))
    return [j0] + [idx for _, _, idx in rest]


def idempotents(
    rel: RelationPartition,
    tol: float = DEFAULT_TOL,
    seeds=DEFAULT_SEEDS,
    max_dense: int | None = DEFAULT_MAX_DENSE,
) -> list[SymMatrix]:
    """Primitive idempotents of the adjacency algebra, canonically ordered.

    Diagonalizes a random fixed-seed combination of the class matrices.  A
    combination with fewer than d+1 distinct eigenvalues (or an ambiguous
    clustering) is degenerate and triggers the next seed; running out of
    seeds raises DegenerateElementError.  Each projector is verified to act
    as a scalar on every class matrix.
    """
    check_dense_limit(rel.n, max_dense)
    n, d = rel.n, rel.d
    adj = [rel.adjacency(i).astype(float) for i in range(d + 1)]
    for seed in seeds:
        coeffs = np.random.default_rng(seed).uniform(1.0, 2.0, d + 1)
        generic = sum(c * a for c, a in zip(coeffs, adj))
        w, vecs = np.linalg.eigh((generic + generic.T) / 2.0)
        try:
            _, counts, labels = cluster_values(w, tol)
        except ToleranceAmbiguityError:
            continue
        if len(counts) != d + 1:
            continue
        projs = []
        for ci in range(len(counts)):
            cols = vecs[:, labels == ci]
            projs.append(cols @ cols.T)
        mults = [int(round(np.trace(e))) for e in projs]
        scalar_resid = 0.0
        for e, m in zip(projs, mults):
            for a in adj:
                lam = float(np.tensordot(a, e)) / m
                scalar_resid = max(scalar_resid, float(np.max(np.abs(a @ e - lam * e))))
        if scalar_resid > 100 * tol * max(1.0, n):
            continue
        order = _canonical_order(projs, mults, adj[1], tol)
        return [SymMatrix(projs[idx]) for idx in order]
    raise DegenerateElementError(
        f"generic element degenerate for every seed in {tuple(seeds)}"
    )


def krein_parameters(idems, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Structure constants q[i, j, k] of the idempotents under the
    entrywise product, extracted by trace inner products:
    q_ij^k = n * <E_i o E_j, E_k> / rank(E_k)."""
    n = idems[0].n
    d = len(idems) - 1
    mats = [e.a for e in idems]
    mults = [int(round(np.trace(e))) for e in mats]
    q = np.empty((d + 1, d + 1, d + 1))
    for i in range(d + 1):
        for j in range(i, d + 1):
            had = mats[i] * mats[j]
            for k in range(d + 1):
                val = n * float(np.tensordot(had, mats[k])) / mults[k]
                q[i, j, k] = val
                q[j, i, k] = val
    return q


@dataclass(frozen=True)
class SchemeParameters:
    """Numerical invariants of a scheme: intersection numbers p[i, j, k],
    both eigenmatrices, degrees, multiplicities, and Krein numbers."""

    n: int
    d: int
    p: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    degrees: tuple[int, ...]
    multiplicities: tuple[int, ...]
    krein: np.ndarray

    def __post_init__(self):
        if self.degrees[0] != 1 or self.multiplicities[0] != 1:
            raise ValueError("class 0 must have degree 1 and multiplicity 1")
        if sum(self.degrees) != self.n or sum(self.multiplicities) != self.n:
            raise ValueError("degrees and multiplicities must each sum to n")

    def min_krein(self) -> float:
        return float(self.krein.min())


def eigenmatrices(
    rel: RelationPartition,
    idems,
    tol: float = DEFAULT_TOL,
    p: np.ndarray | None = None,
) -> SchemeParameters:
    """Assemble SchemeParameters from an explicit scheme.

    First-eigenmatrix entries are the eigenvalues of each class matrix on
    each idempotent image (trace inner products); second-eigenmatrix
    entries are representative entries of each idempotent, scaled by n.
    The two are cross-checked by P Q = n I.
    """
    if p is None:
        p = validate_scheme(rel)
    n, d = rel.n, rel.d
    adj = [rel.adjacency(i).astype(float) for i in range(d + 1)]
    mults = []
    for e in idems:
        t = float(np.trace(e.a))
        m = int(round(t))
        if abs(t - m) > 1e-6 * max(1.0, n):
            raise ValueError(f"idempotent trace {t} is not close to an integer")
        mults.append(m)
    if sum(mults) != n:
        raise ValueError(f"multiplicities {mults} do not sum to n = {n}")
    pm = np.empty((d + 1, d + 1))
    for j, e in enumerate(idems):
        for i in range(d + 1):
            pm[j, i] = float(np.tensordot(adj[i], e.a)) / mults[j]
    reps = [tuple(int(v) for v in np.argwhere(rel.labels == j)[0]) for j in range(d + 1)]
    qm = np.empty((d + 1, d + 1))
    for j, (x, y) in enumerate(reps):
        for i in range(d + 1):
            qm[j, i] = n * idems[i].a[x, y]
    dev = float(np.max(np.abs(pm @ qm - n * np.eye(d + 1))))
    if dev > 100 * tol * max(1.0, n):
        raise ValueError(f"eigenmatrix product deviates from n*I by {dev:.3g}")
    degrees = tuple(int(p[i, i, 0]) for i in range(d + 1))
    if float(np.max(np.abs(pm[0] - np.array(degrees)))) > 100 * tol * max(1.0, n):
        raise ValueError("first eigenmatrix row disagrees with the degrees")
    pm[0] = degrees
    qm[0] = mults
    return SchemeParameters(
        n=n, d=d, p=p, P=pm, Q=qm,
        degrees=degrees, multiplicities=tuple(mults),
        krein=krein_parameters(idems),
    )


def _check_tensor(p: np.ndarray, n: int) -> tuple[int, ...]:
    """Integrity checks on an intersection tensor; returns the degrees."""
    if p.ndim != 3 or len(set(p.shape)) != 1:
        raise ValueError("intersection tensor must be cubic")
    d = p.shape[0] - 1
    if d < 1:
        raise ValueError("schemes need at least one class besides the identity")
    if p.min() < 0:
        raise ValueError("intersection numbers must be nonnegative")
    if not np.array_equal(p, p.transpose(1, 0, 2)):
        raise ValueError("inconsistent tensor: p[i, j, k] != p[j, i, k]")
    degrees = tuple(int(p[i, i, 0]) for i in range(d + 1))
    if degrees[0] != 1 or any(k < 1 for k in degrees):
        raise ValueError(f"degrees {degrees} must be positive with degree 1 for class 0")
    if sum(degrees) != n:
        raise ValueError(f"degrees {degrees} do not sum to n = {n}")
    sums = p.sum(axis=0)
    for j in range(d + 1):
        for k in range(d + 1):
            if int(sums[j, k]) != degrees[j]:
                raise ValueError(
                    f"inconsistent tensor: sum_i p[i, {j}, {k}] = {int(sums[j, k])}"
                    f" != degree {degrees[j]}")
    return degrees


def parametric_parameters(
    p,
    n: int,
    tol: float = DEFAULT_TOL,
    seeds=DEFAULT_SEEDS,
) -> SchemeParameters:
    """Eigenmatrices from intersection numbers alone.

    The transposed intersection matrices commute (checked exactly); their
    simultaneous diagonalization yields the rows of the first eigenmatrix,
    multiplicities come from degree-weighted row norms, and the second
    eigenmatrix is n times the inverse of the first.
    """
    p = np.array(p, dtype=np.int64)
    degrees = _check_tensor(p, n)
    d = p.shape[0] - 1
    bt = [p[i].astype(float) for i in range(d + 1)]
    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            if not np.array_equal(p[i] @ p[j], p[j] @ p[i]):
                raise ValueError(f"intersection matrices {i} and {j} do not commute")
    rows = None
    for seed in seeds:
        coeffs = np.random.default_rng(seed).uniform(1.0, 2.0, d + 1)
        combo = sum(c * b for c, b in zip(coeffs, bt))
        vals, vecs = np.linalg.eig(combo)
        scale = max(1.0, float(np.max(np.abs(vals))))
        if np.max(np.abs(vals.imag)) > tol * scale:
            continue
        sv = np.sort(vals.real)
        if d >= 1 and np.min(np.diff(sv)) <= 2 * tol * scale:
            continue
        cand = np.empty((d + 1, d + 1))
        ok = True
        for i in range(d + 1):
            di = np.linalg.solve(vecs, bt[i] @ vecs)
            off = di - np.diag(np.diag(di))
            if np.max(np.abs(off)) > 1e-6 * max(1.0, np.max(np.abs(di))):
                ok = False
                break
            cand[:, i] = np.diag(di).real
        if ok:
            rows = cand
            break
    if rows is None:
        raise DegenerateElementError(
            f"no seed in {tuple(seeds)} separated the intersection-matrix eigenvalues")
    deg_vec = np.array(degrees, dtype=float)
    j0 = int(np.argmin(np.abs(rows - deg_vec).max(axis=1)))
    if np.max(np.abs(rows[j0] - deg_vec)) > 1e-6 * max(1.0, deg_vec.max()):
        raise ValueError("no eigenvalue row matches the degree vector")
    mult_raw = [n / float((rows[j] ** 2 / deg_vec).sum()) for j in range(d + 1)]
    mults = []
    for mv in mult_raw:
        m = int(round(mv))
        if abs(mv - m) > 1e-6 * max(1.0, abs(mv)):
            raise ValueError(f"non-integral multiplicity {mv}")
        mults.append(m)
    if sum(mults) != n:
        raise ValueError(f"multiplicities {mults} do not sum to n = {n}")
    order = [j0] + sorted(
        (j for j in range(d + 1) if j != j0),
        key=lambda j: (-round(rows[j, 1] / max(tol, 1e-12)), mults[j]),
    )
    pm = rows[order]
    pm[0] = deg_vec
    mults = [mults[j] for j in order]
    qm = n * np.linalg.inv(pm)
    krein = np.einsum("ku,ui,uj->ijk", pm, qm, qm) / n
    return SchemeParameters(
        n=n, d=d, p=p, P=pm, Q=qm,
        degrees=degrees, multiplicities=tuple(mults), krein=krein,
    )


# --- relation-matrix text format ------------------------------------------
# First line "n d", then n rows of n labels.  Blank lines and "#" comments
# are ignored.


def parse_relation_matrix(text: str) -> RelationPartition:
    header = None
    rows: list[list[int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(line_no, f"expected integers, got {line!r}") from None
        if header is None:
            if len(nums) != 2:
                raise ParseError(line_no, "header must be 'n d'")
            header = (nums[0], nums[1])
            continue
        if len(nums) != header[0]:
            raise ParseError(line_no, f"expected {header[0]} labels, got {len(nums)}")
        rows.append(nums)
    if header is None:
        raise ParseError(0, "empty relation-matrix file")
    n, d = header
    if len(rows) != n:
        raise ParseError(0, f"header declares {n} rows but {len(rows)} found")
    try:
        return RelationPartition.from_matrix(rows, d=d)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def format_relation_matrix(rel: RelationPartition) -> str:
    lines = [f"{rel.n} {rel.d}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in rel.labels)
    return "\n".join(lines) + "\n"


# --- intersection-tensor text format --------------------------------------
# First line "n d", then one line "i j k value" per nonzero entry.


def parse_intersection_tensor(text: str):
    header = None
    entries: list[tuple[int, int, int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(line_no, f"expected integers, got {line!r}") from None
        if header is None:
            if len(nums) != 2:
                raise ParseError(line_no, "header must be 'n d'")
            header = (nums[0], nums[1])
            continue
        if len(nums) != 4:
            raise ParseError(line_no, "tensor entries are 'i j k value'")
        i, j, k, val = nums
        if not (0 <= i <= header[1] and 0 <= j <= header[1] and 0 <= k <= header[1]):
            raise ParseError(line_no, f"indices ({i}, {j}, {k}) outside 0..{header[1]}")
        entries.append((i, j, k, val))
    if header is None:
        raise ParseError(0, "empty tensor file")
    n, d = header
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i, j, k, val in entries:
        p[i, j, k] = val
    return p, n


def format_intersection_tensor(p: np.ndarray, n: int) -> str:
    d = p.shape[0] - 1
    lines = [f"{n} {d}"]
    for i in range(d + 1):
        for j in range(d + 1):
            for k in range(d + 1):
                if p[i, j, k]:
                    lines.append(f"{i} {j} {k} {int(p[i, j, k])}")
    return "\n".join(lines) + "\n"

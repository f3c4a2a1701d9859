"""Spherical few-distance sets given by Gram matrices: the dimension/
distance-count bound, the dual eigenvalue-forcing checks, and the
Schur-diameter (least degree at which entrywise polynomials of the Gram
matrix reach full rank).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GramError, ParseError, SchurDisconnectedError
from .numerics import (
    DEFAULT_MAX_DENSE,
    DEFAULT_TOL,
    SymMatrix,
    as_sym,
    check_dense_limit,
    cluster_values,
    eigen_clusters,
    eval_matrix_poly,
    poly_from_roots,
    rank_tol,
)
from .reports import FAIL, HYPOTHESIS_NOT_MET, PASS, TheoremReport

SCHUR_SEEDS = (4241, 7151, 9343)


def absolute_bound(m: int, d: int) -> int:
    """C(m+d-1, d) + C(m+d-2, d-1): the most points on a sphere in R^m
    with d distinct pairwise inner products.  Exact integers."""
    if m < 1:
        raise ValueError("dimension must be at least 1")
    if d < 0:
        raise ValueError("distance count must be nonnegative")
    if d == 0:
        return 1
    return math.comb(m + d - 1, d) + math.comb(m + d - 2, d - 1)


@dataclass(frozen=True)
class SphericalSet:
    """Distinct unit vectors described by their Gram matrix.

    values[0] is the diagonal 1; values[1:] are the clustered distinct
    off-diagonal inner products in decreasing order, all below 1.
    labels[x, y] indexes values, with 0 exactly on the diagonal.
    """

    gram: SymMatrix
    dimension: int
    values: tuple[float, ...]
    labels: np.ndarray
    tolerance: float

    @property
    def n(self) -> int:
        return self.gram.n

    @property
    def s(self) -> int:
        """Number of distinct off-diagonal inner products."""
        return len(self.values) - 1

    def distance_class(self, i: int) -> np.ndarray:
        """0/1 adjacency matrix of the pairs with inner product values[i]."""
        if not 1 <= i <= self.s:
            raise ValueError(f"class {i} outside 1..{self.s}")
        return (self.labels == i).astype(float)


def from_gram(
    m,
    tol: float = DEFAULT_TOL,
    max_dense: int | None = DEFAULT_MAX_DENSE,
) -> SphericalSet:
    """Build a SphericalSet from a Gram matrix.

    Requires unit diagonal within tol (then snapped to exactly 1), positive
    semidefiniteness within tol, and no off-diagonal value at 1 (repeated
    points).  The number of distinct inner products is decided by
    clustering at tol.
    """
    m = as_sym(m)
    check_dense_limit(m.n, max_dense)
    n = m.n
    diag_dev = float(np.max(np.abs(np.diag(m.a) - 1.0))) if n else 0.0
    if diag_dev > tol:
        raise GramError(f"diagonal deviates from 1 by {diag_dev:.3g} > tol")
    a = np.array(m.a)
    np.fill_diagonal(a, 1.0)
    gram = SymMatrix(a)
    wmin = float(np.linalg.eigvalsh(gram.a).min())
    if wmin < -tol:
        raise GramError(f"not positive semidefinite: least eigenvalue {wmin:.3g}")
    labels = np.zeros((n, n), dtype=int)
    off = ~np.eye(n, dtype=bool)
    if n > 1:
        vals, _, lab = cluster_values(gram.a[off], tol)
        if vals[0] >= 1.0 - tol:
            raise GramError(f"repeated points: off-diagonal inner product {vals[0]:.6g}")
        labels[off] = lab + 1
        values = (1.0, *vals)
    else:
        values = (1.0,)
    labels.setflags(write=False)
    return SphericalSet(
        gram=gram,
        dimension=rank_tol(gram, tol, max_dense=max_dense),
        values=values,
        labels=labels,
        tolerance=tol,
    )


def from_idempotent(params, idems, j: int, tol: float = DEFAULT_TOL) -> SphericalSet:
    """Unit-sphere embedding carried by idempotent j: Gram = (n/m_j) E_j,
    whose off-diagonal values are the column-j second-eigenmatrix entries
    divided by m_j."""
    if not 1 <= j <= params.d:
        raise ValueError(f"eigenspace {j} outside 1..{params.d}")
    mj = params.multiplicities[j]
    return from_gram(SymMatrix(params.n / mj * idems[j].a), tol)


def k_star(values, i: int) -> float:
    """prod over j != i of (values[0] - values[j]) / (values[i] - values[j]),
    where values[0] = 1 heads the inner-product list."""
    s = len(values) - 1
    if not 1 <= i <= s:
        raise ValueError(f"index {i} outside 1..{s}")
    out = 1.0
    for j in range(1, s + 1):
        if j != i:
            out *= (values[0] - values[j]) / (values[i] - values[j])
    return out


def _annihilator_combo(sph_values, powers) -> np.ndarray:
    """Evaluate prod (x - value) over off-diagonal values via the stored
    entrywise powers; on a valid Gram matrix this is a positive multiple
    of the identity."""
    coeffs = poly_from_roots(sph_values[1:])
    out = np.zeros_like(powers[0])
    for c, pw in zip(coeffs, powers):
        out += c * pw
    return out


def schur_diameter(
    m,
    tol: float = DEFAULT_TOL,
    seeds=SCHUR_SEEDS,
    t_max: int | None = None,
    max_dense: int | None = DEFAULT_MAX_DENSE,
) -> int:
    """Least t such that some degree-t entrywise polynomial of M has full
    rank, where degree 0 is the all-ones matrix.

    Tries a few fixed-seed random combinations of the entrywise powers at
    each degree.  The search stops at t_max, defaulting to the number of
    distinct entry values minus one, beyond which the span stops growing;
    for a unit-diagonal Gram matrix the annihilator of the off-diagonal
    values certifies full rank at its distance count.
    """
    m = as_sym(m)
    check_dense_limit(m.n, max_dense)
    n = m.n
    entry_values, _, _ = cluster_values(m.a, tol)
    if t_max is None:
        t_max = len(entry_values) - 1
    unit_diag = float(np.max(np.abs(np.diag(m.a) - 1.0))) <= tol
    off_values: list[float] = []
    if unit_diag and n > 1:
        off_values, _, _ = cluster_values(m.a[~np.eye(n, dtype=bool)], tol)
    powers = [np.ones((n, n))]
    for t in range(t_max + 1):
        if t > 0:
            powers.append(powers[-1] * m.a)
        for seed in seeds:
            coeffs = np.random.default_rng([seed, t]).standard_normal(t + 1)
            coeffs /= np.linalg.norm(coeffs)
            combo = sum(c * pw for c, pw in zip(coeffs, powers))
            if rank_tol(SymMatrix(combo), tol, max_dense=max_dense) == n:
                return t
        if unit_diag and t == len(off_values):
            combo = _annihilator_combo((1.0, *off_values), powers)
            if rank_tol(SymMatrix(combo), tol, max_dense=max_dense) == n:
                return t
    raise SchurDisconnectedError(t_max)


def verify_sphere_theorem(
    sph: SphericalSet,
    tol: float = DEFAULT_TOL,
    route: str = "size",
    declared_d: int | None = None,
) -> TheoremReport:
    """Check the forced eigenvalues of the distance-class graphs.

    route "size" takes |X| > N(m, d-1) as the hypothesis (d defaulting to
    the observed distance count); route "schur" instead requires the
    computed Schur-diameter to equal the distance count.  Conclusions
    checked for each class i: -K*_i is an eigenvalue of the class-i graph
    with multiplicity at least |X| - N(m, d-1), and the interpolating
    entrywise polynomial identity f*_i(M) = K*_i I + A_i holds to 100*tol.
    """
    theorem = "sphere-eigenvalue"
    n, mdim, s = sph.n, sph.dimension, sph.s
    subject = f"sphere(n={n}, m={mdim}, s={s})"
    evidence: dict = {"n": n, "m": mdim, "values": list(sph.values), "route": route}
    if route == "schur":
        sd = schur_diameter(sph.gram, tol)
        evidence["schur_diameter"] = sd
        if sd != s:
            evidence["summary"] = f"Schur-diameter {sd} != distance count {s}"
            return TheoremReport(subject, theorem, HYPOTHESIS_NOT_MET, tol, evidence)
        d = s
    elif route == "size":
        d = s if declared_d is None else declared_d
        if d < s:
            raise ValueError(f"declared distance count {d} below the observed {s}")
    else:
        raise ValueError(f"unknown route {route!r}; expected 'size' or 'schur'")
    bound = absolute_bound(mdim, d - 1) if d >= 1 else 1
    evidence["d"] = d
    evidence["absolute_bound"] = bound
    if route == "size":
        if n <= bound:
            evidence["summary"] = f"n = {n} <= N({mdim}, {d - 1}) = {bound}; size hypothesis not met"
            return TheoremReport(subject, theorem, HYPOTHESIS_NOT_MET, tol, evidence)
        if s != d:
            evidence["witness"] = ["value-count", s, d]
            evidence["summary"] = f"distance count {s} != required {d}"
            return TheoremReport(subject, theorem, FAIL, tol, evidence)
    floor = n - bound
    checks = []
    failures = []
    for i in range(1, d + 1):
        ki = k_star(sph.values, i)
        ai = SymMatrix(sph.distance_class(i))
        spec_i = eigen_clusters(ai, tol)
        mult = spec_i.multiplicity_of(-ki, 10 * tol)
        roots = [sph.values[j] for j in range(1, d + 1) if j != i]
        denom = 1.0
        for r in roots:
            denom *= sph.values[i] - r
        interp = eval_matrix_poly(poly_from_roots(roots, 1.0 / denom), sph.gram, mode="hadamard")
        target = ki * np.eye(n) + ai.a
        resid = float(np.max(np.abs(interp.a - target)))
        checks.append({
            "class": i,
            "k_star": ki,
            "eigenvalue": -ki,
            "multiplicity": mult,
            "floor": floor,
            "interp_residual": resid,
        })
        if mult == 0:
            failures.append(["eigenvalue-missing", i])
        elif mult < floor:
            failures.append(["multiplicity", i, mult, floor])
        if resid > 100 * tol:
            failures.append(["interpolation", i, resid])
    evidence["checks"] = checks
    if failures:
        evidence["witness"] = failures[0]
        evidence["summary"] = f"conclusion violated: {failures[0]}"
        return TheoremReport(subject, theorem, FAIL, tol, evidence)
    evidence["summary"] = (
        f"all {d} distance classes carry the forced eigenvalue with multiplicity >= {floor}"
    )
    return TheoremReport(subject, theorem, PASS, tol, evidence)


# --- Gram-matrix text format ----------------------------------------------
# First line "n", then n rows of n reals.  Blank lines and "#" comments are
# ignored.  Entries are symmetrized on load.


def parse_gram_matrix(text: str) -> SymMatrix:
    n = None
    rows: list[list[float]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError(line_no, f"expected a single count, got {raw.strip()!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(line_no, f"bad count {parts[0]!r}") from None
            if n < 1:
                raise ParseError(line_no, f"count must be positive, got {n}")
            continue
        if len(rows) == n:
            raise ParseError(line_no, f"more than {n} rows")
        try:
            row = [float(x) for x in parts]
        except ValueError:
            raise ParseError(line_no, f"bad entry in {raw.strip()!r}") from None
        if len(row) != n:
            raise ParseError(line_no, f"expected {n} entries, got {len(row)}")
        rows.append(row)
    if n is None:
        raise ParseError(0, "empty input")
    if len(rows) != n:
        raise ParseError(0, f"expected {n} rows, got {len(rows)}")
    return SymMatrix(np.array(rows, dtype=float))


def format_gram_matrix(m: SymMatrix) -> str:
    lines = [str(m.n)]
    for row in m.a:
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"

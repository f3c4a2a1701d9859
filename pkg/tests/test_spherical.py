"""Tests for spherical few-distance sets and the forced-eigenvalue check."""

import math

import numpy as np
import pytest

from conftest import SCHEME_SPECS, analyzed_scheme
from polyscheme.errors import GramError, ParseError, SchurDisconnectedError
from polyscheme.numerics import SymMatrix
from polyscheme.polyprops import POLYNOMIAL, q_polynomial_ordering
from polyscheme.reports import HYPOTHESIS_NOT_MET, PASS
from polyscheme.spherical import (
    absolute_bound,
    format_gram_matrix,
    from_gram,
    from_idempotent,
    k_star,
    parse_gram_matrix,
    schur_diameter,
    verify_sphere_theorem,
)

GOLDEN = (1 + math.sqrt(5)) / 2


def regular_polygon(n):
    """Unit vectors at the vertices of a regular n-gon."""
    angles = 2 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


def gram_of(points):
    return SymMatrix(points @ points.T)


PENTAGON = gram_of(regular_polygon(5))
SQUARE = gram_of(regular_polygon(4))


class TestAbsoluteBound:
    @pytest.mark.parametrize(
        "m, d, expected",
        [(2, 1, 3), (5, 1, 6), (3, 2, 9), (6, 2, 27), (9, 2, 54), (7, 0, 1), (1, 1, 2)],
    )
    def test_frozen_values(self, m, d, expected):
        assert absolute_bound(m, d) == expected

    def test_binomial_identity(self):
        # C(m+d-1,d) + C(m+d-2,d-1) telescopes to C(m+d,d) - C(m+d-2,d-2)
        for m in range(1, 12):
            for d in range(2, 8):
                direct = math.comb(m + d, d) - math.comb(m + d - 2, d - 2)
                assert absolute_bound(m, d) == direct
            assert absolute_bound(m, 1) == m + 1
            assert absolute_bound(m, 0) == 1

    @pytest.mark.parametrize("m, d", [(0, 1), (-2, 2), (3, -1)])
    def test_rejects_bad_arguments(self, m, d):
        with pytest.raises(ValueError):
            absolute_bound(m, d)


class TestFromGram:
    def test_orthonormal_basis(self):
        sph = from_gram(SymMatrix.identity(4))
        assert sph.n == 4
        assert sph.s == 1
        assert sph.dimension == 4
        assert sph.values == (1.0, 0.0)

    def test_pentagon(self):
        sph = from_gram(PENTAGON)
        assert sph.n == 5
        assert sph.dimension == 2
        assert sph.s == 2
        assert np.allclose(
            sph.values, (1.0, math.cos(2 * math.pi / 5), math.cos(4 * math.pi / 5))
        )
        # neighbours at 72 degrees are class 1, the diagonals class 2
        assert list(sph.labels[0]) == [0, 1, 2, 2, 1]

    def test_distance_class_matrix(self):
        sph = from_gram(PENTAGON)
        a1 = sph.distance_class(1)
        assert np.array_equal(a1, a1.T)
        assert a1.sum() == 10
        assert np.array_equal(a1 @ np.ones(5), np.full(5, 2.0))

    def test_bad_diagonal(self):
        with pytest.raises(GramError, match="diagonal deviates from 1"):
            from_gram(SymMatrix(np.diag([1.0, 2.0])))

    def test_not_psd(self):
        g = np.array([[1.0, -2.0], [-2.0, 1.0]])
        with pytest.raises(GramError, match="not positive semidefinite"):
            from_gram(SymMatrix(g))

    def test_repeated_points(self):
        with pytest.raises(GramError, match="repeated points"):
            from_gram(SymMatrix(np.ones((3, 3))))


class TestFromIdempotent:
    def test_petersen_embedding(self):
        scheme = analyzed_scheme("petersen")
        sph = from_idempotent(scheme.params, scheme.idems, 1)
        assert sph.n == 10
        assert sph.dimension == 5
        assert np.allclose(sph.values, (1.0, 1 / 3, -1 / 3))
        # inner products are Q[i, 1] / m_1, so classes line up with the scheme
        assert np.array_equal(sph.labels, scheme.rel.labels)

    def test_values_follow_second_eigenmatrix(self, scheme_case):
        params = scheme_case.params
        for j in range(1, params.d + 1):
            col = params.Q[:, j] / params.multiplicities[j]
            try:
                sph = from_idempotent(params, scheme_case.idems, j)
            except GramError:
                # collapsed embeddings (repeated rows of E_j) are rejected
                assert len(set(np.round(col, 9))) < params.d + 1
                continue
            assert np.allclose(sorted(sph.values, reverse=True), sorted(col, reverse=True))

    @pytest.mark.parametrize("j", [0, 4])
    def test_rejects_out_of_range_eigenspace(self, j):
        scheme = analyzed_scheme("petersen")
        with pytest.raises(ValueError, match="outside 1..2"):
            from_idempotent(scheme.params, scheme.idems, j)


class TestKStar:
    def test_pentagon_golden_ratio(self):
        values = from_gram(PENTAGON).values
        assert k_star(values, 1) == pytest.approx(GOLDEN, abs=1e-12)
        assert k_star(values, 2) == pytest.approx(1 - GOLDEN, abs=1e-12)

    def test_petersen_embedding(self):
        scheme = analyzed_scheme("petersen")
        values = from_idempotent(scheme.params, scheme.idems, 1).values
        assert k_star(values, 1) == pytest.approx(2.0, abs=1e-9)
        assert k_star(values, 2) == pytest.approx(-1.0, abs=1e-9)

    def test_square(self):
        values = from_gram(SQUARE).values
        assert k_star(values, 1) == pytest.approx(2.0, abs=1e-12)
        assert k_star(values, 2) == pytest.approx(-1.0, abs=1e-12)

    def test_single_class_is_empty_product(self):
        assert k_star((1.0, -1 / 3), 1) == 1.0

    @pytest.mark.parametrize("i", [0, 3])
    def test_rejects_out_of_range_index(self, i):
        values = from_gram(PENTAGON).values
        with pytest.raises(ValueError, match="outside 1..2"):
            k_star(values, i)


class TestSchurDiameter:
    def test_orthonormal_basis(self):
        assert schur_diameter(SymMatrix.identity(5)) == 1

    def test_pentagon(self):
        assert schur_diameter(PENTAGON) == 2

    def test_petersen_embedding(self):
        scheme = analyzed_scheme("petersen")
        sph = from_idempotent(scheme.params, scheme.idems, 1)
        assert schur_diameter(sph.gram) == 2

    def test_all_ones_disconnected(self):
        with pytest.raises(SchurDisconnectedError) as info:
            schur_diameter(SymMatrix(np.ones((4, 4))))
        assert info.value.max_degree == 0

    def test_truncated_degree_disconnected(self):
        # the square needs degree 2; capping at 1 must fail loudly
        with pytest.raises(SchurDisconnectedError, match="up to degree 1") as info:
            schur_diameter(SQUARE, t_max=1)
        assert info.value.max_degree == 1


class TestVerifySphereTheorem:
    def test_pentagon_passes(self):
        report = verify_sphere_theorem(from_gram(PENTAGON))
        assert report.status == PASS
        assert report.theorem == "sphere-eigenvalue"
        assert report.subject == "sphere(n=5, m=2, s=2)"
        assert report.evidence["absolute_bound"] == 3
        checks = report.evidence["checks"]
        assert [c["class"] for c in checks] == [1, 2]
        first = checks[0]
        assert first["k_star"] == pytest.approx(GOLDEN, abs=1e-12)
        assert first["eigenvalue"] == pytest.approx(-GOLDEN, abs=1e-12)
        assert first["multiplicity"] == 2
        assert first["floor"] == 2
        assert first["interp_residual"] <= 1e-7
        assert checks[1]["eigenvalue"] == pytest.approx(GOLDEN - 1, abs=1e-12)

    def test_pentagon_schur_route(self):
        report = verify_sphere_theorem(from_gram(PENTAGON), route="schur")
        assert report.status == PASS
        assert report.evidence["schur_diameter"] == 2

    def test_petersen_embedding_passes(self):
        scheme = analyzed_scheme("petersen")
        sph = from_idempotent(scheme.params, scheme.idems, 1)
        report = verify_sphere_theorem(sph)
        assert report.status == PASS
        # n = 10 against N(5, 1) = 6 leaves a floor of 4, attained exactly
        assert report.evidence["absolute_bound"] == 6
        for check in report.evidence["checks"]:
            assert check["floor"] == 4
            assert check["multiplicity"] == 4
            assert check["interp_residual"] <= 1e-7
        values = [c["eigenvalue"] for c in report.evidence["checks"]]
        assert values == pytest.approx([-2.0, 1.0], abs=1e-9)

    def test_simplex_passes(self):
        scheme = analyzed_scheme("complete4")
        sph = from_idempotent(scheme.params, scheme.idems, 1)
        report = verify_sphere_theorem(sph)
        assert report.status == PASS
        check = report.evidence["checks"][0]
        assert check["k_star"] == pytest.approx(1.0, abs=1e-9)
        assert check["multiplicity"] == 3
        assert check["floor"] == 3

    def test_square_passes(self):
        report = verify_sphere_theorem(from_gram(SQUARE))
        assert report.status == PASS
        mults = [c["multiplicity"] for c in report.evidence["checks"]]
        floors = [c["floor"] for c in report.evidence["checks"]]
        assert mults == [1, 2]
        assert floors == [1, 1]

    def test_declared_distance_count_weakens_bound(self):
        report = verify_sphere_theorem(from_gram(PENTAGON), declared_d=3)
        assert report.status == HYPOTHESIS_NOT_MET
        assert report.evidence["summary"] == "n = 5 <= N(2, 2) = 5; size hypothesis not met"

    def test_schur_route_mismatch(self):
        scheme = analyzed_scheme("hamming33")
        sph = from_idempotent(scheme.params, scheme.idems, 2)
        report = verify_sphere_theorem(sph, route="schur")
        assert report.status == HYPOTHESIS_NOT_MET
        assert report.evidence["summary"] == "Schur-diameter 2 != distance count 3"

    def test_rejects_unknown_route(self):
        with pytest.raises(ValueError, match="unknown route"):
            verify_sphere_theorem(from_gram(SQUARE), route="exact")

    def test_rejects_low_declared_count(self):
        with pytest.raises(ValueError, match="below the observed"):
            verify_sphere_theorem(from_gram(SQUARE), declared_d=1)


@pytest.mark.parametrize("name", sorted(SCHEME_SPECS))
def test_schur_diameter_matches_krein_route(name):
    """The entrywise-power diameter and the Krein detector must agree.

    For every eigenspace whose representative inner products are mutually
    distinct, the embedded point set has Schur-diameter d exactly when the
    Krein route certifies a polynomial ordering.
    """
    scheme = analyzed_scheme(name)
    params = scheme.params
    compared = 0
    for j in range(1, params.d + 1):
        col = params.Q[:, j]
        if np.min(np.diff(np.sort(col))) <= 1e-9:
            continue
        sph = from_idempotent(params, scheme.idems, j)
        sd = schur_diameter(sph.gram)
        verdict = q_polynomial_ordering(params, j)
        assert (sd == params.d) == (verdict.status == POLYNOMIAL)
        # handing the idempotent over must not trip the cross-check either
        cross = q_polynomial_ordering(params, j, idempotent=scheme.idems[j])
        assert cross.status == verdict.status
        compared += 1
    assert compared >= 1


class TestGramIO:
    def test_round_trip_exact(self):
        text = format_gram_matrix(PENTAGON)
        assert text.splitlines()[0] == "5"
        back = parse_gram_matrix(text)
        assert np.array_equal(back.a, PENTAGON.a)
        assert format_gram_matrix(back) == text

    def test_comments_and_blanks_ignored(self):
        text = "# two orthonormal points\n2\n\n1.0 0.0  # first row\n0.0 1.0\n"
        g = parse_gram_matrix(text)
        assert np.array_equal(g.a, np.eye(2))

    @pytest.mark.parametrize(
        "text, line_no",
        [
            ("", 0),
            ("x\n", 1),
            ("3\n1.0 0.0 0.0\n", 0),
            ("2\n1.0 0.0\n0.0 1.0 3.0\n", 3),
            ("2\n1.0 zz\nzz 1.0\n", 2),
            ("2\n1.0 0.0\n0.0 1.0\n0.5 0.5\n", 4),
        ],
    )
    def test_parse_errors_carry_line_numbers(self, text, line_no):
        with pytest.raises(ParseError) as info:
            parse_gram_matrix(text)
        assert info.value.line_no == line_no

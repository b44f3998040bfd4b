"""Unit and property tests for the exact linear algebra layer."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spflag.exactlin import (
    GF2,
    GF3,
    GF5,
    QQ,
    Matrix,
    Subspace,
    field_for_tag,
    int_nullspace,
    int_rref,
    solve,
)


small_int = st.integers(min_value=-5, max_value=5)


def int_matrices(max_dim=4):
    return st.integers(min_value=1, max_value=max_dim).flatmap(
        lambda n: st.integers(min_value=1, max_value=max_dim).flatmap(
            lambda m: st.lists(
                st.lists(small_int, min_size=m, max_size=m), min_size=n, max_size=n
            )
        )
    )


class TestFields:
    def test_field_for_tag(self):
        assert field_for_tag("Q") is QQ
        assert field_for_tag("F2") is GF2
        assert field_for_tag("F3") is GF3
        assert field_for_tag("F5") is GF5
        with pytest.raises(ValueError):
            field_for_tag("F7")

    def test_prime_field_arithmetic(self):
        assert GF3.add(2, 2) == 1
        assert GF3.mul(2, 2) == 1
        assert GF5.inv(2) == 3
        assert GF2.neg(1) == 1

    def test_rational_coerce(self):
        assert QQ.coerce("2/3") == Fraction(2, 3)
        assert QQ.coerce(2) == Fraction(2)


class TestIntRref:
    def test_pivots_and_primitive_rows(self):
        rows, pivots = int_rref([[2, 4, 6], [1, 2, 3], [0, 0, 5]], 3)
        assert rows == [[1, 2, 0], [0, 0, 1]]
        assert pivots == [0, 2]

    def test_nullspace_vectors_annihilate(self):
        rows = [[1, 1, 0], [0, 1, 1]]
        for v in int_nullspace(rows, 3):
            for r in rows:
                assert sum(a * b for a, b in zip(r, v)) == 0

    @given(int_matrices())
    @settings(max_examples=60)
    def test_nullspace_dimension_theorem(self, rows):
        ncols = len(rows[0])
        reduced, pivots = int_rref([list(r) for r in rows], ncols)
        kernel = int_nullspace([list(r) for r in rows], ncols)
        assert len(pivots) + len(kernel) == ncols
        for v in kernel:
            for r in rows:
                assert sum(a * b for a, b in zip(r, v)) == 0


class TestMatrix:
    def test_mul_identity(self):
        m = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
        assert m.mul(Matrix.identity(QQ, 2)) == m

    def test_rank_and_nullspace(self):
        m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
        assert m.rank() == 1
        ns = m.nullspace()
        assert ns.nrows == 1
        assert m.mul(ns.transpose()).is_zero()

    def test_finite_field_matrix(self):
        g = Matrix.from_rows(GF2, [[1, 1], [0, 1]])
        assert g.mul(g) == Matrix.identity(GF2, 2)

    def test_json_round_trip(self):
        m = Matrix.from_rows(QQ, [[Fraction(1, 2), 2], [3, 4]])
        assert Matrix.from_json(QQ, m.to_json()) == m

    @given(int_matrices())
    @settings(max_examples=60)
    def test_rref_is_idempotent(self, rows):
        m = Matrix.from_rows(QQ, rows)
        reduced, _ = m.rref()
        again, _ = reduced.rref()
        assert reduced == again

    @given(int_matrices())
    @settings(max_examples=60)
    def test_rank_bounded(self, rows):
        m = Matrix.from_rows(QQ, rows)
        assert 0 <= m.rank() <= min(m.nrows, m.ncols)


class TestSolve:
    def test_consistent_system(self):
        a = Matrix.from_rows(QQ, [[1, 0], [1, 1]])
        part, kernel = solve(a, [2, 3])
        assert part == (Fraction(2), Fraction(1))
        assert kernel.nrows == 0

    def test_inconsistent_system(self):
        a = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
        part, kernel = solve(a, [0, 1])
        assert part is None

    def test_underdetermined(self):
        a = Matrix.from_rows(QQ, [[1, 1]])
        part, kernel = solve(a, [2])
        assert part is not None
        assert kernel.nrows == 1

    @given(int_matrices(), st.data())
    @settings(max_examples=40)
    def test_solution_actually_solves(self, rows, data):
        a = Matrix.from_rows(QQ, rows)
        x = data.draw(st.lists(small_int, min_size=a.ncols, max_size=a.ncols))
        b = [sum(QQ.coerce(r[j]) * x[j] for j in range(a.ncols)) for r in a.rows]
        part, _ = solve(a, b)
        assert part is not None
        got = [sum(r[j] * part[j] for j in range(a.ncols)) for r in a.rows]
        assert got == [QQ.coerce(v) for v in b]


class TestSubspace:
    def test_canonical_equality(self):
        s = Subspace.from_rows(QQ, 3, [[1, 1, 0], [0, 0, 1]])
        t = Subspace.from_rows(QQ, 3, [[2, 2, 2], [0, 0, 3]])
        assert s == t

    def test_containment(self):
        s = Subspace.from_rows(QQ, 3, [[1, 1, 0], [0, 0, 1]])
        t = Subspace.from_rows(QQ, 3, [[1, 1, 0]])
        assert s.contains(t)
        assert not t.contains(s)
        assert t.contains_vector([3, 3, 0])
        assert not t.contains_vector([1, 0, 0])

    def test_sum_and_intersection_dims(self):
        s = Subspace.from_rows(QQ, 3, [[1, 0, 0], [0, 1, 0]])
        t = Subspace.from_rows(QQ, 3, [[0, 1, 0], [0, 0, 1]])
        assert s.sum(t).dim == 3
        assert s.intersect(t).dim == 1

    def test_annihilator_dims_and_pairing(self):
        s = Subspace.from_rows(QQ, 4, [[1, 1, 0, 0], [0, 0, 1, -1]])
        ann = s.annihilator()
        assert ann.dim == 2
        for u in s.basis.rows:
            for w in ann.basis.rows:
                assert sum(a * b for a, b in zip(u, w)) == 0

    def test_apply_matrix_image(self):
        s = Subspace.from_rows(QQ, 2, [[1, 0]])
        g = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
        assert s.apply(g) == Subspace.from_rows(QQ, 2, [[0, 1]])

    def test_json_round_trip(self):
        s = Subspace.from_rows(QQ, 3, [[1, 2, 3]])
        assert Subspace.from_json(QQ, 3, s.to_json()) == s

    def test_finite_field_subspace(self):
        s = Subspace.from_rows(GF2, 3, [[1, 1, 0], [1, 1, 0]])
        assert s.dim == 1

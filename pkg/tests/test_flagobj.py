"""Unit tests for flag objects, duality, doubling and coordinate changes."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from spflag.compositions import Composition, DimVector
from spflag.exactlin import QQ, GF2, Matrix, Subspace
from spflag.flagobj import (
    Flag,
    FlagObject,
    SymplecticForm,
    apply_matrix,
    compress_object,
    direct_sum,
    dual,
    induced_subobject,
    is_symplectic_object,
    object_from_json,
    object_to_json,
    random_symplectic_matrix,
    realize_at,
    sym_double,
    symplectic_direct_sum,
    symplectic_transvection,
    trivial_flag,
)


def span(ambient, *rows):
    return Subspace.from_rows(QQ, ambient, rows)


def line_triple(*vs):
    flags = tuple(
        Flag(QQ, 2, Composition((1, 1)), (span(2, v),)) for v in vs
    )
    return FlagObject(QQ, 2, flags)


@pytest.fixture
def lagrangian_object():
    """The standard object with two Lagrangian flags and a full flag on Q^4."""
    fl1 = Flag(QQ, 4, Composition((2, 2)), (span(4, [1, 0, 0, 0], [0, 1, 0, 0]),))
    fl2 = Flag(QQ, 4, Composition((2, 2)), (span(4, [0, 0, 1, 0], [0, 0, 0, 1]),))
    full = Flag(
        QQ,
        4,
        Composition((1, 1, 1, 1)),
        (
            span(4, [1, 0, 0, 0]),
            span(4, [1, 0, 0, 0], [0, 1, 0, 0]),
            span(4, [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]),
        ),
    )
    return FlagObject(QQ, 4, (fl1, fl2, full))


class TestFlagValidation:
    def test_member_dimensions_must_match_composition(self):
        with pytest.raises(ValueError):
            Flag(QQ, 2, Composition((1, 1)), (span(2, [1, 0], [0, 1]),))

    def test_members_must_nest(self):
        with pytest.raises(ValueError):
            Flag(
                QQ,
                3,
                Composition((1, 1, 1)),
                (span(3, [1, 0, 0]), span(3, [0, 1, 0], [0, 0, 1])),
            )

    def test_zero_parts_mean_repeated_members(self):
        fl = Flag(
            QQ,
            2,
            Composition((1, 0, 1)),
            (span(2, [1, 0]), span(2, [1, 0])),
        )
        assert fl.composition == Composition((1, 0, 1))

    def test_single_part_needs_no_members(self):
        fl = Flag(QQ, 2, Composition((2,)), ())
        assert fl.members == ()

    def test_trivial_flag_builder(self):
        fl = trivial_flag(QQ, 4, Composition((0, 4, 0)))
        assert [m.dim for m in fl.members] == [0, 4]
        with pytest.raises(ValueError):
            trivial_flag(QQ, 4, Composition((2, 2)))


class TestSymplecticForm:
    def test_gram_is_antisymmetric_nondegenerate(self):
        form = SymplecticForm.standard(QQ, 6)
        g = form.gram
        assert g.add(g.transpose()).is_zero()
        assert g.rank() == 6

    def test_pairing_values(self):
        form = SymplecticForm.standard(QQ, 4)
        assert form.pairing([1, 0, 0, 0], [0, 0, 0, 1]) == 1
        assert form.pairing([0, 0, 0, 1], [1, 0, 0, 0]) == -1
        assert form.pairing([0, 1, 0, 0], [0, 0, 1, 0]) == 1
        assert form.pairing([1, 0, 0, 0], [0, 0, 1, 0]) == 0

    def test_orthogonal_is_involution_with_complementary_dim(self):
        form = SymplecticForm.standard(QQ, 4)
        u = Subspace.from_rows(QQ, 4, [[1, 2, 3, 4]])
        perp = form.orthogonal(u)
        assert perp.dim == 3
        assert form.orthogonal(perp) == u

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            SymplecticForm.standard(QQ, 3)

    def test_transvection_preserves_form(self):
        form = SymplecticForm.standard(QQ, 4)
        t = symplectic_transvection(form, [1, 2, 0, 1], 3)
        assert form.preserved_by(t)

    @given(st.integers(min_value=0, max_value=50))
    @settings(max_examples=25, deadline=None)
    def test_random_symplectic_matrix_preserves_form(self, seed):
        form = SymplecticForm.standard(QQ, 4)
        g = random_symplectic_matrix(QQ, 4, seed=seed)
        assert form.preserved_by(g)


class TestSymplecticObjects:
    def test_standard_object_is_symplectic(self, lagrangian_object):
        assert is_symplectic_object(lagrangian_object)

    def test_non_coisotropic_fails(self):
        # both members equal -> second member not the orthogonal of the first
        fl1 = Flag(QQ, 4, Composition((2, 2)), (span(4, [1, 0, 0, 0], [0, 0, 0, 1]),))
        obj = FlagObject(QQ, 4, (fl1,))
        assert not is_symplectic_object(obj)

    def test_asymmetric_composition_fails(self):
        fl = Flag(QQ, 4, Composition((1, 3)), (span(4, [1, 0, 0, 0]),))
        obj = FlagObject(QQ, 4, (fl,))
        assert not is_symplectic_object(obj)

    def test_odd_ambient_fails(self):
        fl = Flag(QQ, 3, Composition((3,)), ())
        obj = FlagObject(QQ, 3, (fl,))
        assert not is_symplectic_object(obj)


class TestDuality:
    def test_dual_reverses_dimensions(self):
        x = line_triple([1, 0], [0, 1], [1, 1])
        y = dual(x)
        assert y.dim_vector == x.dim_vector.opposite()

    def test_dual_is_involution_on_dimensions(self, lagrangian_object):
        x = lagrangian_object
        assert dual(dual(x)).dim_vector == x.dim_vector


class TestSumsAndDoubles:
    def test_direct_sum_dimensions_add(self):
        x = line_triple([1, 0], [0, 1], [1, 1])
        y = line_triple([1, 0], [1, 0], [0, 1])
        s = direct_sum(x, y)
        assert s.ambient_dim == 4
        assert s.dim_vector == x.dim_vector.plus(y.dim_vector)

    def test_sym_double_is_symplectic(self):
        h = FlagObject(
            QQ,
            2,
            (
                Flag(QQ, 2, Composition((1, 1)), (span(2, [1, 0]),)),
                Flag(QQ, 2, Composition((2,)), ()),
                Flag(QQ, 2, Composition((1, 1)), (span(2, [0, 1]),)),
            ),
        )
        dbl = sym_double(h)
        assert dbl.ambient_dim == 4
        assert is_symplectic_object(dbl)
        assert dbl.dim_vector == h.dim_vector.plus(h.dim_vector.opposite())

    def test_symplectic_direct_sum_is_symplectic(self, lagrangian_object):
        x = lagrangian_object
        s = symplectic_direct_sum(x, x)
        assert s.ambient_dim == 8
        assert is_symplectic_object(s)

    def test_symplectic_direct_sum_rejects_length_mismatch(self, lagrangian_object):
        y = line_triple([1, 0], [0, 1], [1, 1])
        with pytest.raises(ValueError):
            symplectic_direct_sum(lagrangian_object, y)


class TestInducedSubobject:
    def test_induced_on_summand_of_plain_sum(self):
        x = line_triple([1, 0], [0, 1], [1, 1])
        y = line_triple([1, 0], [1, 0], [0, 1])
        s = direct_sum(x, y)
        # rows spanning the first block
        sub = induced_subobject(s, span(4, [1, 0, 0, 0], [0, 1, 0, 0]))
        assert sub.ambient_dim == 2
        assert sub.dim_vector == x.dim_vector


class TestCompressAndRealize:
    def test_compress_object_drops_zero_parts(self):
        fl = Flag(
            QQ,
            2,
            Composition((1, 0, 1)),
            (span(2, [1, 0]), span(2, [1, 0])),
        )
        obj = FlagObject(QQ, 2, (fl, Flag(QQ, 2, Composition((2,)), ())))
        c = compress_object(obj)
        assert c.dim_vector == DimVector([[1, 1], [2]])

    def test_realize_at_explores_matchings(self):
        h = FlagObject(
            QQ,
            2,
            (
                Flag(QQ, 2, Composition((1, 1)), (span(2, [1, 0]),)),
                Flag(QQ, 2, Composition((2,)), ()),
                Flag(QQ, 2, Composition((1, 1)), (span(2, [0, 1]),)),
            ),
        )
        outs = realize_at(h, DimVector.parse("1,1;0,2,0;1,1"))
        assert len(outs) == 2
        for o in outs:
            assert str(o.dim_vector) == "1,1;0,2,0;1,1"

    def test_realize_at_incompatible_shapes(self):
        h = line_triple([1, 0], [0, 1], [1, 1])
        assert realize_at(h, DimVector.parse("2;2;2")) == []


class TestCoordinateChange:
    def test_apply_matrix_preserves_symplectic(self, lagrangian_object):
        g = random_symplectic_matrix(QQ, 4, seed=11)
        moved = apply_matrix(lagrangian_object, g)
        assert is_symplectic_object(moved)
        assert moved.dim_vector == lagrangian_object.dim_vector

    def test_apply_identity_is_noop(self, lagrangian_object):
        moved = apply_matrix(lagrangian_object, Matrix.identity(QQ, 4))
        assert moved == lagrangian_object


class TestJson:
    def test_round_trip(self, lagrangian_object):
        data = object_to_json(lagrangian_object)
        assert object_from_json(data) == lagrangian_object

    def test_finite_field_round_trip(self):
        fl = Flag(GF2, 2, Composition((1, 1)), (Subspace.from_rows(GF2, 2, [[1, 1]]),))
        obj = FlagObject(GF2, 2, (fl,))
        assert object_from_json(object_to_json(obj)) == obj

    def test_bad_schema_rejected(self):
        with pytest.raises(ValueError):
            object_from_json({"field": "Q"})

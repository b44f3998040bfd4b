"""Unit tests for orbit counting, family enumeration, and representatives."""

from __future__ import annotations

import pytest

from spflag.compositions import DimVector
from spflag.decomposer import sp_decompose
from spflag.enumerator import (
    InfiniteTypeError,
    enumerate_orbits,
    lagrangian_pair_series,
    orbit_count,
    orbit_families,
    orbit_representative,
    sp_pi,
)
from spflag.flagobj import dim_vector, is_symplectic_object


D = DimVector.parse

FLAGSHIP = D("2,2;2,2;1,1,1,1")


class TestSpPi:
    def test_flagship_summands(self):
        assert [str(e) for e in sp_pi(FLAGSHIP)] == [
            "2,2;2,2;1,1,1,1",
            "1,1;1,1;0,1,1,0",
            "1,1;1,1;1,0,0,1",
        ]

    def test_summands_are_componentwise_bounded(self):
        for d in (FLAGSHIP, D("2,2;2,2;4"), D("1,2,1;1,2,1;1,2,1")):
            for e in sp_pi(d):
                assert e.weight % 2 == 0
                for ce, cd in zip(e, d):
                    assert len(ce) == len(cd)
                    assert all(pe <= pd for pe, pd in zip(ce, cd))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sp_pi(D("2,1;2,1;2,1"))

    def test_rejects_odd_weight(self):
        with pytest.raises(ValueError):
            sp_pi(D("3;3;3"))


COUNTS = [
    ("2,2;2,2;1,1,1,1", 27),
    ("2,2;2,2;4", 3),
    ("1,1;1,1;1,1", 5),
    ("2,2;2,2;1,2,1", 11),
    ("2;2;2", 1),
    ("4;4;4", 1),
    ("1,2,1;1,2,1;1,1,1,1", 28),
]


class TestOrbitCount:
    @pytest.mark.parametrize("dims,expected", COUNTS)
    def test_exact_counts(self, dims, expected):
        assert orbit_count(D(dims)) == expected

    def test_infinite_type_raises_with_witness(self):
        with pytest.raises(InfiniteTypeError) as excinfo:
            orbit_count(D("2,2,2;2,2,2;2,2,2"))
        assert excinfo.value.result.witness.kind == "f5"

    def test_infinite_type_message(self):
        with pytest.raises(InfiniteTypeError, match="witness f3"):
            orbit_count(D("2,2;1,1,1,1;1,1,1,1"))


class TestOrbitFamilies:
    def test_count_matches_enumeration(self):
        for dims, expected in COUNTS:
            families = list(orbit_families(D(dims)))
            assert len(families) == expected

    def test_families_partition_dimension(self):
        for dims, _ in COUNTS:
            d = D(dims)
            seen = set()
            for fam in orbit_families(d):
                assert fam.dims == d
                key = tuple(fam.entries)
                assert key not in seen
                seen.add(key)

    def test_two_lagrangians_one_line_pair(self):
        fams = [
            [(str(e), idx, m) for e, idx, m in fam.entries]
            for fam in orbit_families(D("2,2;2,2;4"))
        ]
        assert fams == [
            [("1,1;1,1;2", 0, 2)],
            [("1,1;1,1;2", 0, 1), ("1,1;1,1;2", 1, 1)],
            [("1,1;1,1;2", 1, 2)],
        ]

    def test_json_shape(self):
        fam = next(orbit_families(D("1,1;1,1;1,1")))
        payload = fam.to_json()
        assert set(payload) == {"classes"}
        for entry in payload["classes"]:
            assert set(entry) == {"dims", "class_index", "multiplicity"}


class TestRepresentatives:
    def test_representative_lands_on_its_orbit(self):
        for fam in orbit_families(D("1,1;1,1;1,1")):
            rep = orbit_representative(fam)
            assert is_symplectic_object(rep)
            assert dim_vector(rep) == D("1,1;1,1;1,1")
            decomposed = sorted(
                (str(s.dims), s.class_index, s.multiplicity)
                for s in sp_decompose(rep)
            )
            expected = sorted(
                (str(e), idx, m) for e, idx, m in fam.entries
            )
            assert decomposed == expected

    def test_seed_changes_matrices_not_orbit(self):
        fam = list(orbit_families(FLAGSHIP))[7]
        a = orbit_representative(fam, seed=1)
        b = orbit_representative(fam, seed=2)
        assert dim_vector(a) == dim_vector(b) == FLAGSHIP

    def test_index_out_of_range(self):
        fam = next(orbit_families(D("2;2;2")))
        bad = type(fam)(tuple((e, 99, m) for e, idx, m in fam.entries))
        with pytest.raises(ValueError):
            orbit_representative(bad)


class TestEnumerateOrbits:
    def test_limit_truncates(self):
        out = list(enumerate_orbits(FLAGSHIP, limit=5))
        assert len(out) == 5
        for fam, rep in out:
            assert is_symplectic_object(rep)
            assert dim_vector(rep) == FLAGSHIP

    def test_full_stream_length(self):
        assert sum(1 for _ in enumerate_orbits(D("1,1;1,1;1,1"))) == 5


class TestSeries:
    def test_first_terms(self):
        assert lagrangian_pair_series(3) == [1, 5, 27, 155]

    def test_matches_generating_function_recurrence(self):
        # a_{n+1} = 5·a_n + 2n·a_{n−1}, the ODE of exp(x² + 5x)
        series = lagrangian_pair_series(4)
        for n in range(1, len(series) - 1):
            assert series[n + 1] == 5 * series[n] + 2 * n * series[n - 1]

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            lagrangian_pair_series(-1)

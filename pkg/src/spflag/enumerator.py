"""Counting and enumerating symplectic orbits in finite type.

For a finite-type symmetric dimension vector the orbits of the diagonal
symplectic group action correspond exactly to the multisets of
indecomposable catalog classes whose dimensions add up to the input.  This
module computes the relevant summand dimensions (``sp_pi``), counts the
multisets with a memoized dynamic program (``orbit_count``), streams them
(``orbit_families``), and assembles explicit matrix representatives
(``orbit_representative``) by symplectic direct sums of canonical class
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from . import catalog
from .classifier import ClassificationResult, classify
from .compositions import Composition, DimVector, is_summand
from .flagobj import FlagObject, symplectic_direct_sum


__all__ = [
    "InfiniteTypeError",
    "sp_pi",
    "orbit_count",
    "OrbitFamily",
    "orbit_families",
    "orbit_representative",
    "enumerate_orbits",
    "lagrangian_pair_series",
]


class InfiniteTypeError(ValueError):
    """The input has infinitely many orbits; carries the classification."""

    def __init__(self, result: ClassificationResult) -> None:
        self.result = result
        witness = result.witness.kind if result.witness else "unknown"
        super().__init__(
            f"infinitely many orbits (witness {witness}); counting is undefined"
        )


# ---------------------------------------------------------------------------
# Catalog summands of a dimension vector
# ---------------------------------------------------------------------------


def _forced_trivial(comp: Composition, weight: int) -> Composition:
    """The unique weight-``weight`` summand shape of a trivial component."""
    spot = next(i for i, p in enumerate(comp.parts) if p)
    return Composition(weight if i == spot else 0 for i in range(len(comp)))


def sp_pi(d: DimVector) -> tuple[DimVector, ...]:
    """All catalog-class dimension vectors that are summands of ``d``.

    Catalog rows are keyed by triples, so the (at most three) non-trivial
    components of ``d`` are matched onto row components in every way, with
    symmetric zero-insertions to the component lengths; trivial components
    of ``d`` admit exactly one summand shape per weight.  The result is
    sorted by descending weight, then textually — a fixed order that the
    family enumeration follows.
    """
    if not d.is_symmetric():
        raise ValueError(f"dimension vector {d} is not symmetric")
    if d.weight <= 0 or d.weight % 2 != 0:
        raise ValueError(f"total dimension must be positive and even, got {d.weight}")
    comps = list(d)
    nontrivial = [i for i, c in enumerate(comps) if c.nonzero_length > 1]
    if len(nontrivial) > 3:
        raise ValueError(
            "more than three non-trivial components: no finite catalog applies"
        )
    slots: list[int | None] = list(nontrivial)
    while len(slots) < 3:
        slots.append(None)
    lengths3 = tuple(len(comps[i]) if i is not None else 1 for i in slots)
    out: set[DimVector] = set()
    for row in catalog.rows():
        for e3 in catalog.expansions_of_row(row, lengths3):
            fits = True
            for s, i in enumerate(slots):
                if i is None:
                    continue
                if not all(ep <= dp for ep, dp in zip(e3[s], comps[i])):
                    fits = False
                    break
            if not fits:
                continue
            w = e3.weight
            full = [
                e3[slots.index(i)]
                if i in nontrivial
                else _forced_trivial(comps[i], w)
                for i in range(len(comps))
            ]
            out.add(DimVector(full))
    return tuple(sorted(out, key=lambda e: (-e.weight, str(e))))


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def _finite_or_raise(d: DimVector) -> None:
    result = classify(d)
    if not result.finite:
        raise InfiniteTypeError(result)


def orbit_count(d: DimVector) -> int:
    """The exact number of symplectic orbits (finite type only).

    Orbits correspond to multisets of classes summing to ``d``; with
    ``mu(e)`` classes of dimension ``e``, choosing a multiplicity ``m``
    for ``e`` contributes ``C(mu+m−1, m)`` class multisets, and a memoized
    recursion over the summand list and the remaining dimension adds these
    up without enumerating anything.
    """
    _finite_or_raise(d)
    pis = sp_pi(d)
    mus = []
    for e in pis:
        m = catalog.mu(e)
        if m is None:  # unreachable: sp_pi only returns catalog expansions
            raise AssertionError(f"summand {e} has no catalog row")
        mus.append(m)
    memo: dict[tuple[int, DimVector], int] = {}

    def ways(j: int, residual: DimVector) -> int:
        if residual.weight == 0:
            return 1
        if j == len(pis):
            return 0
        key = (j, residual)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        m = 0
        current = residual
        while True:
            total += comb(mus[j] + m - 1, m) * ways(j + 1, current)
            if not is_summand(pis[j], current):
                break
            current = current.minus(pis[j])
            m += 1
        memo[key] = total
        return total

    return ways(0, d)


# ---------------------------------------------------------------------------
# Families and representatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitFamily:
    """One orbit, named by its class multiset.

    ``entries`` lists (dimension, class index, multiplicity), where the
    class index points into ``catalog.class_representatives`` for that
    dimension.  Families are produced in a fixed deterministic order, so
    an orbit is also addressable by its position in the stream.
    """

    entries: tuple[tuple[DimVector, int, int], ...]

    @property
    def dims(self) -> DimVector:
        total = None
        for e, _idx, m in self.entries:
            scaled = DimVector([[part * m for part in comp] for comp in e])
            total = scaled if total is None else total.plus(scaled)
        if total is None:
            raise ValueError("empty orbit family")
        return total

    def to_json(self) -> dict:
        return {
            "classes": [
                {"dims": str(e), "class_index": idx, "multiplicity": m}
                for e, idx, m in self.entries
            ]
        }


def orbit_families(d: DimVector) -> Iterator[OrbitFamily]:
    """Stream every orbit of ``d`` as a class multiset (finite type only).

    The stream follows the ``sp_pi`` order: for each summand dimension in
    turn, every multiplicity and every multiset of class indices is tried
    (indices weakly increasing, smallest first), recursing on the
    remainder.  The number of families equals ``orbit_count(d)``.
    """
    _finite_or_raise(d)
    pis = sp_pi(d)
    mus = [catalog.mu(e) for e in pis]

    def stream(
        j: int, residual: DimVector, acc: list[tuple[DimVector, int, int]]
    ) -> Iterator[OrbitFamily]:
        if residual.weight == 0:
            yield OrbitFamily(tuple(acc))
            return
        if j == len(pis):
            return
        e, mu = pis[j], mus[j]

        def with_multiplicity(m: int, start: int, chosen: list[int]) -> Iterator[OrbitFamily]:
            """Append all weakly increasing index multisets of size m."""
            if m == 0:
                entries = acc + [
                    (e, idx, chosen.count(idx)) for idx in sorted(set(chosen))
                ]
                yield from stream(j + 1, residual.minus(_scaled(e, len(chosen))), entries)
                return
            for idx in range(start, mu):
                chosen.append(idx)
                yield from with_multiplicity(m - 1, idx, chosen)
                chosen.pop()

        m = 0
        current = residual
        while True:
            if m == 0:
                yield from stream(j + 1, residual, list(acc))
            else:
                yield from with_multiplicity(m, 0, [])
            if not is_summand(e, current):
                break
            current = current.minus(e)
            m += 1

    yield from stream(0, d, [])


def _scaled(e: DimVector, m: int) -> DimVector:
    return DimVector([[part * m for part in comp] for comp in e])


def orbit_representative(family: OrbitFamily, seed: int = 0) -> FlagObject:
    """An explicit symplectic point on the orbit named by ``family``.

    Canonical class representatives are looked up per entry and combined
    with iterated symplectic direct sums; the result is a symplectic flag
    object with the family's total dimension vector, exact over Q.
    """
    parts: list[FlagObject] = []
    for e, idx, m in family.entries:
        reps = catalog.class_representatives(e, seed=seed)
        if idx < 0 or idx >= len(reps):
            raise ValueError(f"class index {idx} out of range for dimension {e}")
        parts.extend([reps[idx][1]] * m)
    if not parts:
        raise ValueError("empty orbit family")
    total = parts[0]
    for piece in parts[1:]:
        total = symplectic_direct_sum(total, piece)
    return total


def enumerate_orbits(
    d: DimVector, seed: int = 0, limit: int | None = None
) -> Iterator[tuple[OrbitFamily, FlagObject]]:
    """Stream (family, representative) pairs, optionally truncated."""
    for i, family in enumerate(orbit_families(d)):
        if limit is not None and i >= limit:
            return
        yield family, orbit_representative(family, seed=seed)


# ---------------------------------------------------------------------------
# A closed-form check family
# ---------------------------------------------------------------------------


def lagrangian_pair_series(n_max: int) -> list[int]:
    """Orbit counts for two Lagrangian flags plus one full flag.

    Term n counts the orbits of dimension ((n,n), (n,n), (1,…,1)) on a
    2n-dimensional space; term 0 is 1 by convention.  The sequence matches
    the exponential generating function exp(x² + 5x).
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    out = [1]
    for n in range(1, n_max + 1):
        d = DimVector([[n, n], [n, n], [1] * (2 * n)])
        out.append(orbit_count(d))
    return out

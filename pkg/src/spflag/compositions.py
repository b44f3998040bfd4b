"""Integer compositions and dimension vectors for multiple flag varieties.

A *composition* is a finite sequence of non-negative integers (at least one
part).  It records the successive quotient dimensions of a chain of
subspaces, so its *weight* (sum of parts) is the ambient dimension.  A
*dimension vector* is a tuple of compositions of equal weight, one per flag.

Text formats (used by the CLI and the JSON interfaces):

* composition: comma-separated parts, e.g. ``"1,2,1"``
* dimension vector: semicolon-separated compositions, e.g.
  ``"1,2,1;1,2,1;1,1,1,1"``
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


__all__ = [
    "Composition",
    "DimVector",
    "weight",
    "opposite",
    "is_symmetric",
    "compress",
    "is_summand",
    "sort_by_nonzero_lengths",
    "symmetric_zero_insertions",
]


@dataclass(frozen=True)
class Composition:
    """A sequence of non-negative integer parts, at least one part long.

    Zero parts are allowed (they encode repeated members in a flag chain);
    ``compress`` drops them.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]) -> None:
        tup = tuple(int(p) for p in parts)
        if len(tup) == 0:
            raise ValueError("a composition needs at least one part")
        if any(p < 0 for p in tup):
            raise ValueError(f"composition parts must be non-negative: {tup}")
        object.__setattr__(self, "parts", tup)

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    @property
    def weight(self) -> int:
        """Sum of the parts (the ambient dimension of a flag)."""
        return sum(self.parts)

    @property
    def nonzero_length(self) -> int:
        """Number of non-zero parts (the length after compression)."""
        return sum(1 for p in self.parts if p != 0)

    # -- core operations -----------------------------------------------

    def opposite(self) -> "Composition":
        """The reversed composition (parts read right to left)."""
        return Composition(self.parts[::-1])

    def is_symmetric(self) -> bool:
        """True iff the composition equals its opposite."""
        return self.parts == self.parts[::-1]

    def compress(self) -> "Composition":
        """Drop all zero parts.  Raises if every part is zero."""
        kept = tuple(p for p in self.parts if p != 0)
        if not kept:
            raise ValueError(f"cannot compress an all-zero composition: {self.parts}")
        return Composition(kept)

    # -- text format -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse ``"1,2,1"`` into a composition."""
        items = [t.strip() for t in text.split(",")]
        try:
            return cls(int(t) for t in items)
        except ValueError as exc:
            raise ValueError(f"bad composition text {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Composition({list(self.parts)!r})"


@dataclass(frozen=True)
class DimVector:
    """A tuple of compositions of equal weight — one composition per flag."""

    components: tuple[Composition, ...]

    def __init__(self, components: Iterable[Composition | Iterable[int]]) -> None:
        comps = tuple(
            c if isinstance(c, Composition) else Composition(c) for c in components
        )
        if len(comps) == 0:
            raise ValueError("a dimension vector needs at least one composition")
        weights = {c.weight for c in comps}
        if len(weights) > 1:
            raise ValueError(
                f"all compositions in a dimension vector must have equal weight, "
                f"got weights {sorted(c.weight for c in comps)}"
            )
        object.__setattr__(self, "components", comps)

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Composition]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Composition:
        return self.components[i]

    @property
    def weight(self) -> int:
        """Common weight of the components (the ambient dimension)."""
        return self.components[0].weight

    @property
    def lengths(self) -> tuple[int, ...]:
        """Part counts of the components (zero parts included)."""
        return tuple(len(c) for c in self.components)

    @property
    def nonzero_lengths(self) -> tuple[int, ...]:
        """Non-zero part counts of the components."""
        return tuple(c.nonzero_length for c in self.components)

    # -- core operations ---------------------------------------------------

    def opposite(self) -> "DimVector":
        """Componentwise reversal."""
        return DimVector(c.opposite() for c in self.components)

    def is_symmetric(self) -> bool:
        """True iff every component is symmetric."""
        return all(c.is_symmetric() for c in self.components)

    def compress(self) -> "DimVector":
        """Componentwise zero-dropping."""
        return DimVector(c.compress() for c in self.components)

    def minus(self, other: "DimVector") -> "DimVector":
        """Componentwise, partwise difference.  Parts may not go negative."""
        if self.lengths != other.lengths:
            raise ValueError(
                f"length mismatch: {self.lengths} vs {other.lengths}"
            )
        return DimVector(
            Composition(a - b for a, b in zip(c, d))
            for c, d in zip(self.components, other.components)
        )

    def plus(self, other: "DimVector") -> "DimVector":
        """Componentwise, partwise sum (components must align in length)."""
        if self.lengths != other.lengths:
            raise ValueError(
                f"length mismatch: {self.lengths} vs {other.lengths}"
            )
        return DimVector(
            Composition(a + b for a, b in zip(c, d))
            for c, d in zip(self.components, other.components)
        )

    # -- text format -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        """Parse ``"1,2,1;1,2,1;1,1,1,1"`` into a dimension vector."""
        pieces = [p for p in (s.strip() for s in text.split(";")) if p]
        if not pieces:
            raise ValueError(f"bad dimension vector text {text!r}: no components")
        return cls(Composition.parse(p) for p in pieces)

    def __str__(self) -> str:
        return ";".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"DimVector([{', '.join(repr(list(c.parts)) for c in self.components)}])"


# ---------------------------------------------------------------------------
# Module-level operations (thin wrappers plus the combinatorial workhorses).
# ---------------------------------------------------------------------------


def weight(a: Composition | DimVector) -> int:
    """Weight (part sum) of a composition, or common weight of a vector."""
    return a.weight


def opposite(a: Composition | DimVector):
    """Reversal of a composition, or componentwise reversal of a vector."""
    return a.opposite()


def is_symmetric(a: Composition | DimVector) -> bool:
    """Whether a composition (or every component of a vector) is palindromic."""
    return a.is_symmetric()


def compress(a: Composition | DimVector):
    """Drop zero parts (componentwise for a vector)."""
    return a.compress()


def is_summand(e: DimVector, d: DimVector) -> bool:
    """Whether ``e`` fits inside ``d`` componentwise, part by part.

    Requires equal numbers of components, componentwise equal lengths
    (zero parts included), every part of ``d - e`` non-negative, and equal
    weights on both sides (so the complement is again a dimension vector).
    The relation is complement-symmetric:
    ``is_summand(e, d) == is_summand(d.minus(e), d)`` whenever defined.
    """
    if len(e) != len(d) or e.lengths != d.lengths:
        return False
    for ce, cd in zip(e, d):
        if any(pe > pd for pe, pd in zip(ce, cd)):
            return False
    # Equal component weights within each vector are guaranteed by the type;
    # the complement is a valid vector iff e's weight is the same in every
    # component, which it is, so only the partwise bound above can fail.
    return True


def sort_by_nonzero_lengths(d: DimVector) -> tuple[DimVector, tuple[int, ...]]:
    """Stably sort the components by their number of non-zero parts.

    Returns ``(sorted_vector, positions)`` where ``positions`` uses 1-based
    indexing: ``positions[i] == j`` means slot ``i`` of the result holds
    input component ``j``.  Example::

        sort_by_nonzero_lengths(DimVector([[1,1,1,1],[2,2],[1,2,1]]))
        == (DimVector([[2,2],[1,2,1],[1,1,1,1]]), (2, 3, 1))
    """
    order = sorted(range(len(d)), key=lambda i: d[i].nonzero_length)
    return (
        DimVector(d[i] for i in order),
        tuple(i + 1 for i in order),
    )


def symmetric_zero_insertions(t: Composition, length: int) -> set[Composition]:
    """All symmetric compositions of a given length whose compression is ``t``.

    ``t`` must already be zero-free.  The result can be empty (e.g. a single
    odd block cannot sit symmetrically in an even length).  Examples::

        symmetric_zero_insertions(Composition([1,1]), 4)
            == {Composition([1,0,0,1]), Composition([0,1,1,0])}
        symmetric_zero_insertions(Composition([1,1]), 3)
            == {Composition([1,0,1])}
        symmetric_zero_insertions(Composition([2]), 2) == set()
    """
    if any(p == 0 for p in t):
        raise ValueError(f"insertion source must be compressed (no zero parts): {t}")
    k = len(t)
    if k > length:
        return set()
    out: set[Composition] = set()
    for positions in combinations(range(length), k):
        parts = [0] * length
        for pos, val in zip(positions, t.parts):
            parts[pos] = val
        if parts == parts[::-1]:
            out.add(Composition(parts))
    return out

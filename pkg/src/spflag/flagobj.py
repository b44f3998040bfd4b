"""Flags, tuples of flags, and the symplectic structure on them.

A *flag* in ``k^N`` with composition ``(c_1, …, c_p)`` is a nested chain

    0 = A_0 ⊆ A_1 ⊆ … ⊆ A_p = k^N,   dim A_i − dim A_{i−1} = c_i.

Zero parts are allowed and encode repeated members.  A *flag object* is a
finite tuple of flags on one common ambient space; its *dimension vector*
collects the flag compositions.

The symplectic structure lives on even-dimensional spaces with the standard
form ⟨e_i, e_{2n+1−i}⟩ = 1 for i ≤ n and −1 for i > n (1-based).  A flag
object is *symplectic* when the ambient dimension is even, every composition
is palindromic, and each flag pairs to zero against its own mirror image:
⟨A_i, A_{p−i}⟩ = 0 for all i.

Duality is realized on the same coordinate space through the dot product:
the dual flag's i-th member is the annihilator of the original (p−i)-th
member, so compositions reverse and applying duality twice gives back the
very same object (annihilator bases are canonical).

JSON schema for a flag object (proper members only — ``A_0`` and ``A_p``
are implicit)::

    {"field": "Q", "ambient_dim": 4,
     "flags": [{"composition": [1, 2, 1],
                "subspaces": [[["1","0","0","0"]],
                              [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"]]]}]}
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .compositions import Composition, DimVector
from .exactlin import Field, Matrix, Subspace, field_for_tag


__all__ = [
    "Flag",
    "FlagObject",
    "SymplecticForm",
    "dim_vector",
    "is_symplectic_object",
    "dual",
    "direct_sum",
    "symplectic_direct_sum",
    "sym_double",
    "compress_object",
    "decompress_object",
    "trivial_flag",
    "realize_at",
    "induced_subobject",
    "apply_matrix",
    "symplectic_transvection",
    "random_symplectic_matrix",
    "object_to_json",
    "object_from_json",
]


# ---------------------------------------------------------------------------
# Flags and flag objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """A chain of nested subspaces with a prescribed composition.

    ``members`` holds the proper members ``A_1 … A_{p−1}`` only; ``A_0 = 0``
    and ``A_p = k^N`` are implicit.  Consecutive equal members correspond to
    zero parts of the composition.
    """

    field: Field
    ambient_dim: int
    composition: Composition
    members: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        comp = self.composition
        if comp.weight != self.ambient_dim:
            raise ValueError(
                f"composition weight {comp.weight} != ambient dim {self.ambient_dim}"
            )
        if len(self.members) != len(comp) - 1:
            raise ValueError(
                f"expected {len(comp) - 1} proper members for composition {comp}, "
                f"got {len(self.members)}"
            )
        partial = 0
        prev: Subspace | None = None
        for i, member in enumerate(self.members):
            partial += comp[i]
            if member.ambient_dim != self.ambient_dim:
                raise ValueError("member ambient dimension mismatch")
            if member.field.tag != self.field.tag:
                raise ValueError("member field mismatch")
            if member.dim != partial:
                raise ValueError(
                    f"member {i + 1} has dim {member.dim}, expected {partial} "
                    f"from composition {comp}"
                )
            if prev is not None and not member.contains(prev):
                raise ValueError(f"flag chain broken at member {i + 1}")
            prev = member

    @classmethod
    def from_members(
        cls,
        field: Field,
        ambient_dim: int,
        composition: Composition | Iterable[int],
        members: Iterable[Subspace],
    ) -> "Flag":
        comp = composition if isinstance(composition, Composition) else Composition(composition)
        return cls(field, ambient_dim, comp, tuple(members))

    @property
    def length(self) -> int:
        """Number of composition parts (zero parts included)."""
        return len(self.composition)

    def chain(self) -> tuple[Subspace, ...]:
        """The full chain ``A_0 … A_p`` including the zero and full spaces."""
        return (
            (Subspace.zero(self.field, self.ambient_dim),)
            + self.members
            + (Subspace.full(self.field, self.ambient_dim),)
        )

    def member(self, i: int) -> Subspace:
        """``A_i`` for ``0 ≤ i ≤ p`` (ends included)."""
        if i == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        if i == self.length:
            return Subspace.full(self.field, self.ambient_dim)
        return self.members[i - 1]


@dataclass(frozen=True)
class FlagObject:
    """A tuple of flags on one common ambient space."""

    field: Field
    ambient_dim: int
    flags: tuple[Flag, ...]

    def __post_init__(self) -> None:
        if not self.flags:
            raise ValueError("a flag object needs at least one flag")
        for fl in self.flags:
            if fl.ambient_dim != self.ambient_dim or fl.field.tag != self.field.tag:
                raise ValueError("flag/object ambient or field mismatch")

    @property
    def dim_vector(self) -> DimVector:
        return DimVector(fl.composition for fl in self.flags)

    @property
    def num_flags(self) -> int:
        return len(self.flags)


def dim_vector(x: FlagObject) -> DimVector:
    """The tuple of flag compositions of ``x``."""
    return x.dim_vector


# ---------------------------------------------------------------------------
# The standard symplectic form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticForm:
    """The standard alternating form on an even-dimensional space.

    Gram matrix (1-based): ⟨e_i, e_{2n+1−i}⟩ = 1 for i ≤ n, −1 for i > n;
    all other pairings vanish.
    """

    field: Field
    dim: int
    gram: Matrix

    @classmethod
    def standard(cls, field: Field, dim: int) -> "SymplecticForm":
        if dim % 2 != 0 or dim <= 0:
            raise ValueError(f"symplectic dimension must be even positive, got {dim}")
        n = dim // 2
        one, zero = field.one(), field.zero()
        rows = []
        for i in range(dim):
            row = [zero] * dim
            row[dim - 1 - i] = one if i < n else field.neg(one)
            rows.append(tuple(row))
        return cls(field, dim, Matrix(field, tuple(rows), dim))

    def pairing(self, u: Sequence, v: Sequence):
        """⟨u, v⟩ = u · gram · vᵀ."""
        f = self.field
        acc = f.zero()
        for i, ui in enumerate(u):
            gi = self.gram.rows[i]
            if f.is_zero(f.coerce(ui)):
                continue
            for j, vj in enumerate(v):
                if not f.is_zero(gi[j]):
                    acc = f.add(acc, f.mul(f.mul(f.coerce(ui), gi[j]), f.coerce(vj)))
        return acc

    def orthogonal(self, u: Subspace) -> Subspace:
        """``u^⊥ = {v : ⟨b, v⟩ = 0 for all basis rows b of u}``.

        An involution on subspaces with dim u^⊥ = dim V − dim u.
        """
        if u.ambient_dim != self.dim:
            raise ValueError("subspace does not live in the form's space")
        pairing_rows = u.basis.mul(self.gram)
        return Subspace(self.field, self.dim, pairing_rows.nullspace())

    def preserved_by(self, g: Matrix) -> bool:
        """Whether ``g`` preserves the form: g · gram · gᵀ = gram."""
        return g.mul(self.gram).mul(g.transpose()).sub(self.gram).is_zero()


def is_symplectic_object(x: FlagObject, form: SymplecticForm | None = None) -> bool:
    """Whether ``x`` is a symplectic flag object for the standard form.

    Requires an even ambient dimension (odd returns ``False``, not an
    error), palindromic compositions, and ⟨A_i, A_{p−i}⟩ = 0 within every
    flag.  The mirror member then *equals* the orthogonal by a dimension
    count, but the containment test is what is checked.
    """
    if x.ambient_dim % 2 != 0:
        return False
    if form is None:
        form = SymplecticForm.standard(x.field, x.ambient_dim)
    if not x.dim_vector.is_symmetric():
        return False
    for fl in x.flags:
        chain = fl.chain()
        p = fl.length
        for i in range(0, p // 2 + 1):
            mirror = form.orthogonal(chain[p - i])
            if not mirror.contains(chain[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# Duality, sums, doubles
# ---------------------------------------------------------------------------


def dual(x: FlagObject) -> FlagObject:
    """The dual object, realized on the same coordinate space.

    Flag members become dot-product annihilators of the mirror members, so
    each composition reverses; ``dual(dual(x)) == x`` exactly.
    """
    new_flags = []
    for fl in x.flags:
        chain = fl.chain()
        p = fl.length
        members = tuple(chain[p - i].annihilator() for i in range(1, p))
        new_flags.append(
            Flag(x.field, x.ambient_dim, fl.composition.opposite(), members)
        )
    return FlagObject(x.field, x.ambient_dim, tuple(new_flags))


def _embed_rows(rows: Iterable[Sequence], positions: Sequence[int], new_dim: int, field: Field):
    """Place row entries at ``positions`` inside ``new_dim`` coordinates."""
    zero = field.zero()
    out = []
    for row in rows:
        new_row = [zero] * new_dim
        for value, pos in zip(row, positions):
            new_row[pos] = value
        out.append(new_row)
    return out


def direct_sum(x: FlagObject, y: FlagObject) -> FlagObject:
    """Block-diagonal direct sum: x's coordinates first, then y's.

    Flags are added memberwise, compositions partwise; the two objects must
    have the same number of flags with componentwise equal lengths.
    """
    if x.field.tag != y.field.tag:
        raise ValueError("field mismatch in direct sum")
    if x.num_flags != y.num_flags:
        raise ValueError("flag-count mismatch in direct sum")
    nx, ny = x.ambient_dim, y.ambient_dim
    n = nx + ny
    pos_x = list(range(nx))
    pos_y = list(range(nx, n))
    return _sum_with_positions(x, y, pos_x, pos_y, n)


def symplectic_direct_sum(x: FlagObject, y: FlagObject) -> FlagObject:
    """Direct sum of two standard-form symplectic objects, again standard.

    The plain block sum of two standard symplectic spaces carries a
    non-standard Gram matrix, so the new basis is ordered as (first half of
    x, first half of y, second half of y, second half of x); this restores
    the standard anti-diagonal form on the sum.
    """
    if x.field.tag != y.field.tag:
        raise ValueError("field mismatch in direct sum")
    if x.num_flags != y.num_flags:
        raise ValueError("flag-count mismatch in direct sum")
    if x.ambient_dim % 2 or y.ambient_dim % 2:
        raise ValueError("symplectic direct sum needs even-dimensional summands")
    m, k = x.ambient_dim // 2, y.ambient_dim // 2
    n = 2 * (m + k)
    pos_x = [i if i < m else 2 * k + i for i in range(2 * m)]
    pos_y = [m + j for j in range(2 * k)]
    return _sum_with_positions(x, y, pos_x, pos_y, n)


def _sum_with_positions(
    x: FlagObject,
    y: FlagObject,
    pos_x: Sequence[int],
    pos_y: Sequence[int],
    new_dim: int,
) -> FlagObject:
    field = x.field
    new_flags = []
    for fx, fy in zip(x.flags, y.flags):
        if fx.length != fy.length:
            raise ValueError(
                f"flag length mismatch in direct sum: {fx.composition} vs {fy.composition}"
            )
        members = []
        for i in range(1, fx.length):
            rows = _embed_rows(fx.member(i).basis.rows, pos_x, new_dim, field)
            rows += _embed_rows(fy.member(i).basis.rows, pos_y, new_dim, field)
            members.append(Subspace.from_rows(field, new_dim, rows))
        comp = Composition(a + b for a, b in zip(fx.composition, fy.composition))
        new_flags.append(Flag(field, new_dim, comp, tuple(members)))
    return FlagObject(field, new_dim, tuple(new_flags))


def sym_double(x: FlagObject) -> FlagObject:
    """The symplectic double: ``x`` plus its dual, in standard coordinates.

    The double of an m-dimensional object lives in dimension 2m with x's
    coordinates at positions 1..m and the dual coordinates in *reversed*
    order at positions m+1..2m; with the duality pairing being the dot
    product, this reversal makes the standard anti-diagonal form exact.  The
    i-th member of each doubled flag is A_i ⊕ reversed(Ann(A_{p−i})), so the
    doubled composition is the partwise sum of the composition and its
    reverse, and the result is always a symplectic object.
    """
    field = x.field
    m = x.ambient_dim
    n = 2 * m
    pos_x = list(range(m))
    pos_dual = [n - 1 - j for j in range(m)]
    new_flags = []
    for fl in x.flags:
        chain = fl.chain()
        p = fl.length
        members = []
        for i in range(1, p):
            rows = _embed_rows(chain[i].basis.rows, pos_x, n, field)
            ann = chain[p - i].annihilator()
            rows += _embed_rows(ann.basis.rows, pos_dual, n, field)
            members.append(Subspace.from_rows(field, n, rows))
        comp = Composition(
            a + b for a, b in zip(fl.composition, fl.composition.opposite())
        )
        new_flags.append(Flag(field, n, comp, tuple(members)))
    return FlagObject(field, n, tuple(new_flags))


# ---------------------------------------------------------------------------
# Compression / decompression / restriction
# ---------------------------------------------------------------------------


def compress_object(x: FlagObject) -> FlagObject:
    """Drop zero composition parts (and the repeated members they encode)."""
    field = x.field
    new_flags = []
    for fl in x.flags:
        comp = fl.composition.compress()
        chain = fl.chain()
        by_dim = {}
        for member in chain:
            by_dim.setdefault(member.dim, member)
        partial = 0
        members = []
        for part in comp.parts[:-1]:
            partial += part
            members.append(by_dim[partial])
        new_flags.append(Flag(field, x.ambient_dim, comp, tuple(members)))
    return FlagObject(field, x.ambient_dim, tuple(new_flags))


def decompress_object(x: FlagObject, target: DimVector) -> FlagObject:
    """Insert repeated members so the dimension vector becomes ``target``.

    Each target component must compress to the same composition as the
    corresponding component of ``x`` (after compressing both sides), so the
    operation only adds zero parts — the geometry is unchanged.
    """
    if len(target) != x.num_flags:
        raise ValueError("target has wrong number of components")
    field = x.field
    new_flags = []
    for fl, tcomp in zip(x.flags, target):
        if fl.composition.compress() != tcomp.compress():
            raise ValueError(
                f"target component {tcomp} is not a zero-insertion of {fl.composition}"
            )
        if tcomp.weight != x.ambient_dim:
            raise ValueError("target weight mismatch")
        chain = fl.chain()
        by_dim = {}
        for member in chain:
            by_dim.setdefault(member.dim, member)
        partial = 0
        members = []
        for part in tcomp.parts[:-1]:
            partial += part
            members.append(by_dim[partial])
        new_flags.append(Flag(field, x.ambient_dim, tcomp, tuple(members)))
    return FlagObject(field, x.ambient_dim, tuple(new_flags))


def trivial_flag(field: Field, ambient_dim: int, comp: Composition) -> Flag:
    """The unique flag with a given trivial composition.

    A composition is *trivial* when at most one part is nonzero; every
    member of its flag is then forced to be the zero or the full space.
    """
    if comp.nonzero_length > 1:
        raise ValueError(f"composition {comp} is not trivial")
    if comp.weight != ambient_dim:
        raise ValueError("composition weight must match the ambient dimension")
    members = []
    s = 0
    for part in comp.parts[:-1]:
        s += part
        members.append(
            Subspace.zero(field, ambient_dim)
            if s == 0
            else Subspace.full(field, ambient_dim)
        )
    return Flag(field, ambient_dim, comp, tuple(members))


def _decompress_flag(fl: Flag, tcomp: Composition) -> Flag:
    """Re-present one flag with zero parts inserted per ``tcomp``."""
    if fl.composition.compress() != tcomp.compress():
        raise ValueError(
            f"target component {tcomp} is not a zero-insertion of {fl.composition}"
        )
    chain = fl.chain()
    by_dim = {}
    for member in chain:
        by_dim.setdefault(member.dim, member)
    partial = 0
    members = []
    for part in tcomp.parts[:-1]:
        partial += part
        members.append(by_dim[partial])
    return Flag(fl.field, fl.ambient_dim, tcomp, tuple(members))


def realize_at(x: FlagObject, target: DimVector) -> list[FlagObject]:
    """All presentations of ``x`` with dimension vector ``target``.

    The non-trivial components of ``x`` are matched bijectively (in every
    consistent way) onto the non-trivial components of ``target`` with the
    same compressed composition, and re-presented by zero-insertion;
    trivial components are dropped or created freely, since a flag with at
    most one nonzero composition part is forced entirely.  Results are
    pairwise distinct, in a deterministic order; empty when the shapes are
    incompatible.
    """
    if target.weight != x.ambient_dim:
        return []
    base = x.dim_vector
    slots = [i for i, c in enumerate(target) if c.nonzero_length > 1]
    sources = [b for b, c in enumerate(base) if c.nonzero_length > 1]
    if len(slots) != len(sources):
        return []
    field = x.field
    results: list[FlagObject] = []
    for assign in permutations(sources):
        if any(
            base[assign[j]].compress() != target[slots[j]].compress()
            for j in range(len(slots))
        ):
            continue
        flags = []
        for i, tcomp in enumerate(target):
            if i in slots:
                src = x.flags[assign[slots.index(i)]]
                flags.append(_decompress_flag(src, tcomp))
            else:
                flags.append(trivial_flag(field, x.ambient_dim, tcomp))
        cand = FlagObject(field, x.ambient_dim, tuple(flags))
        if cand not in results:
            results.append(cand)
    return results


def _coordinates_in(sub: Subspace, within: Subspace) -> Matrix:
    """Coordinate rows of ``sub`` w.r.t. the RREF basis of ``within``.

    Because the basis of ``within`` is in reduced row echelon form, the
    coordinate of a vector along basis row i is simply its entry at that
    row's pivot column.
    """
    pivot_cols = []
    for row in within.basis.rows:
        for j, v in enumerate(row):
            if not within.field.is_zero(v):
                pivot_cols.append(j)
                break
    rows = tuple(
        tuple(row[j] for j in pivot_cols) for row in sub.basis.rows
    )
    return Matrix(within.field, rows, within.dim)


def induced_subobject(x: FlagObject, u: Subspace) -> FlagObject:
    """The flag object induced on a subspace by memberwise intersection.

    The result lives on ``u`` in coordinates relative to u's canonical
    basis; compositions are recomputed from the intersection dimensions
    (zero parts appear wherever a member does not cut ``u``).
    """
    if u.ambient_dim != x.ambient_dim or u.field.tag != x.field.tag:
        raise ValueError("subspace does not match the object's ambient space")
    field = x.field
    new_flags = []
    for fl in x.flags:
        chain = fl.chain()
        dims = []
        members = []
        prev_dim = 0
        for i in range(1, fl.length + 1):
            cut = chain[i].intersect(u)
            dims.append(cut.dim - prev_dim)
            prev_dim = cut.dim
            if i < fl.length:
                coords = _coordinates_in(cut, u)
                members.append(Subspace.from_rows(field, u.dim, coords.rows))
        new_flags.append(Flag(field, u.dim, Composition(dims), tuple(members)))
    return FlagObject(field, u.dim, tuple(new_flags))


def apply_matrix(x: FlagObject, g: Matrix) -> FlagObject:
    """Transform the object by an invertible matrix ``g`` (rows map v ↦ v·g)."""
    if g.nrows != x.ambient_dim or g.ncols != x.ambient_dim:
        raise ValueError("matrix shape does not match the ambient space")
    if g.rank() != x.ambient_dim:
        raise ValueError("transformation matrix is singular")
    new_flags = []
    for fl in x.flags:
        members = tuple(m.apply(g) for m in fl.members)
        new_flags.append(Flag(x.field, x.ambient_dim, fl.composition, members))
    return FlagObject(x.field, x.ambient_dim, tuple(new_flags))


def symplectic_transvection(form: SymplecticForm, v: Sequence, lam) -> Matrix:
    """The form-preserving map x ↦ x + λ⟨x, v⟩v, as a row-action matrix.

    Preservation is an identity: the correction terms cancel because the
    form is alternating (⟨v, v⟩ = 0 and ⟨x, v⟩ = −⟨v, x⟩).  Over a prime
    field these maps generate the full symplectic group.
    """
    field = form.field
    vec = [field.coerce(t) for t in v]
    lam = field.coerce(lam)
    coeffs = [
        # ⟨e_i, v⟩ = (gram · vᵀ)_i
        _dot(field, form.gram.rows[i], vec)
        for i in range(form.dim)
    ]
    rows = []
    for i in range(form.dim):
        scale = field.mul(lam, coeffs[i])
        row = [field.mul(scale, vj) for vj in vec]
        row[i] = field.add(row[i], field.one())
        rows.append(tuple(row))
    return Matrix(field, tuple(rows), form.dim)


def _dot(field: Field, u: Sequence, v: Sequence):
    acc = field.zero()
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def random_symplectic_matrix(
    field: Field, dim: int, seed: int | random.Random = 0, steps: int = 8
) -> Matrix:
    """A pseudo-random product of symplectic transvections (seeded).

    Deterministic for a fixed seed; the result always preserves the
    standard form exactly.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    form = SymplecticForm.standard(field, dim)
    g = Matrix.identity(field, dim)
    for _ in range(steps):
        while True:
            v = [rng.randint(-2, 2) for _ in range(dim)]
            if any(v):
                break
        lam = rng.choice([-2, -1, 1, 2])
        g = g.mul(symplectic_transvection(form, v, lam))
    return g


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def object_to_json(x: FlagObject) -> dict:
    """Schema: field tag, ambient dim, per-flag composition + proper members."""
    return {
        "field": x.field.tag,
        "ambient_dim": x.ambient_dim,
        "flags": [
            {
                "composition": list(fl.composition.parts),
                "subspaces": [m.to_json() for m in fl.members],
            }
            for fl in x.flags
        ],
    }


def object_from_json(data: dict) -> FlagObject:
    """Parse and fully validate a flag object from its JSON form."""
    try:
        field = field_for_tag(data["field"])
        ambient = int(data["ambient_dim"])
        flag_specs = data["flags"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed flag object JSON: {exc}") from None
    flags = []
    for spec in flag_specs:
        comp = Composition(spec["composition"])
        members = tuple(
            Subspace.from_rows(field, ambient, rows) for rows in spec["subspaces"]
        )
        flags.append(Flag(field, ambient, comp, members))
    return FlagObject(field, ambient, tuple(flags))

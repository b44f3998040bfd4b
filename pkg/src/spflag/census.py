"""Exhaustive finite-field cross-checks of the orbit machinery.

Over a small prime field every symplectic flag tuple of a given dimension
vector can be listed outright and the diagonal symplectic group action can
be run to completion, giving an orbit count that owes nothing to the
catalog, the counting formula, or the decomposition code.  The sizes are
kept deliberately small (the ambient dimension and field are guarded), so
this module is a verification harness, not a production path.

The group is generated by symplectic transvections x ↦ x + λ⟨x, v⟩v; one
transvection per (line, nonzero λ) pair suffices, and orbits under the
generators equal orbits under the group they generate — the full group,
by the classical generation theorem, which the closure test reconfirms
numerically via the order formula q^{n²}·Π(q^{2i}−1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .compositions import DimVector
from .exactlin import GF2, GF3, GF5, Field, Matrix, Subspace
from .flagobj import Flag, FlagObject, SymplecticForm, symplectic_transvection


__all__ = [
    "CensusResult",
    "census_field",
    "symplectic_group_order_formula",
    "symplectic_generators",
    "symplectic_group",
    "enumerate_symplectic_tuples",
    "orbit_census",
]


_FIELDS = {2: GF2, 3: GF3, 5: GF5}

# (ambient dimension, q) pairs small enough for exhaustive work.
_ALLOWED = {(2, 2), (4, 2), (2, 3), (2, 5)}


def census_field(q: int) -> Field:
    field = _FIELDS.get(q)
    if field is None:
        raise ValueError(f"census supports q in {sorted(_FIELDS)}, got {q}")
    return field


def _check_size(dim: int, q: int) -> None:
    if (dim, q) not in _ALLOWED:
        raise ValueError(
            f"census limited to ambient/field pairs {sorted(_ALLOWED)}, "
            f"got ({dim}, {q})"
        )


def symplectic_group_order_formula(dim: int, q: int) -> int:
    """q^{n²} · Π_{i=1..n} (q^{2i} − 1) for dim = 2n."""
    if dim % 2 != 0 or dim <= 0:
        raise ValueError("dimension must be even and positive")
    n = dim // 2
    order = q ** (n * n)
    for i in range(1, n + 1):
        order *= q ** (2 * i) - 1
    return order


# ---------------------------------------------------------------------------
# Generators and the full group
# ---------------------------------------------------------------------------


def _canonical_lines(field: Field, dim: int) -> list[tuple[int, ...]]:
    """One representative vector per line: first nonzero coordinate is 1."""
    q = field.p
    lines = []
    for v in product(range(q), repeat=dim):
        first = next((c for c in v if c), None)
        if first == 1:
            lines.append(v)
    return lines


def symplectic_generators(field: Field, dim: int) -> list[Matrix]:
    """Transvections t_{v,λ} over one vector per line, all λ ≠ 0."""
    form = SymplecticForm.standard(field, dim)
    gens = []
    for v in _canonical_lines(field, dim):
        for lam in range(1, field.p):
            gens.append(symplectic_transvection(form, v, lam))
    return gens


def symplectic_group(field: Field, dim: int) -> list[Matrix]:
    """Every element of the symplectic group, by closure from generators."""
    _check_size(dim, field.p)
    gens = symplectic_generators(field, dim)
    identity = Matrix.identity(field, dim)
    seen = {identity.rows: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for t in gens:
                h = g.mul(t)
                if h.rows not in seen:
                    seen[h.rows] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


# ---------------------------------------------------------------------------
# Subspace and tuple enumeration
# ---------------------------------------------------------------------------


def _subspaces_of_dim(field: Field, ambient: int, r: int) -> list[Subspace]:
    """All r-dimensional subspaces, one RREF basis each."""
    if r == 0:
        return [Subspace.zero(field, ambient)]
    q = field.p
    out = []
    for pivots in combinations(range(ambient), r):
        free_cells = []
        for i, p in enumerate(pivots):
            for j in range(p + 1, ambient):
                if j not in pivots:
                    free_cells.append((i, j))
        for values in product(range(q), repeat=len(free_cells)):
            rows = [[0] * ambient for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), val in zip(free_cells, values):
                rows[i][j] = val
            out.append(Subspace.from_rows(field, ambient, rows))
    return out


def _is_isotropic(sub: Subspace, form: SymplecticForm) -> bool:
    b = sub.basis
    return b.mul(form.gram).mul(b.transpose()).is_zero()


def _isotropic_by_dim(field: Field, form: SymplecticForm, max_dim: int) -> dict[int, list[Subspace]]:
    out = {}
    for r in range(max_dim + 1):
        out[r] = [
            s for s in _subspaces_of_dim(field, form.dim, r) if _is_isotropic(s, form)
        ]
    return out


def _symplectic_flags(field: Field, form: SymplecticForm, comp) -> list[Flag]:
    """Every symplectic flag with the given palindromic composition.

    The members up to the middle form an isotropic chain and are chosen
    freely; each upper member is the orthogonal of its mirror.
    """
    dim = form.dim
    p = len(comp)
    partial, s = [], 0
    for part in comp.parts:
        s += part
        partial.append(s)
    h = p // 2
    lower_dims = partial[:h]  # dims of members 1..h (1-based)
    iso = _isotropic_by_dim(field, form, max(lower_dims, default=0))

    chains: list[list[Subspace]] = [[]]
    for depth, target in enumerate(lower_dims):
        nxt = []
        for chain in chains:
            prev = chain[-1] if chain else None
            for cand in iso[target]:
                if prev is None or cand.contains(prev):
                    nxt.append(chain + [cand])
        chains = nxt

    flags = []
    for chain in chains:
        members: list[Subspace] = [None] * (p - 1)  # type: ignore[list-item]
        for i in range(1, h + 1):
            members[i - 1] = chain[i - 1]
        for i in range(h + 1, p):
            members[i - 1] = form.orthogonal(members[p - i - 1])
        flags.append(Flag(field, dim, comp, tuple(members)))
    return flags


def enumerate_symplectic_tuples(
    d: DimVector, q: int, max_tuples: int = 1_000_000
) -> list[FlagObject]:
    """Every symplectic flag object with dimension ``d`` over F_q."""
    field = census_field(q)
    dim = d.weight
    _check_size(dim, q)
    if not d.is_symmetric():
        raise ValueError(f"dimension vector {d} is not symmetric")
    form = SymplecticForm.standard(field, dim)
    per_flag = [_symplectic_flags(field, form, comp) for comp in d]
    count = 1
    for options in per_flag:
        count *= len(options)
    if count > max_tuples:
        raise ValueError(f"{count} tuples exceed the enumeration bound {max_tuples}")
    return [
        FlagObject(field, dim, flags) for flags in product(*per_flag)
    ]


# ---------------------------------------------------------------------------
# The census itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusResult:
    dims: DimVector
    q: int
    num_tuples: int
    num_orbits: int
    orbit_sizes: tuple[int, ...]
    group_order: int

    def to_json(self) -> dict:
        return {
            "dims": str(self.dims),
            "q": self.q,
            "tuples": self.num_tuples,
            "orbits": self.num_orbits,
            "orbit_sizes": list(self.orbit_sizes),
            "group_order": self.group_order,
        }


def orbit_census(d: DimVector, q: int, max_tuples: int = 1_000_000) -> CensusResult:
    """Count diagonal orbits on all symplectic tuples of dimension ``d``.

    Tuples are interned as id-vectors of their flag members; orbits are
    found by breadth-first closure under the transvection generators.  The
    orbit sizes always add up to the number of tuples, and the group order
    is recomputed by closure and checked against the formula.
    """
    field = census_field(q)
    objects = enumerate_symplectic_tuples(d, q, max_tuples=max_tuples)
    dim = d.weight

    subspace_ids: dict[tuple, int] = {}
    subspace_list: list[Subspace] = []

    def intern(sub: Subspace) -> int:
        key = sub.basis.rows
        idx = subspace_ids.get(key)
        if idx is None:
            idx = len(subspace_list)
            subspace_ids[key] = idx
            subspace_list.append(sub)
        return idx

    states: list[tuple[int, ...]] = []
    index_of: dict[tuple[int, ...], int] = {}
    for obj in objects:
        state = tuple(intern(m) for fl in obj.flags for m in fl.members)
        index_of[state] = len(states)
        states.append(state)

    gens = symplectic_generators(field, dim)
    action: list[dict[int, int]] = [dict() for _ in gens]

    def act(gen_idx: int, sub_id: int) -> int:
        cache = action[gen_idx]
        hit = cache.get(sub_id)
        if hit is None:
            hit = intern(subspace_list[sub_id].apply(gens[gen_idx]))
            cache[sub_id] = hit
        return hit

    seen = [False] * len(states)
    orbit_sizes = []
    for start in range(len(states)):
        if seen[start]:
            continue
        seen[start] = True
        frontier = [states[start]]
        size = 1
        while frontier:
            nxt = []
            for state in frontier:
                for gi in range(len(gens)):
                    image = tuple(act(gi, s) for s in state)
                    j = index_of.get(image)
                    if j is None:
                        raise AssertionError(
                            "group action left the enumerated tuple set"
                        )
                    if not seen[j]:
                        seen[j] = True
                        size += 1
                        nxt.append(image)
            frontier = nxt
        orbit_sizes.append(size)

    group_order = len(symplectic_group(field, dim))
    if group_order != symplectic_group_order_formula(dim, q):
        raise AssertionError("group closure does not match the order formula")

    return CensusResult(
        dims=d,
        q=q,
        num_tuples=len(states),
        num_orbits=len(orbit_sizes),
        orbit_sizes=tuple(sorted(orbit_sizes, reverse=True)),
        group_order=group_order,
    )

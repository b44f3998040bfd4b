"""The finite catalog of indecomposable symplectic flag objects.

Twenty-eight *rows*, each keyed by a compressed, length-sorted symmetric
dimension vector, list every indecomposable symplectic flag object whose
dimension vector compresses and sorts to that key.  Each row carries
``mu``, the number of such isomorphism classes, and one label per class:

* ``plain`` — the object is already indecomposable as a plain flag object
  (no symplectic structure needed to see it); these nine representatives
  are transcribed explicitly, as isotropic lower halves completed by
  symplectic orthogonals.
* ``sym``   — the object is the symplectic double I ⊕ I* of a plain
  indecomposable I whose dimension vector ``half`` is non-palindromic
  (``half`` plus its reverse equals the row key).  One ``half`` per dual
  pair is stored.  Representatives are synthesized: random integer flag
  objects of dimension ``half`` are drawn from a seeded generator until
  one has a one-dimensional endomorphism algebra — such an object is the
  unique indecomposable in its dimension (the quadratic form equals one
  on every stored ``half``, which both bounds the class count by one and
  makes the generic object hit it), so the certificate is also the proof
  of correctness.  Synthesized halves are cached in a package data file.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from hashlib import sha256
from importlib import resources
from itertools import permutations, product

from .compositions import (
    Composition,
    DimVector,
    sort_by_nonzero_lengths,
    symmetric_zero_insertions,
)
from .classifier import tits_q
from .exactlin import QQ, Matrix, Subspace, int_rref
from .flagobj import (
    Flag,
    FlagObject,
    SymplecticForm,
    decompress_object,
    object_from_json,
    object_to_json,
    realize_at,
    sym_double,
)


__all__ = [
    "IndecompLabel",
    "CatalogRow",
    "rows",
    "row_for_dims",
    "mu",
    "representative",
    "expanded_representatives",
    "class_representatives",
    "synthesize_gl_indecomposable",
    "expansions_of_row",
    "table_checksums",
]


# ---------------------------------------------------------------------------
# Labels and rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndecompLabel:
    """Names one isomorphism class of indecomposable symplectic objects.

    ``base`` is the row key (compressed, sorted).  ``index`` is the
    1-based position within the row — plain classes first, then doubles in
    table order — and is the class index used in orbit families.  For
    plain labels ``plain_index`` numbers the plain classes of the row from
    1; for doubles ``half`` is the stored non-palindromic half dimension.
    """

    base: DimVector
    kind: str  # "plain" | "sym"
    index: int
    plain_index: int | None = None
    half: DimVector | None = None

    def __post_init__(self) -> None:
        if self.kind == "plain":
            if self.plain_index is None or self.half is not None:
                raise ValueError("plain label needs plain_index and no half")
        elif self.kind == "sym":
            if self.half is None or self.plain_index is not None:
                raise ValueError("sym label needs half and no plain_index")
            total = DimVector(
                Composition(a + b for a, b in zip(c, c.opposite()))
                for c in self.half
            )
            if total != self.base:
                raise ValueError(
                    f"half {self.half} plus its reverse is not the base {self.base}"
                )
        else:
            raise ValueError(f"unknown label kind {self.kind!r}")

    def key(self) -> str:
        """Stable string key (used by the representative cache)."""
        if self.kind == "plain":
            return f"plain:{self.base}:{self.plain_index}"
        return f"sym:{self.half}"


@dataclass(frozen=True)
class CatalogRow:
    """One row of the catalog: a dimension key and its ``mu`` classes."""

    dims: DimVector
    labels: tuple[IndecompLabel, ...]
    mu: int

    def __post_init__(self) -> None:
        if self.mu != len(self.labels):
            raise ValueError("mu must equal the number of labels")


def _load_rows() -> tuple[CatalogRow, ...]:
    raw = json.loads(
        resources.files("spflag.data").joinpath("catalog_rows.json").read_text()
    )
    out = []
    for entry in raw:
        dims = DimVector(entry["dims"])
        labels: list[IndecompLabel] = []
        plain_count = 0
        plains: list[dict] = []
        syms: list[dict] = []
        for spec in entry["labels"]:
            (plains if spec["kind"] == "plain" else syms).append(spec)
        for spec in plains + syms:
            idx = len(labels) + 1
            if spec["kind"] == "plain":
                plain_count += 1
                labels.append(
                    IndecompLabel(base=dims, kind="plain", index=idx, plain_index=plain_count)
                )
            else:
                labels.append(
                    IndecompLabel(
                        base=dims, kind="sym", index=idx, half=DimVector(spec["half"])
                    )
                )
        out.append(CatalogRow(dims=dims, labels=tuple(labels), mu=entry["mu"]))
    return tuple(out)


_ROWS: tuple[CatalogRow, ...] | None = None
_ROW_INDEX: dict[DimVector, CatalogRow] = {}


def rows() -> tuple[CatalogRow, ...]:
    """All 28 catalog rows, in table order."""
    global _ROWS
    if _ROWS is None:
        _ROWS = _load_rows()
        for row in _ROWS:
            _ROW_INDEX[row.dims] = row
    return _ROWS


def _normalized_key(d: DimVector) -> DimVector | None:
    """Compress, keep non-trivial components, pad to a triple, sort."""
    comps = [c.compress() for c in d]
    nontrivial = [c for c in comps if len(c) > 1]
    if len(nontrivial) > 3:
        return None
    total = d.weight
    while len(nontrivial) < 3:
        nontrivial.append(Composition([total]))
    key, _ = sort_by_nonzero_lengths(DimVector(nontrivial))
    return key


def row_for_dims(d: DimVector) -> CatalogRow | None:
    """The row whose key matches ``d`` after normalization, if any."""
    rows()
    key = _normalized_key(d)
    if key is None:
        return None
    return _ROW_INDEX.get(key)


def mu(d: DimVector) -> int | None:
    """Number of indecomposable classes in dimension ``d`` (None if absent).

    The lookup normalizes: compress componentwise, drop trivial
    single-part components, pad back to a triple with whole-space
    components, and sort by length.
    """
    row = row_for_dims(d)
    return None if row is None else row.mu


def table_checksums() -> dict[str, int]:
    """Row/label counts used as transcription checksums."""
    all_rows = rows()
    n_plain = sum(1 for r in all_rows for lab in r.labels if lab.kind == "plain")
    n_sym = sum(1 for r in all_rows for lab in r.labels if lab.kind == "sym")
    return {
        "rows": len(all_rows),
        "plain": n_plain,
        "sym": n_sym,
        "total_mu": sum(r.mu for r in all_rows),
    }


# ---------------------------------------------------------------------------
# Expansions (zero-insertions + flag permutations)
# ---------------------------------------------------------------------------


def expansions_of_row(row: CatalogRow, lengths: tuple[int, ...]) -> set[DimVector]:
    """All symmetric dimension vectors at the given component lengths whose
    compressed, sorted form is the row key.

    Every bijection of row components onto the length slots is combined
    with every symmetric zero-insertion; assignments with no fitting
    insertion contribute nothing, so the result may be empty.
    """
    if len(lengths) != len(row.dims):
        return set()
    out: set[DimVector] = set()
    k = len(lengths)
    for perm in permutations(range(k)):
        per_slot = []
        feasible = True
        for slot in range(k):
            comp = row.dims[perm[slot]]
            fits = symmetric_zero_insertions(comp, lengths[slot])
            if not fits:
                feasible = False
                break
            per_slot.append(sorted(fits, key=lambda c: c.parts))
        if not feasible:
            continue
        for combo in product(*per_slot):
            out.add(DimVector(combo))
    return out


# ---------------------------------------------------------------------------
# Plain representatives (explicit transcriptions)
# ---------------------------------------------------------------------------

# For each plain class: ambient dimension and, per flag, the generator rows
# of the isotropic lower-half members (dims below half the flag length).
# Upper members are the symplectic orthogonals of their mirrors.
_PLAIN_REP_SPECS: dict[tuple[str, int], tuple[int, list[list[list[list[int]]]]]] = {
    ("1,1;1,1;1,1", 1): (2, [
        [[[1, 1]]],
        [[[1, 0]]],
        [[[0, 1]]],
    ]),
    ("2,2;1,2,1;1,1,1,1", 1): (4, [
        [[[1, 0, 1, 1], [0, 1, 0, 1]]],
        [[[1, 0, 0, 0]]],
        [[[0, 0, 0, 1]], [[0, 0, 1, 0], [0, 0, 0, 1]]],
    ]),
    ("1,2,1;1,2,1;1,2,1", 1): (4, [
        [[[1, 1, 0, 1]]],
        [[[1, 0, 0, 0]]],
        [[[0, 0, 0, 1]]],
    ]),
    ("1,2,1;1,2,1;1,1,1,1", 1): (4, [
        [[[1, 1, 0, 1]]],
        [[[1, 0, 0, 0]]],
        [[[0, 0, 0, 1]], [[0, 1, 0, 0], [0, 0, 0, 1]]],
    ]),
    ("1,2,1;1,2,1;1,1,1,1", 2): (4, [
        [[[1, 1, 0, 1]]],
        [[[1, 0, 0, 0]]],
        [[[0, 0, 0, 1]], [[0, 0, 1, 0], [0, 0, 0, 1]]],
    ]),
    ("3,3;2,2,2;1,1,2,1,1", 1): (6, [
        [[[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 0]]],
        [[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]],
        [[[0, 0, 0, 0, 0, 1]], [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]],
    ]),
    ("1,4,1;2,2,2;1,1,2,1,1", 1): (6, [
        [[[1, 0, 1, 0, 1, 1]]],
        [[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]],
        [[[0, 0, 0, 0, 0, 1]], [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]],
    ]),
    ("1,4,1;2,2,2;1,1,1,1,1,1", 1): (6, [
        [[[1, 0, 1, 0, 1, 1]]],
        [[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]],
        [
            [[0, 0, 0, 0, 0, 1]],
            [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
            [[0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
        ],
    ]),
    ("1,4,1;2,2,2;1,1,1,1,1,1", 2): (6, [
        [[[1, 0, 1, 0, 1, 1]]],
        [[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]],
        [
            [[0, 0, 0, 0, 0, 1]],
            [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
            [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
        ],
    ]),
}


def _build_plain_representative(label: IndecompLabel) -> FlagObject:
    spec = _PLAIN_REP_SPECS.get((str(label.base), label.plain_index or 0))
    if spec is None:
        raise KeyError(f"no transcription for plain label {label}")
    ambient, lowers_per_flag = spec
    form = SymplecticForm.standard(QQ, ambient)
    flags = []
    for comp, lowers in zip(label.base, lowers_per_flag):
        p = len(comp)
        members: list[Subspace | None] = [None] * (p - 1)
        for i, gens in enumerate(lowers):
            members[i] = Subspace.from_rows(QQ, ambient, gens)
        for i in range(p // 2 + 1, p):  # 1-based member index
            members[i - 1] = form.orthogonal(members[p - i - 1])
        flags.append(Flag(QQ, ambient, comp, tuple(members)))
    return FlagObject(QQ, ambient, tuple(flags))


# ---------------------------------------------------------------------------
# Synthesis of plain indecomposables for the doubles
# ---------------------------------------------------------------------------


def _stable_seed(seed: int, e: DimVector) -> int:
    digest = sha256(f"{seed}|{e}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _random_flag_object(e: DimVector, rng: random.Random) -> FlagObject:
    """A random integer flag object with dimension vector ``e`` over Q."""
    n = e.weight
    flags = []
    for comp in e:
        while True:
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            reduced, pivots = int_rref(rows, n)
            if len(pivots) == n:
                break
        members = []
        s = 0
        for part in comp.parts[:-1]:
            s += part
            members.append(Subspace.from_rows(QQ, n, rows[:s]))
        flags.append(Flag(QQ, n, comp, tuple(members)))
    return FlagObject(QQ, n, tuple(flags))


def synthesize_gl_indecomposable(e: DimVector, seed: int = 0, max_tries: int = 400) -> FlagObject:
    """A plain-indecomposable flag object of dimension ``e``, certified.

    Requires the quadratic form of ``e`` to equal 1, which guarantees (a)
    at most one indecomposable class in this dimension and (b) that the
    generic object is that class with scalar endomorphisms only.  Random
    seeded integer objects are drawn until the endomorphism algebra has
    dimension 1 — the certificate that the object is indecomposable.
    """
    from .decomposer import hom_space  # deferred: decomposer imports this module lazily

    q = tits_q(e)
    if q != 1:
        raise ValueError(
            f"synthesis requires quadratic form 1 (unique indecomposable), got {q} for {e}"
        )
    rng = random.Random(_stable_seed(seed, e))
    for _ in range(max_tries):
        candidate = _random_flag_object(e, rng)
        end = hom_space(candidate, candidate)
        if len(end.matrices) == 1:
            return candidate
    raise RuntimeError(
        f"synthesis did not certify within {max_tries} draws for {e} (seed {seed})"
    )


# ---------------------------------------------------------------------------
# Representatives
# ---------------------------------------------------------------------------


_HALF_CACHE: dict[str, FlagObject] = {}
_DISK_CACHE: dict[str, dict] | None = None


def _disk_cache() -> dict[str, dict]:
    global _DISK_CACHE
    if _DISK_CACHE is None:
        try:
            text = resources.files("spflag.data").joinpath("representatives.json").read_text()
            _DISK_CACHE = json.loads(text)
        except (FileNotFoundError, json.JSONDecodeError):
            _DISK_CACHE = {}
    return _DISK_CACHE


def gl_half_representative(label: IndecompLabel, seed: int = 0) -> FlagObject:
    """The plain indecomposable whose double realizes a ``sym`` label."""
    if label.kind != "sym":
        raise ValueError("only sym labels have a half")
    key = label.key()
    cached = _HALF_CACHE.get(key)
    if cached is not None:
        return cached
    disk = _disk_cache().get(key)
    if disk is not None:
        obj = object_from_json(disk)
        if obj.dim_vector != label.half:
            raise ValueError(f"cached half for {key} has wrong dimension vector")
    else:
        obj = synthesize_gl_indecomposable(label.half, seed=seed)
    _HALF_CACHE[key] = obj
    return obj


def representative(label: IndecompLabel, seed: int = 0) -> FlagObject:
    """A symplectic representative of the class named by ``label``.

    Plain labels are built from their explicit transcriptions; doubles are
    ``sym_double`` of a certified synthesized half.  Either way the result
    has dimension vector ``label.base`` in standard symplectic coordinates.
    """
    if label.kind == "plain":
        return _build_plain_representative(label)
    half = gl_half_representative(label, seed=seed)
    double = sym_double(half)
    if double.dim_vector != label.base:
        raise AssertionError(f"double of {label.half} has wrong dimensions")
    return double


def expanded_representatives(
    label: IndecompLabel, target: DimVector, seed: int = 0
) -> list[FlagObject]:
    """Representatives of ``label`` presented with dimension ``target``.

    The base representative's flags are matched onto the target's
    components in every consistent way (zero parts inserted, trivial
    components dropped or created — see ``realize_at``), and the distinct
    resulting objects are returned in a deterministic order.  When several
    row components are equal the variants may or may not be isomorphic;
    the class with dimension ``target`` realized by this label is the set
    of classes of the results.
    """
    return realize_at(representative(label, seed=seed), target)


_CLASS_REPS_CACHE: dict[tuple[DimVector, int], tuple] = {}


def class_representatives(
    target: DimVector, seed: int = 0
) -> tuple[tuple[IndecompLabel, FlagObject], ...]:
    """One representative per indecomposable class with dimension ``target``.

    Every label of the matching row is realized at ``target`` in all
    consistent ways; the results are deduplicated up to isomorphism.  The
    final count must equal the row's ``mu`` — every class in this
    dimension is a re-presentation of a class at the row key, so a
    mismatch would mean a transcribed table error and raises.
    """
    cache_key = (target, seed)
    cached = _CLASS_REPS_CACHE.get(cache_key)
    if cached is not None:
        return cached
    from .decomposer import are_isomorphic  # deferred to avoid an import cycle

    row = row_for_dims(target)
    if row is None:
        raise ValueError(f"no catalog row matches dimension {target}")
    found: list[tuple[IndecompLabel, FlagObject]] = []
    for label in row.labels:
        for cand in expanded_representatives(label, target, seed=seed):
            if not any(are_isomorphic(cand, obj, seed=seed) for _, obj in found):
                found.append((label, cand))
    if len(found) != row.mu:
        raise AssertionError(
            f"expected {row.mu} classes at dimension {target}, realized {len(found)}"
        )
    result = tuple(found)
    _CLASS_REPS_CACHE[cache_key] = result
    return result


# ---------------------------------------------------------------------------
# Cache regeneration (development utility; the file ships pre-generated)
# ---------------------------------------------------------------------------


def regenerate_representative_cache(path: str, seed: int = 0) -> int:
    """Synthesize every ``sym`` half and write the JSON cache to ``path``."""
    payload: dict[str, dict] = {}
    for row in rows():
        for label in row.labels:
            if label.kind == "sym":
                obj = synthesize_gl_indecomposable(label.half, seed=seed)
                payload[label.key()] = object_to_json(obj)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
    return len(payload)
